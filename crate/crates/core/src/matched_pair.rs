//! Matched pairs of Taft algebras `(A, H, <|, |>)`.
//!
//! Here `A = T_{n^2}(qbar)` with generators `H, X` and `H = T_{m^2}(q)`
//! with generators `h, x`.  A matched pair equips the two with a left
//! action `|> : H (x) A -> A` and a right action `<| : H (x) A -> H`
//! making `A` a left `H`-module coalgebra, `H` a right `A`-module
//! coalgebra, and satisfying the mixed compatibilities
//!
//! ```text
//! (mp1)  g |> 1 = eps(g) 1,                1 <| a = eps(a) 1,
//! (mp2)  g |> (a b) = sum (g1 |> a1) ((g2 <| a2) |> b),
//! (mp3)  (g t) <| a = sum (g <| (t1 |> a1)) (t2 <| a2),
//! (mp4)  sum g1 <| a1 (x) g2 |> a2 = sum g2 <| a2 (x) g1 |> a1,
//! ```
//!
//! plus the requirement that both actions are coalgebra maps.  Exactly two
//! families of such pairs exist on a pair of Taft algebras:
//!
//! * **Sigma family** — for each `sigma` with `sigma^d = 1`,
//!   `d = gcd(n, m)`: both actions are diagonal,
//!   `h |> X = sigma X`, `x <| H = sigma x`, everything else fixed or
//!   killed.  [`family_sigma`] builds it.
//! * **Alpha family** — only for `m = n` and `qbar = q^{n-1}`, for each
//!   `alpha != 0`: the diagonal at `sigma = q` deformed by
//!   `x |> X = alpha (1 - H)` and `x <| X = alpha (1 - h)`.
//!   [`family_alpha`] builds it.
//!
//! [`ansatz_residuals`] exposes the scalar obstruction system cutting out
//! these two families from the general coalgebra-map ansatz on generators,
//! and [`enumerate_matched_pairs`] lists all pairs for given parameters.

use std::cell::RefCell;
use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::cyclotomic::{root_of_unity, CycScalar};
use crate::error::{Error, Result};
use crate::hopf::{sp_normalize, sp_scale, sp_sub, sp_render, HopfStructure, SparseTensor, SparseVec};
use crate::report::AxiomReport;
use crate::taft::{taft_structure, TaftDescriptor, TaftElement};

/// Which of the two families a matched pair belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Diagonal actions parametrized by `sigma` with `sigma^{gcd(n,m)} = 1`.
    Sigma,
    /// The deformation at `sigma = q` parametrized by `alpha != 0`
    /// (requires `m = n`, `qbar = q^{n-1}`).
    Alpha,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Sigma => write!(f, "sigma"),
            Family::Alpha => write!(f, "alpha"),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Values of both actions on the four generator pairs.
///
/// Index `[g][a]` with `g = 0` for `h`, `g = 1` for `x`, `a = 0` for `H`,
/// `a = 1` for `X`.  `left[g][a] = g |> a` lives in `A`;
/// `right[g][a] = g <| a` lives in `H`.
#[derive(Clone, Debug)]
pub struct GeneratorActions {
    pub left: [[TaftElement; 2]; 2],
    pub right: [[TaftElement; 2]; 2],
}

impl GeneratorActions {
    /// Diagonal generator tables of the sigma family.
    pub fn sigma(a_desc: &TaftDescriptor, h_desc: &TaftDescriptor, sigma: &CycScalar) -> Self {
        let cap_h = TaftElement::gen_h(a_desc);
        let cap_x = TaftElement::gen_x(a_desc);
        let h = TaftElement::gen_h(h_desc);
        let x = TaftElement::gen_x(h_desc);
        GeneratorActions {
            left: [
                [cap_h.clone(), cap_x.scale(sigma)],
                [TaftElement::zero(a_desc), TaftElement::zero(a_desc)],
            ],
            right: [
                [h.clone(), TaftElement::zero(h_desc)],
                [x.scale(sigma), TaftElement::zero(h_desc)],
            ],
        }
    }

    /// Generator tables of the alpha family (diagonal at `sigma = q`
    /// deformed by `alpha`).
    pub fn alpha(
        a_desc: &TaftDescriptor,
        h_desc: &TaftDescriptor,
        q: &CycScalar,
        alpha: &CycScalar,
    ) -> Self {
        let one_a = TaftElement::one(a_desc);
        let one_h = TaftElement::one(h_desc);
        let cap_h = TaftElement::gen_h(a_desc);
        let cap_x = TaftElement::gen_x(a_desc);
        let h = TaftElement::gen_h(h_desc);
        let x = TaftElement::gen_x(h_desc);
        let one_minus_cap_h = one_a.sub(&cap_h).expect("same descriptor").scale(alpha);
        let one_minus_h = one_h.sub(&h).expect("same descriptor").scale(alpha);
        GeneratorActions {
            left: [
                [cap_h.clone(), cap_x.scale(q)],
                [TaftElement::zero(a_desc), one_minus_cap_h],
            ],
            right: [
                [h.clone(), TaftElement::zero(h_desc)],
                [x.scale(q), one_minus_h],
            ],
        }
    }
}

/// Full action tables on the monomial bases, `left[g * n^2 + a]` a sparse
/// vector over the `A` basis and `right[g * n^2 + a]` over the `H` basis
/// (`g = k m + l` indexes `h^k x^l`, `a = i n + j` indexes `H^i X^j`).
#[derive(Clone, Debug)]
pub struct ActionTables {
    a_desc: TaftDescriptor,
    h_desc: TaftDescriptor,
    left: Vec<SparseVec>,
    right: Vec<SparseVec>,
}

impl ActionTables {
    /// Wrap precomputed raw tables; validates lengths only (run
    /// [`verify_action_tables`] for the axioms).
    pub fn from_raw(
        a_desc: &TaftDescriptor,
        h_desc: &TaftDescriptor,
        left: Vec<SparseVec>,
        right: Vec<SparseVec>,
    ) -> Result<Self> {
        let cells = a_desc.dim() * h_desc.dim();
        if left.len() != cells || right.len() != cells {
            return Err(Error::DimensionMismatch(format!(
                "action tables need {cells} cells"
            )));
        }
        Ok(ActionTables {
            a_desc: a_desc.clone(),
            h_desc: h_desc.clone(),
            left,
            right,
        })
    }

    /// Extend generator values to the whole monomial basis using the
    /// module laws in one argument and the mixed compatibilities (mp2),
    /// (mp3) in the other.  The extension is the unique one when the
    /// generator data comes from a matched pair; for arbitrary data it is
    /// still deterministic and the axiom sweep will expose any defect.
    pub fn from_generators(
        a_desc: &TaftDescriptor,
        h_desc: &TaftDescriptor,
        gens: &GeneratorActions,
    ) -> Result<Self> {
        for row in &gens.left {
            for e in row {
                if e.descriptor() != a_desc {
                    return Err(Error::DescriptorMismatch(
                        "left generator actions must land in A".into(),
                    ));
                }
            }
        }
        for row in &gens.right {
            for e in row {
                if e.descriptor() != h_desc {
                    return Err(Error::DescriptorMismatch(
                        "right generator actions must land in H".into(),
                    ));
                }
            }
        }
        let ext = Extender {
            a: a_desc,
            h: h_desc,
            gens,
            left_memo: RefCell::new(HashMap::new()),
            right_memo: RefCell::new(HashMap::new()),
        };
        let n = a_desc.m();
        let m = h_desc.m();
        let a_dim = a_desc.dim();
        let h_dim = h_desc.dim();
        let mut left = vec![Vec::new(); a_dim * h_dim];
        let mut right = vec![Vec::new(); a_dim * h_dim];
        for k in 0..m {
            for l in 0..m {
                let g = h_desc.index(k, l);
                for i in 0..n {
                    for j in 0..n {
                        let a = a_desc.index(i, j);
                        left[g * a_dim + a] = ext.left_mono(k, l, i, j, 0)?.to_sparse();
                        right[g * a_dim + a] = ext.right_mono(k, l, i, j, 0)?.to_sparse();
                    }
                }
            }
        }
        Ok(ActionTables {
            a_desc: a_desc.clone(),
            h_desc: h_desc.clone(),
            left,
            right,
        })
    }

    pub fn a_descriptor(&self) -> &TaftDescriptor {
        &self.a_desc
    }

    pub fn h_descriptor(&self) -> &TaftDescriptor {
        &self.h_desc
    }

    /// `e_g |> e_a` as a sparse vector over the `A` basis.
    pub fn left_of(&self, g: usize, a: usize) -> &SparseVec {
        &self.left[g * self.a_desc.dim() + a]
    }

    /// `e_g <| e_a` as a sparse vector over the `H` basis.
    pub fn right_of(&self, g: usize, a: usize) -> &SparseVec {
        &self.right[g * self.a_desc.dim() + a]
    }

    pub fn left_raw(&self) -> &[SparseVec] {
        &self.left
    }

    pub fn right_raw(&self) -> &[SparseVec] {
        &self.right
    }

    /// Bilinear `g |> a` on elements.
    pub fn act_left(&self, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
        self.check_elems(g, a)?;
        let mut acc: SparseVec = Vec::new();
        for (gi, cg) in g.to_sparse() {
            for (ai, ca) in a.to_sparse() {
                let c = cg.mul(&ca);
                for (t, ct) in self.left_of(gi, ai) {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        TaftElement::from_sparse(&self.a_desc, &sp_normalize(acc))
    }

    /// Bilinear `g <| a` on elements.
    pub fn act_right(&self, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
        self.check_elems(g, a)?;
        let mut acc: SparseVec = Vec::new();
        for (gi, cg) in g.to_sparse() {
            for (ai, ca) in a.to_sparse() {
                let c = cg.mul(&ca);
                for (t, ct) in self.right_of(gi, ai) {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        TaftElement::from_sparse(&self.h_desc, &sp_normalize(acc))
    }

    fn check_elems(&self, g: &TaftElement, a: &TaftElement) -> Result<()> {
        if g.descriptor() != &self.h_desc || a.descriptor() != &self.a_desc {
            return Err(Error::DescriptorMismatch(
                "action arguments must come from (H, A)".into(),
            ));
        }
        Ok(())
    }
}

const MAX_EXTENSION_DEPTH: usize = 4096;

/// Memoized recursive extension of generator actions; see
/// [`ActionTables::from_generators`].
struct Extender<'a> {
    a: &'a TaftDescriptor,
    h: &'a TaftDescriptor,
    gens: &'a GeneratorActions,
    left_memo: RefCell<HashMap<(usize, usize, usize, usize), TaftElement>>,
    right_memo: RefCell<HashMap<(usize, usize, usize, usize), TaftElement>>,
}

/// Comultiplication support of a single generator letter with unit
/// coefficients: group-like `g -> g (x) g`, skew-primitive
/// `y -> y (x) g + 1 (x) y`.
fn letter_comult(letter: usize) -> Vec<((usize, usize), (usize, usize))> {
    if letter == 0 {
        vec![((1, 0), (1, 0))]
    } else {
        vec![((0, 1), (1, 0)), ((0, 0), (0, 1))]
    }
}

/// Split a monomial `(k, l)` as `letter * rest` (leftmost letter first).
fn split_word(k: usize, l: usize) -> (usize, (usize, usize)) {
    if k >= 1 {
        (0, (k - 1, l))
    } else {
        (1, (0, l - 1))
    }
}

impl Extender<'_> {
    fn letter_h(&self, letter: usize) -> TaftElement {
        if letter == 0 {
            TaftElement::gen_h(self.h)
        } else {
            TaftElement::gen_x(self.h)
        }
    }

    /// `(h^k x^l) |> (H^i X^j)`.
    fn left_mono(&self, k: usize, l: usize, i: usize, j: usize, depth: usize) -> Result<TaftElement> {
        if depth > MAX_EXTENSION_DEPTH {
            return Err(Error::InvalidMatchedPair(
                "generator-action extension did not terminate".into(),
            ));
        }
        if let Some(e) = self.left_memo.borrow().get(&(k, l, i, j)) {
            return Ok(e.clone());
        }
        let one = CycScalar::one(self.a.q().order());
        let result = if i == 0 && j == 0 {
            // g |> 1 = eps(g) 1
            if l == 0 {
                TaftElement::one(self.a)
            } else {
                TaftElement::zero(self.a)
            }
        } else if k == 0 && l == 0 {
            // 1 |> a = a
            TaftElement::monomial(self.a, i, j, one)?
        } else if k + l >= 2 {
            // (g t) |> a = g |> (t |> a)
            let (lg, (tk, tl)) = split_word(k, l);
            let inner = self.left_mono(tk, tl, i, j, depth + 1)?;
            self.act_left_elem(&self.letter_h(lg), &inner, depth + 1)?
        } else if i + j == 1 {
            let g_letter = if k == 1 { 0 } else { 1 };
            let a_letter = if i == 1 { 0 } else { 1 };
            self.gens.left[g_letter][a_letter].clone()
        } else {
            // mp2 on a = letter * rest with g a single letter
            let g_letter = if k == 1 { 0 } else { 1 };
            let (la, (ri, rj)) = split_word(i, j);
            let rest = TaftElement::monomial(self.a, ri, rj, one)?;
            let mut acc = TaftElement::zero(self.a);
            for (g1, g2) in letter_comult(g_letter) {
                for (a1, a2) in letter_comult(la) {
                    let u = self.left_mono(g1.0, g1.1, a1.0, a1.1, depth + 1)?;
                    if u.is_zero() {
                        continue;
                    }
                    let w = self.right_mono(g2.0, g2.1, a2.0, a2.1, depth + 1)?;
                    if w.is_zero() {
                        continue;
                    }
                    let v = self.act_left_elem(&w, &rest, depth + 1)?;
                    acc = acc.add(&u.mul(&v)?)?;
                }
            }
            acc
        };
        self.left_memo
            .borrow_mut()
            .insert((k, l, i, j), result.clone());
        Ok(result)
    }

    /// `(h^k x^l) <| (H^i X^j)`.
    fn right_mono(
        &self,
        k: usize,
        l: usize,
        i: usize,
        j: usize,
        depth: usize,
    ) -> Result<TaftElement> {
        if depth > MAX_EXTENSION_DEPTH {
            return Err(Error::InvalidMatchedPair(
                "generator-action extension did not terminate".into(),
            ));
        }
        if let Some(e) = self.right_memo.borrow().get(&(k, l, i, j)) {
            return Ok(e.clone());
        }
        let one = CycScalar::one(self.h.q().order());
        let result = if i == 0 && j == 0 {
            // g <| 1 = g
            TaftElement::monomial(self.h, k, l, one)?
        } else if k == 0 && l == 0 {
            // 1 <| a = eps(a) 1
            if j == 0 {
                TaftElement::one(self.h)
            } else {
                TaftElement::zero(self.h)
            }
        } else if i + j >= 2 {
            // g <| (a b) = (g <| a) <| b
            let (la, (ri, rj)) = split_word(i, j);
            let (ai, aj) = if la == 0 { (1, 0) } else { (0, 1) };
            let inner = self.right_mono(k, l, ai, aj, depth + 1)?;
            let rest = TaftElement::monomial(self.a, ri, rj, CycScalar::one(self.a.q().order()))?;
            self.act_right_elem(&inner, &rest, depth + 1)?
        } else if k + l == 1 {
            let g_letter = if k == 1 { 0 } else { 1 };
            let a_letter = if i == 1 { 0 } else { 1 };
            self.gens.right[g_letter][a_letter].clone()
        } else {
            // mp3 on g = letter * t with a a single letter
            let (lg, (tk, tl)) = split_word(k, l);
            let a_letter = if i == 1 { 0 } else { 1 };
            let t = TaftElement::monomial(self.h, tk, tl, one)?;
            let dt = t.comult();
            let mut acc = TaftElement::zero(self.h);
            for ((t1, t2), ct) in dt.terms() {
                for (a1, a2) in letter_comult(a_letter) {
                    let u = self.left_mono(t1.0, t1.1, a1.0, a1.1, depth + 1)?;
                    let w = self.act_right_elem(&self.letter_h(lg), &u, depth + 1)?;
                    if w.is_zero() {
                        continue;
                    }
                    let v = self.right_mono(t2.0, t2.1, a2.0, a2.1, depth + 1)?;
                    if v.is_zero() {
                        continue;
                    }
                    acc = acc.add(&w.mul(&v)?.scale(ct))?;
                }
            }
            acc
        };
        self.right_memo
            .borrow_mut()
            .insert((k, l, i, j), result.clone());
        Ok(result)
    }

    fn act_left_elem(
        &self,
        g: &TaftElement,
        a: &TaftElement,
        depth: usize,
    ) -> Result<TaftElement> {
        let mut acc = TaftElement::zero(self.a);
        for ((k, l), cg) in g.terms() {
            for ((i, j), ca) in a.terms() {
                let part = self.left_mono(*k, *l, *i, *j, depth + 1)?;
                acc = acc.add(&part.scale(&cg.mul(ca)))?;
            }
        }
        Ok(acc)
    }

    fn act_right_elem(
        &self,
        g: &TaftElement,
        a: &TaftElement,
        depth: usize,
    ) -> Result<TaftElement> {
        let mut acc = TaftElement::zero(self.h);
        for ((k, l), cg) in g.terms() {
            for ((i, j), ca) in a.terms() {
                let part = self.right_mono(*k, *l, *i, *j, depth + 1)?;
                acc = acc.add(&part.scale(&cg.mul(ca)))?;
            }
        }
        Ok(acc)
    }
}

/// A verified-family matched pair of Taft algebras.
#[derive(Clone, Debug)]
pub struct MatchedPair {
    family: Family,
    param: CycScalar,
    tables: ActionTables,
}

impl MatchedPair {
    pub fn family(&self) -> Family {
        self.family
    }

    /// `sigma` or `alpha`, depending on the family.
    pub fn param(&self) -> &CycScalar {
        &self.param
    }

    /// Dimension parameter of `A = T_{n^2}(qbar)`.
    pub fn n(&self) -> usize {
        self.tables.a_desc.m()
    }

    /// Dimension parameter of `H = T_{m^2}(q)`.
    pub fn m(&self) -> usize {
        self.tables.h_desc.m()
    }

    pub fn qbar(&self) -> &CycScalar {
        self.tables.a_desc.q()
    }

    pub fn q(&self) -> &CycScalar {
        self.tables.h_desc.q()
    }

    pub fn a_descriptor(&self) -> &TaftDescriptor {
        self.tables.a_descriptor()
    }

    pub fn h_descriptor(&self) -> &TaftDescriptor {
        self.tables.h_descriptor()
    }

    pub fn tables(&self) -> &ActionTables {
        &self.tables
    }

    /// `g |> a`.
    pub fn act_left(&self, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
        self.tables.act_left(g, a)
    }

    /// `g <| a`.
    pub fn act_right(&self, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
        self.tables.act_right(g, a)
    }

    /// Wrap arbitrary tables without any validation, for tamper tests and
    /// transported structures.
    pub fn from_tables_unchecked(family: Family, param: CycScalar, tables: ActionTables) -> Self {
        MatchedPair {
            family,
            param,
            tables,
        }
    }
}

impl Serialize for MatchedPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a>(usize, usize, usize, &'a CycScalar);
        #[derive(Serialize)]
        struct Tables<'a> {
            left: Vec<Row<'a>>,
            right: Vec<Row<'a>>,
        }
        let a_dim = self.tables.a_desc.dim();
        let h_dim = self.tables.h_desc.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in 0..h_dim {
            for a in 0..a_dim {
                for (t, c) in self.tables.left_of(g, a) {
                    left.push(Row(g, a, *t, c));
                }
                for (t, c) in self.tables.right_of(g, a) {
                    right.push(Row(g, a, *t, c));
                }
            }
        }
        let mut st = serializer.serialize_struct("MatchedPair", 7)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("m", &self.m())?;
        st.serialize_field("qbar", self.qbar())?;
        st.serialize_field("q", self.q())?;
        st.serialize_field("param", &self.param)?;
        st.serialize_field("tables", &Tables { left, right })?;
        st.end()
    }
}

/// `g |> a` for a matched pair (free-function form of
/// [`MatchedPair::act_left`]).
pub fn act_left(mp: &MatchedPair, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
    mp.act_left(g, a)
}

/// `g <| a` for a matched pair (free-function form of
/// [`MatchedPair::act_right`]).
pub fn act_right(mp: &MatchedPair, g: &TaftElement, a: &TaftElement) -> Result<TaftElement> {
    mp.act_right(g, a)
}

/// Build the sigma-family matched pair on `A = T_{n^2}(qbar)`,
/// `H = T_{m^2}(q)`; requires `sigma^{gcd(n,m)} = 1`.
pub fn family_sigma(
    n: usize,
    m: usize,
    qbar: &CycScalar,
    q: &CycScalar,
    sigma: &CycScalar,
) -> Result<MatchedPair> {
    let a_desc = TaftDescriptor::new(n, qbar.clone())?;
    let h_desc = TaftDescriptor::new(m, q.clone())?;
    let d = n.gcd(&m);
    if sigma.is_zero() || !sigma.pow(d as i64)?.is_one() {
        return Err(Error::InvalidParameter(format!(
            "sigma must satisfy sigma^d = 1 with d = gcd(n, m) = {d}"
        )));
    }
    let gens = GeneratorActions::sigma(&a_desc, &h_desc, sigma);
    let tables = ActionTables::from_generators(&a_desc, &h_desc, &gens)?;
    Ok(MatchedPair {
        family: Family::Sigma,
        param: sigma.clone(),
        tables,
    })
}

/// Build the alpha-family matched pair; forces `m = n` and
/// `qbar = q^{n-1}`, and requires `alpha != 0`.
pub fn family_alpha(n: usize, q: &CycScalar, alpha: &CycScalar) -> Result<MatchedPair> {
    if alpha.is_zero() {
        return Err(Error::InvalidParameter(
            "alpha must be nonzero (the alpha = 0 tables are the sigma family at sigma = q)"
                .into(),
        ));
    }
    let qbar = q.pow(n as i64 - 1)?;
    let a_desc = TaftDescriptor::new(n, qbar)?;
    let h_desc = TaftDescriptor::new(n, q.clone())?;
    let gens = GeneratorActions::alpha(&a_desc, &h_desc, q, alpha);
    let tables = ActionTables::from_generators(&a_desc, &h_desc, &gens)?;
    Ok(MatchedPair {
        family: Family::Alpha,
        param: alpha.clone(),
        tables,
    })
}

/// Sweep every matched-pair axiom over full bases, given the two algebras
/// as structure constants and raw action tables (also used for structures
/// that are not Taft-modelled, such as doubles).  Exact, tolerance zero.
pub fn verify_action_tables(
    a_hs: &HopfStructure,
    h_hs: &HopfStructure,
    left: &[SparseVec],
    right: &[SparseVec],
) -> AxiomReport {
    let a_dim = a_hs.dim();
    let h_dim = h_hs.dim();
    let mut report = AxiomReport::default();
    if left.len() != a_dim * h_dim || right.len() != a_dim * h_dim {
        report.record("shape", vec![], "table size mismatch".into());
        return report;
    }
    let order = a_hs.scalar_order().max(h_hs.scalar_order());
    let one = CycScalar::one(order);

    let act_l = |g: &SparseVec, a: &SparseVec| -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (gi, cg) in g {
            for (ai, ca) in a {
                let c = cg.mul(ca);
                for (t, ct) in &left[gi * a_dim + ai] {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        sp_normalize(acc)
    };
    let act_r = |g: &SparseVec, a: &SparseVec| -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (gi, cg) in g {
            for (ai, ca) in a {
                let c = cg.mul(ca);
                for (t, ct) in &right[gi * a_dim + ai] {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        sp_normalize(acc)
    };
    let basis = |i: usize| -> SparseVec { vec![(i, one.clone())] };

    // Unit laws and mp1.
    for a in 0..a_dim {
        report.count_check();
        let lhs = act_l(h_hs.unit(), &basis(a));
        if lhs != basis(a) {
            report.record("left-module-unit", vec![a], sp_render(&lhs, a_hs.labels()));
        }
        report.count_check();
        let lhs = act_r(h_hs.unit(), &basis(a));
        let rhs = sp_scale(h_hs.unit(), a_hs.counit_of(a));
        if lhs != rhs {
            report.record("mp1-right", vec![a], sp_render(&sp_sub(&lhs, &rhs), h_hs.labels()));
        }
    }
    for g in 0..h_dim {
        report.count_check();
        let lhs = act_r(&basis(g), a_hs.unit());
        if lhs != basis(g) {
            report.record("right-module-unit", vec![g], sp_render(&lhs, h_hs.labels()));
        }
        report.count_check();
        let lhs = act_l(&basis(g), a_hs.unit());
        let rhs = sp_scale(a_hs.unit(), h_hs.counit_of(g));
        if lhs != rhs {
            report.record("mp1-left", vec![g], sp_render(&sp_sub(&lhs, &rhs), a_hs.labels()));
        }
    }

    // Per-(g, a) laws: coalgebra-map and counit conditions, mp4.
    let ga_reports: Vec<AxiomReport> = (0..h_dim)
        .into_par_iter()
        .map(|g| {
            let mut rep = AxiomReport::default();
            for a in 0..a_dim {
                let left_ga = &left[g * a_dim + a];
                let right_ga = &right[g * a_dim + a];

                // counit conditions
                rep.count_check();
                let e = h_hs.counit_of(g).mul(a_hs.counit_of(a));
                let lhs = a_hs.counit_elem(left_ga);
                if lhs != e {
                    rep.record("counit-left-action", vec![g, a], lhs.sub(&e).to_string());
                }
                rep.count_check();
                let lhs = h_hs.counit_elem(right_ga);
                if lhs != e {
                    rep.record("counit-right-action", vec![g, a], lhs.sub(&e).to_string());
                }

                // Delta_A(g |> a) = sum (g1 |> a1) (x) (g2 |> a2)
                rep.count_check();
                let lhs = a_hs.comult_elem(left_ga);
                let mut rhs: SparseTensor = Vec::new();
                for (g1, g2, cg) in h_hs.comult_of(g) {
                    for (a1, a2, ca) in a_hs.comult_of(a) {
                        let c = cg.mul(ca);
                        for (u, cu) in &left[g1 * a_dim + a1] {
                            let c1 = c.mul(cu);
                            for (v, cv) in &left[g2 * a_dim + a2] {
                                rhs.push((*u, *v, c1.mul(cv)));
                            }
                        }
                    }
                }
                let rhs = crate::hopf::tensor_normalize(rhs);
                if lhs != rhs {
                    rep.record("comult-left-action", vec![g, a], "coalgebra map fails".into());
                }

                // Delta_H(g <| a) = sum (g1 <| a1) (x) (g2 <| a2)
                rep.count_check();
                let lhs = h_hs.comult_elem(right_ga);
                let mut rhs: SparseTensor = Vec::new();
                for (g1, g2, cg) in h_hs.comult_of(g) {
                    for (a1, a2, ca) in a_hs.comult_of(a) {
                        let c = cg.mul(ca);
                        for (u, cu) in &right[g1 * a_dim + a1] {
                            let c1 = c.mul(cu);
                            for (v, cv) in &right[g2 * a_dim + a2] {
                                rhs.push((*u, *v, c1.mul(cv)));
                            }
                        }
                    }
                }
                let rhs = crate::hopf::tensor_normalize(rhs);
                if lhs != rhs {
                    rep.record("comult-right-action", vec![g, a], "coalgebra map fails".into());
                }

                // mp4: sum g1 <| a1 (x) g2 |> a2 = sum g2 <| a2 (x) g1 |> a1
                rep.count_check();
                let mut lhs: SparseTensor = Vec::new();
                let mut rhs: SparseTensor = Vec::new();
                for (g1, g2, cg) in h_hs.comult_of(g) {
                    for (a1, a2, ca) in a_hs.comult_of(a) {
                        let c = cg.mul(ca);
                        for (u, cu) in &right[g1 * a_dim + a1] {
                            let c1 = c.mul(cu);
                            for (v, cv) in &left[g2 * a_dim + a2] {
                                lhs.push((*u, *v, c1.mul(cv)));
                            }
                        }
                        for (u, cu) in &right[g2 * a_dim + a2] {
                            let c1 = c.mul(cu);
                            for (v, cv) in &left[g1 * a_dim + a1] {
                                rhs.push((*u, *v, c1.mul(cv)));
                            }
                        }
                    }
                }
                if crate::hopf::tensor_normalize(lhs) != crate::hopf::tensor_normalize(rhs) {
                    rep.record("mp4", vec![g, a], "mixed tensor condition fails".into());
                }
            }
            rep
        })
        .collect();
    for rep in ga_reports {
        report.absorb(rep);
    }

    // mp2 and the right-module law: triples (g, a, b).
    let gab_reports: Vec<AxiomReport> = (0..h_dim)
        .into_par_iter()
        .map(|g| {
            let mut rep = AxiomReport::default();
            for a in 0..a_dim {
                for b in 0..a_dim {
                    let ab = a_hs.product(a, b);
                    // right module: g <| (a b) = (g <| a) <| b
                    rep.count_check();
                    let lhs = act_r(&basis(g), ab);
                    let rhs = act_r(&right[g * a_dim + a], &basis(b));
                    if lhs != rhs {
                        rep.record(
                            "right-module",
                            vec![g, a, b],
                            sp_render(&sp_sub(&lhs, &rhs), h_hs.labels()),
                        );
                    }
                    // mp2
                    rep.count_check();
                    let lhs = act_l(&basis(g), ab);
                    let mut rhs: SparseVec = Vec::new();
                    for (g1, g2, cg) in h_hs.comult_of(g) {
                        for (a1, a2, ca) in a_hs.comult_of(a) {
                            let c = cg.mul(ca);
                            let u = &left[g1 * a_dim + a1];
                            if u.is_empty() {
                                continue;
                            }
                            let w = act_l(&right[g2 * a_dim + a2], &basis(b));
                            for (t, ct) in a_hs.mul_elems(u, &w) {
                                rhs.push((t, c.mul(&ct)));
                            }
                        }
                    }
                    let rhs = sp_normalize(rhs);
                    if lhs != rhs {
                        rep.record(
                            "mp2",
                            vec![g, a, b],
                            sp_render(&sp_sub(&lhs, &rhs), a_hs.labels()),
                        );
                    }
                }
            }
            rep
        })
        .collect();
    for rep in gab_reports {
        report.absorb(rep);
    }

    // mp3 and the left-module law: triples (g, t, a).
    let gta_reports: Vec<AxiomReport> = (0..h_dim)
        .into_par_iter()
        .map(|g| {
            let mut rep = AxiomReport::default();
            for t in 0..h_dim {
                let gt = h_hs.product(g, t);
                for a in 0..a_dim {
                    // left module: (g t) |> a = g |> (t |> a)
                    rep.count_check();
                    let lhs = act_l(gt, &basis(a));
                    let rhs = act_l(&basis(g), &left[t * a_dim + a]);
                    if lhs != rhs {
                        rep.record(
                            "left-module",
                            vec![g, t, a],
                            sp_render(&sp_sub(&lhs, &rhs), a_hs.labels()),
                        );
                    }
                    // mp3: (g t) <| a = sum (g <| (t1 |> a1)) (t2 <| a2)
                    rep.count_check();
                    let lhs = act_r(gt, &basis(a));
                    let mut rhs: SparseVec = Vec::new();
                    for (t1, t2, ct) in h_hs.comult_of(t) {
                        for (a1, a2, ca) in a_hs.comult_of(a) {
                            let c = ct.mul(ca);
                            let u = &left[t1 * a_dim + a1];
                            if u.is_empty() {
                                continue;
                            }
                            let w = act_r(&basis(g), u);
                            let v = &right[t2 * a_dim + a2];
                            for (idx, cc) in h_hs.mul_elems(&w, v) {
                                rhs.push((idx, c.mul(&cc)));
                            }
                        }
                    }
                    let rhs = sp_normalize(rhs);
                    if lhs != rhs {
                        rep.record(
                            "mp3",
                            vec![g, t, a],
                            sp_render(&sp_sub(&lhs, &rhs), h_hs.labels()),
                        );
                    }
                }
            }
            rep
        })
        .collect();
    for rep in gta_reports {
        report.absorb(rep);
    }

    report
}

/// Run [`verify_action_tables`] on a Taft-modelled matched pair.
pub fn verify_matched_pair(mp: &MatchedPair) -> Result<AxiomReport> {
    let a_hs = taft_structure(mp.a_descriptor())?;
    let h_hs = taft_structure(mp.h_descriptor())?;
    Ok(verify_action_tables(
        &a_hs,
        &h_hs,
        mp.tables.left_raw(),
        mp.tables.right_raw(),
    ))
}

/// Scalar unknowns of the general generator-action ansatz
///
/// ```text
/// h <| H = h,               h <| X = beta (1 - h),
/// x <| H = b x,             x <| X = alpha (1 - h),
/// h |> H = H,               h |> X = sigma X + gamma (1 - H),
/// x |> H = a X,             x |> X = mu (1 - H),
/// ```
///
/// the most general coalgebra-map-compatible values on generators.
#[derive(Clone, Debug)]
pub struct AnsatzParams {
    pub n: usize,
    pub m: usize,
    pub qbar: CycScalar,
    pub q: CycScalar,
    pub a: CycScalar,
    pub b: CycScalar,
    pub alpha: CycScalar,
    pub beta: CycScalar,
    pub gamma: CycScalar,
    pub sigma: CycScalar,
    pub mu: CycScalar,
}

impl AnsatzParams {
    /// The sigma-family point.
    pub fn for_sigma(n: usize, m: usize, qbar: &CycScalar, q: &CycScalar, sigma: &CycScalar) -> Self {
        let zero = CycScalar::zero(1);
        AnsatzParams {
            n,
            m,
            qbar: qbar.clone(),
            q: q.clone(),
            a: zero.clone(),
            b: sigma.clone(),
            alpha: zero.clone(),
            beta: zero.clone(),
            gamma: zero.clone(),
            sigma: sigma.clone(),
            mu: zero,
        }
    }

    /// The alpha-family point (`m = n`, `qbar = q^{n-1}`).
    pub fn for_alpha(n: usize, q: &CycScalar, alpha: &CycScalar) -> Self {
        let zero = CycScalar::zero(1);
        AnsatzParams {
            n,
            m: n,
            qbar: q.pow(n as i64 - 1).expect("non-negative power"),
            q: q.clone(),
            a: zero.clone(),
            b: q.clone(),
            alpha: alpha.clone(),
            beta: zero.clone(),
            gamma: zero,
            sigma: q.clone(),
            mu: alpha.clone(),
        }
    }
}

/// The scalar obstruction system of the generator ansatz: the fourteen
/// residuals vanish simultaneously exactly on the two families.  Returns
/// `(name, value)` pairs.
pub fn ansatz_residuals(p: &AnsatzParams) -> Vec<(&'static str, CycScalar)> {
    let one = CycScalar::one(1);
    let geom = |r: &CycScalar, len: usize| -> CycScalar {
        let mut acc = CycScalar::zero(1);
        let mut pow = CycScalar::one(1);
        for _ in 0..len {
            acc = acc.add(&pow);
            pow = pow.mul(r);
        }
        acc
    };
    let pow = |r: &CycScalar, e: usize| r.pow(e as i64).expect("non-negative power");
    vec![
        ("b^m - 1", pow(&p.b, p.m).sub(&one)),
        ("a * (1 + b + .. + b^(m-1))", p.a.mul(&geom(&p.b, p.m))),
        (
            "q * (alpha + a * beta) - b * alpha",
            p.q.mul(&p.alpha.add(&p.a.mul(&p.beta))).sub(&p.b.mul(&p.alpha)),
        ),
        ("b * beta * (q - 1)", p.b.mul(&p.beta).mul(&p.q.sub(&one))),
        ("sigma^n - 1", pow(&p.sigma, p.n).sub(&one)),
        (
            "mu * (1 - qbar * sigma)",
            p.mu.mul(&one.sub(&p.qbar.mul(&p.sigma))),
        ),
        (
            "gamma * (1 + sigma + .. + sigma^(n-1))",
            p.gamma.mul(&geom(&p.sigma, p.n)),
        ),
        ("gamma * (q - 1)", p.gamma.mul(&p.q.sub(&one))),
        ("a * (sigma - 1)", p.a.mul(&p.sigma.sub(&one))),
        ("mu * (b - q)", p.mu.mul(&p.b.sub(&p.q))),
        ("a * (qbar - 1)", p.a.mul(&p.qbar.sub(&one))),
        (
            "alpha * (1 - sigma * qbar)",
            p.alpha.mul(&one.sub(&p.sigma.mul(&p.qbar))),
        ),
        ("b - sigma", p.b.sub(&p.sigma)),
        ("alpha - mu", p.alpha.sub(&p.mu)),
    ]
}

/// All matched pairs on `(T_{n^2}(qbar), T_{m^2}(q))`: one sigma pair per
/// `d`-th root of unity (`d = gcd(n, m)`), plus one alpha pair per sample
/// in `alpha_samples` when the alpha family exists (`m = n` and
/// `qbar = q^{n-1}`).
pub fn enumerate_matched_pairs(
    n: usize,
    m: usize,
    qbar: &CycScalar,
    q: &CycScalar,
    alpha_samples: &[CycScalar],
) -> Result<Vec<MatchedPair>> {
    let d = n.gcd(&m);
    let mut out = Vec::new();
    for t in 0..d {
        let sigma = root_of_unity(d, t as i64)?;
        out.push(family_sigma(n, m, qbar, q, &sigma)?);
    }
    if m == n && *qbar == q.pow(n as i64 - 1)? && n >= 2 {
        for alpha in alpha_samples {
            if alpha.is_zero() {
                return Err(Error::InvalidParameter(
                    "alpha samples must be nonzero".into(),
                ));
            }
            out.push(family_alpha(n, q, alpha)?);
        }
    }
    Ok(out)
}
