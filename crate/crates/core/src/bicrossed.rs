//! Bicrossed products `A |><| H`, their presentations by generators and
//! relations, and the Drinfel'd double of a Taft algebra.
//!
//! Given a matched pair, the bicrossed product lives on `A (x) H` with
//!
//! ```text
//! (a |><| g)(c |><| t) = sum a (g1 |> c1)  |><|  (g2 <| c2) t,
//! Delta(a |><| g) = sum (a1 |><| g1) (x) (a2 |><| g2),
//! S(a |><| g) = sum S_H(g2) |> S_A(a2)  |><|  S_H(g1) <| S_A(a1).
//! ```
//!
//! For the two matched-pair families on Taft algebras this yields the
//! Hopf algebras presented on generators `H, X, h, x` by
//!
//! * `T^sigma` (sigma family): Taft relations in each factor plus
//!   `x H = sigma H x`, `h X = sigma X h`, `x X = sigma X x`, `h H = H h`;
//! * `Q^alpha` (alpha family, `m = n`, `qbar = q^{n-1}`): as above with
//!   `sigma = q` except the deformed relation `x X - q X x = alpha (1 - H h)`.
//!
//! [`presentation`] constructs the same structure constants directly from
//! these relations via closed-form letter appends, giving a second path
//! that is compared against [`bicrossed_product`] table by table.
//! [`straighten`] is a word-rewriting engine over the four generators used
//! as an independent oracle for the presentation multiplication; both
//! scan strategies must agree on every input (confluence).
//!
//! [`drinfeld_double`] realizes `D(T_{n^2}(q)) = (T^*)^{cop} |><| T` with
//! the actions
//!
//! ```text
//! z <| f = sum f(S^{-1}(z3) z1) z2,
//! (z |> f)(w) = sum f(S^{-1}(z2) w z1),
//! ```
//!
//! transports them along the structural isomorphism
//! `theta = psi . F^{-1} : T_{n^2}(q^{n-1}) -> (T^*)^{cop}` onto the Taft
//! model, and exhibits the resulting matched pair as the alpha family at
//! `alpha = -1`, together with an explicit isomorphism onto `Q^1`.

use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::{
    sp_normalize, tensor_normalize, BasisLabel, HopfStructure, SparseTensor, SparseVec,
};
use crate::linalg::Matrix;
use crate::matched_pair::{family_alpha, ActionTables, Family, MatchedPair};
use crate::taft::{structural_isos, taft_dual, taft_structure, TaftDescriptor};

/// Bilinear application of an action table `table[g * a_dim + a]`.
fn act_bilinear(table: &[SparseVec], a_dim: usize, g: &SparseVec, a: &SparseVec) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for (gi, cg) in g {
        for (ai, ca) in a {
            let c = cg.mul(ca);
            for (t, ct) in &table[gi * a_dim + ai] {
                acc.push((*t, c.mul(ct)));
            }
        }
    }
    sp_normalize(acc)
}

/// Bicrossed product of two Hopf structures along raw action tables
/// (`left[g * a_dim + a] = g |> a` over the `A` basis, `right` over the
/// `H` basis).  Basis vectors are `e_a (x) e_g` at index
/// `a * dim_H + g`, labelled by the concatenated exponent quadruples.
pub fn bicrossed_from_structures(
    a_hs: &HopfStructure,
    h_hs: &HopfStructure,
    left: &[SparseVec],
    right: &[SparseVec],
) -> Result<HopfStructure> {
    let a_dim = a_hs.dim();
    let h_dim = h_hs.dim();
    if left.len() != a_dim * h_dim || right.len() != a_dim * h_dim {
        return Err(Error::DimensionMismatch(
            "action tables do not match factor dimensions".into(),
        ));
    }
    for l in a_hs.labels().iter().chain(h_hs.labels().iter()) {
        if l.0[2] != 0 || l.0[3] != 0 {
            return Err(Error::DimensionMismatch(
                "bicrossed factors must carry two-slot labels".into(),
            ));
        }
    }
    let dim = a_dim * h_dim;
    let order = num_integer::lcm(a_hs.scalar_order(), h_hs.scalar_order());
    let idx = |a: usize, g: usize| a * h_dim + g;
    let one = CycScalar::one(order);
    let basis = |i: usize| -> SparseVec { vec![(i, one.clone())] };

    let labels: Vec<BasisLabel> = (0..a_dim)
        .flat_map(|a| (0..h_dim).map(move |g| (a, g)))
        .map(|(a, g)| {
            BasisLabel([
                a_hs.labels()[a].0[0],
                a_hs.labels()[a].0[1],
                h_hs.labels()[g].0[0],
                h_hs.labels()[g].0[1],
            ])
        })
        .collect();

    // (e_ra |><| e_rg)(e_sc |><| e_st)
    //   = sum e_ra (g1 |> c1)  |><|  (g2 <| c2) e_st.
    let mut mult = vec![Vec::new(); dim * dim];
    for ra in 0..a_dim {
        for rg in 0..h_dim {
            let r = idx(ra, rg);
            for sc in 0..a_dim {
                for st in 0..h_dim {
                    let s = idx(sc, st);
                    let mut acc: SparseVec = Vec::new();
                    for (g1, g2, cg) in h_hs.comult_of(rg) {
                        for (c1, c2, cc) in a_hs.comult_of(sc) {
                            let u = &left[g1 * a_dim + c1];
                            if u.is_empty() {
                                continue;
                            }
                            let w = &right[g2 * a_dim + c2];
                            if w.is_empty() {
                                continue;
                            }
                            let coef = cg.mul(cc);
                            let a_part = a_hs.mul_elems(&basis(ra), u);
                            let h_part = h_hs.mul_elems(w, &basis(st));
                            for (ta, ca) in &a_part {
                                let c1b = coef.mul(ca);
                                for (th, ch) in &h_part {
                                    acc.push((idx(*ta, *th), c1b.mul(ch)));
                                }
                            }
                        }
                    }
                    mult[r * dim + s] = sp_normalize(acc);
                }
            }
        }
    }

    // Tensor coalgebra.
    let mut comult = vec![Vec::new(); dim];
    let mut counit = vec![CycScalar::zero(order); dim];
    let mut antipode = vec![Vec::new(); dim];
    for ra in 0..a_dim {
        for rg in 0..h_dim {
            let r = idx(ra, rg);
            let mut acc: SparseTensor = Vec::new();
            for (a1, a2, ca) in a_hs.comult_of(ra) {
                for (g1, g2, cg) in h_hs.comult_of(rg) {
                    acc.push((idx(*a1, *g1), idx(*a2, *g2), ca.mul(cg)));
                }
            }
            comult[r] = tensor_normalize(acc);
            counit[r] = a_hs.counit_of(ra).mul(h_hs.counit_of(rg));

            // S(e_ra |><| e_rg) = sum S_H(g2) |> S_A(a2) |><| S_H(g1) <| S_A(a1)
            let mut sacc: SparseVec = Vec::new();
            for (a1, a2, ca) in a_hs.comult_of(ra) {
                for (g1, g2, cg) in h_hs.comult_of(rg) {
                    let coef = ca.mul(cg);
                    let u = act_bilinear(left, a_dim, h_hs.antipode_of(*g2), a_hs.antipode_of(*a2));
                    if u.is_empty() {
                        continue;
                    }
                    let w =
                        act_bilinear(right, a_dim, h_hs.antipode_of(*g1), a_hs.antipode_of(*a1));
                    for (ta, cu) in &u {
                        let c1b = coef.mul(cu);
                        for (th, cw) in &w {
                            sacc.push((idx(*ta, *th), c1b.mul(cw)));
                        }
                    }
                }
            }
            antipode[r] = sp_normalize(sacc);
        }
    }

    let mut unit: SparseVec = Vec::new();
    for (ua, ca) in a_hs.unit() {
        for (ug, cg) in h_hs.unit() {
            unit.push((idx(*ua, *ug), ca.mul(cg)));
        }
    }

    HopfStructure::new(
        dim,
        order,
        labels,
        mult,
        comult,
        counit,
        sp_normalize(unit),
        antipode,
    )
}

/// Bicrossed product of a Taft matched pair.
pub fn bicrossed_product(mp: &MatchedPair) -> Result<HopfStructure> {
    let a_hs = taft_structure(mp.a_descriptor())?;
    let h_hs = taft_structure(mp.h_descriptor())?;
    bicrossed_from_structures(
        &a_hs,
        &h_hs,
        mp.tables().left_raw(),
        mp.tables().right_raw(),
    )
}

/// Defining parameters of a presented bicrossed product.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationParams {
    /// `T^sigma_{n,m}(qbar, q)`.
    TSigma {
        n: usize,
        m: usize,
        qbar: CycScalar,
        q: CycScalar,
        sigma: CycScalar,
    },
    /// `Q^alpha_n(q)` (`qbar = q^{n-1}` implied).
    QAlpha {
        n: usize,
        q: CycScalar,
        alpha: CycScalar,
    },
}

impl PresentationParams {
    /// The presentation matching a family matched pair.
    pub fn for_pair(mp: &MatchedPair) -> PresentationParams {
        match mp.family() {
            Family::Sigma => PresentationParams::TSigma {
                n: mp.n(),
                m: mp.m(),
                qbar: mp.qbar().clone(),
                q: mp.q().clone(),
                sigma: mp.param().clone(),
            },
            Family::Alpha => PresentationParams::QAlpha {
                n: mp.n(),
                q: mp.q().clone(),
                alpha: mp.param().clone(),
            },
        }
    }

    /// Validated `(A, H)` descriptors.
    pub fn descriptors(&self) -> Result<(TaftDescriptor, TaftDescriptor)> {
        match self {
            PresentationParams::TSigma {
                n,
                m,
                qbar,
                q,
                sigma,
            } => {
                let a = TaftDescriptor::new(*n, qbar.clone())?;
                let h = TaftDescriptor::new(*m, q.clone())?;
                let d = num_integer::gcd(*n, *m);
                if sigma.is_zero() || !sigma.pow(d as i64)?.is_one() {
                    return Err(Error::InvalidParameter(format!(
                        "sigma must satisfy sigma^d = 1 with d = gcd(n, m) = {d}"
                    )));
                }
                Ok((a, h))
            }
            PresentationParams::QAlpha { n, q, alpha } => {
                if alpha.is_zero() {
                    return Err(Error::InvalidParameter(
                        "alpha must be nonzero".into(),
                    ));
                }
                let a = TaftDescriptor::new(*n, q.pow(*n as i64 - 1)?)?;
                let h = TaftDescriptor::new(*n, q.clone())?;
                Ok((a, h))
            }
        }
    }

    fn dims(&self) -> (usize, usize) {
        match self {
            PresentationParams::TSigma { n, m, .. } => (*n, *m),
            PresentationParams::QAlpha { n, .. } => (*n, *n),
        }
    }
}

/// The four generators in normal order `H < X < h < x`; normal monomials
/// are `H^i X^j h^k x^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    CapH,
    CapX,
    LowH,
    LowX,
}

/// A word in the generators.
pub type Word = Vec<Letter>;

/// Scan order used by [`straighten`] to pick the next reducible position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Shared presentation context: dimensions, basis codec and letter-append
/// tables.
struct PresCtx {
    n: usize,
    m: usize,
    dim: usize,
    order: usize,
    /// `e -> e * H`, `e * X`, `e * h`, `e * x` per basis monomial.
    append: [Vec<SparseVec>; 4],
}

impl PresCtx {
    fn new(params: &PresentationParams) -> Result<PresCtx> {
        let (a_desc, h_desc) = params.descriptors()?;
        let (n, m) = params.dims();
        let dim = a_desc.dim() * h_desc.dim();
        let param_order = match params {
            PresentationParams::TSigma { sigma, .. } => sigma.order(),
            PresentationParams::QAlpha { alpha, .. } => alpha.order(),
        };
        let order = num_integer::lcm(
            num_integer::lcm(a_desc.q().order(), h_desc.q().order()),
            param_order,
        );

        let enc = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * m + k) * m + l;
        let qbar = a_desc.q().clone();
        let q = h_desc.q().clone();
        let pow = |r: &CycScalar, e: usize| r.pow(e as i64).expect("non-negative power");

        // Diagonal commutation scalars: moving the appended letter left
        // past each trailing letter of the normal monomial.
        let mut append_caph = vec![Vec::new(); dim];
        let mut append_capx = vec![Vec::new(); dim];
        let mut append_lowh = vec![Vec::new(); dim];
        let mut append_lowx = vec![Vec::new(); dim];

        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        let e = enc(i, j, k, l);
                        // e * H: past x^l, h^k, X^j
                        let coeff = match params {
                            PresentationParams::TSigma { sigma, .. } => {
                                pow(sigma, l).mul(&pow(&qbar, j))
                            }
                            PresentationParams::QAlpha { .. } => pow(&q, l + (n - 1) * j),
                        };
                        append_caph[e] = vec![(enc((i + 1) % n, j, k, l), coeff)];
                        // e * h: past x^l
                        append_lowh[e] = vec![(enc(i, j, (k + 1) % m, l), pow(&q, l))];
                        // e * x
                        if l + 1 < m {
                            append_lowx[e] =
                                vec![(enc(i, j, k, l + 1), CycScalar::one(order))];
                        }
                        // e * X for the diagonal family: past x^l and h^k
                        if let PresentationParams::TSigma { sigma, .. } = params {
                            if j + 1 < n {
                                append_capx[e] =
                                    vec![(enc(i, j + 1, k, l), pow(sigma, l + k))];
                            }
                        }
                    }
                }
            }
        }

        // e * X for the deformed family: recursive in l via
        //   (f x) X = q (f X) x + alpha f - alpha (f H) h.
        if let PresentationParams::QAlpha { alpha, .. } = params {
            let apply = |table: &[SparseVec], v: &SparseVec| -> SparseVec {
                let mut acc: SparseVec = Vec::new();
                for (i, c) in v {
                    for (t, ct) in &table[*i] {
                        acc.push((*t, c.mul(ct)));
                    }
                }
                sp_normalize(acc)
            };
            for l in 0..m {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..m {
                            let e = enc(i, j, k, l);
                            if l == 0 {
                                if j + 1 < n {
                                    append_capx[e] = vec![(enc(i, j + 1, k, 0), pow(&q, k))];
                                }
                            } else {
                                let f = enc(i, j, k, l - 1);
                                let f_vec: SparseVec = vec![(f, CycScalar::one(order))];
                                let mut acc: SparseVec = Vec::new();
                                let term1 = apply(&append_lowx, &append_capx[f]);
                                acc.extend(
                                    term1.iter().map(|(t, c)| (*t, c.mul(&q))),
                                );
                                acc.push((f, alpha.clone()));
                                let term3 =
                                    apply(&append_lowh, &apply(&append_caph, &f_vec));
                                acc.extend(
                                    term3.iter().map(|(t, c)| (*t, c.mul(alpha).neg())),
                                );
                                append_capx[e] = sp_normalize(acc);
                            }
                        }
                    }
                }
            }
        }

        Ok(PresCtx {
            n,
            m,
            dim,
            order,
            append: [append_caph, append_capx, append_lowh, append_lowx],
        })
    }

    fn encode(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.m + k) * self.m + l
    }

    fn decode(&self, e: usize) -> (usize, usize, usize, usize) {
        let l = e % self.m;
        let k = (e / self.m) % self.m;
        let j = (e / (self.m * self.m)) % self.n;
        let i = e / (self.m * self.m * self.n);
        (i, j, k, l)
    }

    fn append_letter(&self, v: &SparseVec, letter: Letter) -> SparseVec {
        let table = &self.append[letter as usize];
        let mut acc: SparseVec = Vec::new();
        for (idx, c) in v {
            for (t, ct) in &table[*idx] {
                acc.push((*t, c.mul(ct)));
            }
        }
        sp_normalize(acc)
    }
}

/// Structure constants of the presented bicrossed product, built from the
/// relations by closed-form letter appends (multiplication), algebra-map
/// extension (comultiplication) and the anti-morphism property
/// (antipode).
pub fn presentation(params: &PresentationParams) -> Result<HopfStructure> {
    let ctx = PresCtx::new(params)?;
    let (n, m, dim, order) = (ctx.n, ctx.m, ctx.dim, ctx.order);
    let labels: Vec<BasisLabel> = (0..dim)
        .map(|e| {
            let (i, j, k, l) = ctx.decode(e);
            BasisLabel([i as u16, j as u16, k as u16, l as u16])
        })
        .collect();

    // Multiplication: append the right factor letter by letter.
    let mut mult = vec![Vec::new(); dim * dim];
    for r in 0..dim {
        for s in 0..dim {
            let (i, j, k, l) = ctx.decode(s);
            let mut v: SparseVec = vec![(r, CycScalar::one(order))];
            for _ in 0..i {
                v = ctx.append_letter(&v, Letter::CapH);
            }
            for _ in 0..j {
                v = ctx.append_letter(&v, Letter::CapX);
            }
            for _ in 0..k {
                v = ctx.append_letter(&v, Letter::LowH);
            }
            for _ in 0..l {
                v = ctx.append_letter(&v, Letter::LowX);
            }
            mult[r * dim + s] = v;
        }
    }
    let table_mul = |a: &SparseVec, b: &SparseVec| -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (r, cr) in a {
            for (s, cs) in b {
                let c = cr.mul(cs);
                for (t, ct) in &mult[r * dim + s] {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        sp_normalize(acc)
    };

    // Comultiplication: algebra-map extension along the rightmost letter,
    //   Delta(e' . letter) = Delta(e') Delta(letter),
    // multiplied in the tensor square via the mult table.
    let one = CycScalar::one(order);
    let h_idx = ctx.encode(0, 0, 1, 0);
    let x_idx = ctx.encode(0, 0, 0, 1);
    let cap_h_idx = ctx.encode(1, 0, 0, 0);
    let cap_x_idx = ctx.encode(0, 1, 0, 0);
    let letter_comult = |letter: Letter| -> SparseTensor {
        match letter {
            Letter::CapH => vec![(cap_h_idx, cap_h_idx, one.clone())],
            Letter::CapX => vec![
                (cap_x_idx, cap_h_idx, one.clone()),
                (0, cap_x_idx, one.clone()),
            ],
            Letter::LowH => vec![(h_idx, h_idx, one.clone())],
            Letter::LowX => vec![(x_idx, h_idx, one.clone()), (0, x_idx, one.clone())],
        }
    };
    let mut comult: Vec<SparseTensor> = vec![Vec::new(); dim];
    comult[0] = vec![(0, 0, one.clone())];
    for e in 1..dim {
        let (i, j, k, l) = ctx.decode(e);
        let (pred, letter) = if l > 0 {
            (ctx.encode(i, j, k, l - 1), Letter::LowX)
        } else if k > 0 {
            (ctx.encode(i, j, k - 1, 0), Letter::LowH)
        } else if j > 0 {
            (ctx.encode(i, j - 1, 0, 0), Letter::CapX)
        } else {
            (ctx.encode(i - 1, 0, 0, 0), Letter::CapH)
        };
        let dl = letter_comult(letter);
        let mut acc: SparseTensor = Vec::new();
        for (u, v, c) in &comult[pred] {
            for (p, qq, c2) in &dl {
                let coef = c.mul(c2);
                let first = &mult[u * dim + p];
                let second = &mult[v * dim + qq];
                for (t1, ct1) in first {
                    let cc = coef.mul(ct1);
                    for (t2, ct2) in second {
                        acc.push((*t1, *t2, cc.mul(ct2)));
                    }
                }
            }
        }
        comult[e] = tensor_normalize(acc);
    }

    // Counit kills both skew generators.
    let counit: Vec<CycScalar> = (0..dim)
        .map(|e| {
            let (_, j, _, l) = ctx.decode(e);
            if j == 0 && l == 0 {
                one.clone()
            } else {
                CycScalar::zero(order)
            }
        })
        .collect();

    // Antipode: S(H) = H^{n-1}, S(h) = h^{m-1}, S(x) = -q^{m-1} h^{m-1} x,
    // S(X) = -X H^{n-1} straightened; extended anti-multiplicatively as
    //   S(H^i X^j h^k x^l) = S(x)^l S(h)^k S(X)^j S(H)^i.
    let (a_desc, h_desc) = params.descriptors()?;
    let q = h_desc.q().clone();
    let s_cap_h: SparseVec = vec![(ctx.encode(n - 1, 0, 0, 0), one.clone())];
    let s_low_h: SparseVec = vec![(ctx.encode(0, 0, m - 1, 0), one.clone())];
    let s_low_x: SparseVec = vec![(
        ctx.encode(0, 0, m - 1, 1),
        q.pow(m as i64 - 1)?.neg(),
    )];
    let s_cap_x_coeff = match params {
        PresentationParams::TSigma { .. } => a_desc.q().pow(n as i64 - 1)?.neg(),
        PresentationParams::QAlpha { .. } => q.neg(),
    };
    let s_cap_x: SparseVec = vec![(ctx.encode(n - 1, 1, 0, 0), s_cap_x_coeff)];

    let power_table = |base: &SparseVec, count: usize| -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(count);
        let mut acc: SparseVec = vec![(0, one.clone())];
        for _ in 0..count {
            out.push(acc.clone());
            acc = table_mul(&acc, base);
        }
        out.push(acc);
        out
    };
    let s_cap_h_pow = power_table(&s_cap_h, n);
    let s_cap_x_pow = power_table(&s_cap_x, n);
    let s_low_h_pow = power_table(&s_low_h, m);
    let s_low_x_pow = power_table(&s_low_x, m);

    let mut antipode = vec![Vec::new(); dim];
    for e in 0..dim {
        let (i, j, k, l) = ctx.decode(e);
        let v = table_mul(&s_low_x_pow[l], &s_low_h_pow[k]);
        let v = table_mul(&v, &s_cap_x_pow[j]);
        antipode[e] = table_mul(&v, &s_cap_h_pow[i]);
    }

    let unit: SparseVec = vec![(0, one)];
    HopfStructure::new(dim, order, labels, mult, comult, counit, unit, antipode)
}

/// Normalize a word in the four generators to the basis of normal
/// monomials, applying the presentation's rewrite rules one redex at a
/// time in the given scan order.  Returns the sparse result over the
/// product basis.  Both strategies agree on every word (the system is
/// confluent); this is used as an oracle against the closed-form
/// multiplication.
pub fn straighten(
    word: &[Letter],
    params: &PresentationParams,
    strategy: RewriteStrategy,
) -> Result<SparseVec> {
    let (a_desc, h_desc) = params.descriptors()?;
    let (n, m) = (a_desc.m(), h_desc.m());
    let qbar = a_desc.q().clone();
    let q = h_desc.q().clone();
    let enc = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * m + k) * m + l;

    // Replacement terms for an adjacent out-of-order pair `[a, b]`.
    let swap_terms = |a: Letter, b: Letter| -> Vec<(Word, CycScalar)> {
        let plain = |c: CycScalar| vec![(vec![b, a], c)];
        match (a, b, params) {
            (Letter::LowX, Letter::LowH, _) => plain(q.clone()),
            (Letter::LowH, Letter::CapH, _) => plain(CycScalar::one(1)),
            (Letter::CapX, Letter::CapH, PresentationParams::TSigma { .. }) => plain(qbar.clone()),
            (Letter::CapX, Letter::CapH, PresentationParams::QAlpha { .. }) => {
                plain(q.pow(n as i64 - 1).expect("non-negative power"))
            }
            (Letter::LowH, Letter::CapX, PresentationParams::TSigma { sigma, .. })
            | (Letter::LowX, Letter::CapH, PresentationParams::TSigma { sigma, .. }) => {
                plain(sigma.clone())
            }
            (Letter::LowH, Letter::CapX, PresentationParams::QAlpha { .. })
            | (Letter::LowX, Letter::CapH, PresentationParams::QAlpha { .. }) => plain(q.clone()),
            (Letter::LowX, Letter::CapX, PresentationParams::TSigma { sigma, .. }) => {
                plain(sigma.clone())
            }
            (Letter::LowX, Letter::CapX, PresentationParams::QAlpha { alpha, .. }) => vec![
                (vec![Letter::CapX, Letter::LowX], q.clone()),
                (Vec::new(), alpha.clone()),
                (vec![Letter::CapH, Letter::LowH], alpha.neg()),
            ],
            _ => unreachable!("pairs in normal order are not redexes"),
        }
    };
    let bound = |letter: Letter| match letter {
        Letter::CapH | Letter::CapX => n,
        Letter::LowH | Letter::LowX => m,
    };
    let nilpotent = |letter: Letter| matches!(letter, Letter::CapX | Letter::LowX);

    enum Redex {
        Swap(usize),
        Power(usize),
    }
    let find_redex = |w: &[Letter]| -> Option<Redex> {
        let mut candidates: Vec<(usize, bool)> = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if w[p] > w[p + 1] {
                candidates.push((p, false));
            }
        }
        for p in 0..w.len() {
            let b = bound(w[p]);
            if p + b <= w.len() && w[p..p + b].iter().all(|&c| c == w[p]) {
                candidates.push((p, true));
            }
        }
        match strategy {
            RewriteStrategy::Leftmost => candidates.into_iter().min_by_key(|(p, _)| *p),
            RewriteStrategy::Rightmost => candidates.into_iter().max_by_key(|(p, _)| *p),
        }
        .map(|(p, is_power)| if is_power { Redex::Power(p) } else { Redex::Swap(p) })
    };

    let mut acc: SparseVec = Vec::new();
    let mut stack: Vec<(Word, CycScalar)> = vec![(word.to_vec(), CycScalar::one(1))];
    while let Some((w, c)) = stack.pop() {
        match find_redex(&w) {
            Some(Redex::Swap(p)) => {
                for (repl, rc) in swap_terms(w[p], w[p + 1]) {
                    let mut neww = Vec::with_capacity(w.len());
                    neww.extend_from_slice(&w[..p]);
                    neww.extend_from_slice(&repl);
                    neww.extend_from_slice(&w[p + 2..]);
                    stack.push((neww, c.mul(&rc)));
                }
            }
            Some(Redex::Power(p)) => {
                let letter = w[p];
                if nilpotent(letter) {
                    continue;
                }
                let b = bound(letter);
                let mut neww = Vec::with_capacity(w.len() - b);
                neww.extend_from_slice(&w[..p]);
                neww.extend_from_slice(&w[p + b..]);
                stack.push((neww, c));
            }
            None => {
                let count =
                    |letter: Letter| w.iter().filter(|&&c| c == letter).count();
                acc.push((
                    enc(
                        count(Letter::CapH),
                        count(Letter::CapX),
                        count(Letter::LowH),
                        count(Letter::LowX),
                    ),
                    c,
                ));
            }
        }
    }
    Ok(sp_normalize(acc))
}

/// The Drinfel'd double `D(T_{n^2}(q)) = (T^*)^{cop} |><| T` together
/// with its identification as the alpha family at `alpha = -1` and an
/// explicit isomorphism onto `Q^1_n(q)`.
pub struct DrinfeldDouble {
    /// `(T^*)^{cop}` structure constants (the `A` factor).
    pub dual_cop: HopfStructure,
    /// `T` structure constants (the `H` factor).
    pub taft: HopfStructure,
    /// `g |> f` table over the dual basis.
    pub left_table: Vec<SparseVec>,
    /// `g <| f` table over the Taft basis.
    pub right_table: Vec<SparseVec>,
    /// The double itself in the basis `e*_a (x) e_g`.
    pub double: HopfStructure,
    /// Columns of `theta = psi . F^{-1} : T_{n^2}(q^{n-1}) -> (T^*)^{cop}`.
    pub theta_columns: Vec<SparseVec>,
    /// The double's actions transported onto the Taft model along `theta`.
    pub model_pair: MatchedPair,
    /// `Q^1_n(q)` built from the alpha family.
    pub q1: HopfStructure,
    /// Columns of the isomorphism `D(T) -> Q^1`.
    pub q1_witness_columns: Vec<SparseVec>,
}

/// Construct the Drinfel'd double of `T_{n^2}(q)` with the actions
///
/// ```text
/// z <| f = sum f(S^{-1}(z3) z1) z2,    (z |> f)(w) = sum f(S^{-1}(z2) w z1).
/// ```
pub fn drinfeld_double(n: usize, q: &CycScalar) -> Result<DrinfeldDouble> {
    let desc = TaftDescriptor::new(n, q.clone())?;
    let t_hs = taft_structure(&desc)?;
    let dual = taft_dual(&desc)?;
    let dual_cop = dual.structure().cop()?;
    let dim = desc.dim();
    let order = q.order();
    let one = CycScalar::one(order);
    let basis = |i: usize| -> SparseVec { vec![(i, one.clone())] };

    let s_cols: Vec<SparseVec> = (0..dim).map(|r| t_hs.antipode_of(r).clone()).collect();
    let s_inv = Matrix::from_columns(dim, &s_cols, order).inverse()?;

    let mut left = vec![Vec::new(); dim * dim];
    let mut right = vec![Vec::new(); dim * dim];
    for z in 0..dim {
        // z <| e*_f picks the e_f-coefficient of S^{-1}(z3) z1 and keeps z2.
        for (z1, z2, z3, c) in t_hs.sweedler3(z) {
            let s_z3 = s_inv.column_sparse(z3);
            let w = t_hs.mul_elems(&s_z3, &basis(z1));
            for (f, cf) in &w {
                right[z * dim + f].push((z2, c.mul(cf)));
            }
        }
        // (z |> e*_f)(e_w) is the e_f-coefficient of S^{-1}(z2) e_w z1.
        for (z1, z2, c) in t_hs.comult_of(z) {
            let s_z2 = s_inv.column_sparse(*z2);
            for w in 0..dim {
                let prod = t_hs.mul_elems(&t_hs.mul_elems(&s_z2, &basis(w)), &basis(*z1));
                for (f, cf) in &prod {
                    left[z * dim + f].push((w, c.mul(cf)));
                }
            }
        }
    }
    let left: Vec<SparseVec> = left.into_iter().map(sp_normalize).collect();
    let right: Vec<SparseVec> = right.into_iter().map(sp_normalize).collect();

    let double = bicrossed_from_structures(&dual_cop, &t_hs, &left, &right)?;

    // theta = psi . F^{-1}: model (T^*)^{cop} on the Taft algebra
    // T_{n^2}(q^{n-1}).  The composite is then normalized by the diagonal
    // automorphism x -> c x of the model so that the transported
    // deformation scalar (read off `x |> X`) is exactly -1: without this
    // each choice of cop-isomorphism lands on a different unit multiple.
    let isos = structural_isos(&desc)?;
    let f_mat = Matrix::from_columns(dim, &isos.cop_columns, order);
    let f_inv = f_mat.inverse()?;
    let psi_mat = Matrix::from_columns(dim, dual.psi_columns(), order);
    let raw_theta = psi_mat.matmul(&f_inv)?;
    let raw_theta_inv = raw_theta.inverse()?;
    let model_desc = TaftDescriptor::new(n, q.pow(n as i64 - 1)?)?;
    let x_idx = desc.index(0, 1);
    let cap_x_idx = model_desc.index(0, 1);
    let acted = act_bilinear(
        &left,
        dim,
        &basis(x_idx),
        &raw_theta.column_sparse(cap_x_idx),
    );
    let prelim = raw_theta_inv.apply_sparse(&acted);
    let mu = prelim
        .iter()
        .find(|(t, _)| *t == 0)
        .map(|(_, c)| c.clone())
        .ok_or_else(|| {
            Error::InstanceMismatch("transported x |> X has no identity component".into())
        })?;
    let c = mu.inv()?.neg();
    let theta_columns: Vec<SparseVec> = (0..dim)
        .map(|a| {
            let scale = c.pow((a % n) as i64).expect("non-negative power");
            raw_theta
                .column_sparse(a)
                .into_iter()
                .map(|(t, v)| (t, v.mul(&scale)))
                .collect()
        })
        .collect();
    let theta_mat = Matrix::from_columns(dim, &theta_columns, order);
    let theta_inv = theta_mat.inverse()?;
    let mut model_left = vec![Vec::new(); dim * dim];
    let mut model_right = vec![Vec::new(); dim * dim];
    for g in 0..dim {
        for a in 0..dim {
            let th_a = &theta_columns[a];
            let acted = act_bilinear(&left, dim, &basis(g), th_a);
            model_left[g * dim + a] = theta_inv.apply_sparse(&acted);
            model_right[g * dim + a] = act_bilinear(&right, dim, &basis(g), th_a);
        }
    }
    let minus_one = CycScalar::one(1).neg();
    let model_tables = ActionTables::from_raw(&model_desc, &desc, model_left, model_right)?;
    let model_pair = MatchedPair::from_tables_unchecked(Family::Alpha, minus_one, model_tables);

    // Isomorphism onto Q^1: (theta^{-1} (x) id) followed by the diagonal
    // rescaling X -> -X (which carries alpha = -1 to alpha = 1).
    let q1_pair = family_alpha(n, q, &CycScalar::one(1))?;
    let q1 = bicrossed_product(&q1_pair)?;
    let mut q1_witness_columns = vec![Vec::new(); dim * dim];
    for fa in 0..dim {
        let model_a = theta_inv.column_sparse(fa);
        for z in 0..dim {
            let col: SparseVec = model_a
                .iter()
                .map(|(ma, ca)| {
                    let j = ma % n; // X-degree of the model monomial
                    let sign = if j % 2 == 0 {
                        ca.clone()
                    } else {
                        ca.neg()
                    };
                    (ma * dim + z, sign)
                })
                .collect();
            q1_witness_columns[fa * dim + z] = sp_normalize(col);
        }
    }

    Ok(DrinfeldDouble {
        dual_cop,
        taft: t_hs,
        left_table: left,
        right_table: right,
        double,
        theta_columns,
        model_pair,
        q1,
        q1_witness_columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{root_of_unity, Rational};
    use crate::hopf::{
        hopf_morphism_report, structures_equal, tensor_product_structure, verify_hopf,
    };
    use crate::matched_pair::{family_sigma, verify_action_tables};
    use crate::taft::TaftElement;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zeta(l: usize, k: i64) -> CycScalar {
        root_of_unity(l, k).unwrap()
    }

    fn rat(v: i64) -> CycScalar {
        CycScalar::from_rational(Rational::from(BigInt::from(v)))
    }

    fn sigma_params(n: usize, m: usize, qb: i64, qe: i64, d: usize, se: i64) -> PresentationParams {
        PresentationParams::TSigma {
            n,
            m,
            qbar: zeta(n, qb),
            q: zeta(m, qe),
            sigma: zeta(d, se),
        }
    }

    #[test]
    fn presentation_relations_sigma() {
        let params = sigma_params(3, 3, 2, 1, 3, 2);
        let hs = presentation(&params).unwrap();
        let enc = |i: usize, j: usize, k: usize, l: usize| ((i * 3 + j) * 3 + k) * 3 + l;
        let sigma = zeta(3, 2);
        let q = zeta(3, 1);
        let qbar = zeta(3, 2);
        // x h = q h x
        assert_eq!(
            hs.product(enc(0, 0, 0, 1), enc(0, 0, 1, 0)),
            &vec![(enc(0, 0, 1, 1), q.clone())]
        );
        // X H = qbar H X
        assert_eq!(
            hs.product(enc(0, 1, 0, 0), enc(1, 0, 0, 0)),
            &vec![(enc(1, 1, 0, 0), qbar)]
        );
        // x X = sigma X x
        assert_eq!(
            hs.product(enc(0, 0, 0, 1), enc(0, 1, 0, 0)),
            &vec![(enc(0, 1, 0, 1), sigma.clone())]
        );
        // h X = sigma X h
        assert_eq!(
            hs.product(enc(0, 0, 1, 0), enc(0, 1, 0, 0)),
            &vec![(enc(0, 1, 1, 0), sigma)]
        );
        // h H = H h
        assert_eq!(
            hs.product(enc(0, 0, 1, 0), enc(1, 0, 0, 0)),
            &vec![(enc(1, 0, 1, 0), CycScalar::one(1))]
        );
        // h^3 = 1, x^2 * x = 0
        assert_eq!(
            hs.product(enc(0, 0, 2, 0), enc(0, 0, 1, 0)),
            &vec![(0, CycScalar::one(1))]
        );
        assert!(hs.product(enc(0, 0, 0, 2), enc(0, 0, 0, 1)).is_empty());
        // S(X) = -qbar^{n-1} H^{n-1} X
        assert_eq!(
            hs.antipode_of(enc(0, 1, 0, 0)),
            &vec![(enc(2, 1, 0, 0), zeta(3, 2).pow(2).unwrap().neg())]
        );
    }

    #[test]
    fn presentation_relations_q_alpha() {
        let q = zeta(3, 1);
        let alpha = rat(2);
        let params = PresentationParams::QAlpha {
            n: 3,
            q: q.clone(),
            alpha: alpha.clone(),
        };
        let hs = presentation(&params).unwrap();
        let enc = |i: usize, j: usize, k: usize, l: usize| ((i * 3 + j) * 3 + k) * 3 + l;
        // x X = q X x + alpha 1 - alpha H h
        assert_eq!(
            hs.product(enc(0, 0, 0, 1), enc(0, 1, 0, 0)),
            &vec![
                (0, alpha.clone()),
                (enc(0, 1, 0, 1), q.clone()),
                (enc(1, 0, 1, 0), alpha.neg()),
            ]
        );
        // X H = q^{n-1} H X
        assert_eq!(
            hs.product(enc(0, 1, 0, 0), enc(1, 0, 0, 0)),
            &vec![(enc(1, 1, 0, 0), q.pow(2).unwrap())]
        );
        // S(X) = -q H^{n-1} X
        assert_eq!(
            hs.antipode_of(enc(0, 1, 0, 0)),
            &vec![(enc(2, 1, 0, 0), q.neg())]
        );
    }

    #[test]
    fn bicrossed_product_equals_presentation_small() {
        // (2, 2), both sigma values
        for se in 0..2 {
            let mp = family_sigma(2, 2, &zeta(2, 1), &zeta(2, 1), &zeta(2, se)).unwrap();
            let product = bicrossed_product(&mp).unwrap();
            let presented = presentation(&PresentationParams::for_pair(&mp)).unwrap();
            assert!(
                structures_equal(&product, &presented, None).unwrap(),
                "sigma = (-1)^{se}"
            );
        }
        // alpha family at n = 2
        let mp = family_alpha(2, &zeta(2, 1), &rat(1)).unwrap();
        let product = bicrossed_product(&mp).unwrap();
        let presented = presentation(&PresentationParams::for_pair(&mp)).unwrap();
        assert!(structures_equal(&product, &presented, None).unwrap());
    }

    #[test]
    fn product_mixed_relation_examples() {
        // (1 |><| x)(X |><| 1) in the sigma product equals sigma (X |><| x).
        let sigma = zeta(2, 1);
        let mp = family_sigma(2, 2, &zeta(2, 1), &zeta(2, 1), &sigma).unwrap();
        let hs = bicrossed_product(&mp).unwrap();
        let enc = |i: usize, j: usize, k: usize, l: usize| ((i * 2 + j) * 2 + k) * 2 + l;
        assert_eq!(
            hs.product(enc(0, 0, 0, 1), enc(0, 1, 0, 0)),
            &vec![(enc(0, 1, 0, 1), sigma)]
        );
        // In the alpha product it deforms: q (X |><| x) + alpha - alpha (H |><| h).
        let alpha = rat(2);
        let q = zeta(2, 1);
        let mp = family_alpha(2, &q, &alpha).unwrap();
        let hs = bicrossed_product(&mp).unwrap();
        assert_eq!(
            hs.product(enc(0, 0, 0, 1), enc(0, 1, 0, 0)),
            &vec![
                (0, alpha.clone()),
                (enc(0, 1, 0, 1), q),
                (enc(1, 0, 1, 0), alpha.neg()),
            ]
        );
    }

    #[test]
    fn presented_structures_pass_axioms() {
        let cases = [
            sigma_params(2, 2, 1, 1, 2, 1),
            PresentationParams::QAlpha {
                n: 2,
                q: zeta(2, 1),
                alpha: rat(1),
            },
        ];
        for params in cases {
            let hs = presentation(&params).unwrap();
            let report = verify_hopf(&hs);
            assert!(report.pass(), "failed: {:?}", report.failed_axioms());
        }
    }

    #[test]
    fn trivial_sigma_product_is_tensor_product() {
        let mp = family_sigma(2, 2, &zeta(2, 1), &zeta(2, 1), &rat(1)).unwrap();
        let product = bicrossed_product(&mp).unwrap();
        let factor_a = taft_structure(mp.a_descriptor()).unwrap();
        let factor_h = taft_structure(mp.h_descriptor()).unwrap();
        let tensor = tensor_product_structure(&factor_a, &factor_h).unwrap();
        assert!(structures_equal(&product, &tensor, None).unwrap());
    }

    #[test]
    fn straighten_agrees_with_multiplication_table() {
        let params = sigma_params(2, 2, 1, 1, 2, 1);
        let hs = presentation(&params).unwrap();
        let word_of = |e: usize| -> Word {
            let l = e % 2;
            let k = (e / 2) % 2;
            let j = (e / 4) % 2;
            let i = e / 8;
            let mut w = Vec::new();
            w.extend(std::iter::repeat(Letter::CapH).take(i));
            w.extend(std::iter::repeat(Letter::CapX).take(j));
            w.extend(std::iter::repeat(Letter::LowH).take(k));
            w.extend(std::iter::repeat(Letter::LowX).take(l));
            w
        };
        for r in 0..16 {
            for s in 0..16 {
                let mut w = word_of(r);
                w.extend(word_of(s));
                let via_rewrite = straighten(&w, &params, RewriteStrategy::Leftmost).unwrap();
                assert_eq!(
                    &via_rewrite,
                    hs.product(r, s),
                    "straighten disagrees at ({r}, {s})"
                );
            }
        }
    }

    #[test]
    fn straighten_is_confluent_on_random_words() {
        let params_list = [
            sigma_params(3, 3, 2, 1, 3, 1),
            PresentationParams::QAlpha {
                n: 3,
                q: zeta(3, 1),
                alpha: rat(2),
            },
        ];
        let letters = [Letter::CapH, Letter::CapX, Letter::LowH, Letter::LowX];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for params in &params_list {
            for _ in 0..60 {
                let len = rng.gen_range(0..=8);
                let w: Word = (0..len).map(|_| letters[rng.gen_range(0..4)]).collect();
                let lhs = straighten(&w, params, RewriteStrategy::Leftmost).unwrap();
                let rhs = straighten(&w, params, RewriteStrategy::Rightmost).unwrap();
                assert_eq!(lhs, rhs, "strategies disagree on {w:?}");
            }
        }
    }

    #[test]
    fn double_recovers_alpha_family_at_minus_one() {
        let q = zeta(2, 1);
        let dd = drinfeld_double(2, &q).unwrap();

        // The raw actions satisfy every matched-pair axiom.
        let rep = verify_action_tables(&dd.dual_cop, &dd.taft, &dd.left_table, &dd.right_table);
        assert!(rep.pass(), "double actions failed: {:?}", rep.failed_axioms());

        // theta is a Hopf isomorphism onto the dual-cop factor.
        let model_hs = taft_structure(dd.model_pair.a_descriptor()).unwrap();
        let rep = hopf_morphism_report(&dd.theta_columns, &model_hs, &dd.dual_cop);
        assert!(rep.pass(), "theta failed: {:?}", rep.failed_axioms());
        let rank = Matrix::from_columns(4, &dd.theta_columns, q.order()).rank();
        assert_eq!(rank, 4);

        // Transported tables equal the alpha family at alpha = -1.
        let reference = family_alpha(2, &q, &rat(-1)).unwrap();
        assert_eq!(
            dd.model_pair.tables().left_raw(),
            reference.tables().left_raw()
        );
        assert_eq!(
            dd.model_pair.tables().right_raw(),
            reference.tables().right_raw()
        );

        // The double is a Hopf algebra and maps isomorphically onto Q^1.
        let rep = verify_hopf(&dd.double);
        assert!(rep.pass(), "double failed: {:?}", rep.failed_axioms());
        let rep = hopf_morphism_report(&dd.q1_witness_columns, &dd.double, &dd.q1);
        assert!(rep.pass(), "witness failed: {:?}", rep.failed_axioms());
        let rank = Matrix::from_columns(16, &dd.q1_witness_columns, q.order()).rank();
        assert_eq!(rank, 16);
    }

    #[test]
    fn double_action_formula_spot_check() {
        // x <| psi(x) = h - 1 inside D(T_4(-1)).
        let q = zeta(2, 1);
        let dd = drinfeld_double(2, &q).unwrap();
        let desc = TaftDescriptor::new(2, q).unwrap();
        let x_idx = desc.index(0, 1);
        let psi_x = taft_dual(&desc).unwrap().psi_columns()[x_idx].clone();
        let acted = act_bilinear(
            &dd.right_table,
            4,
            &vec![(x_idx, CycScalar::one(2))],
            &psi_x,
        );
        let h = TaftElement::gen_h(&desc);
        let expected = h.sub(&TaftElement::one(&desc)).unwrap().to_sparse();
        assert_eq!(acted, expected);
    }
}
