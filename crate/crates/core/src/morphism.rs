//! Hopf algebra morphisms between bicrossed products, isomorphism
//! testing, classification, and automorphism groups.
//!
//! Every Hopf algebra map `psi : A |><| H -> A' |><|' H'` between
//! bicrossed products corresponds to a quadruple `(u, p, r, v)` of
//! unitary coalgebra maps `u: A -> A'`, `p: A -> H'`, `r: H -> A'`,
//! `v: H -> H'` subject to eight compatibility conditions:
//!
//! ```text
//! (c1)  u(a1) (x) p(a2) = u(a2) (x) p(a1)
//! (c2)  r(g1) (x) v(g2) = r(g2) (x) v(g1)
//! (c3)  u(ab) = u(a1) (p(a2) |>' u(b))
//! (c4)  p(ab) = (p(a) <|' u(b1)) p(b2)
//! (c5)  r(tg) = r(t1) (v(t2) |>' r(g))
//! (c6)  v(tg) = (v(t) <|' r(g1)) v(g2)
//! (c7)  r(g1) (v(g2) |>' u(b)) = u(g1 |> b1) (p(g2 |> b2) |>' r(g3 <| b3))
//! (c8)  (v(g) <|' u(b1)) p(b2) = (p(g1 |> b1) <|' r(g2 <| b2)) v(g3 <| b3)
//! ```
//!
//! and the morphism attached to a quadruple is
//!
//! ```text
//! psi(a |><| g) = u(a1) (p(a2) |>' r(g1))  |><|'  (p(a3) <|' r(g2)) v(g3).
//! ```
//!
//! All conditions are multilinear in the free arguments, so the sweeps
//! here evaluate them on basis elements with exact arithmetic.
//!
//! Because the factors are Taft algebras, every unitary coalgebra map in
//! a quadruple that can participate in an isomorphism is supported on a
//! small number of structured families (diagonal rescalings and, when the
//! two factors coincide, factor swaps); [`iso_search`] runs these
//! families and returns either a verified isomorphism witness or the
//! table of exact refutations.  [`falsify_excluded_shapes`] additionally
//! documents why the remaining generator-level shapes for `(u, p)` can
//! never satisfy the conditions.  [`classify`] enumerates representatives,
//! decides all pairwise isomorphisms, and checks the class count against
//! the closed-form formula.  [`automorphisms`] verifies the composition
//! laws of the automorphism families on a parameter grid and returns the
//! symbolic group description.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bicrossed::{bicrossed_product, PresentationParams};
use crate::cyclotomic::{roots_of_unity_group, CycScalar, Rational};
use crate::error::{Error, Result};
use crate::hopf::{
    is_hopf_morphism, sp_normalize, sp_render, sp_sub, tensor_normalize, HopfStructure,
    SparseTensor, SparseVec,
};
use crate::linalg::Matrix;
use crate::matched_pair::{family_alpha, family_sigma, ActionTables, MatchedPair};
use crate::report::AxiomReport;
use crate::taft::{taft_structure, TaftDescriptor};

/// A linear map between two based spaces, stored as sparse columns
/// (`columns[j]` is the image of source basis vector `j`).
#[derive(Clone, Debug, Serialize)]
pub struct LinearMap {
    src_dim: usize,
    tgt_dim: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(src_dim: usize, tgt_dim: usize, columns: Vec<SparseVec>) -> Result<LinearMap> {
        if columns.len() != src_dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {src_dim} columns, got {}",
                columns.len()
            )));
        }
        for col in &columns {
            for (t, _) in col {
                if *t >= tgt_dim {
                    return Err(Error::IndexOutOfRange(format!(
                        "column entry {t} exceeds target dimension {tgt_dim}"
                    )));
                }
            }
        }
        Ok(LinearMap {
            src_dim,
            tgt_dim,
            columns,
        })
    }

    pub fn identity(dim: usize) -> LinearMap {
        LinearMap {
            src_dim: dim,
            tgt_dim: dim,
            columns: (0..dim).map(|j| vec![(j, CycScalar::one(1))]).collect(),
        }
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    /// Image of a sparse vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        apply_map(&self.columns, v)
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.tgt_dim != self.src_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner target {} vs outer source {}",
                other.tgt_dim, self.src_dim
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        LinearMap::new(other.src_dim, self.tgt_dim, columns)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        Matrix::from_columns(self.tgt_dim.max(self.src_dim), &self.columns, 1).rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.src_dim == self.tgt_dim && self.rank() == self.src_dim
    }

    /// Columns compare equal as normalized sparse vectors.
    pub fn equals(&self, other: &LinearMap) -> bool {
        self.src_dim == other.src_dim
            && self.tgt_dim == other.tgt_dim
            && self.columns == other.columns
    }
}

fn apply_map(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for (i, c) in v {
        for (t, ct) in &cols[*i] {
            acc.push((*t, c.mul(ct)));
        }
    }
    sp_normalize(acc)
}

fn left_act(tables: &ActionTables, g: &SparseVec, a: &SparseVec) -> SparseVec {
    let a_dim = tables.a_descriptor().dim();
    let mut acc: SparseVec = Vec::new();
    for (gi, cg) in g {
        for (ai, ca) in a {
            let c = cg.mul(ca);
            for (t, ct) in &tables.left_raw()[gi * a_dim + ai] {
                acc.push((*t, c.mul(ct)));
            }
        }
    }
    sp_normalize(acc)
}

fn right_act(tables: &ActionTables, g: &SparseVec, a: &SparseVec) -> SparseVec {
    let a_dim = tables.a_descriptor().dim();
    let mut acc: SparseVec = Vec::new();
    for (gi, cg) in g {
        for (ai, ca) in a {
            let c = cg.mul(ca);
            for (t, ct) in &tables.right_raw()[gi * a_dim + ai] {
                acc.push((*t, c.mul(ct)));
            }
        }
    }
    sp_normalize(acc)
}

/// A bicrossed-product instance bundled with the structures the morphism
/// machinery needs: the matched pair, both factor Hopf structures, and
/// the product itself (built lazily, since condition checks only touch
/// the factors).
pub struct Instance {
    params: PresentationParams,
    pair: MatchedPair,
    a_hs: HopfStructure,
    h_hs: HopfStructure,
    product: OnceLock<HopfStructure>,
}

impl Instance {
    pub fn new(params: &PresentationParams) -> Result<Instance> {
        let pair = match params {
            PresentationParams::TSigma {
                n,
                m,
                qbar,
                q,
                sigma,
            } => family_sigma(*n, *m, qbar, q, sigma)?,
            PresentationParams::QAlpha { n, q, alpha } => family_alpha(*n, q, alpha)?,
        };
        Instance::from_pair(params.clone(), pair)
    }

    pub fn from_pair(params: PresentationParams, pair: MatchedPair) -> Result<Instance> {
        let a_hs = taft_structure(pair.a_descriptor())?;
        let h_hs = taft_structure(pair.h_descriptor())?;
        Ok(Instance {
            params,
            pair,
            a_hs,
            h_hs,
            product: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &PresentationParams {
        &self.params
    }

    pub fn pair(&self) -> &MatchedPair {
        &self.pair
    }

    pub fn a_structure(&self) -> &HopfStructure {
        &self.a_hs
    }

    pub fn h_structure(&self) -> &HopfStructure {
        &self.h_hs
    }

    pub fn dim(&self) -> usize {
        self.a_hs.dim() * self.h_hs.dim()
    }

    /// The bicrossed product, built on first use.
    pub fn product(&self) -> Result<&HopfStructure> {
        if self.product.get().is_none() {
            let built = bicrossed_product(&self.pair)?;
            let _ = self.product.set(built);
        }
        Ok(self.product.get().expect("just initialized"))
    }
}

/// The four components of a candidate morphism, as sparse columns over
/// the source factor bases.
#[derive(Clone, Debug)]
pub struct Quadruple {
    /// `u: A -> A'`.
    pub u: Vec<SparseVec>,
    /// `p: A -> H'`.
    pub p: Vec<SparseVec>,
    /// `r: H -> A'`.
    pub r: Vec<SparseVec>,
    /// `v: H -> H'`.
    pub v: Vec<SparseVec>,
}

fn trivial_cols(domain: &HopfStructure, codomain: &HopfStructure) -> Vec<SparseVec> {
    (0..domain.dim())
        .map(|r| {
            let c = domain.counit_of(r);
            if c.is_zero() {
                Vec::new()
            } else {
                codomain
                    .unit()
                    .iter()
                    .map(|(t, cu)| (*t, c.mul(cu)))
                    .collect()
            }
        })
        .collect()
}

/// Columns of the grading rescale `h^i x^j -> param^j h^i x^j`.
fn diagonal_cols(desc: &TaftDescriptor, param: &CycScalar) -> Result<Vec<SparseVec>> {
    if param.is_zero() {
        return Err(Error::InvalidParameter(
            "diagonal rescale parameter must be nonzero".into(),
        ));
    }
    let m = desc.m();
    let mut cols = Vec::with_capacity(desc.dim());
    for i in 0..m {
        for j in 0..m {
            cols.push(vec![(desc.index(i, j), param.pow(j as i64)?)]);
        }
    }
    Ok(cols)
}

/// Columns of the factor swap `h^i x^j -> param^j g^i y^j` between two
/// Taft algebras on the same parameters (the commutation factors cancel
/// exactly because the two `q`s agree, so the swap is basis-to-basis).
fn swap_cols(
    src: &TaftDescriptor,
    tgt: &TaftDescriptor,
    param: &CycScalar,
) -> Result<Vec<SparseVec>> {
    if src != tgt {
        return Err(Error::InstanceMismatch(
            "factor swap requires equal Taft parameters on both sides".into(),
        ));
    }
    diagonal_cols(tgt, param)
}

/// The structured quadruple families that can carry isomorphisms between
/// the bicrossed products in scope.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum QuadrupleFamily {
    /// `u = beta-rescale`, `p`, `r` trivial, `v = eta-rescale`; the
    /// morphism is `a |><| g -> u(a) |><| v(g)`.
    DiagonalPair { beta: CycScalar, eta: CycScalar },
    /// `u`, `v` trivial, `p = zeta-swap`, `r = gamma-swap`; exchanges the
    /// two factors (requires both factors on equal parameters).
    SwapPair { zeta: CycScalar, gamma: CycScalar },
    /// `u`, `r` trivial, `p = zeta-swap`, `v = eta-rescale`; a valid
    /// morphism but never surjective.
    PSwapHalf { zeta: CycScalar, eta: CycScalar },
    /// `u = beta-rescale`, `p`, `v` trivial, `r = gamma-swap`; a valid
    /// morphism but never surjective.
    RSwapHalf { beta: CycScalar, gamma: CycScalar },
    /// The diagonal pair with `eta = beta^{-1}` (the automorphism family
    /// of the deformed product).
    QDiagonal { beta: CycScalar },
}

impl QuadrupleFamily {
    pub fn describe(&self) -> String {
        match self {
            QuadrupleFamily::DiagonalPair { beta, eta } => {
                format!("diagonal(beta={beta}, eta={eta})")
            }
            QuadrupleFamily::SwapPair { zeta, gamma } => {
                format!("swap(zeta={zeta}, gamma={gamma})")
            }
            QuadrupleFamily::PSwapHalf { zeta, eta } => {
                format!("p-swap-half(zeta={zeta}, eta={eta})")
            }
            QuadrupleFamily::RSwapHalf { beta, gamma } => {
                format!("r-swap-half(beta={beta}, gamma={gamma})")
            }
            QuadrupleFamily::QDiagonal { beta } => format!("q-diagonal(beta={beta})"),
        }
    }

    /// Materialize the family member as concrete columns between two
    /// instances; errors when the factor parameters rule the shape out.
    pub fn to_quadruple(&self, src: &Instance, tgt: &Instance) -> Result<Quadruple> {
        let sa = src.pair.a_descriptor();
        let sh = src.pair.h_descriptor();
        let ta = tgt.pair.a_descriptor();
        let th = tgt.pair.h_descriptor();
        let same_sides = || -> Result<()> {
            if sa != ta || sh != th {
                return Err(Error::InstanceMismatch(
                    "diagonal quadruples need equal factor parameters sidewise".into(),
                ));
            }
            Ok(())
        };
        match self {
            QuadrupleFamily::DiagonalPair { beta, eta } => {
                same_sides()?;
                Ok(Quadruple {
                    u: diagonal_cols(ta, beta)?,
                    p: trivial_cols(&src.a_hs, &tgt.h_hs),
                    r: trivial_cols(&src.h_hs, &tgt.a_hs),
                    v: diagonal_cols(th, eta)?,
                })
            }
            QuadrupleFamily::QDiagonal { beta } => QuadrupleFamily::DiagonalPair {
                beta: beta.clone(),
                eta: beta.inv()?,
            }
            .to_quadruple(src, tgt),
            QuadrupleFamily::SwapPair { zeta, gamma } => Ok(Quadruple {
                u: trivial_cols(&src.a_hs, &tgt.a_hs),
                p: swap_cols(sa, th, zeta)?,
                r: swap_cols(sh, ta, gamma)?,
                v: trivial_cols(&src.h_hs, &tgt.h_hs),
            }),
            QuadrupleFamily::PSwapHalf { zeta, eta } => {
                same_sides()?;
                Ok(Quadruple {
                    u: trivial_cols(&src.a_hs, &tgt.a_hs),
                    p: swap_cols(sa, th, zeta)?,
                    r: trivial_cols(&src.h_hs, &tgt.a_hs),
                    v: diagonal_cols(th, eta)?,
                })
            }
            QuadrupleFamily::RSwapHalf { beta, gamma } => {
                same_sides()?;
                Ok(Quadruple {
                    u: diagonal_cols(ta, beta)?,
                    p: trivial_cols(&src.a_hs, &tgt.h_hs),
                    r: swap_cols(sh, ta, gamma)?,
                    v: trivial_cols(&src.h_hs, &tgt.h_hs),
                })
            }
        }
    }
}

/// Check one component for the unitary coalgebra-map property.
fn check_component(
    report: &mut AxiomReport,
    name: &'static str,
    unital: &'static str,
    counital: &'static str,
    comultiplicative: &'static str,
    cols: &[SparseVec],
    domain: &HopfStructure,
    codomain: &HopfStructure,
) {
    report.count_check();
    if cols.len() != domain.dim() {
        report.record(name, vec![], "wrong column count".into());
        return;
    }
    report.count_check();
    let img_unit = apply_map(cols, domain.unit());
    let diff = sp_sub(&img_unit, codomain.unit());
    if !diff.is_empty() {
        report.record(unital, vec![], sp_render(&diff, codomain.labels()));
    }
    for r in 0..domain.dim() {
        report.count_check();
        let mut eps = CycScalar::zero(1);
        for (t, c) in &cols[r] {
            eps = eps.add(&c.mul(codomain.counit_of(*t)));
        }
        let diff = eps.sub(domain.counit_of(r));
        if !diff.is_zero() {
            report.record(counital, vec![r], diff.to_string());
        }

        report.count_check();
        let mut lhs: SparseTensor = Vec::new();
        for (t, c) in &cols[r] {
            for (t1, t2, ct) in codomain.comult_of(*t) {
                lhs.push((*t1, *t2, c.mul(ct)));
            }
        }
        for (r1, r2, c) in domain.comult_of(r) {
            for (t1, c1) in &cols[*r1] {
                let cc = c.mul(c1).neg();
                for (t2, c2) in &cols[*r2] {
                    lhs.push((*t1, *t2, cc.mul(c2)));
                }
            }
        }
        if !tensor_normalize(lhs).is_empty() {
            report.record(comultiplicative, vec![r], "comultiplication not intertwined".into());
        }
    }
}

/// Exhaustive exact sweep of the unitary-coalgebra preconditions and the
/// eight compatibility conditions over all relevant basis tuples.
pub fn check_quadruple(qd: &Quadruple, src: &Instance, tgt: &Instance) -> AxiomReport {
    let mut report = AxiomReport::default();
    check_component(
        &mut report,
        "u-shape",
        "u-unital",
        "u-counital",
        "u-comultiplicative",
        &qd.u,
        &src.a_hs,
        &tgt.a_hs,
    );
    check_component(
        &mut report,
        "p-shape",
        "p-unital",
        "p-counital",
        "p-comultiplicative",
        &qd.p,
        &src.a_hs,
        &tgt.h_hs,
    );
    check_component(
        &mut report,
        "r-shape",
        "r-unital",
        "r-counital",
        "r-comultiplicative",
        &qd.r,
        &src.h_hs,
        &tgt.a_hs,
    );
    check_component(
        &mut report,
        "v-shape",
        "v-unital",
        "v-counital",
        "v-comultiplicative",
        &qd.v,
        &src.h_hs,
        &tgt.h_hs,
    );
    if !report.pass() {
        return report;
    }

    let a_dim = src.a_hs.dim();
    let h_dim = src.h_hs.dim();
    let tgt_tables = tgt.pair.tables();
    let ta = &tgt.a_hs;
    let th = &tgt.h_hs;
    let src_tables = src.pair.tables();

    // c1 / c2: co-symmetry of the paired legs.
    for a in 0..a_dim {
        report.count_check();
        let mut t: SparseTensor = Vec::new();
        for (a1, a2, c) in src.a_hs.comult_of(a) {
            for (t1, c1) in &qd.u[*a1] {
                let cc = c.mul(c1);
                for (t2, c2) in &qd.p[*a2] {
                    t.push((*t1, *t2, cc.mul(c2)));
                }
            }
            for (t1, c1) in &qd.u[*a2] {
                let cc = c.mul(c1).neg();
                for (t2, c2) in &qd.p[*a1] {
                    t.push((*t1, *t2, cc.mul(c2)));
                }
            }
        }
        if !tensor_normalize(t).is_empty() {
            report.record("c1-up-cosymmetry", vec![a], "legs do not commute".into());
        }
    }
    for g in 0..h_dim {
        report.count_check();
        let mut t: SparseTensor = Vec::new();
        for (g1, g2, c) in src.h_hs.comult_of(g) {
            for (t1, c1) in &qd.r[*g1] {
                let cc = c.mul(c1);
                for (t2, c2) in &qd.v[*g2] {
                    t.push((*t1, *t2, cc.mul(c2)));
                }
            }
            for (t1, c1) in &qd.r[*g2] {
                let cc = c.mul(c1).neg();
                for (t2, c2) in &qd.v[*g1] {
                    t.push((*t1, *t2, cc.mul(c2)));
                }
            }
        }
        if !tensor_normalize(t).is_empty() {
            report.record("c2-rv-cosymmetry", vec![g], "legs do not commute".into());
        }
    }

    // c3 / c4: multiplicativity of (u, p) twisted by the target actions.
    let partials: Vec<AxiomReport> = (0..a_dim)
        .into_par_iter()
        .map(|a| {
            let mut rep = AxiomReport::default();
            for b in 0..a_dim {
                rep.count_check();
                let ab = src.a_hs.product(a, b);
                let lhs = apply_map(&qd.u, ab);
                let mut rhs: SparseVec = Vec::new();
                for (a1, a2, c) in src.a_hs.comult_of(a) {
                    let acted = left_act(tgt_tables, &qd.p[*a2], &qd.u[b]);
                    let term = ta.mul_elems(&qd.u[*a1], &acted);
                    rhs.extend(term.iter().map(|(t, ct)| (*t, c.mul(ct))));
                }
                let diff = sp_sub(&lhs, &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c3-u-mult", vec![a, b], sp_render(&diff, ta.labels()));
                }

                rep.count_check();
                let lhs = apply_map(&qd.p, ab);
                let mut rhs: SparseVec = Vec::new();
                for (b1, b2, c) in src.a_hs.comult_of(b) {
                    let acted = right_act(tgt_tables, &qd.p[a], &qd.u[*b1]);
                    let term = th.mul_elems(&acted, &qd.p[*b2]);
                    rhs.extend(term.iter().map(|(t, ct)| (*t, c.mul(ct))));
                }
                let diff = sp_sub(&lhs, &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c4-p-mult", vec![a, b], sp_render(&diff, th.labels()));
                }
            }
            rep
        })
        .collect();
    for p in partials {
        report.absorb(p);
    }

    // c5 / c6: multiplicativity of (r, v).
    let partials: Vec<AxiomReport> = (0..h_dim)
        .into_par_iter()
        .map(|t| {
            let mut rep = AxiomReport::default();
            for g in 0..h_dim {
                rep.count_check();
                let tg = src.h_hs.product(t, g);
                let lhs = apply_map(&qd.r, tg);
                let mut rhs: SparseVec = Vec::new();
                for (t1, t2, c) in src.h_hs.comult_of(t) {
                    let acted = left_act(tgt_tables, &qd.v[*t2], &qd.r[g]);
                    let term = ta.mul_elems(&qd.r[*t1], &acted);
                    rhs.extend(term.iter().map(|(s, ct)| (*s, c.mul(ct))));
                }
                let diff = sp_sub(&lhs, &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c5-r-mult", vec![t, g], sp_render(&diff, ta.labels()));
                }

                rep.count_check();
                let lhs = apply_map(&qd.v, tg);
                let mut rhs: SparseVec = Vec::new();
                for (g1, g2, c) in src.h_hs.comult_of(g) {
                    let acted = right_act(tgt_tables, &qd.v[t], &qd.r[*g1]);
                    let term = th.mul_elems(&acted, &qd.v[*g2]);
                    rhs.extend(term.iter().map(|(s, ct)| (*s, c.mul(ct))));
                }
                let diff = sp_sub(&lhs, &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c6-v-mult", vec![t, g], sp_render(&diff, th.labels()));
                }
            }
            rep
        })
        .collect();
    for p in partials {
        report.absorb(p);
    }

    // c7 / c8: the cross conditions tying the quadruple to both actions.
    let partials: Vec<AxiomReport> = (0..h_dim)
        .into_par_iter()
        .map(|g| {
            let mut rep = AxiomReport::default();
            let g3 = src.h_hs.sweedler3(g);
            for b in 0..a_dim {
                let b3 = src.a_hs.sweedler3(b);

                rep.count_check();
                let mut lhs: SparseVec = Vec::new();
                for (g1, g2, c) in src.h_hs.comult_of(g) {
                    let acted = left_act(tgt_tables, &qd.v[*g2], &qd.u[b]);
                    let term = ta.mul_elems(&qd.r[*g1], &acted);
                    lhs.extend(term.iter().map(|(t, ct)| (*t, c.mul(ct))));
                }
                let mut rhs: SparseVec = Vec::new();
                for (g1, g2, gg3, cg) in &g3 {
                    for (b1, b2, bb3, cb) in &b3 {
                        let coef = cg.mul(cb);
                        let s1 = apply_map(&qd.u, src_tables.left_of(*g1, *b1));
                        if s1.is_empty() {
                            continue;
                        }
                        let s2 = apply_map(&qd.p, src_tables.left_of(*g2, *b2));
                        let s3 = apply_map(&qd.r, src_tables.right_of(*gg3, *bb3));
                        let acted = left_act(tgt_tables, &s2, &s3);
                        let term = ta.mul_elems(&s1, &acted);
                        rhs.extend(term.iter().map(|(t, ct)| (*t, coef.mul(ct))));
                    }
                }
                let diff = sp_sub(&sp_normalize(lhs), &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c7-left-cross", vec![g, b], sp_render(&diff, ta.labels()));
                }

                rep.count_check();
                let mut lhs: SparseVec = Vec::new();
                for (b1, b2, c) in src.a_hs.comult_of(b) {
                    let acted = right_act(tgt_tables, &qd.v[g], &qd.u[*b1]);
                    let term = th.mul_elems(&acted, &qd.p[*b2]);
                    lhs.extend(term.iter().map(|(t, ct)| (*t, c.mul(ct))));
                }
                let mut rhs: SparseVec = Vec::new();
                for (g1, g2, gg3, cg) in &g3 {
                    for (b1, b2, bb3, cb) in &b3 {
                        let coef = cg.mul(cb);
                        let t1 = apply_map(&qd.p, src_tables.left_of(*g1, *b1));
                        let t2 = apply_map(&qd.r, src_tables.right_of(*g2, *b2));
                        let acted = right_act(tgt_tables, &t1, &t2);
                        if acted.is_empty() {
                            continue;
                        }
                        let t3 = apply_map(&qd.v, src_tables.right_of(*gg3, *bb3));
                        let term = th.mul_elems(&acted, &t3);
                        rhs.extend(term.iter().map(|(t, ct)| (*t, coef.mul(ct))));
                    }
                }
                let diff = sp_sub(&sp_normalize(lhs), &sp_normalize(rhs));
                if !diff.is_empty() {
                    rep.record("c8-right-cross", vec![g, b], sp_render(&diff, th.labels()));
                }
            }
            rep
        })
        .collect();
    for p in partials {
        report.absorb(p);
    }

    report
}

/// The morphism `A |><| H -> A' |><|' H'` attached to a quadruple,
/// evaluated column by column:
///
/// ```text
/// psi(e_a |><| e_g) = u(a1) (p(a2) |>' r(g1))  |><|'  (p(a3) <|' r(g2)) v(g3).
/// ```
pub fn quadruple_to_morphism(qd: &Quadruple, src: &Instance, tgt: &Instance) -> Result<LinearMap> {
    for (cols, domain, codomain, name) in [
        (&qd.u, &src.a_hs, &tgt.a_hs, "u"),
        (&qd.p, &src.a_hs, &tgt.h_hs, "p"),
        (&qd.r, &src.h_hs, &tgt.a_hs, "r"),
        (&qd.v, &src.h_hs, &tgt.h_hs, "v"),
    ] {
        let mut rep = AxiomReport::default();
        check_component(
            &mut rep, "shape", "unital", "counital", "comultiplicative", cols, domain, codomain,
        );
        if !rep.pass() {
            return Err(Error::NotCoalgebraMap {
                component: name.into(),
                detail: rep
                    .failures
                    .first()
                    .map(|f| format!("{} at {:?}", f.axiom, f.at))
                    .unwrap_or_default(),
            });
        }
    }

    let a_dim = src.a_hs.dim();
    let h_dim = src.h_hs.dim();
    let th_dim = tgt.h_hs.dim();
    let tgt_tables = tgt.pair.tables();
    let mut columns = vec![Vec::new(); a_dim * h_dim];
    for a in 0..a_dim {
        let a3 = src.a_hs.sweedler3(a);
        for g in 0..h_dim {
            let g3 = src.h_hs.sweedler3(g);
            let mut acc: SparseVec = Vec::new();
            for (a1, a2, aa3, ca) in &a3 {
                for (g1, g2, gg3, cg) in &g3 {
                    let coef = ca.mul(cg);
                    let acted = left_act(tgt_tables, &qd.p[*a2], &qd.r[*g1]);
                    let a_part = tgt.a_hs.mul_elems(&qd.u[*a1], &acted);
                    if a_part.is_empty() {
                        continue;
                    }
                    let acted = right_act(tgt_tables, &qd.p[*aa3], &qd.r[*g2]);
                    let h_part = tgt.h_hs.mul_elems(&acted, &qd.v[*gg3]);
                    for (ta, ca2) in &a_part {
                        let cc = coef.mul(ca2);
                        for (th, ch) in &h_part {
                            acc.push((ta * th_dim + th, cc.mul(ch)));
                        }
                    }
                }
            }
            columns[a * h_dim + g] = sp_normalize(acc);
        }
    }
    LinearMap::new(src.dim(), tgt.dim(), columns)
}

/// Direct definition check: `cols` is a Hopf algebra isomorphism from
/// `src` to `tgt` (unital, counital, multiplicative, comultiplicative on
/// all basis pairs, and of full exact rank).
pub fn is_hopf_iso(map: &LinearMap, src: &HopfStructure, tgt: &HopfStructure) -> bool {
    map.src_dim == src.dim()
        && map.tgt_dim == tgt.dim()
        && src.dim() == tgt.dim()
        && is_hopf_morphism(&map.columns, src, tgt)
        && map.rank() == src.dim()
}

/// One attempted structured family during a search, with its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyAttempt {
    pub family: String,
    pub conditions_pass: bool,
    pub failed_conditions: Vec<String>,
    /// `None` when the conditions already failed (no morphism built).
    pub bijective: Option<bool>,
}

/// Result of an isomorphism search between two instances.
#[derive(Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum IsoOutcome {
    Witness {
        family: String,
        #[serde(skip)]
        map: LinearMap,
    },
    Refuted {
        attempts: Vec<FamilyAttempt>,
    },
}

fn one() -> CycScalar {
    CycScalar::one(1)
}

fn minus_one() -> CycScalar {
    CycScalar::one(1).neg()
}

/// Candidate families applicable to the given source/target pair, at the
/// representative parameters `1` and `-1`.
fn candidate_families(src: &Instance, tgt: &Instance) -> Vec<QuadrupleFamily> {
    let mut fams = Vec::new();
    let sa = src.pair.a_descriptor();
    let sh = src.pair.h_descriptor();
    let ta = tgt.pair.a_descriptor();
    let th = tgt.pair.h_descriptor();
    if sa == ta && sh == th {
        for (beta, eta) in [(one(), one()), (minus_one(), minus_one()), (one(), minus_one())] {
            fams.push(QuadrupleFamily::DiagonalPair { beta, eta });
        }
    }
    if sa == th && sh == ta {
        for (zeta, gamma) in [(one(), one()), (minus_one(), minus_one())] {
            fams.push(QuadrupleFamily::SwapPair { zeta, gamma });
        }
        if sa == ta && sh == th {
            fams.push(QuadrupleFamily::PSwapHalf {
                zeta: one(),
                eta: one(),
            });
            fams.push(QuadrupleFamily::RSwapHalf {
                beta: one(),
                gamma: one(),
            });
        }
    }
    fams
}

/// Run the structured families from `src` to `tgt`; return the first
/// verified isomorphism, or the exact refutation table.
pub fn iso_search(src: &Instance, tgt: &Instance) -> Result<IsoOutcome> {
    let mut attempts = Vec::new();
    for fam in candidate_families(src, tgt) {
        let qd = fam.to_quadruple(src, tgt)?;
        let report = check_quadruple(&qd, src, tgt);
        if report.pass() {
            let map = quadruple_to_morphism(&qd, src, tgt)?;
            if is_hopf_iso(&map, src.product()?, tgt.product()?) {
                return Ok(IsoOutcome::Witness {
                    family: fam.describe(),
                    map,
                });
            }
            attempts.push(FamilyAttempt {
                family: fam.describe(),
                conditions_pass: true,
                failed_conditions: vec![],
                bijective: Some(false),
            });
        } else {
            attempts.push(FamilyAttempt {
                family: fam.describe(),
                conditions_pass: false,
                failed_conditions: report
                    .failed_axioms()
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
                bijective: None,
            });
        }
    }
    Ok(IsoOutcome::Refuted { attempts })
}

/// Falsify the generator-level `(u, p)` shapes that cannot extend to an
/// isomorphism.  Each shape prescribes `u(H) = H^a`, `p(H) = h^b` and
/// skew-primitive values `u(X)`, `p(X)`; the two generator residuals
///
/// ```text
/// res1 = u(X) H^a + p(X) |>' H^a - qbar H^a (h^b |>' u(X))
/// res2 = (p(X) <|' H^a) h^b - qbar (h^b <|' u(X)) h^b - qbar h^b p(X)
/// ```
///
/// (obtained by mapping the relation `X H = qbar H X` through the
/// (c3)/(c4) conditions) must both vanish.  The fully counital shape is
/// instead refuted by `psi(X |><| 1) = 0` (never injective).  The grid
/// iterates all exponents `2 <= a < n`, `2 <= b < m` at representative
/// nonzero parameter values.
pub fn falsify_excluded_shapes(src: &Instance, tgt: &Instance) -> Result<Vec<FamilyAttempt>> {
    let n = src.pair.a_descriptor().m();
    let m = src.pair.h_descriptor().m();
    let qbar = src.pair.a_descriptor().q().clone();
    let ta_desc = tgt.pair.a_descriptor();
    let th_desc = tgt.pair.h_descriptor();
    if ta_desc.m() != n || th_desc.m() != m {
        return Err(Error::InstanceMismatch(
            "shape falsification requires equal factor dimensions".into(),
        ));
    }
    let tgt_tables = tgt.pair.tables();
    let ta = &tgt.a_hs;
    let th = &tgt.h_hs;
    let a_basis = |i: usize, j: usize| -> SparseVec { vec![(ta_desc.index(i, j), one())] };
    let h_basis = |i: usize, j: usize| -> SparseVec { vec![(th_desc.index(i, j), one())] };
    // alpha (1 - H^a) and alpha (1 - h^b) skew-primitives.
    let a_skew = |a: usize, alpha: &CycScalar| -> SparseVec {
        if a == 0 {
            return Vec::new();
        }
        sp_normalize(vec![
            (ta_desc.index(0, 0), alpha.clone()),
            (ta_desc.index(a, 0), alpha.neg()),
        ])
    };
    let h_skew = |b: usize, alpha: &CycScalar| -> SparseVec {
        if b == 0 {
            return Vec::new();
        }
        sp_normalize(vec![
            (th_desc.index(0, 0), alpha.clone()),
            (th_desc.index(b, 0), alpha.neg()),
        ])
    };

    // One shape: exponents (a, b) and the generator values u(X), p(X).
    let mut shapes: Vec<(String, usize, usize, SparseVec, SparseVec)> = Vec::new();
    let alpha = one();
    // u(H) = H, p(H) = h, both X-values alpha-skew.
    shapes.push((
        "shape-matched-skew(a=1, b=1, alpha=1)".into(),
        1,
        1,
        a_skew(1, &alpha),
        h_skew(1, &alpha),
    ));
    // u(H) = H, u(X) = alpha (1 - H) + beta X, p counital, alpha != 0.
    let mut u_x = a_skew(1, &alpha);
    u_x = sp_normalize(
        u_x.into_iter()
            .chain([(ta_desc.index(0, 1), one())])
            .collect(),
    );
    shapes.push((
        "shape-rescale-with-skew(a=1, alpha=1, beta=1)".into(),
        1,
        0,
        u_x,
        Vec::new(),
    ));
    // u counital, p(H) = h, p(X) = alpha (1 - h) + beta x.
    for (alpha_v, beta_v, label) in [
        (one(), one(), "alpha=1, beta=1"),
        (CycScalar::zero(1), one(), "alpha=0, beta=1"),
    ] {
        let mut p_x = h_skew(1, &alpha_v);
        if !beta_v.is_zero() {
            p_x = sp_normalize(
                p_x.into_iter()
                    .chain([(th_desc.index(0, 1), beta_v.clone())])
                    .collect(),
            );
        }
        // The (alpha = 0, beta = 1) point survives exactly when the two
        // factor parameters agree; skip it then (it is the swap family).
        if alpha_v.is_zero() && src.pair.a_descriptor().q() == src.pair.h_descriptor().q() {
            continue;
        }
        shapes.push((
            format!("shape-swap-with-skew(b=1, {label})"),
            0,
            1,
            Vec::new(),
            p_x,
        ));
    }
    // Higher-exponent group-like images, all combinations.
    for a in 0..n {
        for b in 0..m {
            if a == 1 && b == 1 || a == 1 && b == 0 || a == 0 && b == 1 {
                continue; // covered above or a surviving family
            }
            if a == 0 && b == 0 {
                shapes.push((
                    "shape-counital(a=0, b=0)".into(),
                    0,
                    0,
                    Vec::new(),
                    Vec::new(),
                ));
                continue;
            }
            shapes.push((
                format!("shape-grouplike-power(a={a}, b={b}, alpha=1)"),
                a,
                b,
                a_skew(a, &alpha),
                h_skew(b, &alpha),
            ));
        }
    }

    let mut out = Vec::new();
    for (label, a, b, u_x, p_x) in shapes {
        if a == 0 && b == 0 {
            // psi(X |><| 1) = u(X) |><| p(H) + 1 |><| p(X) = 0.
            out.push(FamilyAttempt {
                family: label,
                conditions_pass: true,
                failed_conditions: vec!["psi-kills-X".into()],
                bijective: Some(false),
            });
            continue;
        }
        let h_a = a_basis(a, 0);
        let h_b = h_basis(b, 0);
        // res1 in A'.
        let term1 = ta.mul_elems(&u_x, &h_a);
        let term2 = left_act(tgt_tables, &p_x, &h_a);
        let term3 = {
            let inner = left_act(tgt_tables, &h_b, &u_x);
            let prod = ta.mul_elems(&h_a, &inner);
            prod.into_iter().map(|(t, c)| (t, c.mul(&qbar))).collect()
        };
        let res1 = sp_sub(
            &sp_normalize(term1.into_iter().chain(term2).collect()),
            &term3,
        );
        // res2 in H'.
        let term1 = {
            let inner = right_act(tgt_tables, &p_x, &h_a);
            th.mul_elems(&inner, &h_b)
        };
        let term2 = {
            let inner = right_act(tgt_tables, &h_b, &u_x);
            let prod = th.mul_elems(&inner, &h_b);
            prod.into_iter()
                .map(|(t, c)| (t, c.mul(&qbar)))
                .collect::<SparseVec>()
        };
        let term3 = {
            let prod = th.mul_elems(&h_b, &p_x);
            prod.into_iter()
                .map(|(t, c)| (t, c.mul(&qbar)))
                .collect::<SparseVec>()
        };
        let res2 = sp_sub(&term1, &sp_normalize(term2.into_iter().chain(term3).collect()));

        let mut failed = Vec::new();
        if !res1.is_empty() {
            failed.push(format!("generator-res1: {}", sp_render(&res1, ta.labels())));
        }
        if !res2.is_empty() {
            failed.push(format!("generator-res2: {}", sp_render(&res2, th.labels())));
        }
        out.push(FamilyAttempt {
            family: label,
            conditions_pass: failed.is_empty(),
            failed_conditions: failed,
            bijective: None,
        });
    }
    Ok(out)
}

/// A pairwise witness entry in a classification report.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub src: usize,
    pub tgt: usize,
    pub family: String,
}

/// A pairwise refutation entry in a classification report.
#[derive(Clone, Debug, Serialize)]
pub struct RefutationEntry {
    pub src: usize,
    pub tgt: usize,
    pub attempts: Vec<FamilyAttempt>,
}

/// Classification of all bicrossed products on fixed `(n, m, qbar, q)`:
/// representatives, pairwise isomorphism decisions, and the class count
/// checked against the closed-form formula.
#[derive(Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub m: usize,
    pub qbar: CycScalar,
    pub q: CycScalar,
    pub representatives: Vec<PresentationParams>,
    /// Indices into `representatives`, grouped by isomorphism class.
    pub classes: Vec<Vec<usize>>,
    pub count: usize,
    pub formula_count: usize,
    pub witnesses: Vec<WitnessEntry>,
    pub refutations: Vec<RefutationEntry>,
}

/// The closed-form class count: `3` for the smallest doubled case,
/// `nu(d) = d` generically, halved (rounded by parity, plus the fixed
/// point) when the factors coincide, and `nu(d) + 1` when the deformed
/// family exists.
fn formula_count(
    n: usize,
    m: usize,
    qbar: &CycScalar,
    q: &CycScalar,
    nu: usize,
) -> Result<usize> {
    if m == n && n == 2 {
        return Ok(3);
    }
    let q_pow = q.pow(n as i64 - 1)?;
    if m != n || (*qbar != *q && *qbar != q_pow) {
        return Ok(nu);
    }
    if *qbar == *q {
        if nu % 2 == 0 {
            Ok(nu / 2 + 1)
        } else {
            Ok((nu + 1) / 2)
        }
    } else {
        // qbar = q^{n-1} and qbar != q (n >= 3): the deformed product is
        // one extra class.
        Ok(nu + 1)
    }
}

/// Build all representatives on `(n, m, qbar, q)`, decide every pair, and
/// cross-check the count against the closed-form formula.
pub fn classify(n: usize, m: usize, qbar: &CycScalar, q: &CycScalar) -> Result<ClassReport> {
    let d = num_integer::gcd(n, m);
    let order = num_integer::lcm(qbar.order(), q.order());
    let sigmas = roots_of_unity_group(d, order)?;
    let nu = sigmas.len();

    let mut params: Vec<PresentationParams> = sigmas
        .iter()
        .map(|sigma| PresentationParams::TSigma {
            n,
            m,
            qbar: qbar.clone(),
            q: q.clone(),
            sigma: sigma.clone(),
        })
        .collect();
    if m == n && *qbar == q.pow(n as i64 - 1)? {
        params.push(PresentationParams::QAlpha {
            n,
            q: q.clone(),
            alpha: one(),
        });
    }

    let instances: Vec<Instance> = params
        .iter()
        .map(Instance::new)
        .collect::<Result<Vec<_>>>()?;

    let k = instances.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut witnesses = Vec::new();
    let mut refutations = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            match iso_search(&instances[i], &instances[j])? {
                IsoOutcome::Witness { family, .. } => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                    witnesses.push(WitnessEntry {
                        src: i,
                        tgt: j,
                        family,
                    });
                }
                IsoOutcome::Refuted { attempts } => {
                    refutations.push(RefutationEntry {
                        src: i,
                        tgt: j,
                        attempts,
                    });
                }
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_index: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        match root_index[r] {
            Some(ci) => classes[ci].push(i),
            None => {
                root_index[r] = Some(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    let count = classes.len();
    let formula = formula_count(n, m, qbar, q, nu)?;
    if count != formula {
        return Err(Error::CountMismatch {
            computed: count,
            formula,
        });
    }
    Ok(ClassReport {
        n,
        m,
        qbar: qbar.clone(),
        q: q.clone(),
        representatives: params,
        classes,
        count,
        formula_count: formula,
        witnesses,
        refutations,
    })
}

/// Symbolic automorphism group kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutGroupKind {
    /// `k* x k*` with componentwise multiplication.
    TorusRankTwo,
    /// `(k* x k*) semidirect Z2`, the involution swapping the components.
    TorusRankTwoSemidirectZ2,
    /// `k*`.
    Units,
    /// `k* semidirect Z2`, the involution inverting the unit.
    UnitsSemidirectZ2,
}

impl AutGroupKind {
    pub fn label(&self) -> &'static str {
        match self {
            AutGroupKind::TorusRankTwo => "k* x k*",
            AutGroupKind::TorusRankTwoSemidirectZ2 => "(k* x k*) semidirect Z2 (swap action)",
            AutGroupKind::Units => "k*",
            AutGroupKind::UnitsSemidirectZ2 => "k* semidirect Z2 (inversion action)",
        }
    }
}

/// Automorphism-group description with the composition laws verified on
/// a parameter grid.
#[derive(Serialize)]
pub struct AutReport {
    pub params: PresentationParams,
    pub group: AutGroupKind,
    pub label: String,
    /// Human-readable family descriptions, e.g. the diagonal rescales.
    pub families: Vec<String>,
    /// The composition laws that were verified exactly, with grid sizes.
    pub verified_laws: Vec<String>,
    /// `true` when part of the group description relies on a cited
    /// external computation rather than the families verified here.
    pub externally_sourced: bool,
}

/// Parameter grid for law verification: `1, -1, 2`, plus `zeta_d` when
/// the compatible root order exceeds two (mixed orders promote exactly).
fn law_grid(d: usize) -> Vec<CycScalar> {
    let mut grid = vec![
        one(),
        minus_one(),
        CycScalar::from_rational(Rational::from_integer(2.into())),
    ];
    if d > 2 {
        if let Ok(z) = crate::cyclotomic::root_of_unity(d, 1) {
            grid.push(z);
        }
    }
    grid
}

fn diag_morphism(inst: &Instance, beta: &CycScalar, eta: &CycScalar) -> Result<LinearMap> {
    let qd = QuadrupleFamily::DiagonalPair {
        beta: beta.clone(),
        eta: eta.clone(),
    }
    .to_quadruple(inst, inst)?;
    quadruple_to_morphism(&qd, inst, inst)
}

fn swap_morphism(inst: &Instance, zeta: &CycScalar, gamma: &CycScalar) -> Result<LinearMap> {
    let qd = QuadrupleFamily::SwapPair {
        zeta: zeta.clone(),
        gamma: gamma.clone(),
    }
    .to_quadruple(inst, inst)?;
    quadruple_to_morphism(&qd, inst, inst)
}

/// Verify one family member end to end: conditions, morphism, rank.
fn verify_automorphism(inst: &Instance, fam: &QuadrupleFamily) -> Result<()> {
    let qd = fam.to_quadruple(inst, inst)?;
    let report = check_quadruple(&qd, inst, inst);
    if !report.pass() {
        return Err(Error::InstanceMismatch(format!(
            "{} failed conditions {:?}",
            fam.describe(),
            report.failed_axioms()
        )));
    }
    let map = quadruple_to_morphism(&qd, inst, inst)?;
    if !is_hopf_iso(&map, inst.product()?, inst.product()?) {
        return Err(Error::InstanceMismatch(format!(
            "{} is not bijective",
            fam.describe()
        )));
    }
    Ok(())
}

/// Compute the automorphism-group description, verifying each family on
/// representatives and every composition law on the full grid.
pub fn automorphisms(params: &PresentationParams) -> Result<AutReport> {
    let inst = Instance::new(params)?;
    match params {
        PresentationParams::TSigma {
            n,
            m,
            qbar,
            q,
            sigma,
        } => {
            let d = num_integer::gcd(*n, *m);
            let grid = law_grid(d);
            let mut families =
                vec!["psi(beta, eta): X -> beta X, x -> eta x, group-likes fixed".to_string()];
            let mut laws = Vec::new();

            // Representative end-to-end verifications.
            for (beta, eta) in [(one(), one()), (grid[2].clone(), minus_one())] {
                verify_automorphism(&inst, &QuadrupleFamily::DiagonalPair { beta, eta })?;
            }
            // psi . psi' = psi(beta beta', eta eta') on the grid.
            let mut pairs = 0usize;
            for beta in &grid {
                for eta in &grid {
                    let f = diag_morphism(&inst, beta, eta)?;
                    for beta2 in &grid {
                        for eta2 in &grid {
                            let g = diag_morphism(&inst, beta2, eta2)?;
                            let composed = f.compose(&g)?;
                            let expected =
                                diag_morphism(&inst, &beta.mul(beta2), &eta.mul(eta2))?;
                            if !composed.equals(&expected) {
                                return Err(Error::InstanceMismatch(
                                    "diagonal composition law failed".into(),
                                ));
                            }
                            pairs += 1;
                        }
                    }
                }
            }
            laws.push(format!(
                "psi(b,e) . psi(b',e') = psi(bb', ee') on {pairs} grid pairs"
            ));

            let swap_applicable = qbar == q && m == n;
            let sigma_sq_one = sigma.pow(2)?.is_one();
            if swap_applicable && sigma_sq_one {
                families.push(
                    "phi(zeta, gamma): X -> zeta x, x -> gamma X, H <-> h (factor swap)"
                        .to_string(),
                );
                for (zeta, gamma) in [(one(), one()), (grid[2].clone(), minus_one())] {
                    verify_automorphism(&inst, &QuadrupleFamily::SwapPair { zeta, gamma })?;
                }
                let mut phi_pairs = 0usize;
                for zeta in &grid {
                    for gamma in &grid {
                        let f = swap_morphism(&inst, zeta, gamma)?;
                        for zeta2 in &grid {
                            for gamma2 in &grid {
                                let g = swap_morphism(&inst, zeta2, gamma2)?;
                                // phi . phi' = psi(zeta' gamma, zeta gamma')
                                let composed = f.compose(&g)?;
                                let expected =
                                    diag_morphism(&inst, &zeta2.mul(gamma), &zeta.mul(gamma2))?;
                                if !composed.equals(&expected) {
                                    return Err(Error::InstanceMismatch(
                                        "swap-swap composition law failed".into(),
                                    ));
                                }
                                // phi . psi = phi(beta zeta, eta gamma)
                                let psi = diag_morphism(&inst, zeta2, gamma2)?;
                                let composed = f.compose(&psi)?;
                                let expected =
                                    swap_morphism(&inst, &zeta2.mul(zeta), &gamma2.mul(gamma))?;
                                if !composed.equals(&expected) {
                                    return Err(Error::InstanceMismatch(
                                        "swap-diagonal composition law failed".into(),
                                    ));
                                }
                                // psi . phi = phi(zeta eta, gamma beta)
                                let composed = psi.compose(&f)?;
                                let expected =
                                    swap_morphism(&inst, &zeta.mul(gamma2), &gamma.mul(zeta2))?;
                                if !composed.equals(&expected) {
                                    return Err(Error::InstanceMismatch(
                                        "diagonal-swap composition law failed".into(),
                                    ));
                                }
                                phi_pairs += 1;
                            }
                        }
                    }
                }
                laws.push(format!(
                    "phi(z,g) . phi(z',g') = psi(z'g, zg') on {phi_pairs} grid pairs"
                ));
                laws.push(format!(
                    "phi(z,g) . psi(b,e) = phi(bz, eg) and psi(b,e) . phi(z,g) = phi(ze, gb) on {phi_pairs} grid pairs"
                ));
                Ok(AutReport {
                    params: params.clone(),
                    group: AutGroupKind::TorusRankTwoSemidirectZ2,
                    label: AutGroupKind::TorusRankTwoSemidirectZ2.label().to_string(),
                    families,
                    verified_laws: laws,
                    externally_sourced: false,
                })
            } else {
                if swap_applicable {
                    // sigma^2 != 1: the swap family must fail the cross
                    // conditions, pinning the group to the torus.
                    let qd = QuadrupleFamily::SwapPair {
                        zeta: one(),
                        gamma: one(),
                    }
                    .to_quadruple(&inst, &inst)?;
                    let report = check_quadruple(&qd, &inst, &inst);
                    if report.pass() {
                        return Err(Error::InstanceMismatch(
                            "swap family unexpectedly satisfies the conditions".into(),
                        ));
                    }
                    laws.push(format!(
                        "swap family refuted (sigma^2 != 1): fails {:?}",
                        report.failed_axioms()
                    ));
                }
                Ok(AutReport {
                    params: params.clone(),
                    group: AutGroupKind::TorusRankTwo,
                    label: AutGroupKind::TorusRankTwo.label().to_string(),
                    families,
                    verified_laws: laws,
                    externally_sourced: false,
                })
            }
        }
        PresentationParams::QAlpha { n, alpha, .. } => {
            if !alpha.is_one() {
                return Err(Error::InvalidParameter(
                    "automorphism groups are computed for the alpha = 1 representative"
                        .into(),
                ));
            }
            let grid = law_grid(1);
            let mut laws = Vec::new();
            let families =
                vec!["phi(beta): X -> beta X, x -> beta^{-1} x, group-likes fixed".to_string()];
            for beta in [grid[2].clone(), minus_one()] {
                verify_automorphism(&inst, &QuadrupleFamily::QDiagonal { beta })?;
            }
            // Unconstrained diagonal pairs must fail: eta is forced to
            // beta^{-1} by the cross conditions.
            let qd = QuadrupleFamily::DiagonalPair {
                beta: one(),
                eta: grid[2].clone(),
            }
            .to_quadruple(&inst, &inst)?;
            let report = check_quadruple(&qd, &inst, &inst);
            if report.pass() {
                return Err(Error::InstanceMismatch(
                    "diagonal pair with eta != beta^{-1} unexpectedly passed".into(),
                ));
            }
            laws.push(format!(
                "diagonal with eta != beta^{{-1}} refuted: fails {:?}",
                report.failed_axioms()
            ));
            let mut pairs = 0usize;
            for beta in &grid {
                for beta2 in &grid {
                    let f = diag_morphism(&inst, beta, &beta.inv()?)?;
                    let g = diag_morphism(&inst, beta2, &beta2.inv()?)?;
                    let composed = f.compose(&g)?;
                    let prod = beta.mul(beta2);
                    let expected = diag_morphism(&inst, &prod, &prod.inv()?)?;
                    if !composed.equals(&expected) {
                        return Err(Error::InstanceMismatch(
                            "deformed diagonal composition law failed".into(),
                        ));
                    }
                    pairs += 1;
                }
            }
            laws.push(format!(
                "phi(b) . phi(b') = phi(bb') on {pairs} grid pairs"
            ));

            if *n >= 3 {
                Ok(AutReport {
                    params: params.clone(),
                    group: AutGroupKind::Units,
                    label: AutGroupKind::Units.label().to_string(),
                    families,
                    verified_laws: laws,
                    externally_sourced: false,
                })
            } else {
                // n = 2: a swap-type family exists in addition (the cross
                // conditions force zeta * gamma = 1 on it); its full group
                // identification is cited from an external source, so only
                // the constructible laws are verified here.
                let mut families = families;
                let qd = QuadrupleFamily::SwapPair {
                    zeta: one(),
                    gamma: one(),
                }
                .to_quadruple(&inst, &inst)?;
                let report = check_quadruple(&qd, &inst, &inst);
                if report.pass() {
                    let map = quadruple_to_morphism(&qd, &inst, &inst)?;
                    if is_hopf_iso(&map, inst.product()?, inst.product()?) {
                        families.push(
                            "swap-type involution family (order-two coset, zeta * gamma = 1)"
                                .to_string(),
                        );
                        laws.push(
                            "swap(1,1) verified as an automorphism (coset representative)"
                                .to_string(),
                        );
                    }
                }
                // The constraint itself: violating zeta * gamma = 1 must
                // fail the cross conditions.
                let bad = QuadrupleFamily::SwapPair {
                    zeta: one(),
                    gamma: minus_one(),
                }
                .to_quadruple(&inst, &inst)?;
                if check_quadruple(&bad, &inst, &inst).pass() {
                    return Err(Error::InstanceMismatch(
                        "swap with zeta * gamma != 1 unexpectedly satisfies the conditions"
                            .into(),
                    ));
                }
                laws.push("swap with zeta * gamma != 1 refuted".to_string());
                Ok(AutReport {
                    params: params.clone(),
                    group: AutGroupKind::UnitsSemidirectZ2,
                    label: AutGroupKind::UnitsSemidirectZ2.label().to_string(),
                    families,
                    verified_laws: laws,
                    externally_sourced: true,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;
    use num_bigint::BigInt;

    fn zeta(l: usize, k: i64) -> CycScalar {
        root_of_unity(l, k).unwrap()
    }

    fn rat(num: i64, den: i64) -> CycScalar {
        CycScalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn sigma_instance(n: usize, m: usize, qb: i64, qe: i64, d: usize, se: i64) -> Instance {
        Instance::new(&PresentationParams::TSigma {
            n,
            m,
            qbar: zeta(n, qb),
            q: zeta(m, qe),
            sigma: zeta(d, se),
        })
        .unwrap()
    }

    fn q_instance(n: usize, qe: i64, alpha: CycScalar) -> Instance {
        Instance::new(&PresentationParams::QAlpha {
            n,
            q: zeta(n, qe),
            alpha,
        })
        .unwrap()
    }

    #[test]
    fn identity_quadruple_gives_identity_map() {
        let inst = sigma_instance(2, 2, 1, 1, 2, 1);
        let fam = QuadrupleFamily::DiagonalPair {
            beta: one(),
            eta: one(),
        };
        let qd = fam.to_quadruple(&inst, &inst).unwrap();
        let report = check_quadruple(&qd, &inst, &inst);
        assert!(report.pass(), "failed: {:?}", report.failed_axioms());
        let map = quadruple_to_morphism(&qd, &inst, &inst).unwrap();
        assert!(map.equals(&LinearMap::identity(inst.dim())));
    }

    #[test]
    fn diagonal_pair_scales_the_skew_generators() {
        let inst = sigma_instance(3, 3, 1, 1, 3, 1);
        let beta = rat(2, 1);
        let eta = minus_one();
        let map = diag_morphism(&inst, &beta, &eta).unwrap();
        let h_dim = inst.h_structure().dim();
        // X |><| 1 at column (a_index of X) * h_dim.
        let x_cap_col = inst.pair().a_descriptor().index(0, 1) * h_dim;
        assert_eq!(map.columns()[x_cap_col], vec![(x_cap_col, beta.clone())]);
        let x_low_col = inst.pair().h_descriptor().index(0, 1);
        assert_eq!(map.columns()[x_low_col], vec![(x_low_col, eta.clone())]);
        assert!(is_hopf_iso(
            &map,
            inst.product().unwrap(),
            inst.product().unwrap()
        ));
    }

    #[test]
    fn cross_condition_detects_sigma_mismatch() {
        let src = sigma_instance(2, 2, 1, 1, 2, 0); // sigma = 1
        let tgt = sigma_instance(2, 2, 1, 1, 2, 1); // sigma = -1
        let qd = QuadrupleFamily::DiagonalPair {
            beta: one(),
            eta: one(),
        }
        .to_quadruple(&src, &tgt)
        .unwrap();
        let report = check_quadruple(&qd, &src, &tgt);
        assert!(!report.pass());
        assert!(report.failed_axioms().contains(&"c7-left-cross"));
        // The first recorded cross failure hits the generator pair (h, X).
        let h_idx = src.pair().h_descriptor().index(1, 0);
        let x_idx = src.pair().a_descriptor().index(0, 1);
        assert!(report
            .failures
            .iter()
            .any(|f| f.axiom == "c7-left-cross" && f.at == vec![h_idx, x_idx]));
    }

    #[test]
    fn swap_pair_witnesses_inverse_sigma() {
        let src = sigma_instance(3, 3, 1, 1, 3, 1); // sigma = zeta_3
        let tgt = sigma_instance(3, 3, 1, 1, 3, 2); // sigma' = zeta_3^2 = sigma^{-1}
        match iso_search(&src, &tgt).unwrap() {
            IsoOutcome::Witness { family, map } => {
                assert!(family.starts_with("swap"));
                assert!(is_hopf_iso(
                    &map,
                    src.product().unwrap(),
                    tgt.product().unwrap()
                ));
            }
            IsoOutcome::Refuted { attempts } => {
                panic!("expected witness, got refutations: {attempts:?}")
            }
        }
        // and the diagonal alone would not do it
        let qd = QuadrupleFamily::DiagonalPair {
            beta: one(),
            eta: one(),
        }
        .to_quadruple(&src, &tgt)
        .unwrap();
        assert!(!check_quadruple(&qd, &src, &tgt).pass());
    }

    #[test]
    fn half_swaps_are_morphisms_but_never_bijective() {
        let inst = sigma_instance(2, 2, 1, 1, 2, 1);
        for fam in [
            QuadrupleFamily::PSwapHalf {
                zeta: one(),
                eta: one(),
            },
            QuadrupleFamily::RSwapHalf {
                beta: one(),
                gamma: one(),
            },
        ] {
            let qd = fam.to_quadruple(&inst, &inst).unwrap();
            let report = check_quadruple(&qd, &inst, &inst);
            assert!(report.pass(), "{}: {:?}", fam.describe(), report.failed_axioms());
            let map = quadruple_to_morphism(&qd, &inst, &inst).unwrap();
            assert!(is_hopf_morphism(
                map.columns(),
                inst.product().unwrap(),
                inst.product().unwrap()
            ));
            assert!(!map.is_bijective(), "{} should be singular", fam.describe());
        }
    }

    #[test]
    fn oracle_agreement_between_conditions_and_direct_check() {
        // check_quadruple passes iff the induced map is a Hopf morphism.
        let pairs = [
            (
                sigma_instance(2, 2, 1, 1, 2, 0),
                sigma_instance(2, 2, 1, 1, 2, 0),
            ),
            (
                sigma_instance(2, 2, 1, 1, 2, 0),
                sigma_instance(2, 2, 1, 1, 2, 1),
            ),
            (
                sigma_instance(2, 3, 1, 1, 1, 0),
                sigma_instance(2, 3, 1, 1, 1, 0),
            ),
        ];
        for (src, tgt) in &pairs {
            for fam in candidate_families(src, tgt) {
                let qd = fam.to_quadruple(src, tgt).unwrap();
                let conditions = check_quadruple(&qd, src, tgt).pass();
                let map = quadruple_to_morphism(&qd, src, tgt).unwrap();
                let direct = is_hopf_morphism(
                    map.columns(),
                    src.product().unwrap(),
                    tgt.product().unwrap(),
                );
                assert_eq!(
                    conditions,
                    direct,
                    "oracle disagreement for {} between {:?} and {:?}",
                    fam.describe(),
                    src.params(),
                    tgt.params()
                );
            }
        }
    }

    #[test]
    fn deformed_to_reference_rescale_is_an_isomorphism() {
        // X -> alpha X carries the alpha-deformation to the reference
        // (alpha = 1) product; the inverse-direction rescale fails.
        for (n, qe) in [(2usize, 1i64), (3, 1)] {
            for alpha in [rat(2, 1), minus_one(), rat(1, 2)] {
                let src = q_instance(n, qe, alpha.clone());
                let tgt = q_instance(n, qe, one());
                let qd = QuadrupleFamily::DiagonalPair {
                    beta: alpha.clone(),
                    eta: one(),
                }
                .to_quadruple(&src, &tgt)
                .unwrap();
                let report = check_quadruple(&qd, &src, &tgt);
                assert!(report.pass(), "alpha = {alpha}: {:?}", report.failed_axioms());
                let map = quadruple_to_morphism(&qd, &src, &tgt).unwrap();
                assert!(is_hopf_iso(
                    &map,
                    src.product().unwrap(),
                    tgt.product().unwrap()
                ));

                if alpha.mul(&alpha).is_one() {
                    continue; // the two scalings coincide
                }
                let qd = QuadrupleFamily::DiagonalPair {
                    beta: alpha.inv().unwrap(),
                    eta: one(),
                }
                .to_quadruple(&src, &tgt)
                .unwrap();
                assert!(!check_quadruple(&qd, &src, &tgt).pass());
            }
        }
    }

    #[test]
    fn deformed_is_not_isomorphic_to_any_diagonal_family_member() {
        let n = 2;
        let q_inst = q_instance(n, 1, one());
        for se in 0..2 {
            let t_inst = sigma_instance(n, n, 1, 1, 2, se);
            match iso_search(&q_inst, &t_inst).unwrap() {
                IsoOutcome::Witness { family, .. } => {
                    panic!("unexpected witness {family}")
                }
                IsoOutcome::Refuted { attempts } => {
                    assert!(!attempts.is_empty());
                    for a in &attempts {
                        assert!(
                            !a.conditions_pass || a.bijective == Some(false),
                            "attempt {a:?} neither refuted nor singular"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn excluded_shapes_fail_generator_residuals() {
        let src = sigma_instance(3, 3, 2, 1, 3, 1);
        let tgt = sigma_instance(3, 3, 2, 1, 3, 2);
        let attempts = falsify_excluded_shapes(&src, &tgt).unwrap();
        assert!(!attempts.is_empty());
        for a in &attempts {
            assert!(
                !a.conditions_pass || a.bijective == Some(false),
                "shape {} survived falsification",
                a.family
            );
        }
        // qbar != q here, so the mixed-skew shape must appear and fail.
        assert!(attempts
            .iter()
            .any(|a| a.family.starts_with("shape-swap-with-skew") && !a.conditions_pass));
    }

    #[test]
    fn classify_smallest_doubled_case() {
        let report = classify(2, 2, &zeta(2, 1), &zeta(2, 1)).unwrap();
        assert_eq!(report.count, 3);
        assert_eq!(report.formula_count, 3);
        assert_eq!(report.representatives.len(), 3);
        assert!(report.witnesses.is_empty());
        assert_eq!(report.refutations.len(), 3);
    }

    #[test]
    fn classify_coprime_case() {
        let report = classify(2, 3, &zeta(2, 1), &zeta(3, 1)).unwrap();
        assert_eq!(report.count, 1);
        assert_eq!(report.representatives.len(), 1);
    }

    #[test]
    fn automorphism_groups_by_case() {
        // Distinct factor sizes: the rank-two torus.
        let report = automorphisms(&PresentationParams::TSigma {
            n: 2,
            m: 3,
            qbar: zeta(2, 1),
            q: zeta(3, 1),
            sigma: one(),
        })
        .unwrap();
        assert_eq!(report.group, AutGroupKind::TorusRankTwo);
        assert!(!report.externally_sourced);

        // Equal factors, sigma^2 = 1: the swap extends the torus.
        let report = automorphisms(&PresentationParams::TSigma {
            n: 2,
            m: 2,
            qbar: zeta(2, 1),
            q: zeta(2, 1),
            sigma: minus_one(),
        })
        .unwrap();
        assert_eq!(report.group, AutGroupKind::TorusRankTwoSemidirectZ2);
        assert!(report.verified_laws.iter().any(|l| l.contains("phi")));

        // Deformed product, n = 3: the units group.
        let report = automorphisms(&PresentationParams::QAlpha {
            n: 3,
            q: zeta(3, 1),
            alpha: one(),
        })
        .unwrap();
        assert_eq!(report.group, AutGroupKind::Units);

        // Deformed product, n = 2: externally sourced extension, but the
        // swap involution itself verifies and violating its constraint
        // is refuted.
        let report = automorphisms(&PresentationParams::QAlpha {
            n: 2,
            q: zeta(2, 1),
            alpha: one(),
        })
        .unwrap();
        assert_eq!(report.group, AutGroupKind::UnitsSemidirectZ2);
        assert!(report.externally_sourced);
        assert!(report.families.iter().any(|f| f.contains("swap-type")));
        assert!(report
            .verified_laws
            .iter()
            .any(|l| l.contains("swap(1,1) verified")));
        assert!(report
            .verified_laws
            .iter()
            .any(|l| l.contains("zeta * gamma != 1 refuted")));
    }
}
