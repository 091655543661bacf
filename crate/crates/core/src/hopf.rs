//! Finite-dimensional Hopf algebras as exact structure constants over a
//! labelled basis.
//!
//! A [`HopfStructure`] stores multiplication, comultiplication, counit,
//! unit and antipode tables with [`CycScalar`] coefficients.  Basis labels
//! are exponent quadruples `(i, j, k, l)`; product structures read them as
//! the normal monomial `H^i X^j h^k x^l`, single-algebra structures use the
//! first two slots and keep the rest zero.
//!
//! [`verify_hopf`] sweeps every Hopf-algebra axiom exactly; only
//! triple-associativity switches to deterministic fixed-seed sampling above
//! dimension [`EXHAUSTIVE_TRIPLE_LIMIT`], everything else stays exhaustive.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::report::AxiomReport;

/// Sparse vector over a structure's basis: `(index, coefficient)` pairs
/// sorted by index, zero coefficients pruned.
pub type SparseVec = Vec<(usize, CycScalar)>;

/// Sparse element of a tensor square: `(left, right, coefficient)` sorted
/// lexicographically.
pub type SparseTensor = Vec<(usize, usize, CycScalar)>;

/// Largest dimension for which triple-associativity is checked on all
/// `dim^3` triples; above it, `SAMPLED_TRIPLES` fixed-seed samples run.
pub const EXHAUSTIVE_TRIPLE_LIMIT: usize = 256;

/// Number of deterministically sampled triples above the exhaustive limit.
pub const SAMPLED_TRIPLES: usize = 10_000;

/// Fixed seed for the triple sampler (results must not depend on ambient
/// randomness).
const TRIPLE_SAMPLE_SEED: u64 = 0x7af7_ba11;

/// Exponent quadruple labelling one basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisLabel(pub [u16; 4]);

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for e in self.0 {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// Normalize a list of `(index, coefficient)` pairs: sort, combine equal
/// indices, drop zeros.
pub fn sp_normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == i {
                last.1 = last.1.add(&c);
                continue;
            }
        }
        out.push((i, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Merge-add two normalized sparse vectors.
pub fn sp_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a[i].1.add(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Scale a normalized sparse vector.
pub fn sp_scale(v: &SparseVec, c: &CycScalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, a)| (*i, a.mul(c))).collect()
}

/// `a - b` for normalized sparse vectors.
pub fn sp_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let neg: SparseVec = b.iter().map(|(i, c)| (*i, c.neg())).collect();
    sp_add(a, &neg)
}

/// Normalize a tensor-square sparse element.
pub fn tensor_normalize(mut v: SparseTensor) -> SparseTensor {
    v.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let mut out: SparseTensor = Vec::with_capacity(v.len());
    for (s, t, c) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == s && last.1 == t {
                last.2 = last.2.add(&c);
                continue;
            }
        }
        out.push((s, t, c));
    }
    out.retain(|(_, _, c)| !c.is_zero());
    out
}

/// Render a sparse vector against basis labels, for residual reports.
pub fn sp_render(v: &SparseVec, labels: &[BasisLabel]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| {
            let l = labels[*i].0;
            format!("({c})*e[{},{},{},{}]", l[0], l[1], l[2], l[3])
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tensor_render(v: &SparseTensor, labels: &[BasisLabel]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(s, t, c)| {
            let a = labels[*s].0;
            let b = labels[*t].0;
            format!(
                "({c})*e[{},{},{},{}]@e[{},{},{},{}]",
                a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Structure constants of a finite-dimensional Hopf algebra over
/// `Q(zeta_order)`.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    dim: usize,
    order: usize,
    labels: Vec<BasisLabel>,
    /// `mult[r * dim + s]` = the product `e_r * e_s`.
    mult: Vec<SparseVec>,
    /// `comult[r]` = terms of `Delta(e_r)`.
    comult: Vec<SparseTensor>,
    counit: Vec<CycScalar>,
    unit: SparseVec,
    /// `antipode[r]` = `S(e_r)`.
    antipode: Vec<SparseVec>,
}

impl HopfStructure {
    /// Assemble from raw tables; validates the table shapes and the unit /
    /// counit consistency `eps(1) = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dim: usize,
        order: usize,
        labels: Vec<BasisLabel>,
        mult: Vec<SparseVec>,
        comult: Vec<SparseTensor>,
        counit: Vec<CycScalar>,
        unit: SparseVec,
        antipode: Vec<SparseVec>,
    ) -> Result<Self> {
        if labels.len() != dim
            || mult.len() != dim * dim
            || comult.len() != dim
            || counit.len() != dim
            || antipode.len() != dim
        {
            return Err(Error::DimensionMismatch(format!(
                "structure tables do not match dimension {dim}"
            )));
        }
        let eps_of_unit = unit
            .iter()
            .fold(CycScalar::zero(order), |acc, (r, c)| {
                acc.add(&c.mul(&counit[*r]))
            });
        if !eps_of_unit.is_one() {
            return Err(Error::DimensionMismatch(
                "counit of the unit is not 1".into(),
            ));
        }
        Ok(HopfStructure {
            dim,
            order,
            labels,
            mult,
            comult,
            counit,
            unit,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Scalar field order the tables live in.
    pub fn scalar_order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Product of two basis vectors.
    pub fn product(&self, r: usize, s: usize) -> &SparseVec {
        &self.mult[r * self.dim + s]
    }

    pub fn comult_of(&self, r: usize) -> &SparseTensor {
        &self.comult[r]
    }

    pub fn counit_of(&self, r: usize) -> &CycScalar {
        &self.counit[r]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn antipode_of(&self, r: usize) -> &SparseVec {
        &self.antipode[r]
    }

    /// Bilinear product of sparse elements.
    pub fn mul_elems(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (r, ca) in a {
            for (s, cb) in b {
                let c = ca.mul(cb);
                for (t, ct) in self.product(*r, *s) {
                    acc.push((*t, c.mul(ct)));
                }
            }
        }
        sp_normalize(acc)
    }

    /// Comultiplication extended linearly to sparse elements.
    pub fn comult_elem(&self, v: &SparseVec) -> SparseTensor {
        let mut acc: SparseTensor = Vec::new();
        for (r, c) in v {
            for (s, t, ct) in self.comult_of(*r) {
                acc.push((*s, *t, c.mul(ct)));
            }
        }
        tensor_normalize(acc)
    }

    /// Counit extended linearly.
    pub fn counit_elem(&self, v: &SparseVec) -> CycScalar {
        v.iter().fold(CycScalar::zero(self.order), |acc, (r, c)| {
            acc.add(&c.mul(&self.counit[*r]))
        })
    }

    /// Antipode extended linearly.
    pub fn antipode_elem(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (r, c) in v {
            for (t, ct) in self.antipode_of(*r) {
                acc.push((*t, c.mul(ct)));
            }
        }
        sp_normalize(acc)
    }

    /// Iterated comultiplication `(Delta (x) id) Delta(e_r)` as sparse
    /// three-leg tensors.
    pub fn sweedler3(&self, r: usize) -> Vec<(usize, usize, usize, CycScalar)> {
        let mut acc: Vec<(usize, usize, usize, CycScalar)> = Vec::new();
        for (s, t, c) in self.comult_of(r) {
            for (u, v, c2) in self.comult_of(*s) {
                acc.push((*u, *v, *t, c.mul(c2)));
            }
        }
        acc.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        let mut out: Vec<(usize, usize, usize, CycScalar)> = Vec::new();
        for (a, b, c, coef) in acc {
            if let Some(last) = out.last_mut() {
                if last.0 == a && last.1 == b && last.2 == c {
                    last.3 = last.3.add(&coef);
                    continue;
                }
            }
            out.push((a, b, c, coef));
        }
        out.retain(|(_, _, _, c)| !c.is_zero());
        out
    }

    /// The same algebra with reversed comultiplication (and therefore
    /// inverted antipode).
    pub fn cop(&self) -> Result<HopfStructure> {
        let comult = self
            .comult
            .iter()
            .map(|row| {
                tensor_normalize(row.iter().map(|(s, t, c)| (*t, *s, c.clone())).collect())
            })
            .collect();
        let s_mat = crate::linalg::Matrix::from_columns(self.dim, &self.antipode, self.order);
        let s_inv = s_mat.inverse()?;
        let antipode = (0..self.dim).map(|r| s_inv.column_sparse(r)).collect();
        HopfStructure::new(
            self.dim,
            self.order,
            self.labels.clone(),
            self.mult.clone(),
            comult,
            self.counit.clone(),
            self.unit.clone(),
            antipode,
        )
    }
}

impl Serialize for HopfStructure {
    /// Deterministic JSON: `mult` rows `(r, s, t, c)` in lexicographic
    /// `(r, s, t)` order, `comult` rows `(r, s, t, c)`, `antipode` rows
    /// `(r, s, c)`, dense `counit`, sparse `unit`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MultRow<'a>(usize, usize, usize, &'a CycScalar);
        #[derive(Serialize)]
        struct SparseRow<'a>(usize, usize, &'a CycScalar);

        let mut st = serializer.serialize_struct("HopfStructure", 7)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("basis", &self.labels)?;
        let mut mult_rows = Vec::new();
        for r in 0..self.dim {
            for s in 0..self.dim {
                for (t, c) in self.product(r, s) {
                    mult_rows.push(MultRow(r, s, *t, c));
                }
            }
        }
        st.serialize_field("mult", &mult_rows)?;
        let mut comult_rows = Vec::new();
        for r in 0..self.dim {
            for (s, t, c) in self.comult_of(r) {
                comult_rows.push(MultRow(r, *s, *t, c));
            }
        }
        st.serialize_field("comult", &comult_rows)?;
        st.serialize_field("counit", &self.counit)?;
        let unit_rows: Vec<SparseRow> = self
            .unit
            .iter()
            .map(|(r, c)| SparseRow(0, *r, c))
            .collect();
        st.serialize_field("unit", &unit_rows)?;
        let mut antipode_rows = Vec::new();
        for r in 0..self.dim {
            for (s, c) in self.antipode_of(r) {
                antipode_rows.push(SparseRow(r, *s, c));
            }
        }
        st.serialize_field("antipode", &antipode_rows)?;
        st.end()
    }
}

/// Exhaustively verify the Hopf-algebra axioms (associativity sampled
/// deterministically above [`EXHAUSTIVE_TRIPLE_LIMIT`]); every comparison
/// is exact, the tolerance is zero.
pub fn verify_hopf(hs: &HopfStructure) -> AxiomReport {
    let dim = hs.dim;
    let mut report = AxiomReport::default();

    // Unit element: 1 * e = e * 1 = e.
    for s in 0..dim {
        let basis = vec![(s, CycScalar::one(hs.order))];
        report.count_check();
        let left = hs.mul_elems(&hs.unit, &basis);
        if left != basis {
            report.record("unit-left", vec![s], sp_render(&sp_sub(&left, &basis), &hs.labels));
        }
        report.count_check();
        let right = hs.mul_elems(&basis, &hs.unit);
        if right != basis {
            report.record("unit-right", vec![s], sp_render(&sp_sub(&right, &basis), &hs.labels));
        }
    }

    // Counit of the unit and comultiplicativity of the unit.
    report.count_check();
    if !hs.counit_elem(&hs.unit).is_one() {
        report.record("counit-unit", vec![], "eps(1) != 1".into());
    }
    report.count_check();
    {
        let lhs = hs.comult_elem(&hs.unit);
        let mut rhs: SparseTensor = Vec::new();
        for (r, cr) in &hs.unit {
            for (s, cs) in &hs.unit {
                rhs.push((*r, *s, cr.mul(cs)));
            }
        }
        let rhs = tensor_normalize(rhs);
        if lhs != rhs {
            report.record("comult-unit", vec![], "Delta(1) != 1@1".into());
        }
    }

    // Per-basis coalgebra laws: coassociativity, counit, antipode.
    for r in 0..dim {
        // (Delta x id) Delta = (id x Delta) Delta
        report.count_check();
        let lhs = hs.sweedler3(r);
        let mut rhs: Vec<(usize, usize, usize, CycScalar)> = Vec::new();
        for (s, t, c) in hs.comult_of(r) {
            for (u, v, c2) in hs.comult_of(*t) {
                rhs.push((*s, *u, *v, c.mul(c2)));
            }
        }
        rhs.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        let mut rhs_n: Vec<(usize, usize, usize, CycScalar)> = Vec::new();
        for (a, b, c, coef) in rhs {
            if let Some(last) = rhs_n.last_mut() {
                if last.0 == a && last.1 == b && last.2 == c {
                    last.3 = last.3.add(&coef);
                    continue;
                }
            }
            rhs_n.push((a, b, c, coef));
        }
        rhs_n.retain(|(_, _, _, c)| !c.is_zero());
        if lhs != rhs_n {
            report.record("coassociativity", vec![r], "Sweedler legs disagree".into());
        }

        // (eps x id) Delta = id = (id x eps) Delta
        report.count_check();
        let mut left_counit: SparseVec = Vec::new();
        let mut right_counit: SparseVec = Vec::new();
        for (s, t, c) in hs.comult_of(r) {
            left_counit.push((*t, c.mul(&hs.counit[*s])));
            right_counit.push((*s, c.mul(&hs.counit[*t])));
        }
        let left_counit = sp_normalize(left_counit);
        let right_counit = sp_normalize(right_counit);
        let idvec = vec![(r, CycScalar::one(hs.order))];
        if left_counit != idvec {
            report.record(
                "counit-left-leg",
                vec![r],
                sp_render(&sp_sub(&left_counit, &idvec), &hs.labels),
            );
        }
        if right_counit != idvec {
            report.record(
                "counit-right-leg",
                vec![r],
                sp_render(&sp_sub(&right_counit, &idvec), &hs.labels),
            );
        }

        // Antipode convolution: sum S(e_(1)) e_(2) = eps(e) 1 = sum e_(1) S(e_(2)).
        report.count_check();
        let mut conv_left: SparseVec = Vec::new();
        let mut conv_right: SparseVec = Vec::new();
        for (s, t, c) in hs.comult_of(r) {
            let sa = hs.antipode_of(*s);
            let tb = vec![(*t, CycScalar::one(hs.order))];
            for (idx, cc) in hs.mul_elems(sa, &tb) {
                conv_left.push((idx, c.mul(&cc)));
            }
            let sb = vec![(*s, CycScalar::one(hs.order))];
            let ta = hs.antipode_of(*t);
            for (idx, cc) in hs.mul_elems(&sb, ta) {
                conv_right.push((idx, c.mul(&cc)));
            }
        }
        let conv_left = sp_normalize(conv_left);
        let conv_right = sp_normalize(conv_right);
        let expected = sp_scale(&hs.unit, &hs.counit[r]);
        if conv_left != expected {
            report.record(
                "antipode-left",
                vec![r],
                sp_render(&sp_sub(&conv_left, &expected), &hs.labels),
            );
        }
        if conv_right != expected {
            report.record(
                "antipode-right",
                vec![r],
                sp_render(&sp_sub(&conv_right, &expected), &hs.labels),
            );
        }
    }

    // Pairwise laws, parallelized over the first index: Delta and eps are
    // algebra maps.
    let pair_reports: Vec<AxiomReport> = (0..dim)
        .into_par_iter()
        .map(|r| {
            let mut rep = AxiomReport::default();
            for s in 0..dim {
                let prod = hs.product(r, s);
                // eps multiplicative
                rep.count_check();
                let lhs = hs.counit_elem(prod);
                let rhs = hs.counit[r].mul(&hs.counit[s]);
                if lhs != rhs {
                    rep.record("counit-multiplicative", vec![r, s], lhs.sub(&rhs).to_string());
                }
                // Delta multiplicative
                rep.count_check();
                let lhs = hs.comult_elem(prod);
                let mut rhs: SparseTensor = Vec::new();
                for (a1, a2, ca) in hs.comult_of(r) {
                    for (b1, b2, cb) in hs.comult_of(s) {
                        let c = ca.mul(cb);
                        for (t1, c1) in hs.product(*a1, *b1) {
                            let c_mid = c.mul(c1);
                            for (t2, c2) in hs.product(*a2, *b2) {
                                rhs.push((*t1, *t2, c_mid.mul(c2)));
                            }
                        }
                    }
                }
                let rhs = tensor_normalize(rhs);
                if lhs != rhs {
                    let mut diff = lhs.clone();
                    diff.extend(rhs.iter().map(|(a, b, c)| (*a, *b, c.neg())));
                    rep.record(
                        "comult-multiplicative",
                        vec![r, s],
                        tensor_render(&tensor_normalize(diff), &hs.labels),
                    );
                }
            }
            rep
        })
        .collect();
    for rep in pair_reports {
        report.absorb(rep);
    }

    // Associativity.
    if dim <= EXHAUSTIVE_TRIPLE_LIMIT {
        let tri_reports: Vec<AxiomReport> = (0..dim)
            .into_par_iter()
            .map(|r| {
                let mut rep = AxiomReport::default();
                for s in 0..dim {
                    let rs = hs.product(r, s);
                    for t in 0..dim {
                        rep.count_check();
                        let tvec = vec![(t, CycScalar::one(hs.order))];
                        let lhs = hs.mul_elems(rs, &tvec);
                        let rvec = vec![(r, CycScalar::one(hs.order))];
                        let rhs = hs.mul_elems(&rvec, hs.product(s, t));
                        if lhs != rhs {
                            rep.record(
                                "associativity",
                                vec![r, s, t],
                                sp_render(&sp_sub(&lhs, &rhs), &hs.labels),
                            );
                        }
                    }
                }
                rep
            })
            .collect();
        for rep in tri_reports {
            report.absorb(rep);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(TRIPLE_SAMPLE_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let r = rng.gen_range(0..dim);
            let s = rng.gen_range(0..dim);
            let t = rng.gen_range(0..dim);
            report.count_check();
            let tvec = vec![(t, CycScalar::one(hs.order))];
            let lhs = hs.mul_elems(hs.product(r, s), &tvec);
            let rvec = vec![(r, CycScalar::one(hs.order))];
            let rhs = hs.mul_elems(&rvec, hs.product(s, t));
            if lhs != rhs {
                report.record(
                    "associativity-sampled",
                    vec![r, s, t],
                    sp_render(&sp_sub(&lhs, &rhs), &hs.labels),
                );
            }
        }
    }

    report
}

/// Exact equality of two structures' tables, optionally under a basis
/// relabelling `perm` mapping indices of `a` to indices of `b`.
pub fn structures_equal(a: &HopfStructure, b: &HopfStructure, perm: Option<&[usize]>) -> Result<bool> {
    if a.dim != b.dim {
        return Ok(false);
    }
    let dim = a.dim;
    let identity: Vec<usize>;
    let p: &[usize] = match perm {
        Some(p) => {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(
                    "relabelling length != dimension".into(),
                ));
            }
            let mut seen = vec![false; dim];
            for &i in p {
                if i >= dim || seen[i] {
                    return Err(Error::IndexOutOfRange(
                        "relabelling is not a permutation".into(),
                    ));
                }
                seen[i] = true;
            }
            p
        }
        None => {
            identity = (0..dim).collect();
            &identity
        }
    };
    let map_vec = |v: &SparseVec| -> SparseVec {
        sp_normalize(v.iter().map(|(i, c)| (p[*i], c.clone())).collect())
    };
    for r in 0..dim {
        for s in 0..dim {
            if map_vec(a.product(r, s)) != *b.product(p[r], p[s]) {
                return Ok(false);
            }
        }
        let mapped: SparseTensor = tensor_normalize(
            a.comult_of(r)
                .iter()
                .map(|(s, t, c)| (p[*s], p[*t], c.clone()))
                .collect(),
        );
        if mapped != *b.comult_of(p[r]) {
            return Ok(false);
        }
        if a.counit[r] != b.counit[p[r]] {
            return Ok(false);
        }
        if map_vec(a.antipode_of(r)) != *b.antipode_of(p[r]) {
            return Ok(false);
        }
    }
    if map_vec(&a.unit) != b.unit {
        return Ok(false);
    }
    Ok(true)
}

/// Check that a linear map given by image columns is a morphism of
/// bialgebras (equivalently of Hopf algebras): unital, counital,
/// multiplicative and comultiplicative.  Exhaustive and exact.
pub fn is_hopf_morphism(cols: &[SparseVec], src: &HopfStructure, tgt: &HopfStructure) -> bool {
    hopf_morphism_report(cols, src, tgt).pass()
}

/// Like [`is_hopf_morphism`] but returning the failing laws.
pub fn hopf_morphism_report(
    cols: &[SparseVec],
    src: &HopfStructure,
    tgt: &HopfStructure,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    if cols.len() != src.dim {
        report.record("shape", vec![], "column count != source dimension".into());
        return report;
    }
    let apply = |v: &SparseVec| -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (r, c) in v {
            for (t, ct) in &cols[*r] {
                acc.push((*t, c.mul(ct)));
            }
        }
        sp_normalize(acc)
    };

    // f(1) = 1
    report.count_check();
    let f_unit = apply(&src.unit);
    if f_unit != *tgt.unit() {
        report.record(
            "morphism-unital",
            vec![],
            sp_render(&sp_sub(&f_unit, tgt.unit()), &tgt.labels),
        );
    }

    for r in 0..src.dim {
        // eps' (f e) = eps e
        report.count_check();
        let lhs = tgt.counit_elem(&cols[r]);
        if lhs != src.counit[r] {
            report.record(
                "morphism-counital",
                vec![r],
                lhs.sub(&src.counit[r]).to_string(),
            );
        }
        // Delta' (f e) = (f x f) Delta e
        report.count_check();
        let lhs = tgt.comult_elem(&cols[r]);
        let mut rhs: SparseTensor = Vec::new();
        for (s, t, c) in src.comult_of(r) {
            for (u, cu) in &cols[*s] {
                let c1 = c.mul(cu);
                for (v, cv) in &cols[*t] {
                    rhs.push((*u, *v, c1.mul(cv)));
                }
            }
        }
        let rhs = tensor_normalize(rhs);
        if lhs != rhs {
            report.record("morphism-comultiplicative", vec![r], {
                let mut diff = lhs.clone();
                diff.extend(rhs.iter().map(|(a, b, c)| (*a, *b, c.neg())));
                tensor_render(&tensor_normalize(diff), &tgt.labels)
            });
        }
    }

    let pair_reports: Vec<AxiomReport> = (0..src.dim)
        .into_par_iter()
        .map(|r| {
            let mut rep = AxiomReport::default();
            for s in 0..src.dim {
                rep.count_check();
                let lhs = apply(src.product(r, s));
                let rhs = tgt.mul_elems(&cols[r], &cols[s]);
                if lhs != rhs {
                    rep.record(
                        "morphism-multiplicative",
                        vec![r, s],
                        sp_render(&sp_sub(&lhs, &rhs), &tgt.labels),
                    );
                }
            }
            rep
        })
        .collect();
    for rep in pair_reports {
        report.absorb(rep);
    }
    report
}

/// Tensor product of two Hopf structures (componentwise product, tensor
/// coalgebra, `S = S (x) S`).  Factor labels must occupy slots `0..2`; the
/// product re-labels basis vectors as `(i, j, k, l)` quadruples in
/// lexicographic order, matching the bicrossed-product convention.
pub fn tensor_product_structure(a: &HopfStructure, h: &HopfStructure) -> Result<HopfStructure> {
    for l in a.labels.iter().chain(h.labels.iter()) {
        if l.0[2] != 0 || l.0[3] != 0 {
            return Err(Error::DimensionMismatch(
                "tensor factors must carry two-slot labels".into(),
            ));
        }
    }
    let order = num_integer::lcm(a.order, h.order);
    let dim = a.dim * h.dim;
    let idx = |ia: usize, ih: usize| ia * h.dim + ih;
    let labels: Vec<BasisLabel> = (0..a.dim)
        .flat_map(|ia| {
            (0..h.dim).map(move |ih| (ia, ih))
        })
        .map(|(ia, ih)| {
            BasisLabel([
                a.labels[ia].0[0],
                a.labels[ia].0[1],
                h.labels[ih].0[0],
                h.labels[ih].0[1],
            ])
        })
        .collect();

    let mut mult = vec![Vec::new(); dim * dim];
    for ra in 0..a.dim {
        for rh in 0..h.dim {
            let r = idx(ra, rh);
            for sa in 0..a.dim {
                for sh in 0..h.dim {
                    let s = idx(sa, sh);
                    let mut acc: SparseVec = Vec::new();
                    for (ta, ca) in a.product(ra, sa) {
                        for (th, ch) in h.product(rh, sh) {
                            acc.push((idx(*ta, *th), ca.mul(ch)));
                        }
                    }
                    mult[r * dim + s] = sp_normalize(acc);
                }
            }
        }
    }

    let mut comult = vec![Vec::new(); dim];
    let mut counit = vec![CycScalar::zero(order); dim];
    let mut antipode = vec![Vec::new(); dim];
    for ra in 0..a.dim {
        for rh in 0..h.dim {
            let r = idx(ra, rh);
            let mut acc: SparseTensor = Vec::new();
            for (s1, t1, c1) in a.comult_of(ra) {
                for (s2, t2, c2) in h.comult_of(rh) {
                    acc.push((idx(*s1, *s2), idx(*t1, *t2), c1.mul(c2)));
                }
            }
            comult[r] = tensor_normalize(acc);
            counit[r] = a.counit[ra].mul(&h.counit[rh]);
            let mut sacc: SparseVec = Vec::new();
            for (ta, ca) in a.antipode_of(ra) {
                for (th, ch) in h.antipode_of(rh) {
                    sacc.push((idx(*ta, *th), ca.mul(ch)));
                }
            }
            antipode[r] = sp_normalize(sacc);
        }
    }

    let mut unit: SparseVec = Vec::new();
    for (ra, ca) in &a.unit {
        for (rh, ch) in &h.unit {
            unit.push((idx(*ra, *rh), ca.mul(ch)));
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
