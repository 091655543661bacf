//! Taft algebras `T_{m^2}(q)`: exact elements, structure constants, duals
//! and structural isomorphisms.
//!
//! For `m >= 2` and `q` a primitive `m`-th root of unity, the Taft algebra
//! is generated by a group-like `h` and a `(1, h)`-skew-primitive `x` with
//!
//! ```text
//! h^m = 1,   x^m = 0,   x h = q h x,
//! Delta(h) = h (x) h,          Delta(x) = x (x) h + 1 (x) x,
//! eps(h) = 1, eps(x) = 0,      S(h) = h^{m-1}, S(x) = -q^{m-1} h^{m-1} x.
//! ```
//!
//! Elements are sparse sums of the monomial basis `h^i x^j`
//! (`0 <= i, j < m`); products use the closed form
//! `(h^i x^j)(h^k x^l) = q^{jk} h^{(i+k) mod m} x^{j+l}` (zero when
//! `j + l >= m`).  [`taft_structure`] exports the structure constants,
//! [`taft_dual`] builds the dual Hopf algebra by transposing the tables,
//! and [`structural_isos`] returns the self-duality `T -> T^*` and the
//! isomorphism `T(q)^{cop} -> T(q^{m-1})`, both as explicit matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{multiplicative_order, CycScalar};
use crate::error::{Error, Result};
use crate::hopf::{sp_normalize, BasisLabel, HopfStructure, SparseVec};

#[derive(Debug)]
struct DescInner {
    m: usize,
    q: CycScalar,
    /// `q^0 .. q^{m-1}`, precomputed.
    q_pows: Vec<CycScalar>,
}

/// Validated parameters `(m, q)` of a Taft algebra, cheap to clone.
#[derive(Clone, Debug)]
pub struct TaftDescriptor(Arc<DescInner>);

impl PartialEq for TaftDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.0.m == other.0.m && self.0.q == other.0.q
    }
}
impl Eq for TaftDescriptor {}

impl TaftDescriptor {
    /// Requires `m >= 2` and `q` of exact multiplicative order `m`.
    pub fn new(m: usize, q: CycScalar) -> Result<Self> {
        if m < 2 {
            return Err(Error::DegenerateTaft(m));
        }
        match multiplicative_order(&q) {
            Ok(Some(ord)) if ord == m => {}
            Ok(found) => {
                return Err(Error::NotPrimitiveRoot {
                    expected: m,
                    found,
                })
            }
            Err(_) => {
                return Err(Error::NotPrimitiveRoot {
                    expected: m,
                    found: None,
                })
            }
        }
        let mut q_pows = Vec::with_capacity(m);
        let mut p = CycScalar::one(q.order());
        for _ in 0..m {
            q_pows.push(p.clone());
            p = p.mul(&q);
        }
        Ok(TaftDescriptor(Arc::new(DescInner { m, q, q_pows })))
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn q(&self) -> &CycScalar {
        &self.0.q
    }

    /// `q^k` for any integer exponent.
    pub fn q_pow(&self, k: i64) -> &CycScalar {
        let m = self.0.m as i64;
        let idx = ((k % m) + m) % m;
        &self.0.q_pows[idx as usize]
    }

    /// Dimension `m^2` of the algebra.
    pub fn dim(&self) -> usize {
        self.0.m * self.0.m
    }

    /// Basis index of `h^i x^j`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.0.m + j
    }
}

/// Sparse element of a Taft algebra in the `h^i x^j` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TaftElement {
    desc: TaftDescriptor,
    terms: BTreeMap<(usize, usize), CycScalar>,
}

impl TaftElement {
    pub fn zero(desc: &TaftDescriptor) -> Self {
        TaftElement {
            desc: desc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(desc: &TaftDescriptor) -> Self {
        Self::monomial(desc, 0, 0, CycScalar::one(desc.q().order()))
            .expect("unit monomial is in range")
    }

    /// `c * h^i x^j`; errors when the exponents fall outside `0..m`.
    pub fn monomial(desc: &TaftDescriptor, i: usize, j: usize, c: CycScalar) -> Result<Self> {
        let m = desc.m();
        if i >= m || j >= m {
            return Err(Error::IndexOutOfRange(format!(
                "monomial h^{i} x^{j} outside 0..{m}"
            )));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Ok(TaftElement {
            desc: desc.clone(),
            terms,
        })
    }

    /// The group-like generator `h`.
    pub fn gen_h(desc: &TaftDescriptor) -> Self {
        Self::monomial(desc, 1, 0, CycScalar::one(desc.q().order())).expect("h is in range")
    }

    /// The skew-primitive generator `x`.
    pub fn gen_x(desc: &TaftDescriptor) -> Self {
        Self::monomial(desc, 0, 1, CycScalar::one(desc.q().order())).expect("x is in range")
    }

    pub fn descriptor(&self) -> &TaftDescriptor {
        &self.desc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> CycScalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.desc.q().order()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &CycScalar)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (usize, usize), c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_desc(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TaftElement {
            desc: self.desc.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.desc);
        }
        let mut out = Self::zero(&self.desc);
        for (k, a) in &self.terms {
            out.insert(*k, a.mul(c));
        }
        out
    }

    /// Closed-form product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_desc(other)?;
        let m = self.desc.m();
        let mut out = Self::zero(&self.desc);
        for ((i, j), ca) in &self.terms {
            for ((k, l), cb) in &other.terms {
                if j + l >= m {
                    continue;
                }
                let c = ca.mul(cb).mul(self.desc.q_pow((*j * *k) as i64));
                out.insert(((*i + *k) % m, j + l), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::one(&self.desc);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Comultiplication, by powering `Delta(h)` and `Delta(x)` in the
    /// tensor square.
    pub fn comult(&self) -> TensorElement {
        let d = &self.desc;
        let one = CycScalar::one(d.q().order());
        let dh = {
            let mut t = TensorElement::zero(d, d);
            t.insert((1, 0), (1, 0), one.clone());
            t
        };
        let dx = {
            let mut t = TensorElement::zero(d, d);
            t.insert((0, 1), (1, 0), one.clone());
            t.insert((0, 0), (0, 1), one.clone());
            t
        };
        let mut out = TensorElement::zero(d, d);
        for ((i, j), c) in &self.terms {
            let mut term = TensorElement::unit(d, d);
            for _ in 0..*i {
                term = term.mul(&dh).expect("matching descriptors");
            }
            for _ in 0..*j {
                term = term.mul(&dx).expect("matching descriptors");
            }
            out = out
                .add(&term.scale(c))
                .expect("matching descriptors");
        }
        out
    }

    /// Counit: `eps(h^i x^j) = [j = 0]`.
    pub fn counit(&self) -> CycScalar {
        let mut acc = CycScalar::zero(self.desc.q().order());
        for ((_, j), c) in &self.terms {
            if *j == 0 {
                acc = acc.add(c);
            }
        }
        acc
    }

    /// Antipode, the algebra anti-morphism with `S(h) = h^{m-1}` and
    /// `S(x) = -q^{m-1} h^{m-1} x`.
    pub fn antipode(&self) -> Self {
        let d = &self.desc;
        let m = d.m();
        let sx = Self::monomial(d, m - 1, 1, d.q_pow(m as i64 - 1).neg())
            .expect("antipode of x is in range");
        let mut out = Self::zero(d);
        for ((i, j), c) in &self.terms {
            // S(h^i x^j) = S(x)^j S(h^i) with S(h^i) = h^{(m-i) mod m}.
            let sh = Self::monomial(d, (m - *i) % m, 0, CycScalar::one(d.q().order()))
                .expect("antipode of h power is in range");
            let term = sx
                .pow(*j)
                .and_then(|p| p.mul(&sh))
                .expect("antipode product stays in range");
            out = out.add(&term.scale(c)).expect("matching descriptors");
        }
        out
    }

    /// Sparse coefficient vector in the basis order `i * m + j`.
    pub fn to_sparse(&self) -> SparseVec {
        self.terms
            .iter()
            .map(|((i, j), c)| (self.desc.index(*i, *j), c.clone()))
            .collect()
    }

    pub fn from_sparse(desc: &TaftDescriptor, v: &SparseVec) -> Result<Self> {
        let m = desc.m();
        let mut out = Self::zero(desc);
        for (idx, c) in v {
            if *idx >= desc.dim() {
                return Err(Error::IndexOutOfRange(format!(
                    "sparse index {idx} outside dimension {}",
                    desc.dim()
                )));
            }
            out.insert((idx / m, idx % m), c.clone());
        }
        Ok(out)
    }

    fn check_desc(&self, other: &Self) -> Result<()> {
        if self.desc != other.desc {
            return Err(Error::DescriptorMismatch(format!(
                "mixed Taft descriptors (m = {} vs m = {})",
                self.desc.m(),
                other.desc.m()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TaftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (i, j) {
                (0, 0) => "1".to_string(),
                (i, 0) => format!("h^{i}"),
                (0, j) => format!("x^{j}"),
                (i, j) => format!("h^{i} x^{j}"),
            };
            write!(f, "({c})*{mono}")?;
        }
        Ok(())
    }
}

/// Sparse element of a tensor product of two (possibly different) Taft
/// algebras, with componentwise multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    left: TaftDescriptor,
    right: TaftDescriptor,
    terms: BTreeMap<((usize, usize), (usize, usize)), CycScalar>,
}

impl TensorElement {
    pub fn zero(left: &TaftDescriptor, right: &TaftDescriptor) -> Self {
        TensorElement {
            left: left.clone(),
            right: right.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) 1`.
    pub fn unit(left: &TaftDescriptor, right: &TaftDescriptor) -> Self {
        let mut t = Self::zero(left, right);
        t.insert(
            (0, 0),
            (0, 0),
            CycScalar::one(left.q().order()),
        );
        t
    }

    /// `a (x) b`.
    pub fn tensor(a: &TaftElement, b: &TaftElement) -> Self {
        let mut t = Self::zero(&a.desc, &b.desc);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                t.insert(*ka, *kb, ca.mul(cb));
            }
        }
        t
    }

    pub fn left_descriptor(&self) -> &TaftDescriptor {
        &self.left
    }

    pub fn right_descriptor(&self) -> &TaftDescriptor {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&((usize, usize), (usize, usize)), &CycScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: (usize, usize), r: (usize, usize)) -> CycScalar {
        self.terms
            .get(&(l, r))
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.left.q().order()))
    }

    fn insert(&mut self, l: (usize, usize), r: (usize, usize), c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((l, r)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_desc(other)?;
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.insert(*l, *r, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.left, &self.right);
        }
        let mut out = Self::zero(&self.left, &self.right);
        for (k, a) in &self.terms {
            out.insert(k.0, k.1, a.mul(c));
        }
        out
    }

    /// Componentwise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_desc(other)?;
        let ml = self.left.m();
        let mr = self.right.m();
        let mut out = Self::zero(&self.left, &self.right);
        for (((i1, j1), (k1, l1)), ca) in &self.terms {
            for (((i2, j2), (k2, l2)), cb) in &other.terms {
                if j1 + j2 >= ml || l1 + l2 >= mr {
                    continue;
                }
                let c = ca
                    .mul(cb)
                    .mul(self.left.q_pow((*j1 * *i2) as i64))
                    .mul(self.right.q_pow((*l1 * *k2) as i64));
                out.insert(
                    ((i1 + i2) % ml, j1 + j2),
                    ((k1 + k2) % mr, l1 + l2),
                    c,
                );
            }
        }
        Ok(out)
    }

    fn check_desc(&self, other: &Self) -> Result<()> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::DescriptorMismatch(
                "mixed tensor-square descriptors".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mono = |i: usize, j: usize| match (i, j) {
            (0, 0) => "1".to_string(),
            (i, 0) => format!("h^{i}"),
            (0, j) => format!("x^{j}"),
            (i, j) => format!("h^{i} x^{j}"),
        };
        let mut first = true;
        for (((i, j), (k, l)), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}(x){}", mono(*i, *j), mono(*k, *l))?;
        }
        Ok(())
    }
}

/// The group-like elements `1, h, .., h^{m-1}`.
pub fn group_likes(desc: &TaftDescriptor) -> Vec<TaftElement> {
    (0..desc.m())
        .map(|i| {
            TaftElement::monomial(desc, i, 0, CycScalar::one(desc.q().order()))
                .expect("group-like powers are in range")
        })
        .collect()
}

/// Basis of the `(h^j, 1)`-skew-primitive space
/// `{p : Delta(p) = p (x) h^j + 1 (x) p}`: empty for `j = 0`,
/// `{h - 1, x}` for `j = 1`, `{h^j - 1}` otherwise.
pub fn skew_primitives(desc: &TaftDescriptor, j: usize) -> Result<Vec<TaftElement>> {
    let m = desc.m();
    if j >= m {
        return Err(Error::IndexOutOfRange(format!(
            "group-like exponent {j} outside 0..{m}"
        )));
    }
    if j == 0 {
        return Ok(Vec::new());
    }
    let one = TaftElement::one(desc);
    let hj = TaftElement::monomial(desc, j, 0, CycScalar::one(desc.q().order()))?;
    let mut basis = vec![hj.sub(&one)?];
    if j == 1 {
        basis.push(TaftElement::gen_x(desc));
    }
    Ok(basis)
}

/// Structure constants of `T_{m^2}(q)` with basis labels `(i, j, 0, 0)`
/// at index `i * m + j`.
pub fn taft_structure(desc: &TaftDescriptor) -> Result<HopfStructure> {
    let m = desc.m();
    let dim = desc.dim();
    let order = desc.q().order();
    let labels: Vec<BasisLabel> = (0..m)
        .flat_map(|i| (0..m).map(move |j| BasisLabel([i as u16, j as u16, 0, 0])))
        .collect();

    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..m {
        for j in 0..m {
            let r = desc.index(i, j);
            for k in 0..m {
                for l in 0..m {
                    let s = desc.index(k, l);
                    if j + l < m {
                        mult[r * dim + s] =
                            vec![(desc.index((i + k) % m, j + l), desc.q_pow((j * k) as i64).clone())];
                    }
                }
            }
        }
    }

    let mut comult = vec![Vec::new(); dim];
    let mut counit = vec![CycScalar::zero(order); dim];
    let mut antipode = vec![Vec::new(); dim];
    for i in 0..m {
        for j in 0..m {
            let r = desc.index(i, j);
            let e = TaftElement::monomial(desc, i, j, CycScalar::one(order))?;
            comult[r] = e
                .comult()
                .terms()
                .map(|(((a, b), (c, d)), coef)| {
                    (desc.index(*a, *b), desc.index(*c, *d), coef.clone())
                })
                .collect();
            counit[r] = e.counit();
            antipode[r] = e.antipode().to_sparse();
        }
    }

    let unit = vec![(0usize, CycScalar::one(order))];
    HopfStructure::new(dim, order, labels, mult, comult, counit, unit, antipode)
}

/// Sparse functional on a Taft algebra, a sum of dual-basis vectors
/// `(h^i x^j)^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualElement {
    desc: TaftDescriptor,
    terms: BTreeMap<(usize, usize), CycScalar>,
}

impl DualElement {
    pub fn zero(desc: &TaftDescriptor) -> Self {
        DualElement {
            desc: desc.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c * (h^i x^j)^*`.
    pub fn delta(desc: &TaftDescriptor, i: usize, j: usize, c: CycScalar) -> Result<Self> {
        let m = desc.m();
        if i >= m || j >= m {
            return Err(Error::IndexOutOfRange(format!(
                "dual index ({i}, {j}) outside 0..{m}"
            )));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Ok(DualElement {
            desc: desc.clone(),
            terms,
        })
    }

    /// The group-like functional `sum_i q^i (h^i)^*`, image of `h` under
    /// the self-duality.
    pub fn h_star(desc: &TaftDescriptor) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..desc.m() {
            terms.insert((i, 0), desc.q_pow(i as i64).clone());
        }
        DualElement {
            desc: desc.clone(),
            terms,
        }
    }

    /// The skew-primitive functional `sum_i (h^i x)^*`, image of `x`
    /// under the self-duality.
    pub fn x_star(desc: &TaftDescriptor) -> Self {
        let mut terms = BTreeMap::new();
        let one = CycScalar::one(desc.q().order());
        for i in 0..desc.m() {
            terms.insert((i, 1), one.clone());
        }
        DualElement {
            desc: desc.clone(),
            terms,
        }
    }

    /// Evaluate the functional on an element.
    pub fn evaluate(&self, a: &TaftElement) -> Result<CycScalar> {
        if self.desc != a.desc {
            return Err(Error::DescriptorMismatch(
                "functional and element from different Taft algebras".into(),
            ));
        }
        let mut acc = CycScalar::zero(self.desc.q().order());
        for (k, c) in &self.terms {
            if let Some(a_c) = a.terms.get(k) {
                acc = acc.add(&c.mul(a_c));
            }
        }
        Ok(acc)
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.terms
            .iter()
            .map(|((i, j), c)| (self.desc.index(*i, *j), c.clone()))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &CycScalar)> {
        self.terms.iter()
    }
}

/// The dual Hopf algebra of a Taft algebra, with the self-duality matrix.
pub struct TaftDual {
    desc: TaftDescriptor,
    structure: HopfStructure,
    /// Columns of `psi : T -> T^*`, `psi(h^i x^j) = (h^*)^i (x^*)^j`.
    psi: Vec<SparseVec>,
}

impl TaftDual {
    pub fn descriptor(&self) -> &TaftDescriptor {
        &self.desc
    }

    /// Structure constants of `T^*` in the dual basis `(h^i x^j)^*`.
    pub fn structure(&self) -> &HopfStructure {
        &self.structure
    }

    /// Columns of the self-duality `psi`.
    pub fn psi_columns(&self) -> &[SparseVec] {
        &self.psi
    }
}

/// Dualize a Taft algebra: multiplication is the transpose of the
/// comultiplication, comultiplication the transpose of the
/// multiplication, the unit is the counit functional, the counit is
/// evaluation at 1, and the antipode is the transpose of the antipode.
pub fn taft_dual(desc: &TaftDescriptor) -> Result<TaftDual> {
    let primal = taft_structure(desc)?;
    let dim = primal.dim();
    let order = primal.scalar_order();
    let labels = primal.labels().to_vec();

    // (e*_a e*_b)(e_c) = coefficient of e_a (x) e_b in Delta(e_c).
    let mut mult = vec![Vec::new(); dim * dim];
    for c in 0..dim {
        for (a, b, coef) in primal.comult_of(c) {
            let cell = &mut mult[a * dim + b];
            cell.push((c, coef.clone()));
        }
    }
    let mult = mult.into_iter().map(sp_normalize).collect();

    // Delta(e*_c) = sum_{a,b} (coefficient of e_c in e_a e_b) e*_a (x) e*_b.
    let mut comult = vec![Vec::new(); dim];
    for a in 0..dim {
        for b in 0..dim {
            for (c, coef) in primal.product(a, b) {
                comult[*c].push((a, b, coef.clone()));
            }
        }
    }
    let comult = comult
        .into_iter()
        .map(crate::hopf::tensor_normalize)
        .collect();

    // eps*(e*_c) = e*_c(1); unit of the dual is the counit functional.
    let mut counit = vec![CycScalar::zero(order); dim];
    for (r, c) in primal.unit() {
        counit[*r] = c.clone();
    }
    let unit: SparseVec = (0..dim)
        .filter_map(|r| {
            let c = primal.counit_of(r);
            (!c.is_zero()).then(|| (r, c.clone()))
        })
        .collect();

    // S*(e*_c) = e*_c compose S: column c of the transpose of S.
    let mut antipode = vec![Vec::new(); dim];
    for a in 0..dim {
        for (c, coef) in primal.antipode_of(a) {
            antipode[*c].push((a, coef.clone()));
        }
    }
    let antipode = antipode.into_iter().map(sp_normalize).collect();

    let structure = HopfStructure::new(dim, order, labels, mult, comult, counit, unit, antipode)?;

    // psi columns: powers of h_star and x_star multiplied in the dual.
    let m = desc.m();
    let h_star = DualElement::h_star(desc).to_sparse();
    let x_star = DualElement::x_star(desc).to_sparse();
    let mut psi = vec![Vec::new(); dim];
    let mut h_pow = structure.unit().clone();
    for i in 0..m {
        let mut col = h_pow.clone();
        for j in 0..m {
            psi[desc.index(i, j)] = col.clone();
            col = structure.mul_elems(&col, &x_star);
        }
        h_pow = structure.mul_elems(&h_pow, &h_star);
    }

    Ok(TaftDual {
        desc: desc.clone(),
        structure,
        psi,
    })
}

/// The two structural isomorphisms attached to a Taft algebra: the
/// self-duality `psi : T(q) -> T(q)^*` and the co-opposite
/// correspondence `f : T(q)^{cop} -> T(q^{m-1})` determined by
/// `f(h) = h^{m-1}` and `f(x) = -q^{m-1} h^{m-1} x` in the target.
pub struct StructuralIsos {
    /// Source structure `T(q)`.
    pub primal: HopfStructure,
    /// The dual with `psi` columns.
    pub dual: TaftDual,
    /// Target structure `T(q^{m-1})`.
    pub inverse_root_target: HopfStructure,
    /// Columns of `f` on the basis `h^i x^j` of the source.
    pub cop_columns: Vec<SparseVec>,
}

/// Build both structural isomorphisms; callers verify them with
/// [`crate::hopf::is_hopf_morphism`] and a rank check.
pub fn structural_isos(desc: &TaftDescriptor) -> Result<StructuralIsos> {
    let primal = taft_structure(desc)?;
    let dual = taft_dual(desc)?;

    let m = desc.m();
    let q_inv = desc.q_pow(m as i64 - 1).clone();
    let target_desc = TaftDescriptor::new(m, q_inv)?;
    let target = taft_structure(&target_desc)?;

    let f_h = TaftElement::monomial(
        &target_desc,
        m - 1,
        0,
        CycScalar::one(desc.q().order()),
    )?;
    let f_x = TaftElement::monomial(&target_desc, m - 1, 1, desc.q_pow(m as i64 - 1).neg())?;

    let mut cop_columns = vec![Vec::new(); desc.dim()];
    let mut fh_pow = TaftElement::one(&target_desc);
    for i in 0..m {
        let mut img = fh_pow.clone();
        for j in 0..m {
            cop_columns[desc.index(i, j)] = img.to_sparse();
            img = img.mul(&f_x)?;
        }
        fh_pow = fh_pow.mul(&f_h)?;
    }

    Ok(StructuralIsos {
        primal,
        dual,
        inverse_root_target: target,
        cop_columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{root_of_unity, Rational};
    use crate::hopf::{hopf_morphism_report, is_hopf_morphism, verify_hopf};
    use crate::linalg::Matrix;
    use num_traits::One;

    fn desc(m: usize) -> TaftDescriptor {
        TaftDescriptor::new(m, root_of_unity(m, 1).unwrap()).unwrap()
    }

    #[test]
    fn descriptor_rejects_wrong_order() {
        // zeta_6^2 has order 3, not 6
        let err = TaftDescriptor::new(6, root_of_unity(6, 2).unwrap()).unwrap_err();
        match err {
            Error::NotPrimitiveRoot { expected, found } => {
                assert_eq!(expected, 6);
                assert_eq!(found, Some(3));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(TaftDescriptor::new(1, CycScalar::one(1)).is_err());
    }

    #[test]
    fn generator_relations() {
        for m in [2usize, 3, 4, 6] {
            let d = desc(m);
            let h = TaftElement::gen_h(&d);
            let x = TaftElement::gen_x(&d);
            assert_eq!(h.pow(m).unwrap(), TaftElement::one(&d), "h^m = 1 at m={m}");
            assert!(x.pow(m).unwrap().is_zero(), "x^m = 0 at m={m}");
            let xh = x.mul(&h).unwrap();
            let qhx = h.mul(&x).unwrap().scale(d.q());
            assert_eq!(xh, qhx, "xh = q hx at m={m}");
        }
    }

    #[test]
    fn closed_form_matches_stepwise_products() {
        // (h^i x^j)(h^k x^l) via the closed form must agree with the
        // product assembled one generator at a time.
        let d = desc(4);
        let h = TaftElement::gen_h(&d);
        let x = TaftElement::gen_x(&d);
        let build = |i: usize, j: usize| {
            let mut e = TaftElement::one(&d);
            for _ in 0..i {
                e = e.mul(&h).unwrap();
            }
            for _ in 0..j {
                e = e.mul(&x).unwrap();
            }
            e
        };
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let lhs = build(i, j).mul(&build(k, l)).unwrap();
                        let rhs = build(i, j)
                            .mul(&build(k, 0))
                            .unwrap()
                            .mul(&build(0, l))
                            .unwrap();
                        assert_eq!(lhs, rhs, "splitting the right factor at ({i},{j},{k},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn comult_of_x_squared() {
        // Delta(x^2) = x^2 (x) h^2 + (1+q) x (x) hx + 1 (x) x^2
        let d = desc(3);
        let x2 = TaftElement::gen_x(&d).pow(2).unwrap();
        let dx2 = x2.comult();
        let one_plus_q = CycScalar::one(3).add(d.q());
        assert_eq!(dx2.coeff((0, 2), (2, 0)), CycScalar::one(3));
        assert_eq!(dx2.coeff((0, 1), (1, 1)), one_plus_q);
        assert_eq!(dx2.coeff((0, 0), (0, 2)), CycScalar::one(3));
        assert_eq!(dx2.terms().count(), 3);
    }

    #[test]
    fn antipode_values() {
        let d = desc(4);
        let x = TaftElement::gen_x(&d);
        let expected = TaftElement::monomial(&d, 3, 1, d.q_pow(3).neg()).unwrap();
        assert_eq!(x.antipode(), expected);
        // S^2(a) = h a h^{-1}
        let h = TaftElement::gen_h(&d);
        let h_inv = h.pow(3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let a = TaftElement::monomial(&d, i, j, CycScalar::one(4)).unwrap();
                let s2 = a.antipode().antipode();
                let conj = h.mul(&a).unwrap().mul(&h_inv).unwrap();
                assert_eq!(s2, conj, "S^2 = conjugation by h at ({i},{j})");
            }
        }
    }

    #[test]
    fn sweedler_case_tables() {
        // m = 2, q = -1: xh = -hx and S(x) = hx.
        let d = desc(2);
        let h = TaftElement::gen_h(&d);
        let x = TaftElement::gen_x(&d);
        assert_eq!(
            x.mul(&h).unwrap(),
            h.mul(&x).unwrap().neg(),
            "anticommutation"
        );
        assert_eq!(x.antipode(), h.mul(&x).unwrap());
    }

    #[test]
    fn structure_passes_all_axioms() {
        for m in [2usize, 3, 4] {
            let hs = taft_structure(&desc(m)).unwrap();
            let report = verify_hopf(&hs);
            assert!(
                report.pass(),
                "Taft m={m} failed: {:?}",
                report.failed_axioms()
            );
        }
    }

    #[test]
    fn grouplikes_and_skew_primitives() {
        let d = desc(3);
        for g in group_likes(&d) {
            let dg = g.comult();
            assert_eq!(dg, TensorElement::tensor(&g, &g));
            assert!(g.counit().is_one());
        }
        // Delta(p) = p (x) h^j + 1 (x) p
        let one = TaftElement::one(&d);
        for j in 0..3 {
            let hj = TaftElement::monomial(&d, j, 0, CycScalar::one(3)).unwrap();
            let basis = skew_primitives(&d, j).unwrap();
            assert_eq!(basis.len(), if j == 0 { 0 } else if j == 1 { 2 } else { 1 });
            for p in basis {
                let lhs = p.comult();
                let rhs = TensorElement::tensor(&p, &hj)
                    .add(&TensorElement::tensor(&one, &p))
                    .unwrap();
                assert_eq!(lhs, rhs, "skew-primitive law at j={j}");
            }
        }
        assert!(skew_primitives(&d, 3).is_err());
    }

    #[test]
    fn dual_structure_is_hopf_and_transposes_evaluation() {
        for m in [2usize, 3] {
            let d = desc(m);
            let dual = taft_dual(&d).unwrap();
            let report = verify_hopf(dual.structure());
            assert!(
                report.pass(),
                "dual m={m} failed: {:?}",
                report.failed_axioms()
            );

            // (f g)(z) = sum f(z_1) g(z_2) for dual basis functionals.
            let primal = taft_structure(&d).unwrap();
            for a in 0..d.dim() {
                for b in 0..d.dim() {
                    let fg = dual.structure().product(a, b);
                    for z in 0..d.dim() {
                        let lhs = fg
                            .iter()
                            .filter(|(c, _)| *c == z)
                            .fold(CycScalar::zero(d.q().order()), |acc, (_, c)| acc.add(c));
                        let rhs = primal
                            .comult_of(z)
                            .iter()
                            .filter(|(s, t, _)| *s == a && *t == b)
                            .fold(CycScalar::zero(d.q().order()), |acc, (_, _, c)| acc.add(c));
                        assert_eq!(lhs, rhs, "dual product transposes Delta");
                    }
                }
            }
        }
    }

    #[test]
    fn functional_evaluation() {
        let d = desc(3);
        let h_star = DualElement::h_star(&d);
        let x_star = DualElement::x_star(&d);
        for i in 0..3 {
            for j in 0..3 {
                let a = TaftElement::monomial(&d, i, j, CycScalar::one(3)).unwrap();
                let hv = h_star.evaluate(&a).unwrap();
                let xv = x_star.evaluate(&a).unwrap();
                if j == 0 {
                    assert_eq!(hv, d.q_pow(i as i64).clone());
                } else {
                    assert!(hv.is_zero());
                }
                if j == 1 {
                    assert!(xv.is_one());
                } else {
                    assert!(xv.is_zero());
                }
            }
        }
        let scaled = DualElement::delta(&d, 2, 1, CycScalar::from_rational(Rational::one()))
            .unwrap();
        let probe = TaftElement::monomial(&d, 2, 1, root_of_unity(3, 1).unwrap()).unwrap();
        assert_eq!(scaled.evaluate(&probe).unwrap(), root_of_unity(3, 1).unwrap());
    }

    #[test]
    fn self_duality_is_an_isomorphism() {
        for m in [2usize, 3] {
            let d = desc(m);
            let primal = taft_structure(&d).unwrap();
            let dual = taft_dual(&d).unwrap();
            let report = hopf_morphism_report(dual.psi_columns(), &primal, dual.structure());
            assert!(
                report.pass(),
                "psi m={m} failed: {:?}",
                report.failed_axioms()
            );
            let mat = Matrix::from_columns(d.dim(), dual.psi_columns(), d.q().order());
            assert_eq!(mat.rank(), d.dim(), "psi bijective at m={m}");
        }
    }

    #[test]
    fn cop_iso_is_an_isomorphism() {
        for m in [2usize, 3, 4] {
            let d = desc(m);
            let isos = structural_isos(&d).unwrap();
            let source = isos.primal.cop().unwrap();
            assert!(
                is_hopf_morphism(&isos.cop_columns, &source, &isos.inverse_root_target),
                "cop iso fails at m={m}"
            );
            let mat = Matrix::from_columns(d.dim(), &isos.cop_columns, d.q().order());
            assert_eq!(mat.rank(), d.dim(), "cop iso bijective at m={m}");
        }
    }

    #[test]
    fn element_serialization_round_trips_through_sparse() {
        let d = desc(4);
        let e = TaftElement::gen_h(&d)
            .mul(&TaftElement::gen_x(&d))
            .unwrap()
            .add(&TaftElement::one(&d).scale(&root_of_unity(4, 1).unwrap()))
            .unwrap();
        let back = TaftElement::from_sparse(&d, &e.to_sparse()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn mixed_descriptor_operations_error() {
        let d2 = desc(2);
        let d3 = desc(3);
        let a = TaftElement::gen_h(&d2);
        let b = TaftElement::gen_h(&d3);
        assert!(matches!(
            a.mul(&b),
            Err(Error::DescriptorMismatch(_))
        ));
        assert!(DualElement::h_star(&d2).evaluate(&b).is_err());
    }
}
