//! Exact arithmetic in cyclotomic number fields `Q(zeta_L)`.
//!
//! A scalar is a polynomial in `zeta_L` with rational coefficients, kept
//! reduced modulo the `L`-th cyclotomic polynomial `Phi_L`, so each field
//! element has exactly one stored representation of length `phi(L)`.
//! Arithmetic between scalars of different stored orders first embeds both
//! into `Q(zeta_lcm)` via `zeta_L -> zeta_lcm^(lcm/L)`.
//!
//! Coefficients are arbitrary-precision rationals ([`Rational`]); nothing
//! in this module (or the crate) ever rounds.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (enforced by the backing implementation).
pub type Rational = num_rational::BigRational;

/// Euler totient of `n`.
pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1);
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The `n`-th cyclotomic polynomial as ascending integer coefficients
/// (monic, degree `phi(n)`).
///
/// Computed by exact division: `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`,
/// with results cached process-wide.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); n + 1];
        num[0] = BigInt::from(-1);
        num[n] = BigInt::from(1);
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                num = int_poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    let arc = Arc::new(poly);
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor must be monic up to sign of its leading coefficient and the
/// division must leave no remainder.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / &lead;
        quot[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            let t = &rem[k + i] - &c * di;
            rem[k + i] = t;
        }
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "polynomial division left a remainder"
    );
    quot
}

/// Precomputed data for arithmetic in one order: the cyclotomic polynomial
/// and the reductions of `x^(phi+k)` modulo it.
struct OrderContext {
    phi: usize,
    /// `Phi_L` as rationals (ascending, monic).
    modulus: Vec<Rational>,
    /// `reduction[k]` = coefficients of `x^(phi+k) mod Phi_L`, for
    /// `k < phi - 1` (enough for products of two reduced elements).
    reduction: Vec<Vec<Rational>>,
}

fn order_context(order: usize) -> Arc<OrderContext> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OrderContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&order) {
        return Arc::clone(hit);
    }
    let phi = euler_phi(order);
    let modulus: Vec<Rational> = cyclotomic_polynomial(order)
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    // x^phi = -(modulus without leading term)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let base: Vec<Rational> = modulus[..phi].iter().map(|c| -c.clone()).collect();
    rows.push(base);
    for _ in 1..phi.max(1) {
        let prev = rows.last().unwrap();
        // multiply by x: shift up, then fold the overflowing top term.
        let mut next = vec![Rational::zero(); phi];
        let top = prev[phi - 1].clone();
        for i in 1..phi {
            next[i] = prev[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, r) in rows[0].iter().enumerate() {
                if !r.is_zero() {
                    let t = &next[i] + &top * r;
                    next[i] = t;
                }
            }
        }
        rows.push(next);
    }
    let arc = Arc::new(OrderContext {
        phi,
        modulus,
        reduction: rows,
    });
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// An element of `Q(zeta_order)`: `coeffs[i]` is the coefficient of
/// `zeta_order^i`, with `coeffs.len() == phi(order)` always.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    /// Zero in `Q(zeta_order)`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        CycScalar {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order)],
        }
    }

    /// One in `Q(zeta_order)`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The rational `r` viewed in `Q(zeta_order)`.
    pub fn from_rational_in(r: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = r;
        s
    }

    /// The rational `r` viewed in `Q = Q(zeta_1)`.
    pub fn from_rational(r: Rational) -> Self {
        Self::from_rational_in(r, 1)
    }

    /// The integer `n` viewed in `Q(zeta_1)`.
    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Stored field order `L` (the element lives in `Q(zeta_L)`).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient slice of length `phi(order)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Build from raw coefficients already reduced to length `phi(order)`.
    pub fn from_coeffs(order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != euler_phi(order) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients for order {order}, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        Ok(CycScalar { order, coeffs })
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact test against one.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `true` if the element is a rational number (no root-of-unity part).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if [`Self::is_rational`], else `None`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(zeta_new_order)`; requires `order | new_order`.
    pub fn embed(&self, new_order: usize) -> Result<Self> {
        if new_order % self.order != 0 {
            return Err(Error::NotADivisor {
                d: self.order,
                l: new_order,
            });
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = new_order / self.order;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        Ok(CycScalar {
            order: new_order,
            coeffs: reduce_mod_order(raw, new_order),
        })
    }

    /// Bring two scalars into a common field `Q(zeta_lcm)`.
    pub fn promote(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = a.order.lcm(&b.order);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    /// Sum; operands of different stored order are first embedded into the
    /// common field.
    pub fn add(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return CycScalar {
                order: self.order,
                coeffs,
            };
        }
        let (a, b) = Self::promote(self, other);
        a.add(&b)
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Product; sparse in both operands, reduced modulo `Phi_L`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Self::promote(self, other);
            return a.mul(&b);
        }
        let phi = self.coeffs.len();
        if phi == 1 {
            return CycScalar {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = &raw[i + j] + a * b;
                raw[i + j] = t;
            }
        }
        CycScalar {
            order: self.order,
            coeffs: reduce_mod_order(raw, self.order),
        }
    }

    /// Scale by a rational without changing the stored order.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.order);
        }
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_L` (which is irreducible over `Q`, so any nonzero element is a
    /// unit).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("invert(0)".into()));
        }
        let ctx = order_context(self.order);
        if ctx.phi == 1 {
            return Ok(CycScalar {
                order: self.order,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let (g, u) = poly_half_ext_gcd(&self.coeffs, &ctx.modulus);
        // g is a nonzero constant: u * self = g (mod Phi), so self^{-1} = u / g.
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let ginv = g[0].recip();
        let mut coeffs = vec![Rational::zero(); ctx.phi];
        for (i, c) in u.iter().enumerate() {
            coeffs[i] = c * &ginv;
        }
        Ok(CycScalar {
            order: self.order,
            coeffs,
        })
    }

    /// Integer power (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

/// Reduce ascending rational coefficients modulo `Phi_order` down to length
/// `phi(order)` by folding leading terms top-down.
fn reduce_mod_order(mut raw: Vec<Rational>, order: usize) -> Vec<Rational> {
    let ctx = order_context(order);
    let phi = ctx.phi;
    let span = ctx.reduction.len(); // = phi for phi >= 1
    while raw.len() > phi {
        let deg = raw.len() - 1;
        let top = raw.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = deg - phi;
        if k < span {
            for (i, r) in ctx.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    let t = &raw[i] + &top * r;
                    raw[i] = t;
                }
            }
        } else {
            // Degree beyond the precomputed rows (only reachable through
            // embeddings of high-degree monomials): fold one step of long
            // division and keep going.
            for (i, m) in ctx.modulus[..phi].iter().enumerate() {
                if !m.is_zero() {
                    let t = &raw[deg - phi + i] - &top * m;
                    raw[deg - phi + i] = t;
                }
            }
        }
    }
    raw.resize(phi, Rational::zero());
    raw
}

/// Half-extended gcd over `Q[x]`: returns `(g, u)` with
/// `u*a + (something)*b = g` and `g = gcd(a, b)` a constant when `b` is
/// irreducible and `a` is a nonzero polynomial of smaller degree.
fn poly_half_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    fn deg(p: &[Rational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    }
    // r0 = a, r1 = b; u0 = 1, u1 = 0; maintain ri = ui*a mod-multiples of b.
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while deg(&r1).is_some() {
        // quotient, remainder of r0 / r1
        let d1 = deg(&r1).unwrap();
        let mut rem = r0.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(d1).max(1)];
        while let Some(d0) = deg(&rem) {
            if d0 < d1 {
                break;
            }
            let c = &rem[d0] / &r1[d1];
            quot[d0 - d1] = c.clone();
            for i in 0..=d1 {
                let t = &rem[d0 - d1 + i] - &c * &r1[i];
                rem[d0 - d1 + i] = t;
            }
        }
        let rem = trim(rem);
        // u2 = u0 - quot * u1
        let mut u2 = vec![Rational::zero(); (quot.len() + u1.len()).max(u0.len())];
        for (i, c) in u0.iter().enumerate() {
            u2[i] = c.clone();
        }
        for (i, qc) in quot.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            for (j, uc) in u1.iter().enumerate() {
                if !uc.is_zero() {
                    let t = &u2[i + j] - qc * uc;
                    u2[i + j] = t;
                }
            }
        }
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = trim(u2);
    }
    (r0, u0)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::promote(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", self.order)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [Rational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for c in self.0 {
                    seq.serialize_element(&[c.numer().to_string(), c.denom().to_string()])?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("CycScalar", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<(String, String)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.order < 1 {
            return Err(de::Error::custom("order must be >= 1"));
        }
        if repr.coeffs.len() != euler_phi(repr.order) {
            return Err(de::Error::custom(format!(
                "expected {} coefficients for order {}",
                euler_phi(repr.order),
                repr.order
            )));
        }
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for (n, d) in &repr.coeffs {
            let n: BigInt = n.parse().map_err(de::Error::custom)?;
            let d: BigInt = d.parse().map_err(de::Error::custom)?;
            if d.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            coeffs.push(Rational::new(n, d));
        }
        Ok(CycScalar {
            order: repr.order,
            coeffs,
        })
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                CycScalar::$inner(self, rhs)
            }
        }
        impl std::ops::$trait for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                CycScalar::$inner(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(self)
    }
}

/// The root of unity `zeta_l^k` in `Q(zeta_l)`.
pub fn root_of_unity(l: usize, k: i64) -> Result<CycScalar> {
    if l < 1 {
        return Err(Error::IndexOutOfRange(format!("order {l} must be >= 1")));
    }
    let k = k.rem_euclid(l as i64) as usize;
    let mut raw = vec![Rational::zero(); k + 1];
    raw[k] = Rational::one();
    Ok(CycScalar {
        order: l,
        coeffs: reduce_mod_order(raw, l),
    })
}

/// Smallest `t >= 1` with `a^t = 1`, or `None` when `a` is not a root of
/// unity.  Torsion in `Q(zeta_L)` has order dividing `lcm(2, L)`, so the
/// search stops there.
pub fn multiplicative_order(a: &CycScalar) -> Result<Option<usize>> {
    if a.is_zero() {
        return Err(Error::DivisionByZero(
            "multiplicative order of zero".into(),
        ));
    }
    let bound = a.order().lcm(&2);
    let mut acc = a.clone();
    for t in 1..=bound {
        if acc.is_one() {
            return Ok(Some(t));
        }
        acc = acc.mul(a);
    }
    Ok(None)
}

/// The group `U_d` of `d`-th roots of unity inside `Q(zeta_l)`, ordered as
/// consecutive powers `zeta_d^0, zeta_d^1, ...`; requires `d | l`.
pub fn roots_of_unity_group(d: usize, l: usize) -> Result<Vec<CycScalar>> {
    if d < 1 || l % d != 0 {
        return Err(Error::NotADivisor { d, l });
    }
    let step = (l / d) as i64;
    (0..d as i64)
        .map(|j| root_of_unity(l, step * j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Test-local oracle: exact division of integer polynomials, written
    /// independently of the implementation's division helper.
    fn oracle_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem: Vec<i64> = num.to_vec();
        let dd = den.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] / den[dd];
            quot[k] = c;
            for i in 0..=dd {
                rem[k + i] -= c * den[i];
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "oracle division not exact");
        quot
    }

    #[test]
    fn cyclotomic_polynomials_match_division_oracle() {
        // Phi_6 = (x^6 - 1) / (Phi_1 Phi_2 Phi_3), computed by the oracle.
        let x6m1 = [-1, 0, 0, 0, 0, 0, 1];
        let step1 = oracle_divide(&x6m1, &[-1, 1]); // / (x - 1)
        let step2 = oracle_divide(&step1, &[1, 1]); // / (x + 1)
        let expected = oracle_divide(&step2, &[1, 1, 1]); // / (x^2 + x + 1)
        assert_eq!(expected, vec![1, -1, 1]);
        let phi6: Vec<i64> = cyclotomic_polynomial(6)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(phi6, expected);
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n: usize| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(105).len(), euler_phi(105) + 1);
    }

    #[test]
    fn roots_of_unity_satisfy_their_polynomial() {
        for l in 2..=24 {
            let z = root_of_unity(l, 1).unwrap();
            // Phi_L(zeta_L) = 0
            let phi = cyclotomic_polynomial(l);
            let mut acc = CycScalar::zero(l);
            for (i, c) in phi.iter().enumerate() {
                let term = z
                    .pow(i as i64)
                    .unwrap()
                    .scale(&Rational::from_integer(c.clone()));
                acc = acc.add(&term);
            }
            assert!(acc.is_zero(), "Phi_{l}(zeta_{l}) != 0");
            // zeta_L^L = 1
            assert!(z.pow(l as i64).unwrap().is_one());
        }
    }

    #[test]
    fn primitive_third_root_sums_to_minus_one() {
        let z = root_of_unity(3, 1).unwrap();
        let z2 = root_of_unity(3, 2).unwrap();
        assert_eq!(z.coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(z.add(&z2), CycScalar::from_integer(-1).embed(3).unwrap());
    }

    #[test]
    fn product_of_conjugates() {
        // (1 + zeta_3)(1 + zeta_3^2) = 1
        let one = CycScalar::one(3);
        let a = one.add(&root_of_unity(3, 1).unwrap());
        let b = one.add(&root_of_unity(3, 2).unwrap());
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let one = CycScalar::one(4);
        let i = root_of_unity(4, 1).unwrap();
        let inv = one.add(&i).inv().unwrap();
        assert_eq!(inv.coeffs(), &[rat(1, 2), rat(-1, 2)]);
        assert!(one.add(&i).mul(&inv).is_one());
    }

    #[test]
    fn invert_zero_is_an_error() {
        assert!(CycScalar::zero(6).inv().is_err());
    }

    #[test]
    fn multiplicative_orders() {
        let minus_one = CycScalar::from_integer(-1);
        assert_eq!(multiplicative_order(&minus_one).unwrap(), Some(2));
        let z6 = root_of_unity(6, 1).unwrap();
        assert_eq!(multiplicative_order(&z6).unwrap(), Some(6));
        let two = CycScalar::from_integer(2);
        assert_eq!(multiplicative_order(&two).unwrap(), None);
        assert!(multiplicative_order(&CycScalar::zero(3)).is_err());
    }

    #[test]
    fn roots_group_is_cyclic_and_validated() {
        let u2 = roots_of_unity_group(2, 6).unwrap();
        assert_eq!(u2.len(), 2);
        assert!(u2[0].is_one());
        assert_eq!(u2[1], CycScalar::from_integer(-1));
        assert!(roots_of_unity_group(4, 6).is_err());
    }

    #[test]
    fn cross_order_arithmetic_embeds_into_lcm() {
        // (-1) * zeta_3 = zeta_6^5
        let minus_one = root_of_unity(2, 1).unwrap();
        let z3 = root_of_unity(3, 1).unwrap();
        let prod = minus_one.mul(&z3);
        assert_eq!(prod.order(), 6);
        assert_eq!(prod, root_of_unity(6, 5).unwrap());
        // equality across orders
        assert_eq!(
            CycScalar::one(1),
            root_of_unity(12, 0).unwrap()
        );
    }

    #[test]
    fn embedding_preserves_values() {
        let z4 = root_of_unity(4, 1).unwrap();
        let z12 = root_of_unity(12, 3).unwrap();
        assert_eq!(z4.embed(12).unwrap(), z12);
        assert!(z4.embed(6).is_err());
    }

    #[test]
    fn display_is_readable() {
        let z = root_of_unity(12, 2).unwrap();
        let val = CycScalar::from_rational_in(rat(1, 2), 12).sub(&z);
        assert_eq!(val.to_string(), "1/2 - z12^2");
        assert_eq!(CycScalar::zero(4).to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let z = root_of_unity(6, 1).unwrap();
        let val = z.scale(&rat(-3, 2)).add(&CycScalar::one(6));
        let json = serde_json::to_string(&val).unwrap();
        assert_eq!(json, r#"{"order":6,"coeffs":[["1","1"],["-3","2"]]}"#);
        let back: CycScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, val);
    }
}
