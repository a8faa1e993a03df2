//! Exact arithmetic in the cyclotomic field Q(ζ_ℓ).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(ℓ)−1}, reduced modulo
//! the ℓ-th cyclotomic polynomial Φ_ℓ. That quotient is a field, and the
//! reduced coefficient vector is a canonical form, so equality is plain
//! coefficient comparison.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Integer coefficients of Φ_ℓ, lowest degree first. Memoized per order.
fn cyclotomic_polynomial(order: usize) -> Arc<[i64]> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&order) {
        return p.clone();
    }
    // Φ_ℓ = (x^ℓ − 1) / ∏_{d | ℓ, d < ℓ} Φ_d, by exact division of monic polynomials.
    let mut num = vec![0i64; order + 1];
    num[0] = -1;
    num[order] = 1;
    for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    let poly: Arc<[i64]> = num.into();
    cache.write().unwrap().insert(order, poly.clone());
    poly
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, which is the degree of Φ_ℓ.
pub fn totient(order: usize) -> usize {
    cyclotomic_polynomial(order).len() - 1
}

/// An element of the ℓ-th cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<Rational>,
}

/// The four field operations, for callers that dispatch on an operator value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic { order, coeffs: vec![Rational::zero(); totient(order)] }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: usize, value: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    /// ζ^k for any integer k, with ζ = exp(2πi/ℓ).
    pub fn zeta_pow(order: usize, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, poly)
    }

    pub fn zeta(order: usize) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Reduces an arbitrary polynomial in ζ (lowest degree first) to canonical form.
    pub fn from_poly(order: usize, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    poly[i - deg + j] -= &(&c * Rational::from(pj));
                }
            }
        }
        poly.resize(deg, Rational::zero());
        Cyclotomic { order, coeffs: poly }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Power-basis coefficients, length φ(ℓ).
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, or `None` if the element is outside Q.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Rational::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Floating-point value at ζ = exp(2πi/ℓ). For cross-checks only.
    pub fn eval(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / self.order as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * zeta + c.to_f64();
        }
        acc
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += &(a * b);
            }
        }
        Ok(Self::from_poly(self.order, prod))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn arith(&self, other: &Self, op: FieldOp) -> Result<Self> {
        match op {
            FieldOp::Add => self.try_add(other),
            FieldOp::Sub => self.try_sub(other),
            FieldOp::Mul => self.try_mul(other),
            FieldOp::Div => self.try_div(other),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_ℓ.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.order).iter().map(|&c| Rational::from(c)).collect();
        // Invariant: s_i · self ≡ r_i (mod Φ).
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_ℓ is irreducible.
        let c = r1[0].recip().ok_or(Error::DivisionByZero)?;
        Ok(Self::from_poly(self.order, s1.iter().map(|x| x * &c).collect()))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder; `den` must be trimmed and nonzero.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(num.to_vec());
    let dn = den.len() - 1;
    let lead = den[dn].recip().expect("trimmed divisor");
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] * &lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &(&c * d);
            }
        }
        quot[i] = c;
    }
    rem.truncate(dn);
    (trim(quot), trim(rem))
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})·ζ{}", self.order),
                _ => format!("({c})·ζ{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Serialized as `{"order": ℓ, "coefficients": ["p/q", ...]}`.
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coefficients", &self.coeffs)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct CyclotomicRepr {
    order: usize,
    coefficients: Vec<Rational>,
}

/// Accepts only canonical input: exactly φ(ℓ) coefficients.
impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        if repr.order == 0 {
            return Err(serde::de::Error::custom("cyclotomic order must be positive"));
        }
        let deg = totient(repr.order);
        if repr.coefficients.len() != deg {
            return Err(serde::de::Error::custom(format!(
                "expected {deg} coefficients for order {}, got {}",
                repr.order,
                repr.coefficients.len()
            )));
        }
        Ok(Cyclotomic { order: repr.order, coeffs: repr.coefficients })
    }
}
