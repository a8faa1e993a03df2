//! Coordinate systems for a Cherednik parameter of G(ℓ,1,n).
//!
//! A parameter is given either as `(κ, c_1, …, c_{ℓ−1})`, one value per
//! conjugacy class of reflections, or as a quiver parameter
//! `λ = (λ_0, …, λ_{ℓ−1})`. The hyperplane coordinates `h_{H,i}` are a third,
//! dual description. The integral lattice of parameter shifts is `Z^ℓ` in
//! λ-coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, ParseError, Result};
use crate::rational::Rational;

/// Parameter in reflection-class coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CherednikParam {
    pub ell: usize,
    /// Value on the reflections of the symmetric-group part; unused when `n = 1`.
    pub kappa: Rational,
    /// `c_1, …, c_{ℓ−1}`, indexed by the nontrivial elements of Z/ℓ.
    pub c: Vec<Rational>,
}

impl CherednikParam {
    pub fn new(ell: usize, kappa: Rational, c: Vec<Rational>) -> Result<Self> {
        if ell < 1 {
            return Err(Error::EllTooSmall { ell, min: 1 });
        }
        if c.len() != ell - 1 {
            return Err(Error::LengthMismatch { expected: ell - 1, found: c.len() });
        }
        Ok(CherednikParam { ell, kappa, c })
    }
}

/// Parameter in quiver coordinates, one rational per vertex of the cyclic quiver.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct LambdaParam {
    values: Vec<Rational>,
}

impl LambdaParam {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::EllTooSmall { ell: values.len(), min: 2 });
        }
        Ok(LambdaParam { values })
    }

    pub fn ell(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// `⟨λ, δ⟩ = Σ_i λ_i`.
    pub fn total(&self) -> Rational {
        self.values.iter().cloned().sum()
    }
}

impl TryFrom<Vec<Rational>> for LambdaParam {
    type Error = Error;
    fn try_from(values: Vec<Rational>) -> Result<Self> {
        LambdaParam::new(values)
    }
}

impl From<LambdaParam> for Vec<Rational> {
    fn from(l: LambdaParam) -> Self {
        l.values
    }
}

impl fmt::Display for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaParam{self}")
    }
}

/// Parses a comma-separated list of rationals, e.g. `"1/2,-1/4"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

impl FromStr for LambdaParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LambdaParam::new(parse_rational_list(s)?)
    }
}

/// Which exponent to use in the (κ, c) → λ formula.
///
/// `Standard` uses `ζ^{jk}` in the k-th coordinate, making the map a
/// bijection. `AsPrinted` uses the k-independent `ζ^j` of the published
/// displayed formula, under which every λ_k with k ≠ 0 coincides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    AsPrinted,
}

/// Result of converting (κ, c) to λ-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaOutcome {
    Rational(LambdaParam),
    /// Some λ_k lies outside Q; the exact cyclotomic values are kept.
    NonRational(Vec<Cyclotomic>),
}

impl LambdaOutcome {
    pub fn rational(self) -> Result<LambdaParam> {
        match self {
            LambdaOutcome::Rational(l) => Ok(l),
            LambdaOutcome::NonRational(_) => Err(Error::NonRational),
        }
    }
}

/// Exact λ-coordinates in Q(ζ_ℓ) of a (κ, c) parameter.
pub fn cherednik_to_lambda_exact(p: &CherednikParam, conv: Convention) -> Result<Vec<Cyclotomic>> {
    let ell = p.ell;
    if ell < 2 {
        return Err(Error::EllTooSmall { ell, min: 2 });
    }
    let inv_ell = Rational::new(1, ell as i64)?;
    let two = Rational::from(2);
    let c_sum: Rational = p.c.iter().cloned().sum();
    let mut out = Vec::with_capacity(ell);
    let lambda0 = &inv_ell * (Rational::one() + &two * &c_sum) + &p.kappa - Rational::half();
    out.push(Cyclotomic::from_rational(ell, lambda0));
    for k in 1..ell {
        // 1 + 2 Σ_j c_j ζ^{jk}
        let mut acc = Cyclotomic::one(ell);
        for (idx, cj) in p.c.iter().enumerate() {
            let j = (idx + 1) as i64;
            let exponent = match conv {
                Convention::Standard => j * k as i64,
                Convention::AsPrinted => j,
            };
            acc = acc.try_add(&Cyclotomic::zeta_pow(ell, exponent).scale(&(&two * cj)))?;
        }
        out.push(acc.scale(&inv_ell));
    }
    Ok(out)
}

pub fn cherednik_to_lambda(p: &CherednikParam, conv: Convention) -> Result<LambdaOutcome> {
    let exact = cherednik_to_lambda_exact(p, conv)?;
    let rational: Option<Vec<Rational>> = exact.iter().map(Cyclotomic::to_rational).collect();
    Ok(match rational {
        Some(values) => LambdaOutcome::Rational(LambdaParam::new(values)?),
        None => LambdaOutcome::NonRational(exact),
    })
}

/// Inverse of the standard-convention map: returns κ and the exact `c_j`.
///
/// With `μ_k = (ℓλ_k − 1)/2` for k ≠ 0 and `μ_0 = (ℓ(λ_0 − κ + 1/2) − 1)/2`,
/// one has `μ_k = Σ_j c_j ζ^{jk}`, so `c_j = (1/ℓ) Σ_k μ_k ζ^{−jk}`.
pub fn lambda_to_cherednik_exact(lam: &LambdaParam) -> Result<(Rational, Vec<Cyclotomic>)> {
    let ell = lam.ell();
    let kappa = kappa_of_lambda(lam);
    let ell_q = Rational::from(ell as i64);
    let half = Rational::half();
    let mu: Vec<Rational> = lam
        .values()
        .iter()
        .enumerate()
        .map(|(k, lk)| {
            let base = if k == 0 { lk - &kappa + &half } else { lk.clone() };
            (&ell_q * base - Rational::one()) * &half
        })
        .collect();
    let inv_ell = Rational::new(1, ell as i64)?;
    let mut cs = Vec::with_capacity(ell - 1);
    for j in 1..ell as i64 {
        let mut acc = Cyclotomic::zero(ell);
        for (k, mk) in mu.iter().enumerate() {
            acc = acc.try_add(&Cyclotomic::zeta_pow(ell, -j * k as i64).scale(mk))?;
        }
        cs.push(acc.scale(&inv_ell));
    }
    Ok((kappa, cs))
}

/// Inverse of [`cherednik_to_lambda`] under the standard convention.
///
/// Fails with [`Error::NonRational`] when some `c_j` is not rational, which
/// happens for generic λ once ℓ ≥ 3.
pub fn lambda_to_cherednik(lam: &LambdaParam) -> Result<CherednikParam> {
    let (kappa, cs) = lambda_to_cherednik_exact(lam)?;
    let c = cs.iter().map(Cyclotomic::to_rational).collect::<Option<Vec<_>>>().ok_or(Error::NonRational)?;
    CherednikParam::new(lam.ell(), kappa, c)
}

/// `κ = ⟨λ, δ⟩ − 1/2`.
pub fn kappa_of_lambda(lam: &LambdaParam) -> Rational {
    lam.total() - Rational::half()
}

/// `λ + m` for an integer vector `m`.
pub fn lattice_shift(lam: &LambdaParam, m: &[i64]) -> Result<LambdaParam> {
    if m.len() != lam.ell() {
        return Err(Error::LengthMismatch { expected: lam.ell(), found: m.len() });
    }
    let values = lam.values().iter().zip(m).map(|(v, &mi)| v + Rational::from(mi)).collect();
    LambdaParam::new(values)
}

/// True iff `a − b ∈ Z^ℓ`.
pub fn same_coset(a: &LambdaParam, b: &LambdaParam) -> bool {
    a.ell() == b.ell() && a.values().iter().zip(b.values()).all(|(x, y)| (x - y).is_integer())
}

/// One conjugacy class of reflection hyperplanes with its `h_{H,i}` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneClass {
    pub name: String,
    /// Order of the pointwise stabilizer `W_H`.
    pub ell_h: usize,
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCoordinates {
    pub classes: Vec<HyperplaneClass>,
}

impl HCoordinates {
    pub fn class(&self, name: &str) -> Option<&HyperplaneClass> {
        self.classes.iter().find(|c| c.name == name)
    }
}

pub const SYMMETRIC_CLASS: &str = "symmetric";
pub const COORDINATE_CLASS: &str = "coordinate";

/// `h_{H,i}(c) = (1/ℓ_H) Σ_{s ∈ W_H∖1} 2c_s/(λ_s − 1) · λ_s^{−i}`, where λ_s is the
/// nontrivial eigenvalue of s. Values live in Q(ζ_ℓ).
///
/// The symmetric-group class exists only for `n ≥ 2`, the coordinate class only
/// for `ℓ ≥ 2`.
pub fn h_coordinates(p: &CherednikParam, n: usize) -> Result<HCoordinates> {
    let c: Vec<Cyclotomic> = p.c.iter().map(|cj| Cyclotomic::from_rational(p.ell, cj.clone())).collect();
    h_coordinates_exact(p.ell, &p.kappa, &c, n)
}

/// [`h_coordinates`] for class values `c_j` anywhere in Q(ζ_ℓ).
pub fn h_coordinates_exact(ell: usize, kappa: &Rational, c: &[Cyclotomic], n: usize) -> Result<HCoordinates> {
    if ell < 1 {
        return Err(Error::EllTooSmall { ell, min: 1 });
    }
    if c.len() != ell - 1 {
        return Err(Error::LengthMismatch { expected: ell - 1, found: c.len() });
    }
    let two = Rational::from(2);
    let class = |name: &str, ell_h: usize, terms: Vec<(Cyclotomic, Cyclotomic)>| -> Result<HyperplaneClass> {
        let inv = Rational::new(1, ell_h as i64)?;
        // 2c_s/(λ_s − 1), then multiplied by λ_s^{−i} for i = 0, 1, ….
        let mut scaled = Vec::with_capacity(terms.len());
        for (eig, cs) in &terms {
            let coeff = cs.scale(&two).try_div(&eig.try_sub(&Cyclotomic::one(ell))?)?;
            scaled.push((eig.inverse()?, coeff));
        }
        let mut values = Vec::with_capacity(ell_h);
        for _ in 0..ell_h {
            let mut acc = Cyclotomic::zero(ell);
            for (_, coeff) in &scaled {
                acc = acc.try_add(coeff)?;
            }
            values.push(acc.scale(&inv));
            for (eig_inv, coeff) in scaled.iter_mut() {
                *coeff = coeff.try_mul(eig_inv)?;
            }
        }
        Ok(HyperplaneClass { name: name.to_string(), ell_h, values })
    };

    let mut classes = Vec::new();
    if n >= 2 {
        let minus_one = Cyclotomic::from_rational(ell, Rational::from(-1));
        classes.push(class(SYMMETRIC_CLASS, 2, vec![(minus_one, Cyclotomic::from_rational(ell, kappa.clone()))])?);
    }
    if ell >= 2 {
        let terms =
            c.iter().enumerate().map(|(idx, cj)| (Cyclotomic::zeta_pow(ell, idx as i64 + 1), cj.clone())).collect();
        classes.push(class(COORDINATE_CLASS, ell, terms)?);
    }
    Ok(HCoordinates { classes })
}
