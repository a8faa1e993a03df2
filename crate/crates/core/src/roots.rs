//! Real roots of the affine root system of type A_{ℓ−1}^{(1)} on the cyclic
//! quiver with ℓ vertices, and the integral subsystem cut out by a parameter λ.
//!
//! Roots are written in simple-root coordinates `β = Σ b_i ε_i`. Real roots are
//! exactly `ᾱ + kδ` with `ᾱ` a root of the finite A_{ℓ−1} on vertices 1..ℓ−1.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::params::LambdaParam;
use crate::rational::Rational;

/// The framed cyclic quiver with dimension vector `nδ` and one-dimensional
/// co-framing at vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiverShape {
    ell: usize,
    n: usize,
}

impl QuiverShape {
    pub fn new(ell: usize, n: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::EllTooSmall { ell, min: 2 });
        }
        if n < 1 {
            return Err(Error::NTooSmall { n, min: 1 });
        }
        Ok(QuiverShape { ell, n })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension at vertex i.
    pub fn v(&self, _i: usize) -> usize {
        self.n
    }

    /// Co-framing at vertex i.
    pub fn w(&self, i: usize) -> usize {
        usize::from(i == 0)
    }

    /// Sum of `v` over the far ends of the arrows touching vertex `i`. Each
    /// vertex of the cycle meets two arrow ends (for ℓ = 2 both arrows join
    /// the same pair of vertices), so this is `2n` everywhere.
    pub fn neighbor_sum(&self, i: usize) -> usize {
        let prev = (i + self.ell - 1) % self.ell;
        let next = (i + 1) % self.ell;
        self.v(prev) + self.v(next)
    }

    /// Cartan matrix entry of affine A_{ℓ−1}.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 2;
        }
        if self.ell == 2 {
            return -2;
        }
        let d = (i + self.ell - j) % self.ell;
        if d == 1 || d == self.ell - 1 {
            -1
        } else {
            0
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ell {
            return Err(Error::LengthMismatch { expected: self.ell, found: len });
        }
        Ok(())
    }
}

/// An integer vector in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(b: Vec<i64>) -> Self {
        RootVector(b)
    }

    /// The imaginary root δ, all ones.
    pub fn delta(ell: usize) -> Self {
        RootVector(vec![1; ell])
    }

    /// The simple root ε_i.
    pub fn simple(ell: usize, i: usize) -> Self {
        let mut b = vec![0; ell];
        b[i] = 1;
        RootVector(b)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient of ε_0, which is also `(ω_0, β)` and the δ-level of β.
    pub fn b0(&self) -> i64 {
        self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&b| b >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parses comma-separated integers, e.g. `"-1,0,3"`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, ParseError> {
    s.split(',')
        .map(|t| t.trim().replace('\u{2212}', "-").parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| ParseError::IntVector(s.to_string()))
}

impl FromStr for RootVector {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_int_list(s).map(RootVector)
    }
}

/// `bᵀ C b` for the affine Cartan matrix C.
pub fn root_norm(shape: &QuiverShape, b: &RootVector) -> Result<i64> {
    shape.check_len(b.len())?;
    let ell = shape.ell();
    let mut acc = 0i64;
    for i in 0..ell {
        for j in 0..ell {
            acc += b.0[i] * shape.cartan(i, j) * b.0[j];
        }
    }
    Ok(acc)
}

pub fn is_real_root(shape: &QuiverShape, b: &RootVector) -> Result<bool> {
    Ok(root_norm(shape, b)? == 2)
}

/// `⟨λ, β⟩ = Σ_i λ_i b_i`.
pub fn pairing(lambda: &LambdaParam, b: &RootVector) -> Result<Rational> {
    if lambda.ell() != b.len() {
        return Err(Error::LengthMismatch { expected: lambda.ell(), found: b.len() });
    }
    Ok(lambda.values().iter().zip(b.coords()).filter(|(_, &bi)| bi != 0).map(|(li, &bi)| li * Rational::from(bi)).sum())
}

/// `⟨ω_0^∨, β⟩ = b_0`.
pub fn weight0_pairing(b: &RootVector) -> Rational {
    Rational::from(b.b0())
}

/// `Σ_i b_i (λ_i + ½(w_i + Σ_{neighbors} v))`, whose integrality defines membership.
pub fn membership_value(shape: &QuiverShape, lambda: &LambdaParam, b: &RootVector) -> Result<Rational> {
    shape.check_len(lambda.ell())?;
    shape.check_len(b.len())?;
    let half = Rational::half();
    let mut acc = Rational::zero();
    for i in 0..shape.ell() {
        if b.0[i] == 0 {
            continue;
        }
        let shift = Rational::from((shape.w(i) + shape.neighbor_sum(i)) as i64) * &half;
        acc += &((lambda.get(i) + shift) * Rational::from(b.0[i]));
    }
    Ok(acc)
}

/// `⟨λ, β⟩ + b_0/2`; differs from [`membership_value`] by the integer `n Σ b_i`.
pub fn reduced_membership_value(lambda: &LambdaParam, b: &RootVector) -> Result<Rational> {
    Ok(pairing(lambda, b)? + Rational::new(b.b0(), 2)?)
}

/// Whether the real root `b` belongs to the integral subsystem of λ.
pub fn in_integral_subsystem(shape: &QuiverShape, lambda: &LambdaParam, b: &RootVector) -> Result<bool> {
    if !is_real_root(shape, b)? {
        return Err(Error::NotRealRoot(b.to_string()));
    }
    Ok(membership_value(shape, lambda, b)?.is_integer())
}

/// `d′ = denominator(⟨λ, δ⟩ + 1/2)`; membership is invariant under `β ↦ β + d′δ`.
pub fn subsystem_period(lambda: &LambdaParam) -> Result<u64> {
    let g = lambda.total() + Rational::half();
    g.denominator().to_u64().ok_or(Error::Overflow)
}

/// The positive roots of the finite A_{ℓ−1} on vertices 1..ℓ−1, as length-ℓ
/// vectors with `b_0 = 0`: the intervals `ε_i + … + ε_j`, `1 ≤ i ≤ j ≤ ℓ−1`.
pub fn finite_positive_roots(ell: usize) -> Vec<RootVector> {
    let mut out = Vec::new();
    for i in 1..ell {
        for j in i..ell {
            let mut b = vec![0; ell];
            b[i..=j].iter_mut().for_each(|x| *x = 1);
            out.push(RootVector(b));
        }
    }
    out
}

/// All roots of the finite A_{ℓ−1}, positive then negative.
pub fn finite_roots(ell: usize) -> Vec<RootVector> {
    let pos = finite_positive_roots(ell);
    let neg: Vec<_> = pos.iter().map(RootVector::neg).collect();
    pos.into_iter().chain(neg).collect()
}

/// `ᾱ + kδ`.
pub fn affine_root(finite: &RootVector, k: i64) -> RootVector {
    RootVector(finite.0.iter().map(|a| a + k).collect())
}

/// Shape of the integral subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsystemKind {
    Empty,
    Finite,
    Affine,
}

/// Simple roots of the integral subsystem together with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsystemReport {
    pub simple_roots: Vec<RootVector>,
    pub kind: SubsystemKind,
    /// The δ-translation period d′.
    pub period: u64,
    /// All simple roots are positive roots of the ambient system.
    pub positivity_basis: bool,
    /// Width of the δ-level window that was enumerated.
    pub window: u64,
}

impl SubsystemReport {
    /// The minimal imaginary root `d′δ` of the subsystem when it is affine.
    pub fn imaginary_root(&self, ell: usize) -> Option<RootVector> {
        (self.kind == SubsystemKind::Affine).then(|| RootVector::delta(ell).scale(self.period as i64))
    }
}

/// Smallest `k ≥ 0` with `⟨λ, ᾱ + kδ⟩ + k/2` integral (for `b_0(ᾱ) = 0`), if any.
///
/// With `⟨λ,δ⟩ + 1/2 = a/d′` in lowest terms and `⟨λ,ᾱ⟩ = p/q`, a solution
/// exists iff `q | d′`, and then `k ≡ −p (d′/q) a⁻¹ (mod d′)`.
fn level_residue(lambda: &LambdaParam, finite: &RootVector) -> Result<Option<u64>> {
    let g = lambda.total() + Rational::half();
    let a = g.numer().mod_floor(g.denominator());
    let d = g.denominator().clone();
    let f = pairing(lambda, finite)?;
    let (p, q) = (f.numer().clone(), f.denominator().clone());
    if !(&d % &q).is_zero() {
        return Ok(None);
    }
    let scaled = (-p * (&d / &q)).mod_floor(&d);
    let k = if d == BigInt::from(1) {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&a, &d).ok_or(Error::Overflow)?;
        (scaled * inv).mod_floor(&d)
    };
    k.to_u64().map(Some).ok_or(Error::Overflow)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    (e.gcd == BigInt::from(1)).then(|| e.x.mod_floor(m))
}

/// Positive real roots of the integral subsystem with δ-level `b_0 < window`.
///
/// Ordered by level, then lexicographically.
pub fn positive_members(shape: &QuiverShape, lambda: &LambdaParam, window: u64) -> Result<Vec<RootVector>> {
    shape.check_len(lambda.ell())?;
    let period = subsystem_period(lambda)?;
    let mut out = Vec::new();
    for fin in finite_roots(shape.ell()) {
        let Some(r) = level_residue(lambda, &fin)? else { continue };
        let negative = fin.coords().iter().any(|&b| b < 0);
        let mut k = r;
        if negative && k == 0 {
            k = period;
        }
        while k < window {
            out.push(affine_root(&fin, k as i64));
            k += period;
        }
    }
    out.sort_by(|a, b| (a.b0(), a).cmp(&(b.b0(), b)));
    debug_assert!(out.iter().all(|b| reduced_membership_value(lambda, b).unwrap().is_integer()));
    Ok(out)
}

/// Simple roots of the integral subsystem, enumerated over the default window `2d′`.
pub fn simple_roots_of_subsystem(shape: &QuiverShape, lambda: &LambdaParam) -> Result<SubsystemReport> {
    let window = subsystem_period(lambda)?.checked_mul(2).ok_or(Error::Overflow)?;
    simple_roots_with_window(shape, lambda, window)
}

/// Simple roots computed from the members with δ-level below `window`.
///
/// A positive member is simple when it is not the sum of two positive roots of
/// the subsystem; the imaginary roots `j d′δ` count as positive roots here.
/// Every summand of a positive root has smaller level, so the answer is exact
/// for any window larger than the level of every simple root (at most d′).
pub fn simple_roots_with_window(shape: &QuiverShape, lambda: &LambdaParam, window: u64) -> Result<SubsystemReport> {
    let period = subsystem_period(lambda)?;
    let ell = shape.ell();
    let real = positive_members(shape, lambda, window)?;
    if real.is_empty() {
        return Ok(SubsystemReport {
            simple_roots: Vec::new(),
            kind: SubsystemKind::Empty,
            period,
            positivity_basis: true,
            window,
        });
    }
    let mut positives: HashSet<RootVector> = real.iter().cloned().collect();
    let delta = RootVector::delta(ell);
    let mut j = period;
    while j < window {
        positives.insert(delta.scale(j as i64));
        j += period;
    }
    let simple_roots: Vec<RootVector> = real
        .iter()
        .filter(|beta| {
            !positives.iter().any(|gamma| {
                let rest = beta.sub(gamma);
                rest.is_positive() && positives.contains(&rest)
            })
        })
        .cloned()
        .collect();
    let positivity_basis = simple_roots.iter().all(RootVector::is_positive);
    let target = delta.scale(period as i64);
    let bound = (ell as u64).saturating_mul(period);
    let kind = if nonneg_combination(&simple_roots, &target, bound).is_some() {
        SubsystemKind::Affine
    } else {
        SubsystemKind::Finite
    };
    Ok(SubsystemReport { simple_roots, kind, period, positivity_basis, window })
}

/// Nonnegative integer coefficients `c` with `Σ c_i roots_i = target` and every
/// `c_i ≤ bound`, if such exist. All roots must have nonnegative coordinates.
///
/// Solves the linear system exactly, then enumerates the free coefficients.
pub fn nonneg_combination(roots: &[RootVector], target: &RootVector, bound: u64) -> Option<Vec<u64>> {
    let rows = target.len();
    let cols = roots.len();
    if cols == 0 {
        return target.is_zero().then(Vec::new);
    }
    // Augmented matrix [A | t] with the roots as columns, reduced to RREF.
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = roots.iter().map(|r| Rational::from(r.coords()[i])).collect();
            row.push(Rational::from(target.coords()[i]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip().unwrap();
        m[r].iter_mut().for_each(|x| *x = &*x * &inv);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    // c_i · roots_i ≤ target coordinatewise bounds each coefficient.
    let caps: Vec<u64> = free
        .iter()
        .map(|&c| {
            roots[c]
                .coords()
                .iter()
                .zip(target.coords())
                .filter(|(&b, _)| b > 0)
                .map(|(&b, &t)| (t.max(0) / b) as u64)
                .min()
                .unwrap_or(bound)
                .min(bound)
        })
        .collect();
    let mut values = vec![0u64; free.len()];
    loop {
        let mut sol = vec![0u64; cols];
        for (&c, &v) in free.iter().zip(&values) {
            sol[c] = v;
        }
        let ok = pivots.iter().enumerate().all(|(row, &pc)| {
            let mut x = m[row][cols].clone();
            for (&c, &v) in free.iter().zip(&values) {
                if v != 0 {
                    x -= &(&m[row][c] * Rational::from(v as i64));
                }
            }
            match x.to_integer().and_then(|z| z.to_u64()) {
                Some(z) if z <= bound => {
                    sol[pc] = z;
                    true
                }
                _ => false,
            }
        });
        if ok {
            return Some(sol);
        }
        // Odometer over the free coefficients.
        let mut i = 0;
        loop {
            if i == values.len() {
                return None;
            }
            if values[i] < caps[i] {
                values[i] += 1;
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rv(b: &[i64]) -> RootVector {
        RootVector::new(b.to_vec())
    }

    fn lam(v: &[Rational]) -> LambdaParam {
        LambdaParam::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shape_data() {
        let s = QuiverShape::new(4, 3).unwrap();
        assert!((0..4).all(|i| s.neighbor_sum(i) == 6 && s.v(i) == 3));
        assert_eq!((0..4).map(|i| s.w(i)).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        assert!(QuiverShape::new(1, 3).is_err());
        assert!(QuiverShape::new(3, 0).is_err());
        assert_eq!(QuiverShape::new(2, 1).unwrap().neighbor_sum(0), 2);
    }

    #[test]
    fn norms() {
        let s3 = QuiverShape::new(3, 1).unwrap();
        let s2 = QuiverShape::new(2, 1).unwrap();
        assert_eq!(root_norm(&s3, &rv(&[1, 1, 1])).unwrap(), 0);
        assert_eq!(root_norm(&s3, &rv(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(root_norm(&s2, &rv(&[1, 0])).unwrap(), 2);
        assert!(is_real_root(&s3, &rv(&[2, 1, 1])).unwrap());
        assert!(!is_real_root(&s3, &rv(&[1, 1, 1])).unwrap());
        assert!(is_real_root(&s2, &rv(&[3, 2])).unwrap());
        assert!(matches!(root_norm(&s3, &rv(&[1, 0])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn pairings() {
        assert_eq!(pairing(&lam(&[q(1, 2), q(0, 1)]), &rv(&[1, 0])).unwrap(), q(1, 2));
        assert_eq!(pairing(&lam(&[q(1, 2), q(1, 2), q(1, 3)]), &rv(&[3, 4, 3])).unwrap(), q(9, 2));
        assert!(pairing(&lam(&[q(7, 3), q(-5, 2)]), &rv(&[0, 0])).unwrap().is_zero());
        assert!(pairing(&lam(&[q(7, 3), q(-5, 2)]), &rv(&[0, 0, 1])).is_err());
        assert_eq!(weight0_pairing(&rv(&[3, 4, 3])), q(3, 1));
        assert_eq!(weight0_pairing(&RootVector::delta(5)), q(1, 1));
        assert_eq!(weight0_pairing(&rv(&[0, 1, 0])), q(0, 1));
    }

    #[test]
    fn membership() {
        let s2 = QuiverShape::new(2, 3).unwrap();
        let l = lam(&[q(1, 2), q(0, 1)]);
        assert!(in_integral_subsystem(&s2, &l, &rv(&[1, 0])).unwrap());
        assert!(in_integral_subsystem(&s2, &l, &rv(&[0, 1])).unwrap());
        assert!(!in_integral_subsystem(&s2, &lam(&[q(1, 4), q(1, 4)]), &rv(&[1, 0])).unwrap());
        assert!(matches!(in_integral_subsystem(&s2, &l, &rv(&[1, 1])), Err(Error::NotRealRoot(_))));
    }

    #[test]
    fn periods() {
        assert_eq!(subsystem_period(&lam(&[q(1, 2), q(0, 1)])).unwrap(), 1);
        assert_eq!(subsystem_period(&lam(&[q(1, 2), q(1, 2), q(1, 3)])).unwrap(), 6);
        assert_eq!(subsystem_period(&lam(&[q(0, 1), q(0, 1)])).unwrap(), 2);
    }

    #[test]
    fn subsystem_examples() {
        let s2 = QuiverShape::new(2, 3).unwrap();
        let r = simple_roots_of_subsystem(&s2, &lam(&[q(1, 2), q(0, 1)])).unwrap();
        assert_eq!(r.simple_roots, vec![rv(&[0, 1]), rv(&[1, 0])]);
        assert_eq!(r.kind, SubsystemKind::Affine);
        assert_eq!(r.period, 1);

        let r = simple_roots_of_subsystem(&s2, &lam(&[q(1, 4), q(1, 4)])).unwrap();
        assert_eq!(r.kind, SubsystemKind::Empty);
        assert!(r.simple_roots.is_empty());

        let s3 = QuiverShape::new(3, 2).unwrap();
        let r = simple_roots_of_subsystem(&s3, &lam(&[q(1, 2), q(1, 2), q(1, 3)])).unwrap();
        assert_eq!(r.simple_roots, vec![rv(&[1, 0, 0]), rv(&[2, 2, 3]), rv(&[3, 4, 3])]);
        assert_eq!(r.kind, SubsystemKind::Affine);
        assert_eq!(r.period, 6);
        assert!(r.positivity_basis);
    }

    #[test]
    fn combinations() {
        let roots = [rv(&[1, 0, 0]), rv(&[3, 4, 3]), rv(&[2, 2, 3])];
        assert_eq!(nonneg_combination(&roots, &rv(&[6, 6, 6]), 18), Some(vec![1, 1, 1]));
        assert_eq!(nonneg_combination(&roots, &rv(&[3, 2, 3]), 18), Some(vec![1, 0, 1]));
        assert_eq!(nonneg_combination(&roots, &rv(&[1, 1, 1]), 18), None);
        // Dependent family: two A1 components sharing δ.
        let dep = [rv(&[1, 0, 1, 0]), rv(&[0, 1, 0, 1]), rv(&[1, 1, 0, 0]), rv(&[0, 0, 1, 1])];
        let c = nonneg_combination(&dep, &rv(&[1, 1, 1, 1]), 8).unwrap();
        let sum = dep.iter().zip(&c).fold(rv(&[0, 0, 0, 0]), |acc, (r, &k)| acc.add(&r.scale(k as i64)));
        assert_eq!(sum, rv(&[1, 1, 1, 1]));
    }

    #[test]
    fn text_form() {
        assert_eq!("3,4,-3".parse::<RootVector>().unwrap(), rv(&[3, 4, -3]));
        assert_eq!(rv(&[3, 4, -3]).to_string(), "3,4,-3");
        assert!("3,,4".parse::<RootVector>().is_err());
    }
}
