//! Decision procedures for total asphericity.
//!
//! Two criteria live here: the exact criterion for the symmetric group
//! `S_n`, and a sufficient condition for `G(ℓ,1,n)` phrased in λ-coordinates.
//! A `Certified` verdict is a guarantee; `NotCertified` only says that the
//! sufficient condition failed.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{kappa_of_lambda, LambdaParam};
use crate::rational::Rational;
use crate::roots::{pairing, simple_roots_with_window, subsystem_period, QuiverShape, RootVector, SubsystemReport};

/// Why a κ-type value passes the symmetric-group test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaReason {
    InOpenInterval,
    Integer,
    DenominatorExceedsN,
}

/// Shared test: `x ∈ (−1, 0)`, or `x ∈ Z`, or `denominator(x) > n`.
///
/// Returns the first clause that fires, in that order.
pub fn kappa_clause(x: &Rational, n: usize) -> Option<KappaReason> {
    if x.in_open_interval(&Rational::from(-1), &Rational::zero()) {
        Some(KappaReason::InOpenInterval)
    } else if x.is_integer() {
        Some(KappaReason::Integer)
    } else if *x.denominator() > BigInt::from(n) {
        Some(KappaReason::DenominatorExceedsN)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAVerdict {
    pub c: Rational,
    pub n: usize,
    pub totally_aspherical: bool,
    pub reason: Option<KappaReason>,
}

/// Total asphericity of `c` for `H_c(S_n)`.
///
/// `H_c(S_m)` has finite-dimensional modules exactly when `c` has denominator
/// `m`, and they are killed by the idempotent exactly when `c ∈ (−1, 0)`; the
/// parabolic subgroups of `S_n` are products of `S_m` with `m ≤ n`.
pub fn is_totally_aspherical_type_a(c: &Rational, n: usize) -> Result<TypeAVerdict> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let reason = kappa_clause(c, n);
    Ok(TypeAVerdict { c: c.clone(), n, totally_aspherical: reason.is_some(), reason })
}

/// A parabolic subgroup `G(ℓ,1,n_0) × S_{n_1} × … × S_{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SliceDescriptor {
    pub n0: usize,
    /// Sizes `n_i ≥ 2` of the symmetric factors, nonincreasing.
    pub parts: Vec<usize>,
}

impl SliceDescriptor {
    pub fn render(&self, ell: usize) -> String {
        let mut factors = Vec::new();
        if ell >= 2 && self.n0 > 0 {
            factors.push(format!("G({ell},1,{})", self.n0));
        }
        factors.extend(self.parts.iter().map(|p| format!("S_{p}")));
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" x ")
        }
    }
}

fn partitions_min2(total: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (2..=max_part.min(total)).rev() {
        prefix.push(p);
        partitions_min2(total - p, p, prefix, out);
        prefix.pop();
    }
}

/// Conjugacy classes of parabolic subgroups of `G(ℓ,1,n)`.
///
/// Ordered by `n_0` descending, then by the size of the symmetric part, then by
/// the parts in reverse lexicographic order. For `ℓ = 1` the group is
/// `S_n` and `n_0` is always 0.
pub fn parabolic_slices(ell: usize, n: usize) -> Vec<SliceDescriptor> {
    let n0_max = if ell >= 2 { n } else { 0 };
    let mut out = Vec::new();
    for n0 in (0..=n0_max).rev() {
        for rest in 0..=(n - n0) {
            let mut parts = Vec::new();
            partitions_min2(rest, rest, &mut Vec::new(), &mut parts);
            out.extend(parts.into_iter().map(|parts| SliceDescriptor { n0, parts }));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::NotCertified => "not_certified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleRootCheck {
    pub root: RootVector,
    /// `⟨λ, α⟩`
    pub pairing: Rational,
    /// `b_0(α)/2`
    pub bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootCondition {
    pub holds: bool,
    pub checked_simple_roots: Vec<SimpleRootCheck>,
    /// The simple root with the largest excess `|⟨λ,α⟩| − b_0/2`, if any fails.
    pub violator: Option<RootVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KappaCondition {
    /// `⟨λ, δ⟩ − 1/2`
    pub kappa: Rational,
    pub holds: bool,
    pub reason: Option<KappaReason>,
}

/// Outcome of the sufficient-condition check for one λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub ell: usize,
    pub n: usize,
    pub lambda: LambdaParam,
    pub verdict: Verdict,
    /// True only for `Certified`; a failed check proves nothing.
    pub guarantees_total_asphericity: bool,
    pub condition1: RootCondition,
    pub condition2: KappaCondition,
    pub subsystem: SubsystemReport,
    pub parabolic_slices: Vec<SliceDescriptor>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Checks the root condition on the reported simple roots.
pub fn check_simple_roots(lambda: &LambdaParam, subsystem: &SubsystemReport) -> Result<RootCondition> {
    let mut checks = Vec::with_capacity(subsystem.simple_roots.len());
    let mut worst: Option<(Rational, RootVector)> = None;
    for root in &subsystem.simple_roots {
        let p = pairing(lambda, root)?;
        let bound = Rational::new(root.b0().abs(), 2)?;
        let excess = p.abs() - &bound;
        let holds = !(excess > Rational::zero());
        if !holds && worst.as_ref().is_none_or(|(w, _)| excess > *w) {
            worst = Some((excess, root.clone()));
        }
        checks.push(SimpleRootCheck { root: root.clone(), pairing: p, bound, holds });
    }
    Ok(RootCondition { holds: worst.is_none(), checked_simple_roots: checks, violator: worst.map(|(_, r)| r) })
}

/// Runs the sufficient condition for total asphericity of the `G(ℓ,1,n)`
/// parameter with λ-coordinates `lambda`.
///
/// The root condition `|⟨λ,β⟩| ≤ |b_0|/2` is checked on the simple roots of
/// the integral subsystem, which suffices because both sides are additive on
/// positive roots. The κ condition asks `⟨λ,δ⟩ − 1/2` to be in `(−1,0)`, an
/// integer, or of denominator above `n`.
pub fn certify(lambda: &LambdaParam, n: usize) -> Result<Certificate> {
    let window = subsystem_period(lambda)?.checked_mul(2).ok_or(Error::Overflow)?;
    certify_with_window(lambda, n, window)
}

/// [`certify`] with an explicit δ-level enumeration window.
pub fn certify_with_window(lambda: &LambdaParam, n: usize, window: u64) -> Result<Certificate> {
    let shape = QuiverShape::new(lambda.ell(), n)?;
    let subsystem = simple_roots_with_window(&shape, lambda, window)?;
    let condition1 = check_simple_roots(lambda, &subsystem)?;
    let kappa = kappa_of_lambda(lambda);
    let reason = kappa_clause(&kappa, n);
    let condition2 = KappaCondition { kappa, holds: reason.is_some(), reason };
    let verdict = if condition1.holds && condition2.holds { Verdict::Certified } else { Verdict::NotCertified };
    Ok(Certificate {
        ell: lambda.ell(),
        n,
        lambda: lambda.clone(),
        verdict,
        guarantees_total_asphericity: verdict == Verdict::Certified,
        condition1,
        condition2,
        subsystem,
        parabolic_slices: parabolic_slices(lambda.ell(), n),
    })
}
