//! Integral shifts into the certified locus.
//!
//! Every coset `λ + Z^ℓ` contains a parameter passing [`certify`]. Writing
//! `β_1, …, β_k` for the simple roots of the integral subsystem (which depends
//! only on the coset), it suffices to find `λ′ = λ + m` with
//!
//! ```text
//! 0 ≤ ⟨λ′, β_i⟩ + b_0(β_i)/2 ≤ b_0(β_i)    for every i,
//! ```
//!
//! where the middle quantity is an integer `t_i`. Shifting by `m` moves it by
//! `⟨m, β_i⟩`, so this is a bounded integer feasibility problem in `m`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::asphericity::{certify, Certificate};
use crate::error::{Error, Result};
use crate::lattice::{box_solutions, echelon_basis, lex_first_in_box, mat_vec, solve_integer_system};
use crate::params::{kappa_of_lambda, lattice_shift, LambdaParam};
use crate::roots::{reduced_membership_value, RootVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftStrategy {
    /// λ already passes; `m = 0`.
    AlreadyCertified,
    /// Empty subsystem; only `λ_0` moves so that κ lands in `[−1, 0)`.
    KappaTranslate,
    /// Box search over the simple-root values.
    BoxSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub lambda: LambdaParam,
    pub lambda_prime: LambdaParam,
    pub m: Vec<i64>,
    /// `t_i = ⟨λ′, β_i⟩ + b_0(β_i)/2` for each simple root, in report order.
    pub targets: Vec<i64>,
    pub strategy: ShiftStrategy,
    pub certificate: Certificate,
}

/// Integer values `⟨λ, β_i⟩ + b_0(β_i)/2` on the simple roots.
fn current_targets(lambda: &LambdaParam, roots: &[RootVector]) -> Result<Vec<i64>> {
    roots
        .iter()
        .map(|r| {
            let v = reduced_membership_value(lambda, r)?;
            v.to_integer()
                .and_then(|z| z.to_i64())
                .ok_or_else(|| Error::GuaranteeViolated(format!("simple root {r} has non-integral value {v}")))
        })
        .collect()
}

/// The lexicographically first target vector in `∏ [0, b_0(β_i)]` that is
/// reachable from `t_cur` by an integer shift, with one shift reaching it.
///
/// Equivalent to trying targets in lexicographic order and solving `B·m = t − t_cur`
/// for each; the search walks an echelon basis of `B·Z^ℓ` instead.
pub fn lex_first_target(b: &[Vec<i64>], t_cur: &[i64], ell: usize) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let hi: Vec<i64> = b.iter().map(|row| row[0]).collect();
    let lo = vec![0; b.len()];
    let columns: Vec<Vec<i64>> = (0..ell).map(|j| b.iter().map(|row| row[j]).collect()).collect();
    let basis = echelon_basis(&columns)?;
    let Some(t) = lex_first_in_box(t_cur, &basis, &lo, &hi)? else { return Ok(None) };
    let rhs: Vec<i64> = t.iter().zip(t_cur).map(|(a, c)| a - c).collect();
    let sol = solve_integer_system(b, &rhs, ell)?
        .ok_or_else(|| Error::GuaranteeViolated(format!("target {t:?} reachable in the lattice but not solvable")))?;
    Ok(Some((t, sol.particular)))
}

/// Finds an integer `m` with `certify(λ + m, n)` certified.
///
/// Tie-breaking: `λ` is first moved to its representative in `[0, 1)^ℓ`; from
/// there the shift of smallest max-norm is taken, ties going to the
/// lexicographically smallest target vector and then the smallest `m`.
pub fn find_aspherical_shift(lambda: &LambdaParam, n: usize) -> Result<ShiftResult> {
    let ell = lambda.ell();
    let initial = certify(lambda, n)?;
    if initial.is_certified() {
        let targets = current_targets(lambda, &initial.subsystem.simple_roots)?;
        return Ok(ShiftResult {
            lambda: lambda.clone(),
            lambda_prime: lambda.clone(),
            m: vec![0; ell],
            targets,
            strategy: ShiftStrategy::AlreadyCertified,
            certificate: initial,
        });
    }

    let roots = initial.subsystem.simple_roots.clone();
    let (m, strategy) = if roots.is_empty() {
        // κ is not an integer here (else it would pass); move it into (−1, 0).
        let kappa = kappa_of_lambda(lambda);
        let shift = -(kappa.floor() + num_bigint::BigInt::from(1));
        let mut m = vec![0; ell];
        m[0] = shift.to_i64().ok_or(Error::Overflow)?;
        (m, ShiftStrategy::KappaTranslate)
    } else {
        (box_search(lambda, &roots)?, ShiftStrategy::BoxSearch)
    };

    let lambda_prime = lattice_shift(lambda, &m)?;
    let certificate = certify(&lambda_prime, n)?;
    if certificate.subsystem.simple_roots != roots {
        return Err(Error::GuaranteeViolated("integral subsystem changed under an integer shift".into()));
    }
    if !certificate.is_certified() {
        return Err(Error::GuaranteeViolated(format!("shifted parameter {lambda_prime} is not certified")));
    }
    let targets = current_targets(&lambda_prime, &roots)?;
    if targets.iter().zip(&roots).any(|(&t, r)| !(0..=r.b0()).contains(&t)) {
        return Err(Error::GuaranteeViolated(format!("targets {targets:?} outside the box")));
    }
    Ok(ShiftResult { lambda: lambda.clone(), lambda_prime, m, targets, strategy, certificate })
}

fn box_search(lambda: &LambdaParam, roots: &[RootVector]) -> Result<Vec<i64>> {
    let ell = lambda.ell();
    let b: Vec<Vec<i64>> = roots.iter().map(|r| r.coords().to_vec()).collect();
    let hi: Vec<i64> = roots.iter().map(RootVector::b0).collect();
    let lo = vec![0; roots.len()];

    // Existence witness, which also bounds the refined search below.
    let t_cur = current_targets(lambda, roots)?;
    let Some((_, witness)) = lex_first_target(&b, &t_cur, ell)? else {
        return Err(Error::GuaranteeViolated(format!("no feasible target in the box for {lambda}")));
    };

    let floor_shift: Vec<i64> =
        lambda.values().iter().map(|v| (-v.floor()).to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
    let base = lattice_shift(lambda, &floor_shift)?;
    let base_targets = current_targets(&base, roots)?;
    let from_base: Vec<i64> = witness.iter().zip(&floor_shift).map(|(w, f)| w - f).collect();
    let max_radius = from_base.iter().map(|x| x.abs()).max().unwrap_or(0);

    for radius in 0..=max_radius {
        let sols = box_solutions(&b, &base_targets, &lo, &hi, radius);
        let best = sols
            .into_iter()
            .filter(|m| m.iter().map(|x| x.abs()).max().unwrap_or(0) == radius)
            .map(|m| {
                let t: Vec<i64> = mat_vec(&b, &m).iter().zip(&base_targets).map(|(a, c)| a + c).collect();
                (t, m)
            })
            .min();
        if let Some((_, m)) = best {
            return Ok(m.iter().zip(&floor_shift).map(|(a, f)| a + f).collect());
        }
    }
    Err(Error::GuaranteeViolated("witness shift not found by the bounded search".into()))
}
