//! Brute-force oracles shared by the integration suites. They deliberately
//! avoid the library's residue arithmetic and simple-root machinery.

#![allow(dead_code)]

use std::collections::HashSet;

use asphere_core::rational::Rational;
use asphere_core::LambdaParam;
use rand::Rng;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

/// Random rational with denominator in `1..=max_den` and |value| ≤ `range`.
pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64, range: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-range * d..=range * d);
    rat(p, d)
}

pub fn random_lambda<R: Rng>(rng: &mut R, ell: usize, max_den: i64, range: i64) -> LambdaParam {
    LambdaParam::new((0..ell).map(|_| random_rational(rng, max_den, range)).collect()).unwrap()
}

/// Affine Cartan form, written out directly.
pub fn norm(b: &[i64]) -> i64 {
    let ell = b.len();
    if ell == 2 {
        return 2 * b[0] * b[0] + 2 * b[1] * b[1] - 4 * b[0] * b[1];
    }
    (0..ell).map(|i| 2 * b[i] * b[i] - 2 * b[i] * b[(i + 1) % ell]).sum()
}

/// Finite roots: vectors in {−1,0,1}^ℓ with b_0 = 0 and norm 2.
pub fn finite_roots_by_norm(ell: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow((ell - 1) as u32);
    for code in 0..total {
        let mut b = vec![0i64];
        let mut c = code;
        for _ in 1..ell {
            b.push((c % 3) as i64 - 1);
            c /= 3;
        }
        if norm(&b) == 2 {
            out.push(b);
        }
    }
    out
}

pub fn dot(lambda: &LambdaParam, b: &[i64]) -> Rational {
    lambda.values().iter().zip(b).map(|(l, &x)| l * Rational::from(x)).sum()
}

/// `Σ b_i (λ_i + ½(w_i + 2n))` with `w = ε_0`.
pub fn integrality_value(lambda: &LambdaParam, b: &[i64], n: usize) -> Rational {
    let mut s = Rational::zero();
    for (i, &bi) in b.iter().enumerate() {
        let w = if i == 0 { 1 } else { 0 };
        let shift = rat(w + 2 * n as i64, 2);
        s = s + (lambda.get(i) + shift) * Rational::from(bi);
    }
    s
}

pub fn period(lambda: &LambdaParam) -> i64 {
    let g = lambda.total() + rat(1, 2);
    i64::try_from(g.denominator().clone()).unwrap()
}

/// Every real root `ᾱ + kδ` in the subsystem with `k_min ≤ k ≤ k_max`, by scanning k.
pub fn members_scan(lambda: &LambdaParam, n: usize, k_min: i64, k_max: i64) -> Vec<Vec<i64>> {
    let ell = lambda.ell();
    let mut out = Vec::new();
    for fin in finite_roots_by_norm(ell) {
        for k in k_min..=k_max {
            let b: Vec<i64> = fin.iter().map(|x| x + k).collect();
            if integrality_value(lambda, &b, n).is_integer() {
                out.push(b);
            }
        }
    }
    out
}

pub fn is_positive(b: &[i64]) -> bool {
    b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x != 0)
}

/// Simple roots by scanning levels `0..=k_max` and removing every positive
/// member that splits as a sum of two positive roots (real members or `j d′ δ`).
pub fn simple_roots_scan(lambda: &LambdaParam, n: usize, k_max: i64) -> Vec<Vec<i64>> {
    let ell = lambda.ell();
    let d = period(lambda);
    let real: Vec<Vec<i64>> = members_scan(lambda, n, 0, k_max).into_iter().filter(|b| is_positive(b)).collect();
    let mut all: HashSet<Vec<i64>> = real.iter().cloned().collect();
    let mut j = d;
    while j <= k_max {
        all.insert(vec![j; ell]);
        j += d;
    }
    let mut simple: Vec<Vec<i64>> = real
        .iter()
        .filter(|b| {
            !all.iter().any(|g| {
                let rest: Vec<i64> = b.iter().zip(g).map(|(x, y)| x - y).collect();
                is_positive(&rest) && all.contains(&rest)
            })
        })
        .cloned()
        .collect();
    simple.sort();
    simple
}

/// Root condition by brute force: every member with |k| ≤ 4d′, plus `j d′ δ`
/// for `1 ≤ j ≤ 4` when the subsystem is nonempty.
pub fn condition1_brute_force(lambda: &LambdaParam, n: usize) -> bool {
    let d = period(lambda);
    let members = members_scan(lambda, n, -4 * d, 4 * d);
    let ok = |b: &[i64]| dot(lambda, b).abs() <= rat(b[0].abs(), 2);
    if !members.iter().all(|b| ok(b)) {
        return false;
    }
    if members.is_empty() {
        return true;
    }
    (1..=4).all(|j| ok(&vec![j * d; lambda.ell()]))
}

/// Type-A clause test written independently of the library.
pub fn kappa_passes(kappa: &Rational, n: usize) -> bool {
    (kappa > &Rational::from(-1) && kappa < &Rational::zero())
        || kappa.is_integer()
        || *kappa.denominator() > num_bigint::BigInt::from(n)
}
