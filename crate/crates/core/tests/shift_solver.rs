mod common;

use asphere_core::lattice::{mat_vec, solve_integer_system};
use asphere_core::params::lattice_shift;
use asphere_core::roots::reduced_membership_value;
use asphere_core::shift::{find_aspherical_shift, lex_first_target, ShiftStrategy};
use asphere_core::LambdaParam;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// Targets in lexicographic order, each tried with the Smith-form solver.
fn naive_lex_target(b: &[Vec<i64>], t_cur: &[i64], ell: usize) -> Option<Vec<i64>> {
    let hi: Vec<i64> = b.iter().map(|r| r[0]).collect();
    let mut t = vec![0i64; b.len()];
    loop {
        let rhs: Vec<i64> = t.iter().zip(t_cur).map(|(a, c)| a - c).collect();
        if solve_integer_system(b, &rhs, ell).unwrap().is_some() {
            return Some(t);
        }
        let mut i = t.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if t[i] < hi[i] {
                t[i] += 1;
                t[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

fn check_result(lambda: &LambdaParam, n: usize) {
    let r = find_aspherical_shift(lambda, n).unwrap_or_else(|e| panic!("λ = {lambda}, n = {n}: {e}"));
    assert_eq!(lattice_shift(lambda, &r.m).unwrap(), r.lambda_prime);
    assert!(r.certificate.is_certified());
    assert!(condition1_brute_force(&r.lambda_prime, n));
    for (root, &t) in r.certificate.subsystem.simple_roots.iter().zip(&r.targets) {
        assert!((0..=root.b0()).contains(&t));
        assert_eq!(reduced_membership_value(&r.lambda_prime, root).unwrap(), rat(t, 1));
    }
    let again = find_aspherical_shift(&r.lambda_prime, n).unwrap();
    assert_eq!(again.m, vec![0; lambda.ell()]);
    assert_eq!(again.strategy, ShiftStrategy::AlreadyCertified);
}

#[test]
fn every_coset_reaches_the_certified_locus() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..500 {
        let ell = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=6);
        let lambda = random_lambda(&mut rng, ell, 8, 3);
        check_result(&lambda, n);
    }
}

#[test]
fn lattice_target_search_matches_naive_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut compared = 0;
    while compared < 150 {
        let ell = rng.gen_range(2..=4);
        let lambda = random_lambda(&mut rng, ell, 4, 2);
        let cert = asphere_core::certify(&lambda, 2).unwrap();
        let roots = &cert.subsystem.simple_roots;
        if roots.is_empty() || roots.iter().map(|r| r.b0() + 1).product::<i64>() > 4000 {
            continue;
        }
        let b: Vec<Vec<i64>> = roots.iter().map(|r| r.coords().to_vec()).collect();
        let t_cur: Vec<i64> = roots
            .iter()
            .map(|r| reduced_membership_value(&lambda, r).unwrap().to_integer().unwrap().try_into().unwrap())
            .collect();
        let fast = lex_first_target(&b, &t_cur, ell).unwrap();
        let naive = naive_lex_target(&b, &t_cur, ell);
        assert_eq!(fast.as_ref().map(|(t, _)| t.clone()), naive, "λ = {lambda}");
        let (t, m) = fast.unwrap();
        let reached: Vec<i64> = mat_vec(&b, &m).iter().zip(&t_cur).map(|(a, c)| a + c).collect();
        assert_eq!(reached, t);
        compared += 1;
    }
}

#[test]
fn worked_ell_three_shift() {
    let lambda = LambdaParam::new(vec![rat(1, 2), rat(1, 2), rat(1, 3)]).unwrap();
    check_result(&lambda, 2);
}

#[test]
fn large_entries_are_handled() {
    let lambda = LambdaParam::new(vec![rat(2001, 2), rat(-700, 3), rat(5, 7)]).unwrap();
    check_result(&lambda, 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn solver_is_sound(entries in proptest::collection::vec((-30i64..30, 1i64..9), 2..5), n in 1usize..7) {
        let lambda = LambdaParam::new(entries.iter().map(|&(p, d)| rat(p, d)).collect()).unwrap();
        let r = find_aspherical_shift(&lambda, n).unwrap();
        prop_assert!(r.certificate.is_certified());
        prop_assert_eq!(lattice_shift(&lambda, &r.m).unwrap(), r.lambda_prime);
    }
}
