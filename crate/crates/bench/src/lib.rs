//! Shared fixtures for the criterion benchmarks.

use asphere_core::rational::q;
use asphere_core::LambdaParam;

/// λ-parameters of increasing subsystem period, used across benches.
pub fn fixtures() -> Vec<(&'static str, LambdaParam)> {
    let mk = |v: Vec<asphere_core::Rational>| LambdaParam::new(v).expect("valid fixture");
    vec![
        ("l2_d1", mk(vec![q(3, 2), q(0, 1)])),
        ("l3_d6", mk(vec![q(1, 2), q(1, 2), q(1, 3)])),
        ("l4_d40", mk(vec![q(1, 5), q(3, 8), q(-2, 5), q(7, 8)])),
        ("l5_d60", mk(vec![q(1, 3), q(1, 4), q(-1, 5), q(1, 2), q(2, 3)])),
    ]
}
