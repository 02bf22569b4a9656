#![allow(dead_code)]

use argkit::rational::{ratio, Rational};
use argkit::ArgumentFramework;
use proptest::prelude::*;

pub fn names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'A' + i as u8) as char).to_string())
        .collect()
}

/// Argument count and attack relation as an `n × n` boolean matrix.
pub fn attack_matrix(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(
            proptest::collection::vec(proptest::bool::weighted(0.3), n),
            n,
        )
        .prop_map(move |m| (n, m))
    })
}

pub fn build(n: usize, m: &[Vec<bool>]) -> ArgumentFramework {
    let names = names(n);
    let mut attacks = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] {
                attacks.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    ArgumentFramework::new(names.clone(), attacks).unwrap()
}

pub fn framework(max_n: usize) -> impl Strategy<Value = ArgumentFramework> {
    attack_matrix(max_n).prop_map(|(n, m)| build(n, &m))
}

/// Belief values drawn from sixths, tenths and the thresholds.
pub fn belief_value() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (0i64..=6).prop_map(|k| ratio(k, 6)),
        (0i64..=10).prop_map(|k| ratio(k, 10))
    ]
}
