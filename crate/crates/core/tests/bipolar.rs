mod common;

use std::collections::BTreeSet;

use argkit::bipolar::{augment_bipolar, AttackKind, BipolarFramework, FlowOrder};
use argkit::tripolar::TripolarGraph;
use common::names;
use proptest::prelude::*;

type Matrix = Vec<Vec<bool>>;

fn graph(max_n: usize) -> impl Strategy<Value = (usize, Matrix, Matrix)> {
    (1..=max_n).prop_flat_map(|n| {
        let m = || {
            proptest::collection::vec(
                proptest::collection::vec(proptest::bool::weighted(0.25), n),
                n,
            )
        };
        (Just(n), m(), m())
    })
}

/// Attack and support matrices made disjoint, attack taking precedence.
fn framework(n: usize, att: &Matrix, sup: &Matrix) -> BipolarFramework {
    let names = names(n);
    let mut attacks = Vec::new();
    let mut supports = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if att[i][j] {
                attacks.push((names[i].clone(), names[j].clone()));
            } else if sup[i][j] {
                supports.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    BipolarFramework::new(names.clone(), attacks, supports).unwrap()
}

/// `chain[a][b]`: a sequence of one to `n` support edges leads from a to b,
/// found by extending chains one edge at a time.
fn chains(n: usize, att: &Matrix, sup: &Matrix) -> Matrix {
    let edge = |i: usize, j: usize| sup[i][j] && !att[i][j];
    let mut out = vec![vec![false; n]; n];
    for start in 0..n {
        let mut frontier: Vec<usize> = vec![start];
        for _ in 0..n {
            let mut next = Vec::new();
            for &x in &frontier {
                for y in 0..n {
                    if edge(x, y) {
                        out[start][y] = true;
                        next.push(y);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
    }
    out
}

fn oracle(n: usize, att: &Matrix, sup: &Matrix, kind: AttackKind) -> BTreeSet<(usize, usize)> {
    let c = chains(n, att, sup);
    let supported = |a: usize, b: usize| (0..n).any(|x| c[a][x] && att[x][b]);
    let secondary = |a: usize, b: usize| (0..n).any(|x| att[a][x] && c[x][b]);
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let hit = match kind {
                AttackKind::Supported => supported(a, b),
                AttackKind::Secondary => secondary(a, b),
                AttackKind::Mediated => (0..n).any(|x| c[b][x] && att[a][x]),
                AttackKind::Extended => (0..n).any(|x| c[x][a] && att[x][b]),
                AttackKind::SuperMediated => {
                    (0..n).any(|x| c[b][x] && (att[a][x] || supported(a, x)))
                }
                AttackKind::SuperExtended => {
                    (0..n).any(|x| c[x][a] && (att[x][b] || secondary(x, b)))
                }
            };
            if hit {
                out.insert((a, b));
            }
        }
    }
    out
}

fn index_pairs(pairs: &[(String, String)]) -> BTreeSet<(usize, usize)> {
    let idx = |s: &str| (s.as_bytes()[0] - b'A') as usize;
    pairs.iter().map(|(a, b)| (idx(a), idx(b))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn derived_attacks_match_chain_oracle((n, att, sup) in graph(6)) {
        let b = framework(n, &att, &sup);
        for kind in AttackKind::ALL {
            let got: Vec<(String, String)> = b
                .indirect_attacks(&BTreeSet::from([kind]))
                .into_iter()
                .map(|(_, p)| p)
                .collect();
            prop_assert_eq!(index_pairs(&got), oracle(n, &att, &sup, kind), "{:?}", kind);
        }
        let c = chains(n, &att, &sup);
        let names = names(n);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(b.support_reachable(&names[i], &names[j]).unwrap(), c[i][j]);
            }
        }
    }

    #[test]
    fn super_variants_contain_plain_ones((n, att, sup) in graph(6)) {
        for (plain, sup_kind) in [(AttackKind::Mediated, AttackKind::SuperMediated), (AttackKind::Extended, AttackKind::SuperExtended)] {
            prop_assert!(oracle(n, &att, &sup, plain).is_subset(&oracle(n, &att, &sup, sup_kind)));
        }
    }

    #[test]
    fn to_dung_is_monotone_in_kinds((n, att, sup) in graph(6), small in 0u8..64, extra in 0u8..64) {
        let b = framework(n, &att, &sup);
        let pick = |mask: u8| -> BTreeSet<AttackKind> {
            AttackKind::ALL.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, k)| k).collect()
        };
        let lo: BTreeSet<(String, String)> = b.to_dung(&pick(small)).attacks().map(|(a, c)| (a.to_string(), c.to_string())).collect();
        let hi: BTreeSet<(String, String)> = b.to_dung(&pick(small | extra)).attacks().map(|(a, c)| (a.to_string(), c.to_string())).collect();
        prop_assert!(lo.is_subset(&hi));
    }

    #[test]
    fn augmentation_grows_and_settles((n, att, sup) in graph(5)) {
        let b = framework(n, &att, &sup);
        let t = TripolarGraph::new(
            b.arguments().to_vec(),
            b.framework().attacks().map(|(x, y)| (x.to_string(), y.to_string())).collect::<Vec<_>>(),
            b.supports().map(|(x, y)| (x.to_string(), y.to_string())).collect::<Vec<_>>(),
            Vec::<(String, String)>::new(),
        ).unwrap();
        let flow = FlowOrder::new(names(n).into_iter().enumerate().map(|(i, a)| (a, i as u32 + 1, 1))).unwrap();
        let kinds = AttackKind::all();
        let mut previous = t.clone();
        for passes in 1..=3 {
            let next = augment_bipolar(&t, &kinds, &flow, passes).unwrap();
            prop_assert!(previous.all_edges().is_subset(&next.all_edges()));
            previous = next;
        }
        let settled = augment_bipolar(&t, &kinds, &flow, n * n).unwrap();
        prop_assert_eq!(augment_bipolar(&settled, &kinds, &flow, 1).unwrap(), settled);
    }
}
