use std::collections::BTreeMap;

use argkit::rational::int;
use argkit::survey::{
    common_graphs, parse_dialogue, parse_responses, relation_crosstab, AgreementLevel, Direction,
    Pooling, RelationAnswer,
};
use num::Zero;
use proptest::prelude::*;

const DIALOGUE: &str = r#"{
    "dialogue": "d",
    "statements": [["A",1,1,"P1","a"],["B",1,2,"P2","b"],["C",2,1,"P1","c"],["D",2,2,"P2","d"]]
}"#;

fn responses(answers: &[(usize, usize, Vec<usize>)]) -> String {
    let mut s = String::new();
    for (p, (agree, step, relations)) in answers.iter().enumerate() {
        let step = step + 1;
        let visible = if step == 1 {
            vec!["A", "B"]
        } else {
            vec!["A", "B", "C", "D"]
        };
        for (i, v) in visible.iter().enumerate() {
            let level = AgreementLevel::ALL[(agree + i) % 8];
            s += &format!("p{p},d,{step},agreement,{v},,{level}\n");
        }
        let mut k = 0;
        for (i, a) in visible.iter().enumerate() {
            for b in &visible[..i] {
                let r = RelationAnswer::ALL[relations[k] % 6];
                s += &format!("p{p},d,{step},relation,{a},{b},{r}\n");
                k += 1;
            }
        }
    }
    s
}

fn corpus() -> impl Strategy<Value = Vec<(usize, usize, Vec<usize>)>> {
    proptest::collection::vec(
        (
            0usize..8,
            0usize..2,
            proptest::collection::vec(0usize..6, 6),
        ),
        1..12,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crosstab_groups_sum_to_one_hundred(rows in corpus()) {
        let d = parse_dialogue(DIALOGUE).unwrap();
        let rs = parse_responses(&responses(&rows), &[d]).unwrap();
        let poolings = [Pooling::None, Pooling::Strength, Pooling::Polarity];
        for direction in [Direction::ByRelation, Direction::BySource] {
            for ap in poolings {
                for rp in poolings {
                    let t = relation_crosstab(&rs, direction, ap, rp);
                    for g in 0..t.groups().len() {
                        let sum: num::BigRational = t.percentages(g).into_iter().sum();
                        if t.group_total(g) > 0 {
                            prop_assert_eq!(sum, int(100));
                        } else {
                            prop_assert!(sum.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn declared_graphs_and_modes(rows in corpus()) {
        let d = parse_dialogue(DIALOGUE).unwrap();
        let rs = parse_responses(&responses(&rows), &[d]).unwrap();
        for r in &rs {
            let has_dependent = r.relations.values().any(|a| *a == RelationAnswer::Dependent);
            prop_assert_eq!(r.declared_graph().is_clarified(), !has_dependent);
        }
        for step in 1..=2 {
            if !rs.iter().any(|r| r.step == step) {
                prop_assert!(common_graphs(&rs, step).is_err());
                continue;
            }
            let (graphs, count) = common_graphs(&rs, step).unwrap();
            let mut counts = BTreeMap::new();
            for r in rs.iter().filter(|r| r.step == step) {
                *counts.entry(r.declared_graph()).or_insert(0usize) += 1;
            }
            prop_assert!(counts.values().all(|&c| c <= count));
            for g in &graphs {
                prop_assert_eq!(counts[g], count);
            }
        }
    }
}
