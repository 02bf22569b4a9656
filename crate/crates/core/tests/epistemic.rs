mod common;

use argkit::epistemic::{
    check_postulate, epistemic_labeling, is_congruent, BeliefAssignment, MassDistribution,
    PostulateId,
};
use argkit::rational::{int, is_probability, ratio, Rational};
use argkit::{ArgumentFramework, Extension, Label, Labeling, Semantics};
use common::{belief_value, framework};
use proptest::prelude::*;
use PostulateId::*;

fn with_beliefs(max_n: usize) -> impl Strategy<Value = (ArgumentFramework, BeliefAssignment)> {
    framework(max_n).prop_flat_map(|af| {
        let n = af.len();
        (Just(af), proptest::collection::vec(belief_value(), n)).prop_map(|(af, vs)| {
            let p = BeliefAssignment::new(af.arguments().iter().cloned().zip(vs)).unwrap();
            (af, p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn postulate_relations((af, p) in with_beliefs(6)) {
        let h = |id| check_postulate(&af, &p, id).unwrap();
        prop_assert_eq!(h(Opt), h(Sopt) && h(Fou));
        prop_assert!(!(h(Ter) && h(Tru)) || h(Fou));
        prop_assert_eq!(h(Coh) && h(Ter), h(Pro) && h(Stc) && h(Ter));
        prop_assert!(!(h(Inv) && h(Fou)) || h(Dem));

        let implications: [(PostulateId, &[PostulateId]); 14] = [
            (Res, &[Stc, Pro]),
            (Jus, &[Coh, Opt]),
            (Coh, &[Stc, Pro]),
            (Stc, &[Rat]),
            (Pro, &[Rat]),
            (Rat, &[Pre]),
            (Neu, &[Inv, Dis, Ter, Dem]),
            (Max, &[Opt, Ant, Dis, Bin, Ter]),
            (Min, &[Coh, Bin, Ter]),
            (Fou, &[Sfou]),
            (Tru, &[Sfou]),
            (Grd, &[Sfou]),
            (Ant, &[Tru]),
            (Dis, &[Grd]),
        ];
        for (from, to) in implications {
            if h(from) {
                for &t in to {
                    prop_assert!(h(t), "{} without {}", from, t);
                }
            }
        }
    }

    #[test]
    fn labeling_correspondence((af, p) in with_beliefs(6)) {
        let h = |id| check_postulate(&af, &p, id).unwrap();
        let l = epistemic_labeling(&p);
        prop_assert_eq!(h(Rat) && h(Dis), af.check_labeling(&l, Semantics::ConflictFree).unwrap());
        prop_assert_eq!(h(Pro) && h(Dis), af.check_labeling(&l, Semantics::Admissible).unwrap());
        prop_assert_eq!(h(Pro) && h(Stc) && h(Dis) && h(Tru), af.check_labeling(&l, Semantics::Complete).unwrap());
    }

    #[test]
    fn congruent_labeling_is_epistemic(labels in proptest::collection::vec(0u8..3, 0..7)) {
        let mut l = Labeling::new();
        let mut values = Vec::new();
        for (i, k) in labels.iter().enumerate() {
            let name = format!("a{i}");
            let (label, v) = match k {
                0 => (Label::In, int(1)),
                1 => (Label::Out, int(0)),
                _ => (Label::Undec, ratio(1, 2)),
            };
            l.insert(name.clone(), label);
            values.push((name, v));
        }
        let p = BeliefAssignment::new(values).unwrap();
        prop_assert!(is_congruent(&l, &p));
        prop_assert_eq!(epistemic_labeling(&p), l);
    }

    #[test]
    fn beliefs_from_mass_are_probabilities(n in 0usize..5, weights in proptest::collection::vec(0i64..5, 32)) {
        let args: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let subsets = 1usize << n;
        let w = &weights[..subsets];
        let total: i64 = w.iter().sum();
        prop_assume!(total > 0);
        let entries = (0..subsets).map(|mask| {
            let set: Extension = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| args[i].clone()).collect();
            (set, Rational::new(w[mask].into(), total.into()))
        });
        let m = MassDistribution::new(args.clone(), entries).unwrap();
        let beliefs = m.beliefs();
        prop_assert_eq!(beliefs.len(), n);
        for (_, v) in beliefs.iter() {
            prop_assert!(is_probability(v));
        }
    }
}
