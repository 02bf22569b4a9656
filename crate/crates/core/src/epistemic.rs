//! Epistemic probabilities: belief assignments, mass distributions, the
//! postulate catalog, epistemic labelings and congruence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::dung::{ArgumentFramework, Extension, Label, Labeling};
use crate::error::{Error, Result};
use crate::rational::{format_rational, half, is_probability, Rational};

/// Degree of belief per argument, as exact rationals in [0, 1].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BeliefAssignment(BTreeMap<String, Rational>);

impl BeliefAssignment {
    pub fn new<S: Into<String>>(values: impl IntoIterator<Item = (S, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (arg, value) in values {
            let arg = arg.into();
            if !is_probability(&value) {
                return Err(Error::validation(format!(
                    "belief in `{arg}` is {}, outside [0,1]",
                    format_rational(&value)
                )));
            }
            if map.insert(arg.clone(), value).is_some() {
                return Err(Error::DuplicateArgument(arg));
            }
        }
        Ok(Self(map))
    }

    pub fn get(&self, arg: &str) -> Option<&Rational> {
        self.0.get(arg)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn values(&self) -> BTreeSet<&Rational> {
        self.0.values().collect()
    }

    /// The assignment restricted to the given arguments; missing ones are an error.
    pub fn restrict<'a>(&self, args: impl IntoIterator<Item = &'a String>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for arg in args {
            let v = self
                .get(arg)
                .ok_or_else(|| Error::domain(format!("no belief given for `{arg}`")))?;
            out.insert(arg.clone(), v.clone());
        }
        Ok(Self(out))
    }

    /// Positional values for a framework; the domains must match exactly.
    fn aligned(&self, af: &ArgumentFramework) -> Result<Vec<&Rational>> {
        if let Some(extra) = self.0.keys().find(|a| !af.contains(a)) {
            return Err(Error::UnknownArgument(extra.clone()));
        }
        af.arguments()
            .iter()
            .map(|a| {
                self.get(a).ok_or_else(|| {
                    Error::domain(format!(
                        "belief assignment is not total: `{a}` has no value"
                    ))
                })
            })
            .collect()
    }
}

/// A probability mass over subsets of arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassDistribution {
    arguments: Vec<String>,
    entries: BTreeMap<Extension, Rational>,
}

impl MassDistribution {
    /// Validates that every subset lies within `arguments`, every mass is a
    /// probability and the masses sum to exactly one. Repeated subsets are
    /// rejected.
    pub fn new<S: Into<String>>(
        arguments: impl IntoIterator<Item = S>,
        entries: impl IntoIterator<Item = (Extension, Rational)>,
    ) -> Result<Self> {
        let arguments: Vec<String> = arguments.into_iter().map(Into::into).collect();
        let mut map = BTreeMap::new();
        let mut total = Rational::zero();
        for (set, mass) in entries {
            if let Some(a) = set.iter().find(|a| !arguments.contains(a)) {
                return Err(Error::UnknownArgument(a.clone()));
            }
            if !is_probability(&mass) {
                return Err(Error::validation(format!(
                    "mass {} outside [0,1]",
                    format_rational(&mass)
                )));
            }
            total += &mass;
            if map.insert(set, mass).is_some() {
                return Err(Error::validation("the same subset is given a mass twice"));
            }
        }
        if !total.is_one() {
            return Err(Error::validation(format!(
                "masses sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Self {
            arguments,
            entries: map,
        })
    }

    pub fn arguments(&self) -> &[String] {
        &self.arguments
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Extension, &Rational)> {
        self.entries.iter()
    }

    /// `P(A)`: the total mass of subsets containing `A`.
    pub fn beliefs(&self) -> BeliefAssignment {
        let mut map: BTreeMap<String, Rational> = self
            .arguments
            .iter()
            .map(|a| (a.clone(), Rational::zero()))
            .collect();
        for (set, mass) in &self.entries {
            for a in set {
                *map.get_mut(a).expect("validated at construction") += mass;
            }
        }
        BeliefAssignment(map)
    }
}

/// The epistemic postulates, with `Val(n)` carrying its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostulateId {
    Pre,
    Rat,
    Stc,
    Pro,
    Res,
    Dis,
    Grd,
    Tru,
    Ant,
    Dem,
    Sfou,
    Fou,
    Sopt,
    Opt,
    Bin,
    Ter,
    Neu,
    Max,
    Min,
    Coh,
    Inv,
    Jus,
    Val(u32),
}

impl PostulateId {
    /// Every postulate except `Val`.
    pub const CATALOG: [PostulateId; 22] = [
        PostulateId::Pre,
        PostulateId::Rat,
        PostulateId::Stc,
        PostulateId::Pro,
        PostulateId::Res,
        PostulateId::Dis,
        PostulateId::Grd,
        PostulateId::Tru,
        PostulateId::Ant,
        PostulateId::Dem,
        PostulateId::Sfou,
        PostulateId::Fou,
        PostulateId::Sopt,
        PostulateId::Opt,
        PostulateId::Bin,
        PostulateId::Ter,
        PostulateId::Neu,
        PostulateId::Max,
        PostulateId::Min,
        PostulateId::Coh,
        PostulateId::Inv,
        PostulateId::Jus,
    ];

    pub fn name(self) -> String {
        match self {
            PostulateId::Val(n) => format!("VAL{n}"),
            other => format!("{other:?}").to_ascii_uppercase(),
        }
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("VAL") {
            let n: u32 = rest
                .trim_start_matches(['(', '^'])
                .trim_end_matches(')')
                .parse()
                .map_err(|_| Error::domain(format!("bad VAL bound in `{s}`")))?;
            if n == 0 {
                return Err(Error::domain("VAL bound must be positive"));
            }
            return Ok(PostulateId::Val(n));
        }
        PostulateId::CATALOG
            .into_iter()
            .find(|p| p.name() == upper)
            .ok_or_else(|| Error::domain(format!("unknown postulate `{s}`")))
    }
}

/// Parses a comma-separated postulate list; `all` selects the catalog.
pub fn parse_postulates(list: &str) -> Result<Vec<PostulateId>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.eq_ignore_ascii_case("all") {
            out.extend(PostulateId::CATALOG);
        } else {
            out.push(item.parse()?);
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|p| seen.insert(*p));
    Ok(out)
}

/// Evaluates one postulate. The assignment must be total over the framework.
pub fn check_postulate(
    af: &ArgumentFramework,
    p: &BeliefAssignment,
    id: PostulateId,
) -> Result<bool> {
    let v = p.aligned(af)?;
    Ok(evaluate(af, &v, id))
}

fn evaluate(af: &ArgumentFramework, v: &[&Rational], id: PostulateId) -> bool {
    let h = half();
    let one = Rational::one();
    let zero = Rational::zero();
    let n = af.len();
    let attacks = || af.attack_indices().iter().copied();
    let attacker_sum =
        |b: usize| -> Rational { af.attackers_of(b).iter().map(|&a| v[a].clone()).sum() };
    match id {
        PostulateId::Pre => attacks().all(|(a, b)| !(*v[a] > h && *v[b] > h) || v[a] < v[b]),
        PostulateId::Rat => attacks().all(|(a, b)| *v[a] <= h || *v[b] <= h),
        PostulateId::Stc => attacks().all(|(a, b)| *v[a] <= h || *v[b] < h),
        PostulateId::Pro => attacks().all(|(a, b)| *v[b] <= h || *v[a] < h),
        PostulateId::Res => attacks().all(|(a, b)| *v[a] < h || *v[b] < h),
        PostulateId::Dis => {
            (0..n).all(|b| *v[b] >= h || af.attackers_of(b).iter().any(|&a| *v[a] > h))
        }
        PostulateId::Grd => {
            (0..n).all(|b| *v[b] >= h || af.attackers_of(b).iter().any(|&a| *v[a] >= h))
        }
        PostulateId::Tru => {
            (0..n).all(|b| !af.attackers_of(b).iter().all(|&a| *v[a] < h) || *v[b] > h)
        }
        PostulateId::Ant => {
            (0..n).all(|b| !af.attackers_of(b).iter().all(|&a| *v[a] <= h) || *v[b] > h)
        }
        PostulateId::Dem => (0..n).all(|a| {
            let believed = *v[a] != one || af.attackers_of(a).iter().all(|&b| *v[b] == zero);
            let rejected = *v[a] != zero || af.attackers_of(a).iter().any(|&b| *v[b] == one);
            believed && rejected
        }),
        PostulateId::Sfou => (0..n).filter(|&a| af.is_initial(a)).all(|a| *v[a] >= h),
        PostulateId::Fou => (0..n).filter(|&a| af.is_initial(a)).all(|a| *v[a] == one),
        PostulateId::Sopt => (0..n)
            .filter(|&a| !af.is_initial(a))
            .all(|a| *v[a] >= &one - attacker_sum(a)),
        PostulateId::Opt => (0..n).all(|a| *v[a] >= &one - attacker_sum(a)),
        PostulateId::Bin => v.iter().all(|x| **x != h),
        PostulateId::Ter => v.iter().all(|x| **x == zero || **x == h || **x == one),
        PostulateId::Neu => v.iter().all(|x| **x == h),
        PostulateId::Max => v.iter().all(|x| **x == one),
        PostulateId::Min => v.iter().all(|x| **x == zero),
        PostulateId::Coh => attacks().all(|(a, b)| *v[a] <= &one - v[b]),
        PostulateId::Inv => attacks().all(|(a, b)| *v[a] == &one - v[b]),
        PostulateId::Jus => evaluate(af, v, PostulateId::Coh) && evaluate(af, v, PostulateId::Opt),
        PostulateId::Val(k) => v.iter().collect::<BTreeSet<_>>().len() <= k as usize,
    }
}

/// Every catalog postulate (`Val` excluded) that the assignment satisfies,
/// in catalog order.
pub fn satisfied_postulates(
    af: &ArgumentFramework,
    p: &BeliefAssignment,
) -> Result<Vec<PostulateId>> {
    let v = p.aligned(af)?;
    Ok(PostulateId::CATALOG
        .into_iter()
        .filter(|&id| evaluate(af, &v, id))
        .collect())
}

/// In above one half, out below, undec at exactly one half.
pub fn epistemic_labeling(p: &BeliefAssignment) -> Labeling {
    let h = half();
    p.iter()
        .map(|(a, x)| {
            let label = if *x > h {
                Label::In
            } else if *x < h {
                Label::Out
            } else {
                Label::Undec
            };
            (a, label)
        })
        .collect()
}

/// In exactly at 1, out exactly at 0, undec exactly at 1/2, over the same domain.
pub fn is_congruent(labeling: &Labeling, p: &BeliefAssignment) -> bool {
    if labeling.len() != p.len() {
        return false;
    }
    labeling.iter().all(|(a, label)| {
        let target = match label {
            Label::In => Rational::one(),
            Label::Out => Rational::zero(),
            Label::Undec => half(),
        };
        p.get(a) == Some(&target)
    })
}

/// Number of distinct values used across a list of assignments.
pub fn distinct_value_count(ps: &[BeliefAssignment]) -> Result<usize> {
    if ps.is_empty() {
        return Err(Error::domain(
            "distinct value count needs at least one assignment",
        ));
    }
    Ok(ps
        .iter()
        .flat_map(|p| p.0.values())
        .collect::<BTreeSet<_>>()
        .len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use PostulateId::*;

    fn five_args() -> ArgumentFramework {
        ArgumentFramework::new(
            ["A", "B", "C", "D", "E"],
            [
                ("A", "B"),
                ("C", "B"),
                ("C", "D"),
                ("D", "C"),
                ("D", "E"),
                ("E", "E"),
            ],
        )
        .unwrap()
    }

    fn beliefs(tenths: [i64; 5]) -> BeliefAssignment {
        BeliefAssignment::new(
            ["A", "B", "C", "D", "E"]
                .into_iter()
                .zip(tenths.map(|t| ratio(t, 10))),
        )
        .unwrap()
    }

    #[test]
    fn mass_to_beliefs() {
        let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Extension>();
        let m = MassDistribution::new(
            ["A", "B"],
            [(set(&["A"]), half()), (set(&["A", "B"]), half())],
        )
        .unwrap();
        let p = m.beliefs();
        assert_eq!(p.get("A"), Some(&int(1)));
        assert_eq!(p.get("B"), Some(&half()));
        let empty = MassDistribution::new(["A", "B"], [(set(&[]), int(1))])
            .unwrap()
            .beliefs();
        assert_eq!(empty.get("B"), Some(&int(0)));
        assert!(matches!(
            MassDistribution::new(["A"], [(set(&["A"]), half())]),
            Err(Error::Validation(_))
        ));
        assert!(MassDistribution::new(["A"], [(set(&["Z"]), int(1))]).is_err());
    }

    #[test]
    fn postulate_rows() {
        let af = five_args();
        let p1 = beliefs([6, 5, 2, 4, 8]);
        assert_eq!(satisfied_postulates(&af, &p1).unwrap(), vec![Dem, Sfou]);
        let p10 = beliefs([5; 5]);
        assert!(check_postulate(&af, &p10, Coh).unwrap());
        assert!(check_postulate(&af, &p10, Inv).unwrap());
        assert!(!check_postulate(&af, &p10, Tru).unwrap());
        let p5 = beliefs([10, 0, 10, 0, 5]);
        let sat = satisfied_postulates(&af, &p5).unwrap();
        for id in [
            Pre, Rat, Stc, Pro, Coh, Jus, Dis, Grd, Tru, Dem, Sfou, Fou, Sopt, Opt,
        ] {
            assert!(sat.contains(&id), "{id}");
        }
        for id in [Res, Inv, Ant] {
            assert!(!sat.contains(&id), "{id}");
        }
    }

    #[test]
    fn partial_assignment_is_rejected() {
        let af = five_args();
        let p = BeliefAssignment::new([("A", half())]).unwrap();
        assert!(matches!(
            check_postulate(&af, &p, Rat),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn empty_framework_is_vacuous() {
        let af = ArgumentFramework::default();
        let p = BeliefAssignment::default();
        assert_eq!(
            satisfied_postulates(&af, &p).unwrap(),
            PostulateId::CATALOG.to_vec()
        );
    }

    #[test]
    fn labelings_and_congruence() {
        let p3 = beliefs([7, 4, 6, 4, 5]);
        let l = epistemic_labeling(&p3);
        let expected: Labeling = [
            ("A", Label::In),
            ("B", Label::Out),
            ("C", Label::In),
            ("D", Label::Out),
            ("E", Label::Undec),
        ]
        .into_iter()
        .collect();
        assert_eq!(l, expected);
        let p7 = beliefs([5, 0, 10, 0, 5]);
        assert_eq!(
            epistemic_labeling(&p7).with_label(Label::Undec),
            ["A".to_string(), "E".to_string()].into()
        );

        let all_half = beliefs([5; 5]);
        assert!(is_congruent(&epistemic_labeling(&all_half), &all_half));
        let l13: Labeling = [
            ("A", Label::In),
            ("B", Label::Out),
            ("C", Label::Out),
            ("D", Label::In),
            ("E", Label::Out),
        ]
        .into_iter()
        .collect();
        assert!(is_congruent(&l13, &beliefs([10, 0, 0, 10, 0])));
        assert!(!is_congruent(&epistemic_labeling(&p3), &p3));
    }

    #[test]
    fn value_counts() {
        assert_eq!(distinct_value_count(&[beliefs([5; 5])]).unwrap(), 1);
        let b = |a: i64, c: i64| {
            BeliefAssignment::new([("A", ratio(a, 6)), ("B", ratio(c, 6))]).unwrap()
        };
        assert_eq!(distinct_value_count(&[b(1, 2), b(2, 5)]).unwrap(), 3);
        assert!(distinct_value_count(&[]).is_err());
        let af = ArgumentFramework::new(["A", "B"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(check_postulate(&af, &b(1, 2), Val(2)).unwrap());
        assert!(!check_postulate(&af, &b(1, 2), Val(1)).unwrap());
    }

    #[test]
    fn postulate_names_round_trip() {
        for id in PostulateId::CATALOG {
            assert_eq!(id.name().parse::<PostulateId>().unwrap(), id);
        }
        assert_eq!("val3".parse::<PostulateId>().unwrap(), Val(3));
        assert!("VAL0".parse::<PostulateId>().is_err());
        assert!("nope".parse::<PostulateId>().is_err());
    }
}
