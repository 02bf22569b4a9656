use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::Serialize;

use super::model::{AgreementLevel, DialogueSpec, RelationAnswer, ResponseRecord};
use crate::dung::ArgumentFramework;
use crate::epistemic::{check_postulate, BeliefAssignment, PostulateId};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::tripolar::{is_subgraph, EdgeClass, SubgraphKind, TripolarGraph};

/// Declared graphs of maximal multiplicity among the records at `step`,
/// in canonical order, together with that multiplicity.
pub fn common_graphs(records: &[ResponseRecord], step: u32) -> Result<(Vec<TripolarGraph>, usize)> {
    let at_step: Vec<&ResponseRecord> = records.iter().filter(|r| r.step == step).collect();
    let first = at_step
        .first()
        .ok_or_else(|| Error::domain(format!("no records at step {step}")))?;
    if at_step.iter().any(|r| r.dialogue != first.dialogue) {
        return Err(Error::domain("records from more than one dialogue"));
    }
    let mut counts: BTreeMap<TripolarGraph, usize> = BTreeMap::new();
    for r in at_step {
        *counts.entry(r.declared_graph()).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let graphs = counts
        .into_iter()
        .filter(|(_, c)| *c == best)
        .map(|(g, _)| g)
        .collect();
    Ok((graphs, best))
}

/// Fraction of steps at which each postulate holds.
pub fn adherence_rates(
    beliefs: &[BeliefAssignment],
    graphs: &[ArgumentFramework],
    ids: &[PostulateId],
) -> Result<BTreeMap<PostulateId, Rational>> {
    if beliefs.len() != graphs.len() {
        return Err(Error::domain(format!(
            "{} belief assignments for {} graphs",
            beliefs.len(),
            graphs.len()
        )));
    }
    if ids.is_empty() {
        return Ok(BTreeMap::new());
    }
    if graphs.is_empty() {
        return Err(Error::domain("adherence needs at least one step"));
    }
    let mut out = BTreeMap::new();
    for &id in ids {
        let mut hits = 0i64;
        for (p, af) in beliefs.iter().zip(graphs) {
            if check_postulate(af, p, id)? {
                hits += 1;
            }
        }
        out.insert(id, Rational::new(hits.into(), (graphs.len() as i64).into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    /// One group per relation class, distributing the source agreement.
    ByRelation,
    /// One group per agreement class, distributing the relations.
    BySource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Pooling {
    None,
    Strength,
    Polarity,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "by_relation" | "relation" => Ok(Direction::ByRelation),
            "by_source" | "source" => Ok(Direction::BySource),
            _ => Err(Error::domain(format!("unknown crosstab direction `{s}`"))),
        }
    }
}

impl FromStr for Pooling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Pooling::None),
            "strength" => Ok(Pooling::Strength),
            "polarity" => Ok(Pooling::Polarity),
            _ => Err(Error::domain(format!("unknown pooling `{s}`"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::ByRelation => "BY_RELATION",
            Direction::BySource => "BY_SOURCE",
        })
    }
}

impl fmt::Display for Pooling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pooling::None => "NONE",
            Pooling::Strength => "STRENGTH",
            Pooling::Polarity => "POLARITY",
        })
    }
}

fn agreement_classes(pooling: Pooling) -> Vec<&'static str> {
    match pooling {
        Pooling::None => AgreementLevel::ALL.iter().map(|l| l.name()).collect(),
        Pooling::Strength => vec!["STRONG", "MODERATE", "WEAK", "NEITHER"],
        Pooling::Polarity => vec!["BELIEVED", "DISBELIEVED", "NEITHER"],
    }
}

fn agreement_class(level: AgreementLevel, pooling: Pooling) -> &'static str {
    use AgreementLevel::*;
    match (pooling, level) {
        (Pooling::None, l) => l.name(),
        (Pooling::Strength, StronglyAgree | StronglyDisagree) => "STRONG",
        (Pooling::Strength, Agree | Disagree) => "MODERATE",
        (Pooling::Strength, SomewhatAgree | SomewhatDisagree) => "WEAK",
        (Pooling::Polarity, StronglyAgree | Agree | SomewhatAgree) => "BELIEVED",
        (Pooling::Polarity, StronglyDisagree | Disagree | SomewhatDisagree) => "DISBELIEVED",
        (_, Neither | DontKnow) => "NEITHER",
    }
}

fn relation_classes(pooling: Pooling) -> Vec<&'static str> {
    match pooling {
        Pooling::None => RelationAnswer::ALL[..5].iter().map(|r| r.name()).collect(),
        Pooling::Strength => vec!["STRONG", "NORMAL", "DEPENDENCY"],
        Pooling::Polarity => vec!["ATTACK", "SUPPORT", "DEPENDENCY"],
    }
}

fn relation_class(answer: RelationAnswer, pooling: Pooling) -> Option<&'static str> {
    use RelationAnswer::*;
    Some(match (pooling, answer) {
        (_, Na) => return None,
        (Pooling::None, r) => r.name(),
        (_, Dependent) => "DEPENDENCY",
        (Pooling::Strength, GoodAgainst | GoodFor) => "STRONG",
        (Pooling::Strength, SomewhatAgainst | SomewhatFor) => "NORMAL",
        (Pooling::Polarity, GoodAgainst | SomewhatAgainst) => "ATTACK",
        (Pooling::Polarity, GoodFor | SomewhatFor) => "SUPPORT",
    })
}

/// Counts of (source agreement class, relation class) over all answered
/// relations; NA answers are left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosstab {
    pub direction: Direction,
    pub agreement_pooling: Pooling,
    pub relation_pooling: Pooling,
    pub agreement_classes: Vec<&'static str>,
    pub relation_classes: Vec<&'static str>,
    /// Indexed `[agreement][relation]`.
    pub counts: Vec<Vec<u64>>,
}

impl Crosstab {
    /// Group labels in order: relation classes for `ByRelation`, agreement
    /// classes for `BySource`.
    pub fn groups(&self) -> &[&'static str] {
        match self.direction {
            Direction::ByRelation => &self.relation_classes,
            Direction::BySource => &self.agreement_classes,
        }
    }

    /// Labels distributed inside each group.
    pub fn members(&self) -> &[&'static str] {
        match self.direction {
            Direction::ByRelation => &self.agreement_classes,
            Direction::BySource => &self.relation_classes,
        }
    }

    fn count(&self, group: usize, member: usize) -> u64 {
        match self.direction {
            Direction::ByRelation => self.counts[member][group],
            Direction::BySource => self.counts[group][member],
        }
    }

    pub fn group_total(&self, group: usize) -> u64 {
        (0..self.members().len())
            .map(|m| self.count(group, m))
            .sum()
    }

    /// Percentages of each member within a group; all zero for an empty group.
    pub fn percentages(&self, group: usize) -> Vec<Rational> {
        let total = self.group_total(group);
        (0..self.members().len())
            .map(|m| {
                if total == 0 {
                    Rational::zero()
                } else {
                    Rational::new((100 * self.count(group, m)).into(), total.into())
                }
            })
            .collect()
    }
}

pub fn relation_crosstab(
    records: &[ResponseRecord],
    direction: Direction,
    agreement_pooling: Pooling,
    relation_pooling: Pooling,
) -> Crosstab {
    let agreement_classes = agreement_classes(agreement_pooling);
    let relation_classes = relation_classes(relation_pooling);
    let mut counts = vec![vec![0u64; relation_classes.len()]; agreement_classes.len()];
    for r in records {
        for ((source, _), &answer) in &r.relations {
            let Some(rc) = relation_class(answer, relation_pooling) else {
                continue;
            };
            let level = r.agreement[source];
            let ac = agreement_class(level, agreement_pooling);
            let i = agreement_classes
                .iter()
                .position(|c| *c == ac)
                .expect("class listed");
            let j = relation_classes
                .iter()
                .position(|c| *c == rc)
                .expect("class listed");
            counts[i][j] += 1;
        }
    }
    Crosstab {
        direction,
        agreement_pooling,
        relation_pooling,
        agreement_classes,
        relation_classes,
        counts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefChangeSummary {
    /// Mean over participants with at least one aware statement.
    pub aware_avg: Option<Rational>,
    /// Mean over participants with at least one unaware statement.
    pub unaware_avg: Option<Rational>,
    pub aware_participants: usize,
    pub unaware_participants: usize,
}

/// Per-participant belief change on aware and unaware statements: summed
/// absolute differences between consecutive steps, divided by the number of
/// statements in the group. `None` means no participant is in the group.
pub fn participant_belief_change(
    records: &[&ResponseRecord],
) -> (Option<Rational>, Option<Rational>) {
    let Some(last) = records.iter().max_by_key(|r| r.step) else {
        return (None, None);
    };
    let Some(aware) = &last.awareness else {
        return (None, None);
    };
    let mut by_step: Vec<&ResponseRecord> = records.to_vec();
    by_step.sort_by_key(|r| r.step);
    let mut totals: BTreeMap<&str, Rational> = BTreeMap::new();
    for pair in by_step.windows(2) {
        for (s, level) in &pair[1].agreement {
            if let Some(prev) = pair[0].agreement.get(s) {
                let delta = level.belief() - prev.belief();
                *totals.entry(s.as_str()).or_insert_with(Rational::zero) += num::abs(delta);
            }
        }
    }
    let mut groups = [(Rational::zero(), 0i64), (Rational::zero(), 0i64)];
    for s in &last.statements {
        let g = &mut groups[usize::from(!aware.contains(s))];
        g.0 += totals
            .get(s.as_str())
            .cloned()
            .unwrap_or_else(Rational::zero);
        g.1 += 1;
    }
    let avg = |(sum, n): &(Rational, i64)| (*n > 0).then(|| sum / int(*n));
    (avg(&groups[0]), avg(&groups[1]))
}

/// Averages [`participant_belief_change`] over participants; records are
/// grouped by participant and dialogue, and groups without recorded
/// awareness are skipped.
pub fn belief_change_summary(records: &[ResponseRecord]) -> BeliefChangeSummary {
    let per: Vec<(Option<Rational>, Option<Rational>)> = group_by_participant(records)
        .values()
        .map(|rs| participant_belief_change(rs))
        .collect();
    summarize(&per)
}

pub(crate) fn summarize(per: &[(Option<Rational>, Option<Rational>)]) -> BeliefChangeSummary {
    let mean = |vals: Vec<&Rational>| {
        (!vals.is_empty()).then(|| vals.iter().copied().sum::<Rational>() / int(vals.len() as i64))
    };
    let aware: Vec<&Rational> = per.iter().filter_map(|p| p.0.as_ref()).collect();
    let unaware: Vec<&Rational> = per.iter().filter_map(|p| p.1.as_ref()).collect();
    BeliefChangeSummary {
        aware_participants: aware.len(),
        unaware_participants: unaware.len(),
        aware_avg: mean(aware),
        unaware_avg: mean(unaware),
    }
}

pub(crate) fn group_by_participant(
    records: &[ResponseRecord],
) -> BTreeMap<(&str, &str), Vec<&ResponseRecord>> {
    let mut out: BTreeMap<(&str, &str), Vec<&ResponseRecord>> = BTreeMap::new();
    for r in records {
        out.entry((r.participant.as_str(), r.dialogue.as_str()))
            .or_default()
            .push(r);
    }
    out
}

/// Class percentages for one ordered pair, in the order attack, support,
/// dependency, NA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFrequency {
    pub asked: u64,
    pub attack: Rational,
    pub support: Rational,
    pub dependency: Rational,
    pub na: Rational,
}

/// Per dialogue and ordered pair, how its answers split over the classes.
pub fn relation_frequencies(
    records: &[ResponseRecord],
) -> BTreeMap<(String, String, String), RelationFrequency> {
    let mut counts: BTreeMap<(String, String, String), [u64; 4]> = BTreeMap::new();
    for r in records {
        for ((a, b), answer) in &r.relations {
            let slot = match answer.edge_class() {
                Some(EdgeClass::Attack) => 0,
                Some(EdgeClass::Support) => 1,
                Some(EdgeClass::Dependency) => 2,
                None => 3,
            };
            counts
                .entry((r.dialogue.clone(), a.clone(), b.clone()))
                .or_default()[slot] += 1;
        }
    }
    counts
        .into_iter()
        .map(|(key, c)| {
            let total: u64 = c.iter().sum();
            let pct = |n: u64| Rational::new((100 * n).into(), total.into());
            let freq = RelationFrequency {
                asked: total,
                attack: pct(c[0]),
                support: pct(c[1]),
                dependency: pct(c[2]),
                na: pct(c[3]),
            };
            (key, freq)
        })
        .collect()
}

/// Participants whose declared graph contains the intended graph as a
/// `kind` subgraph on at least `threshold` steps.
pub fn core_sample(
    records: &[ResponseRecord],
    dialogues: &[DialogueSpec],
    kind: SubgraphKind,
    threshold: usize,
) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for ((participant, dialogue), rs) in group_by_participant(records) {
        let Some(spec) = dialogues.iter().find(|d| d.id() == dialogue) else {
            continue;
        };
        let hits = rs
            .iter()
            .filter(|r| {
                spec.intended(r.step)
                    .is_some_and(|i| is_subgraph(i, &r.declared_graph(), kind))
            })
            .count();
        if hits >= threshold {
            out.insert((participant.to_string(), dialogue.to_string()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::survey::model::AgreementLevel::*;
    use crate::survey::model::RelationAnswer::*;

    fn record(
        participant: &str,
        step: u32,
        agreement: &[(&str, AgreementLevel)],
        relations: &[(&str, &str, RelationAnswer)],
    ) -> ResponseRecord {
        ResponseRecord {
            participant: participant.into(),
            dialogue: "d".into(),
            step,
            statements: agreement.iter().map(|(s, _)| s.to_string()).collect(),
            agreement: agreement.iter().map(|&(s, l)| (s.to_string(), l)).collect(),
            relations: relations
                .iter()
                .map(|&(a, b, r)| ((a.to_string(), b.to_string()), r))
                .collect(),
            awareness: None,
            expanded: BTreeMap::new(),
        }
    }

    fn ab(p: &str, r: RelationAnswer) -> ResponseRecord {
        record(p, 1, &[("A", Agree), ("B", Agree)], &[("B", "A", r)])
    }

    #[test]
    fn common_graph_tie() {
        let mut rs = Vec::new();
        for i in 0..18 {
            rs.push(ab(&format!("a{i}"), GoodAgainst));
            rs.push(ab(&format!("s{i}"), SomewhatFor));
        }
        for i in 0..4 {
            rs.push(ab(&format!("n{i}"), Na));
        }
        let (graphs, count) = common_graphs(&rs, 1).unwrap();
        assert_eq!(count, 18);
        assert_eq!(graphs.len(), 2);
        assert!(common_graphs(&rs, 2).is_err());
    }

    #[test]
    fn common_graph_strict_mode() {
        let rs = vec![
            ab("1", GoodAgainst),
            ab("2", Dependent),
            ab("3", Dependent),
            ab("4", Na),
        ];
        let (graphs, count) = common_graphs(&rs, 1).unwrap();
        assert_eq!((graphs.len(), count), (1, 2));
        assert_eq!(graphs[0].dependencies().len(), 1);
    }

    #[test]
    fn adherence() {
        let af = ArgumentFramework::new(["A", "B"], [("B", "A")]).unwrap();
        let good = BeliefAssignment::new([("A", ratio(1, 6)), ("B", ratio(5, 6))]).unwrap();
        let bad = BeliefAssignment::new([("A", int(1)), ("B", int(1))]).unwrap();
        let beliefs = vec![good.clone(), good.clone(), bad, good.clone(), good];
        let graphs = vec![af; 5];
        let rates = adherence_rates(&beliefs, &graphs, &[PostulateId::Rat]).unwrap();
        assert_eq!(rates[&PostulateId::Rat], ratio(4, 5));
        assert!(adherence_rates(&beliefs, &graphs[..4], &[PostulateId::Rat]).is_err());
        assert!(adherence_rates(&beliefs, &graphs, &[]).unwrap().is_empty());

        let free = ArgumentFramework::new(["A"], Vec::<(&str, &str)>::new()).unwrap();
        let neutral = BeliefAssignment::new([("A", ratio(1, 2))]).unwrap();
        let rates = adherence_rates(
            &[neutral.clone(), neutral],
            &[free.clone(), free],
            &[PostulateId::Tru],
        )
        .unwrap();
        assert_eq!(rates[&PostulateId::Tru], int(0));
    }

    #[test]
    fn crosstab_single_cell() {
        let rs = vec![record(
            "1",
            1,
            &[("A", Agree), ("B", StronglyAgree)],
            &[("B", "A", GoodAgainst)],
        )];
        let t = relation_crosstab(&rs, Direction::ByRelation, Pooling::None, Pooling::None);
        let g = t
            .groups()
            .iter()
            .position(|c| *c == "GOOD_AGAINST")
            .unwrap();
        let m = t
            .members()
            .iter()
            .position(|c| *c == "STRONGLY_AGREE")
            .unwrap();
        assert_eq!(t.percentages(g)[m], int(100));
        let empty = t.groups().iter().position(|c| *c == "GOOD_FOR").unwrap();
        assert!(t.percentages(empty).iter().all(Zero::is_zero));
    }

    #[test]
    fn crosstab_polarity_pools_agreement() {
        let rs = vec![
            record(
                "1",
                1,
                &[("A", Agree), ("B", SomewhatAgree)],
                &[("B", "A", GoodFor)],
            ),
            record(
                "2",
                1,
                &[("A", Agree), ("B", StronglyAgree)],
                &[("B", "A", GoodFor)],
            ),
        ];
        let t = relation_crosstab(
            &rs,
            Direction::BySource,
            Pooling::Polarity,
            Pooling::Polarity,
        );
        assert_eq!(t.groups(), ["BELIEVED", "DISBELIEVED", "NEITHER"]);
        assert_eq!(t.group_total(0), 2);
        assert_eq!(t.percentages(0), vec![int(0), int(100), int(0)]);
    }

    #[test]
    fn crosstab_hand_tally() {
        let rs = vec![
            record(
                "1",
                1,
                &[("A", Agree), ("B", Agree)],
                &[("B", "A", GoodAgainst)],
            ),
            record(
                "2",
                1,
                &[("A", Agree), ("B", Disagree)],
                &[("B", "A", SomewhatFor)],
            ),
            record(
                "3",
                1,
                &[("A", Agree), ("B", DontKnow)],
                &[("B", "A", Dependent)],
            ),
            record(
                "4",
                1,
                &[("A", Agree), ("B", SomewhatAgree)],
                &[("B", "A", SomewhatAgainst)],
            ),
        ];
        let t = relation_crosstab(
            &rs,
            Direction::ByRelation,
            Pooling::Polarity,
            Pooling::Polarity,
        );
        // rows: believed, disbelieved, neither; columns: attack, support, dependency
        assert_eq!(t.counts, vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(t.percentages(0), vec![int(100), int(0), int(0)]);
        let t = relation_crosstab(
            &rs,
            Direction::BySource,
            Pooling::Strength,
            Pooling::Strength,
        );
        // MODERATE holds AGREE (strong relation) and DISAGREE (normal relation)
        assert_eq!(t.percentages(1), vec![int(50), int(50), int(0)]);
    }

    #[test]
    fn frequencies() {
        let rs: Vec<ResponseRecord> = [GoodAgainst, SomewhatAgainst, GoodFor, Dependent]
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                record(
                    "1",
                    i as u32 + 1,
                    &[("A", Agree), ("B", Agree)],
                    &[("B", "A", r)],
                )
            })
            .collect();
        let f = relation_frequencies(&rs);
        let e = &f[&("d".to_string(), "B".to_string(), "A".to_string())];
        assert_eq!(
            (
                e.attack.clone(),
                e.support.clone(),
                e.dependency.clone(),
                e.na.clone()
            ),
            (int(50), int(25), int(25), int(0))
        );
        assert!(relation_frequencies(&[]).is_empty());
    }

    #[test]
    fn belief_change() {
        let mut first = record("1", 1, &[("A", Agree), ("B", Agree)], &[]);
        let mut second = record("1", 2, &[("A", SomewhatAgree), ("B", Agree)], &[]);
        second.awareness = Some(BTreeSet::from(["B".to_string()]));
        let s = belief_change_summary(&[first.clone(), second.clone()]);
        assert_eq!(s.unaware_avg, Some(ratio(1, 6)));
        assert_eq!(s.aware_avg, Some(int(0)));

        second.awareness = Some(BTreeSet::new());
        let s = belief_change_summary(&[first.clone(), second.clone()]);
        assert_eq!(s.aware_avg, None);
        assert_eq!(s.unaware_avg, Some(ratio(1, 12)));

        first.agreement.insert("A".into(), SomewhatAgree);
        let s = belief_change_summary(&[first, second]);
        assert_eq!(s.unaware_avg, Some(int(0)));
    }
}
