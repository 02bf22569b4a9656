use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bipolar::FlowOrder;
use crate::epistemic::BeliefAssignment;
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::tripolar::{EdgeClass, TripolarGraph};

/// Identifier of the auxiliary statement carrying a participant's own
/// reasons in an expanded graph.
pub const AUXILIARY: &str = "P";

fn canonical(s: &str) -> String {
    s.trim().to_ascii_uppercase().replace(['-', ' '], "_")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AgreementLevel {
    StronglyAgree,
    Agree,
    SomewhatAgree,
    Neither,
    SomewhatDisagree,
    Disagree,
    StronglyDisagree,
    DontKnow,
}

impl AgreementLevel {
    pub const ALL: [AgreementLevel; 8] = [
        AgreementLevel::StronglyAgree,
        AgreementLevel::Agree,
        AgreementLevel::SomewhatAgree,
        AgreementLevel::Neither,
        AgreementLevel::SomewhatDisagree,
        AgreementLevel::Disagree,
        AgreementLevel::StronglyDisagree,
        AgreementLevel::DontKnow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgreementLevel::StronglyAgree => "STRONGLY_AGREE",
            AgreementLevel::Agree => "AGREE",
            AgreementLevel::SomewhatAgree => "SOMEWHAT_AGREE",
            AgreementLevel::Neither => "NEITHER",
            AgreementLevel::SomewhatDisagree => "SOMEWHAT_DISAGREE",
            AgreementLevel::Disagree => "DISAGREE",
            AgreementLevel::StronglyDisagree => "STRONGLY_DISAGREE",
            AgreementLevel::DontKnow => "DONT_KNOW",
        }
    }

    /// Sixths from 6/6 for strong agreement down to 0/6; don't-know counts
    /// as neither.
    pub fn belief(self) -> Rational {
        let sixths = match self {
            AgreementLevel::StronglyAgree => 6,
            AgreementLevel::Agree => 5,
            AgreementLevel::SomewhatAgree => 4,
            AgreementLevel::Neither | AgreementLevel::DontKnow => 3,
            AgreementLevel::SomewhatDisagree => 2,
            AgreementLevel::Disagree => 1,
            AgreementLevel::StronglyDisagree => 0,
        };
        ratio(sixths, 6)
    }
}

impl fmt::Display for AgreementLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgreementLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = canonical(s);
        AgreementLevel::ALL
            .into_iter()
            .find(|l| l.name() == c)
            .ok_or_else(|| Error::domain(format!("unknown agreement level `{s}`")))
    }
}

pub fn likert_to_belief(level: AgreementLevel) -> Rational {
    level.belief()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationAnswer {
    GoodAgainst,
    SomewhatAgainst,
    Dependent,
    SomewhatFor,
    GoodFor,
    Na,
}

impl RelationAnswer {
    pub const ALL: [RelationAnswer; 6] = [
        RelationAnswer::GoodAgainst,
        RelationAnswer::SomewhatAgainst,
        RelationAnswer::Dependent,
        RelationAnswer::SomewhatFor,
        RelationAnswer::GoodFor,
        RelationAnswer::Na,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationAnswer::GoodAgainst => "GOOD_AGAINST",
            RelationAnswer::SomewhatAgainst => "SOMEWHAT_AGAINST",
            RelationAnswer::Dependent => "DEPENDENT",
            RelationAnswer::SomewhatFor => "SOMEWHAT_FOR",
            RelationAnswer::GoodFor => "GOOD_FOR",
            RelationAnswer::Na => "NA",
        }
    }

    pub fn edge_class(self) -> Option<EdgeClass> {
        match self {
            RelationAnswer::GoodAgainst | RelationAnswer::SomewhatAgainst => {
                Some(EdgeClass::Attack)
            }
            RelationAnswer::GoodFor | RelationAnswer::SomewhatFor => Some(EdgeClass::Support),
            RelationAnswer::Dependent => Some(EdgeClass::Dependency),
            RelationAnswer::Na => None,
        }
    }
}

impl fmt::Display for RelationAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationAnswer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = canonical(s);
        let c = if c == "N/A" { "NA".to_string() } else { c };
        RelationAnswer::ALL
            .into_iter()
            .find(|r| r.name() == c)
            .ok_or_else(|| Error::domain(format!("unknown relation answer `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub id: String,
    pub step: u32,
    pub index: u32,
    pub speaker: String,
    pub text: String,
}

/// A dialogue: its statements in flow order, the intended graph at each
/// step and the relation questions asked at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueSpec {
    pub(crate) id: String,
    pub(crate) statements: Vec<Statement>,
    pub(crate) flow: FlowOrder,
    pub(crate) steps: u32,
    pub(crate) intended: BTreeMap<u32, TripolarGraph>,
    pub(crate) asked: BTreeMap<u32, Vec<(String, String)>>,
}

impl DialogueSpec {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn flow(&self) -> &FlowOrder {
        &self.flow
    }

    /// Number of steps; a statement stays visible from its step to the last.
    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn statement(&self, id: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.id == id)
    }

    /// Statements visible at `step`, in flow order.
    pub fn visible(&self, step: u32) -> Vec<&str> {
        self.statements
            .iter()
            .filter(|s| s.step <= step)
            .map(|s| s.id.as_str())
            .collect()
    }

    /// Relation questions at `step`: source later than target in the flow.
    pub fn asked(&self, step: u32) -> &[(String, String)] {
        self.asked.get(&step).map_or(&[], Vec::as_slice)
    }

    pub fn intended(&self, step: u32) -> Option<&TripolarGraph> {
        self.intended.get(&step)
    }
}

/// One participant's answers at one step of a dialogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponseRecord {
    pub participant: String,
    pub dialogue: String,
    pub step: u32,
    /// Statements visible at this step, in flow order.
    pub statements: Vec<String>,
    pub agreement: BTreeMap<String, AgreementLevel>,
    pub relations: BTreeMap<(String, String), RelationAnswer>,
    /// Statements the participant knew beforehand, when recorded (final step only).
    pub awareness: Option<BTreeSet<String>>,
    /// Coded edges involving the auxiliary statement, for the expanded graph.
    pub expanded: BTreeMap<(String, String), RelationAnswer>,
}

impl ResponseRecord {
    fn graph_from<'a>(
        arguments: Vec<String>,
        edges: impl Iterator<Item = (&'a (String, String), &'a RelationAnswer)>,
    ) -> Result<TripolarGraph> {
        let mut t = TripolarGraph::with_arguments(arguments)?;
        for (pair, answer) in edges {
            if let Some(class) = answer.edge_class() {
                t.insert(pair.clone(), class)?;
            }
        }
        Ok(t)
    }

    /// Attacks from answers against, supports from answers for, dependencies
    /// from dependent answers; NA gives no edge.
    pub fn declared_graph(&self) -> TripolarGraph {
        Self::graph_from(self.statements.clone(), self.relations.iter())
            .expect("records are validated against their dialogue")
    }

    /// The declared graph plus the auxiliary statement and its coded edges.
    /// Without coded edges this is the declared graph.
    pub fn expanded_graph(&self) -> Result<TripolarGraph> {
        if self.expanded.is_empty() {
            return Ok(self.declared_graph());
        }
        let mut args = self.statements.clone();
        args.push(AUXILIARY.to_string());
        Self::graph_from(args, self.relations.iter().chain(self.expanded.iter()))
    }

    pub fn beliefs(&self) -> BeliefAssignment {
        BeliefAssignment::new(self.agreement.iter().map(|(s, l)| (s.clone(), l.belief())))
            .expect("likert values are probabilities")
    }

    /// Beliefs over the expanded graph; the auxiliary statement is fully believed.
    pub fn expanded_beliefs(&self) -> BeliefAssignment {
        let mut values: Vec<(String, Rational)> = self
            .agreement
            .iter()
            .map(|(s, l)| (s.clone(), l.belief()))
            .collect();
        if !self.expanded.is_empty() {
            values.push((AUXILIARY.to_string(), int(1)));
        }
        BeliefAssignment::new(values).expect("likert values are probabilities")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn likert_mapping() {
        assert_eq!(likert_to_belief(AgreementLevel::StronglyAgree), int(1));
        assert_eq!(likert_to_belief(AgreementLevel::DontKnow), ratio(1, 2));
        assert_eq!(
            likert_to_belief(AgreementLevel::SomewhatDisagree),
            ratio(1, 3)
        );
        let values: BTreeSet<Rational> = AgreementLevel::ALL[..7]
            .iter()
            .map(|l| l.belief())
            .collect();
        assert_eq!(values.len(), 7);
    }

    #[test]
    fn answer_spellings() {
        assert_eq!(
            "strongly agree".parse::<AgreementLevel>().unwrap(),
            AgreementLevel::StronglyAgree
        );
        assert_eq!(
            "DONT_KNOW".parse::<AgreementLevel>().unwrap(),
            AgreementLevel::DontKnow
        );
        assert_eq!("N/A".parse::<RelationAnswer>().unwrap(), RelationAnswer::Na);
        assert_eq!(
            "somewhat-for".parse::<RelationAnswer>().unwrap(),
            RelationAnswer::SomewhatFor
        );
        assert!("maybe".parse::<RelationAnswer>().is_err());
    }

    fn record(answers: &[((&str, &str), RelationAnswer)]) -> ResponseRecord {
        ResponseRecord {
            participant: "p1".into(),
            dialogue: "d1".into(),
            step: 2,
            statements: vec!["A".into(), "B".into(), "C".into()],
            agreement: [
                ("A", AgreementLevel::Agree),
                ("B", AgreementLevel::Neither),
                ("C", AgreementLevel::Disagree),
            ]
            .into_iter()
            .map(|(s, l)| (s.to_string(), l))
            .collect(),
            relations: answers
                .iter()
                .map(|&((a, b), r)| ((a.to_string(), b.to_string()), r))
                .collect(),
            awareness: None,
            expanded: BTreeMap::new(),
        }
    }

    #[test]
    fn declared_graphs() {
        let r = record(&[
            (("B", "A"), RelationAnswer::GoodAgainst),
            (("C", "A"), RelationAnswer::Na),
        ]);
        let t = r.declared_graph();
        assert_eq!(t.attacks().len(), 1);
        assert!(t.is_clarified());
        let r = record(&[
            (("B", "A"), RelationAnswer::Dependent),
            (("C", "B"), RelationAnswer::SomewhatFor),
        ]);
        let t = r.declared_graph();
        assert!(!t.is_clarified());
        assert_eq!(t.supports().len(), 1);
    }

    #[test]
    fn expanded_graphs_add_the_auxiliary_statement() {
        let mut r = record(&[(("B", "A"), RelationAnswer::GoodAgainst)]);
        assert_eq!(r.expanded_graph().unwrap(), r.declared_graph());
        r.expanded
            .insert(("P".into(), "C".into()), RelationAnswer::GoodAgainst);
        let t = r.expanded_graph().unwrap();
        assert_eq!(t.arguments().len(), 4);
        assert_eq!(t.attacks().len(), 2);
        assert_eq!(r.expanded_beliefs().get("P"), Some(&int(1)));
    }
}
