//! Tripolar graphs (attack, support and dependency edges), the subgraph
//! relations between them, and the edge-difference distance.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dung::ArgumentFramework;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Edge = (String, String);

/// The class of a directed edge in a tripolar graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Attack,
    Support,
    Dependency,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeClass::Attack => "attack",
            EdgeClass::Support => "support",
            EdgeClass::Dependency => "dependency",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgraphKind {
    Correct,
    Confusion,
    Precision,
    Lenient,
}

impl SubgraphKind {
    pub const ALL: [SubgraphKind; 4] = [
        SubgraphKind::Correct,
        SubgraphKind::Confusion,
        SubgraphKind::Precision,
        SubgraphKind::Lenient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubgraphKind::Correct => "correct",
            SubgraphKind::Confusion => "confusion",
            SubgraphKind::Precision => "precision",
            SubgraphKind::Lenient => "lenient",
        }
    }
}

impl fmt::Display for SubgraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubgraphKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown subgraph kind `{s}`")))
    }
}

/// Arguments with pairwise disjoint attack, support and dependency relations.
///
/// Equality compares the argument list in order along with the three edge sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripolarGraph {
    arguments: Vec<String>,
    attacks: BTreeSet<Edge>,
    supports: BTreeSet<Edge>,
    dependencies: BTreeSet<Edge>,
}

impl TripolarGraph {
    pub fn new<A, S>(
        arguments: A,
        attacks: impl IntoIterator<Item = Edge>,
        supports: impl IntoIterator<Item = Edge>,
        dependencies: impl IntoIterator<Item = Edge>,
    ) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut graph = Self::with_arguments(arguments)?;
        for edge in attacks {
            graph.insert(edge, EdgeClass::Attack)?;
        }
        for edge in supports {
            graph.insert(edge, EdgeClass::Support)?;
        }
        for edge in dependencies {
            graph.insert(edge, EdgeClass::Dependency)?;
        }
        Ok(graph)
    }

    pub fn with_arguments<A, S>(arguments: A) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut graph = Self::default();
        for arg in arguments {
            let arg = arg.into();
            if graph.arguments.contains(&arg) {
                return Err(Error::DuplicateArgument(arg));
            }
            graph.arguments.push(arg);
        }
        Ok(graph)
    }

    /// The attack graph of a Dung framework, with no supports or dependencies.
    pub fn from_framework(af: &ArgumentFramework) -> Self {
        Self {
            arguments: af.arguments().to_vec(),
            attacks: af
                .attacks()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            supports: BTreeSet::new(),
            dependencies: BTreeSet::new(),
        }
    }

    /// Adds an edge. Re-adding an edge of the same class is a no-op; an edge
    /// already present with another class is rejected.
    pub fn insert(&mut self, edge: Edge, class: EdgeClass) -> Result<()> {
        for end in [&edge.0, &edge.1] {
            if !self.contains(end) {
                return Err(Error::UnknownArgument(end.clone()));
            }
        }
        match self.class_of(&edge.0, &edge.1) {
            Some(existing) if existing == class => Ok(()),
            Some(_) => Err(Error::OverlappingRelation(edge.0, edge.1)),
            None => {
                self.edges_mut(class).insert(edge);
                Ok(())
            }
        }
    }

    fn edges_mut(&mut self, class: EdgeClass) -> &mut BTreeSet<Edge> {
        match class {
            EdgeClass::Attack => &mut self.attacks,
            EdgeClass::Support => &mut self.supports,
            EdgeClass::Dependency => &mut self.dependencies,
        }
    }

    pub fn edges(&self, class: EdgeClass) -> &BTreeSet<Edge> {
        match class {
            EdgeClass::Attack => &self.attacks,
            EdgeClass::Support => &self.supports,
            EdgeClass::Dependency => &self.dependencies,
        }
    }

    pub fn arguments(&self) -> &[String] {
        &self.arguments
    }

    pub fn contains(&self, arg: &str) -> bool {
        self.arguments.iter().any(|a| a == arg)
    }

    pub fn attacks(&self) -> &BTreeSet<Edge> {
        &self.attacks
    }

    pub fn supports(&self) -> &BTreeSet<Edge> {
        &self.supports
    }

    pub fn dependencies(&self) -> &BTreeSet<Edge> {
        &self.dependencies
    }

    pub fn class_of(&self, from: &str, to: &str) -> Option<EdgeClass> {
        let key = (from.to_string(), to.to_string());
        [EdgeClass::Attack, EdgeClass::Support, EdgeClass::Dependency]
            .into_iter()
            .find(|&c| self.edges(c).contains(&key))
    }

    pub fn is_clarified(&self) -> bool {
        self.dependencies.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.attacks.len() + self.supports.len() + self.dependencies.len()
    }

    /// Every edge of every class, ordered by pair then class.
    pub fn all_edges(&self) -> BTreeSet<(Edge, EdgeClass)> {
        [EdgeClass::Attack, EdgeClass::Support, EdgeClass::Dependency]
            .into_iter()
            .flat_map(|c| self.edges(c).iter().map(move |e| (e.clone(), c)))
            .collect()
    }

    /// The Dung framework formed by the arguments and attacks alone.
    pub fn attack_framework(&self) -> ArgumentFramework {
        ArgumentFramework::new(
            self.arguments.iter().cloned(),
            self.attacks.iter().map(|(a, b)| (a, b)),
        )
        .expect("tripolar graph invariants guarantee a valid framework")
    }

    /// Edges of a class ordered by the position of their endpoints in the
    /// argument list.
    pub fn ordered_edges(&self, class: EdgeClass) -> Vec<(&str, &str)> {
        let pos = |a: &str| {
            self.arguments
                .iter()
                .position(|x| x == a)
                .unwrap_or(usize::MAX)
        };
        let mut edges: Vec<(&str, &str)> = self
            .edges(class)
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        edges.sort_by_key(|&(a, b)| (pos(a), pos(b)));
        edges
    }

    fn argument_set(&self) -> BTreeSet<&str> {
        self.arguments.iter().map(String::as_str).collect()
    }

    fn same_arguments(&self, other: &Self) -> bool {
        self.argument_set() == other.argument_set()
    }
}

fn union<'a>(sets: &[&'a BTreeSet<Edge>]) -> BTreeSet<&'a Edge> {
    sets.iter().flat_map(|s| s.iter()).collect()
}

fn included(sub: &BTreeSet<Edge>, sup: &[&BTreeSet<Edge>]) -> bool {
    sub.iter().all(|e| sup.iter().any(|s| s.contains(e)))
}

/// Whether `sub` is a `kind` subgraph of `sup`.
pub fn is_subgraph(sub: &TripolarGraph, sup: &TripolarGraph, kind: SubgraphKind) -> bool {
    if !sub.argument_set().is_subset(&sup.argument_set()) {
        return false;
    }
    let (a2, s2, d2) = (&sup.attacks, &sup.supports, &sup.dependencies);
    match kind {
        SubgraphKind::Correct => {
            included(&sub.attacks, &[a2])
                && included(&sub.supports, &[s2])
                && included(&sub.dependencies, &[d2])
        }
        SubgraphKind::Confusion => {
            included(&sub.attacks, &[a2, d2])
                && included(&sub.supports, &[s2, d2])
                && included(&sub.dependencies, &[d2])
        }
        SubgraphKind::Precision => {
            included(&sub.attacks, &[a2])
                && included(&sub.supports, &[s2])
                && included(&sub.dependencies, &[d2, a2, s2])
        }
        SubgraphKind::Lenient => union(&[&sub.attacks, &sub.supports, &sub.dependencies])
            .is_subset(&union(&[a2, s2, d2])),
    }
}

fn class_diff(x: Option<EdgeClass>, y: Option<EdgeClass>) -> u64 {
    use EdgeClass::*;
    match (x, y) {
        (None, None) => 0,
        (Some(a), Some(b)) if a == b => 0,
        (None, Some(Dependency)) | (Some(Dependency), None) => 1,
        (None, Some(_)) | (Some(_), None) => 2,
        (Some(Dependency), Some(_)) | (Some(_), Some(Dependency)) => 1,
        (Some(_), Some(_)) => 2,
    }
}

fn require_same_arguments(t1: &TripolarGraph, t2: &TripolarGraph) -> Result<()> {
    if t1.same_arguments(t2) {
        Ok(())
    } else {
        Err(Error::domain(
            "graphs are not defined over the same set of arguments",
        ))
    }
}

/// Difference between the two graphs on a single ordered pair: 0, 1 or 2.
pub fn edge_diff(t1: &TripolarGraph, t2: &TripolarGraph, edge: (&str, &str)) -> Result<u64> {
    require_same_arguments(t1, t2)?;
    Ok(class_diff(
        t1.class_of(edge.0, edge.1),
        t2.class_of(edge.0, edge.1),
    ))
}

/// Sum of edge differences over every pair related in either graph.
pub fn distance(t1: &TripolarGraph, t2: &TripolarGraph) -> Result<u64> {
    require_same_arguments(t1, t2)?;
    let pairs: BTreeSet<&Edge> = union(&[
        &t1.attacks,
        &t1.supports,
        &t1.dependencies,
        &t2.attacks,
        &t2.supports,
        &t2.dependencies,
    ]);
    Ok(pairs
        .into_iter()
        .map(|(a, b)| class_diff(t1.class_of(a, b), t2.class_of(a, b)))
        .sum())
}

/// For each graph, its mean distance to the other graphs in the list.
pub fn average_distances(graphs: &[TripolarGraph]) -> Result<Vec<Rational>> {
    let n = graphs.len();
    if n < 2 {
        return Err(Error::domain("average distance needs at least two graphs"));
    }
    let mut matrix = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(&graphs[i], &graphs[j])?;
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    Ok(matrix
        .iter()
        .map(|row| Rational::new(row.iter().sum::<u64>().into(), ((n - 1) as u64).into()))
        .collect())
}
