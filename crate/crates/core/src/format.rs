//! Readers and writers for the fact-based graph text format and its
//! structured (JSON) alternative.
//!
//! A text document is a sequence of period-terminated facts such as
//! `arg(a).`, `att(a,b).`, `sup(a,b).`, `dep(a,b).`, `ord(a,1,2).`,
//! `bel(a,1/2).` and `mass({a,b},1/4).`. Facts may span lines; `%` and `#`
//! start comments that run to the end of the line.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bipolar::{BipolarFramework, FlowOrder};
use crate::constellation::{check_entry, SubgraphDistribution, SubgraphMode};
use crate::dung::{ArgumentFramework, Extension};
use crate::epistemic::{BeliefAssignment, MassDistribution};
use crate::error::{Error, Result};
use crate::rational::{format_rational, is_probability, parse_rational, Rational};
use crate::tripolar::{EdgeClass, TripolarGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Atom(String),
    Set(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub terms: Vec<Term>,
    pub line: usize,
}

/// Error at a source line; line 0 marks input without line information.
fn at(line: usize, msg: impl Into<String>) -> Error {
    if line == 0 {
        Error::Validation(msg.into())
    } else {
        Error::parse(line, msg)
    }
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

impl Scanner<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if c == Some('\n') {
            self.line += 1;
        }
        c
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' || c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_blank();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(Error::parse(
                self.line,
                format!("expected `{want}`, found `{c}`"),
            )),
            None => Err(Error::parse(
                self.line,
                format!("expected `{want}`, found end of input"),
            )),
        }
    }

    fn atom(&mut self) -> Result<String> {
        self.skip_blank();
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || "(),{}%".contains(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(Error::parse(
                self.line,
                format!("expected a term, found {found}"),
            ));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_blank();
        if self.peek() != Some('{') {
            return self.atom().map(Term::Atom);
        }
        self.bump();
        let mut items = Vec::new();
        self.skip_blank();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(Term::Set(items));
        }
        loop {
            items.push(self.atom()?);
            self.skip_blank();
            match self.bump() {
                Some(',') => continue,
                Some('}') => return Ok(Term::Set(items)),
                _ => return Err(Error::parse(self.line, "expected `,` or `}` in set")),
            }
        }
    }
}

/// Splits a text document into facts.
pub fn parse_facts(src: &str) -> Result<Vec<Fact>> {
    let mut sc = Scanner {
        chars: src.chars().peekable(),
        line: 1,
    };
    let mut facts = Vec::new();
    loop {
        sc.skip_blank();
        let Some(first) = sc.peek() else { break };
        let line = sc.line;
        if !first.is_ascii_alphabetic() {
            return Err(Error::parse(
                line,
                format!("expected a fact name, found `{first}`"),
            ));
        }
        let mut name = String::new();
        while let Some(c) = sc.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                sc.bump();
            } else {
                break;
            }
        }
        sc.skip_blank();
        let mut terms = Vec::new();
        if sc.peek() == Some('(') {
            sc.bump();
            loop {
                terms.push(sc.term()?);
                sc.skip_blank();
                match sc.bump() {
                    Some(',') => continue,
                    Some(')') => break,
                    _ => {
                        return Err(Error::parse(
                            sc.line,
                            format!("expected `,` or `)` in `{name}` fact"),
                        ))
                    }
                }
            }
        }
        sc.expect('.')?;
        facts.push(Fact {
            name: name.to_ascii_lowercase(),
            terms,
            line,
        });
    }
    Ok(facts)
}

/// The fact kinds a document may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactKind {
    Arg,
    Att,
    Sup,
    Dep,
    Ord,
    Bel,
    Mass,
}

impl FactKind {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "arg" => FactKind::Arg,
            "att" => FactKind::Att,
            "sup" => FactKind::Sup,
            "dep" => FactKind::Dep,
            "ord" => FactKind::Ord,
            "bel" => FactKind::Bel,
            "mass" => FactKind::Mass,
            _ => return None,
        })
    }
}

pub const GRAPH: &[FactKind] = &[FactKind::Arg, FactKind::Att];
pub const BIPOLAR: &[FactKind] = &[FactKind::Arg, FactKind::Att, FactKind::Sup];
pub const TRIPOLAR: &[FactKind] = &[FactKind::Arg, FactKind::Att, FactKind::Sup, FactKind::Dep];

/// A validated graph document. Every edge endpoint is a declared argument,
/// edge classes are disjoint and flow positions refer to known arguments.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub arguments: Vec<String>,
    pub attacks: Vec<(String, String)>,
    pub supports: Vec<(String, String)>,
    pub dependencies: Vec<(String, String)>,
    pub flow: Vec<(String, u32, u32)>,
    pub beliefs: Vec<(String, Rational)>,
    pub masses: Vec<(Extension, Rational)>,
}

fn atoms(fact: &Fact, arity: usize) -> Result<Vec<&str>> {
    if fact.terms.len() != arity {
        return Err(at(
            fact.line,
            format!(
                "`{}` takes {arity} argument(s), found {}",
                fact.name,
                fact.terms.len()
            ),
        ));
    }
    fact.terms
        .iter()
        .map(|t| match t {
            Term::Atom(a) => Ok(a.as_str()),
            Term::Set(_) => Err(at(fact.line, format!("unexpected set in `{}`", fact.name))),
        })
        .collect()
}

fn probability(text: &str, line: usize) -> Result<Rational> {
    let value = parse_rational(text)
        .ok_or_else(|| at(line, format!("`{text}` is not a rational number")))?;
    if !is_probability(&value) {
        return Err(at(line, format!("{text} is outside [0,1]")));
    }
    Ok(value)
}

fn positive(text: &str, line: usize) -> Result<u32> {
    match text.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(at(line, format!("`{text}` is not a positive integer"))),
    }
}

fn build_document(facts: &[Fact], allowed: &[FactKind]) -> Result<Document> {
    let mut doc = Document::default();
    let mut known = BTreeSet::new();
    let mut kinds = Vec::with_capacity(facts.len());
    for fact in facts {
        let kind = FactKind::from_name(&fact.name)
            .ok_or_else(|| at(fact.line, format!("unknown fact `{}`", fact.name)))?;
        if !allowed.contains(&kind) {
            return Err(at(
                fact.line,
                format!("`{}` facts are not accepted here", fact.name),
            ));
        }
        if kind == FactKind::Arg {
            let name = atoms(fact, 1)?[0];
            if !known.insert(name.to_string()) {
                return Err(at(fact.line, format!("duplicate argument `{name}`")));
            }
            doc.arguments.push(name.to_string());
        }
        kinds.push(kind);
    }
    let require = |name: &str, line: usize| -> Result<()> {
        if known.contains(name) {
            Ok(())
        } else {
            Err(at(line, format!("unknown argument `{name}`")))
        }
    };
    let mut classes: BTreeMap<(String, String), &str> = BTreeMap::new();
    let mut flow_args = BTreeSet::new();
    let mut belief_args = BTreeSet::new();
    for (fact, kind) in facts.iter().zip(kinds) {
        let line = fact.line;
        match kind {
            FactKind::Arg => {}
            FactKind::Att | FactKind::Sup | FactKind::Dep => {
                let t = atoms(fact, 2)?;
                require(t[0], line)?;
                require(t[1], line)?;
                let edge = (t[0].to_string(), t[1].to_string());
                match classes.get(&edge) {
                    Some(&c) if c == fact.name => continue,
                    Some(&c) => {
                        return Err(at(
                            line,
                            format!("edge ({},{}) is already declared by `{c}`", t[0], t[1]),
                        ))
                    }
                    None => {}
                }
                classes.insert(
                    edge.clone(),
                    if kind == FactKind::Att {
                        "att"
                    } else if kind == FactKind::Sup {
                        "sup"
                    } else {
                        "dep"
                    },
                );
                match kind {
                    FactKind::Att => doc.attacks.push(edge),
                    FactKind::Sup => doc.supports.push(edge),
                    _ => doc.dependencies.push(edge),
                }
            }
            FactKind::Ord => {
                let t = atoms(fact, 3)?;
                require(t[0], line)?;
                if !flow_args.insert(t[0].to_string()) {
                    return Err(at(line, format!("second flow position for `{}`", t[0])));
                }
                doc.flow.push((
                    t[0].to_string(),
                    positive(t[1], line)?,
                    positive(t[2], line)?,
                ));
            }
            FactKind::Bel => {
                let t = atoms(fact, 2)?;
                if !known.is_empty() {
                    require(t[0], line)?;
                }
                if !belief_args.insert(t[0].to_string()) {
                    return Err(at(line, format!("second belief for `{}`", t[0])));
                }
                doc.beliefs
                    .push((t[0].to_string(), probability(t[1], line)?));
            }
            FactKind::Mass => {
                let [Term::Set(members), Term::Atom(value)] = fact.terms.as_slice() else {
                    return Err(at(line, "`mass` takes a set and a probability"));
                };
                if !known.is_empty() {
                    for m in members {
                        require(m, line)?;
                    }
                }
                doc.masses
                    .push((members.iter().cloned().collect(), probability(value, line)?));
            }
        }
    }
    Ok(doc)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    arguments: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    attacks: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    supports: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    dependencies: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    flow: Vec<(String, u32, u32)>,
}

fn json_facts(src: &str) -> Result<Vec<Fact>> {
    let g: JsonGraph =
        serde_json::from_str(src).map_err(|e| Error::parse(e.line().max(1), e.to_string()))?;
    let fact = |name: &str, terms: Vec<String>| Fact {
        name: name.to_string(),
        terms: terms.into_iter().map(Term::Atom).collect(),
        line: 0,
    };
    let mut facts: Vec<Fact> = g
        .arguments
        .into_iter()
        .map(|a| fact("arg", vec![a]))
        .collect();
    for (name, edges) in [
        ("att", g.attacks),
        ("sup", g.supports),
        ("dep", g.dependencies),
    ] {
        facts.extend(edges.into_iter().map(|(a, b)| fact(name, vec![a, b])));
    }
    facts.extend(
        g.flow
            .into_iter()
            .map(|(a, s, i)| fact("ord", vec![a, s.to_string(), i.to_string()])),
    );
    Ok(facts)
}

/// Parses a graph document in either format, accepting only the given fact
/// kinds. A document whose first non-blank character is `{` is read as JSON.
pub fn parse_document(src: &str, allowed: &[FactKind]) -> Result<Document> {
    let facts = if src.trim_start().starts_with('{') {
        json_facts(src)?
    } else {
        parse_facts(src)?
    };
    build_document(&facts, allowed)
}

impl Document {
    pub fn framework(&self) -> ArgumentFramework {
        ArgumentFramework::new(
            self.arguments.iter().cloned(),
            self.attacks.iter().map(|(a, b)| (a, b)),
        )
        .expect("document validated")
    }

    pub fn bipolar(&self) -> Result<BipolarFramework> {
        if !self.dependencies.is_empty() {
            return Err(Error::domain(
                "bipolar frameworks cannot have dependency edges",
            ));
        }
        BipolarFramework::new(
            self.arguments.iter().cloned(),
            self.attacks.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            self.supports.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    pub fn tripolar(&self) -> TripolarGraph {
        TripolarGraph::new(
            self.arguments.iter().cloned(),
            self.attacks.iter().cloned(),
            self.supports.iter().cloned(),
            self.dependencies.iter().cloned(),
        )
        .expect("document validated")
    }

    /// The flow order, when the document gives one.
    pub fn flow_order(&self) -> Result<Option<FlowOrder>> {
        if self.flow.is_empty() {
            return Ok(None);
        }
        FlowOrder::new(self.flow.iter().cloned()).map(Some)
    }

    pub fn belief_assignment(&self) -> Result<BeliefAssignment> {
        BeliefAssignment::new(self.beliefs.iter().cloned())
    }

    pub fn mass_distribution<S: Into<String>>(
        &self,
        arguments: impl IntoIterator<Item = S>,
    ) -> Result<MassDistribution> {
        MassDistribution::new(arguments, self.masses.iter().cloned())
    }
}

pub fn parse_framework(src: &str) -> Result<ArgumentFramework> {
    Ok(parse_document(src, GRAPH)?.framework())
}

pub fn parse_tripolar(src: &str) -> Result<TripolarGraph> {
    Ok(parse_document(src, TRIPOLAR)?.tripolar())
}

pub fn parse_beliefs(src: &str) -> Result<BeliefAssignment> {
    parse_document(src, &[FactKind::Bel])?.belief_assignment()
}

/// Parses a subgraph distribution.
///
/// An optional prefix of `arg`/`att` facts closed by `base.` gives the base
/// framework. The rest is a sequence of blocks, each a subgraph written as
/// `arg`/`att` facts and closed by `prob(p).`. Without an explicit base, the
/// base is the union of all blocks.
pub fn parse_distribution(src: &str, mode: SubgraphMode) -> Result<SubgraphDistribution> {
    let facts = parse_facts(src)?;
    let base_end = facts.iter().position(|f| f.name == "base");
    let mut blocks: Vec<(Vec<Fact>, Rational, usize)> = Vec::new();
    let mut current = Vec::new();
    let start = base_end.map_or(0, |i| i + 1);
    for fact in &facts[start..] {
        match fact.name.as_str() {
            "prob" => {
                let value = atoms(fact, 1)?[0];
                blocks.push((
                    std::mem::take(&mut current),
                    probability(value, fact.line)?,
                    fact.line,
                ));
            }
            "arg" | "att" => current.push(fact.clone()),
            "base" => return Err(at(fact.line, "`base` may appear only once")),
            other => {
                return Err(at(
                    fact.line,
                    format!("`{other}` facts are not accepted in a distribution"),
                ))
            }
        }
    }
    if let Some(stray) = current.first() {
        return Err(at(stray.line, "subgraph facts after the last `prob` fact"));
    }
    if blocks.is_empty() {
        return Err(at(
            facts.last().map_or(1, |f| f.line),
            "distribution has no `prob` blocks",
        ));
    }
    let mut graphs = Vec::with_capacity(blocks.len());
    for (block, _, _) in &blocks {
        graphs.push(build_document(block, GRAPH)?.framework());
    }
    let base = match base_end {
        Some(i) => build_document(&facts[..i], GRAPH)?.framework(),
        None => {
            let mut base = ArgumentFramework::default();
            for g in &graphs {
                for a in g.arguments() {
                    if !base.contains(a) {
                        base.add_argument(a.clone())?;
                    }
                }
            }
            for g in &graphs {
                for (a, b) in g.attacks() {
                    base.add_attack(a, b)?;
                }
            }
            base
        }
    };
    let mut total = Rational::from_integer(0.into());
    for (g, (_, mass, line)) in graphs.iter().zip(&blocks) {
        check_entry(&base, g, mass, mode).map_err(|msg| at(*line, format!("subgraph {msg}")))?;
        total += mass;
    }
    let last_line = blocks.last().map_or(1, |b| b.2);
    if total != Rational::from_integer(1.into()) {
        return Err(at(
            last_line,
            format!("probabilities sum to {}, not 1", format_rational(&total)),
        ));
    }
    SubgraphDistribution::new(
        base,
        graphs.into_iter().zip(blocks.into_iter().map(|b| b.1)),
        mode,
    )
    .map_err(|e| at(last_line, e.to_string()))
}

fn push_edges(out: &mut String, name: &str, edges: &[(&str, &str)]) {
    for (a, b) in edges {
        out.push_str(&format!("{name}({a},{b}).\n"));
    }
}

pub fn framework_to_text(af: &ArgumentFramework) -> String {
    let mut out = String::new();
    for a in af.arguments() {
        out.push_str(&format!("arg({a}).\n"));
    }
    let edges: Vec<(&str, &str)> = af.attacks().collect();
    push_edges(&mut out, "att", &edges);
    out
}

/// Text form of a tripolar graph, with `ord` facts when a flow is given.
pub fn tripolar_to_text(t: &TripolarGraph, flow: Option<&FlowOrder>) -> String {
    let mut out = String::new();
    for a in t.arguments() {
        out.push_str(&format!("arg({a}).\n"));
    }
    push_edges(&mut out, "att", &t.ordered_edges(EdgeClass::Attack));
    push_edges(&mut out, "sup", &t.ordered_edges(EdgeClass::Support));
    push_edges(&mut out, "dep", &t.ordered_edges(EdgeClass::Dependency));
    if let Some(flow) = flow {
        for a in t.arguments() {
            if let Some((s, i)) = flow.position(a) {
                out.push_str(&format!("ord({a},{s},{i}).\n"));
            }
        }
    }
    out
}

fn owned(edges: Vec<(&str, &str)>) -> Vec<(String, String)> {
    edges
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

pub fn framework_to_json(af: &ArgumentFramework) -> String {
    let g = JsonGraph {
        arguments: af.arguments().to_vec(),
        attacks: owned(af.attacks().collect()),
        supports: Vec::new(),
        dependencies: Vec::new(),
        flow: Vec::new(),
    };
    serde_json::to_string_pretty(&g).expect("plain data serializes")
}

pub fn tripolar_to_json(t: &TripolarGraph, flow: Option<&FlowOrder>) -> String {
    let g = JsonGraph {
        arguments: t.arguments().to_vec(),
        attacks: owned(t.ordered_edges(EdgeClass::Attack)),
        supports: owned(t.ordered_edges(EdgeClass::Support)),
        dependencies: owned(t.ordered_edges(EdgeClass::Dependency)),
        flow: flow
            .map(|f| {
                t.arguments()
                    .iter()
                    .filter_map(|a| f.position(a).map(|(s, i)| (a.clone(), s, i)))
                    .collect()
            })
            .unwrap_or_default(),
    };
    serde_json::to_string_pretty(&g).expect("plain data serializes")
}
