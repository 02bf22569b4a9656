use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::analysis::{
    adherence_rates, common_graphs, core_sample, group_by_participant, participant_belief_change,
    relation_crosstab, relation_frequencies, summarize, BeliefChangeSummary, Direction, Pooling,
};
use super::model::{DialogueSpec, ResponseRecord};
use crate::dung::ArgumentFramework;
use crate::epistemic::{BeliefAssignment, PostulateId};
use crate::error::{Error, Result};
use crate::rational::{format_decimal, format_rational, int, Rational};
use crate::tripolar::{average_distances, EdgeClass, SubgraphKind, TripolarGraph};

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub postulates: Vec<PostulateId>,
    pub core_kind: SubgraphKind,
    pub core_threshold: usize,
    pub agreement_pooling: Pooling,
    pub relation_pooling: Pooling,
    pub jobs: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            postulates: PostulateId::CATALOG.to_vec(),
            core_kind: SubgraphKind::Confusion,
            core_threshold: 4,
            agreement_pooling: Pooling::None,
            relation_pooling: Pooling::None,
            jobs: 1,
        }
    }
}

fn exact<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

fn exact_opt<S: Serializer>(
    value: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&format_rational(v)),
        None => s.serialize_none(),
    }
}

fn exact_vec<S: Serializer>(values: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(format_rational))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub attacks: Vec<(String, String)>,
    pub supports: Vec<(String, String)>,
    pub dependencies: Vec<(String, String)>,
}

impl GraphSummary {
    fn new(t: &TripolarGraph) -> Self {
        let edges = |c| {
            t.ordered_edges(c)
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect()
        };
        GraphSummary {
            attacks: edges(EdgeClass::Attack),
            supports: edges(EdgeClass::Support),
            dependencies: edges(EdgeClass::Dependency),
        }
    }

    fn render(edges: &[(String, String)]) -> String {
        edges
            .iter()
            .map(|(a, b)| format!("{a}>{b}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceSummary {
    /// Average distance of each common graph, in the order of `common_graphs`.
    #[serde(serialize_with = "exact_vec")]
    pub common: Vec<Rational>,
    #[serde(serialize_with = "exact")]
    pub min: Rational,
    #[serde(serialize_with = "exact")]
    pub max: Rational,
    #[serde(serialize_with = "exact")]
    pub median: Rational,
    #[serde(serialize_with = "exact")]
    pub mean: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: u32,
    pub respondents: usize,
    pub common_count: usize,
    pub common_graphs: Vec<GraphSummary>,
    pub distances: Option<DistanceSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdherenceRow {
    pub sample: &'static str,
    pub graph: &'static str,
    pub postulate: String,
    pub participants: usize,
    #[serde(serialize_with = "exact")]
    pub mean: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosstabGroup {
    pub group: &'static str,
    pub total: u64,
    #[serde(serialize_with = "exact_vec")]
    pub percentages: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosstabReport {
    pub direction: Direction,
    pub agreement_pooling: Pooling,
    pub relation_pooling: Pooling,
    pub members: Vec<&'static str>,
    pub groups: Vec<CrosstabGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyRow {
    pub source: String,
    pub target: String,
    pub asked: u64,
    #[serde(serialize_with = "exact")]
    pub attack: Rational,
    #[serde(serialize_with = "exact")]
    pub support: Rational,
    #[serde(serialize_with = "exact")]
    pub dependency: Rational,
    #[serde(serialize_with = "exact")]
    pub na: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeliefChangeReport {
    #[serde(serialize_with = "exact_opt")]
    pub aware_avg: Option<Rational>,
    #[serde(serialize_with = "exact_opt")]
    pub unaware_avg: Option<Rational>,
    pub aware_participants: usize,
    pub unaware_participants: usize,
}

impl From<BeliefChangeSummary> for BeliefChangeReport {
    fn from(s: BeliefChangeSummary) -> Self {
        BeliefChangeReport {
            aware_avg: s.aware_avg,
            unaware_avg: s.unaware_avg,
            aware_participants: s.aware_participants,
            unaware_participants: s.unaware_participants,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DialogueReport {
    pub dialogue: String,
    pub participants: Vec<String>,
    pub core_sample: Vec<String>,
    pub steps: Vec<StepReport>,
    pub adherence: Vec<AdherenceRow>,
    pub crosstabs: Vec<CrosstabReport>,
    pub frequencies: Vec<FrequencyRow>,
    pub belief_change: BeliefChangeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub dialogues: Vec<DialogueReport>,
}

const GRAPH_KINDS: [&str; 4] = ["intended", "declared", "expanded", "common"];

struct ParticipantResult {
    participant: String,
    /// Adherence per graph kind; `None` when a step lacks that graph.
    adherence: Vec<Option<BTreeMap<PostulateId, Rational>>>,
    belief_change: (Option<Rational>, Option<Rational>),
}

fn participant_result(
    participant: &str,
    records: &[&ResponseRecord],
    spec: &DialogueSpec,
    common: &BTreeMap<u32, TripolarGraph>,
    postulates: &[PostulateId],
) -> Result<ParticipantResult> {
    let mut adherence = Vec::new();
    for kind in GRAPH_KINDS {
        let mut beliefs: Vec<BeliefAssignment> = Vec::new();
        let mut graphs: Vec<ArgumentFramework> = Vec::new();
        let mut complete = true;
        for r in records {
            let (p, g) = match kind {
                "intended" => (
                    r.beliefs(),
                    spec.intended(r.step).map(TripolarGraph::attack_framework),
                ),
                "declared" => (r.beliefs(), Some(r.declared_graph().attack_framework())),
                "expanded" => (
                    r.expanded_beliefs(),
                    Some(r.expanded_graph()?.attack_framework()),
                ),
                _ => (
                    r.beliefs(),
                    common.get(&r.step).map(TripolarGraph::attack_framework),
                ),
            };
            match g {
                Some(g) => {
                    beliefs.push(p);
                    graphs.push(g);
                }
                None => complete = false,
            }
        }
        adherence.push(if complete {
            Some(adherence_rates(&beliefs, &graphs, postulates)?)
        } else {
            None
        });
    }
    Ok(ParticipantResult {
        participant: participant.to_string(),
        adherence,
        belief_change: participant_belief_change(records),
    })
}

fn median(sorted: &[Rational]) -> Rational {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2].clone()
    } else {
        (&sorted[n / 2 - 1] + &sorted[n / 2]) / int(2)
    }
}

fn step_report(
    records: &[ResponseRecord],
    step: u32,
) -> Result<Option<(StepReport, TripolarGraph)>> {
    let at_step: Vec<ResponseRecord> = records.iter().filter(|r| r.step == step).cloned().collect();
    if at_step.is_empty() {
        return Ok(None);
    }
    let (graphs, count) = common_graphs(&at_step, step)?;
    let declared: Vec<TripolarGraph> = at_step.iter().map(ResponseRecord::declared_graph).collect();
    let distances = if declared.len() >= 2 {
        let avg = average_distances(&declared)?;
        let common = graphs
            .iter()
            .map(|g| {
                let i = declared
                    .iter()
                    .position(|d| d == g)
                    .expect("common graph is declared");
                avg[i].clone()
            })
            .collect();
        let mut sorted = avg.clone();
        sorted.sort();
        let mean = avg.iter().sum::<Rational>() / int(avg.len() as i64);
        Some(DistanceSummary {
            common,
            min: sorted[0].clone(),
            max: sorted[sorted.len() - 1].clone(),
            median: median(&sorted),
            mean,
        })
    } else {
        None
    };
    let first = graphs[0].clone();
    let report = StepReport {
        step,
        respondents: at_step.len(),
        common_count: count,
        common_graphs: graphs.iter().map(GraphSummary::new).collect(),
        distances,
    };
    Ok(Some((report, first)))
}

fn mean_rate(results: &[&ParticipantResult], kind: usize, id: PostulateId) -> (usize, Rational) {
    let rates: Vec<&Rational> = results
        .iter()
        .filter_map(|r| r.adherence[kind].as_ref().map(|m| &m[&id]))
        .collect();
    if rates.is_empty() {
        return (0, int(0));
    }
    let n = rates.len();
    (n, rates.into_iter().sum::<Rational>() / int(n as i64))
}

fn dialogue_report(
    spec: &DialogueSpec,
    records: &[ResponseRecord],
    options: &ReportOptions,
) -> Result<DialogueReport> {
    let mut steps = Vec::new();
    let mut common = BTreeMap::new();
    for step in 1..=spec.steps() {
        if let Some((report, first)) = step_report(records, step)? {
            steps.push(report);
            common.insert(step, first);
        }
    }

    let groups: Vec<(&str, Vec<&ResponseRecord>)> = group_by_participant(records)
        .into_iter()
        .map(|((p, _), rs)| (p, rs))
        .collect();
    let results: Vec<ParticipantResult> = groups
        .par_iter()
        .map(|(p, rs)| participant_result(p, rs, spec, &common, &options.postulates))
        .collect::<Result<_>>()?;

    let core: Vec<String> = core_sample(
        records,
        std::slice::from_ref(spec),
        options.core_kind,
        options.core_threshold,
    )
    .into_iter()
    .map(|(p, _)| p)
    .collect();
    let mut adherence = Vec::new();
    for (sample, members) in [
        ("total", results.iter().collect::<Vec<_>>()),
        (
            "core",
            results
                .iter()
                .filter(|r| core.contains(&r.participant))
                .collect(),
        ),
    ] {
        for (k, graph) in GRAPH_KINDS.into_iter().enumerate() {
            for &id in &options.postulates {
                let (participants, mean) = mean_rate(&members, k, id);
                adherence.push(AdherenceRow {
                    sample,
                    graph,
                    postulate: id.name(),
                    participants,
                    mean,
                });
            }
        }
    }

    let crosstabs = [Direction::ByRelation, Direction::BySource]
        .into_iter()
        .map(|direction| {
            let t = relation_crosstab(
                records,
                direction,
                options.agreement_pooling,
                options.relation_pooling,
            );
            CrosstabReport {
                direction,
                agreement_pooling: options.agreement_pooling,
                relation_pooling: options.relation_pooling,
                members: t.members().to_vec(),
                groups: (0..t.groups().len())
                    .map(|g| CrosstabGroup {
                        group: t.groups()[g],
                        total: t.group_total(g),
                        percentages: t.percentages(g),
                    })
                    .collect(),
            }
        })
        .collect();

    let frequencies = relation_frequencies(records)
        .into_iter()
        .map(|((_, source, target), f)| FrequencyRow {
            source,
            target,
            asked: f.asked,
            attack: f.attack,
            support: f.support,
            dependency: f.dependency,
            na: f.na,
        })
        .collect();

    let per: Vec<_> = results.iter().map(|r| r.belief_change.clone()).collect();
    Ok(DialogueReport {
        dialogue: spec.id().to_string(),
        participants: results.iter().map(|r| r.participant.clone()).collect(),
        core_sample: core,
        steps,
        adherence,
        crosstabs,
        frequencies,
        belief_change: summarize(&per).into(),
    })
}

/// Runs every analysis on the records of each dialogue that has responses.
/// Per-participant work is spread over `options.jobs` threads; the report
/// does not depend on the thread count.
pub fn build_report(
    dialogues: &[DialogueSpec],
    records: &[ResponseRecord],
    options: &ReportOptions,
) -> Result<SurveyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        let mut out = Vec::new();
        for spec in dialogues {
            let rs: Vec<ResponseRecord> = records
                .iter()
                .filter(|r| r.dialogue == spec.id())
                .cloned()
                .collect();
            if !rs.is_empty() {
                out.push(dialogue_report(spec, &rs, options)?);
            }
        }
        Ok(SurveyReport { dialogues: out })
    })
}

/// Comma-separated rendering: exact rationals everywhere except
/// percentages, which are shown to two decimals.
pub fn report_to_text(report: &SurveyReport) -> String {
    let mut out = String::new();
    let opt = |v: &Option<Rational>| v.as_ref().map_or_else(|| "NA".to_string(), format_rational);
    for d in &report.dialogues {
        let id = &d.dialogue;
        let _ = writeln!(out, "participants,{id},{}", d.participants.len());
        let _ = writeln!(
            out,
            "core_sample,{id},{},{}",
            d.core_sample.len(),
            d.core_sample.join(";")
        );
        for s in &d.steps {
            let _ = writeln!(
                out,
                "step,{id},{},respondents,{},common_count,{}",
                s.step, s.respondents, s.common_count
            );
            for (i, g) in s.common_graphs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "common_graph,{id},{},{},{},{},{}",
                    s.step,
                    i + 1,
                    GraphSummary::render(&g.attacks),
                    GraphSummary::render(&g.supports),
                    GraphSummary::render(&g.dependencies)
                );
            }
            if let Some(dist) = &s.distances {
                let common: Vec<String> = dist.common.iter().map(format_rational).collect();
                let _ = writeln!(
                    out,
                    "distance,{id},{},{},{},{},{},{}",
                    s.step,
                    common.join(";"),
                    format_rational(&dist.min),
                    format_rational(&dist.max),
                    format_rational(&dist.median),
                    format_rational(&dist.mean)
                );
            }
        }
        for a in &d.adherence {
            let _ = writeln!(
                out,
                "adherence,{id},{},{},{},{},{}",
                a.sample,
                a.graph,
                a.postulate,
                a.participants,
                format_rational(&a.mean)
            );
        }
        for t in &d.crosstabs {
            for g in &t.groups {
                let cells: Vec<String> = t
                    .members
                    .iter()
                    .zip(&g.percentages)
                    .map(|(m, p)| format!("{m}={}", format_decimal(p, 2)))
                    .collect();
                let _ = writeln!(
                    out,
                    "crosstab,{id},{},{},{},{}",
                    t.direction,
                    g.group,
                    g.total,
                    cells.join(";")
                );
            }
        }
        for f in &d.frequencies {
            let _ = writeln!(
                out,
                "frequency,{id},{},{},{},{},{},{},{}",
                f.source,
                f.target,
                f.asked,
                format_decimal(&f.attack, 2),
                format_decimal(&f.support, 2),
                format_decimal(&f.dependency, 2),
                format_decimal(&f.na, 2)
            );
        }
        let b = &d.belief_change;
        let _ = writeln!(
            out,
            "belief_change,{id},{},{},{},{}",
            opt(&b.aware_avg),
            b.aware_participants,
            opt(&b.unaware_avg),
            b.unaware_participants
        );
    }
    out
}

pub fn report_to_json(report: &SurveyReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}
