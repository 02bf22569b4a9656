use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use argkit::bipolar::{augment_bipolar, augment_prudent, parse_kinds, AttackKind};
use argkit::constellation::{enumerate_subgraphs, SubgraphMode, DEFAULT_CAP};
use argkit::epistemic::{
    check_postulate, distinct_value_count, epistemic_labeling, is_congruent, parse_postulates,
    satisfied_postulates, BeliefAssignment, PostulateId,
};
use argkit::format::{
    framework_to_json, framework_to_text, parse_distribution, parse_document, parse_framework,
    parse_tripolar, tripolar_to_json, tripolar_to_text, FactKind, BIPOLAR,
};
use argkit::rational::format_rational;
use argkit::survey::{
    build_report, parse_dialogue, parse_responses, report_to_json, report_to_text, Pooling,
    ReportOptions,
};
use argkit::tripolar::{average_distances, distance, is_subgraph, SubgraphKind, TripolarGraph};
use argkit::{ArgumentFramework, Extension, Labeling, Semantics};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "argkit",
    version,
    about = "Argumentation graphs, semantics and survey analysis"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for sampling.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AugmentMode {
    Prudent,
    Bipolar,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the extensions of a framework.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "gr")]
        sem: Semantics,
        /// Report indirect attacks, defences and controversial pairs instead.
        #[arg(long)]
        relations: bool,
    },
    /// Enumerate labelings, or check one given as `A=in,B=out,...`.
    Labelings {
        file: PathBuf,
        #[arg(long, default_value = "co")]
        sem: Semantics,
        #[arg(long)]
        check: Option<String>,
    },
    /// Derived attacks of a bipolar framework and its Dung reduction.
    Bipolar {
        file: PathBuf,
        /// Comma-separated attack kinds, or `all`.
        #[arg(long, default_value = "all")]
        kinds: String,
        /// Also enumerate extensions of the reduced framework.
        #[arg(long)]
        sem: Option<Semantics>,
    },
    /// Augment a graph with flow-respecting indirect relations.
    Augment {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = AugmentMode::Prudent)]
        mode: AugmentMode,
        #[arg(long, default_value = "all")]
        kinds: String,
        #[arg(long, default_value_t = 1)]
        passes: usize,
    },
    /// Distance between two tripolar graphs, or average distances of several.
    Distance {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Also report which subgraph relations the first graph has to the second.
        #[arg(long)]
        subgraphs: bool,
    },
    /// Check epistemic postulates for beliefs (`bel`) or masses (`mass`).
    Postulates {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Comma-separated postulates, `all`, or VALn; default lists those satisfied.
        #[arg(long)]
        check: Option<String>,
    },
    /// Probabilities under a subgraph distribution.
    Constellation {
        file: PathBuf,
        #[arg(long, default_value = "gr")]
        sem: Semantics,
        #[arg(long, default_value = "general")]
        mode: SubgraphMode,
        /// Probability that this argument is accepted.
        #[arg(long, conflicts_with = "ext")]
        arg: Option<String>,
        /// Probability that this set, written `{A,B}`, is an extension.
        #[arg(long)]
        ext: Option<String>,
        /// Sum over labelings rather than counting each subgraph once.
        #[arg(long, requires = "arg")]
        per_labeling: bool,
        /// Estimate by sampling instead of computing exactly.
        #[arg(long, requires = "arg")]
        samples: Option<u64>,
        /// List the candidate subgraphs of the base framework.
        #[arg(long)]
        subgraphs: bool,
    },
    /// Analyse recorded survey responses.
    Survey {
        #[arg(long = "dialogue", required = true)]
        dialogues: Vec<PathBuf>,
        #[arg(long)]
        responses: PathBuf,
        #[arg(long, default_value = "all")]
        postulates: String,
        #[arg(long, default_value = "confusion")]
        core_kind: SubgraphKind,
        #[arg(long, default_value_t = 4)]
        core_threshold: usize,
        #[arg(long, default_value = "none")]
        agreement_pooling: Pooling,
        #[arg(long, default_value = "none")]
        relation_pooling: Pooling,
    },
}

/// A failure reported on standard error with exit status 1.
struct Failure {
    path: Option<PathBuf>,
    message: String,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            path: None,
            message: message.into(),
        }
    }

    fn in_file(path: &Path, err: argkit::Error) -> Self {
        let message = match err.line() {
            Some(line) if line > 0 => format!("line {line}: {}", strip_line(&err)),
            _ => err.to_string(),
        };
        Failure {
            path: Some(path.to_path_buf()),
            message,
        }
    }
}

fn strip_line(err: &argkit::Error) -> String {
    match err {
        argkit::Error::Parse { message, .. } => message.clone(),
        other => other.to_string(),
    }
}

impl From<argkit::Error> for Failure {
    fn from(e: argkit::Error) -> Self {
        Failure::new(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{}: {}", p.display(), self.message),
            None => f.write_str(&self.message),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        path: Some(path.to_path_buf()),
        message: e.to_string(),
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> argkit::Result<T>) -> Result<T, Failure> {
    let src = read(path)?;
    parse(&src).map_err(|e| Failure::in_file(path, e))
}

fn structured(value: Value) -> String {
    serde_json::to_string_pretty(&value).expect("json values serialize") + "\n"
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn ordered(af: &ArgumentFramework, e: &Extension) -> Vec<String> {
    af.arguments()
        .iter()
        .filter(|a| e.contains(*a))
        .cloned()
        .collect()
}

fn labeling_json(af: &ArgumentFramework, l: &Labeling) -> Value {
    let mut map = serde_json::Map::new();
    for a in af.arguments() {
        if let Some(label) = l.get(a) {
            map.insert(a.clone(), json!(label.to_string()));
        }
    }
    Value::Object(map)
}

fn extensions_output(af: &ArgumentFramework, sem: Semantics, format: Format) -> String {
    let exts = af.extensions(sem);
    match format {
        Format::Text => lines(exts.iter().map(|e| af.render_set(e))),
        Format::Structured => structured(json!({
            "semantics": sem.short_name(),
            "extensions": exts.iter().map(|e| ordered(af, e)).collect::<Vec<_>>(),
        })),
    }
}

fn solve(file: &Path, sem: Semantics, relations: bool, format: Format) -> Outcome {
    let af = load(file, parse_framework)?;
    if !relations {
        return Ok(extensions_output(&af, sem, format));
    }
    let mut rows = Vec::new();
    for a in af.arguments() {
        for b in af.arguments() {
            let r = af.indirect_relation(a, b)?;
            if r.attacks || r.defends {
                rows.push((a.clone(), b.clone(), r.attacks, r.defends));
            }
        }
    }
    Ok(match format {
        Format::Text => lines(rows.iter().map(|(a, b, att, def)| {
            let kind = match (att, def) {
                (true, true) => "controversial",
                (true, false) => "attacks",
                _ => "defends",
            };
            format!("{a},{b},{kind}")
        })),
        Format::Structured => structured(json!(rows
            .iter()
            .map(|(a, b, att, def)| json!({"from": a, "to": b, "attacks": att, "defends": def}))
            .collect::<Vec<_>>())),
    })
}

fn parse_labeling(spec: &str) -> Result<Labeling, Failure> {
    let mut l = Labeling::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (arg, label) = item
            .split_once(['=', ':'])
            .ok_or_else(|| Failure::new(format!("labeling entry `{item}` is not ARG=LABEL")))?;
        l.insert(arg.trim(), label.trim().parse()?);
    }
    Ok(l)
}

fn labelings(file: &Path, sem: Semantics, check: Option<&str>, format: Format) -> Outcome {
    let af = load(file, parse_framework)?;
    if let Some(spec) = check {
        let l = parse_labeling(spec)?;
        let ok = af.check_labeling(&l, sem)?;
        return Ok(match format {
            Format::Text => format!("{ok}\n"),
            Format::Structured => structured(json!({"semantics": sem.short_name(), "valid": ok})),
        });
    }
    let ls = af.labelings(sem);
    Ok(match format {
        Format::Text => lines(ls.iter().map(|l| l.to_string())),
        Format::Structured => structured(json!({
            "semantics": sem.short_name(),
            "labelings": ls.iter().map(|l| labeling_json(&af, l)).collect::<Vec<_>>(),
        })),
    })
}

fn bipolar(file: &Path, kinds: &str, sem: Option<Semantics>, format: Format) -> Outcome {
    let kinds = parse_kinds(kinds)?;
    let b = load(file, |src| parse_document(src, BIPOLAR)?.bipolar())?;
    let derived = b.indirect_attacks(&kinds);
    let reduced = b.to_dung(&kinds);
    Ok(match format {
        Format::Text => {
            let mut out = lines(derived.iter().map(|(k, (x, y))| format!("{k}({x},{y}).")));
            if let Some(sem) = sem {
                out += &extensions_output(&reduced, sem, format);
            }
            out
        }
        Format::Structured => {
            let mut v = json!({
                "derived": derived.iter().map(|(k, (x, y))| json!({"kind": k, "from": x, "to": y})).collect::<Vec<_>>(),
                "attacks": reduced.attacks().map(|(x, y)| [x, y]).collect::<Vec<_>>(),
            });
            if let Some(sem) = sem {
                v["semantics"] = json!(sem.short_name());
                v["extensions"] = json!(reduced
                    .extensions(sem)
                    .iter()
                    .map(|e| ordered(&reduced, e))
                    .collect::<Vec<_>>());
            }
            structured(v)
        }
    })
}

fn augment(file: &Path, mode: AugmentMode, kinds: &str, passes: usize, format: Format) -> Outcome {
    let kinds: BTreeSet<AttackKind> = parse_kinds(kinds)?;
    let doc = load(file, |src| {
        parse_document(
            src,
            &[
                FactKind::Arg,
                FactKind::Att,
                FactKind::Sup,
                FactKind::Dep,
                FactKind::Ord,
            ],
        )
    })?;
    let flow = doc
        .flow_order()
        .map_err(|e| Failure::in_file(file, e))?
        .ok_or_else(|| Failure {
            path: Some(file.to_path_buf()),
            message: "no `ord` facts give the flow order".into(),
        })?;
    let t = match mode {
        AugmentMode::Prudent => {
            if !doc.supports.is_empty() || !doc.dependencies.is_empty() {
                return Err(Failure::new(
                    "prudent augmentation takes an attack-only graph",
                ));
            }
            augment_prudent(&doc.framework(), &flow)?
        }
        AugmentMode::Bipolar => augment_bipolar(&doc.tripolar(), &kinds, &flow, passes)?,
    };
    Ok(match format {
        Format::Text => tripolar_to_text(&t, Some(&flow)),
        Format::Structured => tripolar_to_json(&t, Some(&flow)) + "\n",
    })
}

fn distances(files: &[PathBuf], subgraphs: bool, format: Format) -> Outcome {
    let graphs: Vec<TripolarGraph> = files
        .iter()
        .map(|f| load(f, parse_tripolar))
        .collect::<Result<_, _>>()?;
    if graphs.len() == 2 {
        let d = distance(&graphs[0], &graphs[1])?;
        let kinds: Vec<(SubgraphKind, bool)> = if subgraphs {
            SubgraphKind::ALL
                .iter()
                .map(|&k| (k, is_subgraph(&graphs[0], &graphs[1], k)))
                .collect()
        } else {
            Vec::new()
        };
        return Ok(match format {
            Format::Text => {
                let mut out = format!("{d}\n");
                out += &lines(kinds.iter().map(|(k, v)| format!("{},{v}", k.name())));
                out
            }
            Format::Structured => {
                let mut v = json!({"distance": d});
                if subgraphs {
                    v["subgraphs"] = Value::Object(
                        kinds
                            .iter()
                            .map(|(k, b)| (k.name().to_string(), json!(b)))
                            .collect(),
                    );
                    v["clarified"] = json!([graphs[0].is_clarified(), graphs[1].is_clarified()]);
                }
                structured(v)
            }
        });
    }
    let avg = average_distances(&graphs)?;
    Ok(match format {
        Format::Text => lines(files.iter().zip(&avg).map(|(f, a)| format!("{},{}", f.display(), format_rational(a)))),
        Format::Structured => structured(json!(files
            .iter()
            .zip(&avg)
            .map(|(f, a)| json!({"file": f.display().to_string(), "average_distance": format_rational(a)}))
            .collect::<Vec<_>>())),
    })
}

fn load_beliefs(path: &Path) -> Result<(ArgumentFramework, BeliefAssignment), Failure> {
    let kinds = [FactKind::Arg, FactKind::Att, FactKind::Bel, FactKind::Mass];
    let doc = load(path, |src| parse_document(src, &kinds))?;
    let af = doc.framework();
    let p = match (doc.beliefs.is_empty(), doc.masses.is_empty()) {
        (false, true) => doc.belief_assignment(),
        (true, false) => doc
            .mass_distribution(af.arguments().iter().cloned())
            .map(|m| m.beliefs()),
        (true, true) => Err(argkit::Error::Validation("no `bel` or `mass` facts".into())),
        (false, false) => Err(argkit::Error::Validation(
            "give either `bel` or `mass` facts, not both".into(),
        )),
    }
    .map_err(|e| Failure::in_file(path, e))?;
    Ok((af, p))
}

fn postulates(files: &[PathBuf], check: Option<&str>, format: Format) -> Outcome {
    let ids: Option<Vec<PostulateId>> = check.map(parse_postulates).transpose()?;
    let mut out = String::new();
    let mut reports = Vec::new();
    let mut assignments = Vec::new();
    for file in files {
        let (af, p) = load_beliefs(file)?;
        let results: Vec<(PostulateId, bool)> = match &ids {
            Some(ids) => ids
                .iter()
                .map(|&id| Ok((id, check_postulate(&af, &p, id)?)))
                .collect::<argkit::Result<_>>()?,
            None => satisfied_postulates(&af, &p)?
                .into_iter()
                .map(|id| (id, true))
                .collect(),
        };
        let labeling = epistemic_labeling(&p);
        let congruent = is_congruent(&labeling, &p);
        match format {
            Format::Text => {
                if files.len() > 1 {
                    out += &format!("# {}\n", file.display());
                }
                if ids.is_some() {
                    out += &lines(results.iter().map(|(id, ok)| format!("{id},{ok}")));
                } else {
                    out += &format!("{}\n", results.iter().map(|(id, _)| id.name()).collect::<Vec<_>>().join(","));
                }
                out += &format!("labeling,{labeling}\ncongruent,{congruent}\n");
            }
            Format::Structured => reports.push(json!({
                "file": file.display().to_string(),
                "postulates": Value::Object(results.iter().map(|(id, ok)| (id.name(), json!(ok))).collect()),
                "labeling": labeling_json(&af, &labeling),
                "congruent": congruent,
            })),
        }
        assignments.push(p);
    }
    let distinct = distinct_value_count(&assignments)?;
    Ok(match format {
        Format::Text => out + &format!("distinct_values,{distinct}\n"),
        Format::Structured => {
            structured(json!({"assignments": reports, "distinct_values": distinct}))
        }
    })
}

fn parse_set(text: &str) -> Result<Extension, Failure> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Failure::new(format!("`{text}` is not a set like {{A,B}}")))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn constellation(
    file: &Path,
    sem: Semantics,
    mode: SubgraphMode,
    arg: Option<&str>,
    ext: Option<&str>,
    per_labeling: bool,
    samples: Option<u64>,
    subgraphs: bool,
    cli: &Cli,
) -> Outcome {
    let d = load(file, |src| parse_distribution(src, mode))?;
    if subgraphs {
        let all = enumerate_subgraphs(d.base(), mode, DEFAULT_CAP)?;
        return Ok(match cli.format {
            Format::Text => all
                .iter()
                .enumerate()
                .map(|(i, g)| format!("% subgraph {}\n{}", i + 1, framework_to_text(g)))
                .collect(),
            Format::Structured => {
                let graphs: Vec<Value> = all
                    .iter()
                    .map(|g| serde_json::from_str(&framework_to_json(g)).unwrap())
                    .collect();
                structured(json!(graphs))
            }
        });
    }
    let (what, value) = match (arg, ext) {
        (Some(a), _) => match samples {
            Some(n) => (
                format!("estimate({a})"),
                d.estimate_prob_argument(a, sem, n, cli.seed, cli.jobs)?,
            ),
            None if per_labeling => (
                format!("per_labeling({a})"),
                d.prob_argument_in_per_labeling(a, sem)?,
            ),
            None => (format!("argument({a})"), d.prob_argument_in(a, sem)?),
        },
        (None, Some(e)) => {
            let set = parse_set(e)?;
            (
                format!("extension({})", e.trim()),
                d.prob_extension(&set, sem)?,
            )
        }
        (None, None) => return Err(Failure::new("give --arg, --ext or --subgraphs")),
    };
    Ok(match cli.format {
        Format::Text => format!("{}\n", format_rational(&value)),
        Format::Structured => structured(json!({
            "semantics": sem.short_name(),
            "query": what,
            "probability": format_rational(&value),
        })),
    })
}

#[allow(clippy::too_many_arguments)]
fn survey(
    dialogue_files: &[PathBuf],
    responses: &Path,
    postulates: &str,
    core_kind: SubgraphKind,
    core_threshold: usize,
    agreement_pooling: Pooling,
    relation_pooling: Pooling,
    cli: &Cli,
) -> Outcome {
    let dialogues = dialogue_files
        .iter()
        .map(|f| load(f, parse_dialogue))
        .collect::<Result<Vec<_>, _>>()?;
    let records = load(responses, |src| parse_responses(src, &dialogues))?;
    let options = ReportOptions {
        postulates: parse_postulates(postulates)?,
        core_kind,
        core_threshold,
        agreement_pooling,
        relation_pooling,
        jobs: cli.jobs,
    };
    let report = build_report(&dialogues, &records, &options)?;
    Ok(match cli.format {
        Format::Text => report_to_text(&report),
        Format::Structured => report_to_json(&report),
    })
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Solve {
            file,
            sem,
            relations,
        } => solve(file, *sem, *relations, format),
        Command::Labelings { file, sem, check } => labelings(file, *sem, check.as_deref(), format),
        Command::Bipolar { file, kinds, sem } => bipolar(file, kinds, *sem, format),
        Command::Augment {
            file,
            mode,
            kinds,
            passes,
        } => augment(file, *mode, kinds, *passes, format),
        Command::Distance { files, subgraphs } => distances(files, *subgraphs, format),
        Command::Postulates { files, check } => postulates(files, check.as_deref(), format),
        Command::Constellation {
            file,
            sem,
            mode,
            arg,
            ext,
            per_labeling,
            samples,
            subgraphs,
        } => constellation(
            file,
            *sem,
            *mode,
            arg.as_deref(),
            ext.as_deref(),
            *per_labeling,
            *samples,
            *subgraphs,
            cli,
        ),
        Command::Survey {
            dialogues,
            responses,
            postulates,
            core_kind,
            core_threshold,
            agreement_pooling,
            relation_pooling,
        } => survey(
            dialogues,
            responses,
            postulates,
            *core_kind,
            *core_threshold,
            *agreement_pooling,
            *relation_pooling,
            cli,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("argkit: {e}");
            ExitCode::from(1)
        }
    }
}
