use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use super::model::{
    AgreementLevel, DialogueSpec, RelationAnswer, ResponseRecord, Statement, AUXILIARY,
};
use crate::bipolar::FlowOrder;
use crate::error::{Error, Result};
use crate::tripolar::{EdgeClass, TripolarGraph};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDialogue {
    dialogue: String,
    statements: Vec<(String, u32, u32, String, String)>,
    #[serde(default)]
    intended: BTreeMap<u32, RawEdges>,
    #[serde(default)]
    asked: Option<BTreeMap<u32, Vec<(String, String)>>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawEdges {
    #[serde(default)]
    attacks: Vec<(String, String)>,
    #[serde(default)]
    supports: Vec<(String, String)>,
    #[serde(default)]
    dependencies: Vec<(String, String)>,
}

/// Reads a dialogue description from JSON.
pub fn parse_dialogue(src: &str) -> Result<DialogueSpec> {
    let raw: RawDialogue =
        serde_json::from_str(src).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    if raw.statements.is_empty() {
        return Err(Error::validation("dialogue has no statements"));
    }
    let flow = FlowOrder::new(raw.statements.iter().map(|s| (s.0.clone(), s.1, s.2)))?;
    if flow.position(AUXILIARY).is_some() {
        return Err(Error::validation(format!(
            "`{AUXILIARY}` is reserved for the auxiliary statement"
        )));
    }
    let mut statements: Vec<Statement> = raw
        .statements
        .into_iter()
        .map(|(id, step, index, speaker, text)| Statement {
            id,
            step,
            index,
            speaker,
            text,
        })
        .collect();
    statements.sort_by_key(|s| (s.step, s.index));
    let steps = statements.iter().map(|s| s.step).max().unwrap_or(0);
    let mut spec = DialogueSpec {
        id: raw.dialogue,
        statements,
        flow,
        steps,
        intended: BTreeMap::new(),
        asked: BTreeMap::new(),
    };

    for (step, edges) in raw.intended {
        check_step(&spec, step)?;
        let mut t = TripolarGraph::with_arguments(spec.visible(step))?;
        for (list, class) in [
            (edges.attacks, EdgeClass::Attack),
            (edges.supports, EdgeClass::Support),
            (edges.dependencies, EdgeClass::Dependency),
        ] {
            for (a, b) in list {
                for x in [&a, &b] {
                    if !t.contains(x) {
                        return Err(Error::validation(format!(
                            "intended edge ({a},{b}) at step {step}: `{x}` is not visible"
                        )));
                    }
                }
                t.insert((a, b), class)?;
            }
        }
        spec.intended.insert(step, t);
    }

    match raw.asked {
        Some(asked) => {
            for (step, pairs) in asked {
                check_step(&spec, step)?;
                let visible: BTreeSet<&str> = spec.visible(step).into_iter().collect();
                let mut seen = BTreeSet::new();
                for (a, b) in &pairs {
                    if !visible.contains(a.as_str()) || !visible.contains(b.as_str()) {
                        return Err(Error::validation(format!(
                            "asked pair ({a},{b}) at step {step} is not visible"
                        )));
                    }
                    if !spec.flow.is_later(a, b) {
                        return Err(Error::validation(format!(
                            "asked pair ({a},{b}) does not run from a later to an earlier statement"
                        )));
                    }
                    if !seen.insert((a.clone(), b.clone())) {
                        return Err(Error::validation(format!(
                            "asked pair ({a},{b}) repeated at step {step}"
                        )));
                    }
                }
                spec.asked.insert(step, pairs);
            }
        }
        None => {
            for step in 1..=spec.steps {
                let visible = spec.visible(step);
                let mut pairs = Vec::new();
                for (i, a) in visible.iter().enumerate() {
                    for b in &visible[..i] {
                        pairs.push((a.to_string(), b.to_string()));
                    }
                }
                spec.asked.insert(step, pairs);
            }
        }
    }
    Ok(spec)
}

fn check_step(spec: &DialogueSpec, step: u32) -> Result<()> {
    if step == 0 || step > spec.steps {
        return Err(Error::validation(format!(
            "step {step} outside 1..={} in dialogue `{}`",
            spec.steps, spec.id
        )));
    }
    Ok(())
}

#[derive(Default)]
struct Pending {
    line: usize,
    agreement: BTreeMap<String, AgreementLevel>,
    relations: BTreeMap<(String, String), RelationAnswer>,
    awareness: BTreeMap<String, bool>,
    expanded: BTreeMap<(String, String), RelationAnswer>,
}

/// Reads response rows `participant,dialogue,step,kind,subject,object,answer`.
///
/// `kind` is one of `agreement`, `relation`, `awareness` or `expanded`; a
/// leading header row is skipped. Records come back sorted by participant,
/// dialogue and step.
pub fn parse_responses(src: &str, dialogues: &[DialogueSpec]) -> Result<Vec<ResponseRecord>> {
    let by_id: BTreeMap<&str, &DialogueSpec> = dialogues.iter().map(|d| (d.id(), d)).collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(src.as_bytes());
    let mut pending: BTreeMap<(String, String, u32), Pending> = BTreeMap::new();

    for (n, row) in reader.records().enumerate() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if n == 0
            && row
                .get(0)
                .is_some_and(|f| f.eq_ignore_ascii_case("participant"))
        {
            continue;
        }
        if row.len() != 7 {
            return Err(Error::parse(
                line,
                format!("expected 7 fields, found {}", row.len()),
            ));
        }
        let field = |i: usize| row.get(i).unwrap_or("");
        let (participant, dialogue, step, kind, subject, object, answer) = (
            field(0),
            field(1),
            field(2),
            field(3),
            field(4),
            field(5),
            field(6),
        );
        if participant.is_empty() {
            return Err(Error::parse(line, "empty participant"));
        }
        let spec = by_id
            .get(dialogue)
            .ok_or_else(|| Error::parse(line, format!("unknown dialogue `{dialogue}`")))?;
        let step: u32 = step
            .parse()
            .ok()
            .filter(|s| (1..=spec.steps()).contains(s))
            .ok_or_else(|| {
                Error::parse(
                    line,
                    format!("invalid step `{step}` for dialogue `{dialogue}`"),
                )
            })?;
        let visible: BTreeSet<&str> = spec.visible(step).into_iter().collect();
        let entry = pending
            .entry((participant.to_string(), dialogue.to_string(), step))
            .or_insert_with(|| Pending {
                line,
                ..Pending::default()
            });
        let err = |msg: String| Error::parse(line, msg);
        let require_visible = |s: &str| {
            if visible.contains(s) {
                Ok(())
            } else {
                Err(err(format!(
                    "statement `{s}` is not visible at step {step}"
                )))
            }
        };

        match kind.to_ascii_lowercase().as_str() {
            "agreement" | "awareness" if !object.is_empty() => {
                return Err(err(format!("{kind} rows take no object")));
            }
            "agreement" => {
                require_visible(subject)?;
                let level: AgreementLevel =
                    answer.parse().map_err(|e: Error| err(e.to_string()))?;
                if entry.agreement.insert(subject.to_string(), level).is_some() {
                    return Err(err(format!("agreement with `{subject}` given twice")));
                }
            }
            "awareness" => {
                require_visible(subject)?;
                if step != spec.steps() {
                    return Err(err(format!(
                        "awareness is recorded at the final step {}",
                        spec.steps()
                    )));
                }
                let aware = match answer.to_ascii_uppercase().as_str() {
                    "AWARE" => true,
                    "UNAWARE" => false,
                    _ => {
                        return Err(err(format!(
                            "awareness answer `{answer}` is not AWARE or UNAWARE"
                        )))
                    }
                };
                if entry.awareness.insert(subject.to_string(), aware).is_some() {
                    return Err(err(format!("awareness of `{subject}` given twice")));
                }
            }
            "relation" => {
                require_visible(subject)?;
                require_visible(object)?;
                if !spec.flow().is_later(subject, object) {
                    return Err(err(format!(
                        "relation ({subject},{object}) does not run from a later to an earlier statement"
                    )));
                }
                let pair = (subject.to_string(), object.to_string());
                if !spec.asked(step).contains(&pair) {
                    return Err(err(format!(
                        "relation ({subject},{object}) was not asked at step {step}"
                    )));
                }
                let r: RelationAnswer = answer.parse().map_err(|e: Error| err(e.to_string()))?;
                if entry.relations.insert(pair, r).is_some() {
                    return Err(err(format!("relation ({subject},{object}) answered twice")));
                }
            }
            "expanded" => {
                let aux_subject = subject == AUXILIARY;
                if aux_subject == (object == AUXILIARY) {
                    return Err(err(format!(
                        "expanded edges join `{AUXILIARY}` and a visible statement"
                    )));
                }
                require_visible(if aux_subject { object } else { subject })?;
                let r: RelationAnswer = answer.parse().map_err(|e: Error| err(e.to_string()))?;
                if entry
                    .expanded
                    .insert((subject.to_string(), object.to_string()), r)
                    .is_some()
                {
                    return Err(err(format!(
                        "expanded edge ({subject},{object}) given twice"
                    )));
                }
            }
            other => return Err(err(format!("unknown row kind `{other}`"))),
        }
    }

    let mut out = Vec::with_capacity(pending.len());
    for ((participant, dialogue, step), p) in pending {
        let spec = by_id[dialogue.as_str()];
        let statements: Vec<String> = spec.visible(step).into_iter().map(String::from).collect();
        let at = |msg: String| {
            Error::parse(
                p.line,
                format!("participant `{participant}`, step {step}: {msg}"),
            )
        };
        if let Some(s) = statements.iter().find(|s| !p.agreement.contains_key(*s)) {
            return Err(at(format!("no agreement given for `{s}`")));
        }
        if let Some((a, b)) = spec
            .asked(step)
            .iter()
            .find(|pair| !p.relations.contains_key(*pair))
        {
            return Err(at(format!("asked relation ({a},{b}) has no answer")));
        }
        if !p.awareness.is_empty() {
            if let Some(s) = statements.iter().find(|s| !p.awareness.contains_key(*s)) {
                return Err(at(format!("no awareness given for `{s}`")));
            }
        }
        out.push(ResponseRecord {
            participant,
            dialogue,
            step,
            statements,
            agreement: p.agreement,
            relations: p.relations,
            awareness: (!p.awareness.is_empty()).then(|| {
                p.awareness
                    .into_iter()
                    .filter(|(_, a)| *a)
                    .map(|(s, _)| s)
                    .collect()
            }),
            expanded: p.expanded,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const DIALOGUE: &str = r#"{
        "dialogue": "d",
        "statements": [["A",1,1,"P1","a"],["B",1,2,"P2","b"],["C",2,1,"P1","c"]],
        "intended": {"1": {"attacks": [["B","A"]]}, "2": {"attacks": [["B","A"],["C","B"]]}}
    }"#;

    #[test]
    fn dialogue_defaults() {
        let d = parse_dialogue(DIALOGUE).unwrap();
        assert_eq!(d.steps(), 2);
        assert_eq!(d.visible(1), vec!["A", "B"]);
        assert_eq!(d.asked(1), &[("B".to_string(), "A".to_string())]);
        assert_eq!(d.asked(2).len(), 3);
        assert_eq!(d.intended(2).unwrap().attacks().len(), 2);
    }

    #[test]
    fn dialogue_rejects_bad_intended_edges() {
        let bad = DIALOGUE.replace(
            r#""1": {"attacks": [["B","A"]]}"#,
            r#""1": {"attacks": [["C","A"]]}"#,
        );
        assert!(parse_dialogue(&bad).is_err());
    }

    fn rows(extra: &str) -> String {
        format!(
            "participant,dialogue,step,kind,subject,object,answer\n\
             p1,d,1,agreement,A,,AGREE\n\
             p1,d,1,agreement,B,,DISAGREE\n\
             p1,d,1,relation,B,A,GOOD_AGAINST\n{extra}"
        )
    }

    #[test]
    fn responses_parse() {
        let d = parse_dialogue(DIALOGUE).unwrap();
        let rs = parse_responses(&rows(""), &[d]).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].declared_graph().attacks().len(), 1);
    }

    #[test]
    fn response_errors_carry_lines() {
        let d = parse_dialogue(DIALOGUE).unwrap();
        let cases = [
            ("p1,d,1,relation,A,B,GOOD_FOR\n", 5),
            ("p1,d,1,agreement,C,,AGREE\n", 5),
            ("p1,d,1,agreement,A,,AGREE\n", 5),
            ("p1,d,1,awareness,A,,AWARE\n", 5),
            ("p1,d,3,agreement,A,,AGREE\n", 5),
            ("p1,d,1,agreement,A,,LOVE_IT\n", 5),
            ("p1,d,2,agreement,A,,AGREE\n", 5),
        ];
        for (extra, line) in cases {
            let e = parse_responses(&rows(extra), std::slice::from_ref(&d)).unwrap_err();
            assert_eq!(e.line(), Some(line), "{extra}: {e}");
        }
    }

    #[test]
    fn missing_relation_answer_is_rejected() {
        let d = parse_dialogue(DIALOGUE).unwrap();
        let src = "p1,d,1,agreement,A,,AGREE\np1,d,1,agreement,B,,AGREE\n";
        let e = parse_responses(src, &[d]).unwrap_err();
        assert_eq!(e.line(), Some(1));
        assert!(e.to_string().contains("(B,A)"));
    }
}
