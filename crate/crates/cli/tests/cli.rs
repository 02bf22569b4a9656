use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn argkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_argkit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = argkit(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn grounded_extension() {
    assert_eq!(
        stdout(&["solve", &path("five_args.apx"), "--sem", "gr"]),
        "{A}\n"
    );
}

#[test]
fn preferred_extensions() {
    assert_eq!(
        stdout(&["solve", &path("five_args.apx"), "--sem", "pr"]),
        "{A,C}\n{A,D}\n"
    );
}

#[test]
fn structured_output_is_json() {
    let out = stdout(&[
        "--format",
        "structured",
        "solve",
        &path("five_args.apx"),
        "--sem",
        "co",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["semantics"], "co");
    assert_eq!(v["extensions"].as_array().unwrap().len(), 3);
}

#[test]
fn complete_labelings() {
    let out = stdout(&["labelings", &path("five_args.apx"), "--sem", "co"]);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().any(|l| l == "A:in B:out C:out D:in E:out"));
}

#[test]
fn bipolar_derived_attacks() {
    let out = stdout(&[
        "bipolar",
        &path("bipolar_five.bapx"),
        "--kinds",
        "secondary,super-extended",
        "--sem",
        "st",
    ]);
    assert_eq!(out, "secondary(C,E).\nsuper-extended(E,C).\n{A,C}\n");
}

#[test]
fn prudent_augmentation() {
    let out = stdout(&["augment", &path("six_step_final.apx"), "--mode", "prudent"]);
    for line in [
        "att(D,A).",
        "att(F,A).",
        "sup(C,A).",
        "sup(D,B).",
        "sup(E,A).",
        "sup(F,B).",
    ] {
        assert!(out.lines().any(|l| l == line), "missing {line}");
    }
    assert!(!out.contains("att(E,D)."));
}

#[test]
fn constellation_probabilities() {
    let dist = path("two_arg.dist");
    assert_eq!(
        stdout(&[
            "constellation",
            &dist,
            "--sem",
            "gr",
            "--mode",
            "general",
            "--arg",
            "A"
        ]),
        "91/100\n"
    );
    assert_eq!(
        stdout(&[
            "constellation",
            &dist,
            "--sem",
            "gr",
            "--mode",
            "general",
            "--ext",
            "{A}"
        ]),
        "1/10\n"
    );
}

#[test]
fn sampling_is_seeded() {
    let dist = path("two_arg.dist");
    let run = |seed: &str, jobs: &str| {
        stdout(&[
            "--seed",
            seed,
            "--jobs",
            jobs,
            "constellation",
            &dist,
            "--sem",
            "gr",
            "--mode",
            "general",
            "--arg",
            "A",
            "--samples",
            "5000",
        ])
    };
    assert_eq!(run("5", "1"), run("5", "1"));
    assert_eq!(run("5", "1"), run("5", "3"));
}

#[test]
fn survey_report_is_deterministic() {
    let args = |jobs: &'static str| {
        vec![
            "--jobs".to_string(),
            jobs.to_string(),
            "survey".to_string(),
            "--dialogue".to_string(),
            path("toy_dialogue.json"),
            "--responses".to_string(),
            path("toy_responses.csv"),
        ]
    };
    let run = |jobs| {
        let a = args(jobs);
        stdout(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let first = run("1");
    assert!(first.starts_with("participants,toy,10\n"));
    assert_eq!(first, run("1"));
    assert_eq!(first, run("4"));
}

#[test]
fn missing_file_exits_with_one() {
    let out = argkit(&["solve", "/no/such/file.apx", "--sem", "gr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/file.apx"));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.apx");
    std::fs::write(&file, "arg(A).\natt(A B).\narg(B).\n").unwrap();
    let out = argkit(&["solve", file.to_str().unwrap(), "--sem", "gr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bad_flag_exits_with_two() {
    let out = argkit(&["solve", &path("five_args.apx"), "--sem", "zz"]);
    assert_eq!(out.status.code(), Some(2));
    let out = argkit(&["solve", &path("five_args.apx"), "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
