//! End-to-end command-line tests: the exit-code contract, report
//! determinism, the graph export format, and spec-file errors.

use std::io::Write;
use std::process::{Command, Output};

fn qnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnorm"))
        .args(args)
        .output()
        .expect("run qnorm")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn catalog_list_names() {
    let out = qnorm(&["catalog", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in [
        "lexicographic",
        "parity-ab",
        "locnotquad",
        "quadnotloc",
        "high3",
        "log2",
        "large4class",
        "termin44",
        "plactic-col",
        "plactic-row",
        "chinese3",
        "braid-b3",
        "artin-a2t",
    ] {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
}

#[test]
fn normalize_lexicographic() {
    let out = qnorm(&[
        "normalize",
        "--catalog",
        "lexicographic",
        "--word",
        "b.c.a.b.a.c",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("b.c.a.b.a.c -> a.a.b.b.c.c"));
}

#[test]
fn class_report_lexicographic() {
    let out = qnorm(&["class", "--catalog", "lexicographic", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mc = &v["class"]["minimal_class"];
    assert_eq!(mc["left"]["value"], 3);
    assert_eq!(mc["right"]["value"], 3);
}

#[test]
fn acceptance_12_exit_code_contract() {
    // a violated expectation yields exit 1 and the witness in the report
    let out = qnorm(&[
        "termination",
        "--catalog",
        "termin44",
        "--max-length",
        "4",
        "--expect-terminating",
        "--json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cycle = v["termination"]["classification"]["cycle"].as_array().unwrap();
    assert_eq!(cycle[0], "a.b.c.d");
    assert_eq!(cycle.len(), 4);

    // without the expectation the same analysis completes with exit 0
    let out = qnorm(&["termination", "--catalog", "termin44", "--max-length", "4"]);
    assert_eq!(code(&out), 0);

    // a satisfied expectation also exits 0
    let out = qnorm(&[
        "termination",
        "--catalog",
        "lexicographic",
        "--expect-terminating",
    ]);
    assert_eq!(code(&out), 0);

    // input errors exit 2
    let out = qnorm(&["class", "--catalog", "no-such-system"]);
    assert_eq!(code(&out), 2);

    // whole-catalog verification is headless and green
    let out = qnorm(&["verify", "--all"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("all expected facts reproduced"));
    println!("ACCEPTANCE 12 PASS: exit codes 0/1/2 with witnesses in the report");
}

#[test]
fn normalize_failure_exits_1() {
    let out = qnorm(&[
        "normalize",
        "--catalog",
        "locnotquad",
        "--word",
        "a.b.a",
        "--strategy",
        "exhaustive",
    ]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("a.b.a"), "{err}");
}

#[test]
fn unknown_letter_exits_2() {
    let out = qnorm(&["normalize", "--catalog", "lexicographic", "--word", "a.z"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn spec_file_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("sys.json");
    std::fs::write(
        &good,
        r#"{"generators":["a","b"],"phi":[{"in":["b","a"],"out":["a","b"]}]}"#,
    )
    .unwrap();
    let out = qnorm(&[
        "normalize",
        good.to_str().unwrap(),
        "--word",
        "b.a.b.a",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("-> a.a.b.b"));

    let bad_neutral = dir.path().join("bad.json");
    std::fs::write(
        &bad_neutral,
        r#"{"generators":["a","b"],"neutral":"e","phi":[]}"#,
    )
    .unwrap();
    let out = qnorm(&["check", bad_neutral.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let malformed = dir.path().join("malformed.json");
    let mut f = std::fs::File::create(&malformed).unwrap();
    f.write_all(b"{\"generators\": [").unwrap();
    drop(f);
    let out = qnorm(&["check", malformed.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_reports_are_byte_identical() {
    let a = qnorm(&["class", "--catalog", "chinese3", "--json"]);
    let b = qnorm(&["class", "--catalog", "chinese3", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn graph_export_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.tsv");
    let out = qnorm(&[
        "rewrite",
        "--catalog",
        "lexicographic",
        "--word",
        "c.b.a",
        "--graph",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 3);
    for line in text.lines() {
        let parts: Vec<&str> = line.split('\t').collect();
        assert_eq!(parts.len(), 3, "{line}");
        assert!(parts[1].parse::<usize>().is_ok());
    }
    assert!(text.starts_with("c.b.a\t"));
}

#[test]
fn garside_triangular_relations() {
    let out = qnorm(&["garside", "--catalog", "braid-b3", "--triangular", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["garside"]["triangular"]["relation_count"], 6);
    assert_eq!(v["garside"]["garside_shaped"], true);
    assert_eq!(v["garside"]["greedy_agreement"], true);
}

#[test]
fn check_expectation_flag() {
    let out = qnorm(&["check", "--catalog", "termin44", "--expect-axioms-43"]);
    assert_eq!(code(&out), 1);
    let out = qnorm(&["check", "--catalog", "braid-b3", "--expect-axioms-43"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn catalog_parameters() {
    let out = qnorm(&["class", "--catalog", "high3", "--n", "5", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"]["minimal_class"]["left"]["value"], 4);
    assert_eq!(v["class"]["minimal_class"]["right"]["value"], 5);

    let out = qnorm(&["class", "--catalog", "high3", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn mod_e_normalisation() {
    let out = qnorm(&[
        "normalize",
        "--catalog",
        "braid-b3",
        "--word",
        "a.b",
        "--mod-e",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("a.b -> ab"));
}
