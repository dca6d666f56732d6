use std::process::{Command, Output};

use serde_json::Value;

const REMARK: &str = r#"{q: 2, m: 7, canonical: {g11: "x^4+x^3+x^2+1", g12: "1", g22: "x^3+x^2+1"}}"#;
const REMARK_GENS: &str = r#"{q: 2, m: 7, generators: [["x^4+x^3+x^2+1", "1"], [0, "x^4+x^2+x+1"]]}"#;
const SHARP: &str = r#"{q: 2, m: 7, canonical: {g11: "x^3+x+1", g12: 0, g22: "x^3+x+1"}}"#;
const SELF_DUAL_S: &str = r#"{q: 2, m: 5, generators: [["1", "1"]]}"#;
const FULL: &str = r#"{q: 3, m: 4, canonical: {g11: "1", g12: "0", g22: "1"}}"#;
const BAD_SYNTAX: &str = r#"{q: 2, m: 3, canonical: {g11: "x^^2", g12: 0, g22: 1}}"#;
const BAD_LINE2: &str = r#"{q: 2, m: 7, canonical: {g11: "x^4+x^3+x^2+1", g12: "x^3", g22: "x^3+x^2+1"}}"#;
const BAD_FIELD: &str = r#"{q: 6, m: 3, generators: [[1, 1]]}"#;

fn qc2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc2"))
        .args(args)
        .env_remove("QC2_CAP")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["canon", REMARK_GENS], 0),
        (&["canon", BAD_SYNTAX], 2),
        (&["canon", BAD_LINE2], 2),
        (&["dim", REMARK, "--verify"], 0),
        (&["dim", BAD_FIELD], 2),
        (&["dual", "-k", "e", REMARK, "--verify"], 0),
        (&["dual", "-k", "s", REMARK, "--verify"], 0),
        (&["dual", "-k", "h", REMARK], 2),
        (&["dual", "-k", "x", REMARK], 2),
        (&["check", "self-orth", "-k", "s", SELF_DUAL_S, "--expect", "true"], 0),
        (&["check", "self-orth", "-k", "e", FULL, "--expect", "true"], 1),
        (&["check", "self-orth", "-k", "e", FULL, "--expect", "false"], 0),
        (&["check", "dual-containing", "-k", "e", FULL, "--expect", "true", "--verify"], 0),
        (&["check", "self-dual", "-k", "s", SELF_DUAL_S, "--verify"], 0),
        (&["check", "self-dual", "-k", "s", BAD_SYNTAX], 2),
        (&["onegen", REMARK, "--expect", "true"], 0),
        (&["onegen", SHARP, "--expect", "true"], 1),
        (&["onegen", REMARK, "--construct"], 0),
        (&["onegen", SHARP, "--construct"], 1),
        (&["dual-onegen", REMARK, "--expect", "true"], 0),
        (&["dual-onegen", SHARP, "--expect", "true"], 1),
        (&["dist", "exact", "hamming", SHARP], 0),
        (&["dist", "bound", "symplectic", SHARP, "--verify"], 0),
        (&["dist", "upper", "hamming", SHARP, "--trials", "5", "--verify"], 0),
        (&["dist", "upper", "hamming", SHARP, "--trials", "0"], 2),
        (&["dist", "exact", "hamming", FULL, "--cap", "10"], 2),
        (&["dist", "exact", "manhattan", SHARP], 2),
        (&["quantum", SELF_DUAL_S, "--expect", "[[5,0,1]]_2"], 0),
        (&["quantum", SELF_DUAL_S, "--expect", "[[5,0,2]]_2"], 1),
        (&["quantum", FULL], 1),
        (&["quantum", BAD_LINE2], 2),
        (&["factor", "-q", "2", "x^7-1"], 0),
        (&["factor", "-q", "6", "x^7-1"], 2),
        (&["factor", "-q", "2", "0"], 2),
        (&["canon", "/nonexistent/spec.json"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in cases {
        let out = qc2(args);
        assert_eq!(code(&out), *expected, "qc2 {args:?}: {}", String::from_utf8_lossy(&out.stderr));
        // Usage errors are rejected by the argument parser before any report exists.
        if out.stdout.is_empty() {
            assert_eq!(*expected, 2, "{args:?}");
        } else {
            // Exit 1 is either an unmet expectation ("ok") or a refused construction ("error").
            let status = report(&out)["status"].clone();
            match expected {
                0 => assert_eq!(status, "ok", "{args:?}"),
                2 => assert_eq!(status, "error", "{args:?}"),
                _ => assert!(status == "ok" || status == "error", "{args:?}"),
            }
        }
    }
}

#[test]
fn syntax_errors_carry_position() {
    let out = qc2(&["canon", BAD_SYNTAX]);
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "syntax");
    assert_eq!(r["error"]["line"], 1);
    // The opening quote of "x^^2" is column 31; the second caret is column 34.
    assert_eq!(r["error"]["column"], 34);
}

#[test]
fn validation_names_the_condition() {
    let r = report(&qc2(&["canon", BAD_LINE2]));
    assert_eq!(r["error"]["condition"], "(*) line 2");
}

#[test]
fn remark_generators_canonicalize_to_triple() {
    let r = report(&qc2(&["canon", REMARK_GENS]));
    let c = &r["results"]["canonical"];
    assert_eq!(c["g11"], "x^4+x^3+x^2+1");
    assert_eq!(c["g12"], "1");
    assert_eq!(c["g22"], "x^3+x^2+1");
    assert_eq!(r["results"]["dimension"], 7);
}

#[test]
fn printed_document_round_trips() {
    for spec in [REMARK_GENS, SHARP, SELF_DUAL_S, FULL] {
        let first = report(&qc2(&["canon", spec]));
        let printed = first["results"]["document"].to_string();
        let second = report(&qc2(&["canon", &printed]));
        assert_eq!(first["results"]["canonical"], second["results"]["canonical"]);
        assert_eq!(second["results"]["document"].to_string(), printed);
    }
}

#[test]
fn files_and_stdin_are_accepted() {
    let dir = std::env::temp_dir().join(format!("qc2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("remark.json5");
    std::fs::write(&path, format!("// Remark code\n{REMARK}\n")).unwrap();
    let out = qc2(&["dim", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["dimension"], 7);
    std::fs::remove_dir_all(&dir).unwrap();

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_qc2"))
        .args(["dim", "-", "--quiet"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SHARP.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(out.stderr.is_empty());
    assert_eq!(report(&out)["results"]["dimension"], 8);
}

#[test]
fn env_cap_overrides_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_qc2"))
        .args(["dist", "exact", "hamming", FULL])
        .env("QC2_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "enumeration_too_large");
    assert_eq!(r["options"]["cap"], 100);
}

#[test]
fn reports_are_rerunnable() {
    let args = ["dist", "upper", "symplectic", SHARP, "--trials", "7", "--seed", "11", "--quiet"];
    let a = report(&qc2(&args));
    let rerun: Vec<String> = a["args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let rerun: Vec<&str> = rerun.iter().map(String::as_str).collect();
    let b = report(&qc2(&rerun));
    assert_eq!(a["inputs"]["digest"], b["inputs"]["digest"]);
    let strip = |mut v: Value| {
        v["distance"]["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(a["results"].clone()), strip(b["results"].clone()));
    for key in ["command", "args", "inputs", "options", "results", "status", "timings", "version"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn quiet_suppresses_summary() {
    let loud = qc2(&["dim", REMARK]);
    let quiet = qc2(&["dim", REMARK, "--quiet"]);
    assert!(!loud.stderr.is_empty());
    assert!(quiet.stderr.is_empty());
}

#[test]
fn sharp_bound_equals_exact() {
    let bound = report(&qc2(&["dist", "bound", "hamming", SHARP]));
    let exact = report(&qc2(&["dist", "exact", "hamming", SHARP]));
    assert_eq!(bound["results"]["distance"]["value"], exact["results"]["distance"]["value"]);
    assert_eq!(exact["results"]["distance"]["value"], 3);
}
