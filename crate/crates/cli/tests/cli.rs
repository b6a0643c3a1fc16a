use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn weil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(args)
        .env_remove("WEIL_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_json(out: &Output) -> Value {
    let text = stdout(out);
    let start = text.find('{').expect("report in output");
    serde_json::from_str(&text[start..]).unwrap()
}

#[test]
fn construct_valid_tuple() {
    let out = weil(&["construct", "--rho", "5", "--b", "1", "--r", "2", "--p", "5", "--n", "1", "--m", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("25,5,1,1,1"));
    let r = last_json(&out);
    assert_eq!(r["is_q_polynomial"], true);
    assert_eq!(r["absolutely_simple"], "certified_yes");
}

#[test]
fn construct_invalid_tuple_lists_failures() {
    let out = weil(&["construct", "--rho", "5", "--b", "1", "--r", "2", "--p", "2", "--n", "2", "--m", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("q ≡ 1 (mod r) fails"));
}

#[test]
fn construct_malformed_arguments() {
    let out = weil(&["construct", "--rho", "4", "--b", "1", "--r", "2", "--p", "5", "--n", "1", "--m", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&weil(&["construct", "--rho", "5"])), 1);
    assert_eq!(code(&weil(&["construct", "--rho", "x", "--b", "1", "--r", "2", "--p", "5", "--n", "1", "--m", "0"])), 1);
    assert_eq!(code(&weil(&["frobnicate"])), 1);
    assert_eq!(code(&weil(&["--help"])), 0);
}

#[test]
fn verify_counterexamples() {
    let out = weil(&["verify", "--poly", "8,4,2,5,1,1,1", "--q", "2", "--format", "jsonl"]);
    assert_eq!(code(&out), 3);
    let r = last_json(&out);
    assert_eq!(r["off_circle_real_roots"], 2);
    assert_eq!(r["numeric_real_off_circle"], 2);

    let out = weil(&["verify", "--poly", "64,16,2,2,1", "--q", "8", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let r = last_json(&out);
    assert_eq!(r["ordinary"], false);
    assert_eq!(r["simple"], true);

    let out = weil(&["verify", "--poly", "25,5,1,1,1", "--q", "5"]);
    assert_eq!(code(&out), 0);
    let r = last_json(&out);
    for field in ["is_q_polynomial", "ordinary", "simple", "ll_passed"] {
        assert_eq!(r[field], true, "{field}");
    }
    assert_eq!(r["absolutely_simple"], "certified_yes");
}

#[test]
fn verify_malformed_polynomial() {
    assert_eq!(code(&weil(&["verify", "--poly", "1,,2", "--q", "2"])), 1);
    assert_eq!(code(&weil(&["verify", "--poly", "0", "--q", "2"])), 1);
    assert_eq!(code(&weil(&["verify", "--poly", "1,1", "--q", "-2"])), 1);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(["verify", "--poly", "25,5,1,1,1", "--q", "5", "--format", "jsonl"])
        .env("WEIL_PRECISION_BITS", "300")
        .output()
        .unwrap();
    assert_eq!(last_json(&out)["precision_bits"], 300);
}

fn search(dir: &Path, name: &str, extra: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut args = vec!["search", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = weil(&args);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (out, text)
}

const SWEEP: &[&str] = &["--rho", "5,7", "--b", "1,2", "--q-max", "32", "--no-timings"];

#[test]
fn search_is_deterministic_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, a) = search(dir.path(), "a.jsonl", SWEEP);
    let (_, b) = search(dir.path(), "b.jsonl", SWEEP);
    let mut four = SWEEP.to_vec();
    four.extend(["--workers", "4"]);
    let (_, c) = search(dir.path(), "c.jsonl", &four);
    assert_eq!(code(&o1), 0);
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(a, c);
    let n = a.lines().count();
    assert!(stdout(&o1).starts_with(&format!("{n} tuples")));
    for line in a.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["is_q_polynomial"], true);
        assert_eq!(r["ordinary"], true);
        assert_eq!(r["simple"], true);
        assert_eq!(r["timings_ms"], Value::Null);
    }
}

#[test]
fn search_records_timings_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = search(dir.path(), "t.jsonl", &["--rho", "5", "--b", "1", "--q-max", "5"]);
    let r: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert!(r["timings_ms"].is_number());
}

#[test]
fn search_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = search(dir.path(), "e.jsonl", &["--rho", "5", "--b", "1", "--q-max", "3"]);
    assert_eq!(code(&out), 0);
    assert!(text.is_empty());
    assert!(stdout(&out).starts_with("0 tuples"));
}

#[test]
fn search_unwritable_output() {
    let out = weil(&["search", "--rho", "5", "--b", "1", "--q-max", "9", "--out", "/nonexistent-dir/x.jsonl"]);
    assert_eq!(code(&out), 1);
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn csv_matches_jsonl_field_by_field() {
    let dir = tempfile::tempdir().unwrap();
    let range = ["--rho", "5,7", "--b", "1,2", "--q-max", "16", "--no-timings"];
    let (_, jsonl) = search(dir.path(), "r.jsonl", &range);
    let mut csv_args = range.to_vec();
    csv_args.extend(["--format", "csv"]);
    search(dir.path(), "r.csv", &csv_args);
    let mut reader = csv::Reader::from_path(dir.path().join("r.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let objects: Vec<Value> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), objects.len());
    assert!(!rows.is_empty());
    for (row, obj) in rows.iter().zip(&objects) {
        for (name, text) in header.iter().zip(row.iter()) {
            let value = match name.as_str() {
                "rho" | "b" | "r" | "p" | "n" | "m" => &obj["tuple"][name.as_str()],
                other => &obj[other],
            };
            assert_eq!(cell(value), text, "column {name}");
        }
        let obj_fields = obj.as_object().unwrap().len() - 1 + 6;
        assert_eq!(obj_fields, header.len());
    }
}

#[test]
fn report_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let out = weil(&[
        "search", "--rho", "5,7", "--b", "1,2", "--q-max", "16", "--no-timings", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = weil(&["report", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let table = stdout(&out);
    let row = |rho: &str, b: &str| {
        table
            .lines()
            .find(|l| {
                let cols: Vec<&str> = l.split_whitespace().collect();
                cols.len() > 2 && cols[0] == rho && cols[1] == b
            })
            .unwrap_or_else(|| panic!("no row for rho={rho} b={b} in\n{table}"))
            .to_string()
    };
    assert!(row("5", "1").contains("yes"));
    assert!(row("5", "2").contains("no (d = 5)"));
    assert!(row("7", "2").contains("no (d = 7)"));

    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let out = weil(&["report", "--in", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1);

    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{not json}\n").unwrap();
    assert_eq!(code(&weil(&["report", "--in", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&weil(&["report", "--in", "/nonexistent-file.jsonl"])), 1);
}
