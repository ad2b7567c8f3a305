use std::process::{Command, Output};

fn opq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn stats() {
    let out = opq(&["stats", "3", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s(3,0) = 3 (closed form 3)\n");
    let out = opq(&["--json", "stats", "0", "12"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["s"], 3104);
}

#[test]
fn table_rows() {
    let out = opq(&["--json", "table", "3", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &rows[0];
    let s: Vec<u64> = row["entries"].as_array().unwrap().iter().map(|e| e["s"].as_u64().unwrap()).collect();
    assert_eq!(s, [3, 3, 3, 7]);
    assert_eq!(row["classes"][0]["members"], serde_json::json!([[3, 0], [2, 1], [1, 2]]));
    assert_eq!(row["classes"][1]["members"], serde_json::json!([[0, 3]]));

    let out = opq(&["--json", "table", "12", "12"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = rows[0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 13);
    assert_eq!(entries[0]["s"], 1056);
    assert_eq!(entries[12]["s"], 3104);
}

#[test]
fn table_text_layout() {
    let text = stdout(&opq(&["table", "3", "4"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("n=3"));
    assert!(lines[2].starts_with("n=4"));
    let s3: Vec<&str> = lines[0].split_whitespace().skip(1).collect();
    assert_eq!(s3, ["3", "3", "3", "7"]);
    let c4: Vec<&str> = lines[3].split_whitespace().collect();
    assert_eq!(c4, ["a", "b", "a", "b", "c"]);
}

#[test]
fn table_range_is_checked() {
    for args in [["table", "2", "2"], ["table", "5", "4"], ["table", "3", "13"]] {
        let out = opq(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn iso_witness_and_none() {
    let out = opq(&["iso", "3", "0", "2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(w["src"], serde_json::json!([3, 0]));
    assert_eq!(w["dst"], serde_json::json!([2, 1]));
    assert_eq!(w["verified"], true);
    assert_eq!(w["signs_checked"], true);

    let out = opq(&["iso", "0", "3", "3", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NONE s(0,3)=7 s(3,0)=3\n");

    let w: serde_json::Value = serde_json::from_slice(&opq(&["iso", "2", "1", "2", "1"]).stdout).unwrap();
    assert_eq!(w["matrix"], serde_json::json!(["100", "010", "001"]));
}

#[test]
fn iso_is_guarded() {
    assert_eq!(opq(&["iso", "3", "0", "2", "2"]).status.code(), Some(2));
    assert_eq!(opq(&["iso", "9", "0", "5", "4"]).status.code(), Some(2));
    assert_eq!(opq(&["--max-n", "5", "iso", "6", "0", "2", "4"]).status.code(), Some(2));
    assert_eq!(opq(&["--max-n", "9", "iso", "3", "0", "2", "1"]).status.code(), Some(2));
}

#[test]
fn mult() {
    let out = opq(&["mult", "0", "3", "1 + [100]", "1 - [100]"]);
    assert_eq!(stdout(&out), "2\n");
    let out = opq(&["mult", "0", "3", "-[100]", "[100]"]);
    assert_eq!(stdout(&out), "1\n");
    assert_eq!(opq(&["mult", "0", "3", "e1", "[100]"]).status.code(), Some(2));
    assert_eq!(opq(&["mult", "0", "3", "[1000]", "[100]"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = opq(&["--max-n", "5", "verify", "statistics"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("checks passed")));
    assert_eq!(opq(&["verify", "bogus"]).status.code(), Some(2));
    let out = opq(&["--json", "--max-n", "4", "verify", "lemmas"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn simplicity_flags_the_table() {
    let out = opq(&["--json", "simplicity", "2", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["computed"], "splits_sum");
    assert_eq!(v["table_simple"], true);
    assert_eq!(v["discrepancy_flag"], true);
}

#[test]
fn twisting() {
    let out = opq(&["twisting", "x1*x2*x3 + x1*x2 + x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("generating: true\n"));
    assert_eq!(opq(&["twisting", "x1*x2*x3*x4"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["table", "3", "8"],
        vec!["--json", "table", "9", "12"],
        vec!["iso", "4", "2", "2", "4"],
        vec!["--json", "--max-n", "5", "verify", "all"],
    ];
    for args in runs {
        let first = opq(&args);
        let second = opq(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
