use std::fmt::Write;

use opq::classify::{ClassRow, SimplicityReport};
use opq::suites::Check;

const CELL: usize = 6;

/// Two lines per dimension: statistics, then class letters. Rows are centred
/// so the table keeps its triangular shape; `(n,0)` is leftmost.
pub fn table(rows: &[ClassRow]) -> String {
    let widest = rows.iter().map(|r| r.n).max().unwrap_or(0);
    let mut out = String::new();
    for row in rows {
        let indent = " ".repeat((widest - row.n) * CELL / 2);
        let mut stats = format!("n={:<4}{indent}", row.n);
        let mut classes = format!("{:6}{indent}", "");
        for e in &row.entries {
            write!(stats, "{:>CELL$}", e.s).unwrap();
            write!(classes, "{:>CELL$}", class_letter(e.class)).unwrap();
        }
        writeln!(out, "{}", stats.trim_end()).unwrap();
        writeln!(out, "{}", classes.trim_end()).unwrap();
    }
    out
}

fn class_letter(class: usize) -> char {
    (b'a' + class as u8) as char
}

pub fn checks(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        if c.passed {
            writeln!(out, "PASS  {}", c.name).unwrap();
        } else {
            writeln!(out, "FAIL  {}: {}", c.name, c.detail).unwrap();
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", checks.len()).unwrap();
    out
}

pub fn simplicity(r: &SimplicityReport) -> String {
    let verdict = |b: bool, yes: &str, no: &str| if b { yes.to_string() } else { no.to_string() };
    format!(
        "signature ({},{})\ncomputed: {}\ncomparison table: {}\ndirect-sum lemma: {}\ndiscrepancy: {}\n",
        r.p,
        r.q,
        r.computed.as_str(),
        verdict(r.table_simple, "simple", "not simple"),
        verdict(r.lemma_decomposes, "decomposes", "no claim"),
        verdict(r.discrepancy_flag, "yes", "no"),
    )
}
