use std::process::ExitCode;
use std::time::{Duration, Instant};

use opq::algebra::{
    decomposability, even_subalgebra_check, graded_alternative_check, AlgebraContext, Sign,
};
use opq::classify::{
    catalog, classification_row, find_graded_iso, sign_map, simplicity_report, statistics,
    statistics_closed_form,
};
use opq::forms::{
    beta_of_alpha, beta_of_f, canonical_twisting, is_generating, pbw_twisting, phi_of_alpha,
    phi_of_f, CubicForm, TwistingMap,
};
use opq::z2lin::{GroupIndex, Signature};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const PRINTED_STATISTICS: [(usize, &[u64]); 10] = [
    (3, &[3, 3, 3, 7]),
    (4, &[6, 8, 6, 8, 14]),
    (5, &[10, 18, 14, 14, 18, 26]),
    (6, &[16, 36, 32, 28, 32, 36, 48]),
    (7, &[28, 68, 68, 60, 60, 68, 68, 92]),
    (8, &[56, 128, 136, 128, 120, 128, 136, 128, 184]),
    (9, &[120, 248, 264, 264, 248, 248, 264, 264, 248, 376]),
    (10, &[256, 496, 512, 528, 512, 496, 512, 528, 512, 496, 768]),
    (11, &[528, 1008, 1008, 1040, 1040, 1008, 1008, 1040, 1040, 1008, 1008, 1552]),
    (12, &[1056, 2048, 2016, 2048, 2080, 2048, 2016, 2048, 2080, 2048, 2016, 2048, 3104]),
];

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q)
}

fn sigs(ns: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = Signature> {
    ns.flat_map(Signature::all_with_n)
}

fn units(n: usize) -> Vec<GroupIndex> {
    GroupIndex::all(n).collect()
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn printed_statistics() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for (n, row) in PRINTED_STATISTICS {
        for (q, &printed) in row.iter().enumerate() {
            let s = sig(n - q, q);
            let got = statistics(s).map_err(|e| e.to_string())?;
            if got != printed {
                return Err(format!("s{s} = {got}, printed {printed}"));
            }
            count += 1;
        }
    }
    if count != 85 {
        return Err(format!("{count} values compared"));
    }
    within(Duration::from_secs(1), start.elapsed())?;
    Ok(format!("85 values in {:.2?}", start.elapsed()))
}

fn closed_forms() -> Verdict {
    let start = Instant::now();
    let mut covered = 0;
    for s in sigs(3..=16) {
        if let Some(closed) = statistics_closed_form(s) {
            let brute = statistics(s).map_err(|e| e.to_string())?;
            if closed != brute {
                return Err(format!("s{s}: closed form {closed}, brute force {brute}"));
            }
            covered += 1;
        }
    }
    within(Duration::from_secs(1), start.elapsed())?;
    Ok(format!("{covered} signatures in {:.2?}", start.elapsed()))
}

fn generating_functions() -> Verdict {
    let start = Instant::now();
    for s in sigs(3..=7) {
        let f = TwistingMap::oseries(s).map_err(|e| e.to_string())?;
        let alpha = CubicForm::alpha_pq(s).map_err(|e| e.to_string())?;
        if !is_generating(&f, &alpha).map_err(|e| e.to_string())? {
            return Err(format!("alpha{s} does not generate f{s}"));
        }
    }
    let oseries = start.elapsed();
    for s in sigs(1..=5) {
        let f = TwistingMap::clifford(s).map_err(|e| e.to_string())?;
        let u = units(s.n());
        for &x in &u {
            for &y in &u {
                for &z in &u {
                    if phi_of_f(&f, x, y, z) {
                        return Err(format!("Cl{s} not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
    }
    within(Duration::from_secs(300), oseries)?;
    Ok(format!("n <= 7 in {oseries:.2?}"))
}

fn round_trips() -> Verdict {
    let start = Instant::now();
    for s in sigs(3..=6) {
        let alpha = CubicForm::alpha_pq(s).map_err(|e| e.to_string())?;
        let f = TwistingMap::oseries(s).map_err(|e| e.to_string())?;
        if !canonical_twisting(&alpha).pointwise_eq(&f) {
            return Err(format!("canonical twisting differs from f{s}"));
        }
        let pbw = pbw_twisting(&alpha).map_err(|e| e.to_string())?;
        if !is_generating(&pbw, &alpha).map_err(|e| e.to_string())? {
            return Err(format!("pbw twisting of alpha{s} is not generated by it"));
        }
    }
    Ok(format!("n <= 6 in {:.2?}", start.elapsed()))
}

fn lemma_catalog() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=12 {
        for lw in catalog(n).map_err(|e| e.to_string())? {
            if !lw.witness.verify() {
                return Err(format!(
                    "{} fails {} -> {}",
                    lw.lemma,
                    lw.witness.src(),
                    lw.witness.dst()
                ));
            }
            count += 1;
        }
    }
    within(Duration::from_secs(1), start.elapsed())?;
    Ok(format!("{count} witnesses in {:.2?}", start.elapsed()))
}

fn swap_and_shift() -> Verdict {
    let start = Instant::now();
    let mut pairs = Vec::new();
    for s in sigs(3..=8) {
        if s.p * s.q != 0 {
            pairs.push((s, s.swapped()));
            if s.n() + 4 <= 8 {
                pairs.push((sig(s.p + 4, s.q), sig(s.p, s.q + 4)));
            }
        }
    }
    for &(a, b) in &pairs {
        match find_graded_iso(a, b).map_err(|e| e.to_string())? {
            Some(w) if w.verify() => {}
            _ => return Err(format!("no witness {a} -> {b}")),
        }
    }
    within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!("{} pairs in {:.2?}", pairs.len(), start.elapsed()))
}

fn partitions() -> Verdict {
    let start = Instant::now();
    let expected: [(usize, Vec<Vec<Signature>>); 2] = [
        (3, vec![vec![sig(3, 0), sig(2, 1), sig(1, 2)], vec![sig(0, 3)]]),
        (4, vec![vec![sig(4, 0), sig(2, 2)], vec![sig(3, 1), sig(1, 3)], vec![sig(0, 4)]]),
    ];
    for (n, classes) in expected {
        let got = classification_row(n).map_err(|e| e.to_string())?.class_members();
        if got != classes {
            return Err(format!("n = {n}: {got:?}"));
        }
    }
    for (n, count) in [(5, 4), (6, 5)] {
        let classes = classification_row(n).map_err(|e| e.to_string())?.class_members();
        let singleton = |s: Signature| classes.iter().any(|c| c == &vec![s]);
        if classes.len() != count || !singleton(sig(n, 0)) || !singleton(sig(0, n)) {
            return Err(format!("n = {n}: {classes:?}"));
        }
    }
    for n in 5..=12 {
        let low = statistics(sig(n, 0)).map_err(|e| e.to_string())?;
        let high = statistics(sig(0, n)).map_err(|e| e.to_string())?;
        for q in 1..n {
            let s = statistics(sig(n - q, q)).map_err(|e| e.to_string())?;
            if !(low < s && s < high) {
                return Err(format!("bound fails at ({},{q}): {low} < {s} < {high}", n - q));
            }
        }
    }
    Ok(format!("n = 3..6 partitions, bound n = 5..12, {:.2?}", start.elapsed()))
}

fn even_subalgebra() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for s in sigs(3..=7).filter(|s| s.q > 0) {
        if !even_subalgebra_check(s).map_err(|e| e.to_string())? {
            return Err(format!("even part of O{s} is not Cl({},{})", s.p, s.q - 1));
        }
        count += 1;
    }
    Ok(format!("{count} signatures in {:.2?}", start.elapsed()))
}

/// Reads the commutation and association signs off the multiplication
/// table and compares them with both defect formulas.
fn structure_coherence() -> Verdict {
    let start = Instant::now();
    for s in sigs(3..=5) {
        let ctx = AlgebraContext::oseries(s).map_err(|e| e.to_string())?;
        let alpha = CubicForm::alpha_pq(s).map_err(|e| e.to_string())?;
        let f = ctx.twist().clone();
        let u = units(s.n());
        let minus = |sign: Sign| sign == Sign::Minus;
        for &x in &u {
            for &y in &u {
                let (xy, _) = ctx.basis_product(x, y);
                let (yx, _) = ctx.basis_product(y, x);
                let beta = minus(xy) != minus(yx);
                if beta != beta_of_f(&f, x, y) || beta != beta_of_alpha(&alpha, x, y) {
                    return Err(format!("commutation sign of O{s} at ({x}, {y})"));
                }
                for &z in &u {
                    let (a1, d1) = ctx.basis_product(x, y);
                    let (a2, _) = ctx.basis_product(d1, z);
                    let (b1, d2) = ctx.basis_product(y, z);
                    let (b2, _) = ctx.basis_product(x, d2);
                    let phi = minus(a1 * a2) != minus(b1 * b2);
                    if phi != phi_of_f(&f, x, y, z) || phi != phi_of_alpha(&alpha, x, y, z) {
                        return Err(format!("association sign of O{s} at ({x}, {y}, {z})"));
                    }
                }
            }
        }
    }
    for s in sigs(3..=6) {
        let alpha = CubicForm::alpha_pq(s).map_err(|e| e.to_string())?;
        if !graded_alternative_check(&alpha).map_err(|e| e.to_string())? {
            return Err(format!("O{s} is not graded-alternative"));
        }
    }
    Ok(format!("{:.2?}", start.elapsed()))
}

fn sign_maps() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=5 {
        for a in Signature::all_with_n(n) {
            for b in Signature::all_with_n(n) {
                if let Some(w) = find_graded_iso(a, b).map_err(|e| e.to_string())? {
                    let signed = sign_map(&w).map_err(|e| format!("{a} -> {b}: {e}"))?;
                    if signed.signs().map(|c| c.len()) != Some(1 << n) {
                        return Err(format!("{a} -> {b}: no signs attached"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} witnesses in {:.2?}", start.elapsed()))
}

fn decomposition() -> Verdict {
    let start = Instant::now();
    for s in sigs(3..=8) {
        let alpha = CubicForm::alpha_pq(s).map_err(|e| e.to_string())?;
        let got = decomposability(&alpha).map_err(|e| e.to_string())?.decomposes;
        let expected = s.n() % 4 == 0 && s.p % 2 == 0;
        if got != expected {
            return Err(format!("O{s}: decomposes = {got}, expected {expected}"));
        }
    }
    let report = simplicity_report(sig(2, 2)).map_err(|e| e.to_string())?;
    if !report.discrepancy_flag {
        return Err("no discrepancy flagged for (2,2)".into());
    }
    Ok(format!(
        "n <= 8 in {:.2?}; (2,2) flagged: table says simple, computed {}",
        start.elapsed(),
        report.computed.as_str()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("statistics table", printed_statistics),
        ("closed-form sums", closed_forms),
        ("generating functions", generating_functions),
        ("construction round-trips", round_trips),
        ("lemma catalogue", lemma_catalog),
        ("swap and +4 shift", swap_and_shift),
        ("partitions and bounds", partitions),
        ("Clifford subalgebra", even_subalgebra),
        ("structure coherence", structure_coherence),
        ("sign maps", sign_maps),
        ("decomposability", decomposition),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
