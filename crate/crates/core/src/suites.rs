//! Named batches of exhaustive checks, as run by `opq verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    analyze_generator_set, decomposability, even_subalgebra_check, graded_alternative_check,
    multiply, AlgebraContext, AlgebraElement, GeneratorSet,
};
use crate::classify::{
    catalog, classification_row, exceptional_check, find_graded_iso, sign_map, statistics,
    statistics_closed_form, IsoWitness,
};
use crate::error::{Error, Result};
use crate::forms::twisting::phi_bits;
use crate::forms::{
    canonical_twisting, is_generating, pbw_twisting, CubicForm, TwistMonomial, TwistingMap,
};
use crate::z2lin::{BitMatrix, GroupIndex, Signature, MAX_ENUM_DIM};

/// Statistics `s(n,0), s(n-1,1), ..., s(0,n)` for `n = 3..=12`.
pub const PRINTED_STATISTICS: [&[u64]; 10] = [
    &[3, 3, 3, 7],
    &[6, 8, 6, 8, 14],
    &[10, 18, 14, 14, 18, 26],
    &[16, 36, 32, 28, 32, 36, 48],
    &[28, 68, 68, 60, 60, 68, 68, 92],
    &[56, 128, 136, 128, 120, 128, 136, 128, 184],
    &[120, 248, 264, 264, 248, 248, 264, 264, 248, 376],
    &[256, 496, 512, 528, 512, 496, 512, 528, 512, 496, 768],
    &[528, 1008, 1008, 1040, 1040, 1008, 1008, 1040, 1040, 1008, 1008, 1552],
    &[1056, 2048, 2016, 2048, 2080, 2048, 2016, 2048, 2080, 2048, 2016, 2048, 3104],
];

/// The available suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Forms,
    Algebra,
    Lemmas,
    Statistics,
    Classification,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "forms" => Suite::Forms,
            "algebra" => Suite::Algebra,
            "lemmas" => Suite::Lemmas,
            "statistics" => Suite::Statistics,
            "theorem31" => Suite::Classification,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?} (forms, algebra, lemmas, statistics, theorem31, all)"
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Forms => "forms",
            Suite::Algebra => "algebra",
            Suite::Lemmas => "lemmas",
            Suite::Statistics => "statistics",
            Suite::Classification => "theorem31",
            Suite::All => "all",
        })
    }
}

/// Limits shared by all suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteOptions {
    /// Largest dimension for exhaustive searches, at most 8.
    pub max_n: usize,
    /// Seed of the randomized checks.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_n: MAX_ENUM_DIM,
            seed: 0x5eed,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: Result<std::result::Result<(), String>>) -> Check {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(why)) => (false, why),
            Err(e) => (false, e.to_string()),
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

type Outcome = Result<std::result::Result<(), String>>;

fn first_failure<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> std::result::Result<(), String> {
    match items.into_iter().next() {
        None => Ok(()),
        Some(item) => Err(format!("fails at {item}")),
    }
}

/// Runs a suite; the checks themselves never abort the batch.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Check>> {
    if opts.max_n > MAX_ENUM_DIM || opts.max_n < 3 {
        return Err(Error::DimensionOutOfRange {
            n: opts.max_n,
            min: 3,
            max: MAX_ENUM_DIM,
        });
    }
    Ok(match suite {
        Suite::Forms => forms_suite(opts),
        Suite::Algebra => algebra_suite(opts),
        Suite::Lemmas => lemmas_suite(opts),
        Suite::Statistics => statistics_suite(),
        Suite::Classification => classification_suite(opts),
        Suite::All => [Suite::Forms, Suite::Algebra, Suite::Lemmas, Suite::Statistics, Suite::Classification]
            .into_iter()
            .flat_map(|s| run_suite(s, opts).expect("options already validated"))
            .collect(),
    })
}

fn signatures(lo: usize, hi: usize) -> impl Iterator<Item = Signature> {
    (lo..=hi).flat_map(Signature::all_with_n)
}

fn forms_suite(opts: &SuiteOptions) -> Vec<Check> {
    let cap = |n: usize| n.min(opts.max_n);
    let mut out = Vec::new();

    let hi = cap(7);
    out.push(Check::new(format!("f_O(p,q) generated by alpha_(p,q), n <= {hi}"), outcome_over(3, hi, |sig| {
        is_generating(&TwistingMap::oseries(sig)?, &CubicForm::alpha_pq(sig)?)
    })));

    let hi = cap(5);
    out.push(Check::new(format!("f_Cl(p,q) associative, n <= {hi}"), {
        let mut bad = Vec::new();
        for sig in signatures(1, hi) {
            let f = TwistingMap::clifford(sig).expect("valid dimension");
            let size = 1u32 << sig.n();
            let assoc = (0..size).all(|x| {
                (0..size).all(|y| {
                    (0..size).all(|z| !phi_bits(&f, x, y, z))
                })
            });
            if !assoc {
                bad.push(sig);
            }
        }
        Ok(first_failure(bad))
    }));

    out.push(Check::new("f_O(0,3) equals the octonion twisting", {
        // x1 x2 y3 + x1 y2 x3 + y1 x2 x3 + sum_{i<=j} x_i y_j
        let mut terms = vec![
            TwistMonomial { x: 0b011, y: 0b100 },
            TwistMonomial { x: 0b101, y: 0b010 },
            TwistMonomial { x: 0b110, y: 0b001 },
        ];
        for i in 0..3 {
            for j in i..3 {
                terms.push(TwistMonomial { x: 1 << i, y: 1 << j });
            }
        }
        TwistingMap::explicit(3, terms).and_then(|octonions| {
            let f = TwistingMap::oseries(Signature::new(0, 3))?;
            Ok(if f.pointwise_eq(&octonions) {
                Ok(())
            } else {
                Err("pointwise mismatch".to_string())
            })
        })
    }));

    let hi = cap(6);
    out.push(Check::new(format!("substitution twisting of alpha_(p,q) equals f_O(p,q), n <= {hi}"), outcome_over(3, hi, |sig| {
        Ok(canonical_twisting(&CubicForm::alpha_pq(sig)?).pointwise_eq(&TwistingMap::oseries(sig)?))
    })));

    out.push(Check::new(format!("ordered-monomial twisting generated by alpha_(p,q), n <= {hi}"), outcome_over(3, hi, |sig| {
        let form = CubicForm::alpha_pq(sig)?;
        is_generating(&pbw_twisting(&form)?, &form)
    })));
    out
}

fn comass(ctx: &AlgebraContext) -> bool {
    let n = ctx.dim();
    let size = 1u32 << n;
    let f = ctx.twist();
    let commute = (0..size).all(|x| {
        (0..size).all(|y| {
            let (s1, _) = ctx.basis_product_bits(x, y);
            let (s2, _) = ctx.basis_product_bits(y, x);
            (s1 * s2).is_minus() == (f.eval_bits(x, y) ^ f.eval_bits(y, x))
        })
    });
    let associate = (0..size).all(|x| {
        (0..size).all(|y| {
            (0..size).all(|z| {
                let (a, xy) = ctx.basis_product_bits(x, y);
                let (b, _) = ctx.basis_product_bits(xy, z);
                let (c, yz) = ctx.basis_product_bits(y, z);
                let (d, _) = ctx.basis_product_bits(x, yz);
                (a * b * c * d).is_minus() == phi_bits(f, x, y, z)
            })
        })
    });
    commute && associate
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> AlgebraElement {
    let terms: Vec<(GroupIndex, i64)> = (0..rng.gen_range(0..=4))
        .map(|_| {
            (
                GroupIndex::new(n, rng.gen_range(0..1u32 << n)).expect("in range"),
                rng.gen_range(-3..=3),
            )
        })
        .collect();
    AlgebraElement::from_terms(n, terms).expect("dimensions agree")
}

fn algebra_suite(opts: &SuiteOptions) -> Vec<Check> {
    let cap = |n: usize| n.min(opts.max_n);
    let mut out = Vec::new();

    let hi = cap(5);
    out.push(Check::new(format!("commutation and association signs, n <= {hi}"), outcome_over(3, hi, |sig| {
        Ok(comass(&AlgebraContext::oseries(sig)?))
    })));

    let hi = cap(6);
    out.push(Check::new(format!("graded alternativity, n <= {hi}"), outcome_over(3, hi, |sig| {
        graded_alternative_check(&CubicForm::alpha_pq(sig)?)
    })));

    let hi = cap(7);
    out.push(Check::new(format!("even part is Cl(p,q-1), n <= {hi}"), outcome_over(3, hi, |sig| {
        Ok(sig.q == 0 || even_subalgebra_check(sig)?)
    })));

    let hi = opts.max_n;
    out.push(Check::new(format!("identity generators recover the signature, n <= {hi}"), outcome_over(3, hi, |sig| {
        let gens = GeneratorSet::new((1..=sig.n()).map(|i| GroupIndex::unit(sig.n(), i)).collect())?;
        let report = analyze_generator_set(&CubicForm::alpha_pq(sig)?, &gens)?;
        Ok(report.valid && report.signature == sig)
    })));

    out.push(Check::new(format!("direct sum iff n = 0 mod 4 and p even, n <= {hi}"), outcome_over(3, hi, |sig| {
        let d = decomposability(&CubicForm::alpha_pq(sig)?)?;
        Ok(d.decomposes == (sig.n() % 4 == 0 && sig.p % 2 == 0))
    })));

    let hi = cap(6);
    out.push(Check::new(format!("bilinear and unital product, seed {}, n <= {hi}", opts.seed), {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut failure = None;
        'trials: for trial in 0..1000 {
            let n = rng.gen_range(3..=hi);
            let p = rng.gen_range(0..=n);
            let sig = Signature::new(p, n - p);
            let ctx = AlgebraContext::oseries(sig).expect("n >= 3");
            let (a, b, c) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
            let k = rng.gen_range(-4..=4);
            let one = AlgebraElement::one(n);
            let m = |x: &AlgebraElement, y: &AlgebraElement| multiply(&ctx, x, y).expect("same n");
            let checks = [
                m(&a, &one) == a,
                m(&one, &a) == a,
                m(&a, &b.add(&c).expect("same n")) == m(&a, &b).add(&m(&a, &c)).expect("same n"),
                m(&a.add(&b).expect("same n"), &c) == m(&a, &c).add(&m(&b, &c)).expect("same n"),
                m(&a.scale(k), &b) == m(&a, &b).scale(k),
            ];
            if checks.iter().any(|ok| !ok) {
                failure = Some(format!("trial {trial} in {sig}"));
                break 'trials;
            }
        }
        Ok(failure.map_or(Ok(()), Err))
    }));
    out
}

/// `Ok(Err(first failing signature))` style outcome of a predicate over all
/// signatures with `lo <= n <= hi`.
fn outcome_over(lo: usize, hi: usize, pred: impl Fn(Signature) -> Result<bool>) -> Outcome {
    for sig in signatures(lo, hi) {
        if !pred(sig)? {
            return Ok(Err(format!("fails at {sig}")));
        }
    }
    Ok(Ok(()))
}

fn lemmas_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=12 {
        out.push(Check::new(format!("catalogue witnesses verify, n = {n}"), {
            catalog(n).map(|ws| {
                let bad: Vec<String> = ws
                    .iter()
                    .filter(|w| !w.witness.verify())
                    .map(|w| format!("{} at {}", w.lemma, w.witness.src()))
                    .collect();
                first_failure(bad)
            })
        }));
    }
    let hi = opts.max_n.min(6);
    out.push(Check::new(format!("alternate generating function, q > 0, n <= {hi}"), outcome_over(3, hi, |sig| {
        Ok(sig.q == 0 || alternate_matches(sig)?)
    })));
    out
}

/// `alpha_{p,q}(A x)` equals the alternate form at `x` for the change of
/// generators `e_i -> e_i + e_n` (`i < n`), `e_n -> e_n`.
pub fn alternate_matches(sig: Signature) -> Result<bool> {
    let n = sig.n();
    let last = GroupIndex::unit(n, n);
    let images: Vec<GroupIndex> = (1..=n)
        .map(|i| if i < n { GroupIndex::unit(n, i) + last } else { last })
        .collect();
    let a = BitMatrix::from_columns(&images)?;
    let alpha = CubicForm::alpha_pq(sig)?;
    let alternate = CubicForm::alternate(sig)?;
    Ok(GroupIndex::all(n).all(|x| alpha.eval(a.apply(x).expect("same n")) == alternate.eval(x)))
}

fn statistics_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(Check::new("statistics table n = 3..12", {
        let mut bad = Vec::new();
        for (row, n) in PRINTED_STATISTICS.iter().zip(3..) {
            for (q, &expected) in row.iter().enumerate() {
                let sig = Signature::new(n - q, q);
                match statistics(sig) {
                    Ok(s) if s == expected => {}
                    Ok(s) => bad.push(format!("s{sig} = {s}, expected {expected}")),
                    Err(e) => bad.push(e.to_string()),
                }
            }
        }
        Ok(first_failure(bad))
    }));
    out.push(Check::new("closed forms agree with counting, n = 3..16", {
        let mut bad = Vec::new();
        for sig in signatures(3, 16) {
            if let Some(c) = statistics_closed_form(sig) {
                if statistics(sig).ok() != Some(c) {
                    bad.push(sig);
                }
            }
        }
        Ok(first_failure(bad))
    }));
    out.push(Check::new("s(n,0) < s(p,q) < s(0,n), n = 5..12", {
        let mut bad = Vec::new();
        for n in 5..=12 {
            match exceptional_check(n) {
                Ok(true) => {}
                Ok(false) => bad.push(format!("n = {n}")),
                Err(e) => bad.push(e.to_string()),
            }
        }
        Ok(first_failure(bad))
    }));
    out
}

fn classification_suite(opts: &SuiteOptions) -> Vec<Check> {
    let hi = opts.max_n;
    let mut out = Vec::new();
    let present = |src: Signature, dst: Signature| -> Result<bool> {
        Ok(find_graded_iso(src, dst)?.is_some_and(|w| w.verify()))
    };

    out.push(Check::new(format!("(p,q) ~ (q,p), pq != 0, n <= {hi}"), outcome_over(3, hi, |sig| {
        if sig.p == 0 || sig.q == 0 {
            return Ok(true);
        }
        present(sig, sig.swapped())
    })));

    out.push(Check::new(format!("(p+4,q) ~ (p,q+4), pq != 0, n <= {hi}"), outcome_over(3, hi, |sig| {
        if sig.p < 5 || sig.q == 0 {
            return Ok(true);
        }
        present(sig, Signature::new(sig.p - 4, sig.q + 4))
    })));

    out.push(Check::new(format!("(n,0) is alone in its class, 5 <= n <= {hi}"), {
        outcome_over(5, hi, |sig| {
            let exceptional = Signature::new(sig.n(), 0);
            Ok(sig == exceptional || find_graded_iso(exceptional, sig)?.is_none())
        })
    }));

    for n in 3..=6.min(hi) {
        out.push(Check::new(format!("classification of n = {n}"), {
            classification_row(n).map(|row| {
                let classes = row.class_members();
                let singleton = |s: Signature| classes.iter().any(|c| c.as_slice() == [s]);
                let sig = Signature::new;
                let ok = match n {
                    3 => classes == vec![vec![sig(3, 0), sig(2, 1), sig(1, 2)], vec![sig(0, 3)]],
                    4 => {
                        classes
                            == vec![
                                vec![sig(4, 0), sig(2, 2)],
                                vec![sig(3, 1), sig(1, 3)],
                                vec![sig(0, 4)],
                            ]
                    }
                    _ => {
                        let count = if n == 5 { 4 } else { 5 };
                        classes.len() == count && singleton(sig(n, 0)) && singleton(sig(0, n))
                    }
                };
                if ok {
                    Ok(())
                } else {
                    Err(format!("got {classes:?}"))
                }
            })
        }));
    }

    let hi5 = hi.min(5);
    out.push(Check::new(format!("sign maps of all found witnesses, n <= {hi5}"), {
        let mut bad = Vec::new();
        for n in 3..=hi5 {
            for src in Signature::all_with_n(n) {
                for dst in Signature::all_with_n(n) {
                    match find_graded_iso(src, dst).and_then(|w| w.map(|w| sign_map(&w)).transpose()) {
                        Ok(_) => {}
                        Err(e) => bad.push(format!("{src} -> {dst}: {e}")),
                    }
                }
            }
        }
        Ok(first_failure(bad))
    }));
    out.push(Check::new("identity witnesses carry trivial signs", {
        let bad: Vec<Signature> = signatures(3, hi5)
            .filter(|&sig| {
                let w = IsoWitness::identity(sig).and_then(|w| sign_map(&w));
                !w.is_ok_and(|w| w.signs().is_some_and(|s| s.iter().all(|c| !c.is_minus())))
            })
            .collect();
        Ok(first_failure(bad))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for name in ["forms", "algebra", "lemmas", "statistics", "theorem31", "all"] {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn max_n_is_capped() {
        let opts = SuiteOptions { max_n: 9, seed: 1 };
        assert!(run_suite(Suite::Statistics, &opts).is_err());
    }

    #[test]
    fn statistics_suite_passes() {
        let checks = run_suite(Suite::Statistics, &SuiteOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
