use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use opq::algebra::{multiply, AlgebraContext, AlgebraElement};
use opq::classify::{
    classification_row, find_graded_iso, sign_map, simplicity_report, statistics,
    statistics_closed_form, ClassRow,
};
use opq::forms::{canonical_twisting, is_generating, CubicForm};
use opq::suites::{run_suite, Suite, SuiteOptions};
use opq::z2lin::Signature;
use opq::Error;

mod render;

/// Graded twisted group algebras O_{p,q}: statistics, isomorphism witnesses
/// and the classification table.
#[derive(Parser, Debug)]
#[command(name = "opq", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest dimension for exhaustive searches (3..=8).
    #[arg(long, global = true, default_value_t = 8,
          value_parser = clap::value_parser!(u8).range(3..=8))]
    max_n: u8,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Statistics s(p,q), with the closed form where one is known.
    Stats { p: usize, q: usize },
    /// Statistics and classes for N_MIN <= n <= N_MAX (3..=12).
    Table { n_min: usize, n_max: usize },
    /// A graded isomorphism O_{p2,q2} -> O_{p,q}, or NONE.
    Iso { p: usize, q: usize, p2: usize, q2: usize },
    /// Product of two elements of O_{p,q}, e.g. "1 + 2*[110] - [001]".
    Mult {
        p: usize,
        q: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run a check suite: forms, algebra, lemmas, statistics, theorem31, all.
    Verify { suite: String },
    /// Center of O_{p,q} against the printed simplicity statements.
    Simplicity { p: usize, q: usize },
    /// The substitution twisting of a cubic form such as "x1*x2*x3 + x1".
    Twisting {
        form: String,
        /// Number of variables; inferred from the largest index if omitted.
        #[arg(long)]
        dim: Option<usize>,
    },
}

enum Failure {
    Usage(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HomomorphismViolation { .. } | Error::InvalidWitness { .. } => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let max_n = cli.max_n as usize;
    match &cli.command {
        Command::Stats { p, q } => {
            let sig = Signature::new(*p, *q);
            let s = statistics(sig)?;
            let closed = statistics_closed_form(sig);
            Ok(if cli.json {
                line(json!({"p": p, "q": q, "s": s, "closed_form": closed}))
            } else {
                match closed {
                    Some(c) => format!("s{sig} = {s} (closed form {c})\n"),
                    None => format!("s{sig} = {s}\n"),
                }
            })
        }
        Command::Table { n_min, n_max } => {
            if !(3..=12).contains(n_min) || !(3..=12).contains(n_max) || n_min > n_max {
                return Err(Error::Parse(format!(
                    "table range must satisfy 3 <= N_MIN <= N_MAX <= 12, got {n_min}..{n_max}"
                ))
                .into());
            }
            let rows: Vec<ClassRow> = (*n_min..=*n_max)
                .map(classification_row)
                .collect::<Result<_, _>>()?;
            Ok(if cli.json {
                emit(&rows)
            } else {
                render::table(&rows)
            })
        }
        Command::Iso { p, q, p2, q2 } => {
            let (src, dst) = (Signature::new(*p, *q), Signature::new(*p2, *q2));
            if src.n() != dst.n() {
                return Err(Error::UnequalDimensions { src, dst }.into());
            }
            if src.n() > max_n {
                return Err(Error::GuardExceeded {
                    operation: "iso",
                    n: src.n(),
                    max: max_n,
                }
                .into());
            }
            match find_graded_iso(src, dst)? {
                Some(w) => {
                    let w = if w.dim() <= 6 { sign_map(&w)? } else { w };
                    Ok(emit(&w.to_json()))
                }
                None => {
                    let (s_src, s_dst) = (statistics(src)?, statistics(dst)?);
                    Ok(if cli.json {
                        line(json!({
                            "n": src.n(),
                            "src": [src.p, src.q],
                            "dst": [dst.p, dst.q],
                            "witness": null,
                            "s_src": s_src,
                            "s_dst": s_dst,
                        }))
                    } else {
                        format!("NONE s{src}={s_src} s{dst}={s_dst}\n")
                    })
                }
            }
        }
        Command::Mult { p, q, a, b } => {
            let sig = Signature::new(*p, *q);
            let ctx = AlgebraContext::oseries(sig)?;
            let a = AlgebraElement::parse(sig.n(), a)?;
            let b = AlgebraElement::parse(sig.n(), b)?;
            let product = multiply(&ctx, &a, &b)?;
            Ok(if cli.json {
                line(json!({
                    "signature": [p, q],
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "product": product.to_string(),
                }))
            } else {
                format!("{product}\n")
            })
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let opts = SuiteOptions {
                max_n,
                seed: cli.seed,
            };
            let checks = run_suite(suite, &opts)?;
            let passed = checks.iter().all(|c| c.passed);
            let out = if cli.json {
                line(json!({"suite": suite.to_string(), "passed": passed, "checks": checks}))
            } else {
                render::checks(&checks)
            };
            if passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Simplicity { p, q } => {
            let report = simplicity_report(Signature::new(*p, *q))?;
            Ok(if cli.json {
                emit(&report)
            } else {
                render::simplicity(&report)
            })
        }
        Command::Twisting { form, dim } => {
            let form = match dim {
                Some(n) => CubicForm::parse(*n, form)?,
                None => CubicForm::parse_infer(form)?,
            };
            let twist = canonical_twisting(&form);
            let generating = if form.dim() <= 8 {
                Some(is_generating(&twist, &form)?)
            } else {
                None
            };
            Ok(if cli.json {
                line(json!({
                    "n": form.dim(),
                    "form": form.to_string(),
                    "twisting": twist.to_string(),
                    "generating": generating,
                }))
            } else {
                let mut out = format!("alpha(x) = {form}\nf(x,y) = {twist}\n");
                if let Some(g) = generating {
                    out.push_str(&format!("generating: {g}\n"));
                }
                out
            })
        }
    }
}

fn line(value: serde_json::Value) -> String {
    format!("{value}\n")
}

fn emit<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("output serializes");
    out.push('\n');
    out
}
