//! Command-line front end: algebra operations on forests, the Connes-Moscovici
//! coefficient tables, P polynomials, harmonic-form fits and the verification
//! harness.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, parse or guard error.

use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ckhopf::cm::{delta, delta_coproduct, delta_coproduct_monomials, extract_coefficients, recursion_table, CoeffTableRecord};
use ckhopf::dominant::{closed_form_table, fit_harmonic_form, fit_harmonic_form_auto, poly_record, DominantSeq, TailSeq};
use ckhopf::hopf::{antipode_recursive, antipode_takeuchi, coproduct, graft_b, product};
use ckhopf::prelie::{growth_n, prelie};
use ckhopf::sequences::{sequence, Family};
use ckhopf::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use ckhopf::{Error, LinComb};

#[derive(Parser)]
#[command(name = "ckhopf", version, about = "Exact computations in the Connes-Kreimer Hopf algebra")]
struct Cli {
    /// Output format; csv is available for `coeffs` and `sequence`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AntipodeMethod {
    Recursive,
    Takeuchi,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeltaView {
    /// `δ_n` in the forest basis.
    Basis,
    /// `Δ(δ_n)` written in `δ`-monomials.
    Coproduct,
    /// `Δ(δ_n)` in the forest basis.
    CoproductForest,
    /// `S(δ_n)` in the forest basis.
    AntipodeForest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffMethod {
    Extract,
    Recursion,
    ClosedForm,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Commutative product (disjoint union) of two combinations.
    Product { a: String, b: String },
    /// Cut coproduct; the left factor is the trunk.
    Coproduct { a: String },
    /// Antipode.
    Antipode {
        a: String,
        #[arg(long, value_enum, default_value_t = AntipodeMethod::Recursive)]
        method: AntipodeMethod,
    },
    /// PreLie grafting product `a • b`.
    Prelie { a: String, b: String },
    /// Grafting operator: a new root below every forest.
    #[command(visible_alias = "B", alias = "b")]
    Graft { a: String },
    /// Growth operator `x • []`.
    #[command(visible_alias = "N", alias = "n")]
    Grow { a: String },
    /// The generator `δ_n` and derived elements.
    Delta {
        n: usize,
        #[arg(long, value_enum, default_value_t = DeltaView::Basis)]
        what: DeltaView,
        /// Largest n accepted.
        #[arg(long, default_value_t = 12)]
        max_size: usize,
    },
    /// Coefficient table of `S(δ_n)` in the `δ`-monomials.
    Coeffs {
        n: usize,
        #[arg(long, value_enum, default_value_t = CoeffMethod::Recursion)]
        method: CoeffMethod,
        /// Largest order accepted; extraction works in the forest basis and grows fast.
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
    /// The polynomial `P` of the dominant sequence of a tail `i2,i3,...`.
    Poly {
        tail: String,
        /// Largest weight accepted.
        #[arg(long, default_value_t = 10)]
        max_weight: u32,
    },
    /// Runs verification suites; exits 1 if any check fails.
    Verify {
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
        /// Exhaustive checks cover forests and pairs up to this size [default: 6].
        #[arg(long)]
        max_size: Option<usize>,
        /// Exhaustive triples up to this total size [default: max-size + 1].
        #[arg(long)]
        triple_size: Option<usize>,
        /// Coefficient tables are compared for orders 1..=order [default: 8].
        #[arg(long)]
        order: Option<usize>,
        /// Number of random triples [default: 1000].
        #[arg(long)]
        random_triples: Option<usize>,
        /// Maximum size of each random forest [default: 8].
        #[arg(long)]
        random_size: Option<usize>,
        /// Seed for the random triples [default: 12648430].
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Terms of a coefficient family, exact.
    Sequence {
        /// a000142, a001563, a152947, a067318, a122105 or tail.
        family: String,
        /// First n; orders where the family is undefined are skipped [default: 1].
        #[arg(long)]
        n_min: Option<usize>,
        /// Last n, inclusive.
        #[arg(long)]
        n_max: usize,
        /// Tail `i2,i3,...` for the `tail` family.
        #[arg(long)]
        tail: Option<String>,
        /// Largest n-max accepted.
        #[arg(long, default_value_t = 60)]
        limit: usize,
    },
    /// Fits `b` along a tail as a polynomial in n plus harmonic sums.
    Fit {
        /// Tail `i2,i3,...`.
        tail: String,
        /// First order of the fitting window; the default window is chosen from the ansatz size.
        #[arg(long, requires = "n_max")]
        n_min: Option<usize>,
        /// Last order of the fitting window.
        #[arg(long, requires = "n_min")]
        n_max: Option<usize>,
    },
}

enum Failure {
    /// A verification ran and reported a failure; its output is already printed.
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn operand(text: &str) -> Result<LinComb, Failure> {
    text.parse::<LinComb>()
        .map_err(|e| Failure::Usage(format!("operand `{text}`: {e}")))
}

fn no_csv(format: Format, command: &str) -> CmdResult {
    if format == Format::Csv {
        return Err(Failure::Usage(format!("csv output is not available for `{command}`")));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialise")
}

fn print_lincomb(format: Format, x: &LinComb) {
    match format {
        Format::Json => println!("{}", x.to_json()),
        _ => println!("{x}"),
    }
}

fn run(cli: &Cli) -> CmdResult {
    let format = cli.format;
    match &cli.command {
        Command::Product { a, b } => {
            no_csv(format, "product")?;
            print_lincomb(format, &product(&operand(a)?, &operand(b)?));
        }
        Command::Prelie { a, b } => {
            no_csv(format, "prelie")?;
            print_lincomb(format, &prelie(&operand(a)?, &operand(b)?));
        }
        Command::Coproduct { a } => {
            no_csv(format, "coproduct")?;
            let t = coproduct(&operand(a)?);
            match format {
                Format::Json => println!("{}", t.to_json()),
                _ => println!("{t}"),
            }
        }
        Command::Antipode { a, method } => {
            no_csv(format, "antipode")?;
            let x = operand(a)?;
            let s = match method {
                AntipodeMethod::Recursive => antipode_recursive(&x),
                AntipodeMethod::Takeuchi => antipode_takeuchi(&x),
            };
            print_lincomb(format, &s);
        }
        Command::Graft { a } => {
            no_csv(format, "graft")?;
            print_lincomb(format, &graft_b(&operand(a)?));
        }
        Command::Grow { a } => {
            no_csv(format, "grow")?;
            print_lincomb(format, &growth_n(&operand(a)?));
        }
        Command::Delta { n, what, max_size } => {
            no_csv(format, "delta")?;
            cmd_delta(format, *n, *what, *max_size)?;
        }
        Command::Coeffs { n, method, max_order } => cmd_coeffs(format, *n, *method, *max_order)?,
        Command::Poly { tail, max_weight } => {
            no_csv(format, "poly")?;
            let t: TailSeq = tail.parse()?;
            let w = t.dominant().weight();
            if w > *max_weight {
                return Err(Error::Guard { requested: w as usize, limit: *max_weight as usize }.into());
            }
            let rec = poly_record(&t);
            match format {
                Format::Json => println!("{}", json(&rec)),
                _ => {
                    println!("{}", rec.polynomial);
                    println!("weight: {}", rec.weight);
                    println!("degree: {}", rec.degree);
                }
            }
        }
        Command::Verify {
            suites,
            max_size,
            triple_size,
            order,
            random_triples,
            random_size,
            seed,
        } => {
            no_csv(format, "verify")?;
            let mut cfg = VerifyConfig::default();
            if let Some(v) = max_size {
                cfg.max_size = *v;
            }
            cfg.triple_size = *triple_size;
            if let Some(v) = order {
                cfg.order = *v;
            }
            if let Some(v) = random_triples {
                cfg.random_triples = *v;
            }
            if let Some(v) = random_size {
                cfg.random_size = *v;
            }
            if let Some(v) = seed {
                cfg.seed = *v;
            }
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() };
            cmd_verify(format, &suites, &cfg)?;
        }
        Command::Sequence { family, n_min, n_max, tail, limit } => {
            if n_max > limit {
                return Err(Error::Guard { requested: *n_max, limit: *limit }.into());
            }
            let fam = Family::parse(family, tail.as_deref())?;
            let rec = sequence(&fam, n_min.unwrap_or(1), *n_max);
            match format {
                Format::Json => println!("{}", json(&rec)),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(std::io::stdout());
                    w.write_record(["n", "value"]).map_err(|e| Failure::Usage(e.to_string()))?;
                    for t in &rec.terms {
                        w.write_record([t.n.to_string(), t.value.clone()])
                            .map_err(|e| Failure::Usage(e.to_string()))?;
                    }
                    w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
                }
                Format::Text => {
                    for t in &rec.terms {
                        println!("{}", t.value);
                    }
                }
            }
        }
        Command::Fit { tail, n_min, n_max } => {
            no_csv(format, "fit")?;
            let d: DominantSeq = tail.parse()?;
            let report = match (n_min, n_max) {
                (Some(lo), Some(hi)) => fit_harmonic_form(&d, *lo, *hi)?,
                _ => fit_harmonic_form_auto(&d)?,
            };
            match format {
                Format::Json => println!("{}", json(&report.to_record())),
                _ => println!("{report}"),
            }
            if report.form().is_none() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn cmd_delta(format: Format, n: usize, what: DeltaView, max_size: usize) -> CmdResult {
    if n > max_size {
        return Err(Error::Guard { requested: n, limit: max_size }.into());
    }
    match what {
        DeltaView::Basis => print_lincomb(format, &delta(n)?),
        DeltaView::AntipodeForest => print_lincomb(format, &antipode_recursive(&delta(n)?)),
        DeltaView::CoproductForest => {
            let t = delta_coproduct(n)?;
            match format {
                Format::Json => println!("{}", t.to_json()),
                _ => println!("{t}"),
            }
        }
        DeltaView::Coproduct => {
            let t = delta_coproduct_monomials(n)?;
            match format {
                Format::Json => println!("{}", json(&t.to_records())),
                _ => println!("{t}"),
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Agreement {
    n: usize,
    agree: bool,
    first_difference: Option<Vec<u32>>,
    tables: Vec<CoeffTableRecord>,
}

fn cmd_coeffs(format: Format, n: usize, method: CoeffMethod, max_order: usize) -> CmdResult {
    if n > max_order {
        return Err(Error::Guard { requested: n, limit: max_order }.into());
    }
    let table = match method {
        CoeffMethod::Extract => extract_coefficients(n)?,
        CoeffMethod::Recursion => recursion_table(n)?,
        CoeffMethod::ClosedForm => closed_form_table(n)?,
        CoeffMethod::All => return cmd_coeffs_all(format, n),
    };
    match format {
        Format::Text => print!("{table}"),
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(())
}

fn cmd_coeffs_all(format: Format, n: usize) -> CmdResult {
    let tables = [extract_coefficients(n)?, recursion_table(n)?, closed_form_table(n)?];
    let diff = tables[1..].iter().find_map(|t| tables[0].first_difference(t));
    match format {
        Format::Json => {
            let out = Agreement {
                n,
                agree: diff.is_none(),
                first_difference: diff.as_ref().map(|d| d.entries().to_vec()),
                tables: tables.iter().map(|t| t.to_record()).collect(),
            };
            println!("{}", json(&out));
        }
        Format::Text | Format::Csv => {
            if format == Format::Text {
                print!("{}", tables[0]);
            } else {
                print!("{}", tables[0].to_csv());
            }
            let verdict = match &diff {
                None => "AGREE".to_string(),
                Some(idx) => {
                    let values: Vec<String> = tables
                        .iter()
                        .map(|t| {
                            let v = t.get(idx).map_or("missing".into(), ToString::to_string);
                            format!("{} {v}", t.method)
                        })
                        .collect();
                    format!("DISAGREE at {idx}: {}", values.join(", "))
                }
            };
            if format == Format::Csv {
                eprintln!("{verdict}");
            } else {
                println!("{verdict}");
            }
        }
    }
    if diff.is_some() {
        return Err(Failure::Verification);
    }
    Ok(())
}

/// Suites run on their own threads; reports come back in the requested order.
fn cmd_verify(format: Format, suites: &[Suite], cfg: &VerifyConfig) -> CmdResult {
    let reports: Vec<SuiteReport> = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                thread::Builder::new()
                    .name(suite.name().into())
                    .stack_size(64 << 20)
                    .spawn_scoped(scope, move || run_suite(suite, cfg))
                    .expect("spawn verification thread")
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    match format {
        Format::Json => println!("{}", json(&reports)),
        _ => {
            for r in &reports {
                print!("{r}");
            }
        }
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
