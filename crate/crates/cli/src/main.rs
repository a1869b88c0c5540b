//! `partreg`: analyze patterns and search for colourings from the shell.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use partreg::analyzer::{analyze, Status};
use partreg::colouring::{save_colouring, Colouring};
use partreg::pattern::{parse_pattern, Pattern};
use partreg::search::{
    auto_block, enumerate_solutions, fs_set, fs_ratio_search, propose_blocking, ratio_set,
    scan_monochromatic, search_witness, verify_blocking, WitnessResult,
};

use report::{Check, Report, Search, Tuple};

/// Exit code for malformed patterns, colouring specs and files.
const EXIT_INPUT: u8 = 64;
/// Exit code for failures inside a search.
const EXIT_INTERNAL: u8 = 70;

const STABILIZATION_NOTE: &str = "a check passes when no monochromatic solution has x or y in (N/2, N]; \
     this is finite-scale evidence, not a proof";
const WITNESS_NOTE: &str = "only solutions with every value in 1..=N constrain the search";

#[derive(Parser)]
#[command(name = "partreg", version, about = "Partition regularity of product-of-shifts patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a pattern and print the derivation.
    Analyze {
        pattern: String,
        /// Prime bound for the suggested blocking colourings.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Check a blocking colouring, or search the proposed ones.
    Block {
        pattern: String,
        #[arg(long, required_unless_present = "auto", conflicts_with = "auto")]
        colouring: Option<String>,
        /// Try the proposals for a NOT_PR verdict in order.
        #[arg(long)]
        auto: bool,
        #[arg(long = "N", default_value_t = 10_000)]
        n: u64,
        /// Prime bound for the proposals.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        /// Monochromatic tuples listed per colouring.
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Backtracking search for an r-colouring of 1..=N without monochromatic solutions.
    Witness {
        pattern: String,
        #[arg(short = 'r', default_value_t = 2)]
        r: u32,
        #[arg(long = "N")]
        n: u64,
        /// Maximum number of colour assignments.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Write a found witness in the explicit colouring format.
        #[arg(long)]
        save: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// List solutions with x, y <= N, optionally only monochromatic ones.
    Solutions {
        pattern: String,
        #[arg(long)]
        colouring: Option<String>,
        #[arg(long = "N")]
        n: u64,
        /// Keep only monochromatic solutions (needs --colouring).
        #[arg(long, requires = "colouring")]
        mono: bool,
        /// Solutions listed.
        #[arg(long, default_value_t = 20)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Search a monochromatic sequence whose finite sums and ratios share one colour.
    Fs {
        #[arg(long)]
        colouring: String,
        #[arg(long, default_value_t = 2)]
        len: usize,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Print the canonical form reached by the shift reduction.
    Reduce {
        pattern: String,
        #[command(flatten)]
        out: Output,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure {
        code: EXIT_INPUT,
        error: e.into(),
    }
}

fn internal<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        error: e.into(),
    }
}

fn pattern_arg(text: &str) -> Result<Pattern, Failure> {
    parse_pattern(text).map_err(|e| {
        let at = e.position().map(|p| format!("\n  {text}\n  {:>1$}", "^", p + 1)).unwrap_or_default();
        input(anyhow::anyhow!("{e}{at}"))
    })
}

fn colouring_arg(spec: &str) -> Result<Colouring, Failure> {
    spec.parse::<Colouring>()
        .with_context(|| format!("invalid colouring {spec:?}"))
        .map_err(input)
}

fn emit(report: &Report, out: &Output) {
    if out.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn verdict_code(status: Status) -> u8 {
    match status {
        Status::Pr => 0,
        Status::NotPr => 1,
        Status::Open => 2,
        Status::Unsupported => 3,
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { pattern, bound, out } => {
            let p = pattern_arg(&pattern)?;
            let v = analyze(&p);
            let mut report = Report::for_pattern(&p).with_verdict(&v);
            report.colourings = propose_blocking(&p, &v, bound).iter().map(ToString::to_string).collect();
            emit(&report, &out);
            Ok(verdict_code(v.status))
        }
        Command::Block {
            pattern,
            colouring,
            auto,
            n,
            bound,
            cap,
            out,
        } => {
            let p = pattern_arg(&pattern)?;
            let v = analyze(&p);
            let mut report = Report::for_pattern(&p).with_verdict(&v);
            let (checks, certificate) = if auto {
                if v.status != Status::NotPr {
                    return Err(input(anyhow::anyhow!(
                        "auto mode needs a NOT_PR verdict, the pattern is {}",
                        v.status
                    )));
                }
                let result = auto_block(&p, &v, n, bound).map_err(internal)?;
                report.colourings = result.tried.iter().map(|r| r.colouring.to_string()).collect();
                let checks: Vec<_> = result.tried.iter().map(|r| Check::new(r, cap)).collect();
                let certificate = result.certificate().map(|r| r.colouring.to_string());
                (checks, certificate)
            } else {
                let spec = colouring.expect("clap requires --colouring without --auto");
                let c = colouring_arg(&spec)?;
                let r = verify_blocking(&p, &c, n).map_err(input)?;
                let mut check = Check::new(&r, cap);
                check.colouring = spec.clone();
                report.colourings = vec![spec.clone()];
                let certificate = r.passes().then_some(spec);
                (vec![check], certificate)
            };
            let code = if certificate.is_some() { 0 } else { 1 };
            report.search = Some(Search::Block {
                n,
                auto,
                checks,
                certificate,
                note: STABILIZATION_NOTE.to_string(),
            });
            emit(&report, &out);
            Ok(code)
        }
        Command::Witness {
            pattern,
            r,
            n,
            budget,
            save,
            out,
        } => {
            if r == 0 {
                return Err(input(anyhow::anyhow!("-r must be at least 1")));
            }
            let p = pattern_arg(&pattern)?;
            let result = search_witness(&p, r, n, budget).map_err(input)?;
            let (label, nodes, table, code) = match &result {
                WitnessResult::Witness(c) => {
                    let table = (1..=n).map(|x| c.colour_of(x).map(|v| v as u32)).collect::<Result<_, _>>();
                    ("WITNESS", None, table.map_err(internal)?, 0)
                }
                WitnessResult::Unsat => ("UNSAT", None, Vec::new(), 1),
                WitnessResult::BudgetExhausted { nodes } => ("BUDGET_EXHAUSTED", Some(*nodes), Vec::new(), 2),
            };
            if let (Some(path), WitnessResult::Witness(c)) = (&save, &result) {
                save_colouring(c, path)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(internal)?;
            }
            let mut report = Report::for_pattern(&p);
            report.search = Some(Search::Witness {
                n,
                r,
                budget,
                result: label.to_string(),
                nodes,
                table,
                note: WITNESS_NOTE.to_string(),
            });
            emit(&report, &out);
            Ok(code)
        }
        Command::Solutions {
            pattern,
            colouring,
            n,
            mono,
            cap,
            out,
        } => {
            let p = pattern_arg(&pattern)?;
            let mut report = Report::for_pattern(&p);
            let search = match (&colouring, mono) {
                (Some(spec), true) => {
                    let c = colouring_arg(spec)?;
                    let scan = scan_monochromatic(&p, &c, n, cap).map_err(input)?;
                    Search::Solutions {
                        n,
                        colouring: Some(spec.clone()),
                        mono: true,
                        count: scan.count_full,
                        uncoverable: Some(scan.uncoverable),
                        tuples: scan.tuples.iter().map(Tuple::from).collect(),
                    }
                }
                _ => {
                    if let Some(spec) = &colouring {
                        colouring_arg(spec)?;
                    }
                    let all = enumerate_solutions(&p, n, usize::MAX).map_err(input)?;
                    Search::Solutions {
                        n,
                        colouring: colouring.clone(),
                        mono: false,
                        count: all.len() as u64,
                        uncoverable: None,
                        tuples: all.iter().take(cap).map(Tuple::from).collect(),
                    }
                }
            };
            report.search = Some(search);
            emit(&report, &out);
            Ok(0)
        }
        Command::Fs {
            colouring,
            len,
            bound,
            out,
        } => {
            if !(1..=partreg::search::MAX_FS_LEN).contains(&len) {
                return Err(input(anyhow::anyhow!(
                    "--len must lie in 1..={}",
                    partreg::search::MAX_FS_LEN
                )));
            }
            let c = colouring_arg(&colouring)?;
            let xs = fs_ratio_search(&c, len, bound).unwrap_or_default();
            let found = !xs.is_empty();
            let report = Report {
                search: Some(Search::Fs {
                    colouring,
                    len,
                    bound,
                    sums: if found { fs_set(&xs).into_iter().collect() } else { Vec::new() },
                    ratios: if found { ratio_set(&xs).values().into_iter().collect() } else { Vec::new() },
                    xs,
                }),
                ..Report::default()
            };
            emit(&report, &out);
            Ok(if found { 0 } else { 1 })
        }
        Command::Reduce { pattern, out } => {
            let p = pattern_arg(&pattern)?;
            let v = analyze(&p);
            let found = v.canonical.is_some();
            emit(&Report::for_pattern(&p).with_verdict(&v), &out);
            if !found {
                eprintln!("no shift reduction applies to {}", p.source());
            }
            Ok(if found { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
