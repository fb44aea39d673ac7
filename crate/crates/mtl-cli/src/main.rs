//! Command-line front end for the dense/discrete temporal-logic toolkit.
//!
//! Every verb works over exact rationals (`n/d`); decimal floats are not
//! accepted anywhere. Formula, behavior, and problem arguments may be given
//! either as file paths or as inline strings — an argument naming an
//! existing file is read from disk, anything else is parsed as-is.
//!
//! Exit codes follow one contract across verbs: `0` success (including a
//! verified problem), `1` a refuted problem or a property suite with
//! violations, `2` an inconclusive or rejected analysis (unknown verdict,
//! sampling period outside the formula's admitted granularity, underpowered
//! suite), `64` usage errors, `65` malformed input text. Diagnostics go to
//! stderr with line/column positions where available; results go to stdout.
//!
//! The only environment variable consulted is `MTL_SEED`, the default seed
//! for `suite` when `--seed` is not given.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mtl::behavior::SamplingParams;
use mtl::formula::Formula;
use mtl::rat::{is_int, parse_rat, to_i64, Rat};
use mtl::semantics::{eval_dense, eval_discrete, sat_seq, sat_set};
use mtl::syntax::{
    parse_behavior, parse_formula, parse_problem, print_discrete_behavior, AnyBehavior,
};
use mtl::transform::{adapt_r, adapt_z, over_approx, under_approx, TransformError};
use mtl::verify::{mtl_verify, Outcome, SystemSpec, VerifyError};
use mtl_harness::suites::{run_all, run_suite, SuiteName, SuiteReport};
use mtl_harness::GenConfig;

/// Exit status for inconclusive or rejected analyses.
const EXIT_UNKNOWN: u8 = 2;
/// Exit status for command-line usage errors.
const EXIT_USAGE: u8 = 64;
/// Exit status for malformed formula, behavior, or problem text.
const EXIT_PARSE: u8 = 65;

#[derive(Parser)]
#[command(name = "mtl")]
#[command(about = "Exact analysis of metric temporal properties over dense and discrete time")]
#[command(version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and reprint it canonically
    Parse {
        /// Formula text or path to a file containing one formula
        formula: String,
        /// Print the expanded core form (derived operators rewritten away)
        #[arg(long)]
        expand: bool,
        /// Also print syntactic classification flags
        #[arg(long)]
        classify: bool,
    },
    /// Rewrite windows for reading a dense-time formula over sampled time
    AdaptR {
        /// Sampling period as a positive rational
        #[arg(long)]
        delta: String,
        /// Formula text or path to a file containing one formula
        formula: String,
    },
    /// Rewrite windows for reading a discrete-time formula over dense time
    AdaptZ {
        /// Sampling period as a positive rational
        #[arg(long)]
        delta: String,
        /// Formula text or path to a file containing one formula
        formula: String,
    },
    /// Print the strengthening discrete approximation of a formula
    Under {
        /// Sampling period; must be admitted by the formula's granularity
        #[arg(long)]
        delta: String,
        /// Formula text or path to a file containing one formula
        formula: String,
    },
    /// Print the weakening discrete approximation of a formula
    Over {
        /// Sampling period; must be admitted by the formula's granularity
        #[arg(long)]
        delta: String,
        /// Formula text or path to a file containing one formula
        formula: String,
    },
    /// Sample a dense behavior into an eventually-constant discrete one
    Sample {
        /// Sampling period as a positive rational
        #[arg(long)]
        delta: String,
        /// Sampling origin as a rational
        #[arg(long, default_value = "0")]
        z: String,
        /// Dense behavior text or path to a behavior file
        behavior: String,
    },
    /// Evaluate a formula on a behavior at one instant
    Eval {
        /// Instant to evaluate at: a rational for dense behaviors, an
        /// integer step for discrete ones
        #[arg(long)]
        at: String,
        /// Formula text or path to a file containing one formula
        formula: String,
        /// Behavior text or path to a behavior file (dense or discrete)
        behavior: String,
    },
    /// Print the exact satisfaction set of a formula on a behavior
    Satset {
        /// Formula text or path to a file containing one formula
        formula: String,
        /// Behavior text or path to a behavior file (dense or discrete)
        behavior: String,
    },
    /// Decide a system/property problem by sampling at a period
    Verify {
        /// Sampling period; must be admitted by every formula involved
        #[arg(long)]
        delta: String,
        /// Search bound on discrete counterexample size (default derived
        /// from the window endpoints)
        #[arg(long)]
        bound: Option<usize>,
        /// How much of the verdict to print
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
        /// Problem text or path to a problem file (`sys:`/`prop:` lines)
        problem: String,
    },
    /// Run one randomized property suite, or all of them
    Suite {
        /// Suite name (cus, cuis, lemma28, shiftability, under, over,
        /// table3, example44, example45, oracle, complement) or `all`
        name: String,
        /// Master seed (default: MTL_SEED if set, else 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Base instance budget per suite
        #[arg(long)]
        instances: Option<usize>,
        /// How much of each report to print
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One line per result
    Summary,
    /// Results with models, counterexamples, notes, and violations
    Full,
}

/// A diagnostic bound for stderr plus the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    fn parse(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_PARSE, msg: msg.into() }
    }

    fn unknown(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_UNKNOWN, msg: msg.into() }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Failure {
        match e {
            // A period outside the admitted granularity is a legitimate
            // question with an inconclusive answer, not a usage mistake.
            TransformError::NotAdmitted { .. } => Failure::unknown(e.to_string()),
            TransformError::NonPositivePeriod(_) => Failure::usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Failure {
        match e {
            VerifyError::Transform(t) => t.into(),
            other => Failure::unknown(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Clap renders --help/--version through the error path; pass
            // them through untouched and reserve 64 for real usage errors.
            if e.use_stderr() {
                eprint!("{}", e);
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// Reads an argument that may be either inline text or a path to a file,
/// returning the text together with the path when one was read (for
/// diagnostics).
fn read_input(arg: &str) -> Result<(String, Option<String>), Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| Failure::usage(format!("cannot read `{}`: {}", arg, e)))?;
        return Ok((text, Some(arg.to_string())));
    }
    Ok((arg.to_string(), None))
}

fn with_context(path: &Option<String>, msg: impl std::fmt::Display) -> String {
    match path {
        Some(p) => format!("{}: {}", p, msg),
        None => msg.to_string(),
    }
}

fn formula_arg(arg: &str) -> Result<Formula, Failure> {
    let (text, path) = read_input(arg)?;
    parse_formula(text.trim()).map_err(|e| Failure::parse(with_context(&path, e)))
}

fn behavior_arg(arg: &str) -> Result<AnyBehavior, Failure> {
    let (text, path) = read_input(arg)?;
    parse_behavior(&text).map_err(|e| Failure::parse(with_context(&path, e)))
}

fn rat_opt(name: &str, s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| Failure::usage(format!("invalid {}: {}", name, e)))
}

fn delta_opt(s: &str) -> Result<Rat, Failure> {
    let d = rat_opt("--delta", s)?;
    if d <= mtl::rat::rat_int(0) {
        return Err(Failure::usage(format!(
            "invalid --delta: sampling period must be positive, got {}",
            d
        )));
    }
    Ok(d)
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Parse { formula, expand, classify } => {
            let f = formula_arg(&formula)?;
            let shown = if expand { f.desugar() } else { f.clone() };
            println!("{}", shown);
            if classify {
                let c = f.classify();
                println!(
                    "flat={} ltl={} dense-endpoint={} discrete-endpoint={} temporal-depth={}",
                    c.flat, c.ltl, c.dense_endpoint, c.discrete_endpoint, c.temporal_depth
                );
            }
            Ok(0)
        }
        Command::AdaptR { delta, formula } => {
            let f = formula_arg(&formula)?;
            println!("{}", adapt_r(&f, &delta_opt(&delta)?)?);
            Ok(0)
        }
        Command::AdaptZ { delta, formula } => {
            let f = formula_arg(&formula)?;
            println!("{}", adapt_z(&f, &delta_opt(&delta)?)?);
            Ok(0)
        }
        Command::Under { delta, formula } => {
            let f = formula_arg(&formula)?;
            println!("{}", under_approx(&f, &delta_opt(&delta)?)?);
            Ok(0)
        }
        Command::Over { delta, formula } => {
            let f = formula_arg(&formula)?;
            println!("{}", over_approx(&f, &delta_opt(&delta)?)?);
            Ok(0)
        }
        Command::Sample { delta, z, behavior } => {
            let b = match behavior_arg(&behavior)? {
                AnyBehavior::Dense(b) => b,
                AnyBehavior::Discrete(_) => {
                    return Err(Failure::usage(
                        "sample expects a dense behavior (`lefttail` header), got a discrete one",
                    ))
                }
            };
            let params = SamplingParams::new(delta_opt(&delta)?, rat_opt("--z", &z)?)
                .map_err(|e| Failure::usage(e.to_string()))?;
            print!("{}", print_discrete_behavior(&b.sample(&params)));
            Ok(0)
        }
        Command::Eval { at, formula, behavior } => {
            let f = formula_arg(&formula)?;
            let t = rat_opt("--at", &at)?;
            let truth = match behavior_arg(&behavior)? {
                AnyBehavior::Dense(b) => eval_dense(&f, &b, &t),
                AnyBehavior::Discrete(d) => {
                    if !is_int(&t) {
                        return Err(Failure::usage(format!(
                            "invalid --at: discrete behaviors are evaluated at integer steps, got {}",
                            t
                        )));
                    }
                    let k = to_i64(&t).ok_or_else(|| {
                        Failure::usage(format!("invalid --at: step {} is out of range", t))
                    })?;
                    eval_discrete(&f, &d, k)
                }
            };
            println!("{}", truth);
            Ok(0)
        }
        Command::Satset { formula, behavior } => {
            let f = formula_arg(&formula)?;
            match behavior_arg(&behavior)? {
                AnyBehavior::Dense(b) => {
                    let set = sat_set(&f, &b);
                    if set.intervals().is_empty() {
                        println!("empty");
                    } else {
                        let mut line = String::new();
                        for (i, iv) in set.intervals().iter().enumerate() {
                            if i > 0 {
                                line.push(' ');
                            }
                            let _ = write!(line, "{}", iv);
                        }
                        println!("{}", line);
                    }
                }
                AnyBehavior::Discrete(d) => println!("{}", sat_seq(&f, &d)),
            }
            Ok(0)
        }
        Command::Verify { delta, bound, format, problem } => {
            let (text, path) = read_input(&problem)?;
            let pf = parse_problem(&text).map_err(|e| Failure::parse(with_context(&path, e)))?;
            let spec = SystemSpec::new(pf.sys, pf.prop)?;
            let verdict = mtl_verify(&spec, &delta_opt(&delta)?, bound)?;
            println!(
                "{} ({}, k={})",
                verdict.outcome, verdict.qualifier, verdict.bound_used
            );
            if format == Format::Full {
                let models = mtl::verify::build_models(&spec, &delta_opt(&delta)?)?;
                println!("over-model: {}", models.over_model);
                println!("under-model: {}", models.under_model);
                if let Outcome::Refuted { counterexample, at } = &verdict.outcome {
                    println!("counterexample falsifies the property at step {}:", at);
                    print!("{}", print_discrete_behavior(counterexample));
                }
            }
            Ok(match verdict.outcome {
                Outcome::Verified => 0,
                Outcome::Refuted { .. } => 1,
                Outcome::Fail => EXIT_UNKNOWN,
            })
        }
        Command::Suite { name, seed, instances, format } => {
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            let mut cfg = GenConfig { seed, ..GenConfig::default() };
            if let Some(n) = instances {
                cfg.instances = n;
            }
            let reports: Vec<SuiteReport> = if name == "all" {
                run_all(&cfg)
            } else {
                let suite: SuiteName = name.parse().map_err(|e: String| {
                    Failure::usage(format!("{} (or `all`)", e))
                })?;
                vec![run_suite(suite, &cfg)]
            };
            for r in &reports {
                match format {
                    Format::Summary => {
                        let rendered = r.to_string();
                        println!("{}", rendered.lines().next().unwrap_or_default());
                    }
                    Format::Full => print!("{}", r),
                }
            }
            if reports.iter().any(|r| !r.violations.is_empty()) {
                Ok(1)
            } else if reports.iter().any(|r| r.underpowered) {
                Ok(EXIT_UNKNOWN)
            } else {
                Ok(0)
            }
        }
    }
}

/// Default suite seed: `MTL_SEED` when set, else the library default.
fn default_seed() -> Result<u64, Failure> {
    match std::env::var("MTL_SEED") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| {
            Failure::usage(format!(
                "invalid MTL_SEED `{}`: expected an unsigned integer",
                s
            ))
        }),
        Err(_) => Ok(GenConfig::default().seed),
    }
}
