//! Command-line interface for the area-method prover.
//!
//! Exit codes: 0 proved, 1 disproved, 2 not reduced / unknown,
//! 3 construction error, 4 parse error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use areamethod::error::Error as CoreError;
use areamethod::prover::{oracle_confirms, AreaCoordsMode, ProveOptions, Prover, Verdict};
use areamethod_cli::corpus;
use areamethod_cli::parser::parse;
use areamethod_cli::render::{render_text, TraceDocument};

const EXIT_PROVED: u8 = 0;
const EXIT_DISPROVED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_PARSE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "areamethod",
    version,
    about = "A geometry theorem prover built on signed areas and Pythagorean differences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoordsArg {
    Auto,
    Never,
    Always,
}

impl From<CoordsArg> for AreaCoordsMode {
    fn from(v: CoordsArg) -> Self {
        match v {
            CoordsArg::Auto => AreaCoordsMode::Auto,
            CoordsArg::Never => AreaCoordsMode::Never,
            CoordsArg::Always => AreaCoordsMode::Always,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceArg {
    Text,
    Structured,
}

#[derive(Args)]
struct ProveFlags {
    /// When to rewrite into area coordinates.
    #[arg(long = "area-coords", value_enum, default_value = "auto")]
    area_coords: CoordsArg,
    /// Trace output format.
    #[arg(long = "trace", value_enum, default_value = "text")]
    trace: TraceArg,
    /// Confirm a Proved verdict on this many exact random realizations.
    #[arg(long = "oracle-check", default_value_t = 0)]
    oracle_check: u32,
    /// Seed for all randomized sampling (env: AREAMETHOD_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// Soft time limit per prove session, in milliseconds.
    #[arg(long = "max-ms")]
    max_ms: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Prove the goal of a construction file.
    Prove {
        file: String,
        #[command(flatten)]
        flags: ProveFlags,
    },
    /// Validate a construction file's non-degeneracy conditions only.
    Check { file: String },
    /// Operate on the bundled theorem corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Prove every bundled theorem and print a report table.
    Run {
        /// Only theorems whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        flags: ProveFlags,
    },
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn env_u32(name: &str) -> Option<u32> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn options(flags: &ProveFlags) -> ProveOptions {
    ProveOptions {
        area_coords: flags.area_coords.into(),
        oracle_samples: env_u32("AREAMETHOD_ORACLE_SAMPLES").unwrap_or(100),
        seed: flags
            .seed
            .or_else(|| env_u64("AREAMETHOD_SEED"))
            .unwrap_or(42),
        max_ms: flags.max_ms,
        ..ProveOptions::default()
    }
}

fn verdict_exit(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Proved => EXIT_PROVED,
        Verdict::Disproved { .. } => EXIT_DISPROVED,
        Verdict::NotReduced { .. } | Verdict::Unknown { .. } => EXIT_UNDECIDED,
    }
}

fn core_error_exit(e: &CoreError) -> u8 {
    match e {
        CoreError::ConstructionInconsistent { .. }
        | CoreError::DegenerateDenominator(_)
        | CoreError::UnknownPoint(_)
        | CoreError::DuplicatePoint(_)
        | CoreError::UnknownParameter(_)
        | CoreError::InvalidConstruction(_)
        | CoreError::DegenerateAfterRetries(_) => EXIT_CONSTRUCTION,
        _ => EXIT_UNDECIDED,
    }
}

fn read_and_parse(path: &str) -> Result<areamethod_cli::SourceFile, u8> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", path, e);
            return Err(EXIT_PARSE);
        }
    };
    parse(&text).map_err(|e| {
        eprintln!("parse error: {}: {}", path, e);
        EXIT_PARSE
    })
}

fn cmd_prove(path: &str, flags: &ProveFlags) -> u8 {
    let file = match read_and_parse(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let opts = options(flags);
    let prover = Prover::new(opts.clone());
    let (verdict, trace) = match prover.prove(&file.construction, &file.goal) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return core_error_exit(&e);
        }
    };
    match flags.trace {
        TraceArg::Text => print!("{}", render_text(path, &verdict, &trace)),
        TraceArg::Structured => {
            println!("{}", TraceDocument::new(path, &verdict, &trace).to_json())
        }
    }
    if flags.oracle_check > 0 && verdict.is_proved() {
        match oracle_confirms(
            &file.construction,
            &file.goal,
            opts.seed,
            flags.oracle_check,
        ) {
            Ok(true) => eprintln!(
                "oracle check: {} samples confirm the statement",
                flags.oracle_check
            ),
            Ok(false) => {
                eprintln!("oracle check FAILED: a sample violates the proved statement");
                return EXIT_UNDECIDED;
            }
            Err(e) => {
                eprintln!("oracle check error: {}", e);
                return EXIT_UNDECIDED;
            }
        }
    }
    verdict_exit(&verdict)
}

fn cmd_check(path: &str) -> u8 {
    let file = match read_and_parse(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let prover = Prover::new(ProveOptions::default());
    match prover.validate_construction(&file.construction) {
        Ok(reports) => {
            println!("construction is consistent ({} checks)", reports.len());
            for r in &reports {
                println!("  [ok] {}: {}", r.point, r.condition);
            }
            EXIT_PROVED
        }
        Err(e) => {
            eprintln!("error: {}", e);
            core_error_exit(&e)
        }
    }
}

fn cmd_corpus_run(filter: Option<&str>, flags: &ProveFlags) -> u8 {
    let opts = options(flags);
    let results = match corpus::run(filter, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return core_error_exit(&e);
        }
    };
    if results.is_empty() {
        eprintln!("no corpus theorem matches the filter");
        return EXIT_UNDECIDED;
    }
    let table = corpus::report_table(&results);
    match flags.trace {
        TraceArg::Text => print!("{}", table),
        TraceArg::Structured => {
            // keep stdout purely the deterministic JSON document
            eprint!("{}", table);
            let docs: Vec<&TraceDocument> = results.iter().map(|r| &r.document).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&docs).expect("trace documents serialize")
            );
        }
    }
    results
        .iter()
        .map(|r| verdict_exit(&r.verdict))
        .max()
        .unwrap_or(EXIT_PROVED)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Prove { file, flags } => cmd_prove(file, flags),
        Command::Check { file } => cmd_check(file),
        Command::Corpus {
            action: CorpusAction::Run { filter, flags },
        } => cmd_corpus_run(filter.as_deref(), flags),
    };
    ExitCode::from(code)
}
