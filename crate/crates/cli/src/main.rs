use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sunit_core::harness::suites::{run_property_suites, DEFAULT_SEED};
use sunit_core::harness::{
    conjecture1_experiment, conjecture2_experiment, curves_experiment, escape_experiment,
    families_experiment, interpolation_experiment, unit_equation_experiment, ExperimentConfig,
    ExperimentReport,
};
use sunit_core::Error;

const EXIT_VALIDATION: u8 = 1;
const EXIT_PROPERTY: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sunit",
    version,
    about = "S-unit experiments for rational maps over number fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct S-unit values of a map on a height box.
    ImageCount(Common),
    /// Distinct S-unit values in a forward orbit.
    OrbitCount(Common),
    /// Solutions of the unit equation attached to a monic map with two roots.
    UnitEq(Common),
    /// Superelliptic twists of a map and their rational points.
    Curves(Common),
    /// Valuation-escape certificate with trajectory and orbit checks.
    EscapeCert(Common),
    /// Explicit infinite families of S-unit values.
    Families(Common),
    /// Polynomial through a prescribed orbit chain.
    Interpolate(Common),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    height: Option<u64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Worker threads for box scans (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the witness table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn set_threads(threads: Option<usize>) -> Result<(), Error> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn load_config(common: &Common) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if common.height.is_some() {
        cfg.height = common.height;
    }
    if common.steps.is_some() {
        cfg.steps = common.steps;
    }
    Ok(cfg)
}

fn emit(report: &ExperimentReport, common: &Common) -> Result<(), Error> {
    if let Some(path) = &common.csv {
        report.write_csv(path)?;
    }
    match &common.out {
        Some(path) => {
            report.write_json(path)?;
            let count = report
                .count
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into());
            println!(
                "{}: count {count}, {} witnesses",
                report.pipeline,
                report.witnesses.len()
            );
        }
        None => {
            let text = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn run_experiment(
    common: &Common,
    f: fn(&ExperimentConfig) -> sunit_core::Result<ExperimentReport>,
) -> Result<ExitCode, Error> {
    set_threads(common.threads)?;
    let cfg = load_config(common)?;
    let report = f(&cfg)?;
    emit(&report, common)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    set_threads(args.threads)?;
    let summary = run_property_suites(&args.suite, args.seed)?;
    for s in &summary.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<14} {:>6} cases {:>8.2}s",
            s.name, s.cases, s.seconds
        );
        for f in s.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&summary).expect("summaries serialize");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    Ok(if summary.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PROPERTY)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::ImageCount(c) => run_experiment(c, conjecture1_experiment),
        Command::OrbitCount(c) => run_experiment(c, conjecture2_experiment),
        Command::UnitEq(c) => run_experiment(c, unit_equation_experiment),
        Command::Curves(c) => run_experiment(c, curves_experiment),
        Command::EscapeCert(c) => run_experiment(c, escape_experiment),
        Command::Families(c) => run_experiment(c, families_experiment),
        Command::Interpolate(c) => run_experiment(c, interpolation_experiment),
        Command::Verify(v) => run_verify(v),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is_internal_assertion() => {
            eprintln!("internal assertion failed: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
