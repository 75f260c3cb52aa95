//! `ulab`: measures, optimizations, sweeps and a reproduction check for
//! two-qubit quantum correlations.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid input data,
//! 64 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ulab_core::measures::measure_report;
use ulab_core::numfmt::{csv_cell, round_json};
use ulab_core::optimize::{
    chi_sweep, conjecture_probe, maximize_gd_separable_x, maximize_lqu_bell_diagonal_separable,
    maximize_lqu_separable_x, noisy_sweep, region_sweep,
};
use ulab_core::states::{builtin, parse_state_json, to_state_json, FIXED_NAMES};
use ulab_core::verify::{run_verify, VerifyOptions};
use ulab_core::DensityMatrix;

const EXIT_VERIFY: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "ulab", version, about = "Local quantum uncertainty toolkit for two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every measure of one state.
    Measure(MeasureArgs),
    /// Maximize over a separable family.
    Optimize(OptimizeArgs),
    /// Emit figure data as CSV or JSON.
    Sweep(SweepArgs),
    /// Sample random separable mixtures and report the largest LQU.
    Probe(ProbeArgs),
    /// Recompute the headline numbers and compare them with expected values.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct MeasureArgs {
    /// Builtin name (`rho_star`, `chi:0.7`, `builtin:werner:0.5`, ...) or a state file.
    #[arg(long)]
    state: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the parsed state in the dense file layout.
    #[arg(long)]
    save_state: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SeparableX,
    BellDiagonal,
    GdSeparableX,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Random starts (X-state families).
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    starts: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Points per axis of the Bell-diagonal scan.
    #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u64).range(3..))]
    grid: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepName {
    Region,
    Chi,
    Noisy,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    name: SweepName,
    /// Number of rows; 501 for `region`, 101 otherwise.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ProbeArgs {
    /// Number of random mixtures.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Largest number of product terms per mixture.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single claim by id.
    #[arg(long)]
    only: Option<String>,
    /// Override the tolerance of every closeness claim.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Machine-readable output; one line per claim when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    output: Output,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<ulab_core::Error> for Failure {
    fn from(e: ulab_core::Error) -> Self {
        Failure::data(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// `builtin:` names go to the registry; otherwise an existing file wins over
/// a bare registry name.
fn load_state(arg: &str) -> Result<DensityMatrix, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::data(format!("cannot read {arg}: {e}")))?;
        return parse_state_json(&text)
            .map(|l| l.state)
            .map_err(|e| Failure::data(format!("{arg}: {e}")));
    }
    builtin(arg).map_err(|_| {
        Failure::data(format!(
            "`{arg}` is neither a readable file nor a builtin state (fixed names: {}; \
             parameterized: werner:p, chi:eps, noisy:p, bell_diag:t1,t2,t3)",
            FIXED_NAMES.join(", ")
        ))
    })
}

fn cmd_measure(a: MeasureArgs) -> CmdResult {
    let rho = load_state(&a.state)?;
    if let Some(path) = &a.save_state {
        write_file(path, &(to_state_json(&rho) + "\n"))?;
    }
    let report = measure_report(&rho);
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut s = String::from("measure,value\n");
            for (k, v) in &report.measures {
                let _ = writeln!(s, "{k},{}", csv_cell(*v));
            }
            s
        }
    };
    emit(&a.output, &text)?;
    Ok(0)
}

fn cmd_optimize(a: OptimizeArgs) -> CmdResult {
    let starts = a.starts as usize;
    let result = match a.family {
        Family::SeparableX => maximize_lqu_separable_x(starts, a.seed)?,
        Family::GdSeparableX => maximize_gd_separable_x(starts, a.seed)?,
        Family::BellDiagonal => maximize_lqu_bell_diagonal_separable(a.grid as usize, a.seed)?,
    };
    emit(&a.output, &result.to_json())?;
    Ok(0)
}

fn cmd_sweep(a: SweepArgs) -> CmdResult {
    let table = match a.name {
        SweepName::Region => region_sweep(a.n.unwrap_or(501) as usize)?,
        SweepName::Chi => chi_sweep(a.n.unwrap_or(101) as usize)?,
        SweepName::Noisy => noisy_sweep(a.n.unwrap_or(101) as usize)?,
    };
    if let (SweepName::Chi, Some(eps)) = (a.name, table.crossing) {
        eprintln!("gap meets negativity at eps = {eps:.6}");
    }
    let text = match a.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(&a.output, &text)?;
    Ok(0)
}

fn cmd_probe(a: ProbeArgs) -> CmdResult {
    let summary = conjecture_probe(a.n as usize, a.k_max as usize, a.seed)?;
    emit(&a.output, &summary.to_json())?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if a.tolerance.is_some_and(|t| t.is_nan() || t < 0.0) {
        return Err(Failure::usage("--tolerance must be a non-negative number"));
    }
    let report = run_verify(&VerifyOptions {
        only: a.only.clone(),
        tolerance: a.tolerance,
    })
    .map_err(|e| Failure::usage(e.to_string()))?;
    let text = match a.format {
        None => {
            let mut s = String::new();
            for o in &report.outcomes {
                let _ = writeln!(s, "{}", o.line());
            }
            let passed = report.outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(s, "{passed}/{} claims passed", report.outcomes.len());
            s
        }
        Some(Format::Csv) => {
            let mut s = String::from("id,computed,passed\n");
            for o in &report.outcomes {
                let _ = writeln!(s, "{},{},{}", o.id, csv_cell(o.computed), o.passed);
            }
            s
        }
        Some(Format::Json) => {
            let v = serde_json::to_value(&report).expect("report serializes");
            serde_json::to_string_pretty(&round_json(v)).expect("value serializes")
        }
    };
    emit(&a.output, &text)?;
    match report.first_failure() {
        None => Ok(0),
        Some(f) => {
            eprintln!("first failed claim: {}", f.id);
            Ok(EXIT_VERIFY)
        }
    }
}
