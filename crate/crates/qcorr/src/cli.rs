//! Command-line front end: `compute` one report from a state file, `sweep`
//! a state family into a CSV, `verify` the numerical audit suites, and
//! `random` to mint reproducible state files.
//!
//! Exit codes are fixed for scripting: 0 success, 1 a verification suite
//! had an asserted failure, 2 bad input (flags, malformed or wrong-shape
//! files, out-of-range parameters), 3 a matrix that parses but is not a
//! state (the offending residual is printed), 4 file I/O.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::correlations::{quantum_correlations, OptimizerConfig};
use crate::distance::Distance;
use crate::error::Error;
use crate::io::{
    load_state, report_csv_header, report_csv_row, report_to_json, save_state, state_to_json,
    LoadError,
};
use crate::state::{make_bell_diagonal, make_isotropic, make_werner, random_density, DensityMatrix};
use crate::verify::{
    verify_distance_axioms, verify_measure_conditions, verify_prop_vi_preconditions,
    VerificationSuiteResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PHYSICS: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Distance-based correlation measures for bipartite quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// z * Bell + (1 - z) * I/4, parameter z in [0, 1]
    Werner,
    /// t * Phi+ + (1 - t) * Phi-, parameter t in [0, 1]
    #[value(name = "bell_diagonal")]
    BellDiagonal,
    /// f * Bell + (1 - f)/3 * (I - Bell), parameter f in [0, 1]
    Isotropic,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::BellDiagonal => "bell_diagonal",
            Family::Isotropic => "isotropic",
        }
    }

    fn param_name(self) -> &'static str {
        match self {
            Family::Werner => "z",
            Family::BellDiagonal => "t",
            Family::Isotropic => "f",
        }
    }

    fn build(self, value: f64) -> Result<DensityMatrix, Error> {
        match self {
            Family::Werner => make_werner(value),
            Family::BellDiagonal => make_bell_diagonal(value),
            Family::Isotropic => make_isotropic(value),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Distances,
    Measures,
    Prop6,
}

#[derive(Subcommand)]
enum Command {
    /// Compute total, classical, and quantum correlations for one state
    Compute {
        /// State file (JSON) to analyze
        #[arg(long)]
        state: PathBuf,
        /// relative-entropy | trace | bures2 | hellinger2 | qjsd
        #[arg(long, value_parser = parse_distance)]
        distance: Distance,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Sweep a one-parameter state family and write a CSV of reports
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Parameter name; must match the family's parameter if given
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid points, endpoints included
        #[arg(long)]
        steps: usize,
        /// Repeatable; default is all five distances
        #[arg(long = "distance", value_parser = parse_distance)]
        distances: Vec<Distance>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a numerical audit suite across all five distances
    Verify(VerifyArgs),
    /// Write a reproducible random state file
    Random {
        /// Dimensions as AxB, e.g. 2x2 or 3x4
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        /// Rank of the sampled state; defaults to full rank
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// distances | measures | prop6
    #[arg(value_enum)]
    suite: Option<Suite>,
    /// Alternative to the positional form
    #[arg(long = "suite", value_enum)]
    suite_flag: Option<Suite>,
    /// Samples per check; defaults per suite (distances 100, measures 25, prop6 10)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixture dimensions as AxB (distances and measures suites)
    #[arg(long, value_parser = parse_dims)]
    dims: Option<(usize, usize)>,
    /// Also write the JSON to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_distance(raw: &str) -> Result<Distance, String> {
    Distance::parse(raw).ok_or_else(|| {
        format!("unknown distance {raw:?}; use relative-entropy, trace, bures2, hellinger2, or qjsd")
    })
}

fn parse_dims(raw: &str) -> Result<(usize, usize), String> {
    let (a, b) = raw
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("dims must look like 2x2, got {raw:?}"))?;
    let da: usize = a.trim().parse().map_err(|_| format!("bad dimension {a:?}"))?;
    let db: usize = b.trim().parse().map_err(|_| format!("bad dimension {b:?}"))?;
    if da == 0 || db == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((da, db))
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let code = match &e {
            LoadError::Io(_) => EXIT_IO,
            LoadError::Parse(_) | LoadError::Shape(_) => EXIT_INPUT,
            LoadError::Physics(_) => EXIT_PHYSICS,
        };
        fail(code, e.to_string())
    }
}

/// Parse std::env::args and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Compute {
            state,
            distance,
            restarts,
            seed,
            format,
        } => cmd_compute(&state, distance, restarts, seed, format),
        Command::Sweep {
            family,
            param,
            from,
            to,
            steps,
            distances,
            restarts,
            seed,
            out,
        } => cmd_sweep(family, param, from, to, steps, distances, restarts, seed, &out),
        Command::Verify(args) => cmd_verify(args),
        Command::Random {
            dims,
            rank,
            seed,
            out,
        } => cmd_random(dims, rank, seed, out.as_deref()),
    }
}

fn optimizer(restarts: usize, seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    }
}

/// Write to stdout. A consumer that stops reading early (broken pipe) is
/// success, not a panic; any other write failure is an I/O error.
fn emit(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(fail(EXIT_IO, format!("cannot write to stdout: {e}"))),
    }
}

fn cmd_compute(
    state_path: &Path,
    distance: Distance,
    restarts: usize,
    seed: u64,
    format: OutputFormat,
) -> Result<i32, Failure> {
    let rho = load_state(state_path)?;
    let state_id = state_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "state".to_string());
    let report = quantum_correlations(distance, &rho, &optimizer(restarts, seed))
        .map_err(|e| fail(EXIT_PHYSICS, e.to_string()))?
        .with_state_id(state_id);
    match format {
        OutputFormat::Json => emit(&format!("{}\n", report_to_json(&report)))?,
        OutputFormat::Csv => emit(&format!(
            "{}\n{}\n",
            report_csv_header(report.best_params.len(), false),
            report_csv_row(&report, None)
        ))?,
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: Family,
    param: Option<String>,
    from: f64,
    to: f64,
    steps: usize,
    mut distances: Vec<Distance>,
    restarts: usize,
    seed: u64,
    out: &Path,
) -> Result<i32, Failure> {
    if let Some(name) = &param {
        if name != family.param_name() {
            return Err(fail(
                EXIT_INPUT,
                format!(
                    "family {} is parameterized by {:?}, not {:?}",
                    family.name(),
                    family.param_name(),
                    name
                ),
            ));
        }
    }
    if steps < 2 {
        return Err(fail(EXIT_INPUT, "steps must be at least 2"));
    }
    if !(from < to) {
        return Err(fail(
            EXIT_INPUT,
            format!("from ({from}) must be strictly below to ({to})"),
        ));
    }
    if distances.is_empty() {
        distances = Distance::ALL.to_vec();
    }
    let cfg = optimizer(restarts, seed);
    let mut rows = Vec::new();
    for k in 0..steps {
        let value = if k + 1 == steps {
            to
        } else {
            from + (to - from) * k as f64 / (steps - 1) as f64
        };
        let rho = family.build(value).map_err(|e| {
            fail(
                EXIT_INPUT,
                format!("{} {} = {value}: {e}", family.name(), family.param_name()),
            )
        })?;
        for &d in &distances {
            let report = quantum_correlations(d, &rho, &cfg)
                .map_err(|e| fail(EXIT_PHYSICS, e.to_string()))?
                .with_state_id(format!("{}_{k:03}", family.name()));
            rows.push(report_csv_row(&report, Some(value)));
        }
    }
    // every family is a two-qubit family, so measurements have 2 parameters
    let mut text = report_csv_header(2, true);
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    std::fs::write(out, text)
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", out.display())))?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let suite = match (args.suite, args.suite_flag) {
        (Some(s), None) | (None, Some(s)) => s,
        (Some(_), Some(_)) => {
            return Err(fail(
                EXIT_INPUT,
                "give the suite either positionally or with --suite, not both",
            ))
        }
        (None, None) => {
            return Err(fail(
                EXIT_INPUT,
                "missing suite: distances, measures, or prop6",
            ))
        }
    };
    let dims = args.dims.unwrap_or((2, 2));
    let samples = args.samples.unwrap_or(match suite {
        Suite::Distances => 100,
        Suite::Measures => 25,
        Suite::Prop6 => 10,
    });
    if samples == 0 {
        return Err(fail(EXIT_INPUT, "samples must be at least 1"));
    }
    if matches!(suite, Suite::Prop6) && args.dims.is_some() && dims != (2, 2) {
        return Err(fail(
            EXIT_INPUT,
            "the prop6 suite runs on fixed 2x2x2 tripartite fixtures; only --dims 2x2 is valid",
        ));
    }
    let results: Vec<VerificationSuiteResult> = Distance::ALL
        .into_iter()
        .map(|d| match suite {
            Suite::Distances => verify_distance_axioms(d, samples, args.seed, dims),
            Suite::Measures => verify_measure_conditions(d, samples, args.seed, dims),
            Suite::Prop6 => verify_prop_vi_preconditions(d, samples, args.seed),
        })
        .collect();
    let json = serde_json::to_string_pretty(&results).expect("suite results always serialize");
    emit(&format!("{json}\n"))?;
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    }
    if results.iter().all(|r| r.passed()) {
        Ok(EXIT_OK)
    } else {
        let failed: Vec<String> = results
            .iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{} ({})", r.suite, r.distance.name()))
            .collect();
        eprintln!("asserted checks failed in: {}", failed.join(", "));
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn cmd_random(
    dims: (usize, usize),
    rank: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32, Failure> {
    let (da, db) = dims;
    let rank = rank.unwrap_or(da * db);
    let rho = random_density(da, db, rank, seed).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    match out {
        Some(path) => save_state(path, &rho)
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?,
        None => emit(&state_to_json(&rho))?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2x2").unwrap(), (2, 2));
        assert_eq!(parse_dims("3X4").unwrap(), (3, 4));
        assert!(parse_dims("2").is_err());
        assert!(parse_dims("0x2").is_err());
        assert!(parse_dims("ax2").is_err());
    }

    #[test]
    fn distance_parsing_accepts_cli_spellings() {
        assert_eq!(parse_distance("bures2").unwrap(), Distance::BuresSq);
        assert_eq!(
            parse_distance("relative-entropy").unwrap(),
            Distance::RelativeEntropy
        );
        assert!(parse_distance("euclid").is_err());
    }

    #[test]
    fn family_parameters_have_canonical_names() {
        assert_eq!(Family::Werner.param_name(), "z");
        assert_eq!(Family::BellDiagonal.param_name(), "t");
        assert_eq!(Family::Isotropic.param_name(), "f");
        assert!(Family::Werner.build(0.5).is_ok());
        assert!(Family::Werner.build(1.5).is_err());
    }
}
