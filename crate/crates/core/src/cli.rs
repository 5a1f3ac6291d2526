//! `ctm` command line: `generate`, `analyze`, `threshold`.
//!
//! Exit codes: 0 success, 2 input or parameter error, 3 numerical failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::criteria::{evaluate_selected, CriterionName, Options};
use crate::error::Error;
use crate::io::{FileError, ReportFile, StateFile};
use crate::linalg::DEFAULT_TOL;
use crate::states::{mix_white_noise, StateFamily};
use crate::threshold::{find_threshold, ScalarFamily};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable holding the seed for randomized state generation.
pub const SEED_ENV: &str = "CTM_SEED";

#[derive(Debug, Parser)]
#[command(name = "ctm", version, about = "Entanglement detection from correlation tensor moments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a state from a named family to a JSON state file.
    Generate(GenerateArgs),
    /// Evaluate separability criteria on a state file.
    Analyze(AnalyzeArgs),
    /// Locate the detection threshold of a criterion along a noisy family.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// werner, tiles-ppt, ghz, w, bell, maximally-mixed, pure-product, random-separable
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Weight of the state in `x ρ + (1 - x) I / D`.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Comma-separated subsystem dimensions.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Comma-separated basis levels for pure-product.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Number of product terms for random-separable.
    #[arg(long, default_value_t = 5)]
    pub terms: usize,
    /// Seed for random-separable; falls back to CTM_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// `all` or a comma-separated list of criterion names.
    #[arg(long, default_value = "all")]
    pub criteria: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also report the Ĥ_k Hankel blocks (diagnostic, never counted).
    #[arg(long = "include-Hk")]
    pub include_hk: bool,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// tiles-noise, werner, ghz-noise, w-noise, bell-noise
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub criterion: String,
    #[arg(long, default_value_t = 1e-5)]
    pub precision: f64,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::input(e.to_string())
    }
}

/// Parameter and validation errors map to exit 2, everything else to 3.
fn classify(e: Error) -> CliError {
    match e {
        Error::NotHermitian { .. } | Error::NonSquare { .. } | Error::NonFinite => {
            CliError { code: EXIT_NUMERICAL, message: e.to_string() }
        }
        _ => CliError::input(e.to_string()),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(|e| CliError { code: EXIT_NUMERICAL, message: e.to_string() }),
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::input(format!("family {family} requires --{flag}")))
}

fn family_from_args(a: &GenerateArgs) -> Result<StateFamily, CliError> {
    let f = a.family.as_str();
    Ok(match f {
        "werner" => StateFamily::Werner { d: require(a.d, "d", f)?, x: require(a.x, "x", f)? },
        "tiles-ppt" | "tiles" => StateFamily::TilesPpt { noise: a.noise.unwrap_or(1.0) },
        "ghz" => StateFamily::Ghz { n: a.n.unwrap_or(3) },
        "w" => StateFamily::W { n: a.n.unwrap_or(3) },
        "bell" => StateFamily::Bell,
        "maximally-mixed" => StateFamily::MaximallyMixed { dims: require(a.dims.clone(), "dims", f)? },
        "pure-product" => StateFamily::PureProduct {
            dims: require(a.dims.clone(), "dims", f)?,
            levels: require(a.levels.clone(), "levels", f)?,
        },
        "random-separable" => {
            let seed = match a.seed {
                Some(s) => s,
                None => match std::env::var(SEED_ENV) {
                    Ok(v) => v.parse().map_err(|_| CliError::input(format!("{SEED_ENV}={v} is not an integer")))?,
                    Err(_) => 0,
                },
            };
            StateFamily::RandomSeparable { dims: require(a.dims.clone(), "dims", f)?, terms: a.terms, seed }
        }
        other => return Err(CliError::input(format!("unknown family `{other}`"))),
    })
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = family_from_args(a)?;
    let mut rho = family.generate().map_err(classify)?;
    let mut descriptor = json!({ "family": family.name(), "params": family.params() });
    // tiles-ppt consumes --noise itself
    if let (Some(x), false) = (a.noise, matches!(family, StateFamily::TilesPpt { .. })) {
        rho = mix_white_noise(&rho, x).map_err(classify)?;
        descriptor["noise"] = json!(x);
    }
    let file = StateFile::from_state(&rho).with_descriptor(descriptor);
    emit(out, a.output.as_ref(), &file.to_json())
}

fn parse_criteria(spec: &str) -> Result<Option<Vec<CriterionName>>, CliError> {
    if spec == "all" {
        return Ok(None);
    }
    spec.split(',')
        .map(|s| s.trim().parse::<CriterionName>().map_err(|e| CliError::input(e.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(CliError::input(format!("invalid --tol {}", a.tol)));
    }
    let selected = parse_criteria(&a.criteria)?;
    let file = StateFile::read(&a.input)?;
    let rho = file.to_state()?;
    let opts = Options { tol: a.tol, include_hk: a.include_hk, ..Options::default() };
    let names = selected.unwrap_or_else(|| CriterionName::applicable(rho.parties()).to_vec());
    let reports = evaluate_selected(&rho, &names, &opts);
    let descriptor = json!({
        "path": a.input.display().to_string(),
        "dims": file.dims,
        "descriptor": file.descriptor,
    });
    emit(out, a.output.as_ref(), &ReportFile::new(descriptor, a.tol, reports).to_json())
}

fn cmd_threshold(a: &ThresholdArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = ScalarFamily::parse(&a.family, a.d, a.n).map_err(classify)?;
    let criterion: CriterionName = a.criterion.parse().map_err(classify)?;
    let opts = Options { tol: a.tol, ..Options::default() };
    let result = find_threshold(&family, criterion, a.precision, &opts).map_err(classify)?;
    if result.crossings.len() > 1 {
        eprintln!("warning: margin changes sign {} times; all brackets reported", result.crossings.len());
    }
    let text = serde_json::to_string_pretty(&result).expect("threshold result serializes");
    emit(out, a.output.as_ref(), &text)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Threshold(a) => cmd_threshold(a, out),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("ctm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run_args(&["generate", "--family", "werner", "--d", "3", "--x", "-0.5"]);
        assert_eq!(code, 0);
        let file = StateFile::from_json(&out).unwrap();
        assert_eq!(file.dims, vec![3, 3]);
        assert_eq!(file.matrix.len(), 9);
    }

    #[test]
    fn parameter_errors_exit_2() {
        assert_eq!(run_args(&["generate", "--family", "werner", "--d", "3", "--x", "2"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["generate", "--family", "werner", "--d", "3"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["generate", "--family", "nope"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["threshold", "--family", "maximally-mixed", "--criterion", "dv"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["threshold", "--family", "tiles-noise", "--criterion", "xyz"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["bogus"]).0, EXIT_INPUT);
    }

    #[test]
    fn criteria_selector() {
        assert_eq!(parse_criteria("all").unwrap(), None);
        assert_eq!(
            parse_criteria("dv, ppt").unwrap(),
            Some(vec![CriterionName::Dv, CriterionName::Ppt])
        );
        assert!(parse_criteria("dv,foo").is_err());
    }
}
