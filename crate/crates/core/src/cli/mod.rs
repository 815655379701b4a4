//! Command-line front end.
//!
//! Subcommands: `compute`, `converge`, `ci`, `validate` and `weights`. Every
//! command writes one table (CSV by default, `--format json` for an array of
//! objects) to standard output or `--out`.
//!
//! Exit status: 0 on success, 1 when `validate` finds a failed check, 2 for
//! usage errors (including values outside an operation's domain), 3 when a
//! computation fails, 4 on I/O errors.

mod commands;
mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_ci, cmd_compute, cmd_converge, cmd_validate, cmd_weights, ComputeConfig, ConvergeConfig,
    ValidateConfig, CI_HEADERS, COMPUTE_HEADERS, CONVERGE_HEADERS, VALIDATE_HEADERS,
    WEIGHTS_HEADERS,
};
pub use table::{format_real, Cell, Format, Table};

use crate::bootstrap::BootstrapConfig;
use crate::distributions::NormalLossModel;
use crate::error::{Error, Result};
use crate::quadrature::{build_grid_with, EndpointPolicy, QuadratureRule};
use crate::riskmeasures::EsMode;
use crate::spectra::SpectrumSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Step used by `start..stop` in `--n-list` when none is given.
pub const DEFAULT_RANGE_STEP: usize = 100;

#[derive(Debug, Parser)]
#[command(
    name = "spectral-risk",
    version,
    about = "Spectral risk measures, VaR and ES with quadrature and bootstrap CIs"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: one per core). Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Risk measure values, one row per spectrum.
    Compute(ComputeArgs),
    /// Estimates and percentage errors over rules and node counts.
    Converge(ConvergeArgs),
    /// Parametric bootstrap confidence interval.
    Ci(CiArgs),
    /// Positivity, normalisation and monotonicity checks for a spectrum.
    Validate(ValidateArgs),
    /// Spectrum weights over p, for plotting.
    Weights(WeightsArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Loss distribution, `normal:<mu>,<sigma>`.
    #[arg(long, value_parser = parse_dist, default_value = "normal:0,1")]
    pub dist: NormalLossModel,
    /// Endpoint handling for trapezoid and Simpson grids.
    #[arg(long, value_parser = parse_policy, default_value = "truncate")]
    pub policy: EndpointPolicy,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// `exp:<a>` or `es:<alpha>`; repeat for several rows.
    #[arg(long, value_parser = parse_spectrum)]
    pub spectrum: Vec<SpectrumSpec>,
    /// Exponential spectra for `count` values of a evenly spaced over
    /// `[start, stop]`.
    #[arg(long, value_parser = parse_sweep)]
    pub sweep_a: Option<Sweep>,
    #[arg(long, value_parser = parse_rule, default_value = "simpson")]
    pub rule: QuadratureRule,
    #[arg(long, default_value_t = 10_001)]
    pub n: usize,
    /// `closed-form` or `quadrature`, for ES spectra.
    #[arg(long, value_parser = parse_mode, default_value = "quadrature")]
    pub mode: EsMode,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = parse_spectrum, default_value = "exp:5")]
    pub spectrum: SpectrumSpec,
    /// Comma-separated rules.
    #[arg(long, value_delimiter = ',', value_parser = parse_rule, default_value = "simpson")]
    pub rules: Vec<QuadratureRule>,
    /// Comma-separated node counts; `start..stop[:step]` expands to a range.
    #[arg(long, value_parser = parse_n_list)]
    pub n_list: NList,
    /// Report the fastest of this many timings per row.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

#[derive(Debug, Args)]
pub struct CiArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = parse_spectrum, default_value = "exp:5")]
    pub spectrum: SpectrumSpec,
    #[arg(long, value_parser = parse_rule, default_value = "simpson")]
    pub rule: QuadratureRule,
    #[arg(long, default_value_t = 10_001)]
    pub n: usize,
    /// Bootstrap trials.
    #[arg(long, default_value_t = 1000)]
    pub b: usize,
    #[arg(long, default_value_t = 0.9)]
    pub confidence: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_parser = parse_spectrum)]
    pub spectrum: SpectrumSpec,
    /// Grid size (odd).
    #[arg(long, default_value_t = 10_001)]
    pub n: usize,
    /// Normalisation tolerance; 1e-8 for exponential and 1e-3 for ES spectra
    /// by default.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Repeat for several curves.
    #[arg(long, value_parser = parse_spectrum, default_values = ["exp:5", "exp:25"])]
    pub spectrum: Vec<SpectrumSpec>,
    /// Points on `[0, 1]`.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
}

/// `start:stop:count`, inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct NList(pub Vec<usize>);

pub fn parse_dist(s: &str) -> Result<NormalLossModel> {
    let bad = || {
        Error::Config(format!(
            "distribution `{s}` must look like normal:<mu>,<sigma>"
        ))
    };
    let (kind, params) = s.split_once(':').ok_or_else(bad)?;
    if kind.trim() != "normal" {
        return Err(Error::Config(format!("unknown distribution `{kind}`")));
    }
    let (mu, sigma) = params.split_once(',').ok_or_else(bad)?;
    let mu: f64 = mu.trim().parse().map_err(|_| bad())?;
    let sigma: f64 = sigma.trim().parse().map_err(|_| bad())?;
    NormalLossModel::new(mu, sigma)
}

pub fn parse_spectrum(s: &str) -> Result<SpectrumSpec> {
    s.parse()
}

pub fn parse_rule(s: &str) -> Result<QuadratureRule> {
    s.parse()
}

pub fn parse_policy(s: &str) -> Result<EndpointPolicy> {
    s.parse()
}

pub fn parse_mode(s: &str) -> Result<EsMode> {
    s.parse()
}

pub fn parse_sweep(s: &str) -> Result<Sweep> {
    let bad = || Error::Config(format!("sweep `{s}` must look like start:stop:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    match count {
        0 => Err(bad()),
        1 => Ok(Sweep(vec![start])),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok(Sweep(
                (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start + i as f64 * step
                        }
                    })
                    .collect(),
            ))
        }
    }
}

pub fn parse_n_list(s: &str) -> Result<NList> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || {
            Error::Config(format!(
                "`{item}` is neither a count nor start..stop[:step]"
            ))
        };
        if let Some((start, rest)) = item.split_once("..") {
            let (stop, step) = match rest.split_once(':') {
                Some((stop, step)) => (stop, step.parse::<usize>().map_err(|_| bad())?),
                None => (rest, DEFAULT_RANGE_STEP),
            };
            let start: usize = start.parse().map_err(|_| bad())?;
            let stop: usize = stop.parse().map_err(|_| bad())?;
            if step == 0 || stop < start {
                return Err(bad());
            }
            out.extend((start..=stop).step_by(step));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("empty node-count list".into()));
    }
    Ok(NList(out))
}

enum Plan {
    Compute(ComputeConfig),
    Converge(ConvergeConfig),
    Ci(BootstrapConfig),
    Validate(ValidateConfig),
    Weights(Vec<SpectrumSpec>, usize),
}

/// Turns parsed flags into a fully validated plan; nothing is computed yet.
fn plan(command: Command) -> Result<Plan> {
    Ok(match command {
        Command::Compute(args) => {
            let mut spectra = args.spectrum;
            if let Some(Sweep(values)) = args.sweep_a {
                if spectra
                    .iter()
                    .any(|s| !matches!(s, SpectrumSpec::Exponential(_)))
                {
                    return Err(Error::Config(
                        "--sweep-a only applies to exponential spectra".into(),
                    ));
                }
                spectra = values
                    .into_iter()
                    .map(SpectrumSpec::exponential)
                    .collect::<Result<_>>()?;
            }
            if spectra.is_empty() {
                spectra.push(SpectrumSpec::exponential(5.0)?);
            }
            build_grid_with(args.rule, args.n, args.model.policy)?;
            Plan::Compute(ComputeConfig {
                model: args.model.dist,
                spectra,
                rule: args.rule,
                n: args.n,
                policy: args.model.policy,
                es_mode: args.mode,
            })
        }
        Command::Converge(args) => {
            for &rule in &args.rules {
                for &n in &args.n_list.0 {
                    build_grid_with(rule, n, args.model.policy)?;
                }
            }
            if args.repeat == 0 {
                return Err(Error::Config("--repeat must be at least 1".into()));
            }
            Plan::Converge(ConvergeConfig {
                model: args.model.dist,
                spectrum: args.spectrum,
                rules: args.rules,
                n_list: args.n_list.0,
                policy: args.model.policy,
                repeat: args.repeat,
            })
        }
        Command::Ci(args) => {
            let config = BootstrapConfig {
                n: args.n,
                b: args.b,
                confidence: args.confidence,
                master_seed: args.seed,
                rule: args.rule,
                policy: args.model.policy,
                spectrum: args.spectrum,
                model: args.model.dist,
            };
            config.validate()?;
            Plan::Ci(config)
        }
        Command::Validate(args) => {
            let tolerance = args.tolerance.unwrap_or(match args.spectrum {
                SpectrumSpec::Exponential(_) => 1e-8,
                SpectrumSpec::ExpectedShortfall(_) => 1e-3,
            });
            if args.n < 3 || args.n.is_multiple_of(2) {
                return Err(Error::InvalidGrid(format!(
                    "validation grid must be odd and >= 3, got {}",
                    args.n
                )));
            }
            if tolerance.is_nan() || tolerance < 0.0 {
                return Err(Error::Config(format!("tolerance {tolerance} must be >= 0")));
            }
            Plan::Validate(ValidateConfig {
                spectrum: args.spectrum,
                grid_size: args.n,
                tolerance,
            })
        }
        Command::Weights(args) => {
            if args.n < 2 {
                return Err(Error::Config("--n must be at least 2".into()));
            }
            Plan::Weights(args.spectrum, args.n)
        }
    })
}

struct Outcome {
    table: Table,
    status: i32,
    note: Option<String>,
}

/// Runs a plan, returning the table, the exit status it implies and an
/// optional line for the error stream.
fn execute(plan: Plan) -> Result<Outcome> {
    let done = |table| Outcome {
        table,
        status: EXIT_OK,
        note: None,
    };
    Ok(match plan {
        Plan::Compute(c) => done(cmd_compute(&c)?),
        Plan::Converge(c) => done(cmd_converge(&c)?),
        Plan::Ci(c) => {
            let (table, elapsed) = cmd_ci(&c)?;
            Outcome {
                table,
                status: EXIT_OK,
                note: Some(format!(
                    "ci: elapsed_seconds={}",
                    format_real(elapsed.as_secs_f64())
                )),
            }
        }
        Plan::Validate(c) => {
            let (table, ok) = cmd_validate(&c)?;
            Outcome {
                table,
                status: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
                note: None,
            }
        }
        Plan::Weights(spectra, n) => done(cmd_weights(&spectra, n)?),
    })
}

fn emit(
    table: &Table,
    format: Format,
    out: Option<&PathBuf>,
    stdout: &mut dyn Write,
) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()
        }
        None => table.write(format, stdout),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status. All diagnostics go to `stderr` as single lines.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let rendered = e.to_string();
                let first = rendered.lines().next().unwrap_or("invalid arguments");
                let _ = writeln!(stderr, "{first}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };

    let plan = match plan(cli.command) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let outcome = match cli.workers {
        Some(0) => {
            let _ = writeln!(stderr, "error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| execute(plan)),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot start {w} workers: {e}");
                return EXIT_COMPUTE;
            }
        },
        None => execute(plan),
    };

    match outcome {
        Ok(Outcome {
            table,
            status,
            note,
        }) => match emit(&table, cli.format, cli.out.as_ref(), stdout) {
            Ok(()) => {
                if let Some(note) = note {
                    let _ = writeln!(stderr, "{note}");
                }
                status
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                EXIT_IO
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_strings() {
        let m = parse_dist("normal:1,2").unwrap();
        assert_eq!((m.mu(), m.sigma()), (1.0, 2.0));
        assert!(parse_dist("normal:3,0").is_err());
        assert!(parse_dist("lognormal:0,1").is_err());
        assert!(parse_dist("normal:0").is_err());
    }

    #[test]
    fn sweeps() {
        let Sweep(v) = parse_sweep("1:100:100").unwrap();
        assert_eq!(v.len(), 100);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[99], 100.0);
        assert_eq!(v[41], 42.0);
        assert_eq!(parse_sweep("1:100:99").unwrap().0.len(), 99);
        assert!(parse_sweep("1:100").is_err());
        assert!(parse_sweep("1:100:0").is_err());
    }

    #[test]
    fn node_lists() {
        assert_eq!(parse_n_list("1001,10001").unwrap().0, vec![1001, 10001]);
        let NList(v) = parse_n_list("101..20001").unwrap();
        assert_eq!(v.len(), 200);
        assert_eq!((v[0], v[199]), (101, 20001));
        assert!(v.iter().all(|n| n % 2 == 1));
        assert_eq!(parse_n_list("11..31:10,7").unwrap().0, vec![11, 21, 31, 7]);
        assert!(parse_n_list("31..11").is_err());
        assert!(parse_n_list("x").is_err());
        assert!(parse_n_list("").is_err());
    }
}
