//! `vpspace`: window means, modulars, paranorms, Luxemburg and Amemiya norms,
//! summability diagnostics, the Banach-Saks bound and the property checker,
//! from the command line.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use vp_space::verify::{self, format_csv, format_text, NamedSpace, SampleConfig};
use vp_space::{
    abs_window_mean, amemiya_norm, classify_diagnostics, luxemburg_norm, modular_rho, paranorm_h,
    property_bsp_check, vp_mean, ExtractionConfig, NormResult, NormalizedBasis, SeparatedSpikes,
    SequenceFamily, SpaceSpec, WeightSequence,
};

mod format;

pub use format::{bound, significant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest support the `disjoint` family may spread over.
const DISJOINT_MAX_SUPPORT: usize = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "vpspace",
    version,
    about = "Numerics for de la Vallée-Poussin sequence spaces"
)]
struct Cli {
    /// Print full precision instead of 9 significant digits.
    #[arg(long, global = true)]
    raw: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Window means t_k(x) for k = 1..K.
    Mean {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Certified modular ρ(x).
    Modular {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Certified paranorm h(x) = ρ(x)^{1/M}.
    Paranorm {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Luxemburg norm.
    Luxemburg {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Amemiya norm.
    Amemiya {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Finite-horizon profile of the absolute window means.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        horizon: usize,
    },
    /// Gliding-hump extraction and the bound 2(n+1)^{1/p} for n = 0..N.
    BanachSaks {
        /// Constant exponent, > 1.
        #[arg(long)]
        p: f64,
        /// Largest average length.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Family::Basis)]
        family: Family,
        /// `identity` or `rate:R`.
        #[arg(long, default_value = "identity")]
        lambda: String,
    },
    /// Seeded property checks over the default panel of spaces.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Run only checks whose name (or name before `/`) matches.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// x_n = e_n / ‖e_n‖.
    Basis,
    /// Normalized spikes whose windows do not overlap where the weights allow.
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Text,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec {
        path: String,
        source: vp_space::SpecError,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses `argv` (including the program name), runs the command, and returns
/// the exit status.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn load(path: &Path) -> Result<SpaceSpec, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: shown.clone(),
        source,
    })?;
    SpaceSpec::parse(&text).map_err(|source| CliError::Spec {
        path: shown,
        source,
    })
}

fn sequence_of(spec: &SpaceSpec, path: &Path) -> Result<vp_space::FiniteSequence, CliError> {
    spec.sequence().cloned().map_err(|source| CliError::Spec {
        path: path.display().to_string(),
        source,
    })
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--tol must be a positive number, got {tol}"
        )))
    }
}

fn compute<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Compute(e.to_string()))
}

fn parse_lambda(text: &str) -> Result<WeightSequence, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--lambda must be `identity` or `rate:R`, got `{text}`"
        ))
    };
    match text.split_once(':') {
        None if text == "identity" => Ok(WeightSequence::Identity),
        Some(("rate", r)) => {
            let r: f64 = r.parse().map_err(|_| bad())?;
            WeightSequence::rate(r).map_err(|e| CliError::Usage(format!("--lambda: {e}")))
        }
        _ => Err(bad()),
    }
}

fn norm_line(r: &NormResult, tol: f64, raw: bool) -> String {
    if raw {
        format!(
            "{} residual={:e} iterations={}",
            significant(r.value, true),
            r.residual,
            r.iterations
        )
    } else {
        format!(
            "{} residual<{:e} iterations={}",
            significant(r.value, false),
            tol,
            r.iterations
        )
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let raw = cli.raw;
    match cli.command {
        Command::Mean { input, k } => {
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            if k == 0 {
                return Err(CliError::Usage("-k must be at least 1".into()));
            }
            for k in 1..=k {
                let w = spec.weights.window(k);
                let t = vp_mean(&x, &spec.weights, k);
                // summation rounding: at most len·ε relative to the |x| mean
                let err = w.len() as f64 * f64::EPSILON * abs_window_mean(&x, &spec.weights, k);
                writeln!(
                    out,
                    "k={k} t={} ± {} window=[{},{}]",
                    significant(t, raw),
                    bound(err, raw),
                    w.lo,
                    w.hi
                )?;
            }
        }
        Command::Modular { input, tol } => {
            check_tol(tol)?;
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            let v = compute(modular_rho(&x, &spec.weights, &spec.exponents, tol))?;
            writeln!(
                out,
                "{} ± {}",
                significant(v.estimate, raw),
                bound(v.error_bound, raw)
            )?;
        }
        Command::Paranorm { input, tol } => {
            check_tol(tol)?;
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            let v = compute(paranorm_h(&x, &spec.weights, &spec.exponents, tol))?;
            writeln!(
                out,
                "{} ± {}",
                significant(v.estimate, raw),
                bound(v.error_bound, raw)
            )?;
        }
        Command::Luxemburg { input, tol } => {
            check_tol(tol)?;
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            let r = compute(luxemburg_norm(&x, &spec.weights, &spec.exponents, tol))?;
            writeln!(out, "{}", norm_line(&r, tol, raw))?;
        }
        Command::Amemiya { input, tol } => {
            check_tol(tol)?;
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            let r = compute(amemiya_norm(&x, &spec.weights, &spec.exponents, tol))?;
            writeln!(out, "{}", norm_line(&r, tol, raw))?;
        }
        Command::Classify { input, horizon } => {
            let spec = load(&input)?;
            let x = sequence_of(&spec, &input)?;
            if horizon == 0 {
                return Err(CliError::Usage("--horizon must be at least 1".into()));
            }
            let d = classify_diagnostics(|j| x.get(j), &spec.weights, horizon);
            let err = |v: f64| bound(horizon as f64 * f64::EPSILON * v, raw);
            writeln!(out, "horizon={}", d.horizon)?;
            writeln!(out, "sup={} ± {}", significant(d.sup, raw), err(d.sup))?;
            writeln!(out, "last={} ± {}", significant(d.last, raw), err(d.last))?;
            writeln!(
                out,
                "trend={} ({})",
                format!("{:?}", d.trend).to_lowercase(),
                d.trend.profile()
            )?;
            writeln!(out, "note: {}", d.disclaimer)?;
        }
        Command::BanachSaks {
            p,
            n,
            family,
            lambda,
        } => {
            if !(p.is_finite() && p > 1.0) {
                return Err(CliError::Usage(format!("--p must exceed 1, got {p}")));
            }
            let weights = parse_lambda(&lambda)?;
            let fam: Box<dyn SequenceFamily> = match family {
                Family::Basis => Box::new(NormalizedBasis::new(weights.clone(), p)),
                Family::Disjoint => Box::new(compute(SeparatedSpikes::new(
                    &weights,
                    p,
                    n.max(1),
                    DISJOINT_MAX_SUPPORT,
                ))?),
            };
            let report = compute(property_bsp_check(
                fam.as_ref(),
                &weights,
                p,
                n,
                &ExtractionConfig::default(),
            ))?;
            let join = |v: Vec<usize>| {
                v.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "indices: {}", join(report.extraction.indices()))?;
            writeln!(out, "cuts: {}", join(report.extraction.cuts()))?;
            for r in &report.rows {
                writeln!(
                    out,
                    "n={} lhs={} ± {} rhs={} ratio={} middle={} {}",
                    r.n,
                    significant(r.lhs, raw),
                    bound(r.lhs_error, raw),
                    significant(r.rhs, raw),
                    significant(r.ratio, raw),
                    significant(r.middle, raw),
                    if r.pass { "pass" } else { "FAIL" }
                )?;
            }
            let failed: Vec<usize> = report.failures().map(|r| r.n).collect();
            if failed.is_empty() {
                writeln!(out, "all {} bounds hold", report.rows.len())?;
            } else {
                writeln!(
                    out,
                    "{} of {} bounds violated (first at n={})",
                    failed.len(),
                    report.rows.len(),
                    failed[0]
                )?;
                return Ok(EXIT_CHECK_FAILED);
            }
        }
        Command::Verify {
            seed,
            samples,
            checks,
            format,
        } => {
            if samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            let cfg = SampleConfig {
                seed,
                count: samples,
                ..SampleConfig::default()
            };
            let mut reports = verify::run_panel(&NamedSpace::default_panel(), &cfg);
            if !checks.is_empty() {
                let matches =
                    |name: &str, want: &str| name == want || name.split('/').next() == Some(want);
                if let Some(unknown) = checks
                    .iter()
                    .find(|c| !reports.iter().any(|r| matches(&r.name, c)))
                {
                    return Err(CliError::Usage(format!("unknown check `{unknown}`")));
                }
                reports.retain(|r| checks.iter().any(|c| matches(&r.name, c)));
            }
            let text = match format {
                ReportFormat::Csv => format_csv(&reports),
                ReportFormat::Text => format_text(&reports),
            };
            write!(out, "{text}")?;
            if reports.iter().any(|r| !r.pass) {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}
