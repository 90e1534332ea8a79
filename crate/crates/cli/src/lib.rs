//! Command-line front end for `bendpoint`.
//!
//! Every number the CLI prints comes straight from a library call and is
//! formatted with [`csv::fmt_num`]. Exit codes: 0 success, 2 usage error,
//! 3 numeric or domain error, 4 I/O error.

// `!(x > y)` is used on purpose so that NaN lands on the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod csv;
pub mod figures;
pub mod matrix_io;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use bendpoint::montecarlo::{compare, mc_ergodic_exponential, mc_ergodic_zf};
use bendpoint::numerics::snr_grid;
use bendpoint::rate::bend_point_numeric_closed_form;
use bendpoint::{
    bend_point_analytic, ergodic_asymptote, ergodic_bend_numeric, ergodic_intercept, ergodic_rate,
    high_snr_asymptote, rate_derivative, realize_channel, sum_rate, SnrDb,
};

use crate::csv::{fmt_num, write_curves, CurveSeries};
use crate::figures::{emit_figure_data, Figure};
use crate::matrix_io::load_matrix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] bendpoint::Error),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Self::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Domain(_) | Self::Parse { .. } => EXIT_DOMAIN,
            Self::Io { .. } => EXIT_IO,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bendpoint",
    about = "ZF multiuser-MIMO sum-rate and bend point analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveMode {
    Deterministic,
    Ergodic,
    Asymptote,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McModel {
    /// Per-user gains drawn directly as Exp(1), the model behind the closed form.
    Exponential,
    /// Full Rayleigh channel matrices with zero-forcing precoding.
    RayleighZf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bend point and asymptote intercept of the deterministic sum-rate.
    Bend {
        /// Channel quality factor eta > 0.
        #[arg(
            long,
            allow_negative_numbers = true,
            conflicts_with = "matrix",
            required_unless_present = "matrix"
        )]
        eta: Option<f64>,
        /// Channel matrix file; eta is computed as ||H^-1||_F^2.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Number of antennas/users (defaults to 1, or the matrix dimension).
        #[arg(long)]
        n: Option<usize>,
        /// Report rates in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Sampled rate curve as CSV.
    Curve {
        /// Which curve to sample.
        #[arg(long, value_enum)]
        mode: CurveMode,
        /// Deterministic mode needs it; asymptote mode uses it when given, else the ergodic asymptote.
        #[arg(long, allow_negative_numbers = true)]
        eta: Option<f64>,
        /// Number of antennas/users.
        #[arg(long)]
        n: usize,
        /// First SNR in dB.
        #[arg(long, allow_negative_numbers = true)]
        rho_min: f64,
        /// Last SNR in dB (inclusive).
        #[arg(long, allow_negative_numbers = true)]
        rho_max: f64,
        /// Grid step in dB.
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report rates in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Derivative of the deterministic sum-rate with respect to rho (dB) as CSV.
    Deriv {
        /// Derivative order, 1 to 3.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        order: u8,
        /// Channel quality factor eta > 0.
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
        /// Number of antennas/users.
        #[arg(long)]
        n: usize,
        /// First SNR in dB.
        #[arg(long, allow_negative_numbers = true)]
        rho_min: f64,
        /// Last SNR in dB (inclusive).
        #[arg(long, allow_negative_numbers = true)]
        rho_max: f64,
        /// Grid step in dB.
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric bend point of the ergodic sum-rate against its intercept.
    ErgodicBend {
        /// Number of antennas/users.
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo estimate of the ergodic sum-rate.
    Mc {
        /// Channel model to sample.
        #[arg(long, value_enum)]
        model: McModel,
        /// Number of antennas/users.
        #[arg(long)]
        n: usize,
        /// SNR in dB.
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        /// Number of channel draws (at least 2).
        #[arg(long)]
        samples: usize,
        /// RNG seed; equal seeds give identical output.
        #[arg(long)]
        seed: u64,
    },
    /// Write the CSV data behind a figure into a directory.
    Figures {
        /// Figure number, 2 to 4.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        which: u8,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated antenna counts, e.g. 1,2,4.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
    },
}

fn kv<W: Write>(out: &mut W, key: &str, v: f64) -> io::Result<()> {
    writeln!(out, "{key}={}", fmt_num(v))
}

fn emit_csv<W: Write>(
    out: &mut W,
    path: Option<&Path>,
    series: &[CurveSeries],
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            write_curves(&mut w, series)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(p, e))
        }
        None => write_curves(out, series).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

fn rho(v: f64) -> Result<SnrDb, CliError> {
    Ok(SnrDb::new(v)?)
}

fn execute<W: Write>(cmd: Command, out: &mut W) -> Result<(), CliError> {
    match cmd {
        Command::Bend {
            eta,
            matrix,
            n,
            bits,
        } => {
            let (eta, n) = match (eta, matrix) {
                (Some(eta), None) => (eta, n.unwrap_or(1)),
                (None, Some(path)) => {
                    let h = load_matrix(&path)?;
                    let dim = h.dim();
                    (realize_channel(h)?.eta(), n.unwrap_or(dim))
                }
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --eta or --matrix".into(),
                    ))
                }
            };
            let b = bend_point_analytic(eta, n)?;
            let numeric = bend_point_numeric_closed_form(eta, n)?;
            let rate = if bits {
                b.rate_at_bend.in_bits()
            } else {
                b.rate_at_bend.value()
            };
            (|| {
                writeln!(out, "n={n}")?;
                kv(out, "eta", eta)?;
                kv(out, "rho_bend", b.rho_bend.db())?;
                kv(out, "rho_int", b.rho_int.db())?;
                kv(out, "rho_bend_numeric", numeric.db())?;
                kv(out, "rate_at_bend", rate)?;
                writeln!(out, "rate_unit={}", if bits { "bits" } else { "nats" })?;
                kv(out, "r2_max", b.r2_max)
            })()
            .map_err(stdout_err)
        }
        Command::Curve {
            mode,
            eta,
            n,
            rho_min,
            rho_max,
            step,
            out: path,
            bits,
        } => {
            let grid = snr_grid(rho_min, rho_max, step)?;
            let unit = |v: f64| if bits { v / std::f64::consts::LN_2 } else { v };
            let series = match (mode, eta) {
                (CurveMode::Deterministic, Some(eta)) => {
                    CurveSeries::sample(format!("rate_n{n}"), &grid, |r| {
                        let v = sum_rate(r, eta, n)?;
                        Ok(if bits { v.in_bits() } else { v.value() })
                    })?
                }
                (CurveMode::Deterministic, None) => {
                    return Err(CliError::Usage(
                        "--mode deterministic requires --eta".into(),
                    ))
                }
                (CurveMode::Ergodic, _) => CurveSeries::sample(format!("rate_n{n}"), &grid, |r| {
                    let v = ergodic_rate(r, n)?;
                    Ok(if bits { v.in_bits() } else { v.value() })
                })?,
                (CurveMode::Asymptote, Some(eta)) => {
                    CurveSeries::sample(format!("asymptote_n{n}"), &grid, |r| {
                        Ok(unit(high_snr_asymptote(r, eta, n)?))
                    })?
                }
                (CurveMode::Asymptote, None) => {
                    CurveSeries::sample(format!("asymptote_n{n}"), &grid, |r| {
                        Ok(unit(ergodic_asymptote(r, n)?))
                    })?
                }
            };
            emit_csv(out, path.as_deref(), &[series])
        }
        Command::Deriv {
            order,
            eta,
            n,
            rho_min,
            rho_max,
            step,
            out: path,
        } => {
            let grid = snr_grid(rho_min, rho_max, step)?;
            let series = CurveSeries::sample(format!("d{order}_n{n}"), &grid, |r| {
                rate_derivative(r, eta, n, order)
            })?;
            emit_csv(out, path.as_deref(), &[series])
        }
        Command::ErgodicBend { n } => {
            let bend = ergodic_bend_numeric(n)?;
            let int = ergodic_intercept(n)?;
            (|| {
                writeln!(out, "n={n}")?;
                kv(out, "rho_bend", bend.db())?;
                kv(out, "rho_int", int.db())?;
                kv(out, "gap_db", int.db() - bend.db())?;
                kv(
                    out,
                    "rate_at_bend",
                    ergodic_rate(bend, n).map_or(f64::NAN, |r| r.value()),
                )?;
                kv(
                    out,
                    "rate_at_int",
                    ergodic_rate(int, n).map_or(f64::NAN, |r| r.value()),
                )
            })()
            .map_err(stdout_err)
        }
        Command::Mc {
            model,
            n,
            rho: rho_db,
            samples,
            seed,
        } => {
            let r = rho(rho_db)?;
            let est = match model {
                McModel::Exponential => mc_ergodic_exponential(r, n, samples, seed)?,
                McModel::RayleighZf => mc_ergodic_zf(r, n, samples, seed)?,
            };
            let analytic = ergodic_rate(r, n)?.value();
            let cmp = compare(&est, analytic)?;
            (|| {
                writeln!(
                    out,
                    "model={}",
                    match model {
                        McModel::Exponential => "exponential",
                        McModel::RayleighZf => "rayleigh-zf",
                    }
                )?;
                writeln!(out, "n={n}")?;
                kv(out, "rho", r.db())?;
                writeln!(out, "samples={}", est.samples)?;
                writeln!(out, "seed={}", est.seed)?;
                writeln!(out, "resampled={}", est.resampled)?;
                kv(out, "mean", est.mean)?;
                kv(out, "stderr", est.stderr)?;
                kv(out, "analytic", analytic)?;
                kv(out, "abs_diff", cmp.abs_diff)?;
                kv(out, "z_score", cmp.z_score)
            })()
            .map_err(stdout_err)
        }
        Command::Figures {
            which,
            out: dir,
            n_list,
        } => {
            let fig = Figure::from_number(which)
                .ok_or_else(|| CliError::Usage(format!("unknown figure {which}")))?;
            let files = emit_figure_data(fig, &dir, n_list.as_deref())?;
            for f in files {
                writeln!(out, "{}", f.display()).map_err(stdout_err)?;
            }
            Ok(())
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run_with<I, T, W, E>(argv: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run_with(argv, &mut out, &mut err)
}
