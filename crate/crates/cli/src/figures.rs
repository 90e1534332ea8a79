//! Data behind the three plots: `R''` for `eta = 1`, ergodic curves for one
//! and two antennas with their intercept markers, and ergodic curves with
//! asymptotes for a configurable antenna set.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use bendpoint::numerics::snr_grid;
use bendpoint::{
    ergodic_asymptote, ergodic_bend_numeric, ergodic_intercept, ergodic_rate, rate_derivative,
};

use crate::csv::{write_curves, write_markers, CurveSeries, Marker};
use crate::CliError;

/// Grid step for all figures; dyadic so integer dB values are hit exactly.
pub const FIGURE_STEP_DB: f64 = 0.125;
pub const FIG2_RANGE: (f64, f64) = (-30.0, 30.0);
pub const ERGODIC_RANGE: (f64, f64) = (-10.0, 30.0);

pub const FIG2_DEFAULT_N: &[usize] = &[1];
pub const FIG3_DEFAULT_N: &[usize] = &[1, 2];
pub const FIG4_DEFAULT_N: &[usize] = &[1, 2, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    SecondDerivative,
    ErgodicPair,
    ErgodicFamily,
}

impl Figure {
    pub fn from_number(which: u8) -> Option<Self> {
        match which {
            2 => Some(Self::SecondDerivative),
            3 => Some(Self::ErgodicPair),
            4 => Some(Self::ErgodicFamily),
            _ => None,
        }
    }

    pub fn stem(self) -> &'static str {
        match self {
            Self::SecondDerivative => "fig2",
            Self::ErgodicPair => "fig3",
            Self::ErgodicFamily => "fig4",
        }
    }

    pub fn default_antennas(self) -> &'static [usize] {
        match self {
            Self::SecondDerivative => FIG2_DEFAULT_N,
            Self::ErgodicPair => FIG3_DEFAULT_N,
            Self::ErgodicFamily => FIG4_DEFAULT_N,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn write_csv(path: &Path, series: &[CurveSeries]) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_curves(&mut w, series)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

fn write_marker_file(path: &Path, markers: &[Marker]) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_markers(&mut w, markers)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

fn ergodic_curves(grid: &[f64], antennas: &[usize]) -> Result<Vec<CurveSeries>, CliError> {
    antennas
        .iter()
        .map(|&n| {
            CurveSeries::sample(format!("rate_n{n}"), grid, |r| {
                Ok(ergodic_rate(r, n)?.value())
            })
        })
        .collect()
}

fn intercept_markers(antennas: &[usize]) -> Result<Vec<Marker>, CliError> {
    antennas
        .iter()
        .map(|&n| {
            let rho = ergodic_intercept(n)?;
            Ok(Marker {
                n,
                rho,
                rate_nats: ergodic_rate(rho, n)?.value(),
            })
        })
        .collect()
}

fn bend_markers(antennas: &[usize]) -> Result<Vec<Marker>, CliError> {
    antennas
        .iter()
        .map(|&n| {
            let rho = ergodic_bend_numeric(n)?;
            Ok(Marker {
                n,
                rho,
                rate_nats: ergodic_rate(rho, n)?.value(),
            })
        })
        .collect()
}

/// Writes the CSV files for `figure` into `out` and returns their paths.
///
/// `antennas` overrides the default antenna set when given.
pub fn emit_figure_data(
    figure: Figure,
    out: &Path,
    antennas: Option<&[usize]>,
) -> Result<Vec<PathBuf>, CliError> {
    let antennas = antennas.unwrap_or(figure.default_antennas());
    if antennas.is_empty() {
        return Err(CliError::Usage("antenna list is empty".into()));
    }
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let stem = figure.stem();
    let main = out.join(format!("{stem}.csv"));
    let mut written = vec![main.clone()];

    match figure {
        Figure::SecondDerivative => {
            let grid = snr_grid(FIG2_RANGE.0, FIG2_RANGE.1, FIGURE_STEP_DB)?;
            let series = antennas
                .iter()
                .map(|&n| {
                    CurveSeries::sample(format!("r2_eta1_n{n}"), &grid, |r| {
                        rate_derivative(r, 1.0, n, 2)
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            write_csv(&main, &series)?;
        }
        Figure::ErgodicPair => {
            let grid = snr_grid(ERGODIC_RANGE.0, ERGODIC_RANGE.1, FIGURE_STEP_DB)?;
            write_csv(&main, &ergodic_curves(&grid, antennas)?)?;
            let markers = out.join(format!("{stem}_markers.csv"));
            write_marker_file(&markers, &intercept_markers(antennas)?)?;
            written.push(markers);
        }
        Figure::ErgodicFamily => {
            let grid = snr_grid(ERGODIC_RANGE.0, ERGODIC_RANGE.1, FIGURE_STEP_DB)?;
            let mut series = Vec::new();
            for (&n, rate) in antennas.iter().zip(ergodic_curves(&grid, antennas)?) {
                series.push(rate);
                series.push(CurveSeries::sample(
                    format!("asymptote_n{n}"),
                    &grid,
                    |r| ergodic_asymptote(r, n),
                )?);
            }
            write_csv(&main, &series)?;
            let markers = out.join(format!("{stem}_markers.csv"));
            write_marker_file(&markers, &intercept_markers(antennas)?)?;
            let bends = out.join(format!("{stem}_bend_markers.csv"));
            write_marker_file(&bends, &bend_markers(antennas)?)?;
            written.push(markers);
            written.push(bends);
        }
    }
    Ok(written)
}
