//! CSV emission for sampled curves.
//!
//! Numbers are written as `{:.11e}`: 12 significant digits, '.' decimal
//! separator, independent of locale.

use std::io::Write;

use bendpoint::SnrDb;

use crate::CliError;

/// Fixed output format for every number the CLI prints.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

/// Labelled `(rho, value)` samples with strictly increasing `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    label: String,
    points: Vec<(SnrDb, f64)>,
}

impl CurveSeries {
    pub fn new(label: impl Into<String>, points: Vec<(SnrDb, f64)>) -> Result<Self, CliError> {
        let label = label.into();
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(CliError::Usage(format!(
                "curve '{label}' must have strictly increasing rho"
            )));
        }
        Ok(Self { label, points })
    }

    /// Samples `f` on a grid of SNR values.
    pub fn sample<F>(label: impl Into<String>, grid: &[f64], f: F) -> Result<Self, CliError>
    where
        F: Fn(SnrDb) -> bendpoint::Result<f64>,
    {
        let points = grid
            .iter()
            .map(|&r| {
                let rho = SnrDb::new(r)?;
                Ok((rho, f(rho)?))
            })
            .collect::<bendpoint::Result<Vec<_>>>()?;
        Self::new(label, points)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(SnrDb, f64)] {
        &self.points
    }
}

/// Writes `rho_db,<label>,...` with one row per SNR. All series must share
/// the same grid.
pub fn write_curves<W: Write>(out: &mut W, series: &[CurveSeries]) -> std::io::Result<()> {
    let first = &series[0];
    for s in series {
        assert!(
            s.points.len() == first.points.len()
                && s.points.iter().zip(&first.points).all(|(a, b)| a.0 == b.0),
            "series '{}' is on a different grid",
            s.label
        );
    }
    let labels: Vec<&str> = series.iter().map(|s| s.label.as_str()).collect();
    writeln!(out, "rho_db,{}", labels.join(","))?;
    for (i, (rho, _)) in first.points.iter().enumerate() {
        let mut row = fmt_num(rho.db());
        for s in series {
            row.push(',');
            row.push_str(&fmt_num(s.points[i].1));
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

/// One marker row: antenna count, SNR and rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Marker {
    pub n: usize,
    pub rho: SnrDb,
    pub rate_nats: f64,
}

pub fn write_markers<W: Write>(out: &mut W, markers: &[Marker]) -> std::io::Result<()> {
    writeln!(out, "n,rho_db,rate_nats")?;
    for m in markers {
        writeln!(
            out,
            "{},{},{}",
            m.n,
            fmt_num(m.rho.db()),
            fmt_num(m.rate_nats)
        )?;
    }
    Ok(())
}
