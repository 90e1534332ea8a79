//! Channel matrix text files.
//!
//! ```text
//! N
//! re(0,0) im(0,0) re(0,1) im(0,1) ... re(0,N-1) im(0,N-1)
//! ...                                  (N rows, 2N numbers each)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Values are written with Rust's shortest
//! round-trip float formatting, so `write_matrix` followed by
//! `load_matrix` reproduces every entry bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bendpoint::{Complex, ComplexMat};

use crate::CliError;

pub fn load_matrix(path: &Path) -> Result<ComplexMat, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<ComplexMat, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (dim_line, dim_text) = lines
        .next()
        .ok_or_else(|| CliError::parse(1, "missing dimension line"))?;
    let dim: usize = dim_text
        .parse()
        .map_err(|_| CliError::parse(dim_line, format!("invalid dimension '{dim_text}'")))?;
    if dim == 0 {
        return Err(CliError::parse(dim_line, "dimension must be at least 1"));
    }

    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let (line_no, line) = lines.next().ok_or_else(|| {
            CliError::parse(
                dim_line + row + 1,
                format!("expected {dim} matrix rows, found {row}"),
            )
        })?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 * dim {
            return Err(CliError::parse(
                line_no,
                format!(
                    "row {} has {} values, expected {}",
                    row + 1,
                    fields.len(),
                    2 * dim
                ),
            ));
        }
        for pair in fields.chunks(2) {
            let re = parse_float(pair[0], line_no)?;
            let im = parse_float(pair[1], line_no)?;
            data.push(Complex::new(re, im));
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(CliError::parse(line_no, "unexpected extra row"));
    }
    ComplexMat::new(dim, data).map_err(CliError::Domain)
}

fn parse_float(token: &str, line: usize) -> Result<f64, CliError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::parse(line, format!("invalid number '{token}'"))),
    }
}

pub fn format_matrix(m: &ComplexMat) -> String {
    let mut s = format!("{}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("{:e} {:e}", z.re, z.im))
            .collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn write_matrix(path: &Path, m: &ComplexMat) -> Result<(), CliError> {
    fs::write(path, format_matrix(m)).map_err(|e| CliError::io(path, e))
}
