//! Plain-text and JSON input formats plus the fixed-precision number
//! formatting used by all CLI output.
//!
//! Matrix files are diff-able fixtures: a first line `n=<modes>` followed by
//! 2n whitespace-separated rows of decimal floats. A JSON alternative
//! (`{"modes": n, "rows": [[…], …]}`) is auto-detected by the leading `{`.
//! Parse errors carry 1-based line/column locations.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelDescription, GaussianChannel};
use crate::symplectic::CovarianceMatrix;
use crate::{GaussError, Result};

/// JSON form of a covariance-matrix file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub modes: usize,
    pub rows: Vec<Vec<f64>>,
}

fn parse_err(line: usize, column: usize, msg: impl AsRef<str>) -> GaussError {
    GaussError::Parse(format!("line {line}, column {column}: {}", msg.as_ref()))
}

/// Parses the plain-text matrix format.
pub fn parse_matrix_text(input: &str) -> Result<DMatrix<f64>> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty matrix file"))?;
    let header = header.trim();
    let modes: usize = header
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(header_line, 1, "expected header `n=<modes>`"))?
        .trim()
        .parse()
        .map_err(|_| parse_err(header_line, 3, "mode count is not a positive integer"))?;
    if modes == 0 {
        return Err(parse_err(header_line, 3, "mode count must be at least 1"));
    }
    let dim = 2 * modes;
    let mut data = Vec::with_capacity(dim * dim);
    let mut rows_read = 0usize;
    for (line_no, line) in lines {
        if rows_read == dim {
            return Err(parse_err(line_no, 1, format!("expected exactly {dim} rows")));
        }
        let mut row = Vec::with_capacity(dim);
        let mut column = 1;
        for token in line.split_whitespace() {
            column = line.find(token).map(|c| c + 1).unwrap_or(column);
            let value: f64 = token.parse().map_err(|_| {
                parse_err(line_no, column, format!("`{token}` is not a decimal float"))
            })?;
            if !value.is_finite() {
                return Err(parse_err(line_no, column, "matrix entries must be finite"));
            }
            row.push(value);
        }
        if row.len() != dim {
            return Err(parse_err(
                line_no,
                1,
                format!("expected {dim} entries per row, found {}", row.len()),
            ));
        }
        data.extend(row);
        rows_read += 1;
    }
    if rows_read != dim {
        return Err(parse_err(
            input.lines().count().max(1),
            1,
            format!("expected {dim} rows, found {rows_read}"),
        ));
    }
    Ok(DMatrix::from_row_slice(dim, dim, &data))
}

/// Parses the JSON matrix format.
pub fn parse_matrix_json(input: &str) -> Result<DMatrix<f64>> {
    let file: MatrixFile = serde_json::from_str(input)
        .map_err(|e| GaussError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let dim = 2 * file.modes;
    if file.modes == 0 {
        return Err(GaussError::Parse("mode count must be at least 1".into()));
    }
    if file.rows.len() != dim {
        return Err(GaussError::Parse(format!(
            "expected {dim} rows, found {}",
            file.rows.len()
        )));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in file.rows.iter().enumerate() {
        if row.len() != dim {
            return Err(GaussError::Parse(format!(
                "row {}: expected {dim} entries, found {}",
                i + 1,
                row.len()
            )));
        }
        if let Some(v) = row.iter().find(|v| !v.is_finite()) {
            return Err(GaussError::Parse(format!(
                "row {}: entry {v} is not finite",
                i + 1
            )));
        }
        data.extend_from_slice(row);
    }
    Ok(DMatrix::from_row_slice(dim, dim, &data))
}

/// Auto-detects the format by the first non-whitespace byte.
pub fn parse_matrix(input: &str) -> Result<DMatrix<f64>> {
    if input.trim_start().starts_with('{') {
        parse_matrix_json(input)
    } else {
        parse_matrix_text(input)
    }
}

/// Parses and validates a covariance-matrix file.
pub fn parse_covariance(input: &str) -> Result<CovarianceMatrix> {
    CovarianceMatrix::new(parse_matrix(input)?)
}

/// Serialises a matrix in the plain-text fixture format.
pub fn write_matrix_text(matrix: &DMatrix<f64>) -> String {
    let modes = matrix.nrows() / 2;
    let mut out = format!("n={modes}\n");
    for i in 0..matrix.nrows() {
        let row: Vec<String> = (0..matrix.ncols()).map(|j| format_sig(matrix[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a channel description from JSON.
pub fn parse_channel_json(input: &str) -> Result<GaussianChannel> {
    let desc: ChannelDescription = serde_json::from_str(input)
        .map_err(|e| GaussError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    desc.to_channel()
}

/// Formats with 12 significant digits, the fixed CLI precision.
pub fn format_sig(value: f64) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let formatted = format!("{value:.11e}");
    // normalise `1.23000000000e2` style output back to plain decimal when
    // the exponent is moderate, matching typical table expectations
    let exp = value.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let plain = format!("{value:.decimals$}");
        // trim trailing zeros but keep at least one digit
        let trimmed = plain.trim_end_matches('0').trim_end_matches('.');
        if trimmed.is_empty() || trimmed == "-" {
            "0".into()
        } else {
            trimmed.to_string()
        }
    } else {
        formatted
    }
}

/// One CSV line from string fields (no quoting needed for our schemas).
pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}
