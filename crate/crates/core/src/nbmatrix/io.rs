use std::fmt::Write;

use thiserror::Error;

use super::csr::{MatrixError, NonBranchingMatrix};
use super::reduce::WeakReduction;
use crate::format::{content_lines, parse_num, ParseError};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Reads `nb-matrix v1 <rows> <cols> <nnz>` followed by `row col val` lines.
pub fn read_nb_matrix(text: &str) -> Result<NonBranchingMatrix, MatrixFileError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("nb-matrix") || tok.next() != Some("v1") {
        return Err(ParseError::new(ln, "expected header 'nb-matrix v1 <rows> <cols> <nnz>'").into());
    }
    let rows: usize = parse_num(ln, tok.next(), "row count")?;
    let cols: usize = parse_num(ln, tok.next(), "column count")?;
    let nnz: usize = parse_num(ln, tok.next(), "nonzero count")?;
    let mut triplets = Vec::with_capacity(nnz);
    for (ln, line) in lines {
        let mut tok = line.split_whitespace();
        let r: usize = parse_num(ln, tok.next(), "row")?;
        let c: usize = parse_num(ln, tok.next(), "column")?;
        let v: i64 = parse_num(ln, tok.next(), "value")?;
        if tok.next().is_some() {
            return Err(ParseError::new(ln, "trailing tokens").into());
        }
        triplets.push((r, c, v));
    }
    if triplets.len() != nnz {
        return Err(ParseError::new(
            ln,
            format!("header announces {nnz} entries, found {}", triplets.len()),
        )
        .into());
    }
    Ok(NonBranchingMatrix::from_triplets(rows, cols, &triplets)?)
}

pub fn write_nb_matrix(m: &NonBranchingMatrix) -> String {
    let mut out = format!("nb-matrix v1 {} {} {}\n", m.n_rows(), m.n_cols(), m.nnz());
    for (i, j, v) in m.triplets() {
        let _ = writeln!(out, "{i} {j} {v}");
    }
    out
}

/// One `component <id> <kind> cols=<...>` line per component, then one
/// `kernel <col> support=<c:sign,...>` line per zero column of `R`.
pub fn write_reduction_sidecar(red: &WeakReduction) -> String {
    let mut out = String::new();
    for (id, c) in red.partition.components.iter().enumerate() {
        let cols: Vec<String> = c.cols.iter().map(|j| j.to_string()).collect();
        let _ = writeln!(out, "component {id} {} cols={}", c.kind.as_str(), cols.join(","));
    }
    for &j in &red.kernel_cols {
        let support: Vec<String> = red
            .v
            .column(j)
            .iter()
            .map(|&i| format!("{i}:{}", red.e[i]))
            .collect();
        let _ = writeln!(out, "kernel {j} support={}", support.join(","));
    }
    out
}
