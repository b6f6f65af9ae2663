//! `complex v1` text format.
//!
//! ```text
//! complex v1 simplicial|cubical|abstract
//! cells q=0
//! <one cell key per line>
//! weights q=1
//! <one weight per line>
//! boundary q=1          (abstract complexes only)
//! <row col val>
//! ```
//! Simplex keys are vertex lists (`0 1 2`), cube keys interval products
//! (`[0,1]x[2,2]`), abstract keys free labels.

use std::fmt::Write;

use thiserror::Error;

use super::cell::{CellKey, Cube};
use super::complex::{Complex, ComplexError, ComplexKind};
use super::pair::ComplexPair;
use crate::format::{content_lines, fmt_f64, parse_num, ParseError};
use crate::sparse::CscMatrix;

#[derive(Debug, Error)]
pub enum ComplexFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

enum Section {
    Cells(usize),
    Weights,
    Boundary(usize),
}

struct Parsed {
    kind: ComplexKind,
    cells: Vec<Vec<(usize, String)>>,
    weights: Vec<(usize, Vec<f64>)>,
    boundary: Vec<Vec<(usize, usize, i32)>>,
}

fn section_dim(ln: usize, tok: Option<&str>) -> Result<usize, ParseError> {
    let t = tok.ok_or_else(|| ParseError::new(ln, "section needs q=<dim>"))?;
    let v = t
        .strip_prefix("q=")
        .ok_or_else(|| ParseError::new(ln, format!("expected q=<dim>, got '{t}'")))?;
    parse_num(ln, Some(v), "dimension")
}

fn parse(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("complex") || tok.next() != Some("v1") {
        return Err(ParseError::new(ln, "expected header 'complex v1 <kind>'"));
    }
    let kind = match tok.next() {
        Some("simplicial") => ComplexKind::Simplicial,
        Some("cubical") => ComplexKind::Cubical,
        Some("abstract") => ComplexKind::Abstract,
        other => return Err(ParseError::new(ln, format!("unknown complex kind {other:?}"))),
    };
    let mut out = Parsed {
        kind,
        cells: Vec::new(),
        weights: Vec::new(),
        boundary: Vec::new(),
    };
    let mut section = None;
    for (ln, line) in lines {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("cells") => {
                let q = section_dim(ln, tok.next())?;
                if out.cells.len() <= q {
                    out.cells.resize_with(q + 1, Vec::new);
                }
                section = Some(Section::Cells(q));
                continue;
            }
            Some("weights") => {
                let q = section_dim(ln, tok.next())?;
                out.weights.push((q, Vec::new()));
                section = Some(Section::Weights);
                continue;
            }
            Some("boundary") => {
                let q = section_dim(ln, tok.next())?;
                if q == 0 {
                    return Err(ParseError::new(ln, "boundary sections start at q=1"));
                }
                if out.boundary.len() < q {
                    out.boundary.resize_with(q, Vec::new);
                }
                section = Some(Section::Boundary(q));
                continue;
            }
            _ => {}
        }
        match section {
            None => return Err(ParseError::new(ln, "content before the first section")),
            Some(Section::Cells(q)) => out.cells[q].push((ln, line.to_string())),
            Some(Section::Weights) => {
                let w: f64 = parse_num(ln, Some(line), "weight")?;
                out.weights.last_mut().expect("open weights section").1.push(w);
            }
            Some(Section::Boundary(q)) => {
                let mut t = line.split_whitespace();
                let r: usize = parse_num(ln, t.next(), "row")?;
                let c: usize = parse_num(ln, t.next(), "column")?;
                let v: i32 = parse_num(ln, t.next(), "value")?;
                out.boundary[q - 1].push((r, c, v));
            }
        }
    }
    Ok(out)
}

fn parse_key(kind: ComplexKind, ln: usize, s: &str) -> Result<CellKey, ParseError> {
    match kind {
        ComplexKind::Simplicial => {
            let v = s
                .split_whitespace()
                .map(|t| parse_num::<u32>(ln, Some(t), "vertex"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CellKey::simplex(v))
        }
        ComplexKind::Cubical => {
            let mut anchor = Vec::new();
            let mut extent = Vec::new();
            for part in s.split('x') {
                let inner = part
                    .trim()
                    .strip_prefix('[')
                    .and_then(|p| p.strip_suffix(']'))
                    .ok_or_else(|| ParseError::new(ln, format!("bad interval '{part}'")))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| ParseError::new(ln, format!("bad interval '{part}'")))?;
                let a: i64 = parse_num(ln, Some(a.trim()), "interval start")?;
                let b: i64 = parse_num(ln, Some(b.trim()), "interval end")?;
                if b != a && b != a + 1 {
                    return Err(ParseError::new(ln, format!("'{part}' is not an elementary interval")));
                }
                anchor.push(a);
                extent.push(b == a + 1);
            }
            Ok(CellKey::Cube(Cube::new(anchor, extent)))
        }
        ComplexKind::Abstract => Ok(CellKey::label(s)),
    }
}

pub fn read_complex(text: &str) -> Result<Complex, ComplexFileError> {
    let p = parse(text)?;
    let mut c = match p.kind {
        ComplexKind::Abstract => {
            let labels: Vec<Vec<String>> = p
                .cells
                .iter()
                .map(|l| l.iter().map(|(_, s)| s.clone()).collect())
                .collect();
            let mut boundary = Vec::new();
            for q in 1..labels.len() {
                let trip = p.boundary.get(q - 1).cloned().unwrap_or_default();
                let mut cols = vec![Vec::new(); labels[q].len()];
                for (r, col, v) in trip {
                    if r >= labels[q - 1].len() || col >= labels[q].len() {
                        return Err(ComplexError::BadBoundary(format!(
                            "entry ({r}, {col}) outside boundary map of dimension {q}"
                        ))
                        .into());
                    }
                    cols[col].push((r, v));
                }
                boundary.push(CscMatrix::from_columns(labels[q - 1].len(), cols));
            }
            Complex::from_boundaries(labels, boundary)?
        }
        kind => {
            let cells = p
                .cells
                .iter()
                .map(|l| l.iter().map(|(ln, s)| parse_key(kind, *ln, s)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            Complex::from_cells(kind, cells)?
        }
    };
    for (q, w) in p.weights {
        c.set_weights(q, w)?;
    }
    Ok(c)
}

/// Reads the cells of `K` (weights and boundaries ignored) and pairs them
/// with `big`.
pub fn read_subcomplex(text: &str, big: Complex) -> Result<ComplexPair, ComplexFileError> {
    let p = parse(text)?;
    let mut mask: Vec<Vec<bool>> = (0..=big.dim().unwrap_or(0)).map(|q| vec![false; big.n_cells(q)]).collect();
    for (q, list) in p.cells.iter().enumerate() {
        for (ln, s) in list {
            let key = parse_key(big.kind(), *ln, s)?;
            let i = big
                .index_of(q, &key)
                .ok_or_else(|| ComplexError::UnknownCell(key.to_string()))?;
            mask[q][i] = true;
        }
    }
    Ok(ComplexPair::from_mask(big, mask)?)
}

pub fn write_complex(c: &Complex) -> String {
    let mut out = format!("complex v1 {}\n", c.kind().as_str());
    let top = c.dim().map_or(0, |d| d + 1);
    for q in 0..top {
        let _ = writeln!(out, "cells q={q}");
        for k in c.cells(q) {
            let _ = writeln!(out, "{k}");
        }
    }
    for q in 0..top {
        if !c.is_unweighted(q) {
            let _ = writeln!(out, "weights q={q}");
            for w in c.weights(q) {
                let _ = writeln!(out, "{}", fmt_f64(*w));
            }
        }
    }
    if c.kind() == ComplexKind::Abstract {
        for q in 1..top {
            let _ = writeln!(out, "boundary q={q}");
            for (i, j, v) in c.boundary_matrix(q).expect("q >= 1").triplets() {
                let _ = writeln!(out, "{i} {j} {v}");
            }
        }
    }
    out
}
