//! Exit codes: 0 success, 2 input or configuration, 3 matrix violation,
//! 4 complex violation, 5 numerical failure.

use nblap::complexes::{ComplexError, ComplexFileError, ImageError};
use nblap::format::ParseError;
use nblap::kron::KronError;
use nblap::nbmatrix::{MatrixError, MatrixFileError};
use nblap::persistence::PersistenceError;
use nblap::spectral::SpectralError;

use crate::config::ConfigError;

pub const INPUT: i32 = 2;
pub const MATRIX: i32 = 3;
pub const COMPLEX: i32 = 4;
pub const NUMERICAL: i32 = 5;

fn spectral(e: &SpectralError) -> i32 {
    match e {
        SpectralError::UnknownSolver(_) | SpectralError::InvalidCount => INPUT,
        _ => NUMERICAL,
    }
}

fn persistence(e: &PersistenceError) -> i32 {
    match e {
        PersistenceError::Complex(_) => COMPLEX,
        PersistenceError::Spectral(s) => spectral(s),
        PersistenceError::InvalidStep { .. } => INPUT,
    }
}

/// Exit code for the first recognized error in the chain.
pub fn code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.is::<ConfigError>() || cause.is::<ParseError>() || cause.is::<ImageError>() {
            return INPUT;
        }
        if cause.is::<std::io::Error>() || cause.is::<image::ImageError>() || cause.is::<serde_json::Error>() {
            return INPUT;
        }
        if cause.is::<MatrixError>() {
            return MATRIX;
        }
        if let Some(e) = cause.downcast_ref::<MatrixFileError>() {
            return match e {
                MatrixFileError::Parse(_) => INPUT,
                MatrixFileError::Matrix(_) => MATRIX,
            };
        }
        if cause.is::<ComplexError>() {
            return COMPLEX;
        }
        if let Some(e) = cause.downcast_ref::<ComplexFileError>() {
            return match e {
                ComplexFileError::Parse(_) => INPUT,
                ComplexFileError::Complex(_) => COMPLEX,
            };
        }
        if let Some(e) = cause.downcast_ref::<PersistenceError>() {
            return persistence(e);
        }
        if let Some(e) = cause.downcast_ref::<KronError>() {
            return match e {
                KronError::Spectral(s) => spectral(s),
                _ => COMPLEX,
            };
        }
        if let Some(e) = cause.downcast_ref::<SpectralError>() {
            return spectral(e);
        }
    }
    1
}
