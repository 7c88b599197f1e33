//! Exact linear algebra over the rationals.
//!
//! Everything downstream (strata complexes, Hom tensors, the Quillen
//! constructions) is computed with [`Rational`] coefficients; no floating
//! point appears anywhere in the crate.

mod chain;
mod rational;
mod sparse;
mod span;

pub use chain::{ChainComplex, CheckResult, Direction, HomologySummary};
pub use rational::{parse_rational, rat, rational_str, Rational};
pub use sparse::SparseMatrix;
pub use span::LinearSpan;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("boundary from degree {degree} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch { degree: i64, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("boundary squares to a nonzero map at degree {degree} (basis element {element})")]
    NotAComplex { degree: i64, element: usize },
    #[error("matrix product shape mismatch: {0}x{1} times {2}x{3}")]
    ProductShape(usize, usize, usize, usize),
}
