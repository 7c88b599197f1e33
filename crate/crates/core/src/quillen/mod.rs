//! Quillen-type duality functors at finite word weight: the bar
//! construction of an associative dg algebra, the commutative-to-Lie and
//! Lie-to-commutative functors, abelianization of free algebras, and the
//! exploratory pipeline starting from `℧`.

mod dg;
mod free;
mod functors;
mod lie;
mod pipeline;

pub use dg::{DgAlgebra, DgLieAlgebra, Vector, Violation};
pub use free::{Flavor, FreeDgAlgebra, Poly};
pub use functors::{abelianize, bar_assoc, quillen_cl, quillen_lc};
pub use lie::{free_lie_basis, graded_commutator, is_lyndon, lyndon_words, standard_factorization, witt_dimension, FreeDgLie, LieBasisElement};
pub use pipeline::{conjecture_pipeline, mho_algebra, MhoBasisElement, PipelineReport, StageReport};

use serde::Serialize;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QuillenError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("degree: {0}")]
    Degree(String),
    #[error("not a free algebra of the required kind: {0}")]
    NotFree(String),
    #[error("the differential leaves the Lie subalgebra at word {0:?}")]
    NotLie(Vec<usize>),
    #[error("input is not graded-commutative: {0:?}")]
    NotCommutative(Violation),
    #[error(transparent)]
    Linalg(#[from] crate::qlinalg::LinalgError),
    #[error(transparent)]
    Mho(#[from] crate::mho::MhoError),
}

/// The weight bound of a free construction, and whether applying the
/// differential ever produced words past it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub max_weight: usize,
    pub overflowed: bool,
}
