//! Compactified configuration spaces of points on two lines and their
//! stratifications.

mod complex;
mod laurent;
mod orient;
mod profile;
mod stratum;

pub use complex::{chain_complex, StrataPoset};
pub use laurent::{sample, LaurentConfiguration, LaurentPoly};
pub use orient::{Gauge, OrientationTable, ProfileSigns};
pub use profile::{compositions, GapIndex, Profile};
pub use stratum::{
    canonical_cmp, codim1_strata, composite_profile, enumerate_strata, find_product_stratum, strata_with_scales,
    CodimOne, Snapshot, StratumType,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("invalid profile {0}")]
    InvalidProfile(String),
    #[error("profile {0} has no gaps")]
    NoGaps(String),
    #[error("profile {0} has dimension 0")]
    TooSmall(String),
    #[error("cannot parse profile {input:?}: bad token {token:?}")]
    Parse { input: String, token: String },
    #[error("expected {expected} levels, got {got}")]
    LevelCount { expected: usize, got: usize },
    #[error("levels {0:?} do not form an initial segment")]
    NotCanonical(Vec<usize>),
    #[error("stratum {0:?} is not of codimension one")]
    NotCodimOne(Vec<usize>),
    #[error("stratum {1:?} is not a facet of {0:?}")]
    NotIncident(Vec<usize>, Vec<usize>),
    #[error("points at gap {0:?} coincide")]
    Collapsing(GapIndex),
    #[error("points at gap {0:?} are out of order")]
    Unordered(GapIndex),
    #[error("interval {upper:?} > {lower:?} has {middles} middle strata")]
    DiamondFailure { upper: Vec<usize>, lower: Vec<usize>, middles: usize },
    #[error("inconsistent orientation signs on {profile}: cycle {cycle:?} closed by {closing:?}")]
    InconsistentSigns { profile: String, cycle: Vec<Vec<usize>>, closing: Vec<usize> },
}
