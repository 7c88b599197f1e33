use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LinalgError, SparseMatrix};

/// Whether boundaries lower (`Homological`) or raise (`Cohomological`) degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Homological,
    Cohomological,
}

impl Direction {
    fn step(self) -> i64 {
        match self {
            Direction::Homological => -1,
            Direction::Cohomological => 1,
        }
    }
}

/// A bounded complex of finite-dimensional rational vector spaces.
///
/// `boundaries[d]` is the matrix of the map out of degree `d`, acting on
/// column vectors: it has `ranks[d ± 1]` rows and `ranks[d]` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub direction: Direction,
    pub ranks: BTreeMap<i64, usize>,
    pub boundaries: BTreeMap<i64, SparseMatrix>,
}

/// Outcome of [`ChainComplex::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub ok: bool,
    /// `(degree, basis element)` whose image under the squared boundary is nonzero.
    pub witness: Option<(i64, usize)>,
}

/// Betti numbers over the rationals. Degrees with zero homology are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: BTreeMap<i64, usize>,
}

impl ChainComplex {
    pub fn new(
        direction: Direction,
        ranks: BTreeMap<i64, usize>,
        boundaries: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, LinalgError> {
        let c = ChainComplex { direction, ranks, boundaries };
        for (&d, m) in &c.boundaries {
            let want_rows = c.rank(d + direction.step());
            let want_cols = c.rank(d);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(LinalgError::ShapeMismatch {
                    degree: d,
                    rows: m.rows(),
                    cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        Ok(c)
    }

    pub fn rank(&self, d: i64) -> usize {
        self.ranks.get(&d).copied().unwrap_or(0)
    }

    /// The map out of degree `d` (a zero matrix when none is stored).
    pub fn boundary(&self, d: i64) -> SparseMatrix {
        self.boundaries
            .get(&d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.rank(d + self.direction.step()), self.rank(d)))
    }

    /// True iff every composite of consecutive boundaries vanishes.
    pub fn check(&self) -> CheckResult {
        let step = self.direction.step();
        for (&d, first) in &self.boundaries {
            let Some(second) = self.boundaries.get(&(d + step)) else { continue };
            let sq = second.mul(first).expect("shapes validated at construction");
            if let Some((_, col, _)) = sq.entries().min_by_key(|(_, c, _)| *c) {
                return CheckResult { ok: false, witness: Some((d, col)) };
            }
        }
        CheckResult { ok: true, witness: None }
    }

    pub fn homology(&self) -> Result<HomologySummary, LinalgError> {
        let chk = self.check();
        if let Some((degree, element)) = chk.witness {
            return Err(LinalgError::NotAComplex { degree, element });
        }
        let step = self.direction.step();
        let rank_of: BTreeMap<i64, usize> = self.boundaries.iter().map(|(d, m)| (*d, m.rank())).collect();
        let mut betti = BTreeMap::new();
        for (&d, &n) in &self.ranks {
            let out = rank_of.get(&d).copied().unwrap_or(0);
            let incoming = rank_of.get(&(d - step)).copied().unwrap_or(0);
            let b = n - out - incoming;
            if b > 0 {
                betti.insert(d, b);
            }
        }
        Ok(HomologySummary { betti })
    }

    /// Alternating sum of component ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }
}
