use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, LinalgError, Rational};

/// Row-major sparse matrix with exact rational entries. Zero entries are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rational::one());
        }
        m
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, v)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data.get(r).and_then(|row| row.get(&c)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `v` to entry `(r, c)`, dropping the entry if it cancels.
    pub fn add_to(&mut self, r: usize, c: usize, v: Rational) -> Result<(), LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows: self.rows, cols: self.cols });
        }
        if v.is_zero() {
            return Ok(());
        }
        let row = &mut self.data[r];
        let e = row.entry(c).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            row.remove(&c);
        }
        Ok(())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rational> {
        &self.data[r]
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ProductShape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, a) in row {
                if let Some(b) = v.get(c) {
                    s += a * b;
                }
            }
            if !s.is_zero() {
                out.insert(r, s);
            }
        }
        out
    }

    /// Rank over the rationals.
    ///
    /// Rows are reduced in order against the pivots found so far; each pivot
    /// sits at the least column index of its reduced row, so the pivot
    /// sequence depends only on the input.
    pub fn rank(&self) -> usize {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for row in &self.data {
            let mut v = row.clone();
            while let Some((&lead, coef)) = v.iter().next() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let f = coef.clone();
                        for (c, a) in p {
                            let e = v.entry(*c).or_insert_with(Rational::zero);
                            *e -= &f * a;
                            if e.is_zero() {
                                v.remove(c);
                            }
                        }
                    }
                    None => {
                        let inv = Rational::one() / coef.clone();
                        for a in v.values_mut() {
                            *a *= &inv;
                        }
                        pivots.insert(lead, v);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = MatrixJson::deserialize(d)?;
        let mut entries = Vec::with_capacity(j.entries.len());
        for (r, c, v) in j.entries {
            entries.push((r, c, parse_rational(&v).map_err(D::Error::custom)?));
        }
        SparseMatrix::from_entries(j.rows, j.cols, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
        assert_eq!(SparseMatrix::zeros(2, 5).rank(), 0);
        // boundary of an interval: one edge, two vertices
        let d = SparseMatrix::from_entries(2, 1, [(0, 0, rat(1, 1)), (1, 0, rat(-1, 1))]).unwrap();
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(SparseMatrix::from_entries(2, 2, [(2, 0, rat(1, 1))]).is_err());
    }

    #[test]
    fn cancelling_entries_are_dropped() {
        let mut m = SparseMatrix::zeros(1, 1);
        m.add_to(0, 0, rat(1, 2)).unwrap();
        m.add_to(0, 0, rat(-1, 2)).unwrap();
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn json_shape() {
        let m = SparseMatrix::from_entries(2, 3, [(0, 2, rat(-1, 3))]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":3,"entries":[[0,2,"-1/3"]]}"#);
        let back: SparseMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((0..r, 0..c, -3i64..4), 0..12).prop_map(move |es| {
                SparseMatrix::from_entries(r, c, es.into_iter().map(|(i, j, v)| (i, j, rat(v, 1)))).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + m.nullity(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rank());
        }
    }
}
