use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rational;

type Vector<K> = BTreeMap<K, Rational>;

/// Incrementally built span of sparse vectors indexed by `K`.
///
/// Keeps an echelon basis together with, for each echelon row, its
/// expression in terms of the vectors inserted so far, so membership tests
/// can return coordinates.
#[derive(Debug, Clone)]
pub struct LinearSpan<K: Ord + Clone> {
    // pivot key -> (reduced vector with unit coefficient at pivot, combination of generators)
    rows: BTreeMap<K, (Vector<K>, Vector<usize>)>,
    generators: usize,
}

impl<K: Ord + Clone> Default for LinearSpan<K> {
    fn default() -> Self {
        LinearSpan { rows: BTreeMap::new(), generators: 0 }
    }
}

impl<K: Ord + Clone> LinearSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of independent vectors accepted by [`insert`](Self::insert).
    pub fn generators(&self) -> usize {
        self.generators
    }

    fn reduce(&self, v: &Vector<K>) -> (Vector<K>, Vector<usize>) {
        use std::ops::Bound::{Excluded, Unbounded};
        let mut v = v.clone();
        let mut combo: Vector<usize> = BTreeMap::new();
        let mut last: Option<K> = None;
        loop {
            // pivot rows only touch keys >= their pivot, so one ascending sweep suffices
            let next = match &last {
                None => v.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(l) => v
                    .range((Excluded(l.clone()), Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(lead) = next else { break };
            let (row, rc) = &self.rows[&lead];
            let f = v[&lead].clone();
            for (k, a) in row {
                let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                *e -= &f * a;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            for (g, a) in rc {
                let e = combo.entry(*g).or_insert_with(Rational::zero);
                *e += &f * a;
                if e.is_zero() {
                    combo.remove(g);
                }
            }
            last = Some(lead);
        }
        (v, combo)
    }

    /// Coordinates of `v` in terms of the accepted generators, if `v` lies in the span.
    pub fn coordinates(&self, v: &Vector<K>) -> Option<Vector<usize>> {
        let (rest, combo) = self.reduce(v);
        rest.is_empty().then_some(combo)
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns its generator index when it was independent.
    pub fn insert(&mut self, v: &Vector<K>) -> Option<usize> {
        let (rest, combo) = self.reduce(v);
        if rest.is_empty() {
            return None;
        }
        let g = self.generators;
        self.generators += 1;
        // rest = v - Σ combo·gen, so as a combination: gen_g - Σ combo
        let mut rc: Vector<usize> = combo.into_iter().map(|(k, a)| (k, -a)).collect();
        rc.insert(g, Rational::one());
        let (lead, lc) = rest.iter().next().map(|(k, a)| (k.clone(), a.clone())).unwrap();
        let inv = Rational::one() / lc;
        let row: Vector<K> = rest.into_iter().map(|(k, a)| (k, a * &inv)).collect();
        let rc = rc.into_iter().map(|(k, a)| (k, a * &inv)).collect();
        self.rows.insert(lead, (row, rc));
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;

    fn v(es: &[(u32, i64)]) -> Vector<u32> {
        es.iter().map(|(k, a)| (*k, rat(*a, 1))).collect()
    }

    #[test]
    fn coordinates_recover_combination() {
        let mut s = LinearSpan::new();
        assert_eq!(s.insert(&v(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(s.insert(&v(&[(1, 1), (2, 2)])), Some(1));
        assert_eq!(s.insert(&v(&[(0, 1), (2, -2)])), None);
        // (1,3,4) = 1*g0 + 2*g1
        let c = s.coordinates(&v(&[(0, 1), (1, 3), (2, 4)])).unwrap();
        assert_eq!(c, [(0usize, rat(1, 1)), (1, rat(2, 1))].into());
        assert!(s.coordinates(&v(&[(3, 1)])).is_none());
        assert_eq!(s.dim(), 2);
    }
}
