use std::collections::BTreeMap;

use croc::qlinalg::{rat, ChainComplex, Direction, SparseMatrix};
use proptest::prelude::*;

/// Fraction-free (Bareiss) elimination over i128.
fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (mut rank, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn to_sparse(m: &[Vec<i128>], cols: usize) -> SparseMatrix {
    let entries = m
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(c, v)| (r, c, rat(*v as i64, 1))));
    SparseMatrix::from_entries(m.len(), cols, entries).unwrap()
}

fn matrix(max: usize) -> impl Strategy<Value = (Vec<Vec<i128>>, usize)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // narrow entries keep the matrices rank deficient often enough
        (prop::collection::vec(prop::collection::vec(-2i128..=2, c), r), Just(c))
    })
}

#[test]
fn bareiss_oracle() {
    assert_eq!(bareiss_rank(vec![vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(bareiss_rank(vec![vec![0, 1], vec![1, 0]]), 2);
    assert_eq!(bareiss_rank(vec![vec![0, 0, 0]]), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_agrees_with_fraction_free_elimination((m, cols) in matrix(7)) {
        let s = to_sparse(&m, cols);
        let r = s.rank();
        prop_assert_eq!(r, bareiss_rank(m.clone()));
        prop_assert_eq!(s.transpose().rank(), r);
        prop_assert_eq!(r + s.nullity(), cols);
    }

    #[test]
    fn rank_of_a_product_is_bounded((a, k) in matrix(6), seed in prop::collection::vec(-2i64..=2, 36)) {
        let b = SparseMatrix::from_entries(k, 6, (0..k).flat_map(|r| (0..6).map(move |c| (r, c))).map(|(r, c)| (r, c, rat(seed[r * 6 + c], 1)))).unwrap();
        let a = to_sparse(&a, k);
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn two_term_homology((m, cols) in matrix(6)) {
        let d = to_sparse(&m, cols);
        let r = d.rank();
        let ranks = BTreeMap::from([(0, cols), (1, m.len())]);
        let c = ChainComplex::new(Direction::Cohomological, ranks, BTreeMap::from([(0, d)])).unwrap();
        prop_assert!(c.check().ok);
        let betti = c.homology().unwrap().betti;
        prop_assert_eq!(betti.get(&0).copied().unwrap_or(0), cols - r);
        prop_assert_eq!(betti.get(&1).copied().unwrap_or(0), m.len() - r);
        prop_assert_eq!(c.euler_characteristic(), cols as i64 - m.len() as i64);
    }
}
