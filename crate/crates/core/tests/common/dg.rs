//! Small dg algebras and Lie algebras, and random degree-preserving
//! changes of basis to move them around.

use std::collections::BTreeMap;

use croc::qlinalg::{rat, Rational};
use croc::quillen::{DgAlgebra, DgLieAlgebra, Vector};
use num_traits::{One, Zero};

pub fn v(pairs: &[(usize, i64)]) -> Vector {
    pairs.iter().map(|&(k, c)| (k, rat(c, 1))).collect()
}

pub fn interval_cochains() -> DgAlgebra {
    let mut a = DgAlgebra::new(vec![0, 0, 1]);
    a.set_product(0, 0, v(&[(0, 1)]));
    a.set_product(1, 1, v(&[(1, 1)]));
    a.set_product(0, 2, v(&[(2, 1)]));
    a.set_product(2, 1, v(&[(2, 1)]));
    a.set_differential(0, v(&[(2, -1)]));
    a.set_differential(1, v(&[(2, 1)]));
    a
}

pub fn upper_triangular() -> DgAlgebra {
    // e11, e12, e22
    let mut a = DgAlgebra::new(vec![0, 0, 0]);
    a.set_product(0, 0, v(&[(0, 1)]));
    a.set_product(0, 1, v(&[(1, 1)]));
    a.set_product(1, 2, v(&[(1, 1)]));
    a.set_product(2, 2, v(&[(2, 1)]));
    a
}

/// `x, x²` in `x ℚ[x] / (x³)`.
pub fn truncated_polynomial() -> DgAlgebra {
    let mut a = DgAlgebra::new(vec![0, 0]);
    a.set_product(0, 0, v(&[(1, 1)]));
    a
}

/// `e` in degree 0 and `u` in degree 1 with `eu = ue = u`, `ee = e`.
pub fn graded_pair() -> DgAlgebra {
    let mut a = DgAlgebra::new(vec![0, 1]);
    a.set_product(0, 0, v(&[(0, 1)]));
    a.set_product(0, 1, v(&[(1, 1)]));
    a.set_product(1, 0, v(&[(1, 1)]));
    a
}

pub fn sl2() -> DgLieAlgebra {
    // h, e, f
    let mut g = DgLieAlgebra::new(vec![0, 0, 0]);
    for (i, j, w) in [(0, 1, v(&[(1, 2)])), (0, 2, v(&[(2, -2)])), (1, 2, v(&[(0, 1)]))] {
        g.set_bracket(i, j, w.clone());
        g.set_bracket(j, i, w.into_iter().map(|(k, c)| (k, -c)).collect());
    }
    g
}

pub fn two_dim_nonabelian() -> DgLieAlgebra {
    let mut g = DgLieAlgebra::new(vec![0, 0]);
    g.set_bracket(0, 1, v(&[(1, 1)]));
    g.set_bracket(1, 0, v(&[(1, -1)]));
    g
}

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn apply(m: &Matrix, x: &Vector) -> Vector {
    let mut out = Vector::new();
    for (j, c) in x {
        for (i, row) in m.iter().enumerate() {
            if !row[*j].is_zero() {
                *out.entry(i).or_insert_with(Rational::zero) += &row[*j] * c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A degree-preserving change of basis `P` and its inverse, built from
/// elementary moves `(kind, r, s, c)`.
pub fn change_of_basis(degrees: &[i64], moves: &[(bool, usize, usize, i64)]) -> (Matrix, Matrix) {
    let n = degrees.len();
    let (mut p, mut q) = (identity(n), identity(n));
    for &(scale, r, s, c) in moves {
        let (r, s) = (r % n, s % n);
        if scale {
            let lambda = rat(if c % 2 == 0 { 2 } else { -3 }, 1);
            for row in p.iter_mut() {
                row[r] *= &lambda;
            }
            for x in q[r].iter_mut() {
                *x /= &lambda;
            }
        } else if r != s && degrees[r] == degrees[s] {
            // column s of P gains c·(column r); Q's row r loses c·(row s)
            let c = rat(c, 1);
            for row in p.iter_mut() {
                let add = &row[r] * &c;
                row[s] += add;
            }
            let row_s = q[s].clone();
            for (x, y) in q[r].iter_mut().zip(row_s) {
                *x -= y * &c;
            }
        }
    }
    (p, q)
}

pub fn column(m: &Matrix, i: usize) -> Vector {
    m.iter().enumerate().filter(|(_, r)| !r[i].is_zero()).map(|(k, r)| (k, r[i].clone())).collect()
}

/// Structure constants and differential in the new basis `f_i = Σ_k P_ki e_k`.
pub fn transport(
    n: usize,
    p: &Matrix,
    q: &Matrix,
    d: impl Fn(&Vector) -> Vector,
    op: impl Fn(&Vector, &Vector) -> Vector,
) -> (Vec<Vector>, BTreeMap<(usize, usize), Vector>) {
    let diffs = (0..n).map(|i| apply(q, &d(&column(p, i)))).collect();
    let mut ops = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            ops.insert((i, j), apply(q, &op(&column(p, i), &column(p, j))));
        }
    }
    (diffs, ops)
}

pub fn transport_algebra(a: &DgAlgebra, moves: &[(bool, usize, usize, i64)]) -> DgAlgebra {
    let (p, q) = change_of_basis(a.degrees(), moves);
    let (diffs, ops) = transport(a.dim(), &p, &q, |x| a.d(x), |x, y| a.product(x, y));
    let mut b = DgAlgebra::new(a.degrees().to_vec());
    for (i, w) in diffs.into_iter().enumerate() {
        b.set_differential(i, w);
    }
    for ((i, j), w) in ops {
        b.set_product(i, j, w);
    }
    b
}

pub fn transport_lie(g: &DgLieAlgebra, moves: &[(bool, usize, usize, i64)]) -> DgLieAlgebra {
    let (p, q) = change_of_basis(g.degrees(), moves);
    let (diffs, ops) = transport(g.dim(), &p, &q, |x| g.d(x), |x, y| g.bracket(x, y));
    let mut h = DgLieAlgebra::new(g.degrees().to_vec());
    for (i, w) in diffs.into_iter().enumerate() {
        h.set_differential(i, w);
    }
    for ((i, j), w) in ops {
        h.set_bracket(i, j, w);
    }
    h
}

