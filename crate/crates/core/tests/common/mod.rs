//! Independent reference implementations used as oracles by the
//! integration tests. Nothing here calls into the composition code of the
//! library; maps are evaluated on basis tuples directly.

#![allow(dead_code)]

pub mod dg;

use std::collections::BTreeMap;

use croc::endcroc::HomTensor;
use croc::qlinalg::{rat, Rational};
use croc::strata::Profile;
use num_traits::{One, Zero};
use rand::Rng;

pub type Vector = BTreeMap<Vec<u8>, Rational>;

pub fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

pub fn basis_tuples(len: usize, dim: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim as u8).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// A single-cell map read off as a function on basis tuples.
#[derive(Clone, Debug)]
pub struct Cell {
    pub m: usize,
    pub n: usize,
    pub dim: usize,
    pub table: BTreeMap<Vec<u8>, Vector>,
}

impl Cell {
    pub fn from_tensor(t: &HomTensor) -> Cell {
        let (m, n) = (t.profile().lower[0], t.profile().upper[0]);
        assert_eq!(t.profile().cells(), 1);
        let mut table: BTreeMap<Vec<u8>, Vector> = BTreeMap::new();
        for input in basis_tuples(m, t.dim()) {
            let mut v = Vector::new();
            for out in basis_tuples(n, t.dim()) {
                let mut idx = input.clone();
                idx.extend_from_slice(&out);
                let c = t.get(&idx);
                if !c.is_zero() {
                    v.insert(out, c);
                }
            }
            table.insert(input, v);
        }
        Cell { m, n, dim: t.dim(), table }
    }

    pub fn to_tensor(&self) -> HomTensor {
        let entries = self.table.iter().flat_map(|(i, v)| {
            v.iter().map(move |(o, c)| {
                let mut idx = i.clone();
                idx.extend_from_slice(o);
                (idx, c.clone())
            })
        });
        HomTensor::from_entries(Profile::single(self.m, self.n), self.dim, entries).unwrap()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (basis, c) in v {
            for (o, d) in &self.table[basis] {
                *out.entry(o.clone()).or_insert_with(Rational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn random<R: Rng>(m: usize, n: usize, dim: usize, rng: &mut R) -> Cell {
        let mut table = BTreeMap::new();
        for input in basis_tuples(m, dim) {
            let mut v = Vector::new();
            for out in basis_tuples(n, dim) {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(-2i64..=2);
                    if c != 0 {
                        v.insert(out, rat(c, 1));
                    }
                }
            }
            table.insert(input, v);
        }
        Cell { m, n, dim, table }
    }

    pub fn identity(dim: usize) -> Cell {
        let table = (0..dim as u8).map(|a| (vec![a], Vector::from([(vec![a], Rational::one())]))).collect();
        Cell { m: 1, n: 1, dim, table }
    }
}

pub fn tensor_vectors(parts: &[Vector]) -> Vector {
    let mut acc = Vector::from([(Vec::new(), Rational::one())]);
    for part in parts {
        let mut next = Vector::new();
        for (a, x) in &acc {
            for (b, y) in part {
                let mut k = a.clone();
                k.extend_from_slice(b);
                *next.entry(k).or_insert_with(Rational::zero) += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// Θᵢ applied blockwise, the `ℓ₁ × ℓ₂` grid transposed, then Ψⱼ applied to
/// the rows of the transposed grid.
pub fn grid_compose(theta: &[Cell], psi: &[Cell]) -> Cell {
    let (l1, l2) = (theta.len(), psi.len());
    let dim = theta[0].dim;
    let m: usize = theta.iter().map(|t| t.m).sum();
    let n: usize = psi.iter().map(|p| p.n).sum();
    let mut table = BTreeMap::new();
    for input in basis_tuples(m, dim) {
        let mut start = 0;
        let mut firsts = Vec::new();
        for t in theta {
            let block = input[start..start + t.m].to_vec();
            start += t.m;
            firsts.push(t.table[&block].clone());
        }
        let grid = tensor_vectors(&firsts);
        let mut result = Vector::new();
        for (g, c) in &grid {
            // g is row-major in (i, j); read column j for Ψⱼ
            let mut parts = Vec::new();
            for (j, psi_j) in psi.iter().enumerate() {
                let column: Vec<u8> = (0..l1).map(|i| g[i * l2 + j]).collect();
                parts.push(psi_j.table[&column].clone());
            }
            for (o, d) in tensor_vectors(&parts) {
                *result.entry(o).or_insert_with(Rational::zero) += c * &d;
            }
        }
        result.retain(|_, c| !c.is_zero());
        table.insert(input, result);
    }
    Cell { m, n, dim, table }
}

/// A sum of decomposable elements `Σ c · (⊗ cells)`.
#[derive(Clone, Debug)]
pub struct Decomposable {
    pub profile: Profile,
    pub terms: Vec<(Rational, Vec<Cell>)>,
}

impl Decomposable {
    pub fn random<R: Rng>(profile: &Profile, dim: usize, summands: usize, rng: &mut R) -> Self {
        let terms = (0..summands)
            .map(|_| {
                let cells = profile
                    .lower
                    .iter()
                    .flat_map(|&m| profile.upper.iter().map(move |&n| (m, n)))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .map(|(m, n)| Cell::random(m, n, dim, rng))
                    .collect();
                (rat(rng.gen_range(1i64..=3), 1), cells)
            })
            .collect();
        Decomposable { profile: profile.clone(), terms }
    }

    pub fn to_tensor(&self, dim: usize) -> HomTensor {
        let mut out = HomTensor::zero(self.profile.clone(), dim);
        for (c, cells) in &self.terms {
            let tensors: Vec<HomTensor> = cells.iter().map(Cell::to_tensor).collect();
            let t = HomTensor::from_cells(self.profile.clone(), &tensors).unwrap().scale(c);
            out = out.add(&t).unwrap();
        }
        out
    }
}

fn group_ranges(groups: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut s = 0;
    groups
        .iter()
        .map(|&g| {
            let r = s..s + g;
            s += g;
            r
        })
        .collect()
}

/// Blockwise composition evaluated summand by summand with [`grid_compose`].
pub fn blockwise(x: &Decomposable, y: &Decomposable) -> Decomposable {
    let (px, py) = (&x.profile, &y.profile);
    let a = py.lower.len();
    let b = px.upper.len();
    let lower_groups = group_ranges(&py.lower);
    let upper_groups = group_ranges(&px.upper);
    let lower: Vec<usize> = lower_groups.iter().map(|r| px.lower[r.clone()].iter().sum()).collect();
    let upper: Vec<usize> = upper_groups.iter().map(|r| py.upper[r.clone()].iter().sum()).collect();
    let profile = Profile::new(lower, upper).unwrap();
    let mut terms = Vec::new();
    for (cx, xs) in &x.terms {
        for (cy, ys) in &y.terms {
            let mut cells = Vec::new();
            for k in 0..a {
                for l in 0..b {
                    let theta: Vec<Cell> =
                        lower_groups[k].clone().map(|i| xs[i * px.upper.len() + l].clone()).collect();
                    let psi: Vec<Cell> =
                        upper_groups[l].clone().map(|j| ys[k * py.upper.len() + j].clone()).collect();
                    cells.push(grid_compose(&theta, &psi));
                }
            }
            terms.push((cx * cy, cells));
        }
    }
    Decomposable { profile, terms }
}

/// Whether `general_compose(x, y)` is defined for these profiles.
pub fn composable(px: &Profile, py: &Profile) -> bool {
    px.lower.len() == py.lower.iter().sum::<usize>() && py.upper.len() == px.upper.iter().sum::<usize>()
}

/// Every profile (geometric or not) with at most `max_points` points.
pub fn all_profiles(max_points: usize) -> Vec<Profile> {
    (2..=max_points).flat_map(Profile::all_with_points).collect()
}

/// All triples `(x, y, z)` with both `x, y` and `y, z` composable and each
/// profile of at most `max_points` points.
pub fn composable_triples(max_points: usize) -> Vec<(Profile, Profile, Profile)> {
    let ps = all_profiles(max_points);
    let mut out = Vec::new();
    for x in &ps {
        for y in ps.iter().filter(|y| composable(x, y)) {
            for z in ps.iter().filter(|z| composable(y, z)) {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}
