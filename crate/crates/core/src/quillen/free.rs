//! Free associative and free graded-commutative algebras on finitely many
//! graded generators, with a degree-one derivation fixed by its values on
//! the generators, truncated by word weight.
//!
//! The derivations used here never lower weight, so the words of weight
//! greater than the bound span a dg ideal and the truncation is the
//! quotient by it: everything computed below weight `max_weight` is exact.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::dg::{DgAlgebra, Vector};
use super::QuillenError;
use crate::qlinalg::{ChainComplex, Direction, Rational, SparseMatrix};

/// Words in the generators with rational coefficients.
pub type Poly = BTreeMap<Vec<usize>, Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Associative,
    Commutative,
}

pub(crate) fn add_term(p: &mut Poly, w: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(w.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&w);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeDgAlgebra {
    flavor: Flavor,
    degrees: Vec<i64>,
    differential: Vec<Poly>,
    max_weight: usize,
}

impl FreeDgAlgebra {
    /// `differential[i]` is the image of generator `i`; it must be
    /// homogeneous of degree `deg(i) + 1` and of weight at least one.
    pub fn new(flavor: Flavor, degrees: Vec<i64>, differential: Vec<Poly>, max_weight: usize) -> Result<Self, QuillenError> {
        if differential.len() != degrees.len() {
            return Err(QuillenError::Shape(format!("{} generators, {} images", degrees.len(), differential.len())));
        }
        let mut out = FreeDgAlgebra { flavor, degrees, differential: Vec::new(), max_weight };
        let mut images = Vec::with_capacity(differential.len());
        for (i, p) in differential.into_iter().enumerate() {
            let mut q = Poly::new();
            for (w, c) in p {
                if w.is_empty() || w.iter().any(|&g| g >= out.degrees.len()) {
                    return Err(QuillenError::Shape(format!("bad word {w:?} in the image of generator {i}")));
                }
                if out.word_degree(&w) != out.degrees[i] + 1 {
                    return Err(QuillenError::Degree(format!("word {w:?} in the image of generator {i}")));
                }
                if let Some((neg, n)) = out.normalize(w) {
                    add_term(&mut q, n, if neg { -c } else { c });
                }
            }
            images.push(q);
        }
        out.differential = images;
        Ok(out)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn differential_of_generator(&self, i: usize) -> &Poly {
        &self.differential[i]
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&g| self.degrees[g]).sum()
    }

    fn odd(&self, g: usize) -> bool {
        self.degrees[g].rem_euclid(2) == 1
    }

    /// The standard form of a word and whether it picks up a sign; `None`
    /// when it vanishes (a repeated odd generator in the commutative case).
    pub fn normalize(&self, mut w: Vec<usize>) -> Option<(bool, Vec<usize>)> {
        if self.flavor == Flavor::Associative {
            return Some((false, w));
        }
        let mut neg = false;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.odd(w[j - 1]) && self.odd(w[j]) {
                    neg = !neg;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        if w.windows(2).any(|p| p[0] == p[1] && self.odd(p[0])) {
            return None;
        }
        Some((neg, w))
    }

    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (x, c) in a {
            for (y, e) in b {
                let mut w = x.clone();
                w.extend_from_slice(y);
                if let Some((neg, n)) = self.normalize(w) {
                    let v = c * e;
                    add_term(&mut out, n, if neg { -v } else { v });
                }
            }
        }
        out
    }

    /// The derivation applied to `p`, dropping words past the weight bound;
    /// the flag reports whether anything was dropped.
    pub fn apply(&self, p: &Poly) -> (Poly, bool) {
        let mut out = Poly::new();
        let mut dropped = false;
        for (w, c) in p {
            let mut prefix_degree = 0;
            for (i, &g) in w.iter().enumerate() {
                let sign = if prefix_degree % 2 == 0 { c.clone() } else { -c.clone() };
                prefix_degree += self.degrees[g];
                for (image, e) in &self.differential[g] {
                    if w.len() - 1 + image.len() > self.max_weight {
                        dropped = true;
                        continue;
                    }
                    let mut word = w[..i].to_vec();
                    word.extend_from_slice(image);
                    word.extend_from_slice(&w[i + 1..]);
                    if let Some((neg, n)) = self.normalize(word) {
                        let v = &sign * e;
                        add_term(&mut out, n, if neg { -v } else { v });
                    }
                }
            }
        }
        (out, dropped)
    }

    /// Standard words of each weight `0..=max_weight`.
    pub fn words(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.generators();
        let mut by_weight = vec![vec![Vec::new()]];
        for k in 1..=self.max_weight {
            let mut next = Vec::new();
            for w in &by_weight[k - 1] {
                let start = match self.flavor {
                    Flavor::Associative => 0,
                    Flavor::Commutative => w.last().copied().unwrap_or(0),
                };
                for g in start..n {
                    let mut v = w.clone();
                    v.push(g);
                    if self.normalize(v.clone()).is_some_and(|(_, n)| n == v) {
                        next.push(v);
                    }
                }
            }
            by_weight.push(next);
        }
        by_weight
    }

    /// Words of weight `min_weight..=max_weight` grouped by degree.
    pub fn basis(&self, min_weight: usize) -> BTreeMap<i64, Vec<Vec<usize>>> {
        let mut out: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
        for layer in self.words().into_iter().skip(min_weight) {
            for w in layer {
                out.entry(self.word_degree(&w)).or_default().push(w);
            }
        }
        out
    }

    /// The truncated algebra as a cochain complex, unit included.
    pub fn complex(&self) -> ChainComplex {
        complex_on(&self.basis(0), |w| self.apply(&Poly::from([(w.to_vec(), Rational::from_integer(1.into()))])).0)
    }

    /// Whether the first application of the derivation to some basis word
    /// already leaves the weight window.
    pub fn truncates(&self) -> bool {
        self.words().last().is_some_and(|top| {
            top.iter().any(|w| self.apply(&Poly::from([(w.clone(), Rational::from_integer(1.into()))])).1)
        })
    }

    /// A basis word whose image under `d²` is nonzero, with that image.
    pub fn d_squared_witness(&self) -> Option<(Vec<usize>, Poly)> {
        for layer in self.words() {
            for w in layer {
                let (dw, _) = self.apply(&Poly::from([(w.clone(), Rational::from_integer(1.into()))]));
                let (ddw, _) = self.apply(&dw);
                if !ddw.is_empty() {
                    return Some((w, ddw));
                }
            }
        }
        None
    }

    /// The quotient by words of weight above the bound, without unit, as
    /// a finite-dimensional dg algebra. Basis labels are returned alongside.
    pub fn truncated_algebra(&self) -> (DgAlgebra, Vec<Vec<usize>>) {
        let words: Vec<Vec<usize>> = self.words().into_iter().skip(1).flatten().collect();
        let index: BTreeMap<&[usize], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let to_vector = |p: &Poly| -> Vector {
            p.iter().filter_map(|(w, c)| index.get(w.as_slice()).map(|&i| (i, c.clone()))).collect()
        };
        let mut a = DgAlgebra::new(words.iter().map(|w| self.word_degree(w)).collect());
        let one = || Rational::from_integer(1.into());
        for (i, w) in words.iter().enumerate() {
            a.set_differential(i, to_vector(&self.apply(&Poly::from([(w.clone(), one())])).0));
            for (j, v) in words.iter().enumerate() {
                if w.len() + v.len() <= self.max_weight {
                    let p = self.multiply(&Poly::from([(w.clone(), one())]), &Poly::from([(v.clone(), one())]));
                    a.set_product(i, j, to_vector(&p));
                }
            }
        }
        (a, words)
    }
}

/// A cochain complex on labeled bases, the differential given per label.
pub(crate) fn complex_on<K: Ord + Clone>(basis: &BTreeMap<i64, Vec<K>>, d: impl Fn(&K) -> BTreeMap<K, Rational>) -> ChainComplex {
    let index: BTreeMap<&K, usize> = basis.values().flat_map(|v| v.iter().enumerate().map(|(i, k)| (k, i))).collect();
    let ranks: BTreeMap<i64, usize> = basis.iter().map(|(d, v)| (*d, v.len())).collect();
    let mut boundaries = BTreeMap::new();
    for (&deg, elems) in basis {
        let rows = ranks.get(&(deg + 1)).copied().unwrap_or(0);
        let mut m = SparseMatrix::zeros(rows, elems.len());
        for (col, k) in elems.iter().enumerate() {
            for (target, c) in d(k) {
                let row = index[&target];
                m.add_to(row, col, c).expect("in range");
            }
        }
        if rows > 0 {
            boundaries.insert(deg, m);
        }
    }
    ChainComplex::new(Direction::Cohomological, ranks, boundaries).expect("shapes agree")
}
