//! Free graded Lie algebras inside the free associative algebra.
//!
//! The basis consists of the standard bracketings of Lyndon words together
//! with the squares `[P, P]` of odd ones. Each basis element expands to the
//! tensor algebra with its defining word as the lexicographically smallest
//! word, so coordinates are found by peeling off leading words.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::free::{add_term, FreeDgAlgebra, Flavor, Poly};
use super::QuillenError;
use crate::qlinalg::{ChainComplex, Rational};

/// Lyndon words over `0..n` of length at most `max_len`, by length then
/// lexicographically.
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    // Duval's successor algorithm
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(x) => *x += 1,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..].iter().chain(&w[..i]).cmp(w.iter()) == std::cmp::Ordering::Greater)
}

/// `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/k) Σ_{d | k} μ(d) n^{k/d}`, the dimension of weight `k` in the free
/// Lie algebra on `n` even generators.
pub fn witt_dimension(n: usize, k: usize) -> usize {
    let total: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
    (total / k as i64) as usize
}

/// One basis element of the free Lie algebra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LieBasisElement {
    /// The Lyndon word, or the word whose square this element is.
    pub word: Vec<usize>,
    pub square: bool,
    pub degree: i64,
    #[serde(skip)]
    pub expansion: Poly,
}

impl LieBasisElement {
    pub fn weight(&self) -> usize {
        self.word.len() * if self.square { 2 } else { 1 }
    }

    pub fn leading_word(&self) -> Vec<usize> {
        if self.square {
            [self.word.clone(), self.word.clone()].concat()
        } else {
            self.word.clone()
        }
    }
}

/// The graded commutator `xy − (−1)^{|x||y|} yx` of homogeneous elements.
pub fn graded_commutator(x: &Poly, dx: i64, y: &Poly, dy: i64) -> Poly {
    let mut out = Poly::new();
    let swap = if (dx * dy).rem_euclid(2) == 0 { -Rational::one() } else { Rational::one() };
    for (a, c) in x {
        for (b, e) in y {
            let v = c * e;
            add_term(&mut out, [a.as_slice(), b].concat(), v.clone());
            add_term(&mut out, [b.as_slice(), a].concat(), &v * &swap);
        }
    }
    out
}

fn bracketing(degrees: &[i64], w: &[usize], memo: &mut HashMap<Vec<usize>, Poly>) -> Poly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        None => Poly::from([(w.to_vec(), Rational::one())]),
        Some((u, v)) => {
            let (pu, pv) = (bracketing(degrees, u, memo), bracketing(degrees, v, memo));
            let du = u.iter().map(|&g| degrees[g]).sum();
            let dv = v.iter().map(|&g| degrees[g]).sum();
            graded_commutator(&pu, du, &pv, dv)
        }
    };
    memo.insert(w.to_vec(), p.clone());
    p
}

/// The Lyndon-type basis of the free graded Lie algebra through `max_weight`.
pub fn free_lie_basis(degrees: &[i64], max_weight: usize) -> Vec<LieBasisElement> {
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for w in lyndon_words(degrees.len(), max_weight) {
        let degree: i64 = w.iter().map(|&g| degrees[g]).sum();
        let expansion = bracketing(degrees, &w, &mut memo);
        if degree.rem_euclid(2) == 1 && 2 * w.len() <= max_weight {
            let sq = graded_commutator(&expansion, degree, &expansion, degree);
            out.push(LieBasisElement { word: w.clone(), square: true, degree: 2 * degree, expansion: sq });
        }
        out.push(LieBasisElement { word: w, square: false, degree, expansion });
    }
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then(a.leading_word().cmp(&b.leading_word())));
    out
}

/// A free dg Lie algebra: the Lie subalgebra generated by the generators of
/// a free associative dg algebra whose differential preserves it.
#[derive(Debug, Clone)]
pub struct FreeDgLie {
    ambient: FreeDgAlgebra,
    basis: Vec<LieBasisElement>,
    lead: HashMap<Vec<usize>, usize>,
    differential: Vec<BTreeMap<usize, Rational>>,
    truncated: bool,
}

impl FreeDgLie {
    pub fn new(ambient: FreeDgAlgebra) -> Result<Self, QuillenError> {
        if ambient.flavor() != Flavor::Associative {
            return Err(QuillenError::NotFree("a free Lie algebra needs an associative ambient".into()));
        }
        let basis = free_lie_basis(ambient.degrees(), ambient.max_weight());
        let lead = basis.iter().enumerate().map(|(i, b)| (b.leading_word(), i)).collect();
        let mut lie = FreeDgLie { ambient, basis, lead, differential: Vec::new(), truncated: false };
        let mut differential = Vec::with_capacity(lie.basis.len());
        for b in &lie.basis {
            let (image, dropped) = lie.ambient.apply(&b.expansion);
            lie.truncated |= dropped;
            differential.push(lie.coordinates(&image)?);
        }
        lie.differential = differential;
        Ok(lie)
    }

    pub fn ambient(&self) -> &FreeDgAlgebra {
        &self.ambient
    }

    pub fn basis(&self) -> &[LieBasisElement] {
        &self.basis
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Coordinates of a Lie polynomial in the basis.
    pub fn coordinates(&self, p: &Poly) -> Result<BTreeMap<usize, Rational>, QuillenError> {
        let mut rest = p.clone();
        let mut out = BTreeMap::new();
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let &i = self.lead.get(&w).ok_or_else(|| QuillenError::NotLie(w.clone()))?;
            let e = &self.basis[i].expansion;
            let factor = &c / &e[&w];
            for (v, x) in e {
                add_term(&mut rest, v.clone(), -(&factor * x));
            }
            let slot = out.entry(i).or_insert_with(Rational::zero);
            *slot += factor;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn dims_by_weight(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.weight()).or_insert(0) += 1;
        }
        out
    }

    pub fn complex(&self) -> ChainComplex {
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            by_degree.entry(b.degree).or_default().push(i);
        }
        super::free::complex_on(&by_degree, |&i| self.differential[i].clone())
    }

    /// A basis element with nonzero `d²`.
    pub fn d_squared_witness(&self) -> Option<usize> {
        (0..self.basis.len()).find(|&i| {
            let mut sq: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, c) in &self.differential[i] {
                for (k, e) in &self.differential[*j] {
                    *sq.entry(*k).or_insert_with(Rational::zero) += c * e;
                }
            }
            sq.values().any(|c| !c.is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_words_of_two_letters() {
        let w = lyndon_words(2, 4);
        assert_eq!(
            w,
            vec![vec![0], vec![1], vec![0, 1], vec![0, 0, 1], vec![0, 1, 1], vec![0, 0, 0, 1], vec![0, 0, 1, 1], vec![0, 1, 1, 1]]
        );
        assert!(w.iter().all(|x| is_lyndon(x)));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert_eq!(standard_factorization(&[0, 0, 1, 1]), Some((&[0][..], &[0, 1, 1][..])));
    }

    #[test]
    fn witt_formula() {
        assert_eq!((1..=5).map(|k| witt_dimension(2, k)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6]);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn leading_words_are_smallest() {
        for degrees in [vec![0, 0], vec![1, 0], vec![1, 1, 2]] {
            for b in free_lie_basis(&degrees, 4) {
                let (first, _) = b.expansion.iter().next().unwrap();
                assert_eq!(*first, b.leading_word());
            }
        }
    }

    #[test]
    fn odd_generator_has_a_square() {
        let b = free_lie_basis(&[1], 3);
        assert_eq!(b.len(), 2);
        assert!(b[1].square);
        assert_eq!(b[1].expansion[&vec![0, 0]], Rational::from_integer(2.into()));
    }
}
