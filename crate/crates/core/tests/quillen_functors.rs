mod common;

use std::collections::BTreeMap;

use common::dg::*;
use croc::qlinalg::{rat, LinearSpan, Rational};
use croc::quillen::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn moves() -> impl Strategy<Value = Vec<(bool, usize, usize, i64)>> {
    proptest::collection::vec((any::<bool>(), 0usize..3, 0usize..3, -2i64..=2), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bar_squares_to_zero_on_valid_algebras(m in moves(), which in 0usize..4) {
        let base = [interval_cochains(), upper_triangular(), truncated_polynomial(), graded_pair()][which].clone();
        let a = transport_algebra(&base, &m);
        prop_assert_eq!(a.check(), Ok(()));
        let bar = bar_assoc(&a, 4).unwrap();
        prop_assert!(bar.d_squared_witness().is_none());
        prop_assert!(bar.complex().check().ok);
    }

    #[test]
    fn cl_squares_to_zero_on_commutative_algebras(m in moves(), which in 0usize..2) {
        let base = [truncated_polynomial(), graded_pair()][which].clone();
        let a = transport_algebra(&base, &m);
        let lie = quillen_cl(&a, 4).unwrap();
        prop_assert!(lie.d_squared_witness().is_none());
        prop_assert!(lie.complex().check().ok);
    }

    #[test]
    fn lc_squares_to_zero_on_lie_algebras(m in moves(), which in 0usize..3) {
        let base = [sl2(), two_dim_nonabelian(), interval_cochains().commutator_lie()][which].clone();
        let g = transport_lie(&base, &m);
        prop_assert_eq!(g.check(), Ok(()));
        let ce = quillen_lc(&g, 4).unwrap();
        prop_assert!(ce.d_squared_witness().is_none());
        prop_assert!(ce.complex().check().ok);
    }

    /// On degree-0 algebras without differential, `d² = 0` on the bar
    /// construction exactly when the product is associative.
    #[test]
    fn bar_detects_associativity(c in proptest::collection::vec(-1i64..=1, 8)) {
        let mut a = DgAlgebra::new(vec![0, 0]);
        for i in 0..2 {
            for j in 0..2 {
                a.set_product(i, j, v(&[(0, c[4 * i + 2 * j]), (1, c[4 * i + 2 * j + 1])]));
            }
        }
        let bar = bar_assoc(&a, 3).unwrap();
        prop_assert_eq!(bar.d_squared_witness().is_none(), a.check().is_ok());
    }

    /// The same on commutative products, seen through the free Lie algebra.
    #[test]
    fn cl_detects_associativity(c in proptest::collection::vec(-1i64..=1, 6)) {
        let mut a = DgAlgebra::new(vec![0, 0]);
        a.set_product(0, 0, v(&[(0, c[0]), (1, c[1])]));
        a.set_product(0, 1, v(&[(0, c[2]), (1, c[3])]));
        a.set_product(1, 0, v(&[(0, c[2]), (1, c[3])]));
        a.set_product(1, 1, v(&[(0, c[4]), (1, c[5])]));
        let lie = quillen_cl(&a, 3).unwrap();
        prop_assert_eq!(lie.d_squared_witness().is_none(), a.check().is_ok());
    }
}

#[test]
fn bar_of_the_idempotent_line() {
    let mut a = DgAlgebra::new(vec![0]);
    a.set_product(0, 0, v(&[(0, 1)]));
    let bar = bar_assoc(&a, 4).unwrap();
    assert_eq!(bar.degrees(), &[1]);
    assert_eq!(bar.differential_of_generator(0), &Poly::from([(vec![0, 0], rat(1, 1))]));
    assert!(bar.d_squared_witness().is_none());
}

#[test]
fn zero_product_gives_zero_differential() {
    let a = DgAlgebra::new(vec![0, 0, 1]);
    let bar = bar_assoc(&a, 3).unwrap();
    let c = bar.complex();
    // homology is the whole free algebra: 1 + 3 + 9 + 27 words
    let total: usize = c.homology().unwrap().betti.values().sum();
    assert_eq!(total, 40);
}

#[test]
fn broken_leibniz_is_seen_by_the_bar_differential() {
    let mut a = interval_cochains();
    a.set_differential(1, v(&[(2, 2)]));
    assert_eq!(a.check().unwrap_err().law, "leibniz");
    assert!(bar_assoc(&a, 3).unwrap().d_squared_witness().is_some());
}

#[test]
fn non_commutative_input_is_rejected() {
    assert!(matches!(quillen_cl(&upper_triangular(), 3), Err(QuillenError::NotCommutative(_))));
}

#[test]
fn square_zero_line_gives_abelian_lie_algebra() {
    let a = DgAlgebra::new(vec![0]);
    let lie = quillen_cl(&a, 3).unwrap();
    assert!(lie.complex().boundaries.values().all(|m| m.nnz() == 0));
    // one odd generator ξ and its square [ξ, ξ]
    assert_eq!(lie.dims_by_weight(), BTreeMap::from([(1, 1), (2, 1)]));
}

fn mobius(n: usize) -> i64 {
    let factors: Vec<usize> = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0)).collect();
    if factors.iter().any(|p| n % (p * p) == 0) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn necklace(n: usize, k: usize) -> usize {
    let s: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
    (s / k as i64) as usize
}

#[test]
fn free_lie_dimensions_follow_the_witt_formula() {
    for n in 1..=3 {
        let basis = free_lie_basis(&vec![0; n], 5);
        for k in 1..=5 {
            let count = basis.iter().filter(|b| b.weight() == k).count();
            assert_eq!(count, necklace(n, k), "{n} generators, weight {k}");
            assert_eq!(count, witt_dimension(n, k));
        }
    }
    let dims: Vec<usize> = (1..=5).map(|k| necklace(2, k)).collect();
    assert_eq!(dims, vec![2, 1, 2, 3, 6]);
}

#[test]
fn free_lie_basis_is_independent_and_closed_under_brackets() {
    for degrees in [vec![0, 0], vec![1, 1], vec![0, 1]] {
        let basis = free_lie_basis(&degrees, 4);
        let mut span = LinearSpan::new();
        for b in &basis {
            assert!(span.insert(&b.expansion).is_some(), "{degrees:?}: {:?} is dependent", b.word);
        }
        let bar = FreeDgAlgebra::new(Flavor::Associative, degrees.clone(), vec![Poly::new(); degrees.len()], 4).unwrap();
        let lie = FreeDgLie::new(bar).unwrap();
        for x in &basis {
            for y in &basis {
                if x.weight() + y.weight() <= 4 {
                    let br = graded_commutator(&x.expansion, x.degree, &y.expansion, y.degree);
                    assert!(lie.coordinates(&br).is_ok());
                }
            }
        }
    }
}

#[test]
fn chevalley_eilenberg_of_small_lie_algebras() {
    let betti = |g: &DgLieAlgebra| quillen_lc(g, 3).unwrap().complex().homology().unwrap().betti;
    assert_eq!(betti(&DgLieAlgebra::abelian(2)), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    assert_eq!(betti(&two_dim_nonabelian()), BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(betti(&sl2()), BTreeMap::from([(0, 1), (3, 1)]));
}

#[test]
fn broken_jacobi_is_seen_by_the_chevalley_eilenberg_differential() {
    let mut g = DgLieAlgebra::new(vec![0, 0, 0]);
    for (i, j, w) in [(0, 1, v(&[(2, 1)])), (1, 2, v(&[(0, 1)])), (2, 0, v(&[(0, 1)]))] {
        g.set_bracket(i, j, w.clone());
        g.set_bracket(j, i, w.into_iter().map(|(k, c)| (k, -c)).collect());
    }
    assert_eq!(g.check().unwrap_err().law, "jacobi");
    assert!(quillen_lc(&g, 3).unwrap().d_squared_witness().is_some());
}

#[test]
fn abelianization_of_two_even_generators() {
    let f = FreeDgAlgebra::new(Flavor::Associative, vec![0, 0], vec![Poly::new(); 2], 2).unwrap();
    let ab = abelianize(&f).unwrap();
    assert_eq!(f.words()[2].len(), 4);
    assert_eq!(ab.words()[2].len(), 3);
    assert!(abelianize(&ab).is_err());
    let one = FreeDgAlgebra::new(Flavor::Associative, vec![0], vec![Poly::new()], 3).unwrap();
    let ab = abelianize(&one).unwrap();
    assert_eq!(ab.words(), one.words());
}

#[test]
fn abelianized_idempotent_bar_has_vanishing_differential() {
    // dξ = ξξ, and the square of an odd generator is a commutator
    let mut a = DgAlgebra::new(vec![0]);
    a.set_product(0, 0, v(&[(0, 1)]));
    let ab = abelianize(&bar_assoc(&a, 3).unwrap()).unwrap();
    assert!(ab.differential_of_generator(0).is_empty());
    assert!(ab.d_squared_witness().is_none());
    assert_eq!(ab.words().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
}

#[test]
fn abelianized_bar_matches_the_lie_side() {
    for a in [truncated_polynomial(), graded_pair()] {
        let bar = bar_assoc(&a, 3).unwrap();
        let lie = quillen_cl(&a, 3).unwrap();
        // the enveloping algebra of the free Lie algebra is the bar construction
        assert_eq!(lie.ambient(), &bar);
        let ab = abelianize(&bar).unwrap();
        for g in 0..bar.generators() {
            let mut sym = Poly::new();
            for (w, c) in bar.differential_of_generator(g) {
                if let Some((neg, n)) = ab.normalize(w.clone()) {
                    let e = sym.entry(n).or_insert_with(Rational::zero);
                    *e += if neg { -c.clone() } else { c.clone() };
                }
            }
            sym.retain(|_, c| !c.is_zero());
            assert_eq!(&sym, ab.differential_of_generator(g));
        }
    }
}

/// `φ(ξ^B_c) = Σ_a f(e_a)_c ξ^A_a`, extended multiplicatively.
fn dual_map(f: &[Vector], w: &[usize]) -> Poly {
    let mut out = Poly::from([(Vec::new(), Rational::one())]);
    for &c in w {
        let mut next = Poly::new();
        for (prefix, x) in &out {
            for (a, fa) in f.iter().enumerate() {
                if let Some(y) = fa.get(&c) {
                    let mut word = prefix.clone();
                    word.push(a);
                    *next.entry(word).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        out = next;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dual_map_poly(f: &[Vector], p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (w, c) in p {
        for (u, x) in dual_map(f, w) {
            *out.entry(u).or_insert_with(Rational::zero) += c * x;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn algebra_maps_induce_chain_maps_of_bar_constructions() {
    // evaluation at the first vertex of the interval
    let a = interval_cochains();
    let mut b = DgAlgebra::new(vec![0]);
    b.set_product(0, 0, v(&[(0, 1)]));
    let f = vec![v(&[(0, 1)]), Vector::new(), Vector::new()];
    let (bar_a, bar_b) = (bar_assoc(&a, 3).unwrap(), bar_assoc(&b, 3).unwrap());
    for layer in bar_b.words() {
        for w in layer {
            let (dw, _) = bar_b.apply(&Poly::from([(w.clone(), Rational::one())]));
            let left = dual_map_poly(&f, &dw);
            let (right, _) = bar_a.apply(&dual_map(&f, &w));
            assert_eq!(left, right, "{w:?}");
        }
    }
    // x ↦ x from x ℚ[x]/(x³) onto x ℚ[x]/(x²)
    let c = DgAlgebra::new(vec![0]);
    let g = vec![v(&[(0, 1)]), Vector::new()];
    let (bar_p, bar_c) = (bar_assoc(&truncated_polynomial(), 3).unwrap(), bar_assoc(&c, 3).unwrap());
    for layer in bar_c.words() {
        for w in layer {
            let (dw, _) = bar_c.apply(&Poly::from([(w.clone(), Rational::one())]));
            let (right, _) = bar_p.apply(&dual_map(&g, &w));
            assert_eq!(dual_map_poly(&g, &dw), right);
        }
    }
}
