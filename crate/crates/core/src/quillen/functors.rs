//! The functors themselves. Generators dual to a basis element of degree
//! `k` sit in degree `1 − k`.

use num_traits::One;

use super::dg::{DgAlgebra, DgLieAlgebra};
use super::free::{add_term, Flavor, FreeDgAlgebra, Poly};
use super::lie::FreeDgLie;
use super::QuillenError;
use crate::qlinalg::Rational;

fn shift_sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Generator degrees and images for the dual of `(d, op)` on the shifted
/// space; `half` scales the quadratic part.
fn dual_differential(
    degrees: &[i64],
    linear: impl Fn(usize) -> Vec<(usize, Rational)>,
    quadratic: impl Fn(usize, usize) -> Vec<(usize, Rational)>,
    half: bool,
) -> (Vec<i64>, Vec<Poly>) {
    let n = degrees.len();
    let mut images = vec![Poly::new(); n];
    for a in 0..n {
        for (c, v) in linear(a) {
            add_term(&mut images[c], vec![a], v);
        }
    }
    let scale = if half { Rational::new(1.into(), 2.into()) } else { Rational::one() };
    for a in 0..n {
        for b in 0..n {
            for (c, v) in quadratic(a, b) {
                add_term(&mut images[c], vec![a, b], v * shift_sign(degrees[a]) * &scale);
            }
        }
    }
    (degrees.iter().map(|k| 1 - k).collect(), images)
}

/// The tensor algebra on the shifted dual of `a`, with the differential
/// dual to `d_A` plus the dual of the product.
pub fn bar_assoc(a: &DgAlgebra, max_weight: usize) -> Result<FreeDgAlgebra, QuillenError> {
    let (degrees, images) = dual_differential(
        a.degrees(),
        |i| a.differential_of(i).iter().map(|(c, v)| (*c, v.clone())).collect(),
        |i, j| a.constants().get(&(i, j)).map(|v| v.iter().map(|(c, x)| (*c, x.clone())).collect()).unwrap_or_default(),
        false,
    );
    FreeDgAlgebra::new(Flavor::Associative, degrees, images, max_weight)
}

/// The free Lie algebra on the shifted dual of a graded-commutative `a`.
pub fn quillen_cl(a: &DgAlgebra, max_weight: usize) -> Result<FreeDgLie, QuillenError> {
    if let Some(v) = a.commutativity_violation() {
        return Err(QuillenError::NotCommutative(v));
    }
    FreeDgLie::new(bar_assoc(a, max_weight)?)
}

/// Chevalley–Eilenberg cochains: the free graded-commutative algebra on
/// the shifted dual of `g`.
pub fn quillen_lc(g: &DgLieAlgebra, max_weight: usize) -> Result<FreeDgAlgebra, QuillenError> {
    let (degrees, images) = dual_differential(
        g.degrees(),
        |i| g.differential_of(i).iter().map(|(c, v)| (*c, v.clone())).collect(),
        |i, j| g.constants().get(&(i, j)).map(|v| v.iter().map(|(c, x)| (*c, x.clone())).collect()).unwrap_or_default(),
        true,
    );
    FreeDgAlgebra::new(Flavor::Commutative, degrees, images, max_weight)
}

/// The quotient of a free associative dg algebra by its graded commutators.
pub fn abelianize(f: &FreeDgAlgebra) -> Result<FreeDgAlgebra, QuillenError> {
    if f.flavor() != Flavor::Associative {
        return Err(QuillenError::NotFree("expected a tensor algebra".into()));
    }
    let images = (0..f.generators()).map(|i| f.differential_of_generator(i).clone()).collect();
    FreeDgAlgebra::new(Flavor::Commutative, f.degrees().to_vec(), images, f.max_weight())
}
