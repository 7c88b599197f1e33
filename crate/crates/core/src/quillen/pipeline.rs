//! `℧` cut to a point bound as a finite-dimensional dg algebra, and the
//! chain bar → abelianization → free Lie algebra applied to it. Nothing
//! computed here is compared against an expected answer.

use std::collections::BTreeMap;

use serde::Serialize;

use super::dg::{DgAlgebra, Vector};
use super::free::complex_on;
use super::functors::{abelianize, bar_assoc, quillen_cl};
use super::QuillenError;
use crate::bialg::BialgebraSpec;
use crate::endcroc::{all_indices, HomTensor, Index};
use crate::mho::{differential, product, profile_degree, BialgebraPoint, MhoElement};
use crate::qlinalg::{rat, ChainComplex};
use crate::strata::{OrientationTable, Profile};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MhoBasisElement {
    pub profile: Profile,
    pub index: Index,
}

/// Geometric profiles with at most `bound` points; products and the
/// differential are cut to the same bound, which is a quotient by a dg
/// ideal because ambient strata never have fewer points than their factors.
pub fn mho_algebra(
    point: &BialgebraPoint,
    table: &OrientationTable,
    bound: usize,
) -> Result<(DgAlgebra, Vec<MhoBasisElement>), QuillenError> {
    let dim = point.dim();
    let mut basis = Vec::new();
    for q in Profile::geometric_up_to(bound) {
        let legs = HomTensor::zero(q.clone(), dim).legs();
        basis.extend(all_indices(legs, dim).map(|index| MhoBasisElement { profile: q.clone(), index }));
    }
    let position: BTreeMap<&MhoBasisElement, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let element = |b: &MhoBasisElement| -> Result<MhoElement, QuillenError> {
        let t = HomTensor::from_entries(b.profile.clone(), dim, [(b.index.clone(), rat(1, 1))]).map_err(|e| QuillenError::Shape(e.to_string()))?;
        Ok(MhoElement::from_tensor(t))
    };
    let to_vector = |x: &MhoElement| -> Result<Vector, QuillenError> {
        let mut v = Vector::new();
        for (q, t) in x.terms() {
            if q.points() > bound {
                continue;
            }
            for (index, c) in t.coeffs() {
                let key = MhoBasisElement { profile: q.clone(), index: index.clone() };
                let &i = position.get(&key).ok_or_else(|| QuillenError::Shape(format!("term of profile {q} outside the basis")))?;
                v.insert(i, c.clone());
            }
        }
        Ok(v)
    };
    let elements: Vec<MhoElement> = basis.iter().map(element).collect::<Result<_, _>>()?;
    let mut a = DgAlgebra::new(basis.iter().map(|b| profile_degree(&b.profile)).collect());
    for (i, x) in elements.iter().enumerate() {
        a.set_differential(i, to_vector(&differential(point, table, x)?)?);
        for (j, y) in elements.iter().enumerate() {
            if x.terms().keys().chain(y.terms().keys()).all(|q| q.points() <= bound) {
                a.set_product(i, j, to_vector(&product(table, x, y)?)?);
            }
        }
    }
    Ok((a, basis))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    pub name: String,
    /// Basis size per degree.
    pub ranks: BTreeMap<i64, usize>,
    pub betti: BTreeMap<i64, usize>,
    pub complex_ok: bool,
    /// Whether the differential produced terms past the weight bound.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub exploratory: bool,
    pub bound: usize,
    pub max_weight: usize,
    pub stages: Vec<StageReport>,
}

fn stage(name: &str, c: &ChainComplex, truncated: bool) -> Result<StageReport, QuillenError> {
    Ok(StageReport {
        name: name.to_string(),
        ranks: c.ranks.clone(),
        betti: c.homology()?.betti,
        complex_ok: c.check().ok,
        truncated,
    })
}

/// `℧(≤ bound)` at `b`, its bar construction, the abelianization `A₀` of
/// that, and the free Lie algebra on the shifted dual of `A₀` (taken
/// without unit and cut at `max_weight`).
pub fn conjecture_pipeline(
    b: &BialgebraSpec,
    table: &OrientationTable,
    bound: usize,
    max_weight: usize,
) -> Result<PipelineReport, QuillenError> {
    let point = BialgebraPoint::new(b.clone());
    let (a, _) = mho_algebra(&point, table, bound)?;
    let by_degree = {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..a.dim() {
            m.entry(a.degree(i)).or_default().push(i);
        }
        m
    };
    let mho = complex_on(&by_degree, |&i| a.differential_of(i).clone());
    let mut stages = vec![stage("mho", &mho, false)?];

    let bar = bar_assoc(&a, max_weight)?;
    stages.push(stage("bar", &bar.complex(), bar.truncates())?);

    let ab = abelianize(&bar)?;
    stages.push(stage("abelianized", &ab.complex(), ab.truncates())?);

    let (a0, _) = ab.truncated_algebra();
    let lie = quillen_cl(&a0, max_weight)?;
    stages.push(stage("lie", &lie.complex(), lie.truncated())?);

    Ok(PipelineReport { exploratory: true, bound, max_weight, stages })
}
