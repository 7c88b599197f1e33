//! The graded algebra `℧ = ⊕_P Hom(P)[−deg P]` with the product read off
//! the codimension-one strata, and its differential at a bialgebra.
//!
//! A term of profile `P` has degree `Σmᵢ + Σnⱼ − ℓ₁ − ℓ₂`, the number of
//! gaps of `P`. For `x` of profile `X` and `y` of profile `Y`,
//!
//! ```text
//! x · y = (−1)^{dim X} · ε(X ; Y) · general_compose(x, y)
//! ```
//!
//! where `ε(X ; Y)` is the orientation sign of the stratum whose scale-1
//! snapshot is `X` and whose scale-0 snapshot is `Y`; the product is zero
//! when no such stratum exists. The differential at a bialgebra point is
//! the graded commutator with `π`, the sum of the canonical operations on
//! all profiles of dimension zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bialg::BialgebraSpec;
use crate::endcroc::{general_compose, HomTensor, Index};
use crate::qlinalg::Rational;
use crate::strata::{find_product_stratum, OrientationTable, Profile, StrataError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MhoError {
    #[error("element is not homogeneous: degrees {0} and {1}")]
    NonHomogeneous(i64, i64),
    #[error("the zero element has no degree")]
    Zero,
    #[error("term of profile {0} carries a tensor of profile {1}")]
    ProfileMismatch(String, String),
    #[error("dimension {0} does not match {1}")]
    DimMismatch(usize, usize),
    #[error(transparent)]
    Strata(#[from] StrataError),
}

/// `Σmᵢ + Σnⱼ − ℓ₁ − ℓ₂`.
pub fn profile_degree(p: &Profile) -> i64 {
    p.gap_count() as i64
}

/// A finite sum of Hom-tensors, at most one per profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MhoElement {
    dim: usize,
    terms: BTreeMap<Profile, HomTensor>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    profile: Profile,
    tensor: HomTensor,
}

impl Serialize for MhoElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> =
            self.terms.iter().map(|(p, t)| TermJson { profile: p.clone(), tensor: t.clone() }).collect();
        terms.serialize(s)
    }
}

impl MhoElement {
    pub fn zero(dim: usize) -> Self {
        MhoElement { dim, terms: BTreeMap::new() }
    }

    pub fn from_tensor(t: HomTensor) -> Self {
        let mut x = Self::zero(t.dim());
        x.add_term(t).expect("same dimension");
        x
    }

    /// Reads a JSON list of `{profile, tensor}` terms.
    pub fn from_json(dim: usize, s: &str) -> Result<Self, Box<dyn std::error::Error>> {
        let terms: Vec<TermJson> = serde_json::from_str(s)?;
        let mut x = Self::zero(dim);
        for t in terms {
            if t.tensor.profile() != &t.profile {
                return Err(MhoError::ProfileMismatch(t.profile.to_string(), t.tensor.profile().to_string()).into());
            }
            x.add_term(t.tensor)?;
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Profile, HomTensor> {
        &self.terms
    }

    pub fn component(&self, p: &Profile) -> HomTensor {
        self.terms.get(p).cloned().unwrap_or_else(|| HomTensor::zero(p.clone(), self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: HomTensor) -> Result<(), MhoError> {
        if t.dim() != self.dim {
            return Err(MhoError::DimMismatch(t.dim(), self.dim));
        }
        if t.is_zero() {
            return Ok(());
        }
        let p = t.profile().clone();
        match self.terms.remove(&p) {
            None => {
                self.terms.insert(p, t);
            }
            Some(old) => {
                let sum = old.add(&t).expect("same profile");
                if !sum.is_zero() {
                    self.terms.insert(p, sum);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MhoElement) -> Result<MhoElement, MhoError> {
        let mut out = self.clone();
        for t in other.terms.values() {
            out.add_term(t.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MhoElement) -> Result<MhoElement, MhoError> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, r: &Rational) -> MhoElement {
        let mut out = Self::zero(self.dim);
        for t in self.terms.values() {
            out.add_term(t.scale(r)).expect("same dimension");
        }
        out
    }

    /// The common degree of all terms.
    pub fn degree(&self) -> Result<i64, MhoError> {
        let mut it = self.terms.keys().map(profile_degree);
        let d = it.next().ok_or(MhoError::Zero)?;
        match it.find(|&e| e != d) {
            Some(e) => Err(MhoError::NonHomogeneous(d, e)),
            None => Ok(d),
        }
    }

    /// The part supported on profiles passing `keep`.
    pub fn filter(&self, keep: impl Fn(&Profile) -> bool) -> MhoElement {
        let terms = self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, t)| (p.clone(), t.clone())).collect();
        MhoElement { dim: self.dim, terms }
    }

    /// A random element with one term on each given profile.
    pub fn random<R: Rng>(profiles: &[Profile], dim: usize, density: f64, rng: &mut R) -> MhoElement {
        let mut x = Self::zero(dim);
        for p in profiles {
            x.add_term(HomTensor::random(p.clone(), dim, density, rng)).expect("same dimension");
        }
        x
    }
}

/// The sign `(−1)^{dim X} ε(X ; Y)` and the ambient profile, or `None`
/// when `X` and `Y` are not the two snapshots of a boundary stratum.
pub fn product_sign(table: &OrientationTable, x: &Profile, y: &Profile) -> Result<Option<(Profile, i8)>, MhoError> {
    let Some((ambient, stratum)) = find_product_stratum(x, y) else { return Ok(None) };
    let eps = table.sign(&stratum)?;
    let koszul = if x.dim().rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(Some((ambient, koszul * eps)))
}

fn term_product(table: &OrientationTable, x: &HomTensor, y: &HomTensor) -> Result<Option<HomTensor>, MhoError> {
    match product_sign(table, x.profile(), y.profile())? {
        None => Ok(None),
        Some((_, s)) => {
            let c = general_compose(x, y).expect("snapshots of a stratum are composable");
            Ok(Some(if s > 0 { c } else { c.scale(&Rational::from_integer((-1).into())) }))
        }
    }
}

pub fn product(table: &OrientationTable, x: &MhoElement, y: &MhoElement) -> Result<MhoElement, MhoError> {
    if x.dim != y.dim {
        return Err(MhoError::DimMismatch(x.dim, y.dim));
    }
    let mut out = MhoElement::zero(x.dim);
    for a in x.terms.values() {
        for b in y.terms.values() {
            if let Some(t) = term_product(table, a, b)? {
                out.add_term(t)?;
            }
        }
    }
    Ok(out)
}

/// A bialgebra together with its canonical operations
/// `π₀(P) = ⊗_{i,j} Δ^{nⱼ−1}∘μ^{mᵢ−1}` on profiles of dimension zero.
#[derive(Debug, Clone)]
pub struct BialgebraPoint {
    pub bialgebra: BialgebraSpec,
}

impl BialgebraPoint {
    pub fn new(bialgebra: BialgebraSpec) -> Self {
        BialgebraPoint { bialgebra }
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    /// The canonical operation of `p` if `p` has exactly one gap.
    pub fn pi0(&self, p: &Profile) -> Option<HomTensor> {
        (p.gap_count() == 1).then(|| self.canonical(p))
    }

    /// `⊗_{i,j} Δ^{nⱼ−1}∘μ^{mᵢ−1}` on any profile.
    pub fn canonical(&self, p: &Profile) -> HomTensor {
        let b = &self.bialgebra;
        let cells: Vec<HomTensor> = p
            .lower
            .iter()
            .flat_map(|&m| p.upper.iter().map(move |&n| (m, n)))
            .map(|(m, n)| crate::bialg::op_then(&b.star(m), &b.coprod(n)).expect("arities match"))
            .collect();
        HomTensor::from_cells(p.clone(), &cells).expect("cell shapes match")
    }

    /// `π` restricted to the profiles with at most `points` points.
    pub fn pi(&self, points: usize) -> MhoElement {
        let mut x = MhoElement::zero(self.dim());
        for p in one_gap_profiles(points) {
            x.add_term(self.canonical(&p)).expect("same dimension");
        }
        x
    }
}

/// Block sequences of length `len` with entries in `{1, 2}` and at most one 2.
fn near_unit_blocks(len: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = vec![(vec![1; len], 0)];
    for k in 0..len {
        let mut v = vec![1; len];
        v[k] = 2;
        out.push((v, 1));
    }
    out
}

/// Compositions of `total` into parts `1` and at most one `2`.
fn near_unit_compositions(total: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = vec![(vec![1; total], 0)];
    if total >= 2 {
        for k in 0..total - 1 {
            let mut v = vec![1; total - 1];
            v[k] = 2;
            out.push((v, 1));
        }
    }
    out
}

fn one_gap(lower: &[(Vec<usize>, usize)], upper: &[(Vec<usize>, usize)]) -> Vec<Profile> {
    let mut out = Vec::new();
    for (l, a) in lower {
        for (u, b) in upper {
            if a + b == 1 {
                out.push(Profile { lower: l.clone(), upper: u.clone() });
            }
        }
    }
    out
}

/// Every profile with one gap and at most `points` points.
pub fn one_gap_profiles(points: usize) -> Vec<Profile> {
    (3..=points)
        .flat_map(|n| Profile::all_with_points(n).into_iter().filter(|p| p.gap_count() == 1))
        .collect()
}

/// `d(x) = π·x − (−1)^{deg x} x·π`, computed term by term.
pub fn differential(point: &BialgebraPoint, table: &OrientationTable, x: &MhoElement) -> Result<MhoElement, MhoError> {
    if x.dim != point.dim() {
        return Err(MhoError::DimMismatch(x.dim, point.dim()));
    }
    let mut out = MhoElement::zero(x.dim);
    for t in x.terms.values() {
        let p = t.profile();
        let lower_len: usize = p.lower.iter().sum();
        // π on the left: π's lower blocks number Σ lower(P), its upper blocks sum to ℓ₂(P)
        for q in one_gap(&near_unit_blocks(lower_len), &near_unit_compositions(p.upper.len())) {
            if let Some(s) = term_product(table, &point.canonical(&q), t)? {
                out.add_term(s)?;
            }
        }
        let upper_len: usize = p.upper.iter().sum();
        let sign = if profile_degree(p) % 2 == 0 { -1 } else { 1 };
        for q in one_gap(&near_unit_compositions(p.lower.len()), &near_unit_blocks(upper_len)) {
            if let Some(s) = term_product(table, t, &point.canonical(&q))? {
                out.add_term(if sign > 0 { s } else { s.scale(&Rational::from_integer((-1).into())) })?;
            }
        }
    }
    Ok(out)
}

/// A triple whose two bracketings differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociativityWitness {
    pub profiles: [String; 3],
    pub index: Index,
    pub left: String,
    pub right: String,
}

/// All geometric profiles with at most `points` points.
fn geometric(points: usize) -> Vec<Profile> {
    Profile::geometric_up_to(points)
}

/// Compares `(x·y)·z` with `x·(y·z)` on random tensors for every triple of
/// geometric profiles with at most `bound` points each, `trials` times.
pub fn associativity_report<R: Rng>(
    table: &OrientationTable,
    bound: usize,
    dim: usize,
    trials: usize,
    rng: &mut R,
) -> Result<(usize, Vec<AssociativityWitness>), MhoError> {
    let ps = geometric(bound);
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for px in &ps {
        for py in ps.iter().filter(|py| find_product_stratum(px, py).is_some()) {
            for pz in &ps {
                let outer = find_product_stratum(py, pz).is_some();
                let composite = find_product_stratum(px, py).map(|(a, _)| a);
                let inner = composite.as_ref().is_some_and(|a| find_product_stratum(a, pz).is_some());
                if !outer && !inner {
                    continue;
                }
                for _ in 0..trials {
                    let x = MhoElement::from_tensor(HomTensor::random(px.clone(), dim, 0.5, rng));
                    let y = MhoElement::from_tensor(HomTensor::random(py.clone(), dim, 0.5, rng));
                    let z = MhoElement::from_tensor(HomTensor::random(pz.clone(), dim, 0.5, rng));
                    let left = product(table, &product(table, &x, &y)?, &z)?;
                    let right = product(table, &x, &product(table, &y, &z)?)?;
                    checked += 1;
                    if let Some(w) = first_difference(&left, &right) {
                        witnesses.push(AssociativityWitness {
                            profiles: [px.to_string(), py.to_string(), pz.to_string()],
                            index: w.0,
                            left: w.1.to_string(),
                            right: w.2.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok((checked, witnesses))
}

/// The first coefficient at which two elements differ.
pub fn first_difference(a: &MhoElement, b: &MhoElement) -> Option<(Index, Rational, Rational)> {
    let diff = a.sub(b).ok()?;
    let (p, t) = diff.terms.iter().next()?;
    let (idx, _) = t.coeffs().iter().next()?;
    Some((idx.clone(), a.component(p).get(idx), b.component(p).get(idx)))
}

/// The obstruction to an assignment of operations being a map of CROCs
/// out of the cellular chains: on each profile `P`, the image of the
/// boundary of the top cell, `Σ_t (−1)^{dim X} ε(t) Υ(X)∘Υ(Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureDefects {
    pub defects: BTreeMap<Profile, HomTensor>,
}

impl StructureDefects {
    pub fn is_zero(&self) -> bool {
        self.defects.values().all(HomTensor::is_zero)
    }

    pub fn nonzero_profiles(&self) -> Vec<&Profile> {
        self.defects.iter().filter(|(_, t)| !t.is_zero()).map(|(p, _)| p).collect()
    }
}

pub fn sh_structure_check(
    table: &OrientationTable,
    assignment: &MhoElement,
    bound: usize,
) -> Result<StructureDefects, MhoError> {
    for (p, t) in &assignment.terms {
        if t.profile() != p {
            return Err(MhoError::ProfileMismatch(p.to_string(), t.profile().to_string()));
        }
    }
    let square = product(table, assignment, assignment)?;
    let mut defects = BTreeMap::new();
    for p in geometric(bound).into_iter().filter(|p| p.dim() >= 1) {
        defects.insert(p.clone(), square.component(&p));
    }
    Ok(StructureDefects { defects })
}

/// A zero-free check used by tests: `a − b` vanishes.
pub fn same(a: &MhoElement, b: &MhoElement) -> bool {
    a.sub(b).map(|d| d.is_zero()).unwrap_or(false)
}

impl MhoElement {
    /// Total number of stored coefficients.
    pub fn nnz(&self) -> usize {
        self.terms.values().map(HomTensor::nnz).sum()
    }

    /// Sum of all coefficients, a cheap fingerprint.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().flat_map(|t| t.coeffs().values()).fold(Rational::zero(), |a, b| a + b)
    }
}
