//! The preCROC `End(V)` of a finite-dimensional rational vector space.
//!
//! The component of profile `(m₁…m_a; n₁…n_b)` is
//! `⊗_{i,j} Hom(V^{⊗m_i}, V^{⊗n_j})`. A [`HomTensor`] stores an arbitrary
//! element as a sparse coefficient map over the concatenated legs of all
//! cells: cells in row-major order `(i, j)`, each cell contributing its
//! `m_i` input legs then its `n_j` output legs. The coefficient at
//! `(…, in, out, …)` is the matrix entry sending `e_in` to `e_out`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qlinalg::{parse_rational, rat, Rational};
use crate::strata::{composite_profile, Profile};

/// One basis index per leg.
pub type Index = Vec<u8>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EndError {
    #[error("profiles {0} and {1} are not composable")]
    Incomposable(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vector spaces of dimension {0} and {1}")]
    DimMismatch(usize, usize),
    #[error("{0:?} is not a permutation of the right size")]
    BadPermutation(Vec<usize>),
}

/// Leg offsets of the cells of a profile.
#[derive(Debug, Clone)]
pub struct Layout {
    lower: Vec<usize>,
    upper: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    pub fn new(p: &Profile) -> Self {
        let mut offsets = Vec::with_capacity(p.cells());
        let mut total = 0;
        for &m in &p.lower {
            for &n in &p.upper {
                offsets.push(total);
                total += m + n;
            }
        }
        Layout { lower: p.lower.clone(), upper: p.upper.clone(), offsets, total }
    }

    pub fn legs(&self) -> usize {
        self.total
    }

    pub fn cell_offset(&self, i: usize, j: usize) -> usize {
        self.offsets[i * self.upper.len() + j]
    }

    pub fn input(&self, i: usize, j: usize, s: usize) -> usize {
        self.cell_offset(i, j) + s
    }

    pub fn output(&self, i: usize, j: usize, s: usize) -> usize {
        self.cell_offset(i, j) + self.lower[i] + s
    }
}

/// An element of one component of `End(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTensor {
    profile: Profile,
    dim: usize,
    coeffs: BTreeMap<Index, Rational>,
}

/// Per-block permutations: `lower[i]` acts on the inputs of lower block `i`,
/// `upper[j]` on the outputs of upper block `j`. Leg `s` moves to position
/// `σ(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPermutation {
    pub lower: Vec<Vec<usize>>,
    pub upper: Vec<Vec<usize>>,
}

impl BlockPermutation {
    pub fn identity(p: &Profile) -> Self {
        BlockPermutation {
            lower: p.lower.iter().map(|&m| (0..m).collect()).collect(),
            upper: p.upper.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    /// `self ∘ other`: act by `other` first.
    pub fn then(&self, first: &BlockPermutation) -> BlockPermutation {
        let comp = |a: &Vec<Vec<usize>>, b: &Vec<Vec<usize>>| a.iter().zip(b).map(|(s, t)| compose_perm(s, t)).collect();
        BlockPermutation { lower: comp(&self.lower, &first.lower), upper: comp(&self.upper, &first.upper) }
    }
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `(a ∘ b)(s) = a(b(s))`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&s| a[s]).collect()
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (s, &t) in p.iter().enumerate() {
        inv[t] = s;
    }
    inv
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Iterates over all indices of the given length with entries `< dim`.
pub fn all_indices(len: usize, dim: usize) -> impl Iterator<Item = Index> {
    let total = dim.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut idx = vec![0u8; len];
        for k in (0..len).rev() {
            idx[k] = (code % dim) as u8;
            code /= dim;
        }
        idx
    })
}

impl HomTensor {
    pub fn zero(profile: Profile, dim: usize) -> Self {
        HomTensor { profile, dim, coeffs: BTreeMap::new() }
    }

    /// The identity of `V` in the `(1);(1)` component.
    pub fn identity(dim: usize) -> Self {
        let mut t = Self::zero(Profile::unit(), dim);
        for a in 0..dim as u8 {
            t.coeffs.insert(vec![a, a], Rational::one());
        }
        t
    }

    pub fn from_entries<I>(profile: Profile, dim: usize, entries: I) -> Result<Self, EndError>
    where
        I: IntoIterator<Item = (Index, Rational)>,
    {
        let mut t = Self::zero(profile, dim);
        for (idx, v) in entries {
            t.add_entry(idx, v)?;
        }
        Ok(t)
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> usize {
        Layout::new(&self.profile).legs()
    }

    pub fn coeffs(&self) -> &BTreeMap<Index, Rational> {
        &self.coeffs
    }

    pub fn get(&self, idx: &[u8]) -> Rational {
        self.coeffs.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_entry(&mut self, idx: Index, v: Rational) -> Result<(), EndError> {
        if idx.len() != self.legs() || idx.iter().any(|&a| a as usize >= self.dim) {
            return Err(EndError::Shape(format!("index {idx:?} for {} over dim {}", self.profile, self.dim)));
        }
        self.add_unchecked(idx, v);
        Ok(())
    }

    fn add_unchecked(&mut self, idx: Index, v: Rational) {
        if v.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_space(&self, other: &HomTensor) -> Result<(), EndError> {
        if self.dim != other.dim {
            return Err(EndError::DimMismatch(self.dim, other.dim));
        }
        if self.profile != other.profile {
            return Err(EndError::Shape(format!("{} vs {}", self.profile, other.profile)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomTensor) -> Result<HomTensor, EndError> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_unchecked(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomTensor) -> Result<HomTensor, EndError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> HomTensor {
        if r.is_zero() {
            return Self::zero(self.profile.clone(), self.dim);
        }
        HomTensor {
            profile: self.profile.clone(),
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * r)).collect(),
        }
    }

    /// The tensor product of single-cell factors, one per cell in row-major
    /// order.
    pub fn from_cells(profile: Profile, cells: &[HomTensor]) -> Result<HomTensor, EndError> {
        if cells.len() != profile.cells() {
            return Err(EndError::Shape(format!("{} cells for {profile}", cells.len())));
        }
        let dim = cells.first().map_or(1, |c| c.dim);
        let mut acc: BTreeMap<Index, Rational> = BTreeMap::from([(Vec::new(), Rational::one())]);
        for (k, c) in cells.iter().enumerate() {
            let (i, j) = (k / profile.upper.len(), k % profile.upper.len());
            if c.profile != Profile::single(profile.lower[i], profile.upper[j]) || c.dim != dim {
                return Err(EndError::Shape(format!("cell ({i},{j}) has profile {}", c.profile)));
            }
            let mut next = BTreeMap::new();
            for (a, va) in &acc {
                for (b, vb) in &c.coeffs {
                    let mut idx = a.clone();
                    idx.extend_from_slice(b);
                    next.insert(idx, va * vb);
                }
            }
            acc = next;
        }
        Ok(HomTensor { profile, dim, coeffs: acc })
    }

    /// Juxtaposition along the lower line: profile `(L_a ++ L_b; U)`.
    pub fn juxtapose_lower(a: &HomTensor, b: &HomTensor) -> Result<HomTensor, EndError> {
        if a.profile.upper != b.profile.upper || a.dim != b.dim {
            return Err(EndError::Shape(format!("cannot stack {} over {}", a.profile, b.profile)));
        }
        let mut lower = a.profile.lower.clone();
        lower.extend_from_slice(&b.profile.lower);
        let profile = Profile { lower, upper: a.profile.upper.clone() };
        let mut out = Self::zero(profile, a.dim);
        for (x, vx) in &a.coeffs {
            for (y, vy) in &b.coeffs {
                let mut idx = x.clone();
                idx.extend_from_slice(y);
                out.coeffs.insert(idx, vx * vy);
            }
        }
        Ok(out)
    }

    /// Juxtaposition along the upper line: profile `(L; U_a ++ U_b)`.
    pub fn juxtapose_upper(a: &HomTensor, b: &HomTensor) -> Result<HomTensor, EndError> {
        if a.profile.lower != b.profile.lower || a.dim != b.dim {
            return Err(EndError::Shape(format!("cannot place {} beside {}", a.profile, b.profile)));
        }
        let mut upper = a.profile.upper.clone();
        upper.extend_from_slice(&b.profile.upper);
        let profile = Profile { lower: a.profile.lower.clone(), upper };
        let (la, lb) = (Layout::new(&a.profile), Layout::new(&b.profile));
        let rows = a.profile.lower.len();
        let split = |l: &Layout, idx: &Index| -> Vec<Vec<u8>> {
            (0..rows)
                .map(|i| {
                    let start = l.cell_offset(i, 0);
                    let end = if i + 1 < rows { l.cell_offset(i + 1, 0) } else { l.legs() };
                    idx[start..end].to_vec()
                })
                .collect()
        };
        let mut out = Self::zero(profile, a.dim);
        for (x, vx) in &a.coeffs {
            let xs = split(&la, x);
            for (y, vy) in &b.coeffs {
                let ys = split(&lb, y);
                let idx = xs.iter().zip(&ys).flat_map(|(p, q)| p.iter().chain(q)).copied().collect();
                out.coeffs.insert(idx, vx * vy);
            }
        }
        Ok(out)
    }

    /// Acts on input legs of each lower block and output legs of each upper
    /// block; the same block permutation applies in every cell of the block.
    pub fn act_symmetric(&self, g: &BlockPermutation) -> Result<HomTensor, EndError> {
        let p = &self.profile;
        let sizes_ok = g.lower.len() == p.lower.len()
            && g.upper.len() == p.upper.len()
            && g.lower.iter().zip(&p.lower).all(|(s, &m)| s.len() == m)
            && g.upper.iter().zip(&p.upper).all(|(s, &n)| s.len() == n);
        if !sizes_ok {
            return Err(EndError::Shape(format!("block permutation does not fit {p}")));
        }
        if let Some(bad) = g.lower.iter().chain(&g.upper).find(|s| !is_permutation(s)) {
            return Err(EndError::BadPermutation(bad.clone()));
        }
        let layout = Layout::new(p);
        let mut target = vec![0usize; layout.legs()];
        for i in 0..p.lower.len() {
            for j in 0..p.upper.len() {
                for s in 0..p.lower[i] {
                    target[layout.input(i, j, s)] = layout.input(i, j, g.lower[i][s]);
                }
                for s in 0..p.upper[j] {
                    target[layout.output(i, j, s)] = layout.output(i, j, g.upper[j][s]);
                }
            }
        }
        let mut out = Self::zero(p.clone(), self.dim);
        for (idx, v) in &self.coeffs {
            let mut moved = vec![0u8; idx.len()];
            for (leg, &a) in idx.iter().enumerate() {
                moved[target[leg]] = a;
            }
            out.coeffs.insert(moved, v.clone());
        }
        Ok(out)
    }

    /// Single-cell shorthand for [`act_symmetric`](Self::act_symmetric).
    pub fn act_cell(&self, on_inputs: &[usize], on_outputs: &[usize]) -> Result<HomTensor, EndError> {
        if self.profile.cells() != 1 {
            return Err(EndError::Shape(format!("{} is not a single cell", self.profile)));
        }
        self.act_symmetric(&BlockPermutation { lower: vec![on_inputs.to_vec()], upper: vec![on_outputs.to_vec()] })
    }

    /// A random element with roughly `density · dim^legs` nonzero small
    /// integer coefficients.
    pub fn random<R: Rng>(profile: Profile, dim: usize, density: f64, rng: &mut R) -> HomTensor {
        let legs = Layout::new(&profile).legs();
        let mut out = Self::zero(profile, dim);
        for idx in all_indices(legs, dim) {
            if rng.gen_bool(density) {
                let v = rng.gen_range(-3i64..=3);
                out.add_unchecked(idx, rat(v, 1));
            }
        }
        out
    }
}

/// The blockwise composition of `x` (profile `Px`) followed by `y` (profile
/// `Py`).
///
/// Requires `len(Px.lower) = ΣPy.lower` and `len(Py.upper) = ΣPx.upper`.
/// Output cell `(k, l)` composes the `x` cells `(i, l)`, `i` in the `k`-th
/// group of `Py.lower`, with the `y` cells `(k, j)`, `j` in the `l`-th group
/// of `Px.upper`; output slot `j` of `x` cell `(i, l)` feeds input slot `i`
/// of `y` cell `(k, j)`, positions counted within the groups.
pub fn general_compose(x: &HomTensor, y: &HomTensor) -> Result<HomTensor, EndError> {
    if x.dim != y.dim {
        return Err(EndError::DimMismatch(x.dim, y.dim));
    }
    let (px, py) = (&x.profile, &y.profile);
    let r = composite_profile(px, py).ok_or_else(|| EndError::Incomposable(px.to_string(), py.to_string()))?;
    let (lx, ly) = (Layout::new(px), Layout::new(py));
    let starts = |groups: &[usize]| -> Vec<usize> {
        groups.iter().scan(0, |acc, &g| {
            let s = *acc;
            *acc += g;
            Some(s)
        }).collect()
    };
    let start_k = starts(&py.lower);
    let start_l = starts(&px.upper);
    let mut l_of_j = Vec::new();
    for (l, &n) in px.upper.iter().enumerate() {
        l_of_j.extend(std::iter::repeat(l).take(n));
    }

    let mut y_key = Vec::new();
    let mut x_key = Vec::new();
    for k in 0..py.lower.len() {
        for j in 0..py.upper.len() {
            for s in 0..py.lower[k] {
                let i = start_k[k] + s;
                let l = l_of_j[j];
                y_key.push(ly.input(k, j, s));
                x_key.push(lx.output(i, l, j - start_l[l]));
            }
        }
    }
    enum Src {
        X(usize),
        Y(usize),
    }
    let mut sources = Vec::new();
    for k in 0..py.lower.len() {
        for l in 0..px.upper.len() {
            for i in start_k[k]..start_k[k] + py.lower[k] {
                sources.extend((0..px.lower[i]).map(|s| Src::X(lx.input(i, l, s))));
            }
            for j in start_l[l]..start_l[l] + px.upper[l] {
                sources.extend((0..py.upper[j]).map(|s| Src::Y(ly.output(k, j, s))));
            }
        }
    }

    let mut table: HashMap<Vec<u8>, Vec<(&Index, &Rational)>> = HashMap::new();
    for (idx, v) in &y.coeffs {
        let key = y_key.iter().map(|&leg| idx[leg]).collect();
        table.entry(key).or_default().push((idx, v));
    }
    let mut acc: HashMap<Index, Rational> = HashMap::new();
    for (xi, xv) in &x.coeffs {
        let key: Vec<u8> = x_key.iter().map(|&leg| xi[leg]).collect();
        let Some(matches) = table.get(&key) else { continue };
        for (yi, yv) in matches {
            let idx = sources
                .iter()
                .map(|s| match s {
                    Src::X(leg) => xi[*leg],
                    Src::Y(leg) => yi[*leg],
                })
                .collect();
            *acc.entry(idx).or_insert_with(Rational::zero) += xv * *yv;
        }
    }
    let coeffs = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    Ok(HomTensor { profile: r, dim: x.dim, coeffs })
}

/// The grid composition: `Θᵢ: V^{⊗m_i} → V^{⊗ℓ₂}` for `i < ℓ₁`, then
/// `Ψⱼ: V^{⊗ℓ₁} → V^{⊗n_j}` for `j < ℓ₂`, output `j` of `Θᵢ` feeding input
/// `i` of `Ψⱼ`.
pub fn simple_compose(theta: &[HomTensor], psi: &[HomTensor]) -> Result<HomTensor, EndError> {
    let (l1, l2) = (theta.len(), psi.len());
    if l1 == 0 || l2 == 0 {
        return Err(EndError::Shape("empty layer".into()));
    }
    let mut ms = Vec::with_capacity(l1);
    for t in theta {
        match (t.profile.lower.as_slice(), t.profile.upper.as_slice()) {
            (&[m], &[n]) if n == l2 => ms.push(m),
            _ => return Err(EndError::Shape(format!("first layer map {} needs {l2} outputs", t.profile))),
        }
    }
    let mut ns = Vec::with_capacity(l2);
    for p in psi {
        match (p.profile.lower.as_slice(), p.profile.upper.as_slice()) {
            (&[m], &[n]) if m == l1 => ns.push(n),
            _ => return Err(EndError::Shape(format!("second layer map {} needs {l1} inputs", p.profile))),
        }
    }
    let x = HomTensor::from_cells(Profile { lower: ms, upper: vec![l2] }, theta)?;
    let y = HomTensor::from_cells(Profile { lower: vec![l1], upper: ns }, psi)?;
    general_compose(&x, &y)
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    profile: Profile,
    dim: usize,
    coeffs: Vec<(Index, String)>,
}

impl Serialize for HomTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TensorJson {
            profile: self.profile.clone(),
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = TensorJson::deserialize(d)?;
        let profile = Profile::new(j.profile.lower, j.profile.upper).map_err(D::Error::custom)?;
        let mut entries = Vec::with_capacity(j.coeffs.len());
        for (k, v) in j.coeffs {
            entries.push((k, parse_rational(&v).map_err(D::Error::custom)?));
        }
        HomTensor::from_entries(profile, j.dim, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    fn one() -> Rational {
        Rational::one()
    }

    /// μ of ℚ[C₂] with e = 0, g = 1.
    fn c2_mu() -> HomTensor {
        let e = (0..2u8).flat_map(|a| (0..2u8).map(move |b| (vec![a, b, a ^ b], rat(1, 1))));
        HomTensor::from_entries(p("(2);(1)"), 2, e).unwrap()
    }

    fn c2_delta() -> HomTensor {
        HomTensor::from_entries(p("(1);(2)"), 2, (0..2u8).map(|a| (vec![a, a, a], rat(1, 1)))).unwrap()
    }

    #[test]
    fn identity_coefficients() {
        let id = HomTensor::identity(2);
        assert_eq!(id.nnz(), 2);
        assert_eq!(id.get(&[1, 1]), one());
        assert!(id.get(&[0, 1]).is_zero());
    }

    #[test]
    fn ordinary_composition_of_matrices() {
        let a = HomTensor::from_entries(p("(1);(1)"), 2, [(vec![0, 1], rat(2, 1)), (vec![1, 1], rat(1, 1))]).unwrap();
        let b = HomTensor::from_entries(p("(1);(1)"), 2, [(vec![1, 0], rat(3, 1))]).unwrap();
        let c = simple_compose(&[a], &[b]).unwrap();
        assert_eq!(c.get(&[0, 0]), rat(6, 1));
        assert_eq!(c.get(&[1, 0]), rat(3, 1));
        assert_eq!(c.nnz(), 2);
    }

    #[test]
    fn grid_composition_on_group_algebra() {
        let c = simple_compose(&[c2_delta(), c2_delta()], &[c2_mu(), c2_mu()]).unwrap();
        let direct = general_compose(&c2_mu(), &c2_delta()).unwrap();
        assert_eq!(c, direct);
        // g⊗g ↦ e⊗e
        assert_eq!(c.get(&[1, 1, 0, 0]), one());
        assert_eq!(c.profile(), &p("(2);(2)"));
    }

    #[test]
    fn symmetric_action() {
        let mu = c2_mu();
        assert_eq!(mu.act_cell(&[1, 0], &[0]).unwrap(), mu);
        assert_eq!(c2_delta().act_cell(&[0], &[1, 0]).unwrap(), c2_delta());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = HomTensor::random(p("(3);(2)"), 2, 0.4, &mut rng);
        let g1 = BlockPermutation { lower: vec![vec![1, 2, 0]], upper: vec![vec![1, 0]] };
        let g2 = BlockPermutation { lower: vec![vec![0, 2, 1]], upper: vec![vec![1, 0]] };
        let lhs = x.act_symmetric(&g1.then(&g2)).unwrap();
        let rhs = x.act_symmetric(&g2).unwrap().act_symmetric(&g1).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.act_symmetric(&BlockPermutation::identity(x.profile())).unwrap(), x);
        assert!(x.act_cell(&[0, 0, 1], &[0, 1]).is_err());
    }

    #[test]
    fn incomposable_profiles_are_rejected() {
        assert!(matches!(general_compose(&c2_mu(), &c2_mu()), Err(EndError::Incomposable(..))));
    }

    #[test]
    fn juxtaposition_matches_cells() {
        let mu = c2_mu();
        let d = c2_delta();
        let a = HomTensor::from_cells(p("(2);(1)"), &[mu.clone()]).unwrap();
        assert_eq!(a, mu);
        let stacked = HomTensor::juxtapose_lower(&d, &d).unwrap();
        assert_eq!(stacked, HomTensor::from_cells(p("(1,1);(2)"), &[d.clone(), d.clone()]).unwrap());
        let x = HomTensor::juxtapose_upper(&stacked, &stacked).unwrap();
        assert_eq!(x, HomTensor::from_cells(p("(1,1);(2,2)"), &[d.clone(), d.clone(), d.clone(), d]).unwrap());
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(compose_perm(&[1, 2, 0], &invert_perm(&[1, 2, 0])), vec![0, 1, 2]);
        assert!(!is_permutation(&[0, 0]));
    }

    #[test]
    fn json_round_trip() {
        let j = serde_json::to_string(&c2_delta()).unwrap();
        assert!(j.starts_with(r#"{"profile":{"lower":[1],"upper":[2]},"dim":2,"coeffs":[[[0,0,0],"1"]"#));
        let back: HomTensor = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c2_delta());
        assert!(serde_json::from_str::<HomTensor>(r#"{"profile":{"lower":[1],"upper":[1]},"dim":2,"coeffs":[[[0,2],"1"]]}"#).is_err());
    }
}
