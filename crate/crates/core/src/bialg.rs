//! Bialgebras by structure constants and the CROC `Assoc`.
//!
//! A bialgebra here has an associative product `μ`, a coassociative
//! coproduct `Δ` and `Δ∘μ = (μ⊗μ)∘τ₂₃∘(Δ⊗Δ)`; no unit, counit or antipode.
//! An `Assoc` basis element assigns a pair of permutations to every grid
//! cell and evaluates to `σ⁽²⁾∘Δ^{n−1}∘μ^{m−1}∘σ⁽¹⁾` cellwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::endcroc::{general_compose, invert_perm, is_permutation, permutations, EndError, HomTensor, Index};
use crate::qlinalg::{parse_rational, Rational};
use crate::strata::{composite_profile, Profile};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BialgError {
    #[error(transparent)]
    End(#[from] EndError),
    #[error("ill-typed expression: {0}")]
    Arity(String),
    #[error("no normal form: {0}")]
    NoNormalForm(String),
    #[error("expression has {0} connected components, not one cell")]
    NotSingleCell(usize),
    #[error("bad bialgebra data: {0}")]
    Data(String),
    #[error("no block {0} to restrict")]
    Restrict(String),
}

/// A candidate bialgebra; the axioms are checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraSpec {
    dim: usize,
    mu: HomTensor,
    delta: HomTensor,
}

impl BialgebraSpec {
    pub fn new(mu: HomTensor, delta: HomTensor) -> Result<Self, BialgError> {
        if mu.profile() != &Profile::single(2, 1) || delta.profile() != &Profile::single(1, 2) {
            return Err(BialgError::Data(format!("μ has profile {}, Δ has {}", mu.profile(), delta.profile())));
        }
        if mu.dim() != delta.dim() || mu.dim() == 0 {
            return Err(BialgError::Data(format!("dimensions {} and {}", mu.dim(), delta.dim())));
        }
        Ok(BialgebraSpec { dim: mu.dim(), mu, delta })
    }

    /// `μ(e_i⊗e_j) = Σ c e_k` from `(i, j, k, c)`, `Δ(e_i) = Σ c e_j⊗e_k`
    /// from `(i, j, k, c)`.
    pub fn from_constants<M, D>(dim: usize, mu: M, delta: D) -> Result<Self, BialgError>
    where
        M: IntoIterator<Item = (usize, usize, usize, Rational)>,
        D: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let conv = |it: Vec<(usize, usize, usize, Rational)>, p: Profile| -> Result<HomTensor, BialgError> {
            let entries = it.into_iter().map(|(a, b, c, v)| (vec![a as u8, b as u8, c as u8], v));
            Ok(HomTensor::from_entries(p, dim, entries)?)
        };
        let mu: Vec<_> = mu.into_iter().collect();
        let delta: Vec<_> = delta.into_iter().collect();
        if mu.iter().chain(&delta).any(|(a, b, c, _)| *a.max(b).max(c) >= dim || dim > 255) {
            return Err(BialgError::Data("structure constant index out of range".into()));
        }
        Self::new(conv(mu, Profile::single(2, 1))?, conv(delta, Profile::single(1, 2))?)
    }

    /// `ℚ[C₂]` with basis `e = e₀`, `g = e₁`, `g⋆g = e`, `Δ(x) = x⊗x`.
    pub fn group_algebra_c2() -> Self {
        let one = Rational::one;
        let mu = (0..2).flat_map(|a| (0..2).map(move |b| (a, b, a ^ b, one())));
        let delta = (0..2).map(|a| (a, a, a, one()));
        Self::from_constants(2, mu, delta).expect("valid constants")
    }

    /// `μ = 0`, `Δ = 0`.
    pub fn zero(dim: usize) -> Self {
        Self::from_constants(dim, [], []).expect("valid constants")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &HomTensor {
        &self.mu
    }

    pub fn delta(&self) -> &HomTensor {
        &self.delta
    }

    /// `μ^{k−1}`, bracketed to the left; `k = 1` gives the identity.
    pub fn star(&self, k: usize) -> HomTensor {
        assert!(k >= 1);
        let mut acc = HomTensor::identity(self.dim);
        for m in 2..=k {
            let x = HomTensor::from_cells(Profile { lower: vec![m - 1, 1], upper: vec![1] }, &[acc, HomTensor::identity(self.dim)])
                .expect("cell shapes match");
            acc = general_compose(&x, &self.mu).expect("composable");
        }
        acc
    }

    /// `Δ^{k−1}`, bracketed to the left; `k = 1` gives the identity.
    pub fn coprod(&self, k: usize) -> HomTensor {
        assert!(k >= 1);
        let mut acc = HomTensor::identity(self.dim);
        for n in 2..=k {
            let y = HomTensor::from_cells(Profile { lower: vec![1], upper: vec![n - 1, 1] }, &[acc, HomTensor::identity(self.dim)])
                .expect("cell shapes match");
            acc = general_compose(&self.delta, &y).expect("composable");
        }
        acc
    }

    /// `σ₂ ∘ Δ^{n−1} ∘ μ^{m−1}` with inputs read in the order `σ₁`.
    pub fn cell_op(&self, m: usize, n: usize, perm: &CellPerm) -> Result<HomTensor, BialgError> {
        let core = op_then(&self.star(m), &self.coprod(n))?;
        Ok(core.act_cell(&perm.input, &perm.output)?)
    }

    pub fn is_commutative(&self) -> bool {
        self.mu.act_cell(&[1, 0], &[0]).expect("transposition") == self.mu
    }

    pub fn is_cocommutative(&self) -> bool {
        self.delta.act_cell(&[0], &[1, 0]).expect("transposition") == self.delta
    }
}

#[derive(Serialize, Deserialize)]
struct BialgebraJson {
    dim: usize,
    mu: Vec<(usize, usize, usize, String)>,
    delta: Vec<(usize, usize, usize, String)>,
}

impl Serialize for BialgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let flat = |t: &HomTensor| {
            t.coeffs().iter().map(|(k, v)| (k[0] as usize, k[1] as usize, k[2] as usize, v.to_string())).collect()
        };
        BialgebraJson { dim: self.dim, mu: flat(&self.mu), delta: flat(&self.delta) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BialgebraSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = BialgebraJson::deserialize(d)?;
        let parse = |v: Vec<(usize, usize, usize, String)>| -> Result<Vec<_>, D::Error> {
            v.into_iter()
                .map(|(a, b, c, s)| Ok((a, b, c, parse_rational(&s).map_err(D::Error::custom)?)))
                .collect()
        };
        BialgebraSpec::from_constants(j.dim, parse(j.mu)?, parse(j.delta)?).map_err(D::Error::custom)
    }
}

/// Sequential composition `g ∘ f` of single-cell maps.
pub fn op_then(f: &HomTensor, g: &HomTensor) -> Result<HomTensor, BialgError> {
    let (a, b) = (f.profile().lower[0], f.profile().upper[0]);
    let (b2, c) = (g.profile().lower[0], g.profile().upper[0]);
    if f.profile().cells() != 1 || g.profile().cells() != 1 || b != b2 || f.dim() != g.dim() {
        return Err(BialgError::Arity(format!("cannot follow {} by {}", f.profile(), g.profile())));
    }
    let mut by_input: HashMap<&[u8], Vec<(&[u8], &Rational)>> = HashMap::new();
    for (k, v) in g.coeffs() {
        by_input.entry(&k[..b]).or_default().push((&k[b..], v));
    }
    let mut acc: BTreeMap<Index, Rational> = BTreeMap::new();
    for (k, v) in f.coeffs() {
        let Some(next) = by_input.get(&k[a..]) else { continue };
        for (out, w) in next {
            let mut idx = k[..a].to_vec();
            idx.extend_from_slice(out);
            *acc.entry(idx).or_insert_with(Rational::zero) += v * *w;
        }
    }
    Ok(HomTensor::from_entries(Profile::single(a, c), f.dim(), acc)?)
}

/// Tensor product `f ⊗ g` of single-cell maps.
pub fn op_tensor(f: &HomTensor, g: &HomTensor) -> Result<HomTensor, BialgError> {
    let (a, b) = (f.profile().lower[0], f.profile().upper[0]);
    let (c, d) = (g.profile().lower[0], g.profile().upper[0]);
    if f.profile().cells() != 1 || g.profile().cells() != 1 || f.dim() != g.dim() {
        return Err(BialgError::Arity(format!("cannot tensor {} with {}", f.profile(), g.profile())));
    }
    let mut entries = Vec::with_capacity(f.nnz() * g.nnz());
    for (x, v) in f.coeffs() {
        for (y, w) in g.coeffs() {
            let mut idx = x[..a].to_vec();
            idx.extend_from_slice(&y[..c]);
            idx.extend_from_slice(&x[a..]);
            idx.extend_from_slice(&y[c..]);
            entries.push((idx, v * w));
        }
    }
    Ok(HomTensor::from_entries(Profile::single(a + c, b + d), f.dim(), entries)?)
}

/// The map `V^{⊗n} → V^{⊗n}` moving factor `k` to position `σ(k)`.
pub fn perm_op(dim: usize, sigma: &[usize]) -> Result<HomTensor, BialgError> {
    if sigma.is_empty() || !is_permutation(sigma) {
        return Err(BialgError::Arity(format!("bad permutation {sigma:?}")));
    }
    let mut id = HomTensor::identity(dim);
    for _ in 1..sigma.len() {
        id = op_tensor(&id, &HomTensor::identity(dim))?;
    }
    let trivial: Vec<usize> = (0..sigma.len()).collect();
    Ok(id.act_cell(&trivial, sigma)?)
}

/// The three axiom tensors; all vanish exactly for a bialgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defects {
    /// `μ∘(μ⊗id) − μ∘(id⊗μ)`.
    pub assoc: HomTensor,
    /// `(Δ⊗id)∘Δ − (id⊗Δ)∘Δ`.
    pub coassoc: HomTensor,
    /// `Δ∘μ − (μ⊗μ)∘τ₂₃∘(Δ⊗Δ)`, the second term as a grid composition.
    pub compat: HomTensor,
}

impl Defects {
    pub fn is_zero(&self) -> bool {
        self.assoc.is_zero() && self.coassoc.is_zero() && self.compat.is_zero()
    }

    /// The first nonzero coefficient, labeled by axiom.
    pub fn witness(&self) -> Option<(&'static str, Index, Rational)> {
        [("assoc", &self.assoc), ("coassoc", &self.coassoc), ("compat", &self.compat)]
            .into_iter()
            .find_map(|(name, t)| t.coeffs().iter().next().map(|(k, v)| (name, k.clone(), v.clone())))
    }
}

pub fn check_bialgebra(b: &BialgebraSpec) -> Defects {
    Defects { assoc: assoc_defect(&b.mu), coassoc: coassoc_defect(&b.delta), compat: compat_defect(b) }
}

fn assoc_defect(mu: &HomTensor) -> HomTensor {
    let id = HomTensor::identity(mu.dim());
    let left = HomTensor::from_cells("(2,1);(1)".parse().unwrap(), &[mu.clone(), id.clone()]).unwrap();
    let right = HomTensor::from_cells("(1,2);(1)".parse().unwrap(), &[id, mu.clone()]).unwrap();
    let a = general_compose(&left, mu).unwrap();
    let b = general_compose(&right, mu).unwrap();
    a.sub(&b).unwrap()
}

fn coassoc_defect(delta: &HomTensor) -> HomTensor {
    let id = HomTensor::identity(delta.dim());
    let left = HomTensor::from_cells("(1);(2,1)".parse().unwrap(), &[delta.clone(), id.clone()]).unwrap();
    let right = HomTensor::from_cells("(1);(1,2)".parse().unwrap(), &[id, delta.clone()]).unwrap();
    let a = general_compose(delta, &left).unwrap();
    let b = general_compose(delta, &right).unwrap();
    a.sub(&b).unwrap()
}

fn compat_defect(b: &BialgebraSpec) -> HomTensor {
    let dd = HomTensor::from_cells("(1,1);(2)".parse().unwrap(), &[b.delta.clone(), b.delta.clone()]).unwrap();
    let mm = HomTensor::from_cells("(2);(1,1)".parse().unwrap(), &[b.mu.clone(), b.mu.clone()]).unwrap();
    let first = general_compose(&b.mu, &b.delta).unwrap();
    let second = general_compose(&dd, &mm).unwrap();
    first.sub(&second).unwrap()
}

/// All bialgebras on `V = ℚ²` whose structure constants lie in `{0, 1}`,
/// ordered by the bit patterns of `μ` then `Δ`.
pub fn search_binary_bialgebras() -> Vec<BialgebraSpec> {
    let slots: Vec<(usize, usize, usize)> =
        (0..2).flat_map(|a| (0..2).flat_map(move |b| (0..2).map(move |c| (a, b, c)))).collect();
    let build = |bits: u32, p: &str| -> HomTensor {
        let entries = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, &(a, b, c))| (vec![a as u8, b as u8, c as u8], Rational::one()));
        HomTensor::from_entries(p.parse().unwrap(), 2, entries).unwrap()
    };
    let mus: Vec<HomTensor> = (0..256).map(|b| build(b, "(2);(1)")).filter(|m| assoc_defect(m).is_zero()).collect();
    let deltas: Vec<HomTensor> =
        (0..256).map(|b| build(b, "(1);(2)")).filter(|d| coassoc_defect(d).is_zero()).collect();
    let mut out = Vec::new();
    for mu in &mus {
        for delta in &deltas {
            let b = BialgebraSpec::new(mu.clone(), delta.clone()).unwrap();
            if compat_defect(&b).is_zero() {
                out.push(b);
            }
        }
    }
    out
}

/// The first binary bialgebra that is neither commutative nor cocommutative.
pub fn asymmetric_candidate() -> Option<BialgebraSpec> {
    search_binary_bialgebras().into_iter().find(|b| !b.is_commutative() && !b.is_cocommutative())
}

/// The permutation pair of one grid cell. `input[r]` is the input read at
/// slot `r` of the product; output slot `s` lands at position `output[s]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellPerm {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
}

impl CellPerm {
    pub fn identity(m: usize, n: usize) -> Self {
        CellPerm { input: (0..m).collect(), output: (0..n).collect() }
    }

    /// The cell as an expression `σ₂ ∘ Δ^{n−1} ∘ μ^{m−1} ∘ σ₁⁻¹`.
    pub fn expression(&self) -> OpExpression {
        OpExpression::Compose(vec![
            OpExpression::Perm(self.output.clone()),
            OpExpression::Coprod(self.output.len()),
            OpExpression::Star(self.input.len()),
            OpExpression::Perm(invert_perm(&self.input)),
        ])
    }
}

/// A basis element of `Assoc`: one permutation pair per grid cell, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AssocBasis {
    pub profile: Profile,
    pub cells: Vec<CellPerm>,
}

/// Which block a restriction removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Lower(usize),
    Upper(usize),
}

impl AssocBasis {
    pub fn new(profile: Profile, cells: Vec<CellPerm>) -> Result<Self, BialgError> {
        let ok = cells.len() == profile.cells()
            && cells.iter().enumerate().all(|(k, c)| {
                let (i, j) = (k / profile.upper.len(), k % profile.upper.len());
                c.input.len() == profile.lower[i]
                    && c.output.len() == profile.upper[j]
                    && is_permutation(&c.input)
                    && is_permutation(&c.output)
            });
        if !ok {
            return Err(BialgError::Data(format!("cells do not fit {profile}")));
        }
        Ok(AssocBasis { profile, cells })
    }

    pub fn identity(profile: &Profile) -> Self {
        let cells = profile.lower.iter().flat_map(|&m| profile.upper.iter().map(move |&n| CellPerm::identity(m, n)));
        AssocBasis { profile: profile.clone(), cells: cells.collect() }
    }

    /// Every basis element of the component, in lexicographic order.
    pub fn all(profile: &Profile) -> Vec<AssocBasis> {
        let mut out = vec![Vec::new()];
        for &m in &profile.lower {
            for &n in &profile.upper {
                let options: Vec<CellPerm> = permutations(m)
                    .into_iter()
                    .flat_map(|a| permutations(n).into_iter().map(move |b| CellPerm { input: a.clone(), output: b }))
                    .collect();
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<CellPerm>| {
                        options.iter().map(move |c| {
                            let mut p = prefix.clone();
                            p.push(c.clone());
                            p
                        })
                    })
                    .collect();
            }
        }
        out.into_iter().map(|cells| AssocBasis { profile: profile.clone(), cells }).collect()
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellPerm {
        &self.cells[i * self.profile.upper.len() + j]
    }

    /// Whether every cell of a lower block reads its inputs in the same
    /// order and every cell of an upper block places its outputs the same way.
    pub fn is_block_uniform(&self) -> bool {
        let (a, b) = (self.profile.lower.len(), self.profile.upper.len());
        (0..a).all(|i| (0..b).all(|j| self.cell(i, j).input == self.cell(i, 0).input))
            && (0..b).all(|j| (0..a).all(|i| self.cell(i, j).output == self.cell(0, j).output))
    }

    /// Drops one lower block (row) or one upper block (column).
    pub fn restrict(&self, which: Block) -> Result<AssocBasis, BialgError> {
        let (a, b) = (self.profile.lower.len(), self.profile.upper.len());
        let (keep_row, keep_col): (Box<dyn Fn(usize) -> bool>, Box<dyn Fn(usize) -> bool>) = match which {
            Block::Lower(r) if r < a && a > 1 => (Box::new(move |i| i != r), Box::new(|_| true)),
            Block::Upper(c) if c < b && b > 1 => (Box::new(|_| true), Box::new(move |j| j != c)),
            other => return Err(BialgError::Restrict(format!("{other:?} of {}", self.profile))),
        };
        self.select(&keep_row, &keep_col)
    }

    /// Keeps only one lower block or one upper block.
    pub fn keep_only(&self, which: Block) -> Result<AssocBasis, BialgError> {
        let (a, b) = (self.profile.lower.len(), self.profile.upper.len());
        match which {
            Block::Lower(r) if r < a => self.select(&|i| i == r, &|_| true),
            Block::Upper(c) if c < b => self.select(&|_| true, &|j| j == c),
            other => Err(BialgError::Restrict(format!("{other:?} of {}", self.profile))),
        }
    }

    fn select(&self, row: &dyn Fn(usize) -> bool, col: &dyn Fn(usize) -> bool) -> Result<AssocBasis, BialgError> {
        let (a, b) = (self.profile.lower.len(), self.profile.upper.len());
        let lower = (0..a).filter(|&i| row(i)).map(|i| self.profile.lower[i]).collect();
        let upper = (0..b).filter(|&j| col(j)).map(|j| self.profile.upper[j]).collect();
        let cells = (0..a)
            .filter(|&i| row(i))
            .flat_map(|i| (0..b).filter(|&j| col(j)).map(move |j| (i, j)))
            .map(|(i, j)| self.cell(i, j).clone())
            .collect();
        Ok(AssocBasis { profile: Profile { lower, upper }, cells })
    }

    /// The image in `End(V)` for the bialgebra `b`.
    pub fn eval(&self, b: &BialgebraSpec) -> Result<HomTensor, BialgError> {
        let (a, w) = (self.profile.lower.len(), self.profile.upper.len());
        let mut cells = Vec::with_capacity(a * w);
        for i in 0..a {
            for j in 0..w {
                cells.push(b.cell_op(self.profile.lower[i], self.profile.upper[j], self.cell(i, j))?);
            }
        }
        Ok(HomTensor::from_cells(self.profile.clone(), &cells)?)
    }
}

impl fmt::Display for AssocBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.profile)?;
        for (k, c) in self.cells.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}|{:?}", c.input, c.output)?;
        }
        write!(f, "]")
    }
}

/// A formal rational combination of basis elements of one component.
pub type AssocElement = BTreeMap<AssocBasis, Rational>;

pub fn eval_assoc(a: &AssocElement, b: &BialgebraSpec) -> Result<HomTensor, BialgError> {
    let mut profile = None;
    let mut acc: Option<HomTensor> = None;
    for (basis, c) in a {
        if profile.get_or_insert_with(|| basis.profile.clone()) != &basis.profile {
            return Err(BialgError::Data("mixed profiles in one element".into()));
        }
        let t = basis.eval(b)?.scale(c);
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    acc.ok_or_else(|| BialgError::Data("empty element has no profile".into()))
}

/// Terms built from `μ`, `Δ` and permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpExpression {
    Identity,
    /// `μ^{k−1}: V^{⊗k} → V`.
    Star(usize),
    /// `Δ^{k−1}: V → V^{⊗k}`.
    Coprod(usize),
    /// Factor `k` moves to position `σ(k)`.
    Perm(Vec<usize>),
    /// `[a, b, c]` means `a ∘ b ∘ c`.
    Compose(Vec<OpExpression>),
    Tensor(Vec<OpExpression>),
}

impl OpExpression {
    /// `(inputs, outputs)`.
    pub fn arity(&self) -> Result<(usize, usize), BialgError> {
        use OpExpression::*;
        match self {
            Identity => Ok((1, 1)),
            Star(k) | Coprod(k) if *k == 0 => Err(BialgError::Arity(format!("{self:?}"))),
            Star(k) => Ok((*k, 1)),
            Coprod(k) => Ok((1, *k)),
            Perm(s) if s.is_empty() || !is_permutation(s) => Err(BialgError::Arity(format!("{s:?}"))),
            Perm(s) => Ok((s.len(), s.len())),
            Compose(parts) => {
                let mut it = parts.iter().rev();
                let first = it.next().ok_or_else(|| BialgError::Arity("empty composition".into()))?.arity()?;
                let mut out = first;
                for p in it {
                    let (i, o) = p.arity()?;
                    if i != out.1 {
                        return Err(BialgError::Arity(format!("{} outputs feed {i} inputs", out.1)));
                    }
                    out.1 = o;
                }
                Ok(out)
            }
            Tensor(parts) if parts.is_empty() => Err(BialgError::Arity("empty tensor".into())),
            Tensor(parts) => parts.iter().try_fold((0, 0), |(a, b), p| p.arity().map(|(i, o)| (a + i, b + o))),
        }
    }

    /// Direct evaluation in `End(V)`, no rewriting.
    pub fn eval(&self, b: &BialgebraSpec) -> Result<HomTensor, BialgError> {
        use OpExpression::*;
        self.arity()?;
        match self {
            Identity => Ok(HomTensor::identity(b.dim)),
            Star(k) => Ok(b.star(*k)),
            Coprod(k) => Ok(b.coprod(*k)),
            Perm(s) => perm_op(b.dim, s),
            Compose(parts) => {
                let mut it = parts.iter().rev();
                let mut acc = it.next().unwrap().eval(b)?;
                for p in it {
                    acc = op_then(&acc, &p.eval(b)?)?;
                }
                Ok(acc)
            }
            Tensor(parts) => {
                let mut acc = parts[0].eval(b)?;
                for p in &parts[1..] {
                    acc = op_tensor(&acc, &p.eval(b)?)?;
                }
                Ok(acc)
            }
        }
    }
}

/// One connected piece `Δ^{q−1}∘μ^{p−1}` of a normal form, recording which
/// global input feeds each product slot and where each coproduct slot lands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub ins: Vec<usize>,
    pub outs: Vec<usize>,
}

/// A normal form: a tensor product of components with global wiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    pub inputs: usize,
    pub outputs: usize,
    pub comps: Vec<Component>,
}

impl Network {
    fn canonical(mut self) -> Self {
        self.comps.sort();
        self
    }

    fn single(ins: Vec<usize>, outs: Vec<usize>) -> Self {
        Network { inputs: ins.len(), outputs: outs.len(), comps: vec![Component { ins, outs }] }
    }

    /// The permutation pair when the network is a single grid cell.
    pub fn as_cell(&self) -> Result<CellPerm, BialgError> {
        match self.comps.as_slice() {
            [c] => Ok(CellPerm { input: c.ins.clone(), output: c.outs.clone() }),
            other => Err(BialgError::NotSingleCell(other.len())),
        }
    }

    /// An expression with this normal form:
    /// `Perm(out) ∘ (⊗ Δ^{q−1}∘μ^{p−1}) ∘ Perm(in)`.
    pub fn to_expression(&self) -> OpExpression {
        let ins: Vec<usize> = self.comps.iter().flat_map(|c| c.ins.iter().copied()).collect();
        let outs: Vec<usize> = self.comps.iter().flat_map(|c| c.outs.iter().copied()).collect();
        let pieces = self
            .comps
            .iter()
            .map(|c| OpExpression::Compose(vec![OpExpression::Coprod(c.outs.len()), OpExpression::Star(c.ins.len())]))
            .collect();
        OpExpression::Compose(vec![
            OpExpression::Perm(outs),
            OpExpression::Tensor(pieces),
            OpExpression::Perm(invert_perm(&ins)),
        ])
    }

    fn tensor(self, other: Network) -> Network {
        let (di, dout) = (self.inputs, self.outputs);
        let mut comps = self.comps;
        comps.extend(other.comps.into_iter().map(|c| Component {
            ins: c.ins.iter().map(|x| x + di).collect(),
            outs: c.outs.iter().map(|x| x + dout).collect(),
        }));
        Network { inputs: self.inputs + other.inputs, outputs: self.outputs + other.outputs, comps }.canonical()
    }

    /// `after ∘ self`, merging each connected group of components by the
    /// grid law `⊗_u μ^{|L|−1} ∘ shuffle ∘ ⊗_ℓ Δ^{|U|−1} = Δ^{|U|−1} ∘ μ^{|L|−1}`
    /// together with (co)associativity.
    fn then(self, after: Network) -> Result<Network, BialgError> {
        if self.outputs != after.inputs {
            return Err(BialgError::Arity(format!("{} outputs feed {} inputs", self.outputs, after.inputs)));
        }
        let nl = self.comps.len();
        let mut from_lower = vec![(0, 0); self.outputs];
        for (l, c) in self.comps.iter().enumerate() {
            for (s, &w) in c.outs.iter().enumerate() {
                from_lower[w] = (l, s);
            }
        }
        let mut into_upper = vec![(0, 0); after.inputs];
        for (u, c) in after.comps.iter().enumerate() {
            for (r, &w) in c.ins.iter().enumerate() {
                into_upper[w] = (u, r);
            }
        }
        let mut root: Vec<usize> = (0..nl + after.comps.len()).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for w in 0..self.outputs {
            let (a, b) = (find(&mut root, from_lower[w].0), find(&mut root, nl + into_upper[w].0));
            root[a] = b;
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for l in 0..nl {
            groups.entry(find(&mut root, l)).or_default().0.push(l);
        }
        for u in 0..after.comps.len() {
            groups.entry(find(&mut root, nl + u)).or_default().1.push(u);
        }
        let mut comps = Vec::with_capacity(groups.len());
        for (lowers, uppers) in groups.into_values() {
            // output slot s of lower ℓ goes to upper `targets[s]`
            let mut column_order: Option<Vec<usize>> = None;
            for &l in &lowers {
                let targets: Vec<usize> = self.comps[l].outs.iter().map(|&w| into_upper[w].0).collect();
                if targets.len() != uppers.len() || !distinct(&targets) {
                    return Err(BialgError::NoNormalForm(format!(
                        "a product-coproduct piece sends {} outputs to {} pieces",
                        targets.len(),
                        uppers.len()
                    )));
                }
                match &column_order {
                    None => column_order = Some(targets),
                    Some(c) if *c != targets => {
                        return Err(BialgError::NoNormalForm(format!("coproduct outputs ordered {c:?} and {targets:?}")));
                    }
                    _ => {}
                }
            }
            let mut row_order: Option<Vec<usize>> = None;
            for &u in &uppers {
                let sources: Vec<usize> = after.comps[u].ins.iter().map(|&w| from_lower[w].0).collect();
                if sources.len() != lowers.len() || !distinct(&sources) {
                    return Err(BialgError::NoNormalForm(format!(
                        "a product reads {} inputs from {} pieces",
                        sources.len(),
                        lowers.len()
                    )));
                }
                match &row_order {
                    None => row_order = Some(sources),
                    Some(r) if *r != sources => {
                        return Err(BialgError::NoNormalForm(format!("product inputs ordered {r:?} and {sources:?}")));
                    }
                    _ => {}
                }
            }
            let ins = row_order.unwrap().iter().flat_map(|&l| self.comps[l].ins.iter().copied()).collect();
            let outs = column_order.unwrap().iter().flat_map(|&u| after.comps[u].outs.iter().copied()).collect();
            comps.push(Component { ins, outs });
        }
        Ok(Network { inputs: self.inputs, outputs: after.outputs, comps }.canonical())
    }
}

fn distinct(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Rewrites an expression to its normal form, or reports why none exists.
pub fn normalize(e: &OpExpression) -> Result<Network, BialgError> {
    use OpExpression::*;
    e.arity()?;
    match e {
        Identity => Ok(Network::single(vec![0], vec![0])),
        Star(k) => Ok(Network::single((0..*k).collect(), vec![0])),
        Coprod(k) => Ok(Network::single(vec![0], (0..*k).collect())),
        Perm(s) => Ok(Network {
            inputs: s.len(),
            outputs: s.len(),
            comps: s.iter().enumerate().map(|(k, &t)| Component { ins: vec![k], outs: vec![t] }).collect(),
        }
        .canonical()),
        Compose(parts) => {
            let mut it = parts.iter().rev();
            let mut acc = normalize(it.next().unwrap())?;
            for p in it {
                acc = acc.then(normalize(p)?)?;
            }
            Ok(acc)
        }
        Tensor(parts) => {
            let mut acc = normalize(&parts[0])?;
            for p in &parts[1..] {
                acc = acc.tensor(normalize(p)?);
            }
            Ok(acc)
        }
    }
}

/// The grid expression realizing the blockwise composition of two basis
/// elements, one expression per output cell in row-major order.
pub fn composition_expressions(x: &AssocBasis, y: &AssocBasis) -> Result<(Profile, Vec<OpExpression>), BialgError> {
    let (px, py) = (&x.profile, &y.profile);
    let r = composite_profile(px, py).ok_or_else(|| EndError::Incomposable(px.to_string(), py.to_string()))?;
    let ranges = |groups: &[usize]| -> Vec<std::ops::Range<usize>> {
        let mut s = 0;
        groups
            .iter()
            .map(|&g| {
                s += g;
                s - g..s
            })
            .collect()
    };
    let rows = ranges(&py.lower);
    let cols = ranges(&px.upper);
    let mut exprs = Vec::with_capacity(r.cells());
    for (k, row) in rows.iter().enumerate() {
        for (l, col) in cols.iter().enumerate() {
            let (l1, l2) = (row.len(), col.len());
            let thetas = row.clone().map(|i| x.cell(i, l).expression()).collect();
            let psis = col.clone().map(|j| y.cell(k, j).expression()).collect();
            let shuffle = (0..l1 * l2).map(|pos| (pos % l2) * l1 + pos / l2).collect();
            exprs.push(OpExpression::Compose(vec![
                OpExpression::Tensor(psis),
                OpExpression::Perm(shuffle),
                OpExpression::Tensor(thetas),
            ]));
        }
    }
    Ok((r, exprs))
}

/// The composition in `Assoc`, computed by normalizing each output cell.
pub fn compose_assoc(x: &AssocBasis, y: &AssocBasis) -> Result<AssocBasis, BialgError> {
    let (profile, exprs) = composition_expressions(x, y)?;
    let cells = exprs.iter().map(|e| normalize(e)?.as_cell()).collect::<Result<_, _>>()?;
    AssocBasis::new(profile, cells)
}

/// Bilinear extension of [`compose_assoc`].
pub fn compose_elements(x: &AssocElement, y: &AssocElement) -> Result<AssocElement, BialgError> {
    let mut out = AssocElement::new();
    for (a, c) in x {
        for (b, d) in y {
            let e = out.entry(compose_assoc(a, b)?).or_insert_with(Rational::zero);
            *e += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;
    use OpExpression::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn group_algebra_is_a_bialgebra() {
        let b = BialgebraSpec::group_algebra_c2();
        assert!(check_bialgebra(&b).is_zero());
        assert!(b.is_commutative() && b.is_cocommutative());
        assert!(check_bialgebra(&BialgebraSpec::zero(1)).is_zero());
    }

    #[test]
    fn broken_product_is_detected() {
        let c2 = BialgebraSpec::group_algebra_c2();
        let mut mu = c2.mu().clone();
        // g⋆e = e
        mu.add_entry(vec![1, 0, 1], rat(-1, 1)).unwrap();
        mu.add_entry(vec![1, 0, 0], rat(1, 1)).unwrap();
        let b = BialgebraSpec::new(mu, c2.delta().clone()).unwrap();
        let d = check_bialgebra(&b);
        assert!(!d.assoc.is_zero());
        assert_eq!(d.witness().unwrap().0, "assoc");
    }

    #[test]
    fn iterates() {
        let b = BialgebraSpec::group_algebra_c2();
        // g⋆g⋆g = g
        assert_eq!(b.star(3).get(&[1, 1, 1, 1]), rat(1, 1));
        assert_eq!(b.coprod(3).get(&[1, 1, 1, 1]), rat(1, 1));
        assert_eq!(b.star(1), HomTensor::identity(2));
    }

    #[test]
    fn cell_evaluation() {
        let b = BialgebraSpec::group_algebra_c2();
        let mu = AssocBasis::identity(&p("(2);(1)")).eval(&b).unwrap();
        assert_eq!(&mu, b.mu());
        let swapped = AssocBasis::new(p("(2);(1)"), vec![CellPerm { input: vec![1, 0], output: vec![0] }]).unwrap();
        assert_eq!(&swapped.eval(&b).unwrap(), b.mu());
        let co = AssocBasis::new(p("(1);(2)"), vec![CellPerm { input: vec![0], output: vec![1, 0] }]).unwrap();
        assert_eq!(&co.eval(&b).unwrap(), b.delta());
    }

    #[test]
    fn normal_forms() {
        let n = normalize(&Compose(vec![Star(2), Tensor(vec![Star(2), Identity])])).unwrap();
        assert_eq!(n.as_cell().unwrap(), CellPerm::identity(3, 1));
        let n = normalize(&Compose(vec![Coprod(2), Star(2)])).unwrap();
        assert_eq!(n.as_cell().unwrap(), CellPerm::identity(2, 2));
        let grid = Compose(vec![
            Tensor(vec![Star(2), Star(2)]),
            Perm(vec![0, 2, 1, 3]),
            Tensor(vec![Coprod(2), Coprod(2)]),
        ]);
        assert_eq!(normalize(&grid).unwrap(), n);
        assert!(matches!(normalize(&Compose(vec![Star(2), Coprod(2)])), Err(BialgError::NoNormalForm(_))));
        assert!(normalize(&Compose(vec![Star(2), Star(2)])).is_err());
        assert_eq!(normalize(&Tensor(vec![Star(2), Star(2)])).unwrap().comps.len(), 2);
    }

    #[test]
    fn normalization_is_idempotent_and_sound() {
        let b = BialgebraSpec::group_algebra_c2();
        let exprs = [
            Compose(vec![Perm(vec![1, 0]), Coprod(2), Star(3), Perm(vec![2, 0, 1])]),
            Compose(vec![Tensor(vec![Identity, Coprod(2)]), Coprod(2), Star(2), Tensor(vec![Star(2), Identity])]),
            Tensor(vec![Star(2), Perm(vec![1, 0])]),
        ];
        for e in exprs {
            let n = normalize(&e).unwrap();
            assert_eq!(normalize(&n.to_expression()).unwrap(), n);
            assert_eq!(n.to_expression().eval(&b).unwrap(), e.eval(&b).unwrap());
        }
    }

    #[test]
    fn composing_the_two_interval_endpoints() {
        let x = AssocBasis::identity(&p("(2);(1)"));
        let y = AssocBasis::identity(&p("(1);(2)"));
        assert_eq!(compose_assoc(&x, &y).unwrap(), AssocBasis::identity(&p("(2);(2)")));
        let xx = AssocBasis::identity(&p("(1,1);(2)"));
        let yy = AssocBasis::identity(&p("(2);(1,1)"));
        assert_eq!(compose_assoc(&xx, &yy).unwrap(), AssocBasis::identity(&p("(2);(2)")));
    }

    #[test]
    fn per_cell_permutations_can_leave_assoc() {
        // swap∘Δ beside Δ, followed by μ⊗μ: v₍₂₎w₍₁₎ ⊗ v₍₁₎w₍₂₎
        let x = AssocBasis::new(
            p("(1,1);(2)"),
            vec![CellPerm { input: vec![0], output: vec![1, 0] }, CellPerm::identity(1, 2)],
        )
        .unwrap();
        let y = AssocBasis::identity(&p("(2);(1,1)"));
        assert!(!x.is_block_uniform());
        assert!(matches!(compose_assoc(&x, &y), Err(BialgError::NoNormalForm(_))));
    }

    #[test]
    fn restrictions() {
        let a = AssocBasis::all(&p("(2,3);(2)")).into_iter().nth(17).unwrap();
        let r = a.restrict(Block::Lower(0)).unwrap();
        assert_eq!(r.profile, p("(3);(2)"));
        assert_eq!(r.cells[0], *a.cell(1, 0));
        let big = AssocBasis::all(&p("(1,2);(2,1)")).into_iter().nth(5).unwrap();
        let one = big.restrict(Block::Lower(0)).unwrap().restrict(Block::Upper(1)).unwrap();
        let two = big.restrict(Block::Upper(1)).unwrap().restrict(Block::Lower(0)).unwrap();
        assert_eq!(one, two);
        assert!(a.restrict(Block::Upper(0)).is_err());
    }

    #[test]
    fn binary_search_finds_an_asymmetric_bialgebra() {
        let b = asymmetric_candidate().unwrap();
        assert!(check_bialgebra(&b).is_zero());
        assert!(!b.is_commutative() && !b.is_cocommutative());
    }

    #[test]
    fn json_round_trip() {
        let b = BialgebraSpec::group_algebra_c2();
        let j = serde_json::to_string(&b).unwrap();
        assert!(j.starts_with(r#"{"dim":2,"mu":[[0,0,0,"1"]"#));
        let back: BialgebraSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<BialgebraSpec>(r#"{"dim":2,"mu":[[0,0,2,"1"]],"delta":[]}"#).is_err());
    }
}
