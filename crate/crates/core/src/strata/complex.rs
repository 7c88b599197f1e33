use std::collections::HashMap;
use std::fmt::Write as _;

use crate::qlinalg::{rat, ChainComplex, Direction, SparseMatrix};

use super::{enumerate_strata, OrientationTable, Profile, StrataError, StratumType};

/// The face poset of one compactified space, with signed covering relations.
#[derive(Debug, Clone)]
pub struct StrataPoset {
    pub profile: Profile,
    /// All strata in canonical order.
    pub strata: Vec<StratumType>,
    /// `(coarser, finer, sign)` for each codimension-one face relation.
    pub covers: Vec<(usize, usize, i8)>,
}

impl StrataPoset {
    pub fn build(profile: &Profile, table: &OrientationTable) -> Result<Self, StrataError> {
        let strata = enumerate_strata(profile)?;
        let index: HashMap<&[usize], usize> = strata.iter().enumerate().map(|(i, s)| (s.levels(), i)).collect();
        let mut covers = Vec::new();
        for (i, s) in strata.iter().enumerate() {
            for t in s.boundary_incidences() {
                covers.push((i, index[t.levels()], table.incidence(s, &t)?));
            }
        }
        Ok(StrataPoset { profile: profile.clone(), strata, covers })
    }

    /// Checks that every interval of length two has exactly two middle
    /// elements, returning the first offending pair otherwise.
    pub fn check_diamonds(&self) -> Result<(), StrataError> {
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); self.strata.len()];
        for &(a, b, _) in &self.covers {
            down[a].push(b);
        }
        for a in 0..self.strata.len() {
            let mut middles: HashMap<usize, usize> = HashMap::new();
            for &m in &down[a] {
                for &b in &down[m] {
                    *middles.entry(b).or_default() += 1;
                }
            }
            if let Some((&b, &n)) = middles.iter().filter(|(_, &n)| n != 2).min() {
                return Err(StrataError::DiamondFailure {
                    upper: self.strata[a].levels().to_vec(),
                    lower: self.strata[b].levels().to_vec(),
                    middles: n,
                });
            }
        }
        Ok(())
    }

    /// Graphviz rendering: one node per stratum, one edge per face relation
    /// labeled by its sign.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n");
        for (i, s) in self.strata.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{} / {:?} / {}\"];", self.profile, s.levels(), s.dim());
        }
        for &(a, b, sign) in &self.covers {
            let label = if sign > 0 { "+" } else { "-" };
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"{label}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Cellular chain complex of the compactified space of `profile`: degree `k`
/// has one generator per stratum of dimension `k`, in canonical order.
pub fn chain_complex(profile: &Profile, table: &OrientationTable) -> Result<ChainComplex, StrataError> {
    let poset = StrataPoset::build(profile, table)?;
    let top = profile.dim_geometric()?;
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut position = vec![0; poset.strata.len()];
    for (i, s) in poset.strata.iter().enumerate() {
        position[i] = by_dim[s.dim()].len();
        by_dim[s.dim()].push(i);
    }
    let ranks = (0..=top).map(|k| (k as i64, by_dim[k].len())).collect();
    let mut boundaries = std::collections::BTreeMap::new();
    for k in 1..=top {
        let mut m = SparseMatrix::zeros(by_dim[k - 1].len(), by_dim[k].len());
        for &(a, b, sign) in &poset.covers {
            if poset.strata[a].dim() == k {
                m.add_to(position[b], position[a], rat(sign as i64, 1)).expect("indices in range");
            }
        }
        boundaries.insert(k as i64, m);
    }
    Ok(ChainComplex::new(Direction::Homological, ranks, boundaries).expect("shapes are consistent"))
}
