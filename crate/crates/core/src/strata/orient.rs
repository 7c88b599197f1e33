//! Orientation signs for codimension-one strata.
//!
//! Every closed stratum is a product of lower-dimensional compactified
//! spaces, one per scale, and it is oriented as the product of its
//! snapshots taken in decreasing scale order. Only one family of signs is
//! then free: `ε(Q; t)`, the sign with which a two-scale stratum `t`
//! appears in the boundary of the open cell of `Q`. Requiring `∂² = 0` on
//! the open cell gives one equation per three-scale stratum, relating the
//! signs of `Q` to signs of strictly smaller profiles. The table solves
//! these equations profile by profile on a spanning forest.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{strata_with_scales, Profile, StrataError, StratumType};

/// Selects the orientation of each space. The default gauge gives the first
/// stratum of each connected component of the constraint graph (in
/// canonical order) the sign `(−1)^k`, `k` the component index; a seeded
/// gauge reverses the orientation of each profile pseudo-randomly.
///
/// Reversing the orientation of a single space is a symmetry of the whole
/// system, so every gauge is consistent whenever the default one is.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Gauge {
    pub seed: Option<u64>,
}

/// Signs `ε(Q; t)` for one profile, keyed by the levels of `t`.
pub type ProfileSigns = BTreeMap<Vec<usize>, i8>;

/// One equation `ε(Q; a) · ε(Q; b) = value`.
#[derive(Debug, Clone)]
struct Edge {
    a: usize,
    b: usize,
    value: i8,
    via: Vec<usize>,
}

/// Memoized solver for the orientation signs of every profile.
#[derive(Debug, Default)]
pub struct OrientationTable {
    gauge: Gauge,
    cache: RefCell<HashMap<Profile, Rc<ProfileSigns>>>,
}

fn profile_hash(p: &Profile) -> u64 {
    // FNV-1a on the display form, stable across runs
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in p.to_string().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn parity(n: i64) -> i8 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl OrientationTable {
    pub fn new(gauge: Gauge) -> Self {
        OrientationTable { gauge, cache: RefCell::default() }
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    /// `ε(Q; t)` for a two-scale stratum `t` of `Q`.
    pub fn sign(&self, t: &StratumType) -> Result<i8, StrataError> {
        if t.scale_count() != 2 {
            return Err(StrataError::NotCodimOne(t.levels().to_vec()));
        }
        let signs = self.signs(t.profile())?;
        Ok(signs[t.levels()])
    }

    /// `ε` of the product stratum whose scale-1 snapshot is `first` and
    /// scale-0 snapshot is `second`.
    pub fn product_sign(&self, first: &Profile, second: &Profile) -> Result<Option<(Profile, i8)>, StrataError> {
        match super::find_product_stratum(first, second) {
            Some((amb, s)) => Ok(Some((amb, self.sign(&s)?))),
            None => Ok(None),
        }
    }

    /// Coefficient of `finer` in the boundary of `coarser`: if `finer`
    /// splits scale `c`, the sign is `(−1)^{Σ_{c' > c} dim Q_{c'}}` times
    /// `ε` of the split inside the scale-`c` snapshot.
    pub fn incidence(&self, coarser: &StratumType, finer: &StratumType) -> Result<i8, StrataError> {
        let (c, sub) = coarser
            .split_of(finer)
            .ok_or_else(|| StrataError::NotIncident(coarser.levels().to_vec(), finer.levels().to_vec()))?;
        let above: i64 = (c + 1..coarser.scale_count()).map(|k| coarser.snapshot_profile(k).dim()).sum();
        Ok(parity(above) * self.sign(&sub)?)
    }

    /// All signs of `q`, solving (and caching) smaller profiles on demand.
    pub fn signs(&self, q: &Profile) -> Result<Rc<ProfileSigns>, StrataError> {
        if let Some(s) = self.cache.borrow().get(q) {
            return Ok(Rc::clone(s));
        }
        let solved = Rc::new(self.solve(q)?);
        self.cache.borrow_mut().insert(q.clone(), Rc::clone(&solved));
        Ok(solved)
    }

    fn equations(&self, q: &Profile, nodes: &[StratumType]) -> Result<Vec<Edge>, StrataError> {
        let index: HashMap<&[usize], usize> = nodes.iter().enumerate().map(|(i, s)| (s.levels(), i)).collect();
        let mut edges = Vec::new();
        if nodes.len() == 2 && q.gap_count() == 2 {
            // an interval: its two endpoints enter with opposite signs
            edges.push(Edge { a: 0, b: 1, value: -1, via: Vec::new() });
        }
        for t in strata_with_scales(q, 3) {
            let merge = |f: fn(usize) -> usize| -> StratumType {
                let levels = t.levels().iter().map(|&l| f(l)).collect();
                StratumType::new(q.clone(), levels).expect("merged levels stay canonical")
            };
            let ta = merge(|l| l.min(1));
            let tb = merge(|l| l.saturating_sub(1));
            let (ca, sub_a) = ta.split_of(&t).expect("t splits the upper scale of ta");
            let (cb, sub_b) = tb.split_of(&t).expect("t splits the lower scale of tb");
            debug_assert_eq!((ca, cb), (1, 0));
            let dim_x = t.snapshot_profile(2).dim();
            let value = -parity(dim_x) * self.sign(&sub_a)? * self.sign(&sub_b)?;
            edges.push(Edge { a: index[ta.levels()], b: index[tb.levels()], value, via: t.levels().to_vec() });
        }
        Ok(edges)
    }

    fn solve(&self, q: &Profile) -> Result<ProfileSigns, StrataError> {
        q.dim_geometric()?;
        let nodes = strata_with_scales(q, 2);
        let edges = self.equations(q, &nodes)?;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            adj[e.a].push(k);
            adj[e.b].push(k);
        }
        let flip = match self.gauge.seed {
            Some(seed) if ChaCha8Rng::seed_from_u64(seed ^ profile_hash(q)).gen::<bool>() => -1,
            _ => 1,
        };
        let mut sign: Vec<i8> = vec![0; nodes.len()];
        let mut parent: Vec<Option<usize>> = vec![None; nodes.len()];
        let mut depth = vec![0usize; nodes.len()];
        let mut component = 0i64;
        for root in 0..nodes.len() {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = flip * parity(component);
            component += 1;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &k in &adj[u] {
                    let e = &edges[k];
                    let v = if e.a == u { e.b } else { e.a };
                    if sign[v] == 0 {
                        sign[v] = e.value * sign[u];
                        parent[v] = Some(u);
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        for e in &edges {
            if sign[e.a] * sign[e.b] != e.value {
                let cycle = tree_cycle(e.a, e.b, &parent, &depth);
                return Err(StrataError::InconsistentSigns {
                    profile: q.to_string(),
                    closing: e.via.clone(),
                    cycle: cycle.into_iter().map(|i| nodes[i].levels().to_vec()).collect(),
                });
            }
        }
        Ok(nodes.into_iter().zip(sign).map(|(n, s)| (n.levels().to_vec(), s)).collect())
    }

    /// Connected components of the constraint graph of `q`.
    pub fn components(&self, q: &Profile) -> Result<usize, StrataError> {
        let nodes = strata_with_scales(q, 2);
        let edges = self.equations(q, &nodes)?;
        let mut root: Vec<usize> = (0..nodes.len()).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        let mut count = nodes.len();
        for e in &edges {
            let (a, b) = (find(&mut root, e.a), find(&mut root, e.b));
            if a != b {
                root[a] = b;
                count -= 1;
            }
        }
        Ok(count)
    }

    /// Number of equations of `q` violated by its cached signs; always zero
    /// for a successfully solved profile.
    pub fn violations(&self, q: &Profile) -> Result<usize, StrataError> {
        let signs = self.signs(q)?;
        let nodes = strata_with_scales(q, 2);
        let edges = self.equations(q, &nodes)?;
        Ok(edges
            .iter()
            .filter(|e| signs[nodes[e.a].levels()] * signs[nodes[e.b].levels()] != e.value)
            .count())
    }
}

fn tree_cycle(mut a: usize, mut b: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn interval_endpoints_have_opposite_signs() {
        let t = OrientationTable::default();
        let s = t.signs(&p("(2);(2)")).unwrap();
        assert_eq!(s[&vec![0, 1]], 1);
        assert_eq!(s[&vec![1, 0]], -1);
        for q in Profile::geometric_up_to(7).into_iter().filter(|q| q.dim() == 1) {
            let s = t.signs(&q).unwrap();
            assert_eq!(s.values().sum::<i8>(), 0, "{q}");
        }
    }

    #[test]
    fn every_small_profile_is_solvable() {
        for seed in [None, Some(3), Some(17)] {
            let t = OrientationTable::new(Gauge { seed });
            for q in Profile::geometric_up_to(7).into_iter().filter(|q| q.dim() >= 1) {
                t.signs(&q).unwrap_or_else(|e| panic!("{q}: {e}"));
                assert_eq!(t.violations(&q).unwrap(), 0);
                assert_eq!(t.components(&q).unwrap(), 1, "{q}");
            }
        }
    }

    #[test]
    fn cycle_helper_closes_up() {
        // 0 - 1 - 2 and 0 - 3
        let parent = [None, Some(0), Some(1), Some(0)];
        let depth = [0, 1, 2, 1];
        assert_eq!(tree_cycle(2, 3, &parent, &depth), vec![2, 1, 0, 3]);
    }
}
