use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{GapIndex, Profile, StrataError};

/// A stratum of the compactified space of `profile`.
///
/// `levels[k]` is the scale at which the `k`-th gap (in [`Profile::gaps`]
/// order) has finite length. A lower-line gap at level `v` behaves like
/// `t^{-v}`, an upper-line gap at level `w` like `t^{w}`. Levels are
/// canonical: their image is exactly `{0, …, d−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumType {
    profile: Profile,
    levels: Vec<usize>,
}

/// The grouping of visible points at one scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub scale: usize,
    pub profile: Profile,
}

fn is_canonical(levels: &[usize]) -> bool {
    let Some(&max) = levels.iter().max() else { return false };
    let mut seen = vec![false; max + 1];
    for &l in levels {
        seen[l] = true;
    }
    seen.into_iter().all(|s| s)
}

impl StratumType {
    pub fn new(profile: Profile, levels: Vec<usize>) -> Result<Self, StrataError> {
        if levels.len() != profile.gap_count() {
            return Err(StrataError::LevelCount { expected: profile.gap_count(), got: levels.len() });
        }
        if !is_canonical(&levels) {
            return Err(StrataError::NotCanonical(levels));
        }
        Ok(StratumType { profile, levels })
    }

    /// The open stratum: every gap finite at scale 0.
    pub fn open(profile: &Profile) -> Result<Self, StrataError> {
        profile.dim_geometric()?;
        Ok(StratumType { profile: profile.clone(), levels: vec![0; profile.gap_count()] })
    }

    /// Canonicalizes arbitrary integer levels by order-preserving relabeling.
    pub fn from_raw_levels(profile: Profile, raw: &[i64]) -> Result<Self, StrataError> {
        let mut distinct: Vec<i64> = raw.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let levels = raw.iter().map(|v| distinct.binary_search(v).unwrap()).collect();
        Self::new(profile, levels)
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Number of distinct scales `d`.
    pub fn scale_count(&self) -> usize {
        self.levels.iter().max().map_or(0, |m| m + 1)
    }

    /// `(gap count) − d`.
    pub fn dim(&self) -> usize {
        self.levels.len() - self.scale_count()
    }

    pub fn level_of(&self, gap: &GapIndex) -> Option<usize> {
        self.profile.gaps().iter().position(|g| g == gap).map(|k| self.levels[k])
    }

    /// The visible profile at `scale`.
    ///
    /// Lower line: gaps above the scale collapse, gaps below it separate
    /// groups. Upper line: the reverse. Original groups never merge.
    pub fn snapshot_profile(&self, scale: usize) -> Profile {
        let lower_gaps = self.profile.lower_gap_count();
        let (lo, up) = self.levels.split_at(lower_gaps);
        let lower = visible_blocks(&self.profile.lower, lo, |l| match l.cmp(&scale) {
            Ordering::Less => Visible::Separate,
            Ordering::Equal => Visible::Finite,
            Ordering::Greater => Visible::Collapse,
        });
        let upper = visible_blocks(&self.profile.upper, up, |l| match l.cmp(&scale) {
            Ordering::Greater => Visible::Separate,
            Ordering::Equal => Visible::Finite,
            Ordering::Less => Visible::Collapse,
        });
        Profile { lower, upper }
    }

    /// One snapshot per scale, ordered by increasing scale.
    pub fn snapshots(&self) -> Vec<Snapshot> {
        (0..self.scale_count()).map(|c| Snapshot { scale: c, profile: self.snapshot_profile(c) }).collect()
    }

    /// Indices (into the gap list) of the gaps finite at `scale`.
    pub fn gaps_at(&self, scale: usize) -> Vec<usize> {
        (0..self.levels.len()).filter(|&k| self.levels[k] == scale).collect()
    }

    /// Strata one scale finer whose levels merge back to `self` along one
    /// adjacent pair, in canonical order.
    pub fn boundary_incidences(&self) -> Vec<StratumType> {
        let mut out = Vec::new();
        for c in 0..self.scale_count() {
            let at = self.gaps_at(c);
            let k = at.len();
            if k < 2 {
                continue;
            }
            for mask in 1..(1u64 << k) - 1 {
                let mut levels: Vec<usize> = self.levels.iter().map(|&l| if l > c { l + 1 } else { l }).collect();
                for (bit, &g) in at.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        levels[g] = c + 1;
                    }
                }
                out.push(StratumType { profile: self.profile.clone(), levels });
            }
        }
        out.sort_by(canonical_cmp);
        out
    }

    /// If `finer` splits exactly one scale `c` of `self`, returns `c` and the
    /// two-scale stratum of the scale-`c` snapshot describing the split.
    pub fn split_of(&self, finer: &StratumType) -> Option<(usize, StratumType)> {
        if finer.profile != self.profile || finer.scale_count() != self.scale_count() + 1 {
            return None;
        }
        for c in 0..self.scale_count() {
            let merged: Vec<usize> = finer.levels.iter().map(|&l| if l > c { l - 1 } else { l }).collect();
            if merged == self.levels {
                let sub: Vec<usize> = self.gaps_at(c).iter().map(|&g| finer.levels[g] - c).collect();
                let q = self.snapshot_profile(c);
                return StratumType::new(q, sub).ok().map(|s| (c, s));
            }
        }
        None
    }
}

enum Visible {
    Separate,
    Finite,
    Collapse,
}

fn visible_blocks(groups: &[usize], levels: &[usize], class: impl Fn(usize) -> Visible) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 0;
    for &size in groups {
        let mut current = 1;
        for _ in 0..size - 1 {
            match class(levels[k]) {
                Visible::Separate => {
                    out.push(current);
                    current = 1;
                }
                Visible::Finite => current += 1,
                Visible::Collapse => {}
            }
            k += 1;
        }
        out.push(current);
    }
    out
}

/// Canonical order: by scale count, then lexicographically on levels.
pub fn canonical_cmp(a: &StratumType, b: &StratumType) -> Ordering {
    (a.scale_count(), &a.levels).cmp(&(b.scale_count(), &b.levels))
}

impl PartialOrd for StratumType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StratumType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.profile.cmp(&other.profile).then_with(|| canonical_cmp(self, other))
    }
}

/// All strata of `profile` with exactly `d` scales, in canonical order.
pub fn strata_with_scales(profile: &Profile, d: usize) -> Vec<StratumType> {
    let g = profile.gap_count();
    let mut out = Vec::new();
    if d == 0 || d > g {
        return out;
    }
    let mut levels = vec![0usize; g];
    loop {
        if levels.iter().max() == Some(&(d - 1)) && is_canonical(&levels) {
            out.push(StratumType { profile: profile.clone(), levels: levels.clone() });
        }
        // lexicographic increment in base d
        let mut i = g;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if levels[i] + 1 < d {
                levels[i] += 1;
                for l in &mut levels[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// Every stratum of the compactified space, in canonical order.
pub fn enumerate_strata(profile: &Profile) -> Result<Vec<StratumType>, StrataError> {
    profile.dim_geometric()?;
    Ok((1..=profile.gap_count()).flat_map(|d| strata_with_scales(profile, d)).collect())
}

/// A codimension-one stratum with its scale-0 and scale-1 snapshot profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimOne {
    pub stratum: StratumType,
    pub factor0: Profile,
    pub factor1: Profile,
}

pub fn codim1_strata(profile: &Profile) -> Result<Vec<CodimOne>, StrataError> {
    if profile.dim_geometric()? < 1 {
        return Err(StrataError::TooSmall(profile.to_string()));
    }
    Ok(strata_with_scales(profile, 2)
        .into_iter()
        .map(|s| CodimOne { factor0: s.snapshot_profile(0), factor1: s.snapshot_profile(1), stratum: s })
        .collect())
}

/// The ambient profile of a composable pair; `None` when shapes do not match.
///
/// `first` supplies the refined lower blocks and `second` the refined upper
/// blocks, exactly as in the CROC composition.
pub fn composite_profile(first: &Profile, second: &Profile) -> Option<Profile> {
    if first.lower.len() != second.lower.iter().sum::<usize>()
        || second.upper.len() != first.upper.iter().sum::<usize>()
    {
        return None;
    }
    Some(Profile { lower: group_sums(&first.lower, &second.lower), upper: group_sums(&second.upper, &first.upper) })
}

/// Sums consecutive runs of `blocks` with run lengths `by`.
fn group_sums(blocks: &[usize], by: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(by.len());
    let mut k = 0;
    for &len in by {
        out.push(blocks[k..k + len].iter().sum());
        k += len;
    }
    out
}

/// The unique two-scale stratum whose scale-1 snapshot is `first` and whose
/// scale-0 snapshot is `second`, together with its ambient profile.
pub fn find_product_stratum(first: &Profile, second: &Profile) -> Option<(Profile, StratumType)> {
    let ambient = composite_profile(first, second)?;
    let mut levels = Vec::with_capacity(ambient.gap_count());
    // lower line: the ambient group k is made of the `second.lower[k]` blocks of `first`
    let mut i = 0;
    for &count in &second.lower {
        for (b, &size) in first.lower[i..i + count].iter().enumerate() {
            if b > 0 {
                levels.push(0);
            }
            levels.extend(std::iter::repeat(1).take(size - 1));
        }
        i += count;
    }
    let mut j = 0;
    for &count in &first.upper {
        for (b, &size) in second.upper[j..j + count].iter().enumerate() {
            if b > 0 {
                levels.push(1);
            }
            levels.extend(std::iter::repeat(0).take(size - 1));
        }
        j += count;
    }
    let s = StratumType::new(ambient.clone(), levels).ok()?;
    (s.scale_count() == 2).then_some((ambient, s))
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    line: u8,
    group: usize,
    pos: usize,
    level: usize,
}

#[derive(Serialize, Deserialize)]
struct StratumJson {
    profile: Profile,
    levels: Vec<LevelJson>,
}

impl Serialize for StratumType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let levels = self
            .profile
            .gaps()
            .into_iter()
            .zip(&self.levels)
            .map(|(g, &level)| LevelJson { line: g.line, group: g.group, pos: g.position, level })
            .collect();
        StratumJson { profile: self.profile.clone(), levels }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StratumType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = StratumJson::deserialize(d)?;
        let profile = Profile::new(j.profile.lower, j.profile.upper).map_err(D::Error::custom)?;
        let gaps = profile.gaps();
        let mut levels = vec![None; gaps.len()];
        for l in j.levels {
            let g = GapIndex { line: l.line, group: l.group, position: l.pos };
            let k = gaps.iter().position(|x| *x == g).ok_or_else(|| D::Error::custom(format!("no gap {g:?}")))?;
            levels[k] = Some(l.level);
        }
        let levels: Option<Vec<usize>> = levels.into_iter().collect();
        let levels = levels.ok_or_else(|| D::Error::custom("missing gap level"))?;
        StratumType::new(profile, levels).map_err(D::Error::custom)
    }
}
