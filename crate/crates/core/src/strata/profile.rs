use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StrataError;

/// Block sizes on the two lines: `lower` are the groups on the line dilated
/// by λ, `upper` the groups on the line dilated by λ⁻¹.
///
/// A `Profile` indexes both a configuration space and a component of a
/// CROC. Only profiles with at least one gap are geometric spaces; the
/// others (all blocks of size one, e.g. the unit `(1);(1)`) are valid CROC
/// indices but have no compactification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// One adjacent pair of points inside a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapIndex {
    /// 1 for the lower line, 2 for the upper line.
    pub line: u8,
    pub group: usize,
    #[serde(rename = "pos")]
    pub position: usize,
}

impl Profile {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Result<Self, StrataError> {
        if lower.is_empty() || upper.is_empty() || lower.iter().chain(&upper).any(|&b| b == 0) {
            return Err(StrataError::InvalidProfile(format!("{lower:?};{upper:?}")));
        }
        Ok(Profile { lower, upper })
    }

    /// Builds a profile that must have at least one gap.
    pub fn geometric(lower: Vec<usize>, upper: Vec<usize>) -> Result<Self, StrataError> {
        let p = Self::new(lower, upper)?;
        if !p.is_geometric() {
            return Err(StrataError::NoGaps(p.to_string()));
        }
        Ok(p)
    }

    /// `((m);(n))`, the space of `m` and `n` points on a single pair of lines.
    pub fn single(m: usize, n: usize) -> Self {
        Profile { lower: vec![m], upper: vec![n] }
    }

    pub fn unit() -> Self {
        Self::single(1, 1)
    }

    pub fn points(&self) -> usize {
        self.lower.iter().sum::<usize>() + self.upper.iter().sum::<usize>()
    }

    pub fn gap_count(&self) -> usize {
        self.points() - self.lower.len() - self.upper.len()
    }

    pub fn is_geometric(&self) -> bool {
        self.gap_count() >= 1
    }

    /// `Σm + Σn − ℓ₁ − ℓ₂ − 1`; may be `-1` for non-geometric profiles.
    pub fn dim(&self) -> i64 {
        self.gap_count() as i64 - 1
    }

    /// The geometric dimension, rejecting gap-free profiles.
    pub fn dim_geometric(&self) -> Result<usize, StrataError> {
        if !self.is_geometric() {
            return Err(StrataError::NoGaps(self.to_string()));
        }
        Ok(self.gap_count() - 1)
    }

    /// Gaps in canonical order: lower line before upper, groups left to right.
    pub fn gaps(&self) -> Vec<GapIndex> {
        let mut out = Vec::with_capacity(self.gap_count());
        for (line, blocks) in [(1u8, &self.lower), (2u8, &self.upper)] {
            for (group, &size) in blocks.iter().enumerate() {
                for position in 0..size - 1 {
                    out.push(GapIndex { line, group, position });
                }
            }
        }
        out
    }

    /// Number of lower-line gaps (they come first in [`gaps`](Self::gaps)).
    pub fn lower_gap_count(&self) -> usize {
        self.lower.iter().map(|b| b - 1).sum()
    }

    /// Number of grid cells `ℓ₁·ℓ₂`.
    pub fn cells(&self) -> usize {
        self.lower.len() * self.upper.len()
    }

    /// All profiles (geometric or not) with the given total number of points.
    pub fn all_with_points(points: usize) -> Vec<Profile> {
        let mut out = Vec::new();
        for a in 1..points {
            for lower in compositions(a) {
                for upper in compositions(points - a) {
                    out.push(Profile { lower: lower.clone(), upper });
                }
            }
        }
        out
    }

    /// All geometric profiles with at most `max_points` points, ordered by
    /// point count then lexicographically.
    pub fn geometric_up_to(max_points: usize) -> Vec<Profile> {
        let mut out = Vec::new();
        for n in 3..=max_points {
            let mut ps: Vec<_> = Self::all_with_points(n).into_iter().filter(Profile::is_geometric).collect();
            ps.sort();
            out.extend(ps);
        }
        out
    }
}

/// Ordered compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({});({})", join(&self.lower), join(&self.upper))
    }
}

impl FromStr for Profile {
    type Err = StrataError;

    /// Grammar: `(m1,m2,…);(n1,n2,…)`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = |tok: &str| StrataError::Parse { input: s.to_string(), token: tok.to_string() };
        let (lo, up) = compact.split_once(';').ok_or_else(|| parse_err(&compact))?;
        let seq = |part: &str| -> Result<Vec<usize>, StrataError> {
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| parse_err(part))?;
            inner
                .split(',')
                .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| parse_err(t)))
                .collect()
        };
        Profile::new(seq(lo)?, seq(up)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Profile::single(2, 2).dim_geometric().unwrap(), 1);
        assert_eq!("(1,1);(2)".parse::<Profile>().unwrap().dim_geometric().unwrap(), 0);
        assert_eq!(Profile::single(3, 4).dim_geometric().unwrap(), 4);
        assert!(Profile::unit().dim_geometric().is_err());
        assert!(Profile::geometric(vec![1, 1], vec![1]).is_err());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let p: Profile = " ( 2 , 1 ) ; ( 3 ) ".parse().unwrap();
        assert_eq!(p, Profile { lower: vec![2, 1], upper: vec![3] });
        assert_eq!(p.to_string(), "(2,1);(3)");
        match "(2,x);(1)".parse::<Profile>() {
            Err(StrataError::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        assert!("(2);(0)".parse::<Profile>().is_err());
        assert!("(2)(1)".parse::<Profile>().is_err());
    }

    #[test]
    fn gap_order() {
        let p: Profile = "(2,3);(2)".parse().unwrap();
        let g = p.gaps();
        assert_eq!(g.len(), 4);
        assert_eq!(g[0], GapIndex { line: 1, group: 0, position: 0 });
        assert_eq!(g[2], GapIndex { line: 1, group: 1, position: 1 });
        assert_eq!(g[3], GapIndex { line: 2, group: 0, position: 0 });
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4).len(), 8);
        // profiles with 3 points: (1);(2), (2);(1), (1,1);(1), (1);(1,1)
        assert_eq!(Profile::all_with_points(3).len(), 4);
    }
}
