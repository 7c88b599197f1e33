//! Configurations with Laurent-polynomial coordinates in a large parameter
//! `t`, and the stratum they degenerate to as `t → ∞`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GapIndex, Profile, StrataError, StratumType};
use crate::qlinalg::{parse_rational, Rational};

/// A finite Laurent polynomial `Σ c_e t^e`. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        let v = self.terms.entry(e).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent and its coefficient.
    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Multiplication by `r t^c`.
    pub fn scale(&self, r: &Rational, c: i64) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e + c, v * r);
        }
        out
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let terms = Vec::<(i64, String)>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, parse_rational(&c).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

/// Point positions per block on the two lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentConfiguration {
    pub profile: Profile,
    pub lower: Vec<Vec<LaurentPoly>>,
    pub upper: Vec<Vec<LaurentPoly>>,
}

impl LaurentConfiguration {
    pub fn new(profile: Profile, lower: Vec<Vec<LaurentPoly>>, upper: Vec<Vec<LaurentPoly>>) -> Result<Self, StrataError> {
        let shape = |blocks: &Vec<Vec<LaurentPoly>>| blocks.iter().map(Vec::len).collect::<Vec<_>>();
        if shape(&lower) != profile.lower || shape(&upper) != profile.upper {
            return Err(StrataError::InvalidProfile(format!("configuration does not fit {profile}")));
        }
        Ok(LaurentConfiguration { profile, lower, upper })
    }

    /// The stratum the configuration converges to.
    ///
    /// Each adjacent difference must have a positive leading coefficient. A
    /// lower-line difference of leading order `t^a` gets raw level `−a`, an
    /// upper-line one raw level `a`; the raw levels are then relabeled to
    /// `0, …, d−1` preserving order.
    pub fn classify(&self) -> Result<StratumType, StrataError> {
        let mut raw = Vec::with_capacity(self.profile.gap_count());
        for (line, blocks, sign) in [(1u8, &self.lower, -1i64), (2u8, &self.upper, 1)] {
            for (group, block) in blocks.iter().enumerate() {
                for (position, w) in block.windows(2).enumerate() {
                    let gap = GapIndex { line, group, position };
                    let diff = w[1].sub(&w[0]);
                    let (e, c) = diff.leading().ok_or(StrataError::Collapsing(gap))?;
                    if !c.is_positive() {
                        return Err(StrataError::Unordered(gap));
                    }
                    raw.push(sign * e);
                }
            }
        }
        StratumType::from_raw_levels(self.profile.clone(), &raw)
    }

    /// Applies the group element `λ = r t^c` with per-group translations:
    /// lower points map to `λ x + a_g`, upper points to `λ⁻¹ y + b_g`.
    pub fn rescale(&self, r: &Rational, c: i64, lower_shift: &[LaurentPoly], upper_shift: &[LaurentPoly]) -> Self {
        let inv = Rational::one() / r;
        let map = |blocks: &Vec<Vec<LaurentPoly>>, f: &Rational, e: i64, shift: &[LaurentPoly]| {
            blocks
                .iter()
                .zip(shift)
                .map(|(b, s)| b.iter().map(|x| x.scale(f, e).add(s)).collect())
                .collect()
        };
        LaurentConfiguration {
            profile: self.profile.clone(),
            lower: map(&self.lower, r, c, lower_shift),
            upper: map(&self.upper, &inv, -c, upper_shift),
        }
    }
}

/// A configuration converging to `stratum`: each gap gets a generic positive
/// coefficient times `t^{−level}` on the lower line and `t^{level}` on the
/// upper line.
pub fn sample(stratum: &StratumType, seed: u64) -> LaurentConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profile = stratum.profile().clone();
    let mut levels = stratum.levels().iter();
    let mut build = |blocks: &[usize], sign: i64, rng: &mut ChaCha8Rng| -> Vec<Vec<LaurentPoly>> {
        blocks
            .iter()
            .map(|&size| {
                let mut x = LaurentPoly::constant(Rational::from_integer(rng.gen_range(-5i64..=5).into()));
                let mut block = vec![x.clone()];
                for _ in 1..size {
                    let level = *levels.next().expect("one level per gap") as i64;
                    let coef = Rational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=4).into());
                    x = x.add(&LaurentPoly::monomial(coef, sign * level));
                    block.push(x.clone());
                }
                block
            })
            .collect()
    };
    let lower = build(&profile.lower, -1, &mut rng);
    let upper = build(&profile.upper, 1, &mut rng);
    LaurentConfiguration { profile, lower, upper }
}
