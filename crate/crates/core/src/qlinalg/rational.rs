use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

use super::LinalgError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::BadRational(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    } else {
        let p = BigInt::from_str(t).map_err(|_| bad())?;
        Ok(Rational::from_integer(p))
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
