//! Exact rational arithmetic for costs, payments and reported time values.
//!
//! Every monetary quantity in the library is a `Rat`. Incentive and budget
//! properties are strict inequalities over these values, so nothing is ever
//! rounded. Serialized form is `"p/q"`, or `"p"` when the denominator is 1;
//! plain JSON numbers are accepted on input.

use num_rational::Ratio;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

pub type Rat = Ratio<i64>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Ratio::from_integer(n)
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

pub fn format_rat(r: &Rat) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    match s.split_once('/') {
        None => s
            .parse::<i64>()
            .map(Ratio::from_integer)
            .map_err(|_| ParseRatError::Invalid(s.to_string())),
        Some((num, den)) => {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
            if d == 0 {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Ratio::new(n, d))
        }
    }
}

/// Lossy conversion for reporting (CSV cells, summary statistics).
pub fn rat_to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a rational as \"p/q\", \"p\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rat(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Ratio::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        i64::try_from(v)
            .map(Ratio::from_integer)
            .map_err(|_| E::custom("integer out of range for rational"))
    }
}

/// Serde adapter: `#[serde(with = "crate::rat::serde_rat")]`.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        struct Raw(#[allow(dead_code)] Rat);
        impl<'de> Deserialize<'de> for Raw {
            fn deserialize<D2: Deserializer<'de>>(d: D2) -> Result<Self, D2::Error> {
                d.deserialize_any(RatVisitor).map(Raw)
            }
        }
        let raw: Vec<Raw> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|Raw(r)| r).collect())
    }
}

/// Serde adapter for `Option<Rat>`.
pub mod serde_rat_opt {
    use super::*;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&format_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        struct Raw(Rat);
        impl<'de> Deserialize<'de> for Raw {
            fn deserialize<D2: Deserializer<'de>>(d: D2) -> Result<Self, D2::Error> {
                d.deserialize_any(RatVisitor).map(Raw)
            }
        }
        Ok(Option::<Raw>::deserialize(d)?.map(|Raw(r)| r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "7/2", "-7/2", "1/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("4/2").unwrap(), rat(2));
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(parse_rat("2/-4").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
    }
}
