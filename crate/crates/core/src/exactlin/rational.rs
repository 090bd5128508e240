//! Rational scalars and their string encoding.
//!
//! Every file format and report in the toolkit writes rationals as `"p/q"`
//! or `"p"` in base 10 with an optional leading minus.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `"p"`, `"-p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        text: text.to_string(),
        reason,
    };
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (
            parse_digits(n).ok_or_else(|| err("numerator is not a base-10 integer"))?,
            parse_digits(d).ok_or_else(|| err("denominator is not a base-10 integer"))?,
        ),
        None => (
            parse_digits(body).ok_or_else(|| err("not a base-10 integer or fraction"))?,
            BigInt::one(),
        ),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    let q = Rational::new(num, den);
    Ok(if negative { -q } else { q })
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats a point as `(a, b, c)`.
pub fn format_point(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Returns -1, 0 or 1.
pub fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Display adapter used when a `&Rational` must print in canonical form.
pub struct RationalDisplay<'a>(pub &'a Rational);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Serde adapter: a single rational as a string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of rationals as a list of strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("3").unwrap(), rational_from_i64(3));
        assert_eq!(parse_rational("-7/2").unwrap(), Rational::new((-7).into(), 2.into()));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("0/5").unwrap(), Rational::zero());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "-", "1/", "/2", "1/0", "+3", "1.5", "a", "1/-2", "--1", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&Rational::new(6.into(), (-4).into())), "-3/2");
        assert_eq!(format_rational(&rational_from_i64(-5)), "-5");
        assert_eq!(format_rational(&Rational::zero()), "0");
    }

    #[test]
    fn big_values_survive_round_trip() {
        let text = "123456789012345678901234567891/7";
        assert_eq!(format_rational(&parse_rational(text).unwrap()), text);
    }
}
