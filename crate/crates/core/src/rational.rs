//! Exact rational numbers and their text forms.
//!
//! Every probability in this crate is carried as an [`ExactRational`]. The
//! canonical text form is `"p/q"` in lowest terms with a positive
//! denominator, integers included (`"1/1"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type ExactRational = BigRational;

pub fn int(value: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer `"p"`, or a finite decimal such as `"-1.25"`
/// or `"2.5e-3"`. Decimals are read exactly, never through `f64`.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(ExactRational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let mut value = ExactRational::from_integer(joined.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let factor = ExactRational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical `"p/q"` rendering.
pub fn to_pq(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest `f64`. Magnitudes outside the `f64` range saturate.
pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// 17 significant digits in scientific notation, enough to round-trip `f64`.
pub fn to_decimal17(q: &ExactRational) -> String {
    decimal17(to_f64(q))
}

pub fn decimal17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `x^e` for a nonnegative integer exponent.
pub fn pow(x: &ExactRational, e: u32) -> ExactRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Serde adapter: writes `"p/q"`, reads `"p/q"`, decimal strings or JSON integers.
pub mod serde_pq {
    use super::*;

    pub fn serialize<S: Serializer>(q: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactRational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Int(i64),
        Text(String),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<ExactRational> {
            match self {
                RawRational::Int(v) => Ok(int(v)),
                RawRational::Text(t) => parse_rational(&t),
            }
        }
    }
}

/// Serde adapter for sequences of rationals.
pub mod serde_pq_vec {
    use super::serde_pq::RawRational;
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[ExactRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&to_pq(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<ExactRational>, D::Error> {
        Vec::<RawRational>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" -4/ 8").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("2.5e-3").unwrap(), ratio(1, 400));
        assert_eq!(parse_rational("3E2").unwrap(), int(300));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1/x", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn pq_form_is_reduced_with_positive_denominator() {
        assert_eq!(to_pq(&ratio(2, -4)), "-1/2");
        assert_eq!(to_pq(&int(1)), "1/1");
        assert_eq!(to_pq(&int(0)), "0/1");
    }

    #[test]
    fn decimal_has_seventeen_significant_digits() {
        let text = to_decimal17(&ratio(1, 3));
        let mantissa = text.split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        assert_eq!(text.parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(20, 10), BigInt::from(184_756));
    }
}
