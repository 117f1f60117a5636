//! Exact rationals and their wire formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeTuple;
use serde::Serializer;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `"p/q"` text form; integers print without a denominator.
pub fn to_text(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

fn serialize_int<S: SerializeTuple>(seq: &mut S, value: &BigInt) -> Result<(), S::Error> {
    match value.to_i64() {
        Some(small) => seq.serialize_element(&small),
        None => seq.serialize_element(&value.to_string()),
    }
}

/// Serializes as a `[numerator, denominator]` pair; integers outside `i64`
/// fall back to decimal strings.
pub fn serialize_pair<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_tuple(2)?;
    serialize_int(&mut seq, value.numer())?;
    serialize_int(&mut seq, value.denom())?;
    seq.end()
}

/// Wrapper giving a `Rational` the pair serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair(pub Rational);

impl serde::Serialize for Pair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_pair(&self.0, serializer)
    }
}

pub fn pairs(values: &[Rational]) -> Vec<Pair> {
    values.iter().cloned().map(Pair).collect()
}
