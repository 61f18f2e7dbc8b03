//! Exact non-negative fractions used for backward-arc proportions and bounds.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Fraction = Ratio<u64>;

/// `num / den` in lowest terms; an empty denominator (no arcs) yields 0.
pub fn fraction(num: u64, den: u64) -> Fraction {
    if den == 0 {
        Fraction::from_integer(0)
    } else {
        Fraction::new(num, den)
    }
}

/// `a/b (0.123456)`.
pub fn display(f: &Fraction) -> String {
    format!("{}/{} ({:.6})", f.numer(), f.denom(), to_f64(f))
}

pub fn to_f64(f: &Fraction) -> f64 {
    f.to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize, Deserialize)]
struct FractionJson {
    num: u64,
    den: u64,
}

/// Serde adapter writing a [`Fraction`] as `{"num": a, "den": b}`.
pub mod json {
    use super::*;

    pub fn serialize<S: Serializer>(f: &Fraction, s: S) -> Result<S::Ok, S::Error> {
        FractionJson {
            num: *f.numer(),
            den: *f.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Fraction, D::Error> {
        let raw = FractionJson::deserialize(d)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Fraction::new(raw.num, raw.den))
    }
}
