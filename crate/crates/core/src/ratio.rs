//! Exact rationals for thresholds, supports and confidences.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Thresholds and confidences are kept as reduced exact fractions.
pub type Fraction = Ratio<u64>;

/// Parses `p/q`, an integer, a decimal such as `0.6`, or a percentage such
/// as `60%`. The value is exact: `0.6` becomes `3/5`.
pub fn parse_fraction(text: &str) -> Result<Fraction> {
    let t = text.trim();
    let bad = || Error::argument(format!("not a fraction: {text:?}"));
    if let Some(pct) = t.strip_suffix('%') {
        let f = parse_fraction(pct)?;
        return Ok(f / Fraction::from_integer(100));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::argument(format!("zero denominator in {text:?}")));
        }
        return Ok(Fraction::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        return Ok(Fraction::new(int * scale + frac, scale));
    }
    let n: u64 = t.parse().map_err(|_| bad())?;
    Ok(Fraction::from_integer(n))
}

pub fn format_fraction(f: &Fraction) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

pub fn fraction_to_f64(f: &Fraction) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

/// `count / total >= threshold`, compared without rounding.
#[inline]
pub fn meets_threshold(count: usize, total: usize, threshold: &Fraction) -> bool {
    count as u128 * *threshold.denom() as u128 >= *threshold.numer() as u128 * total as u128
}

/// Checks `0 < t <= 1`.
pub fn check_unit_threshold(t: &Fraction, what: &str) -> Result<()> {
    if *t.numer() == 0 || t > &Fraction::from_integer(1) {
        return Err(Error::argument(format!(
            "{what} must lie in (0, 1], got {}",
            format_fraction(t)
        )));
    }
    Ok(())
}

/// Support of an itemset: number of objects carrying it over the number of
/// objects in the context. The denominator is never reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SupportValue {
    pub count: usize,
    pub total: usize,
}

impl SupportValue {
    pub fn new(count: usize, total: usize) -> Self {
        debug_assert!(count <= total && total > 0);
        SupportValue { count, total }
    }

    pub fn ratio(&self) -> Fraction {
        Fraction::new(self.count as u64, self.total as u64)
    }

    pub fn value(&self) -> f64 {
        self.count as f64 / self.total as f64
    }

    pub fn meets(&self, threshold: &Fraction) -> bool {
        meets_threshold(self.count, self.total, threshold)
    }
}

impl PartialOrd for SupportValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SupportValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.count as u128 * other.total as u128).cmp(&(other.count as u128 * self.total as u128))
    }
}

impl fmt::Display for SupportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

impl Serialize for SupportValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Serde adapter for fractions written as `"p/q"` strings.
pub mod serde_fraction {
    use super::*;

    pub fn serialize<S: Serializer>(f: &Fraction, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_fraction(f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Fraction, D::Error> {
        let text = String::deserialize(d)?;
        parse_fraction(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            f: &Option<Fraction>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match f {
                Some(f) => s.serialize_str(&format_fraction(f)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Fraction>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| parse_fraction(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
