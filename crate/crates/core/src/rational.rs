//! Exact rationals: snapping floats to small fractions, parsing, and the
//! `{exact, value}` scalar used in reports.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Largest denominator considered by [`snap`].
pub const SNAP_MAX_DENOMINATOR: i64 = 1 << 14;

/// Distance within which a float is snapped to a small rational.
pub const SNAP_TOLERANCE: f64 = 1e-10;

/// Returns the smallest-denominator rational within [`SNAP_TOLERANCE`] of
/// `x`, if its denominator is at most [`SNAP_MAX_DENOMINATOR`].
///
/// Any such fraction is a continued-fraction convergent of `x`, so walking
/// the convergents is enough.
pub fn snap(x: f64) -> Option<Rational64> {
    if !x.is_finite() {
        return None;
    }
    if x.abs() <= SNAP_TOLERANCE {
        return Some(Rational64::zero());
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = target;
    for _ in 0..64 {
        let a = rest.floor();
        if a > i64::MAX as f64 / 4.0 {
            return None;
        }
        let a_int = a as i64;
        let p2 = a_int.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a_int.checked_mul(q1)?.checked_add(q0)?;
        if q2 > SNAP_MAX_DENOMINATOR {
            return None;
        }
        if (p2 as f64 / q2 as f64 - target).abs() <= SNAP_TOLERANCE {
            return Some(Rational64::new(sign * p2, q2));
        }
        let frac = rest - a;
        if frac <= f64::EPSILON {
            return None;
        }
        rest = 1.0 / frac;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// Snaps `x` when possible, otherwise returns the closest `Rational64`
/// the float conversion produces.
pub fn to_rational(x: f64) -> Rational64 {
    snap(x)
        .or_else(|| Rational64::approximate_float(x))
        .unwrap_or_else(Rational64::zero)
}

pub fn to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3/4"`, `"0.25"`, `"-2"` or `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    if !t.contains(['e', 'E']) {
        let (negative, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if !int_part.is_empty() || !frac_part.is_empty() {
            let all_digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
            if all_digits(int_part) && all_digits(frac_part) && frac_part.len() <= 15 {
                let joined = format!("{int_part}{frac_part}");
                let numer: i64 = joined.parse().map_err(|_| bad())?;
                let denom = 10i64.pow(frac_part.len() as u32);
                let value = Rational64::new(numer, denom);
                return Ok(if negative { -value } else { value });
            }
        }
    }
    let x: f64 = t.parse().map_err(|_| bad())?;
    Ok(to_rational(x))
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// A real number with an optional exact rational form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scalar {
    pub exact: Option<Rational64>,
    pub value: f64,
}

impl Scalar {
    pub fn exact(r: Rational64) -> Self {
        Self {
            exact: Some(r),
            value: to_f64(r),
        }
    }

    /// Float with an exact form attached when it snaps to a small rational.
    pub fn from_f64(value: f64) -> Self {
        Self {
            exact: snap(value),
            value,
        }
    }

    /// Float without any attempt at an exact form.
    pub fn real(value: f64) -> Self {
        Self { exact: None, value }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Scalar", 2)?;
        s.serialize_field("exact", &self.exact.map(|r| r.to_string()))?;
        s.serialize_field("value", &round_sig(self.value, 12))?;
        s.end()
    }
}
