//! Scalar abstraction for the partition and grid optimizers.
//!
//! The objective functions only need field arithmetic and an ordering, so
//! they are written once over [`Scalar`] and instantiated with `f64`, `f32`
//! or an exact [`Rational`](crate::Rational). With a rational exponent the
//! tie detection is exact; with floats it uses a small absolute tolerance.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Num + Signed + Clone + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Two objective values closer than this are treated as a tie.
    fn tie_tolerance() -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("small integers are representable")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tie_tolerance()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn tie_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tie_tolerance() -> Self {
        1e-5
    }
}

impl Scalar for Ratio<i64> {
    fn tie_tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

/// Parses a plain decimal literal such as `2.5` or `-0.125` into an exact
/// ratio. Exponent notation is not accepted.
pub fn parse_decimal_ratio(text: &str) -> Option<Ratio<i64>> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 15 {
        return None;
    }
    let den = 10i64.checked_pow(frac_part.len() as u32)?;
    let int_val: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_val: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let num = int_val.checked_mul(den)?.checked_add(frac_val)?;
    let r = Ratio::new(num, den);
    Some(if negative { -r } else { r })
}
