//! Scalar types usable as edge weights.

use std::fmt::Debug;
use std::ops::Add;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// Nonnegative edge weight.
///
/// Implemented for `f32`, `f64` and `Ratio<i64>`. The rational type is the
/// default because it keeps optimum comparisons exact.
pub trait Weight:
    Clone + Debug + PartialOrd + Zero + One + Add<Output = Self> + Send + Sync + 'static
{
    /// Parses decimal notation such as `3`, `0.25` or `-1e2`; rationals also accept `p/q`.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Formats the weight so that [`Weight::parse_decimal`] reads it back unchanged.
    fn to_decimal(&self) -> String;

    fn to_f64(&self) -> f64;
}

macro_rules! float_weight {
    ($t:ty) => {
        impl Weight for $t {
            fn parse_decimal(s: &str) -> Option<Self> {
                let v: $t = s.parse().ok()?;
                v.is_finite().then_some(v)
            }

            fn to_decimal(&self) -> String {
                format!("{}", self)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_weight!(f32);
float_weight!(f64);

impl Weight for Ratio<i64> {
    fn parse_decimal(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.parse().ok()?;
            let q: i64 = q.parse().ok()?;
            return (q != 0).then(|| Ratio::new(p, q));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: i64 = if digits.is_empty() {
            0
        } else {
            digits.parse().ok()?
        };
        let denom = 10i64.checked_pow(frac_part.len() as u32)?;
        let r = Ratio::new(numer, denom);
        Some(if neg { -r } else { r })
    }

    fn to_decimal(&self) -> String {
        let mut d = *self.denom();
        let mut twos = 0u32;
        let mut fives = 0u32;
        while d % 2 == 0 {
            d /= 2;
            twos += 1;
        }
        while d % 5 == 0 {
            d /= 5;
            fives += 1;
        }
        if d != 1 {
            return format!("{}/{}", self.numer(), self.denom());
        }
        let places = twos.max(fives);
        if places == 0 {
            return self.numer().to_string();
        }
        let scale = 10i128.pow(places);
        let scaled = *self.numer() as i128 * scale / *self.denom() as i128;
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let int = abs / scale as u128;
        let frac = abs % scale as u128;
        format!("{sign}{int}.{frac:0width$}", width = places as usize)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
