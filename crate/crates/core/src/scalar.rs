//! Scalar types usable as membership degrees.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Exact rational degrees.
pub type Rational = Ratio<i64>;

/// Numeric type carrying membership degrees.
///
/// Max-min composition only ever compares and selects values, so any totally
/// ordered field works. Subtraction is needed only for tolerance checks and
/// division only for report ratios.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// `numer / denom`, as close as the type can represent it.
    fn from_fraction(numer: u64, denom: u64) -> Self;

    /// Parses the textual form produced by `Display`, plus plain decimals.
    fn parse_text(text: &str) -> Option<Self>;
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_fraction(numer: u64, denom: u64) -> Self {
                numer as $f / denom as $f
            }

            fn parse_text(text: &str) -> Option<Self> {
                text.parse().ok()
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational {
    fn from_fraction(numer: u64, denom: u64) -> Self {
        let numer = i64::try_from(numer).expect("numerator fits in i64");
        let denom = i64::try_from(denom).expect("denominator fits in i64");
        Ratio::new(numer, denom)
    }

    fn parse_text(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((numer, denom)) = text.split_once('/') {
            let numer: i64 = numer.trim().parse().ok()?;
            let denom: i64 = denom.trim().parse().ok()?;
            if denom == 0 {
                return None;
            }
            return Some(Ratio::new(numer, denom));
        }
        parse_decimal_ratio(text)
    }
}

/// Exact parse of `[-+]digits[.digits]` into a reduced ratio.
fn parse_decimal_ratio(text: &str) -> Option<Rational> {
    let (negative, body) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
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
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    let denom = 10i64.checked_pow(u32::try_from(frac_part.len()).ok()?)?;
    let value = Ratio::new(numer, denom);
    Some(if negative { -value } else { value })
}

pub(crate) fn min<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn max<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}

/// Total order on validated degrees (never NaN).
pub(crate) fn cmp<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Lexicographic order on degree sequences.
pub(crate) fn cmp_rows<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| cmp(x, y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

pub(crate) fn approx_eq<S: Scalar>(a: S, b: S, tolerance: S) -> bool {
    (a - b).abs() <= tolerance
}
