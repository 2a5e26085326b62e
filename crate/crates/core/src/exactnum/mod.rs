//! Exact scalars: big rationals, Gaussian rationals and dense rational
//! polynomials.
//!
//! Every matrix entry, polynomial coefficient and evaluation point in the
//! crate lives here, so no result ever depends on floating-point rounding.

mod gaussian;
mod poly;

pub use gaussian::GaussianRational;
pub use poly::RatPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("undefined multiplicity: the zero polynomial vanishes everywhere")]
    UndefinedMultiplicity,
}

/// `n/d` as a normalized rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `int` or `int/uint` with an optional leading sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) if d.starts_with(['+', '-']) => return None,
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Always `num/den`, including integers (`5/1`).
pub fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn is_unit(r: &Rational) -> bool {
    r.is_integer() && r.numer().abs() == BigInt::from(1)
}
