//! Exact arithmetic: rationals, univariate polynomials in `t`, sparse
//! multivariate polynomials over a variable tower, and truncated Laurent
//! series.

mod parse;
mod series;
mod tower;
mod unipoly;

pub use parse::{parse_unipoly, ParseError, ParseErrorKind, MAX_EXPONENT};
pub use series::{series_invert_param, series_nth_root, LaurentSeries, SeriesError};
pub use tower::{poly_eval_composed, TowerPoly};
pub(crate) use tower::PowerCache;
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Coefficient field for every computation in the crate.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("expected {expected} bindings, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Serialises a rational as the string `"p/q"` (or `"p"` for integers).
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Exact `n`-th root of a rational, if one exists.
pub fn rational_nth_root(value: &Rational, n: u32) -> Option<Rational> {
    assert!(n > 0);
    if value.is_zero() {
        return Some(Rational::zero());
    }
    if value.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let r = if v.is_negative() {
            -(-v).nth_root(n)
        } else {
            v.nth_root(n)
        };
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    let num = root_int(value.numer())?;
    let den = root_int(value.denom())?;
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(rational_nth_root(&ratio(-8, 27), 3), Some(ratio(-2, 3)));
        assert_eq!(rational_nth_root(&rat(-4), 2), None);
        assert_eq!(rational_nth_root(&rat(2), 2), None);
        assert_eq!(rational_nth_root(&rat(0), 5), Some(rat(0)));
    }
}
