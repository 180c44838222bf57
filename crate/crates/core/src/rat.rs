//! Exact rational coordinates.
//!
//! All coordinate arithmetic in this crate is done on [`Rat`], an
//! arbitrary-precision rational. The representation is canonical: reduced by
//! gcd, with a strictly positive denominator, so equality is structural.
//! Values serialize as `"p"` or `"p/q"` strings; parsing accepts both plus an
//! optional leading sign.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand for an integer-valued rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`; intended for literals in tests
/// and generators, not for untrusted input.
pub fn rq(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"`, or `"-p/q"`. The result is canonical regardless of
/// the sign placement or common factors in the input.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let num_part = parts.next().unwrap_or("");
    let num: BigInt = num_part
        .parse()
        .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den_part) => {
            let den: BigInt = den_part
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
            if den.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Small-integer view `(num, den)` of a rational, if it fits the bounds used
/// by the i128 fast path of the orientation predicate. `den` is positive.
pub(crate) fn quick_i64(r: &Rat) -> Option<(i64, i64)> {
    const NUM_BOUND: i64 = 1 << 40;
    const DEN_BOUND: i64 = 1 << 20;
    let n = r.numer().to_i64()?;
    let d = r.denom().to_i64()?;
    if n.abs() < NUM_BOUND && d < DEN_BOUND {
        Some((n, d))
    } else {
        None
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rint(2)
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range only for astronomically large values; saturate.
        if r.is_negative() {
            f64::MIN
        } else {
            f64::MAX
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rq(2, 4), rq(1, 2));
        assert_eq!(rq(1, -2), rq(-1, 2));
        assert!(rq(1, -2).denom() > &BigInt::from(0));
        assert_eq!(rq(-6, -3), rint(2));
    }

    #[test]
    fn format_roundtrip() {
        for r in [rint(0), rint(-7), rq(16, 5), rq(-9, 10), rq(31, 10)] {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert_eq!(format_rat(&rint(3)), "3");
        assert_eq!(format_rat(&rq(2, 5)), "2/5");
        assert_eq!(format_rat(&rq(-2, 5)), "-2/5");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("12").unwrap(), rint(12));
        assert_eq!(parse_rat("-4/6").unwrap(), rq(-2, 3));
        assert_eq!(parse_rat(" 3/9 ").unwrap(), rq(1, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_rat(""), Err(ParseRatError::Empty));
        assert!(matches!(parse_rat("a/b"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(parse_rat("1/2/3"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(
            parse_rat("5/0"),
            Err(ParseRatError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn quick_view_bounds() {
        assert_eq!(quick_i64(&rq(16, 5)), Some((16, 5)));
        let huge = Rat::from_integer(BigInt::from(1i64 << 41));
        assert_eq!(quick_i64(&huge), None);
    }
}
