//! Exact rational scalars.
//!
//! Every time constant in the crate is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator (the underlying
//! representation normalizes on construction). Helpers here cover the few
//! operations the rest of the crate needs beyond plain field arithmetic:
//! construction from machine integers, exact floor/ceil, integrality tests,
//! and a zero-denominator-safe parser.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational (reduced). Panics if `d == 0`; use [`parse_rat`] for
/// untrusted input.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True iff `r` is an integer.
pub fn is_int(r: &Rat) -> bool {
    r.is_integer()
}

/// Largest integer `<= r`, as a rational.
pub fn floor(r: &Rat) -> Rat {
    Rat::from_integer(r.floor().to_integer())
}

/// Smallest integer `>= r`, as a rational.
pub fn ceil(r: &Rat) -> Rat {
    Rat::from_integer(r.ceil().to_integer())
}

/// `r` as an `i64`, if it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    let n = r.to_integer();
    i64::try_from(&n).ok()
}

/// Error from [`parse_rat`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

/// Parses `n` or `n/d` (optionally signed) into a rational. Rejects a zero
/// denominator instead of panicking.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = |reason: &str| ParseRatError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("denominator is zero"));
    }
    Ok(Rat::new(numer, denom))
}

/// True iff `q/delta` is an integer (`delta` must be positive: callers check).
pub fn divides(delta: &Rat, q: &Rat) -> bool {
    (q / delta).is_integer()
}

/// Greatest common divisor of two nonnegative integers (as `BigInt`).
pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    num::Integer::gcd(a, b)
}

/// Least common multiple of two positive integers (as `BigInt`).
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    num::Integer::lcm(a, b)
}

/// Absolute value.
pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rat("-3/10").unwrap(), rat(-3, 10));
        assert_eq!(parse_rat(" 6/4 ").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("3/-2").unwrap(), rat(-3, 2));
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominator() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        for r in [rat(3, 10), rat_int(-2), rat(7, 1), rat(-9, 4)] {
            assert_eq!(parse_rat(&r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn floor_ceil_integrality() {
        assert_eq!(floor(&rat(7, 2)), rat_int(3));
        assert_eq!(ceil(&rat(7, 2)), rat_int(4));
        assert_eq!(floor(&rat(-7, 2)), rat_int(-4));
        assert_eq!(ceil(&rat(-7, 2)), rat_int(-3));
        assert_eq!(floor(&rat_int(5)), rat_int(5));
        assert_eq!(ceil(&rat_int(5)), rat_int(5));
        assert!(is_int(&rat(4, 2)));
        assert!(!is_int(&rat(1, 2)));
    }

    #[test]
    fn divides_checks_exact_multiples() {
        assert!(divides(&rat(3, 10), &rat(6, 10)));
        assert!(divides(&rat(1, 2), &rat_int(3)));
        assert!(!divides(&rat(3, 10), &rat(1, 2)));
    }

    #[test]
    fn to_i64_requires_integrality() {
        assert_eq!(to_i64(&rat_int(-3)), Some(-3));
        assert_eq!(to_i64(&rat(1, 2)), None);
    }
}
