//! Exact rational arithmetic used for every cost, prize, density and budget.
//!
//! All quantities in this crate are `BigRational`. Density comparisons and the
//! tie-exact lower-bound instances break under floating point, so there is no
//! float mode anywhere, including on the wire.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n / 1` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^i` as an exact rational.
pub fn pow2(i: u32) -> Rational {
    Rational::from_integer(BigInt::one() << i)
}

/// Parses `p/q` or the integer shorthand `p`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator `{den}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `p/q` form (reduced, denominator always written).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Reduced form with the `/1` suffix dropped for integers.
pub fn format_rational_short(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integer_shorthand() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational(" 7 / 2 ").unwrap(), rat(7, 2));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn format_is_reduced() {
        assert_eq!(format_rational(&rat(4, 6)), "2/3");
        assert_eq!(format_rational(&rat_int(5)), "5/1");
        assert_eq!(format_rational_short(&rat_int(5)), "5");
        assert_eq!(format_rational_short(&rat(1, 2)), "1/2");
    }

    #[test]
    fn pow2_scales() {
        assert_eq!(pow2(0), rat_int(1));
        assert_eq!(pow2(5), rat_int(32));
    }
}
