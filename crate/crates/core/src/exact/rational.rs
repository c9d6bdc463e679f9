use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p/q` or a bare integer. Decimal points and exponents are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: format!("{msg}: {text:?}"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with(['-', '+']) {
        return Err(bad("not a rational"));
    }
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Rounds to `digits` decimal places, ties away from zero. Display only.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>digits$}", frac.to_string())
}

pub fn to_i128(value: &BigInt, what: &'static str) -> Result<i128> {
    value.to_i128().ok_or(Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(format_decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(format_decimal(&rat(-5, 23), 3), "-0.217");
        assert_eq!(format_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(format_decimal(&rat(7, 2), 0), "4");
        assert_eq!(format_decimal(&rat(12, 1), 1), "12.0");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("+5").unwrap(), rat(5, 1));
    }

    #[test]
    fn rejects_floats_and_junk() {
        for bad in ["0.5", "1e3", "", "/", "1/", "1/0", "1/-2", "a/b", "1//2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lowest_terms_display() {
        assert_eq!(rat(10, -4).to_string(), "-5/2");
        assert_eq!(rat(6, 3).to_string(), "2");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 4), rat(5, 6), rat(2, 1)];
        assert_eq!(denominator_lcm(&v), BigInt::from(12));
    }
}
