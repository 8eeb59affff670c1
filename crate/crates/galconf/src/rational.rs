//! Arbitrary-precision rational scalars.
//!
//! All coefficients in the crate are `BigRational`s: always in lowest terms,
//! positive denominator, and arithmetic that cannot overflow. Values render
//! as `p` or `p/q`, which is also the format accepted by [`parse_rational`]
//! and used verbatim inside JSON reports and trajectory files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p` or `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational, crate::Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| crate::Error::Parse(format!("invalid rational {s:?}: {e}")))
}

/// Render in the `p` / `p/q` interchange format.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `n choose k` (zero outside the triangle).
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= rat_int((n - i) as i64) / rat_int((i + 1) as i64);
    }
    acc
}

/// `(-1)^e` for a signed exponent.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Fixed-point decimal rendering with `digits` fractional digits
/// (round half away from zero). Display only; never used in verification.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round(|r| * 10^digits)
    let scaled = &abs * Rational::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let twice = BigInt::from(2) * &num + &den; // num/den + 1/2 = (2num+den)/(2den)
    let rounded = twice / (BigInt::from(2) * &den);
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part,
            width = digits as usize
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-5", "3/4", "-3/4", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        assert_eq!(binomial(5, 2), rat_int(10));
        assert_eq!(binomial(3, 5), rat_int(0));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal_string(&rat(-1, 2), 2), "-0.50");
        assert_eq!(decimal_string(&rat(5, 1), 0), "5");
        assert_eq!(decimal_string(&rat(25, 1000), 2), "0.03");
    }
}
