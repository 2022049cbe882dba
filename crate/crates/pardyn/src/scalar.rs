//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every quantity in this crate is either a rational number or a complex
//! number with rational real and imaginary parts. There is no floating
//! point anywhere; equality checks are exact.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type GaussRat = Complex<Rat>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The integer `n` as a Gaussian rational.
pub fn gauss_int(n: i64) -> GaussRat {
    Complex::new(rat_int(n), Rat::zero())
}

/// A real Gaussian rational `n/d`.
pub fn gauss(n: i64, d: i64) -> GaussRat {
    Complex::new(rat(n, d), Rat::zero())
}

/// A Gaussian rational with the given rational parts.
pub fn gauss_parts(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

/// Formats a rational as `p/q` (always with an explicit denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadFraction(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Formats a Gaussian rational as `re/q` or `re/q+im/q*i`.
pub fn format_gauss(z: &GaussRat) -> String {
    if z.im.is_zero() {
        format_rat(&z.re)
    } else {
        let sign = if z.im.is_negative() { "" } else { "+" };
        format!("{}{}{}i", format_rat(&z.re), sign, format_rat(&z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_round_trip() {
        let r = rat(-3, 12);
        assert_eq!(format_rat(&r), "-1/4");
        assert_eq!(parse_rat("-1/4").unwrap(), r);
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn gauss_formatting() {
        assert_eq!(format_gauss(&gauss(1, 2)), "1/2");
        let z = gauss_parts(rat(1, 2), rat(-1, 3));
        assert_eq!(format_gauss(&z), "1/2-1/3i");
    }
}
