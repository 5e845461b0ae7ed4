//! Helpers around [`BigRational`]: parsing `"p/q"` strings, powers with
//! signed exponents, and decimal rendering.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a signed exponent. `base` must be nonzero when `exp < 0`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// `q^exp` for an integer base.
pub fn qpow(q: u64, exp: i64) -> Rational {
    pow_i(&Rational::from_integer(BigInt::from(q)), exp)
}

/// Parse `"p/q"`, `"p"`, or a plain decimal such as `"0.25"` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((whole, frac_part)) = s.split_once('.') {
        if s.contains('/') {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac_part.is_empty())
        {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac_part}");
        let mag = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Rational::new(mag, den);
        return Ok(if negative { -value } else { value });
    }
    let value = Rational::from_str(s).map_err(|_| err())?;
    Ok(value)
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Best-effort conversion to `f64`, robust for numerators and denominators
/// far beyond the `f64` range.
pub fn to_f64(x: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    // bring both parts into a ~60-bit window before dividing
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (x.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Decimal rendering with `sig` significant digits, e.g. `"1.33333333333"`
/// for 4/3 at 12 digits. Computed exactly, then rounded half away from zero.
pub fn to_decimal(x: &Rational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let negative = x.is_negative();
    let a = x.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let ten = int(10);
    loop {
        let p = pow_i(&ten, e);
        if a < p {
            e -= 1;
        } else if a >= &p * &ten {
            e += 1;
        } else {
            break;
        }
    }
    let scale = sig as i64 - 1 - e;
    let scaled = &a * pow_i(&ten, scale);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut digits = if (r * BigInt::from(2)) >= *scaled.denom() { q + 1 } else { q };
    let mut scale = scale;
    if digits.to_string().len() > sig {
        // rounding carried into a new digit
        digits /= 10;
        scale -= 1;
    }
    let s = digits.to_string();
    let body = if scale <= 0 {
        let zeros = "0".repeat((-scale) as usize);
        format!("{s}{zeros}")
    } else if (scale as usize) < s.len() {
        let split = s.len() - scale as usize;
        let (w, f) = s.split_at(split);
        format!("{w}.{}", f.trim_end_matches('0')).trim_end_matches('.').to_string()
    } else {
        let zeros = "0".repeat(scale as usize - s.len());
        format!("0.{zeros}{}", s.trim_end_matches('0'))
    };
    if negative && digits.sign() != Sign::NoSign {
        format!("-{body}")
    } else {
        body
    }
}

/// Whether the reduced rational is a perfect square, returning its root.
pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// `floor(d / 2)` and `ceil(d / 2)`.
pub fn halves(d: u32) -> (i64, i64) {
    let d = d as i64;
    (d / 2, d - d / 2)
}

/// `1/2` as a rational.
pub fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Serde adapter storing a [`Rational`] as its canonical `"p/q"` string.
pub mod as_string {
    use super::{parse_rational, to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_canonical_strings() {
        assert_eq!(to_string(&frac(4, 6)), "2/3");
        assert_eq!(to_string(&int(12)), "12");
        assert_eq!(to_string(&frac(-1, 3)), "-1/3");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&frac(4, 3), 12), "1.33333333333");
        assert_eq!(to_decimal(&frac(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&int(12), 12), "12");
        assert_eq!(to_decimal(&frac(-1, 8), 12), "-0.125");
        assert_eq!(to_decimal(&frac(1, 3000), 3), "0.000333");
        assert_eq!(to_decimal(&frac(999_999, 1000), 3), "1000");
        assert_eq!(to_decimal(&int(0), 12), "0");
    }

    #[test]
    fn signed_powers() {
        assert_eq!(qpow(3, -2), frac(1, 9));
        assert_eq!(qpow(2, 5), int(32));
        assert_eq!(qpow(7, 0), int(1));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(exact_sqrt(&frac(2, 1)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }

    #[test]
    fn f64_conversion_of_huge_values() {
        let big = qpow(10, 400) / qpow(3, 400);
        let expected = 400.0 * (10f64 / 3.0).log10();
        assert!((to_f64(&big).log10() - expected).abs() < 1e-9);
        assert!((to_f64(&frac(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
