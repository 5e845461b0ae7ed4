//! Closed intervals with rational endpoints, rounded outward to a fixed
//! binary grid after every operation. Enough to certify constants such as
//! √q and π to well over 100 significant digits.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Grid spacing is 2^-PREC_BITS.
pub const PREC_BITS: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

fn scale() -> BigInt {
    BigInt::one() << PREC_BITS
}

fn floor_grid(x: &Rational) -> Rational {
    let s = scale();
    let scaled = x * Rational::from_integer(s.clone());
    Rational::new(scaled.numer().div_floor(scaled.denom()), s)
}

fn ceil_grid(x: &Rational) -> Rational {
    let s = scale();
    let scaled = x * Rational::from_integer(s.clone());
    Rational::new(scaled.numer().div_ceil(scaled.denom()), s)
}

impl Interval {
    /// The degenerate interval [x, x], kept exact.
    pub fn exact(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Interval::exact(rational::int(n))
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo: floor_grid(&lo), hi: ceil_grid(&hi) }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * rational::half()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Interval::new(lo, hi)
    }

    /// Panics if `o` contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "division by an interval containing 0");
        self.mul(&Interval::new(o.hi.recip(), o.lo.recip()))
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        let s2 = scale() * scale();
        let lo_scaled = &self.lo * Rational::from_integer(s2.clone());
        let hi_scaled = &self.hi * Rational::from_integer(s2);
        let lo_root = lo_scaled.numer().div_floor(lo_scaled.denom()).sqrt();
        let hi_int = hi_scaled.numer().div_ceil(hi_scaled.denom());
        let mut hi_root = hi_int.sqrt();
        if &hi_root * &hi_root < hi_int {
            hi_root += 1;
        }
        Interval { lo: Rational::new(lo_root, scale()), hi: Rational::new(hi_root, scale()) }
    }

    pub fn powi(&self, mut n: u32) -> Interval {
        let mut base = self.clone();
        let mut acc = Interval::from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// x^{3/2} for x ≥ 0.
    pub fn pow_three_halves(&self) -> Interval {
        self.mul(&self.sqrt())
    }
}

/// Enclosure of π from Machin's formula π = 16·atan(1/5) − 4·atan(1/239).
pub fn pi() -> Interval {
    let a = atan_inv(5);
    let b = atan_inv(239);
    Interval::from_int(16).mul(&a).sub(&Interval::from_int(4).mul(&b))
}

/// atan(1/x) for an integer x ≥ 2, bracketed by consecutive partial sums of
/// the alternating series.
fn atan_inv(x: i64) -> Interval {
    let x2 = rational::int(x * x);
    let mut power = rational::frac(1, x);
    let mut sum = Rational::zero();
    let tol = Rational::new(BigInt::one(), scale() << 8);
    let mut k: i64 = 0;
    loop {
        let term = &power / rational::int(2 * k + 1);
        if term < tol {
            // remainder lies between 0 and ±term
            let other = if k % 2 == 0 { &sum + &term } else { &sum - &term };
            let (lo, hi) = if sum < other { (sum, other) } else { (other, sum) };
            return Interval::new(lo, hi);
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &x2;
        k += 1;
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        write!(f, "{}", rational::to_decimal(&self.midpoint(), sig))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn pi_to_sixty_digits() {
        let p = pi();
        let digits = "3.14159265358979323846264338327950288419716939937510582097494";
        assert!(p.width() < Rational::new(BigInt::one(), BigInt::from(10).pow(100)));
        assert_eq!(rational::to_decimal(&p.midpoint(), 60), digits);
        assert_eq!(format!("{:.10}", p), "3.141592654");
    }

    #[test]
    fn square_roots_enclose() {
        let r = Interval::from_int(2).sqrt();
        assert!(&r.lo * &r.lo <= int(2) && &r.hi * &r.hi >= int(2));
        assert!(r.width() <= Rational::new(BigInt::one(), scale()));
        let nine = Interval::from_int(9).sqrt();
        assert!(nine.contains(&int(3)));
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::exact(frac(1, 3));
        let b = Interval::exact(frac(-2, 7));
        assert!(a.mul(&b).contains(&frac(-2, 21)));
        assert!(a.div(&b).contains(&frac(-7, 6)));
        assert!(a.sub(&b).contains(&frac(13, 21)));
        assert!(a.powi(5).contains(&frac(1, 243)));
        assert!(Interval::exact(int(4)).pow_three_halves().contains(&int(8)));
    }
}
