//! Truncated univariate power series with exact rational coefficients.
//!
//! A [`Series1`] of order N stores a₀ … a_N and represents the class of
//! Σ aₙyⁿ modulo y^{N+1}. Binary operations truncate to the smaller order.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    coeffs: Vec<Rational>,
}

impl Series1 {
    /// Series of the given order from leading coefficients; missing ones are
    /// zero, extra ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series1 { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series1::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series1::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Series1::new(vec![c], order)
    }

    /// c·y^k.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Series1::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series from a closure n ↦ aₙ.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series1 { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// [yⁿ]; `None` beyond the truncation order.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// [yⁿ]. Panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series1::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series1 { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Formal derivative; the result has order N − 1 (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Series1::zero(0);
        }
        Series1 {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(n, a)| a * rational::int(n as i64)).collect(),
        }
    }

    fn nonzero(&self) -> Vec<(usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).collect()
    }

    pub fn mul(&self, other: &Series1) -> Series1 {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        let b = other.nonzero();
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for &(j, bj) in &b {
                if i + j > order {
                    break;
                }
                out[i + j] += a * bj;
            }
        }
        Series1 { coeffs: out }
    }

    /// self / other. Cost is proportional to the number of nonzero
    /// coefficients of the divisor.
    pub fn div(&self, other: &Series1) -> Result<Series1, SeriesError> {
        let b0 = other.coeffs[0].clone();
        if b0.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let inv = b0.recip();
        let order = self.order().min(other.order());
        let tail: Vec<(usize, &Rational)> = other.nonzero().into_iter().filter(|&(k, _)| k > 0).collect();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for &(k, bk) in &tail {
                if k > n {
                    break;
                }
                acc -= bk * &out[n - k];
            }
            out.push(acc * &inv);
        }
        Ok(Series1 { coeffs: out })
    }

    pub fn recip(&self) -> Result<Series1, SeriesError> {
        Series1::one(self.order()).div(self)
    }

    /// Square root with the positive root of the constant term. The constant
    /// term must be the square of a nonzero rational.
    pub fn sqrt(&self) -> Result<Series1, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let s0 = rational::exact_sqrt(a0).ok_or(SeriesError::NonSquareConstantTerm)?;
        // 2·A·S' = A'·S, read off coefficientwise
        let tail: Vec<(usize, &Rational)> = self.nonzero().into_iter().filter(|&(k, _)| k > 0).collect();
        let two_a0 = a0 * rational::int(2);
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(s0);
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for &(k, ak) in &tail {
                if k > n {
                    break;
                }
                acc += ak * &out[n - k] * rational::int(3 * k as i64 - 2 * n as i64);
            }
            out.push(acc / (&two_a0 * rational::int(n as i64)));
        }
        Ok(Series1 { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Series1 {
        let mut acc = Series1::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Add for &Series1 {
    type Output = Series1;

    fn add(self, rhs: &Series1) -> Series1 {
        let order = self.order().min(rhs.order());
        Series1 { coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect() }
    }
}

impl Sub for &Series1 {
    type Output = Series1;

    fn sub(self, rhs: &Series1) -> Series1 {
        let order = self.order().min(rhs.order());
        Series1 { coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect() }
    }
}

impl Mul for &Series1 {
    type Output = Series1;

    fn mul(self, rhs: &Series1) -> Series1 {
        Series1::mul(self, rhs)
    }
}

impl Neg for &Series1 {
    type Output = Series1;

    fn neg(self) -> Series1 {
        Series1 { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}
