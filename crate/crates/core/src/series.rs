//! Truncated formal power series over the rationals.
//!
//! A [`Series`] stores the coefficients `a_0, ..., a_N` of `sum a_k z^k` and
//! nothing else: `N` is the truncation order and every operation reports the
//! order through which its result is actually determined. Binary operations
//! truncate to the smaller order of their operands.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series known through order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Series { coeffs })
    }

    /// Panicking twin of [`Series::new`] for internal callers that always
    /// have at least one coefficient.
    pub(crate) fn from_vec(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Series { coeffs }
    }

    /// A polynomial viewed as a series through `order`: missing coefficients
    /// are zero and anything past `order` is dropped.
    pub fn from_polynomial(coeffs: &[Rational], order: usize) -> Self {
        let mut out = vec![Rational::zero(); order + 1];
        for (slot, c) in out.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        Series { coeffs: out }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_polynomial(&rational::ints(coeffs), order)
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The indeterminate `z` itself.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^k`. Panics if `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Index of the first nonzero coefficient, `None` if every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `f(t z)`.
    pub fn scale_argument(&self, t: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow *= t;
        }
        Series { coeffs }
    }

    /// Multiplication by `z^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Division by `z^k`; the order drops by `k`. The first `k` coefficients
    /// must vanish and the order must be at least `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.order() < k {
            return Err(Error::InsufficientOrder {
                needed: k,
                available: self.order(),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroInnerConstant);
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse. Needs a nonzero constant term.
    pub fn recip(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    /// `self / divisor`, truncated to the smaller order.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        Ok(self.mul(&divisor.recip()?))
    }

    /// `self ∘ inner`. Needs `inner(0) = 0`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner: (((f_N g + f_{N-1}) g + ...) g + f_0
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion.
    ///
    /// Writing `g(w) = w u(w)` with `u(0) = g'(0) != 0`, the inverse `h` has
    /// `[z^n] h = (1/n) [w^{n-1}] u(w)^{-n}`. The result has the same order
    /// as `g`.
    pub fn revert(&self) -> Result<Series> {
        if self.order() < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let u_inv = self.shift_down(1)?.recip()?;
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = u_inv.clone();
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = power.coeffs[n - 1].clone() / Rational::from_integer((n as i64).into());
            if n < order {
                power = power.mul(&u_inv);
            }
        }
        Ok(Series { coeffs: out })
    }

    /// `self^p` for rational `p` via the binomial series. Needs constant
    /// term 1.
    ///
    /// With `f = b^p` and `b(0) = 1`, comparing coefficients in
    /// `b f' = p b' f` gives
    /// `n f_n = sum_{k=1}^{n} ((p + 1) k - n) b_k f_{n-k}`.
    pub fn pow_rational(&self, p: &Rational) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let p1 = p + Rational::one();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(Rational::one());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let weight = &p1 * rational::int(k as i64) - rational::int(n as i64);
                acc += weight * &self.coeffs[k] * &out[n - k];
            }
            out.push(acc / rational::int(n as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// Non-negative integer power, truncated to the order of `self`.
    pub fn powu(&self, exp: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: self.coeffs[..=order]
                .iter()
                .zip(&other.coeffs[..=order])
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}
