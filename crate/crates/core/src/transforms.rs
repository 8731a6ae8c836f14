//! Moments, free cumulants and S-transforms.
//!
//! The moment generating function is `M(z) = sum m_n z^n` and the
//! R-transform `R(z) = sum_{n>=1} kappa_n z^n` is tied to it by
//! `R(z M(z)) + 1 = M(z)`. Both directions go through one series reversion:
//! with `w = z M(z)` one has `R(w) = w / z(w) - 1`, and conversely
//! `z M(z)` is the inverse of `w / (1 + R(w))`.
//!
//! The S-transform satisfies `M(z S(z) / (1 + z)) = 1 + z`, so
//! `z S(z) / (1 + z)` is the compositional inverse of `M(z) - 1`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::series::Series;
use crate::{Error, Result};

/// `(m_0, ..., m_N)` with `m_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentSequence {
    moments: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(moments: Vec<Rational>) -> Result<Self> {
        match moments.first() {
            Some(m0) if m0.is_one() => Ok(MomentSequence { moments }),
            _ => Err(Error::InvalidMoments),
        }
    }

    pub fn from_ints(moments: &[i64]) -> Result<Self> {
        Self::new(rational::ints(moments))
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.moments
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.moments
    }

    /// `m_n`. Panics past the truncation order.
    pub fn get(&self, n: usize) -> &Rational {
        &self.moments[n]
    }

    /// `M(z)` through order `N`.
    pub fn generating_series(&self) -> Series {
        Series::from_vec(self.moments.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        MomentSequence {
            moments: self.moments[..=order.min(self.order())].to_vec(),
        }
    }
}

/// `(kappa_1, ..., kappa_N)`; the order is the number of cumulants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeCumulants {
    cumulants: Vec<Rational>,
}

impl FreeCumulants {
    pub fn new(cumulants: Vec<Rational>) -> Self {
        FreeCumulants { cumulants }
    }

    pub fn from_ints(cumulants: &[i64]) -> Self {
        Self::new(rational::ints(cumulants))
    }

    pub fn order(&self) -> usize {
        self.cumulants.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.cumulants
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.cumulants
    }

    /// `kappa_n`, one-based. Panics for `n = 0` or past the order.
    pub fn get(&self, n: usize) -> &Rational {
        &self.cumulants[n - 1]
    }

    /// `R(z) = sum kappa_n z^n` through order `N`.
    pub fn r_transform(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.cumulants.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.cumulants.iter().cloned());
        Series::from_vec(coeffs)
    }

    /// Inverse of [`FreeCumulants::r_transform`]; drops the constant term.
    pub fn from_r_transform(r: &Series) -> Self {
        FreeCumulants::new(r.coeffs()[1..].to_vec())
    }
}

/// Coefficients of an S-transform at the origin; `S(0) = 1 / m_1 != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct STransform {
    series: Series,
}

impl STransform {
    pub fn new(series: Series) -> Result<Self> {
        if series.constant_term().is_zero() {
            return Err(Error::ZeroSTransform);
        }
        Ok(STransform { series })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }
}

/// Whether a convolution power is known to exist as a measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerValidity {
    /// `t >= 1`: the power always exists.
    Guaranteed,
    /// `t < 1`: the cumulants are computed formally; existence needs
    /// infinite divisibility and must be checked separately.
    Formal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionPower {
    pub cumulants: FreeCumulants,
    pub validity: PowerValidity,
}

/// Free cumulants `kappa_1..kappa_N` of moments `m_0..m_N`.
pub fn moments_to_free_cumulants(m: &MomentSequence) -> FreeCumulants {
    let order = m.order();
    if order == 0 {
        return FreeCumulants::default();
    }
    // w = z M(z) is known through order N + 1 and starts with z.
    let w = m.generating_series().shift_up(1);
    let z_of_w = w.revert().expect("z M(z) starts with z");
    let ratio = z_of_w
        .shift_down(1)
        .expect("reversion has zero constant term")
        .recip()
        .expect("z(w)/w starts with 1");
    FreeCumulants::from_r_transform(&ratio)
}

/// Moments `m_0..m_N` of cumulants `kappa_1..kappa_N`.
pub fn free_cumulants_to_moments(k: &FreeCumulants) -> MomentSequence {
    let one_plus_r = &Series::one(k.order()) + &k.r_transform();
    let w_over_m = one_plus_r
        .recip()
        .expect("1 + R(w) starts with 1")
        .shift_up(1);
    let zm = w_over_m.revert().expect("w / (1 + R(w)) starts with w");
    let moments = zm.shift_down(1).expect("z M(z) has zero constant term");
    MomentSequence {
        moments: moments.into_coeffs(),
    }
}

/// Moments of the dilation `x -> t x`: `m_n -> t^n m_n`.
pub fn dilate(m: &MomentSequence, t: &Rational) -> Result<MomentSequence> {
    if t.is_zero() {
        return Err(Error::ZeroDilation);
    }
    Ok(MomentSequence {
        moments: m.generating_series().scale_argument(t).into_coeffs(),
    })
}

/// Cumulants of the dilation `x -> t x`: `kappa_n -> t^n kappa_n`.
pub fn dilate_cumulants(k: &FreeCumulants, t: &Rational) -> Result<FreeCumulants> {
    if t.is_zero() {
        return Err(Error::ZeroDilation);
    }
    Ok(FreeCumulants::from_r_transform(
        &k.r_transform().scale_argument(t),
    ))
}

/// Translation `x -> x + shift`: only `kappa_1` moves.
pub fn translate(k: &FreeCumulants, shift: &Rational) -> FreeCumulants {
    let mut cumulants = k.cumulants.clone();
    if let Some(first) = cumulants.first_mut() {
        *first += shift;
    }
    FreeCumulants { cumulants }
}

/// Free additive convolution: cumulants add.
pub fn free_additive_convolve(a: &FreeCumulants, b: &FreeCumulants) -> Result<FreeCumulants> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(FreeCumulants {
        cumulants: a
            .cumulants
            .iter()
            .zip(&b.cumulants)
            .map(|(x, y)| x + y)
            .collect(),
    })
}

/// Free additive convolution power `t`: cumulants scale by `t`.
pub fn free_convolution_power(k: &FreeCumulants, t: &Rational) -> ConvolutionPower {
    let validity = if *t >= Rational::one() {
        PowerValidity::Guaranteed
    } else {
        PowerValidity::Formal
    };
    ConvolutionPower {
        cumulants: FreeCumulants {
            cumulants: k.cumulants.iter().map(|c| c * t).collect(),
        },
        validity,
    }
}

/// S-transform of moments `m_0..m_N`, known through order `N - 1`.
pub fn moments_to_s(m: &MomentSequence) -> Result<STransform> {
    if m.order() < 1 || m.get(1).is_zero() {
        return Err(Error::ZeroMean);
    }
    let psi = &m.generating_series() - &Series::one(m.order());
    let chi = psi.revert()?;
    let s = chi
        .shift_down(1)?
        .mul(&Series::from_ints(&[1, 1], m.order() - 1));
    STransform::new(s)
}

/// Moments `m_0..m_{K+1}` of the measure whose S-transform is known through
/// order `K`.
pub fn moments_from_s(s: &STransform) -> MomentSequence {
    let order = s.order() + 1;
    let one_plus_z = Series::from_ints(&[1, 1], order);
    let chi = s
        .series
        .shift_up(1)
        .div(&one_plus_z)
        .expect("1 + z is a unit");
    let psi = chi
        .revert()
        .expect("S(0) != 0 makes z S(z)/(1+z) invertible");
    let m = &Series::one(order) + &psi;
    MomentSequence {
        moments: m.into_coeffs(),
    }
}

/// Free multiplicative convolution: S-transforms multiply.
pub fn free_multiplicative_convolve(a: &STransform, b: &STransform) -> MomentSequence {
    let product = STransform {
        series: a.series.mul(&b.series),
    };
    moments_from_s(&product)
}

/// Moments `m_0..m_order` of the measure with `S(z) = (1 + b z)^{-p}`.
///
/// This is a free multiplicative power of a dilated Marchenko-Pastur law and
/// exists exactly when `b > 0`, `p > 0` and `max(p, 1/b) >= 1`.
pub fn fuss_catalan_power(b: &Rational, p: &Rational, order: usize) -> Result<MomentSequence> {
    if !b.is_positive() {
        return Err(Error::ParameterOutOfRange("b must be positive"));
    }
    if !p.is_positive() {
        return Err(Error::ParameterOutOfRange("p must be positive"));
    }
    if *p < Rational::one() && b.recip() < Rational::one() {
        return Err(Error::ParameterOutOfRange("need max(p, 1/b) >= 1"));
    }
    if order == 0 {
        return Ok(MomentSequence {
            moments: alloc::vec![Rational::one()],
        });
    }
    let base = Series::from_polynomial(&[Rational::one(), b.clone()], order - 1);
    let s = base.pow_rational(&-p)?;
    Ok(moments_from_s(&STransform::new(s)?))
}

/// Marchenko-Pastur law with rate `lambda`: `S(z) = 1 / (lambda + z)`.
pub fn marchenko_pastur_s(lambda: &Rational, order: usize) -> Result<STransform> {
    if !lambda.is_positive() {
        return Err(Error::ParameterOutOfRange("lambda must be positive"));
    }
    let denom = Series::from_polynomial(&[lambda.clone(), Rational::one()], order);
    STransform::new(Series::one(order).div(&denom)?)
}
