//! Variance functions and the operations that produce new ones.
//!
//! For a centered measure `nu` with free cumulants `kappa_n`, put
//! `r(z) = sum_{n>=0} kappa_{n+1} z^n`. The compositional inverse of `r` is
//! `z / V(z)`, where `V` is the variance function of the CSK family generated
//! by `nu`. That single reversion is the bridge in both directions.

use num_traits::{One, Signed, Zero};

use crate::membership::{Claim, MembershipVerdict};
use crate::rational::{self, Rational};
use crate::series::Series;
use crate::transforms::{self, FreeCumulants, MomentSequence, STransform};
use crate::{Error, Result};

/// A variance function, as a series in the mean `m`.
///
/// A value built from a polynomial is flagged exact: its coefficients past
/// the stored order are known to vanish, so it can be padded to any order.
/// Anything else is only known through its truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarianceFunction {
    series: Series,
    exact: bool,
}

impl VarianceFunction {
    /// A truncated series; needs `V(0) != 0`.
    pub fn from_series(series: Series) -> Result<Self> {
        Self::build(series, false)
    }

    /// A polynomial `sum coeffs[k] m^k`; needs `V(0) != 0`.
    pub fn polynomial(coeffs: &[Rational]) -> Result<Self> {
        let degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        Self::build(Series::from_polynomial(coeffs, degree), true)
    }

    pub fn polynomial_ints(coeffs: &[i64]) -> Result<Self> {
        Self::polynomial(&rational::ints(coeffs))
    }

    fn build(series: Series, exact: bool) -> Result<Self> {
        if series.constant_term().is_zero() {
            return Err(Error::ZeroVarianceAtOrigin);
        }
        Ok(VarianceFunction { series, exact })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    /// Stored order; for a polynomial this is its degree.
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exact
    }

    /// `V(0) = 1`, the unit-variance convention.
    pub fn is_normalized(&self) -> bool {
        self.series.constant_term().is_one()
    }

    /// The series through `order`, padding a polynomial with zeros.
    pub fn series_to(&self, order: usize) -> Result<Series> {
        if order <= self.order() {
            Ok(self.series.truncate(order))
        } else if self.exact {
            Ok(Series::from_polynomial(self.series.coeffs(), order))
        } else {
            Err(Error::InsufficientOrder {
                needed: order,
                available: self.order(),
            })
        }
    }

    /// Coefficient of `m^k`, if known.
    pub fn coeff(&self, k: usize) -> Option<Rational> {
        match self.series.coeffs().get(k) {
            Some(c) => Some(c.clone()),
            None if self.exact => Some(Rational::zero()),
            None => None,
        }
    }

    /// True if the two agree on every coefficient both of them know.
    pub fn agrees_with(&self, other: &VarianceFunction) -> bool {
        let order = match (self.exact, other.exact) {
            (true, true) => self.order().max(other.order()),
            (true, false) => other.order(),
            (false, true) => self.order(),
            (false, false) => self.order().min(other.order()),
        };
        match (self.series_to(order), other.series_to(order)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Order at which a pair can be combined and whether the result is exact.
    fn common_order(&self, other: &VarianceFunction) -> (usize, bool) {
        match (self.exact, other.exact) {
            (true, true) => (self.order().max(other.order()), true),
            (true, false) => (other.order(), false),
            (false, true) => (self.order(), false),
            (false, false) => (self.order().min(other.order()), false),
        }
    }

    fn map(&self, min_order: usize, f: impl FnOnce(Series) -> Series) -> Result<Self> {
        let order = if self.exact {
            self.order().max(min_order)
        } else {
            self.order()
        };
        let series = f(self.series_to(order)?);
        if self.exact {
            let coeffs = series.into_coeffs();
            Self::polynomial(&coeffs)
        } else {
            Self::from_series(series)
        }
    }
}

/// Variance function of centered moments `m_0..m_N` with `m_2 > 0`, known
/// through order `N - 2`. `V(0)` is the variance.
pub fn varfun_from_centered_moments(m: &MomentSequence) -> Result<VarianceFunction> {
    if m.order() < 2 {
        return Err(Error::InsufficientOrder {
            needed: 2,
            available: m.order(),
        });
    }
    if !m.get(1).is_zero() {
        return Err(Error::NotCentered);
    }
    if !m.get(2).is_positive() {
        return Err(Error::NonPositiveVariance);
    }
    let kappa = transforms::moments_to_free_cumulants(m);
    // r(z) = kappa_1 + kappa_2 z + ... through order N - 1; kappa_1 = 0.
    let r = Series::new(kappa.into_vec())?;
    let z_over_v = r.revert()?;
    let v = z_over_v.shift_down(1)?.recip()?;
    VarianceFunction::from_series(v)
}

/// Variance function of a centered, unit-variance moment sequence.
pub fn varfun_from_moments(m: &MomentSequence) -> Result<VarianceFunction> {
    if m.order() < 2 {
        return Err(Error::InsufficientOrder {
            needed: 2,
            available: m.order(),
        });
    }
    if !m.get(1).is_zero() {
        return Err(Error::NotCentered);
    }
    if !m.get(2).is_one() {
        return Err(Error::NotUnitVariance);
    }
    varfun_from_centered_moments(m)
}

/// Moments `m_0..m_order` of the measure with variance function `v`. Needs
/// `V(0) = 1` and `v` known through `order - 2`.
pub fn moments_from_varfun(v: &VarianceFunction, order: usize) -> Result<MomentSequence> {
    if !v.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if order < 2 {
        let mut m = alloc::vec![Rational::one()];
        if order == 1 {
            m.push(Rational::zero());
        }
        return MomentSequence::new(m);
    }
    let series = v.series_to(order - 2)?;
    let z_over_v = series.recip()?.shift_up(1);
    let r = z_over_v.revert()?;
    let kappa = FreeCumulants::new(r.into_coeffs());
    Ok(transforms::free_cumulants_to_moments(&kappa))
}

/// The two classes of variance functions: `V` (compactly supported,
/// centered, unit variance) and its subclass `V_inf` of those stable under
/// every rescaling of the mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarianceClass {
    V,
    VInfinity,
}

/// Which closure rule justifies a class claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassRule {
    /// `V(m/c)`, `c >= 1`.
    MeanRescaling,
    /// `V + a m`.
    LinearShift,
    /// `V1 + V2 - 1` with both in `V_inf`.
    SumOfRTransforms,
    /// `c V - c + 1` with `c >= 1` and `V` in `V_inf`.
    RTransformPower,
    /// `V - m^2` with `V` in `V_inf`.
    SquareRemoval,
    /// `V + m^2`.
    SquareAddition,
    /// `V(-m)`.
    Reflection,
    /// `(1 + z) / S(z)` for an S-transform with `S(0) = 1`.
    STransformQuotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassClaim {
    pub class: VarianceClass,
    pub rule: ClassRule,
}

/// An operation result together with the class the closure rules assign
/// to it, if any rule applies to the asserted input classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedVarfun {
    pub varfun: VarianceFunction,
    pub claim: Option<ClassClaim>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarfunOp {
    ScaleMean(Rational),
    AddLinear(Rational),
    SumMinusOne,
    ScalarCombine(Rational),
    SubSquare,
    AddSquare,
    Reflect,
}

/// A variance function together with the class its caller vouches for.
#[derive(Clone, Copy, Debug)]
pub struct Operand<'a> {
    pub varfun: &'a VarianceFunction,
    pub class: VarianceClass,
}

impl<'a> Operand<'a> {
    pub fn new(varfun: &'a VarianceFunction, class: VarianceClass) -> Self {
        Operand { varfun, class }
    }
}

fn add_at(series: Series, k: usize, amount: &Rational) -> Series {
    let mut coeffs = series.into_coeffs();
    coeffs[k] += amount;
    Series::from_vec(coeffs)
}

/// Applies one operation at the series level. Inputs must be normalized;
/// the output class is whatever the closure rules give for the asserted
/// input classes, or `None` when no rule covers them.
pub fn apply_varfun_op(
    op: &VarfunOp,
    first: Operand<'_>,
    second: Option<Operand<'_>>,
) -> Result<ClassifiedVarfun> {
    let v = first.varfun;
    if !v.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let in_inf = first.class == VarianceClass::VInfinity;
    let claim = |class, rule| Some(ClassClaim { class, rule });
    let (varfun, claim) = match op {
        VarfunOp::ScaleMean(c) => {
            if *c < Rational::one() {
                return Err(Error::ParameterOutOfRange("mean rescaling needs c >= 1"));
            }
            let inv = c.recip();
            (
                v.map(0, |s| s.scale_argument(&inv))?,
                claim(first.class, ClassRule::MeanRescaling),
            )
        }
        VarfunOp::AddLinear(a) => (
            v.map(1, |s| add_at(s, 1, a))?,
            claim(first.class, ClassRule::LinearShift),
        ),
        VarfunOp::SubSquare => (
            v.map(2, |s| add_at(s, 2, &-Rational::one()))?,
            if in_inf {
                claim(VarianceClass::V, ClassRule::SquareRemoval)
            } else {
                None
            },
        ),
        VarfunOp::AddSquare => (
            v.map(2, |s| add_at(s, 2, &Rational::one()))?,
            claim(VarianceClass::VInfinity, ClassRule::SquareAddition),
        ),
        VarfunOp::Reflect => (
            v.map(0, |s| s.scale_argument(&-Rational::one()))?,
            claim(first.class, ClassRule::Reflection),
        ),
        VarfunOp::ScalarCombine(c) => {
            if *c < Rational::one() {
                return Err(Error::ParameterOutOfRange(
                    "scalar combination needs c >= 1",
                ));
            }
            let shift = Rational::one() - c;
            (
                v.map(0, |s| add_at(s.scale(c), 0, &shift))?,
                if in_inf {
                    claim(VarianceClass::VInfinity, ClassRule::RTransformPower)
                } else {
                    None
                },
            )
        }
        VarfunOp::SumMinusOne => {
            let other = second.ok_or(Error::MissingOperand)?;
            let w = other.varfun;
            if !w.is_normalized() {
                return Err(Error::NotNormalized);
            }
            let (order, exact) = v.common_order(w);
            let sum = &v.series_to(order)? + &w.series_to(order)?;
            let sum = add_at(sum, 0, &-Rational::one());
            let varfun = if exact {
                VarianceFunction::polynomial(sum.coeffs())?
            } else {
                VarianceFunction::from_series(sum)?
            };
            let both_inf = in_inf && other.class == VarianceClass::VInfinity;
            (
                varfun,
                if both_inf {
                    claim(VarianceClass::VInfinity, ClassRule::SumOfRTransforms)
                } else {
                    None
                },
            )
        }
    };
    Ok(ClassifiedVarfun { varfun, claim })
}

/// Result of [`product_form_varfun`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    pub varfun: VarianceFunction,
    pub verdict: MembershipVerdict,
}

/// `a z + b z^2 + (1 + c z) prod_j (1 + b_j z)^{p_j}`.
///
/// Needs `c > 0`, `b_j > 0`, `p_j > 0` and `max(p_j, c/b_j) >= 1`. The
/// result is in `V` when `b >= -1` and in `V_inf` when `b >= 0`; for
/// `b < -1` it is returned without a class. With integer exponents the
/// result is an exact polynomial, otherwise it is truncated at `order`.
pub fn product_form_varfun(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    factors: &[(Rational, Rational)],
    order: usize,
) -> Result<ProductForm> {
    if !c.is_positive() {
        return Err(Error::ParameterOutOfRange("c must be positive"));
    }
    for (bj, pj) in factors {
        if !bj.is_positive() || !pj.is_positive() {
            return Err(Error::ParameterOutOfRange(
                "factor bases and exponents must be positive",
            ));
        }
        if *pj < Rational::one() && c / bj < Rational::one() {
            return Err(Error::ParameterOutOfRange("need max(p_j, c/b_j) >= 1"));
        }
    }
    let integral = factors.iter().all(|(_, p)| p.is_integer());
    let work_order = if integral {
        let degree = factors.iter().fold(Rational::one(), |acc, (_, p)| acc + p);
        let degree: usize = degree.to_integer().try_into().unwrap_or(usize::MAX);
        degree.max(2)
    } else {
        order.max(2)
    };
    let one = Rational::one();
    let mut product = Series::from_polynomial(&[one.clone(), c.clone()], work_order);
    for (bj, pj) in factors {
        let base = Series::from_polynomial(&[one.clone(), bj.clone()], work_order);
        product = product.mul(&base.pow_rational(pj)?);
    }
    let product = add_at(add_at(product, 1, a), 2, b);
    let varfun = if integral {
        VarianceFunction::polynomial(product.coeffs())?
    } else {
        VarianceFunction::from_series(product.truncate(order))?
    };
    let claim = if *b >= Rational::zero() {
        Claim::InVInfinity
    } else if *b >= -Rational::one() {
        Claim::InV
    } else {
        Claim::Inconclusive
    };
    Ok(ProductForm {
        varfun,
        verdict: MembershipVerdict {
            claim,
            witness: None,
            order_checked: None,
        },
    })
}

/// `V(z) = (1 + z) / S(z)` for an S-transform with `S(0) = 1`, truncated to
/// `min(order, order of S)`.
pub fn varfun_from_s(s: &STransform, order: usize) -> Result<ClassifiedVarfun> {
    if !s.series().constant_term().is_one() {
        return Err(Error::NonUnitS0);
    }
    let order = order.min(s.order());
    let v = Series::from_ints(&[1, 1], order).div(&s.series().truncate(order))?;
    Ok(ClassifiedVarfun {
        varfun: VarianceFunction::from_series(v)?,
        claim: Some(ClassClaim {
            class: VarianceClass::VInfinity,
            rule: ClassRule::STransformQuotient,
        }),
    })
}
