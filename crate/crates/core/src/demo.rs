//! Fuss numbers of order 3 and the measure built from them.
//!
//! `B(z) = 1 + z B(z)^3` generates the Fuss numbers `1, 1, 3, 12, 55, ...`;
//! the measure `mu` with moment generating function `M = 1 / (1 - z B)` has
//! moments `1, 1, 2, 6, 23, 102, ...` and free cumulants
//! `1, 1, 2, 6, 21, 80, ...`. Its translation by `-1` is centered with
//! variance function `1 + 2m + 2m^2 + m^3`, which lies in `V` but not in
//! `V_inf`; the free cumulants witness this through a negative Hankel minor.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::hankel::{self, PsdVerdict};
use crate::membership::{self, Claim, CubicVerdict};
use crate::noncrossing;
use crate::rational::{self, Rational};
use crate::series::Series;
use crate::transforms::{self, FreeCumulants, MomentSequence};
use crate::varfun::{self, VarianceFunction};
use crate::{Error, Result};

/// `binomial(3n + 1, n) / (3n + 1)` for `n = 0..=order`.
pub fn fuss_sequence(order: usize) -> Vec<BigInt> {
    (0..=order as u64)
        .map(|n| rational::binomial(3 * n + 1, n) / BigInt::from(3 * n + 1))
        .collect()
}

/// `s(n) = sum_{i<n} fuss(i) s(n - 1 - i)`, cross-checked against
/// `s(n) = sum_{i<=n} (n - i) / (n + 2i) binomial(n + 2i, i)` for `n >= 1`.
pub fn a098746_sequence(order: usize) -> Result<Vec<BigInt>> {
    let fuss = fuss_sequence(order);
    let mut s: Vec<BigInt> = alloc::vec![BigInt::one()];
    for n in 1..=order {
        let value = (0..n).map(|i| &fuss[i] * &s[n - 1 - i]).sum();
        s.push(value);
    }
    for (n, value) in s.iter().enumerate().skip(1) {
        let closed: Rational = (0..=n as u64)
            .map(|i| {
                let n = n as u64;
                Rational::new(BigInt::from(n - i), BigInt::from(n + 2 * i))
                    * Rational::from_integer(rational::binomial(n + 2 * i, i))
            })
            .sum();
        if closed != Rational::from_integer(value.clone()) {
            return Err(Error::ClosedFormMismatch { n });
        }
    }
    Ok(s)
}

/// Coefficients `r_0..r_order` of the solution of `r - 1 = z r (1 - r + r^2)`.
pub fn a106228_sequence(order: usize) -> Vec<BigInt> {
    let mut r = Series::one(order);
    for _ in 0..order {
        let cubic = &(&Series::one(order) - &r) + &r.mul(&r);
        r = &Series::one(order) + &r.mul(&cubic).shift_up(1).truncate(order);
    }
    r.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// `B_3` by fixed-point iteration of `B = 1 + z B^3`.
fn fuss_series(order: usize) -> Series {
    let mut b = Series::one(order);
    for _ in 0..order {
        b = &Series::one(order) + &b.powu(3).shift_up(1).truncate(order);
    }
    b
}

fn to_integers(values: &[Rational]) -> Option<Vec<BigInt>> {
    values
        .iter()
        .map(|v| v.is_integer().then(|| v.to_integer()))
        .collect()
}

fn as_rationals(values: &[BigInt]) -> Vec<Rational> {
    values.iter().cloned().map(Rational::from_integer).collect()
}

/// Moments of the law of `X + shift` from the moments of `X`.
fn shift_moments(m: &MomentSequence, shift: &Rational) -> Result<MomentSequence> {
    let out = (0..=m.order() as u64)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    Rational::from_integer(rational::binomial(n, k))
                        * m.get(k as usize)
                        * rational::powi(shift, (n - k) as i64)
                })
                .sum()
        })
        .collect();
    MomentSequence::new(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoReport {
    pub order: usize,
    pub fuss: Vec<BigInt>,
    /// Moments `s(0..=order)` of `mu`.
    pub s: Vec<BigInt>,
    /// Free cumulants `kappa_1..kappa_order` of `mu`.
    pub kappa: Vec<BigInt>,
    /// `det(kappa_{i+j+2})` for `i, j = 0..=5`.
    pub det_witness: Rational,
    /// Variance function of `mu` translated by `-1`.
    pub varfun: VarianceFunction,
    pub cubic: CubicVerdict,
    pub identity_checks: BTreeMap<&'static str, bool>,
}

fn require(checks: &mut BTreeMap<&'static str, bool>, name: &'static str, ok: bool) -> Result<()> {
    checks.insert(name, ok);
    if ok {
        Ok(())
    } else {
        Err(Error::IdentityFailed(name))
    }
}

/// Assembles the sequences and verifies every identity along the way.
pub fn run_demo(order: usize) -> Result<DemoReport> {
    if order < 12 {
        return Err(Error::InsufficientOrder {
            needed: 12,
            available: order,
        });
    }
    let mut checks = BTreeMap::new();
    let fuss = fuss_sequence(order);
    let b3 = fuss_series(order);
    require(
        &mut checks,
        "fuss_fixed_point",
        b3.coeffs() == as_rationals(&fuss).as_slice(),
    )?;

    let s = a098746_sequence(order)?;
    let moments = MomentSequence::new(as_rationals(&s))?;
    let m_series = moments.generating_series();
    let from_b3 = (&Series::one(order) - &b3.shift_up(1).truncate(order)).recip()?;
    require(&mut checks, "moments_from_fuss", from_b3 == m_series)?;

    // z M^2 (M - 1) = z^2 M^3 + (M - 1)^3
    let m_minus_one = &m_series - &Series::one(order);
    let lhs = m_series
        .mul(&m_series)
        .mul(&m_minus_one)
        .shift_up(1)
        .truncate(order);
    let rhs = &m_series.powu(3).shift_up(2).truncate(order) + &m_minus_one.powu(3);
    require(&mut checks, "momgenfun", lhs == rhs)?;

    let r = a106228_sequence(order - 1);
    let r_series = Series::new(as_rationals(&r))?;
    let cubic_term = &(&Series::one(order - 1) - &r_series) + &r_series.mul(&r_series);
    let r_eq = &r_series - &Series::one(order - 1)
        == r_series.mul(&cubic_term).shift_up(1).truncate(order - 1);
    require(&mut checks, "rtransform_equation", r_eq)?;

    let cumulants = transforms::moments_to_free_cumulants(&moments);
    let kappa = to_integers(cumulants.as_slice()).ok_or(Error::IdentityFailed("kappa_integral"))?;
    require(&mut checks, "kappa_from_moments", kappa == r)?;
    let oracle_ok = (1..=order.min(10)).all(|n| {
        noncrossing::moments_via_noncrossing(&FreeCumulants::new(as_rationals(&r)), n)
            .is_ok_and(|v| &v == moments.get(n))
    });
    require(&mut checks, "kappa_noncrossing", oracle_ok)?;

    let s_transform = transforms::moments_to_s(&moments)?;
    let s_order = s_transform.order();
    let one = Series::one(s_order);
    let z = Series::z(s_order);
    let one_plus_z = &one + &z;
    let root = one_plus_z
        .mul(&(&one - &z.scale(&rational::int(3))))
        .pow_rational(&rational::ratio(1, 2))?;
    let closed = (&one_plus_z + &root).div(&one_plus_z.scale(&rational::int(2)))?;
    require(
        &mut checks,
        "s_transform_closed_form",
        &closed == s_transform.series(),
    )?;

    let shifted = transforms::translate(&cumulants, &-rational::one());
    let nu = transforms::free_cumulants_to_moments(&shifted);
    let oracle = shift_moments(&moments, &-rational::one())?;
    require(
        &mut checks,
        "translation",
        nu == oracle && shifted.get(1).is_zero(),
    )?;

    let seq: Vec<Rational> = cumulants.as_slice()[1..].to_vec();
    let report = hankel::hankel_minors(&seq, 0, 6)?;
    let det_witness = report.minors[5].clone();
    require(
        &mut checks,
        "kappa_hankel_refuted",
        matches!(report.verdict, PsdVerdict::Refuted { index: 5, .. }),
    )?;

    let v = varfun::varfun_from_moments(&nu)?;
    let expected = VarianceFunction::polynomial_ints(&[1, 2, 2, 1])?;
    require(
        &mut checks,
        "varfun_cubic",
        v.agrees_with(&expected) && v.order() == order - 2,
    )?;
    let varfun = expected;

    let cubic =
        membership::cubic_membership(&rational::int(2), &rational::int(2), &rational::int(1));
    require(
        &mut checks,
        "cubic_membership",
        cubic.v.claim == Claim::InV && cubic.v_infinity.claim == Claim::NotInVInfinity,
    )?;

    Ok(DemoReport {
        order,
        fuss,
        s,
        kappa,
        det_witness,
        varfun,
        cubic,
        identity_checks: checks,
    })
}
