//! Polynomial families attached to a variance function.
//!
//! Expanding the CSK density `V(m) / (V(m) + m(m - x)) = sum P_n(x) m^n`
//! gives polynomials that satisfy
//! `x P_n = P_{n-1} + sum_{k=0}^{n} a_k P_{n+1-k}` with `a_k` the Taylor
//! coefficients of `V`. When `V` is a polynomial of degree `d + 1` this is a
//! finite `(d + 2)`-term recursion and the family is `nu`-`d`-orthogonal:
//! `int P_n dnu = 0` for `n >= 1` and `int P_n P_k dnu = 0` whenever
//! `n >= 2 + (k - 1) d`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::hankel::{self, HankelReport, PsdVerdict};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::series::Series;
use crate::transforms::MomentSequence;
use crate::varfun::{self, VarianceFunction};
use crate::{Error, Result};

/// Coefficients of a polynomial recursion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RecursionSpec {
    /// `(a_0, ..., a_K)` in `x P_n = P_{n-1} + sum_{k=0}^{n} a_k P_{n+1-k}`,
    /// with `a_k = 0` past `K`.
    General(Vec<Rational>),
    /// `(b_1, ..., b_{d+1})` in the finite recursion
    /// `x P_n = P_{n+1} + sum_{k=1}^{min(d+1, n)} b_k P_{n+1-k}` for
    /// `n >= 2`, started from `P_0 = 1`, `P_1 = x`, `P_2 = x^2 - b_1 x - 1`.
    Finite(Vec<Rational>),
}

impl RecursionSpec {
    /// The variance function whose density generates this family:
    /// `sum a_k m^k` for the general form, and
    /// `1 + b_1 m + (b_2 - 1) m^2 + sum_{k>=3} b_k m^k` for the finite one.
    pub fn associated_varfun(&self) -> Result<VarianceFunction> {
        match self {
            RecursionSpec::General(a) => VarianceFunction::polynomial(a),
            RecursionSpec::Finite(b) => {
                let mut coeffs = alloc::vec![Rational::zero(); b.len().max(2) + 1];
                coeffs[0] = Rational::one();
                for (k, bk) in b.iter().enumerate() {
                    coeffs[k + 1] += bk;
                }
                coeffs[2] -= Rational::one();
                VarianceFunction::polynomial(&coeffs)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySource {
    VarianceFunction(VarianceFunction),
    Recursion(RecursionSpec),
}

/// `P_0, ..., P_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFamily {
    polys: Vec<Polynomial>,
    source: FamilySource,
}

impl PolynomialFamily {
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn source(&self) -> &FamilySource {
        &self.source
    }

    /// Index of the last polynomial.
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    /// Replaces `P_n` (for building deliberately broken families in checks).
    pub fn with_replaced(mut self, n: usize, p: Polynomial) -> Self {
        self.polys[n] = p;
        self
    }
}

/// General recursion with coefficients `a_k` (zero past the slice).
fn run_general_recursion(a: &[Rational], count: usize) -> Result<Vec<Polynomial>> {
    let a0 = a
        .first()
        .filter(|v| !v.is_zero())
        .ok_or(Error::ZeroLeadCoefficient)?;
    let inv = a0.recip();
    let mut polys = alloc::vec![Polynomial::one()];
    for n in 0..count {
        // a_0 P_{n+1} = x P_n - P_{n-1} - sum_{k=1}^{n} a_k P_{n+1-k}
        let mut rhs = polys[n].mul_x();
        if n >= 1 {
            rhs = &rhs - &polys[n - 1];
        }
        for k in 1..=n {
            if let Some(ak) = a.get(k).filter(|v| !v.is_zero()) {
                rhs = &rhs - &polys[n + 1 - k].scale(ak);
            }
        }
        polys.push(rhs.scale(&inv));
    }
    Ok(polys)
}

/// `P_0..P_order` from the Taylor coefficients of `v`.
pub fn polynomials_from_varfun(v: &VarianceFunction, order: usize) -> Result<PolynomialFamily> {
    let series = v.series_to(order.saturating_sub(1))?;
    let polys = run_general_recursion(series.coeffs(), order)?;
    Ok(PolynomialFamily {
        polys,
        source: FamilySource::VarianceFunction(v.clone()),
    })
}

/// `P_0..P_order` from an explicit recursion.
pub fn polynomials_from_recursion(spec: &RecursionSpec, order: usize) -> Result<PolynomialFamily> {
    let polys = match spec {
        RecursionSpec::General(a) => run_general_recursion(a, order)?,
        RecursionSpec::Finite(b) => {
            let coeff = |k: usize| b.get(k - 1).cloned().unwrap_or_else(Rational::zero);
            let mut polys = alloc::vec![Polynomial::one(), Polynomial::x()];
            if order >= 2 {
                let p2 = &(&Polynomial::x().mul_x() - &Polynomial::x().scale(&coeff(1)))
                    - &Polynomial::one();
                polys.push(p2);
            }
            for n in 2..order {
                // P_{n+1} = x P_n - sum_{k=1}^{min(d+1, n)} b_k P_{n+1-k}
                let mut next = polys[n].mul_x();
                for k in 1..=b.len().min(n) {
                    next = &next - &polys[n + 1 - k].scale(&coeff(k));
                }
                polys.push(next);
            }
            polys.truncate(order + 1);
            polys
        }
    };
    Ok(PolynomialFamily {
        polys,
        source: FamilySource::Recursion(spec.clone()),
    })
}

/// Checks `(sum_{n<=N} P_n(x) z^n) (V(z) + z(z - x)) = V(z) mod z^{N+1}`
/// coefficient by coefficient, as polynomials in `x`.
pub fn generating_function_identity_check(
    fam: &PolynomialFamily,
    v: &VarianceFunction,
    order: usize,
) -> Result<bool> {
    if fam.order() < order {
        return Err(Error::InsufficientOrder {
            needed: order,
            available: fam.order(),
        });
    }
    let vs = v.series_to(order)?;
    // W(z) = V(z) + z^2 - x z, with polynomial-in-x coefficients
    let mut w: Vec<Polynomial> = vs
        .coeffs()
        .iter()
        .cloned()
        .map(Polynomial::constant)
        .collect();
    if order >= 1 {
        w[1] = &w[1] - &Polynomial::x();
    }
    if order >= 2 {
        w[2] = &w[2] + &Polynomial::one();
    }
    for j in 0..=order {
        let mut acc = Polynomial::zero();
        for n in 0..=j {
            acc = &acc + &(fam.get(n) * &w[j - n]);
        }
        if acc != Polynomial::constant(vs.coeff(j).clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G[n][k] = L(P_n P_k)` for the moment functional `L(x^j) = m_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    entries: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn get(&self, n: usize, k: usize) -> &Rational {
        &self.entries[n][k]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Gram matrix of `P_0..P_N` against moments `m_0..m_{2N}`.
pub fn gram_matrix(fam: &PolynomialFamily, m: &MomentSequence) -> Result<GramMatrix> {
    let needed = fam
        .polys
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0)
        * 2;
    if m.order() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            available: m.order(),
        });
    }
    let size = fam.polys.len();
    let entries = (0..size)
        .map(|n| {
            (0..size)
                .map(|k| (fam.get(n) * fam.get(k)).apply_functional(m.as_slice()))
                .collect()
        })
        .collect();
    Ok(GramMatrix { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub n: usize,
    pub k: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DOrthogonalityReport {
    pub d: usize,
    /// Every required zero is exactly zero.
    pub pattern_ok: bool,
    /// Nonzero entries where zeros are required. `k = 0` marks the
    /// `int P_n dnu = 0` conditions; the rest are ordered by `k`, then `n`.
    pub violations: Vec<Violation>,
    /// Hankel minors of `m_0..m_{2N}`; kept separate because the zero pattern
    /// means nothing for a functional that is not positive.
    pub hankel_evidence: HankelReport,
    /// The Gram matrix has a vanishing Hankel minor (finite rank).
    pub degenerate: bool,
    pub order_checked: usize,
}

/// Builds the moments, family and Gram matrix of `v` through `order` and
/// checks the `nu`-`d`-orthogonality zero pattern for all `n, k <= order`.
pub fn d_orthogonality_check(
    v: &VarianceFunction,
    d: usize,
    order: usize,
) -> Result<DOrthogonalityReport> {
    if d == 0 {
        return Err(Error::ParameterOutOfRange("d must be at least 1"));
    }
    if order < d + 3 {
        return Err(Error::InsufficientOrder {
            needed: d + 3,
            available: order,
        });
    }
    let moments = varfun::moments_from_varfun(v, 2 * order)?;
    let fam = polynomials_from_varfun(v, order)?;
    let gram = gram_matrix(&fam, &moments)?;
    let mut violations = Vec::new();
    for n in 1..=order {
        if !gram.get(0, n).is_zero() {
            violations.push(Violation {
                n,
                k: 0,
                value: gram.get(0, n).clone(),
            });
        }
    }
    for k in 1..=order {
        let start = 2 + (k - 1) * d;
        for n in start..=order {
            if !gram.get(n, k).is_zero() {
                violations.push(Violation {
                    n,
                    k,
                    value: gram.get(n, k).clone(),
                });
            }
        }
    }
    let hankel_evidence = hankel::hankel_minors(moments.as_slice(), 0, order + 1)?;
    let degenerate = matches!(hankel_evidence.verdict, PsdVerdict::Degenerate { .. });
    Ok(DOrthogonalityReport {
        d,
        pattern_ok: violations.is_empty(),
        violations,
        hankel_evidence,
        degenerate,
        order_checked: order,
    })
}

/// `T_0..T_count` with `sum T_n(x) z^n = M(z) / (N(z) - z x)`.
pub fn polynomials_from_gf(
    m_series: &Series,
    n_series: &Series,
    count: usize,
) -> Result<Vec<Polynomial>> {
    let available = m_series.order().min(n_series.order());
    if available < count {
        return Err(Error::InsufficientOrder {
            needed: count,
            available,
        });
    }
    let n0 = n_series.constant_term();
    if n0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv = n0.recip();
    let mut out: Vec<Polynomial> = Vec::with_capacity(count + 1);
    for n in 0..=count {
        // N_0 T_n = M_n + x T_{n-1} - sum_{k=1}^{n} N_k T_{n-k}
        let mut rhs = Polynomial::constant(m_series.coeff(n).clone());
        if n >= 1 {
            rhs = &rhs + &out[n - 1].mul_x();
        }
        for k in 1..=n {
            rhs = &rhs - &out[n - k].scale(n_series.coeff(k));
        }
        out.push(rhs.scale(&inv));
    }
    Ok(out)
}

/// Outcome of reducing `M / (N - z x)` to a CSK density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub t: Rational,
    pub varfun: VarianceFunction,
}

/// Given a generating pair `(M, N)` and the moments of the orthogonalizing
/// measure, recovers `t = V(0) / M(0)` and checks `M(z) = V(t z) / t` and
/// `N(z) = M(z) + t z^2` through the common truncation order.
pub fn reduce_general_gf(
    m_series: &Series,
    n_series: &Series,
    m: &MomentSequence,
) -> Result<Reduction> {
    let m0 = m_series.constant_term();
    if m0.is_zero() || m0 != n_series.constant_term() {
        return Err(Error::InconsistentPair("need M(0) = N(0) != 0"));
    }
    let v = varfun::varfun_from_centered_moments(m)?;
    let t = v.series().constant_term() / m0;
    let order = m_series.order().min(n_series.order());
    let tz2 = Series::from_polynomial(&[Rational::zero(), Rational::zero(), t.clone()], order);
    if (n_series - m_series) != tz2 {
        return Err(Error::InconsistentPair("N - M differs from t z^2"));
    }
    let check_order = m_series.order().min(v.order());
    let scaled = v
        .series()
        .truncate(check_order)
        .scale_argument(&t)
        .scale(&t.recip());
    if m_series.truncate(check_order) != scaled {
        return Err(Error::InconsistentPair("M differs from V(t z) / t"));
    }
    Ok(Reduction { t, varfun: v })
}

/// `t^n P_n` for each member.
pub fn rescale_family(polys: &[Polynomial], t: &Rational) -> Vec<Polynomial> {
    polys
        .iter()
        .enumerate()
        .map(|(n, p)| p.scale(&rational::powi(t, n as i64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::new(ints(c))
    }

    fn vf(c: &[i64]) -> VarianceFunction {
        VarianceFunction::polynomial_ints(c).unwrap()
    }

    #[test]
    fn chebyshev_type_family() {
        let fam = polynomials_from_varfun(&vf(&[1]), 3).unwrap();
        assert_eq!(fam.get(1), &poly(&[0, 1]));
        assert_eq!(fam.get(2), &poly(&[-1, 0, 1]));
        assert_eq!(fam.get(3), &poly(&[0, -2, 0, 1]));
    }

    #[test]
    fn cubic_family_second_member() {
        let fam = polynomials_from_varfun(&vf(&[1, 2, 2, 1]), 4).unwrap();
        assert_eq!(fam.get(2), &poly(&[-1, -2, 1]));
        let v = VarianceFunction::polynomial(&[int(1), ratio(5, 3), int(-7)]).unwrap();
        assert_eq!(
            polynomials_from_varfun(&v, 1).unwrap().get(1),
            &poly(&[0, 1])
        );
    }

    #[test]
    fn recursion_forms_agree_with_varfun() {
        let general =
            polynomials_from_recursion(&RecursionSpec::General(ints(&[1, 2, 2, 1])), 9).unwrap();
        let direct = polynomials_from_varfun(&vf(&[1, 2, 2, 1]), 9).unwrap();
        assert_eq!(general.polys(), direct.polys());
        // finite form with (b1, b2, b3) = (a1, a2 + 1, a3)
        let spec = RecursionSpec::Finite(ints(&[2, 3, 1]));
        assert_eq!(spec.associated_varfun().unwrap(), vf(&[1, 2, 2, 1]));
        let finite = polynomials_from_recursion(&spec, 9).unwrap();
        assert_eq!(finite.polys(), direct.polys());
    }

    #[test]
    fn four_step_recursion() {
        // x P1 = P2 + a P1 + P0; x P2 = P3 + a P2 + b P1;
        // x P_n = P_{n+1} + a P_n + b P_{n-1} + c P_{n-2}
        let (a, b, c) = (ratio(1, 2), int(3), ratio(-2, 5));
        let fam = polynomials_from_recursion(
            &RecursionSpec::Finite(alloc::vec![a.clone(), b.clone(), c.clone()]),
            8,
        )
        .unwrap();
        let p = fam.polys();
        assert_eq!(p[1].mul_x(), &(&p[2] + &p[1].scale(&a)) + &p[0]);
        assert_eq!(p[2].mul_x(), &(&p[3] + &p[2].scale(&a)) + &p[1].scale(&b));
        for n in 3..8 {
            let rhs = &(&(&p[n + 1] + &p[n].scale(&a)) + &p[n - 1].scale(&b)) + &p[n - 2].scale(&c);
            assert_eq!(p[n].mul_x(), rhs);
        }
    }

    #[test]
    fn finite_recursion_with_zero_coefficients() {
        // b = 0 is the two-point law V = 1 - m^2: P_n = x^{n-2} (x^2 - 1)
        let spec = RecursionSpec::Finite(ints(&[0, 0]));
        assert_eq!(spec.associated_varfun().unwrap(), vf(&[1, 0, -1]));
        let fam = polynomials_from_recursion(&spec, 5).unwrap();
        assert_eq!(fam.get(4), &poly(&[0, 0, -1, 0, 1]));
        assert_eq!(
            polynomials_from_recursion(&RecursionSpec::General(ints(&[0, 1])), 3),
            Err(Error::ZeroLeadCoefficient)
        );
    }

    #[test]
    fn generating_function_identity() {
        let v = vf(&[1]);
        let fam = polynomials_from_varfun(&v, 8).unwrap();
        assert!(generating_function_identity_check(&fam, &v, 8).unwrap());
        let v = vf(&[1, 2, 2, 1]);
        let fam = polynomials_from_varfun(&v, 10).unwrap();
        assert!(generating_function_identity_check(&fam, &v, 10).unwrap());
        let bumped = &fam.get(2).clone() + &Polynomial::one();
        let broken = fam.with_replaced(2, bumped);
        assert!(!generating_function_identity_check(&broken, &v, 10).unwrap());
    }

    #[test]
    fn semicircle_gram_matrix_is_identity() {
        let v = vf(&[1]);
        let fam = polynomials_from_varfun(&v, 5).unwrap();
        let m = varfun::moments_from_varfun(&v, 10).unwrap();
        let g = gram_matrix(&fam, &m).unwrap();
        for n in 0..=5 {
            for k in 0..=5 {
                assert_eq!(g.get(n, k), &if n == k { int(1) } else { int(0) });
            }
        }
        let short = varfun::moments_from_varfun(&v, 8).unwrap();
        assert_eq!(
            gram_matrix(&fam, &short),
            Err(Error::InsufficientMoments {
                needed: 10,
                available: 8
            })
        );
    }

    #[test]
    fn point_mass_at_zero_against_monomials() {
        let fam = polynomials_from_recursion(&RecursionSpec::Finite(Vec::new()), 0).unwrap();
        assert_eq!(fam.order(), 0);
        let monomials = PolynomialFamily {
            polys: (0..4)
                .map(|n| {
                    Polynomial::new({
                        let mut c = alloc::vec![Rational::zero(); n + 1];
                        c[n] = Rational::one();
                        c
                    })
                })
                .collect(),
            source: FamilySource::Recursion(RecursionSpec::General(ints(&[1]))),
        };
        let m = MomentSequence::from_ints(&[1, 0, 0, 0, 0, 0, 0]).unwrap();
        let g = gram_matrix(&monomials, &m).unwrap();
        for n in 0..4 {
            for k in 0..4 {
                assert_eq!(g.get(n, k).is_zero(), n + k > 0);
            }
        }
    }

    #[test]
    fn cubic_is_two_orthogonal_but_not_one_orthogonal() {
        let v = vf(&[1, 2, 2, 1]);
        let two = d_orthogonality_check(&v, 2, 10).unwrap();
        assert!(two.pattern_ok);
        let one = d_orthogonality_check(&v, 1, 10).unwrap();
        assert!(!one.pattern_ok);
        // int x P_3 still vanishes; the first nonzero entry is int P_2 P_3
        assert_eq!(
            one.violations[0],
            Violation {
                n: 3,
                k: 2,
                value: int(1)
            }
        );
        assert!(one.violations.iter().all(|v| v.k >= 2));
    }

    #[test]
    fn quadratic_is_orthogonal() {
        let v = VarianceFunction::polynomial(&[int(1), ratio(3, 2), ratio(1, 2)]).unwrap();
        let report = d_orthogonality_check(&v, 1, 8).unwrap();
        assert!(report.pattern_ok);
        assert_eq!(report.hankel_evidence.verdict, PsdVerdict::Positive);
        assert!(matches!(
            d_orthogonality_check(&v, 1, 3),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn reduction_of_a_rescaled_pair() {
        // V = 1 + m, M = V(2z)/2, N = M + 2 z^2
        let m_series = Series::new(alloc::vec![
            ratio(1, 2),
            int(1),
            int(0),
            int(0),
            int(0),
            int(0)
        ])
        .unwrap();
        let n_series = &m_series + &Series::from_ints(&[0, 0, 2], 5);
        let moments = MomentSequence::from_ints(&[1, 0, 1, 1, 3, 6, 15, 36, 91, 232]).unwrap();
        let red = reduce_general_gf(&m_series, &n_series, &moments).unwrap();
        assert_eq!(red.t, int(2));
        assert!(red.varfun.agrees_with(&vf(&[1, 1])));
        let t_polys = polynomials_from_gf(&m_series, &n_series, 5).unwrap();
        let p = polynomials_from_varfun(&vf(&[1, 1]), 5).unwrap();
        assert_eq!(t_polys, rescale_family(p.polys(), &int(2)));

        let bad = &m_series + &Series::from_ints(&[0, 0, 0, 1], 5);
        assert!(matches!(
            reduce_general_gf(&m_series, &bad, &moments),
            Err(Error::InconsistentPair(_))
        ));
    }
}
