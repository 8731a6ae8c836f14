//! Membership of variance functions in `V` and `V_inf`.
//!
//! Two kinds of answers are kept apart. Closed-form criteria (cubics, the
//! pure quartic `1 + a m^4`) give definite `In*`/`NotIn*` claims. Everything
//! else is finite-order evidence from Hankel minors: a negative minor refutes
//! membership, but positive minors through any finite order certify nothing,
//! so the best such a check can say is `EvidenceConsistent`.

use crate::hankel::{self, HankelReport, PsdVerdict};
use crate::rational::{self, Rational};
use crate::transforms::{self, FreeCumulants};
use crate::varfun::{self, VarianceFunction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    InV,
    InVInfinity,
    NotInV,
    NotInVInfinity,
    EvidenceConsistent,
    EvidenceRefuted,
    Inconclusive,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::InV => "IN_V",
            Claim::InVInfinity => "IN_V_INFINITY",
            Claim::NotInV => "NOT_IN_V",
            Claim::NotInVInfinity => "NOT_IN_V_INFINITY",
            Claim::EvidenceConsistent => "EVIDENCE_CONSISTENT",
            Claim::EvidenceRefuted => "EVIDENCE_REFUTED",
            Claim::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The criterion compares `lhs >= rhs`.
    Criterion {
        lhs: Rational,
        rhs: Rational,
    },
    /// The criterion asks for `lower <= value <= upper`.
    Interval {
        value: Rational,
        lower: Rational,
        upper: Rational,
    },
    Hankel(HankelReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MembershipVerdict {
    pub claim: Claim,
    pub witness: Option<Witness>,
    /// Truncation order behind finite-order evidence; `None` for closed-form
    /// criteria.
    pub order_checked: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicVerdict {
    pub v: MembershipVerdict,
    pub v_infinity: MembershipVerdict,
}

/// `1 + a m + b m^2 + c m^3` is in `V` iff `(b + 1)^3 >= 27 c^2`, and in
/// `V_inf` iff `b^3 >= 27 c^2`. The linear coefficient plays no role.
pub fn cubic_membership(_a: &Rational, b: &Rational, c: &Rational) -> CubicVerdict {
    let rhs = rational::int(27) * c * c;
    let shifted = b + rational::one();
    let lhs_v = &shifted * &shifted * &shifted;
    let lhs_inf = b * b * b;
    let verdict = |lhs: Rational, yes: Claim, no: Claim| MembershipVerdict {
        claim: if lhs >= rhs { yes } else { no },
        witness: Some(Witness::Criterion {
            lhs,
            rhs: rhs.clone(),
        }),
        order_checked: None,
    };
    CubicVerdict {
        v: verdict(lhs_v, Claim::InV, Claim::NotInV),
        v_infinity: verdict(lhs_inf, Claim::InVInfinity, Claim::NotInVInfinity),
    }
}

/// `1 + a m^4` is in `V` iff `-1 <= 12 a <= 3`.
pub fn quartic_axis_membership(a: &Rational) -> MembershipVerdict {
    let value = rational::int(12) * a;
    let lower = rational::int(-1);
    let upper = rational::int(3);
    let inside = lower <= value && value <= upper;
    MembershipVerdict {
        claim: if inside { Claim::InV } else { Claim::NotInV },
        witness: Some(Witness::Interval {
            value,
            lower,
            upper,
        }),
        order_checked: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    V,
    VInfinity,
}

/// Hankel evidence for membership through truncation order `order`.
///
/// For `V` the moments `m_0..m_order` of the generating measure are checked.
/// For `V_inf`, `V - 1` is read as the R-transform of a measure `omega` and
/// the moments of `omega` are checked instead; these are the shifted free
/// cumulants `kappa_{n+2}` of the generating measure. A zero minor before
/// any negative one gives `Inconclusive`.
pub fn membership_evidence(
    v: &VarianceFunction,
    order: usize,
    target: Target,
) -> Result<MembershipVerdict> {
    if !v.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let moments = match target {
        Target::V => varfun::moments_from_varfun(v, order)?,
        Target::VInfinity => {
            let series = v.series_to(order)?;
            let omega = FreeCumulants::new(series.coeffs()[1..].to_vec());
            transforms::free_cumulants_to_moments(&omega)
        }
    };
    let report = hankel::hankel_minors(moments.as_slice(), 0, order / 2 + 1)?;
    let claim = match report.verdict {
        PsdVerdict::Positive => Claim::EvidenceConsistent,
        PsdVerdict::Refuted { .. } => Claim::EvidenceRefuted,
        PsdVerdict::Degenerate { .. } => Claim::Inconclusive,
    };
    Ok(MembershipVerdict {
        claim,
        witness: Some(Witness::Hankel(report)),
        order_checked: Some(order),
    })
}

/// The refuting minor of a verdict, if there is one.
pub fn refuting_minor(verdict: &MembershipVerdict) -> Option<&Rational> {
    match &verdict.witness {
        Some(Witness::Hankel(HankelReport {
            verdict: PsdVerdict::Refuted { value, .. },
            ..
        })) => Some(value),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn cubic_of_the_fuss_example() {
        let v = cubic_membership(&int(2), &int(2), &int(1));
        assert_eq!(v.v.claim, Claim::InV);
        assert_eq!(v.v_infinity.claim, Claim::NotInVInfinity);
        assert_eq!(
            v.v.witness,
            Some(Witness::Criterion {
                lhs: int(27),
                rhs: int(27)
            })
        );
    }

    #[test]
    fn cubic_criterion_edges() {
        assert_eq!(
            cubic_membership(&int(0), &int(0), &int(2)).v.claim,
            Claim::NotInV
        );
        for b in [int(-2), ratio(-3, 2), int(-1), ratio(-1, 2), int(0), int(5)] {
            let v = cubic_membership(&int(7), &b, &int(0));
            assert_eq!(v.v.claim == Claim::InV, b >= int(-1));
            assert_eq!(v.v_infinity.claim == Claim::InVInfinity, b >= int(0));
        }
    }

    #[test]
    fn quartic_axis() {
        assert_eq!(quartic_axis_membership(&ratio(1, 4)).claim, Claim::InV);
        assert_eq!(quartic_axis_membership(&ratio(-1, 12)).claim, Claim::InV);
        assert_eq!(quartic_axis_membership(&int(1)).claim, Claim::NotInV);
        assert_eq!(quartic_axis_membership(&ratio(-1, 11)).claim, Claim::NotInV);
    }

    #[test]
    fn evidence_refutes_one_plus_two_m_cubed() {
        let v = VarianceFunction::polynomial_ints(&[1, 0, 0, 2]).unwrap();
        let verdict = membership_evidence(&v, 6, Target::V).unwrap();
        assert_eq!(verdict.claim, Claim::EvidenceRefuted);
        assert_eq!(refuting_minor(&verdict), Some(&int(-3)));
    }

    #[test]
    fn evidence_refutes_infinite_divisibility_of_the_fuss_cubic() {
        let v = VarianceFunction::polynomial_ints(&[1, 2, 2, 1]).unwrap();
        let verdict = membership_evidence(&v, 12, Target::VInfinity).unwrap();
        assert_eq!(verdict.claim, Claim::EvidenceRefuted);
        assert_eq!(refuting_minor(&verdict), Some(&int(-3374)));
        assert_eq!(
            membership_evidence(&v, 12, Target::V).unwrap().claim,
            Claim::EvidenceConsistent
        );
    }

    #[test]
    fn evidence_for_the_semicircle() {
        let v = VarianceFunction::polynomial_ints(&[1]).unwrap();
        let verdict = membership_evidence(&v, 12, Target::V).unwrap();
        assert_eq!(verdict.claim, Claim::EvidenceConsistent);
        let Some(Witness::Hankel(report)) = verdict.witness else {
            panic!("missing witness")
        };
        assert!(report.minors.iter().all(|m| *m == int(1)));
        assert_eq!(report.minors.len(), 7);
    }

    #[test]
    fn bernoulli_is_inconclusive() {
        let v = VarianceFunction::polynomial_ints(&[1, 0, -1]).unwrap();
        assert_eq!(
            membership_evidence(&v, 8, Target::V).unwrap().claim,
            Claim::Inconclusive
        );
    }
}
