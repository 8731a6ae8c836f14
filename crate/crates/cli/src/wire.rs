//! JSON encodings. Rationals are reduced `"p/q"` strings (`"p"` when
//! integral) so that no value ever passes through a float.

use csk_core::demo::DemoReport;
use csk_core::families::{DOrthogonalityReport, GramMatrix};
use csk_core::hankel::{HankelReport, PsdVerdict};
use csk_core::jacobi::JacobiCoefficients;
use csk_core::membership::{MembershipVerdict, Witness};
use csk_core::transforms::PowerValidity;
use csk_core::varfun::{ClassClaim, ClassRule, ClassifiedVarfun, VarianceClass, VarianceFunction};
use csk_core::{Error, Polynomial, Rational};
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational).collect())
}

pub fn integers<T: ToString>(values: &[T]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

pub fn polynomial(p: &Polynomial) -> Value {
    rationals(p.coeffs())
}

pub fn polynomials(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(polynomial).collect())
}

pub fn matrix(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rationals(r)).collect())
}

pub fn varfun(v: &VarianceFunction) -> Value {
    json!({
        "varfun": rationals(v.series().coeffs()),
        "order": v.order(),
        "polynomial": v.is_polynomial(),
        "normalized": v.is_normalized(),
    })
}

fn class(c: VarianceClass) -> &'static str {
    match c {
        VarianceClass::V => "V",
        VarianceClass::VInfinity => "V_INFINITY",
    }
}

fn rule(r: ClassRule) -> &'static str {
    match r {
        ClassRule::MeanRescaling => "MEAN_RESCALING",
        ClassRule::LinearShift => "LINEAR_SHIFT",
        ClassRule::SumOfRTransforms => "SUM_OF_R_TRANSFORMS",
        ClassRule::RTransformPower => "R_TRANSFORM_POWER",
        ClassRule::SquareRemoval => "SQUARE_REMOVAL",
        ClassRule::SquareAddition => "SQUARE_ADDITION",
        ClassRule::Reflection => "REFLECTION",
        ClassRule::STransformQuotient => "S_TRANSFORM_QUOTIENT",
    }
}

fn claim(c: &Option<ClassClaim>) -> Value {
    match c {
        Some(c) => json!({ "class": class(c.class), "rule": rule(c.rule) }),
        None => Value::Null,
    }
}

pub fn classified(c: &ClassifiedVarfun) -> Value {
    let mut out = varfun(&c.varfun);
    out["claim"] = claim(&c.claim);
    out
}

pub fn psd(v: &PsdVerdict) -> Value {
    match v {
        PsdVerdict::Positive => json!({ "kind": "POSITIVE", "index": null, "value": null }),
        PsdVerdict::Refuted { index, value } => {
            json!({ "kind": "REFUTED", "index": index, "value": rational(value) })
        }
        PsdVerdict::Degenerate { index } => {
            json!({ "kind": "DEGENERATE", "index": index, "value": "0" })
        }
    }
}

pub fn hankel(r: &HankelReport) -> Value {
    json!({
        "shift": r.shift,
        "size": r.size,
        "minors": rationals(&r.minors),
        "verdict": psd(&r.verdict),
    })
}

pub fn membership(v: &MembershipVerdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Criterion { lhs, rhs }) => {
            json!({ "kind": "criterion", "lhs": rational(lhs), "rhs": rational(rhs) })
        }
        Some(Witness::Interval {
            value,
            lower,
            upper,
        }) => json!({
            "kind": "interval",
            "value": rational(value),
            "lower": rational(lower),
            "upper": rational(upper),
        }),
        Some(Witness::Hankel(report)) => {
            let mut h = hankel(report);
            h["kind"] = json!("hankel");
            h
        }
    };
    json!({ "claim": v.claim.as_str(), "witness": witness, "order_checked": v.order_checked })
}

pub fn validity(v: PowerValidity) -> &'static str {
    match v {
        PowerValidity::Guaranteed => "guaranteed",
        PowerValidity::Formal => "formal",
    }
}

pub fn jacobi(j: &JacobiCoefficients) -> Value {
    json!({ "b": rationals(&j.b), "c": rationals(&j.c), "terminated": j.terminated() })
}

pub fn gram(g: &GramMatrix) -> Value {
    matrix(g.rows())
}

pub fn d_orthogonality(r: &DOrthogonalityReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "n": v.n, "k": v.k, "value": rational(&v.value) }))
        .collect();
    json!({
        "d": r.d,
        "pattern_ok": r.pattern_ok,
        "violations": violations,
        "hankel_evidence": hankel(&r.hankel_evidence),
        "degenerate": r.degenerate,
        "order_checked": r.order_checked,
    })
}

pub fn demo(r: &DemoReport) -> Value {
    let checks: serde_json::Map<String, Value> = r
        .identity_checks
        .iter()
        .map(|(k, v)| ((*k).to_string(), Value::Bool(*v)))
        .collect();
    json!({
        "order": r.order,
        "fuss": integers(&r.fuss),
        "s": integers(&r.s),
        "kappa": integers(&r.kappa),
        "det_witness": rational(&r.det_witness),
        "varfun": rationals(r.varfun.series().coeffs()),
        "cubic": {
            "in_V": r.cubic.v.claim == csk_core::membership::Claim::InV,
            "in_Vinf": r.cubic.v_infinity.claim == csk_core::membership::Claim::InVInfinity,
        },
        "identity_checks": checks,
    })
}

/// Variant name of an error, e.g. `InsufficientOrder`.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

pub fn error(e: &Error) -> Value {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })
}
