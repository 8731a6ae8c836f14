//! Parsing of rationals, lists and JSON payloads.

use std::fs;
use std::io::{self, Read};

use csk_core::Rational;
use serde_json::Value;

/// A comma-separated list of rationals, e.g. `1,0,1/2,-3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatList(pub Vec<Rational>);

/// `b:p` pairs, e.g. `1:1/2,2:3/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList(pub Vec<(Rational, Rational)>);

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

pub fn parse_list(s: &str) -> Result<RatList, String> {
    if s.trim().is_empty() {
        return Err("empty list".into());
    }
    s.split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map(RatList)
}

pub fn parse_factors(s: &str) -> Result<FactorList, String> {
    s.split(',')
        .map(|pair| {
            let (b, p) = pair
                .split_once(':')
                .ok_or_else(|| format!("factor {pair:?} is not of the form b:p"))?;
            Ok((parse_rational(b)?, parse_rational(p)?))
        })
        .collect::<Result<_, String>>()
        .map(FactorList)
}

fn rational_from_json(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(format!(
            "expected an integer or a \"p/q\" string, got {other}"
        )),
    }
}

const LIST_KEYS: [&str; 7] = [
    "values",
    "moments",
    "cumulants",
    "varfun",
    "s_series",
    "sequence",
    "coefficients",
];

/// Reads a list from a JSON payload: either a bare array or an object
/// holding the array under one of the usual keys.
pub fn list_from_json(v: &Value) -> Result<Vec<Rational>, String> {
    let array = match v {
        Value::Array(a) => a,
        Value::Object(map) => LIST_KEYS
            .iter()
            .find_map(|k| map.get(*k))
            .and_then(Value::as_array)
            .ok_or_else(|| format!("payload has none of the keys {LIST_KEYS:?}"))?,
        _ => return Err("payload must be an array or an object".into()),
    };
    array.iter().map(rational_from_json).collect()
}

/// `-` reads stdin, anything else is a path.
pub fn read_payload(source: &str) -> Result<Value, String> {
    let text = if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        fs::read_to_string(source).map_err(|e| format!("reading {source}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON in {source}: {e}"))
}
