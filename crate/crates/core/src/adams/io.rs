//! Family files:
//!
//! ```json
//! {"ring": {"vars": 1, "trunc": [4], "filtration": 2},
//!  "primes_upto": "50",
//!  "coeffs": [{"degree": 1, "rule": {"num": "p^2", "den": "1"}},
//!             {"degree": 3, "overrides": {"2": "0"}, "rule": {"num": "p", "den": "1"}}]}
//! ```
//!
//! Entries for variable `i > 0` carry `"var": i`; entries for a mixed
//! monomial carry `"monomial": [e1, .., em]` instead of `"degree"`. A
//! truncation is a number or `{"unbounded_cap": N}`. The prime set is
//! `"primes_upto"` or an explicit `"primes"` list. Integers may be written
//! as numbers or decimal strings; output always uses strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::family::{AdamsFamily, CoeffSpec, DEFAULT_PRIME_BOUND};
use super::rule::CoeffRule;
use crate::arith::primes_upto;
use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, Truncation};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_value(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("{what}: bad integer {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer")),
        _ => Err(perr(format!("{what}: expected an integer"))),
    }
}

fn small_value(v: &Value, what: &str) -> Result<u64> {
    let b = int_value(v, what)?;
    u64::try_from(b).map_err(|_| perr(format!("{what}: out of range")))
}

fn shape_from_json(v: &Value) -> Result<RingShape> {
    let obj = v.as_object().ok_or_else(|| perr("\"ring\" must be an object"))?;
    let trunc = obj
        .get("trunc")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("\"ring.trunc\" must be an array"))?;
    let truncations = trunc
        .iter()
        .map(|t| match t {
            Value::Object(o) => {
                let cap = o
                    .get("unbounded_cap")
                    .ok_or_else(|| perr("truncation object needs \"unbounded_cap\""))?;
                Ok(Truncation::Unbounded {
                    unbounded_cap: small_value(cap, "unbounded_cap")? as u32,
                })
            }
            other => Ok(Truncation::Finite(small_value(other, "trunc")? as u32)),
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(vars) = obj.get("vars") {
        let vars = small_value(vars, "vars")? as usize;
        if vars != truncations.len() {
            return Err(perr(format!(
                "\"vars\" is {vars} but {} truncations are given",
                truncations.len()
            )));
        }
    }
    let filtration = match obj.get("filtration") {
        Some(f) => small_value(f, "filtration")? as u32,
        None => 1,
    };
    RingShape::new(truncations, filtration)
}

fn shape_to_json(s: &RingShape) -> Value {
    let trunc: Vec<Value> = s
        .truncations()
        .iter()
        .map(|t| match t {
            Truncation::Finite(r) => json!(r.to_string()),
            Truncation::Unbounded { unbounded_cap } => {
                json!({"unbounded_cap": unbounded_cap.to_string()})
            }
        })
        .collect();
    json!({
        "vars": s.num_vars().to_string(),
        "trunc": trunc,
        "filtration": s.filtration().to_string(),
    })
}

impl AdamsFamily {
    pub fn from_json(v: &Value) -> Result<AdamsFamily> {
        Self::from_json_with_default(v, DEFAULT_PRIME_BOUND)
    }

    /// As [`AdamsFamily::from_json`], with the prime set `primes_upto(bound)`
    /// when the file names none.
    pub fn from_json_with_default(v: &Value, bound: u64) -> Result<AdamsFamily> {
        let obj = v.as_object().ok_or_else(|| perr("family must be a JSON object"))?;
        let shape = shape_from_json(obj.get("ring").ok_or_else(|| perr("missing \"ring\""))?)?;
        let primes = match (obj.get("primes"), obj.get("primes_upto")) {
            (Some(_), Some(_)) => return Err(perr("give either \"primes\" or \"primes_upto\"")),
            (Some(Value::Array(list)), None) => list
                .iter()
                .map(|p| small_value(p, "primes"))
                .collect::<Result<Vec<_>>>()?,
            (Some(_), None) => return Err(perr("\"primes\" must be an array")),
            (None, Some(b)) => primes_upto(small_value(b, "primes_upto")?),
            (None, None) => primes_upto(bound),
        };
        let coeffs = match obj.get("coeffs") {
            Some(Value::Array(a)) => a.as_slice(),
            None => &[],
            Some(_) => return Err(perr("\"coeffs\" must be an array")),
        };
        let mut specs = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            specs.push(spec_from_json(c, &shape)?);
        }
        AdamsFamily::new(shape, specs, primes)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("ring".into(), shape_to_json(self.shape()));
        let primes = self.primes();
        let max = *primes.last().expect("nonempty prime set");
        if primes_upto(max) == primes {
            out.insert("primes_upto".into(), json!(max.to_string()));
        } else {
            out.insert(
                "primes".into(),
                json!(primes.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            );
        }
        let coeffs: Vec<Value> = self
            .specs()
            .iter()
            .map(|s| spec_to_json(s, self.shape().num_vars()))
            .collect();
        out.insert("coeffs".into(), Value::Array(coeffs));
        Value::Object(out)
    }

    pub fn from_json_str(s: &str) -> Result<AdamsFamily> {
        let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

fn spec_from_json(v: &Value, shape: &RingShape) -> Result<CoeffSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr("coefficient entry must be an object"))?;
    for key in obj.keys() {
        if !["var", "degree", "monomial", "rule", "overrides"].contains(&key.as_str()) {
            return Err(perr(format!("unknown coefficient field {key:?}")));
        }
    }
    let var = match obj.get("var") {
        Some(x) => small_value(x, "var")? as usize,
        None => 0,
    };
    if var >= shape.num_vars() {
        return Err(Error::IndexOutOfRange {
            index: var,
            max: shape.num_vars(),
        });
    }
    let monomial = match (obj.get("degree"), obj.get("monomial")) {
        (Some(d), None) => {
            let mut e = vec![0; shape.num_vars()];
            e[var] = small_value(d, "degree")? as u32;
            e
        }
        (None, Some(Value::Array(m))) => m
            .iter()
            .map(|k| Ok(small_value(k, "monomial")? as u32))
            .collect::<Result<Vec<_>>>()?,
        _ => return Err(perr("coefficient entry needs exactly one of \"degree\", \"monomial\"")),
    };
    let rule = match obj.get("rule") {
        None => None,
        Some(r) => {
            let num = r
                .get("num")
                .and_then(Value::as_str)
                .ok_or_else(|| perr("rule needs a string \"num\""))?;
            let den = match r.get("den") {
                Some(d) => int_value(d, "den")?,
                None => BigInt::from(1),
            };
            Some(CoeffRule::parse(num, &den)?)
        }
    };
    let mut overrides = BTreeMap::new();
    match obj.get("overrides") {
        None => {}
        Some(Value::Object(o)) => {
            for (k, val) in o {
                let p: u64 = k
                    .trim()
                    .parse()
                    .map_err(|_| perr(format!("override key {k:?} is not a prime")))?;
                overrides.insert(p, int_value(val, "override")?);
            }
        }
        Some(_) => return Err(perr("\"overrides\" must be an object")),
    }
    Ok(CoeffSpec {
        var,
        monomial,
        rule,
        overrides,
    })
}

fn spec_to_json(s: &CoeffSpec, nvars: usize) -> Value {
    let mut out = Map::new();
    if s.var != 0 {
        out.insert("var".into(), json!(s.var.to_string()));
    }
    let pure = s.monomial.iter().enumerate().all(|(i, &k)| i == s.var || k == 0);
    if pure && s.monomial.len() == nvars {
        out.insert("degree".into(), json!(s.monomial[s.var].to_string()));
    } else {
        out.insert(
            "monomial".into(),
            json!(s.monomial.iter().map(|k| k.to_string()).collect::<Vec<_>>()),
        );
    }
    if let Some(r) = &s.rule {
        out.insert(
            "rule".into(),
            json!({"num": r.numerator_string(), "den": r.denominator().to_string()}),
        );
    }
    if !s.overrides.is_empty() {
        let o: Map<String, Value> = s
            .overrides
            .iter()
            .map(|(p, v)| (p.to_string(), json!(v.to_string())))
            .collect();
        out.insert("overrides".into(), Value::Object(o));
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::family::default_primes;

    const S1: &str = r#"{"ring": {"vars": 1, "trunc": [4], "filtration": 2}, "primes_upto": 50,
        "coeffs": [{"degree": 1, "rule": {"num": "p^2", "den": 1}},
                   {"degree": 2, "rule": {"num": "p^2*(p^2-1)", "den": 12}},
                   {"degree": 3, "overrides": {"2": "0", "3": "1"}, "rule": {"num": "p^2*(p^2-1)*(p^2-4)", "den": "360"}}]}"#;

    #[test]
    fn parse_and_roundtrip() {
        let f = AdamsFamily::from_json_str(S1).unwrap();
        assert_eq!(f.primes(), default_primes().as_slice());
        assert_eq!(f.eval_psi(2, 0).unwrap().coeff(2), BigInt::from(1));
        assert_eq!(f.eval_psi(3, 0).unwrap().coeff(3), BigInt::from(1));
        let text = f.to_json_string();
        let g = AdamsFamily::from_json_str(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_json_string(), text);
    }

    #[test]
    fn multivariable_and_explicit_primes() {
        let src = r#"{"ring": {"trunc": [3, {"unbounded_cap": 4}]}, "primes": ["2", "5"],
            "coeffs": [{"degree": 1, "rule": {"num": "p"}},
                       {"var": 1, "monomial": [1, 1], "overrides": {"5": "-6"}}]}"#;
        let f = AdamsFamily::from_json_str(src).unwrap();
        assert_eq!(f.primes(), &[2, 5]);
        let g = AdamsFamily::from_json_str(&f.to_json_string()).unwrap();
        assert_eq!(f, g);
        assert!(f.to_json_string().contains("\"primes\""));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"coeffs": []}"#,
            r#"{"ring": {"vars": 2, "trunc": [3]}}"#,
            r#"{"ring": {"trunc": [3]}, "coeffs": [{"rule": {"num": "p"}}]}"#,
            r#"{"ring": {"trunc": [3]}, "coeffs": [{"degree": 1, "rule": {"num": "p", "den": 0}}]}"#,
            r#"{"ring": {"trunc": [3]}, "coeffs": [{"degree": 1, "colour": 1}]}"#,
            r#"{"ring": {"trunc": [3]}, "primes": [4]}"#,
        ] {
            assert!(AdamsFamily::from_json_str(bad).is_err(), "{bad}");
        }
    }
}
