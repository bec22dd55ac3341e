//! Stable JSON encodings for characters, series windows, decompositions,
//! and sweep reports. Integer coefficients are emitted as arbitrary
//! precision JSON numbers; weights use the CLI weight string format.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::category_o::{SweepReport, VermaDecomposition};
use crate::char_ring::{LaurentPoly, Mono, RationalChar, SeriesWindow};
use crate::error::Error;
use crate::root_system::RootSystem;

fn bigint_to_value(c: &BigInt) -> Value {
    serde_json::from_str(&c.to_string()).expect("integer literal is valid JSON")
}

fn value_to_bigint(v: &Value) -> Result<BigInt, Error> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Parse(format!("expected an integer, got {n}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// `{"terms":[{"mu":"...","f":[{"exp":[..],"c":..}]}],"denom":[{"beta":[..],"n":..}]}`
pub fn rational_char_to_json(chi: &RationalChar) -> Value {
    let terms: Vec<Value> = chi
        .terms()
        .iter()
        .map(|(mu, f)| {
            let monos: Vec<Value> = f
                .iter()
                .map(|(m, c)| {
                    json!({
                        "exp": m.0.clone(),
                        "c": bigint_to_value(c),
                    })
                })
                .collect();
            json!({ "mu": mu.to_string(), "f": monos })
        })
        .collect();
    let denom: Vec<Value> = chi
        .denom()
        .iter()
        .map(|(coords, n)| json!({ "beta": coords, "n": n }))
        .collect();
    json!({ "terms": terms, "denom": denom })
}

pub fn rational_char_from_json(
    rs: &Arc<RootSystem>,
    v: &Value,
) -> Result<RationalChar, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("character JSON must be an object".into()))?;
    let terms_v = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("character JSON needs a \"terms\" array".into()))?;
    let mut terms = Vec::new();
    for t in terms_v {
        let mu_str = t
            .get("mu")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term needs a \"mu\" weight string".into()))?;
        let mu = rs.parse_weight(mu_str)?;
        let monos = t
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term needs an \"f\" monomial array".into()))?;
        let mut poly = LaurentPoly::zero(rs.rank());
        for mono in monos {
            let exp_v = mono
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("monomial needs an \"exp\" array".into()))?;
            if exp_v.len() != rs.rank() {
                return Err(Error::Parse(format!(
                    "exponent vector has length {}, expected {}",
                    exp_v.len(),
                    rs.rank()
                )));
            }
            let mut exps = Vec::with_capacity(exp_v.len());
            for e in exp_v {
                let e = e
                    .as_u64()
                    .ok_or_else(|| Error::Parse("exponents must be non-negative integers".into()))?;
                exps.push(u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?);
            }
            let c = value_to_bigint(
                mono.get("c")
                    .ok_or_else(|| Error::Parse("monomial needs a \"c\" coefficient".into()))?,
            )?;
            poly.add_term(Mono(exps), c);
        }
        terms.push((mu, poly));
    }
    let denom_v = obj
        .get("denom")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("character JSON needs a \"denom\" array".into()))?;
    let mut denom = Vec::new();
    for d in denom_v {
        let beta_v = d
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("denominator entry needs a \"beta\" array".into()))?;
        let mut coords = Vec::with_capacity(beta_v.len());
        for b in beta_v {
            coords.push(
                b.as_i64()
                    .ok_or_else(|| Error::Parse("root coordinates must be integers".into()))?,
            );
        }
        let n = d
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("denominator entry needs a positive \"n\"".into()))?;
        denom.push((
            coords,
            u32::try_from(n).map_err(|_| Error::Parse("multiplicity too large".into()))?,
        ));
    }
    RationalChar::new(rs, terms, denom)
}

/// Sorted `(weight, multiplicity)` pairs plus the truncation depth.
pub fn series_window_to_json(w: &SeriesWindow) -> Value {
    let coeffs: Vec<Value> = w
        .iter()
        .map(|(weight, mult)| {
            json!({ "weight": weight.to_string(), "mult": bigint_to_value(mult) })
        })
        .collect();
    json!({ "depth": w.depth(), "coefficients": coeffs })
}

pub fn verma_decomposition_to_json(dec: &VermaDecomposition) -> Value {
    let entries: Vec<Value> = dec
        .entries()
        .iter()
        .map(|(w, c)| json!({ "weight": w.to_string(), "c": bigint_to_value(c) }))
        .collect();
    Value::Array(entries)
}

pub fn sweep_report_to_json(rs: &RootSystem, report: &SweepReport) -> Value {
    let results: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("weight".into(), Value::String(e.weight.to_string()));
            m.insert("finite_dim".into(), Value::Bool(e.finite_dim));
            if let Some(dim) = &e.dimension {
                m.insert("dimension".into(), bigint_to_value(dim));
            }
            m.insert("obstructed".into(), Value::Bool(e.obstructed));
            m.insert(
                "witnesses".into(),
                Value::Array(
                    e.witnesses
                        .iter()
                        .map(|w| json!(w))
                        .collect(),
                ),
            );
            m.insert("violation".into(), Value::Bool(e.violation));
            Value::Object(m)
        })
        .collect();
    json!({ "rs": rs.label(), "results": results, "violations": report.violations() })
}
