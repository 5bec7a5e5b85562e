//! JSON encodings of the carriers and the operator-table input formats.
//!
//! Coefficients are written as strings (`"3"`, `"-1/2"`) so they survive
//! any JSON reader exactly; integers are also accepted on input.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{AlgElem, TraceElem};
use crate::bracket::DoubleBracket;
use crate::derivation::{Derivation, DoubleDerivation};
use crate::error::{Error, Result};
use crate::linear::{coeff_to_string, parse_coeff, Coeff};
use crate::parse::{parse_elem, parse_path};
use crate::surface::Presentation;
use crate::tensor::{Tensor2, TraceTensor2, TripleTrace};
use crate::word::Generator;

fn c(k: &Coeff) -> Value {
    Value::String(coeff_to_string(k))
}

pub fn alg_json(a: &AlgElem) -> Value {
    Value::Array(a.iter().map(|(w, k)| json!([w.to_string(), c(k)])).collect())
}

pub fn trace_json(t: &TraceElem) -> Value {
    Value::Array(t.iter().map(|(w, k)| json!([w.to_string(), c(k)])).collect())
}

pub fn tensor_json(t: &Tensor2) -> Value {
    Value::Array(
        t.iter()
            .map(|((p, q), k)| json!([p.to_string(), q.to_string(), c(k)]))
            .collect(),
    )
}

pub fn trace_tensor_json(t: &TraceTensor2) -> Value {
    Value::Array(
        t.iter()
            .map(|((u, v), k)| json!([u.to_string(), v.to_string(), c(k)]))
            .collect(),
    )
}

/// `{"left": [[|z|, w, coeff], …], "right": [[x, |y|, coeff], …]}`.
pub fn triple_json(t: &TripleTrace) -> Value {
    json!({
        "left": t.left.iter().map(|((z, w), k)| json!([z.to_string(), w.to_string(), c(k)])).collect::<Vec<_>>(),
        "right": t.right.iter().map(|((x, y), k)| json!([x.to_string(), y.to_string(), c(k)])).collect::<Vec<_>>(),
    })
}

pub fn derivation_json(f: &Derivation) -> Value {
    let mut m = Map::new();
    for (g, v) in f.table() {
        m.insert(g.to_string(), alg_json(v));
    }
    Value::Object(m)
}

fn table_err(msg: impl Into<String>) -> Error {
    Error::InvalidTable(msg.into())
}

fn coeff_value(v: &Value) -> Result<Coeff> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .and_then(|i| parse_coeff(&i.to_string()))
            .ok_or_else(|| table_err(format!("coefficient {n} is not an integer; use a \"p/q\" string"))),
        Value::String(s) => parse_coeff(s).ok_or_else(|| table_err(format!("bad coefficient \"{s}\""))),
        other => Err(table_err(format!("bad coefficient {other}"))),
    }
}

fn str_value(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| table_err(format!("expected a path string, got {v}")))
}

fn generator_key(key: &str, pres: &Presentation) -> Result<Generator> {
    let w = parse_path(key, pres)?;
    match w.letters() {
        [l] if !l.inverse => Ok(l.gen),
        _ => Err(table_err(format!("`{key}` is not a generator"))),
    }
}

fn tensor_rows(rows: &Value, pres: &Presentation) -> Result<Tensor2> {
    let rows = rows.as_array().ok_or_else(|| table_err("expected a list of [p, q, coeff] rows"))?;
    let mut out = Tensor2::zero();
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| table_err(format!("bad row {row}")))?;
        let p = parse_path(str_value(&row[0])?, pres)?;
        let q = parse_path(str_value(&row[1])?, pres)?;
        out.add_term((p, q), coeff_value(&row[2])?);
    }
    Ok(out)
}

fn parse_json(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| table_err(e.to_string()))
}

/// Reads `{generator: [[p, q, coeff], …]}` and checks endpoint typing.
pub fn parse_theta_table(src: &str, pres: &Presentation) -> Result<DoubleDerivation> {
    let obj = parse_json(src)?;
    let obj = obj.as_object().ok_or_else(|| table_err("expected an object keyed by generator"))?;
    let mut table = Vec::new();
    for (key, rows) in obj {
        table.push((generator_key(key, pres)?, tensor_rows(rows, pres)?));
    }
    let theta = DoubleDerivation::from_table(table);
    if !theta.is_well_typed() {
        return Err(table_err("values must satisfy s(p) = s(c) and t(q) = t(c)"));
    }
    Ok(theta)
}

/// Reads `{generator: "algebra element"}` or `{generator: [[w, coeff], …]}`.
pub fn parse_derivation_table(src: &str, pres: &Presentation) -> Result<Derivation> {
    let obj = parse_json(src)?;
    let obj = obj.as_object().ok_or_else(|| table_err("expected an object keyed by generator"))?;
    let mut table = Vec::new();
    for (key, v) in obj {
        let value = match v {
            Value::String(s) => parse_elem(s, pres)?,
            Value::Array(rows) => {
                let mut a = AlgElem::zero();
                for row in rows {
                    let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| table_err(format!("bad row {row}")))?;
                    a.add_term(parse_path(str_value(&row[0])?, pres)?, coeff_value(&row[1])?);
                }
                a
            }
            other => return Err(table_err(format!("bad value {other}"))),
        };
        table.push((generator_key(key, pres)?, value));
    }
    let f = Derivation::from_table(table);
    if !f.is_well_typed() {
        return Err(table_err("values must lie in A(s(c), t(c))"));
    }
    Ok(f)
}

/// `[{"left": c, "right": d, "value": [[p, q, coeff], …]}, …]`.
pub fn bracket_table_json(pi: &DoubleBracket) -> Value {
    Value::Array(
        pi.table()
            .iter()
            .map(|((a, b), v)| json!({"left": a.to_string(), "right": b.to_string(), "value": tensor_json(v)}))
            .collect(),
    )
}

pub fn parse_bracket_table(src: &str, pres: &Presentation) -> Result<DoubleBracket> {
    let v = parse_json(src)?;
    let entries = v.as_array().ok_or_else(|| table_err("expected a list of bracket entries"))?;
    let mut table: BTreeMap<(Generator, Generator), Tensor2> = BTreeMap::new();
    for e in entries {
        let field = |name: &str| e.get(name).ok_or_else(|| table_err(format!("entry is missing `{name}`")));
        let a = generator_key(str_value(field("left")?)?, pres)?;
        let b = generator_key(str_value(field("right")?)?, pres)?;
        *table.entry((a, b)).or_default() += &tensor_rows(field("value")?, pres)?;
    }
    let pi = DoubleBracket::from_table(table);
    if !pi.is_well_typed() {
        return Err(table_err("bracket values violate endpoint typing"));
    }
    Ok(pi)
}
