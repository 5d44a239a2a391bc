//! Scalars, source points and Jordan matrices as JSON.
//!
//! A scalar is an integer, or a string such as `"-3/4"` when it is not one.
//! A source point is a flat array of `(n−1)·2^r + 1` scalars (nested arrays
//! are flattened). A matrix is `n` rows of `n` entries, each entry an array
//! of `2^r` coordinates or a bare scalar for its first coordinate.

use std::sync::Arc;

use jordan_motive::birational::{source_len, ProjPointC};
use jordan_motive::jordan::{JordanElem, JordanSpec};
use jordan_motive::scalars::{FieldSpec, Scalar};
use serde_json::Value;

pub fn scalar(s: &Scalar) -> Value {
    match s.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(s.to_string()),
    }
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(x: &JordanElem) -> Value {
    Value::Array(x.to_matrix().iter().map(|row| Value::Array(row.iter().map(|e| scalars(e)).collect())).collect())
}

pub fn parse_scalar(field: FieldSpec, v: &Value) -> Result<Scalar, String> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| field.from_i64(i)).ok_or_else(|| format!("{n} is not an integer")),
        Value::String(s) => field.parse(s).map_err(|e| e.to_string()),
        other => Err(format!("expected a scalar, got {other}")),
    }
}

fn flatten(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Array(items) => items.iter().for_each(|i| flatten(i, out)),
        leaf => out.push(leaf.clone()),
    }
}

pub fn parse_point(spec: &Arc<JordanSpec>, text: &str) -> Result<ProjPointC, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("point is not valid JSON: {e}"))?;
    let mut leaves = Vec::new();
    flatten(&v, &mut leaves);
    let expected = source_len(spec);
    if leaves.len() != expected {
        return Err(format!("point needs {expected} coordinates, got {}", leaves.len()));
    }
    let flat = leaves.iter().map(|l| parse_scalar(spec.field(), l)).collect::<Result<Vec<_>, _>>()?;
    ProjPointC::new(spec, flat).map_err(|e| e.to_string())
}

pub fn parse_matrix(spec: &Arc<JordanSpec>, text: &str) -> Result<JordanElem, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("matrix is not valid JSON: {e}"))?;
    let (n, d, f) = (spec.n(), spec.d(), spec.field());
    let rows = v.as_array().filter(|r| r.len() == n).ok_or_else(|| format!("matrix needs {n} rows"))?;
    let mut m = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let entries = row.as_array().filter(|r| r.len() == n).ok_or_else(|| format!("row {i} needs {n} entries"))?;
        let mut out_row = Vec::with_capacity(n);
        for e in entries {
            let coords = match e {
                Value::Array(cs) if cs.len() == d => cs.iter().map(|c| parse_scalar(f, c)).collect::<Result<Vec<_>, _>>()?,
                Value::Array(cs) => return Err(format!("entries need {d} coordinates, got {}", cs.len())),
                s => {
                    let mut cs = vec![f.zero(); d];
                    cs[0] = parse_scalar(f, s)?;
                    cs
                }
            };
            out_row.push(coords);
        }
        m.push(out_row);
    }
    spec.from_matrix(&m).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_round_trip() {
        let q = FieldSpec::Rationals;
        for s in ["7", "-3/4", "0"] {
            let x = q.parse(s).unwrap();
            assert_eq!(parse_scalar(q, &scalar(&x)).unwrap(), x);
        }
    }

    #[test]
    fn bare_scalars_fill_the_first_coordinate() {
        let spec = JordanSpec::from_ints(FieldSpec::Rationals, &[-1], &[1, 1, 1]).unwrap();
        let x = parse_matrix(&spec, "[[1,0,0],[0,0,0],[0,0,0]]").unwrap();
        assert_eq!(x, spec.e(0));
        assert_eq!(parse_matrix(&spec, &matrix(&x).to_string()).unwrap(), x);
    }
}
