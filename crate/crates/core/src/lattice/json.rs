use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{parse_lattice, Lattice};
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

fn big_to_json(x: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(big_to_json).collect()))
            .collect(),
    )
}

fn entry_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer matrix entry {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(entry_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_rows(rows)
}

/// `{"name": …, "gram": [[…]]}`
pub fn lattice_to_json(l: &Lattice) -> Value {
    json!({"name": l.name(), "gram": matrix_to_json(l.gram())})
}

/// Accepts a lattice object, or a string holding a lattice expression.
pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    if let Some(s) = v.as_str() {
        return parse_lattice(s);
    }
    let gram = v
        .get("gram")
        .ok_or_else(|| Error::Parse("lattice object needs a `gram` field".into()))?;
    let l = Lattice::new(matrix_from_json(gram)?)?;
    Ok(match v.get("name").and_then(Value::as_str) {
        Some(n) => l.with_label(n),
        None => l,
    })
}
