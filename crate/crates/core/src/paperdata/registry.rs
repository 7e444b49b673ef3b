use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::cubic::{algebraic_lattice, invariant_lattice, transcendental_lattice};
use super::tables::{CUBIC, LAMBDA_P, LSV};
use crate::error::{Error, Result};
use crate::lattice::{parse_lattice, Lattice, Vector};

/// Stable names for every fixture lattice.
///
/// `FG_<case>`, `AY_<case>` and `TY_<case>` for the cubic cases (`phi31`, `phi35`, `phi37`,
/// `phi32`); `LG_<case>` and `LInv_<case>` for the induced-action rows (also `phi21`, `phi23`);
/// `LambdaG_<row>` and `LambdaInv_<row>` for the prime-order pairs in `𝚲`.
pub fn builtin_names() -> Vec<String> {
    let mut out = Vec::new();
    for c in CUBIC {
        for pre in ["FG", "AY", "TY"] {
            out.push(format!("{pre}_{}", c.id));
        }
    }
    for r in LSV {
        out.push(format!("LG_{}", r.id));
        out.push(format!("LInv_{}", r.id));
    }
    for r in LAMBDA_P {
        out.push(format!("LambdaG_{}", r.no));
        out.push(format!("LambdaInv_{}", r.no));
    }
    out
}

/// A fixture by name, or else any lattice expression.
pub fn builtin(name: &str) -> Result<Lattice> {
    if let Some((pre, id)) = name.split_once('_') {
        if let Some(c) = CUBIC.iter().find(|c| c.id == id) {
            match pre {
                "FG" => return Ok(invariant_lattice(c)),
                "AY" => return Ok(algebraic_lattice(c)),
                "TY" => return Ok(transcendental_lattice(c).with_label(name)),
                _ => {}
            }
        }
        if let Some(r) = LSV.iter().find(|r| r.id == id) {
            match pre {
                "LG" => {
                    return Ok(
                        parse_lattice(r.coinvariant_reading.unwrap_or(r.coinvariant))?
                            .with_label(name),
                    )
                }
                "LInv" => return Ok(parse_lattice(r.invariant)?.with_label(name)),
                _ => {}
            }
        }
        if let Some(r) = LAMBDA_P.iter().find(|r| r.no == id) {
            let (c, i) = r.checked();
            match pre {
                "LambdaG" => return Ok(parse_lattice(c)?.with_label(name)),
                "LambdaInv" => return Ok(parse_lattice(i)?.with_label(name)),
                _ => {}
            }
        }
    }
    parse_lattice(name)
}

/// Named vectors: `eta` on the `AY_*` fixtures, and `e<i>` (basis vectors) everywhere.
pub fn builtin_vector(lattice: &Lattice, lattice_name: &str, vector: &str) -> Result<Vector> {
    let n = lattice.rank();
    let unit = |i: usize| -> Vector {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::from(1);
        v
    };
    if vector == "eta" && lattice_name.starts_with("AY_") && n > 0 {
        return Ok(unit(0));
    }
    if let Some(i) = vector
        .strip_prefix('e')
        .and_then(|s| s.parse::<usize>().ok())
    {
        if i < n {
            return Ok(unit(i));
        }
    }
    Err(Error::UnknownName(format!(
        "vector `{vector}` on `{lattice_name}`"
    )))
}

/// All fixture tables as JSON.
pub fn fixtures_json() -> Value {
    json!({
        "lambda_p": LAMBDA_P,
        "cubic": CUBIC,
        "lsv": LSV,
        "h4_reading": super::tables::H4_READING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_resolves() {
        for n in builtin_names() {
            builtin(&n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert_eq!(builtin("FG_phi35").unwrap().rank(), 6);
        assert_eq!(builtin("LG_phi31").unwrap().rank(), 22);
        assert_eq!(builtin("E8(-1) + U").unwrap().signature(), (1, 9));
    }

    #[test]
    fn vectors() {
        let a = builtin("AY_phi32").unwrap();
        assert_eq!(
            builtin_vector(&a, "AY_phi32", "eta").unwrap()[0],
            BigInt::from(1)
        );
        assert!(builtin_vector(&a, "AY_phi32", "e13").is_err());
        assert!(builtin_vector(&a, "FG_phi32", "eta").is_err());
    }
}
