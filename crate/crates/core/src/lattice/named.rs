use num_bigint::BigInt;

use super::{direct_sum, is_prime, parse_lattice, Lattice};
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// Names accepted by [`make_named`]; parametrised families take their index as a parameter.
pub const NAMED_LATTICES: &[&str] = &[
    "U", "A_n", "D_n", "E_n", "[k]", "K_p", "H_p", "E6star3", "L17", "N69", "N15", "ExA", "ExB",
    "OG10", "Lambda", "F", "K3", "H4cubic",
];

const E6STAR3: [[i64; 6]; 6] = [
    [4, 2, -1, 2, -1, 1],
    [2, 4, 1, 1, -2, 2],
    [-1, 1, 4, 1, -2, -1],
    [2, 1, 1, 4, -2, -1],
    [-1, -2, -2, -2, 4, -1],
    [1, 2, -1, -1, -1, 4],
];

const L17: [[i64; 4]; 4] = [[2, 1, 0, 1], [1, 2, 0, 0], [0, 0, 2, -1], [1, 0, -1, 4]];

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams {
        name: name.into(),
        reason: reason.into(),
    }
}

fn one_param(name: &str, params: &[i64]) -> Result<i64> {
    match params {
        [n] => Ok(*n),
        _ => Err(bad(
            name,
            format!("expected one parameter, got {}", params.len()),
        )),
    }
}

fn no_params(name: &str, params: &[i64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(bad(name, "takes no parameters"))
    }
}

/// Gram matrix of a simply-laced Dynkin diagram given by its edges.
fn dynkin(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(2);
    }
    for &(a, b) in edges {
        g[(a, b)] = BigInt::from(-1);
        g[(b, a)] = BigInt::from(-1);
    }
    g
}

fn root_lattice_a(n: usize) -> IntMatrix {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    dynkin(n, &edges)
}

fn root_lattice_d(n: usize) -> IntMatrix {
    // chain 0 - 1 - … - (n-2), with node n-1 attached to n-3
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    dynkin(n, &edges)
}

fn root_lattice_e(n: usize) -> IntMatrix {
    // Bourbaki numbering: 1-3-4-5-…-n with 2 attached to 4
    let mut edges = vec![(0, 2), (1, 3), (2, 3)];
    edges.extend((4..n).map(|i| (i - 1, i)));
    dynkin(n, &edges)
}

fn labeled(g: IntMatrix, label: String) -> Result<Lattice> {
    Ok(Lattice::new(g)?.with_label(label))
}

fn composite(expr: &str, label: &str) -> Result<Lattice> {
    Ok(parse_lattice(expr)?.with_label(label))
}

/// Build a named lattice; ADE lattices are positive definite.
pub fn make_named(name: &str, params: &[i64]) -> Result<Lattice> {
    match name {
        "U" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&[[0, 1], [1, 0]]), "U".into())
        }
        "A" | "A_n" => {
            let n = one_param(name, params)?;
            if n < 1 {
                return Err(bad(name, "A_n needs n >= 1"));
            }
            labeled(root_lattice_a(n as usize), format!("A{n}"))
        }
        "D" | "D_n" => {
            let n = one_param(name, params)?;
            if n < 4 {
                return Err(bad(name, "D_n needs n >= 4"));
            }
            labeled(root_lattice_d(n as usize), format!("D{n}"))
        }
        "E" | "E_n" => {
            let n = one_param(name, params)?;
            if !(6..=8).contains(&n) {
                return Err(bad(name, "E_n needs n in 6..=8"));
            }
            labeled(root_lattice_e(n as usize), format!("E{n}"))
        }
        "[k]" | "diag" => {
            let k = one_param(name, params)?;
            if k == 0 {
                return Err(bad(name, "[0] is degenerate"));
            }
            labeled(IntMatrix::from_i64(&[[k]]), format!("[{k}]"))
        }
        "K" | "K_p" => {
            let p = one_param(name, params)?;
            if p < 3 || !is_prime(p as u64) {
                return Err(bad(name, format!("K_p needs an odd prime, got {p}")));
            }
            labeled(
                IntMatrix::from_i64(&[[-(p + 1) / 2, 1], [1, -2]]),
                format!("K{p}"),
            )
        }
        "H" | "H_p" | "h" => {
            let p = one_param(name, params)?;
            if p < 3 || !is_prime(p as u64) {
                return Err(bad(name, format!("H_p needs an odd prime, got {p}")));
            }
            labeled(
                IntMatrix::from_i64(&[[(p - 1) / 2, 1], [1, -2]]),
                format!("H{p}"),
            )
        }
        "E6star3" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&E6STAR3), "E6*(3)".into())
        }
        "L17" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&L17), "L17".into())
        }
        "N69" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&[[6, 3], [3, -10]]), "N69".into())
        }
        "N15" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&[[4, -1], [-1, 4]]), "N15".into())
        }
        "ExA" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&[[12, 1], [1, 2]]), "ExA".into())
        }
        "ExB" => {
            no_params(name, params)?;
            labeled(IntMatrix::from_i64(&[[6, 1], [1, 4]]), "ExB".into())
        }
        "OG10" => {
            no_params(name, params)?;
            composite("U^3 + E8(-1)^2 + A2(-1)", "OG10")
        }
        "Lambda" => {
            no_params(name, params)?;
            composite("U^5 + E8(-1)^2", "Lambda")
        }
        "F" => {
            no_params(name, params)?;
            composite("U^2 + E8^2 + A2", "F")
        }
        "K3" => {
            no_params(name, params)?;
            composite("U^3 + E8(-1)^2", "K3")
        }
        "H4cubic" => {
            no_params(name, params)?;
            let mut parts = vec![make_named("[k]", &[1])?; 21];
            parts.extend(vec![make_named("[k]", &[-1])?; 3]);
            Ok(direct_sum(&parts)?.with_label("H4cubic"))
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational_signature;

    #[test]
    fn printed_matrices() {
        assert_eq!(
            make_named("K_p", &[7]).unwrap().gram(),
            &IntMatrix::from_i64(&[[-4, 1], [1, -2]])
        );
        assert_eq!(
            make_named("H_p", &[5]).unwrap().gram(),
            &IntMatrix::from_i64(&[[2, 1], [1, -2]])
        );
        assert_eq!(
            make_named("ExA", &[]).unwrap().gram(),
            &IntMatrix::from_i64(&[[12, 1], [1, 2]])
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            make_named("K_p", &[8]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            make_named("H_p", &[9]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            make_named("E_n", &[9]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            make_named("U", &[1]),
            Err(Error::BadParams { .. })
        ));
        assert_eq!(make_named("Q7", &[]), Err(Error::UnknownName("Q7".into())));
    }

    /// (name, params, rank, det, signature, even)
    #[test]
    fn golden_invariants() {
        let table: &[(&str, &[i64], usize, i64, (usize, usize), bool)] = &[
            ("U", &[], 2, -1, (1, 1), true),
            ("A_n", &[1], 1, 2, (1, 0), true),
            ("A_n", &[2], 2, 3, (2, 0), true),
            ("A_n", &[4], 4, 5, (4, 0), true),
            ("A_n", &[6], 6, 7, (6, 0), true),
            ("A_n", &[10], 10, 11, (10, 0), true),
            ("D_n", &[4], 4, 4, (4, 0), true),
            ("D_n", &[6], 6, 4, (6, 0), true),
            ("E_n", &[6], 6, 3, (6, 0), true),
            ("E_n", &[7], 7, 2, (7, 0), true),
            ("E_n", &[8], 8, 1, (8, 0), true),
            ("[k]", &[2], 1, 2, (1, 0), true),
            ("[k]", &[-1], 1, -1, (0, 1), false),
            ("K_p", &[7], 2, 7, (0, 2), true),
            ("K_p", &[11], 2, 11, (0, 2), true),
            ("K_p", &[19], 2, 19, (0, 2), true),
            ("K_p", &[23], 2, 23, (0, 2), true),
            ("H_p", &[5], 2, -5, (1, 1), true),
            ("H_p", &[13], 2, -13, (1, 1), true),
            ("E6star3", &[], 6, 243, (6, 0), true),
            ("L17", &[], 4, 17, (4, 0), true),
            ("N69", &[], 2, -69, (1, 1), true),
            ("N15", &[], 2, 15, (2, 0), true),
            ("ExA", &[], 2, 23, (2, 0), true),
            ("ExB", &[], 2, 23, (2, 0), true),
            ("OG10", &[], 24, -3, (3, 21), true),
            ("Lambda", &[], 26, -1, (5, 21), true),
            ("F", &[], 22, 3, (20, 2), true),
            ("K3", &[], 22, -1, (3, 19), true),
            ("H4cubic", &[], 24, -1, (21, 3), false),
        ];
        for &(name, params, rank, det, sig, even) in table {
            let l = make_named(name, params).unwrap();
            assert_eq!(l.rank(), rank, "{name}{params:?}");
            assert_eq!(l.det(), BigInt::from(det), "{name}{params:?}");
            assert_eq!(
                rational_signature(l.gram()).unwrap(),
                sig,
                "{name}{params:?}"
            );
            assert_eq!(l.is_even(), even, "{name}{params:?}");
        }
    }
}
