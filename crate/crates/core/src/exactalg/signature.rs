use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Diagonal entries of a congruence diagonalization of a symmetric matrix over ℚ.
///
/// Zero pivots are handled by adding a row/column with a nonzero cross term, so forms
/// such as `U` with vanishing diagonal still diagonalize.
pub fn congruence_diagonal(g: &IntMatrix) -> Result<Vec<BigRational>> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows();
    let mut a: RatMatrix = g.to_rat();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // a[j][j] = 0 here, so the new pivot is 2·a[k][j] ≠ 0
                add_sym(&mut a, k, j);
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let piv = a[(k, k)].clone();
        // Schur complement on the trailing block
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &piv;
            for j in k + 1..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = BigRational::zero();
            a[(k, i)] = BigRational::zero();
        }
        out.push(piv);
    }
    Ok(out)
}

fn swap_sym(a: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    for t in 0..n {
        let x = a[(i, t)].clone();
        a[(i, t)] = a[(j, t)].clone();
        a[(j, t)] = x;
    }
    for t in 0..n {
        let x = a[(t, i)].clone();
        a[(t, i)] = a[(t, j)].clone();
        a[(t, j)] = x;
    }
}

/// Row and column `k += j`.
fn add_sym(a: &mut RatMatrix, k: usize, j: usize) {
    let n = a.rows();
    for t in 0..n {
        let x = a[(j, t)].clone();
        a[(k, t)] += x;
    }
    for t in 0..n {
        let x = a[(t, j)].clone();
        a[(t, k)] += x;
    }
}

/// `(n₊, n₋)` of a nondegenerate symmetric integer matrix, by exact diagonalization.
pub fn rational_signature(g: &IntMatrix) -> Result<(usize, usize)> {
    let d = congruence_diagonal(g)?;
    let pos = d.iter().filter(|x| x.is_positive()).count();
    Ok((pos, d.len() - pos))
}

pub fn is_positive_definite(g: &IntMatrix) -> bool {
    matches!(rational_signature(g), Ok((_, 0)))
}

pub fn is_negative_definite(g: &IntMatrix) -> bool {
    matches!(rational_signature(g), Ok((0, _)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn signatures_of_small_forms() {
        assert_eq!(
            rational_signature(&IntMatrix::from_i64(&[[0, 1], [1, 0]])).unwrap(),
            (1, 1)
        );
        assert_eq!(
            rational_signature(&IntMatrix::from_i64(&[[-2, 1], [1, -2]])).unwrap(),
            (0, 2)
        );
        assert_eq!(
            rational_signature(&IntMatrix::from_i64(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]])).unwrap(),
            (2, 1)
        );
        assert_eq!(
            rational_signature(&IntMatrix::from_i64(&[[1, 1], [1, 1]])),
            Err(Error::DegenerateForm)
        );
    }

    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..3 * n).prop_map(move |ops| {
            let mut m = IntMatrix::identity(n);
            for (i, j, k) in ops {
                if i != j {
                    m.add_row_multiple(i, j, &k.into());
                }
            }
            m
        })
    }

    fn diag_form(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], n)
            .prop_map(|d| IntMatrix::diagonal(&d.into_iter().map(Into::into).collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn signature_is_congruence_invariant(
            (g, p) in (1usize..=10).prop_flat_map(|n| (diag_form(n), unimodular(n)))
        ) {
            let h = g.congruence(&p);
            prop_assert_eq!(rational_signature(&g).unwrap(), rational_signature(&h).unwrap());
        }
    }
}
