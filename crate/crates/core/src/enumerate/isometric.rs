//! Isometry testing for definite lattices by backtracking over short vectors.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{count_vectors, list_vectors, EnumQuery};
use crate::error::{Error, Result};
use crate::exactalg::{hermite_normal_form, IntMatrix};
use crate::lattice::{Lattice, Vector};

pub const ISOMETRY_RANK_CAP: usize = 14;

/// When present, `matrixᵀ · gram₂ · matrix = gram₁`: column `j` is the image of the `j`-th basis
/// vector of the first lattice, in coordinates of the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryWitness {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Option<IntMatrix>,
}

fn ser_matrix<S: serde::Serializer>(
    m: &Option<IntMatrix>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.as_ref()
        .map(|m| {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .serialize(s)
}

impl IsometryWitness {
    pub fn absent() -> Self {
        IsometryWitness { matrix: None }
    }

    pub fn is_present(&self) -> bool {
        self.matrix.is_some()
    }
}

fn hnf_index(rows: &[Vector], n: usize) -> Option<BigInt> {
    let m = IntMatrix::from_rows(rows.to_vec()).ok()?;
    let (h, _) = hermite_normal_form(&m);
    let r = crate::exactalg::echelon_rank(&h);
    if r < n {
        return None;
    }
    Some((0..n).map(|i| h[(i, i)].clone()).product::<BigInt>().abs())
}

/// A generating set of short vectors, taken by increasing norm; one of each `±v`.
fn short_generators(l: &Lattice) -> Result<Vec<Vector>> {
    let n = l.rank();
    let mut gens: Vec<Vector> = Vec::new();
    let mut rank = 0;
    let mut index: Option<BigInt> = None;
    let mut k = 1i64;
    loop {
        for v in list_vectors(&EnumQuery::new(l.clone(), k))? {
            if v.iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_negative())
            {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(v);
            let r = crate::exactalg::rank(&IntMatrix::from_rows(trial.clone()).expect("rows"));
            let better = if r > rank {
                true
            } else if r == n {
                let ix = hnf_index(&trial, n).expect("full rank");
                index.as_ref().is_some_and(|old| &ix < old)
            } else {
                false
            };
            if better {
                gens = trial;
                rank = r;
                if rank == n {
                    index = hnf_index(&gens, n);
                    if index.as_ref().is_some_and(|i| *i == BigInt::from(1)) {
                        return Ok(gens);
                    }
                }
            }
        }
        k += 1;
    }
}

struct Backtrack<'a> {
    /// Generator Gram (positive definite side).
    ggram: Vec<Vec<i64>>,
    /// Candidate images per generator, with their `G₂·h`.
    cands: Vec<&'a [(Vec<i64>, Vec<i64>)]>,
}

impl Backtrack<'_> {
    fn search(&self, i: usize, chosen: &mut Vec<usize>) -> bool {
        if i == self.cands.len() {
            return true;
        }
        'next: for (ci, (_, gh)) in self.cands[i].iter().enumerate() {
            for (k, &pk) in chosen.iter().enumerate() {
                let hk = &self.cands[k][pk].0;
                if gh.iter().zip(hk).map(|(a, b)| a * b).sum::<i64>() != self.ggram[i][k] {
                    continue 'next;
                }
            }
            chosen.push(ci);
            if self.search(i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|c| c.to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Searches for an isometry `l1 → l2` of definite lattices.
pub fn definite_isometric(l1: &Lattice, l2: &Lattice) -> Result<IsometryWitness> {
    let n = l1.rank();
    if n > ISOMETRY_RANK_CAP || l2.rank() > ISOMETRY_RANK_CAP {
        return Err(Error::RankTooLarge {
            rank: n.max(l2.rank()),
            cap: ISOMETRY_RANK_CAP,
        });
    }
    if !l1.is_definite() || !l2.is_definite() {
        return Err(Error::IndefiniteLattice);
    }
    if n != l2.rank()
        || l1.det() != l2.det()
        || l1.is_even() != l2.is_even()
        || l1.signature() != l2.signature()
    {
        return Ok(IsometryWitness::absent());
    }
    if n == 0 {
        return Ok(IsometryWitness {
            matrix: Some(IntMatrix::zeros(0, 0)),
        });
    }
    let (a, b) = if l1.is_positive_definite() {
        (l1.clone(), l2.clone())
    } else {
        (l1.neg(), l2.neg())
    };
    let gens = short_generators(&a)?;
    let norms: Vec<BigInt> = gens.iter().map(|g| a.norm(g)).collect::<Result<_>>()?;
    let max_norm = norms
        .iter()
        .max()
        .expect("nonempty")
        .to_i64()
        .ok_or(Error::Overflow)?;
    let mut buckets: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::new();
    for k in 1..=max_norm {
        if count_vectors(&EnumQuery::new(a.clone(), k))?
            != count_vectors(&EnumQuery::new(b.clone(), k))?
        {
            return Ok(IsometryWitness::absent());
        }
        let mut bucket = Vec::new();
        if norms.iter().any(|x| *x == BigInt::from(k)) {
            for h in list_vectors(&EnumQuery::new(b.clone(), k))? {
                let gh = small(&b.gram().mul_vec(&h))?;
                bucket.push((small(&h)?, gh));
            }
        }
        buckets.push(bucket);
    }
    let ggram: Vec<Vec<i64>> = gens
        .iter()
        .map(|x| {
            gens.iter()
                .map(|y| a.inner(x, y).map(|v| v.to_i64().unwrap_or(i64::MAX)))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let cands: Vec<&[(Vec<i64>, Vec<i64>)]> = norms
        .iter()
        .map(|k| buckets[(k.to_i64().unwrap() - 1) as usize].as_slice())
        .collect();
    let bt = Backtrack { ggram, cands };
    let mut chosen = Vec::new();
    if !bt.search(0, &mut chosen) {
        return Ok(IsometryWitness::absent());
    }
    // express the standard basis in the generators and carry the images along
    let gm = IntMatrix::from_rows(gens.clone()).expect("rows");
    let (h, u) = hermite_normal_form(&gm);
    debug_assert_eq!(
        h.select_rows(&(0..n).collect::<Vec<_>>()),
        IntMatrix::identity(n)
    );
    let images: Vec<Vector> = chosen
        .iter()
        .enumerate()
        .map(|(i, &c)| bt.cands[i][c].0.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let hm = IntMatrix::from_rows(images).expect("rows");
    let c = u.select_rows(&(0..n).collect::<Vec<_>>());
    let w = (&c * &hm).transpose();
    if l2.gram().congruence(&w.transpose()) != *l1.gram() {
        return Err(Error::Invalid(
            "isometry witness failed verification".into(),
        ));
    }
    Ok(IsometryWitness { matrix: Some(w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse_lattice;

    fn lat(e: &str) -> Lattice {
        parse_lattice(e).unwrap()
    }

    fn check(l1: &Lattice, l2: &Lattice, w: &IsometryWitness) {
        let m = w.matrix.as_ref().unwrap();
        assert_eq!(l2.gram().congruence(&m.transpose()), *l1.gram());
    }

    #[test]
    fn examples() {
        assert!(!definite_isometric(&lat("ExA"), &lat("ExB"))
            .unwrap()
            .is_present());
        let e8 = lat("E8");
        let w = definite_isometric(&e8, &e8).unwrap();
        check(&e8, &e8, &w);
        let a = lat("A2 + A1");
        let b = lat("A1 + A2");
        check(&a, &b, &definite_isometric(&a, &b).unwrap());
        assert!(!definite_isometric(&lat("A3"), &lat("A1^3"))
            .unwrap()
            .is_present());
        assert!(matches!(
            definite_isometric(&lat("U"), &lat("U")),
            Err(Error::IndefiniteLattice)
        ));
    }

    #[test]
    fn conjugated_gram_is_recognised() {
        let d4 = lat("D4");
        let p = IntMatrix::from_i64(&[[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, 0], [1, 1, 1, 1]]);
        assert!(p.is_unimodular());
        let other = Lattice::new(d4.gram().congruence(&p)).unwrap();
        let w = definite_isometric(&other, &d4).unwrap();
        check(&other, &d4, &w);
        let neg = other.neg();
        check(
            &neg,
            &d4.neg(),
            &definite_isometric(&neg, &d4.neg()).unwrap(),
        );
    }
}
