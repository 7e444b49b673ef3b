//! Exhaustive enumeration of vectors of a given norm in definite lattices.

mod isometric;

pub use isometric::{definite_isometric, IsometryWitness, ISOMETRY_RANK_CAP};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::glue::Sublattice;
use crate::lattice::{Lattice, Vector};

pub const DEFAULT_RANK_CAP: usize = 16;

/// Vectors `v` with `(v, v) = target_norm`, `(v, w) = k` for each dot constraint, and
/// `div(v) = d` when a divisibility filter is set.
#[derive(Clone, Debug)]
pub struct EnumQuery {
    pub lattice: Lattice,
    pub target_norm: BigInt,
    pub dot_constraints: Vec<(Vector, BigInt)>,
    pub divisibility: Option<BigInt>,
}

impl EnumQuery {
    pub fn new(lattice: Lattice, target_norm: i64) -> Self {
        EnumQuery {
            lattice,
            target_norm: BigInt::from(target_norm),
            dot_constraints: vec![],
            divisibility: None,
        }
    }

    pub fn dot(mut self, w: Vector, k: i64) -> Self {
        self.dot_constraints.push((w, BigInt::from(k)));
        self
    }

    pub fn div(mut self, d: i64) -> Self {
        self.divisibility = Some(BigInt::from(d));
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub rank_cap: usize,
    pub list: bool,
    pub parallel: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            rank_cap: DEFAULT_RANK_CAP,
            list: false,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumResult {
    pub count: u64,
    /// Sorted lexicographically when requested.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_vectors"
    )]
    pub vectors: Option<Vec<Vector>>,
    /// The lattice was negative definite and was negated, with the norm negated to match.
    pub negated: bool,
}

fn ser_vectors<S: serde::Serializer>(
    v: &Option<Vec<Vector>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = v
        .iter()
        .flatten()
        .map(|x| x.iter().map(|c| c.to_string()).collect())
        .collect();
    strs.serialize(s)
}

/// Exact triangular data for `Q(x) = Σᵢ (Dᵢ xᵢ + sᵢ)² / (Dᵢ Dᵢ₋₁)` with `Dᵢ` the leading
/// principal minors and `sᵢ = Σ_{j>i} Nᵢⱼ xⱼ`, `Nᵢⱼ` the bordered minors.
struct Triangular {
    n: usize,
    /// `d[i]` is the leading minor of size `i` (so `d[0] = 1`).
    d: Vec<i128>,
    /// `nb[i][j]` for `j > i`: minor on rows `0..=i`, columns `0..i ∪ {j}`.
    nb: Vec<Vec<i128>>,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

impl Triangular {
    fn new(g: &IntMatrix) -> Result<Self> {
        let n = g.rows();
        let mut d = vec![1i128; n + 1];
        let mut nb = vec![vec![0i128; n]; n];
        for i in 0..n {
            let rows: Vec<usize> = (0..=i).collect();
            d[i + 1] = to_i128(&g.submatrix(&rows, &rows).det())?;
            for j in i + 1..n {
                let mut cols: Vec<usize> = (0..i).collect();
                cols.push(j);
                nb[i][j] = to_i128(&g.submatrix(&rows, &cols).det())?;
            }
        }
        Ok(Triangular { n, d, nb })
    }
}

struct Search<'a> {
    tri: &'a Triangular,
    gram: &'a IntMatrix,
    norm: i128,
    /// Linear forms `x ↦ (x, w)` with required values.
    dots: Vec<(Vec<i128>, i128)>,
    div: Option<BigInt>,
    list: bool,
}

#[derive(Default)]
struct Acc {
    count: u64,
    vectors: Vec<Vec<i128>>,
}

impl Acc {
    fn merge(mut self, other: Acc) -> Acc {
        self.count += other.count;
        self.vectors.extend(other.vectors);
        self
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

impl Search<'_> {
    /// Candidate range for coordinate `i` given the partial numerator `m` (denominator `D_{i+1}`)
    /// of the levels above.
    fn range(&self, i: usize, m: i128, x: &[i128]) -> Result<Option<(i128, i128, i128)>> {
        let t = self.tri;
        let (di, dprev) = (t.d[i + 1], t.d[i]);
        let mut s: i128 = 0;
        for j in i + 1..t.n {
            s = s
                .checked_add(t.nb[i][j].checked_mul(x[j]).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        let budget = self
            .norm
            .checked_mul(di)
            .and_then(|v| v.checked_sub(m))
            .and_then(|v| v.checked_mul(dprev))
            .ok_or(Error::Overflow)?;
        if budget < 0 {
            return Ok(None);
        }
        let r = budget.sqrt();
        Ok(Some((ceil_div(-r - s, di), (r - s).div_euclid(di), s)))
    }

    fn walk(&self, i: usize, m: i128, x: &mut Vec<i128>, acc: &mut Acc) -> Result<()> {
        let t = self.tri;
        let Some((lo, hi, s)) = self.range(i, m, x)? else {
            return Ok(());
        };
        let (di, dprev) = (t.d[i + 1], t.d[i]);
        for xi in lo..=hi {
            x[i] = xi;
            let y = di * xi + s;
            let num = m
                .checked_mul(dprev)
                .and_then(|v| v.checked_add(y.checked_mul(y)?))
                .ok_or(Error::Overflow)?;
            debug_assert_eq!(num % di, 0);
            let m_next = num / di;
            if i == 0 {
                if m_next == self.norm {
                    self.leaf(x, acc);
                }
            } else {
                self.walk(i - 1, m_next, x, acc)?;
            }
        }
        x[i] = 0;
        Ok(())
    }

    fn leaf(&self, x: &[i128], acc: &mut Acc) {
        if x.iter().all(|&c| c == 0) {
            return;
        }
        for (w, k) in &self.dots {
            if x.iter().zip(w).map(|(a, b)| a * b).sum::<i128>() != *k {
                return;
            }
        }
        if let Some(d) = &self.div {
            let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
            let gv = self.gram.mul_vec(&v);
            if crate::exactalg::gcd_all(gv.iter()) != *d {
                return;
            }
        }
        acc.count += 1;
        if self.list {
            acc.vectors.push(x.to_vec());
        }
    }
}

/// Positive definite Gram of the query's lattice, whether it was negated, and the adjusted query.
fn normalize(q: &EnumQuery) -> Result<(IntMatrix, bool, BigInt, Vec<(Vector, BigInt)>)> {
    let l = &q.lattice;
    if l.is_positive_definite() {
        Ok((
            l.gram().clone(),
            false,
            q.target_norm.clone(),
            q.dot_constraints.clone(),
        ))
    } else if l.is_negative_definite() {
        let dots = q
            .dot_constraints
            .iter()
            .map(|(w, k)| (w.clone(), -k))
            .collect();
        Ok((l.gram().neg(), true, -&q.target_norm, dots))
    } else {
        Err(Error::IndefiniteLattice)
    }
}

pub fn count_vectors_with(q: &EnumQuery, opts: EnumOptions) -> Result<EnumResult> {
    let n = q.lattice.rank();
    if n > opts.rank_cap {
        return Err(Error::RankTooLarge {
            rank: n,
            cap: opts.rank_cap,
        });
    }
    let (gram, negated, norm, dots) = normalize(q)?;
    if n == 0 || !norm.is_positive() {
        return Ok(EnumResult {
            count: 0,
            vectors: opts.list.then(Vec::new),
            negated,
        });
    }
    let tri = Triangular::new(&gram)?;
    let mut lin = Vec::with_capacity(dots.len());
    for (w, k) in &dots {
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: w.len(),
            });
        }
        let gw = gram.mul_vec(w);
        // pairing in the normalized lattice is the negation of the original one, as is k
        lin.push((
            gw.iter().map(to_i128).collect::<Result<Vec<_>>>()?,
            to_i128(k)?,
        ));
    }
    let search = Search {
        tri: &tri,
        gram: &gram,
        norm: to_i128(&norm)?,
        dots: lin,
        div: q.divisibility.as_ref().map(|d| d.abs()),
        list: opts.list,
    };
    let top = n - 1;
    let acc = match search.range(top, 0, &vec![0; n])? {
        None => Acc::default(),
        Some((lo, hi, _)) => {
            let run = |xt: i128| -> Result<Acc> {
                let mut acc = Acc::default();
                let mut x = vec![0i128; n];
                x[top] = xt;
                let y = tri.d[n] * xt;
                let m = y.checked_mul(y).ok_or(Error::Overflow)? / tri.d[n];
                if top == 0 {
                    if m == search.norm {
                        search.leaf(&x, &mut acc);
                    }
                } else {
                    search.walk(top - 1, m, &mut x, &mut acc)?;
                }
                Ok(acc)
            };
            if opts.parallel {
                (lo..=hi)
                    .into_par_iter()
                    .map(run)
                    .try_reduce(Acc::default, |a, b| Ok(a.merge(b)))?
            } else {
                (lo..=hi)
                    .map(run)
                    .try_fold(Acc::default(), |a, b| b.map(|b| a.merge(b)))?
            }
        }
    };
    let vectors = opts.list.then(|| {
        let mut v: Vec<Vector> = acc
            .vectors
            .iter()
            .map(|x| x.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        v.sort();
        v
    });
    Ok(EnumResult {
        count: acc.count,
        vectors,
        negated,
    })
}

pub fn count_vectors(q: &EnumQuery) -> Result<u64> {
    Ok(count_vectors_with(q, EnumOptions::default())?.count)
}

pub fn list_vectors(q: &EnumQuery) -> Result<Vec<Vector>> {
    let r = count_vectors_with(
        q,
        EnumOptions {
            list: true,
            ..Default::default()
        },
    )?;
    Ok(r.vectors.unwrap_or_default())
}

/// Smallest nonzero `|(v, v)|`.
pub fn minimum(l: &Lattice) -> Result<BigInt> {
    if !l.is_definite() {
        return Err(Error::IndefiniteLattice);
    }
    let sign = if l.is_positive_definite() { 1 } else { -1 };
    let bound = (0..l.rank())
        .map(|i| l.gram()[(i, i)].abs())
        .min()
        .ok_or(Error::Invalid("rank 0 lattice has no minimum".into()))?;
    let mut k = BigInt::one();
    while k <= bound {
        let q = EnumQuery {
            lattice: l.clone(),
            target_norm: &k * sign,
            dot_constraints: vec![],
            divisibility: None,
        };
        if count_vectors(&q)? > 0 {
            return Ok(k);
        }
        k += 1;
    }
    unreachable!("a basis vector attains the diagonal bound")
}

/// Counts of short roots (`v² = 2`, `div = 1`) and long roots (`v² = 6`, `div = 3`) of a definite
/// lattice, after negation if it is negative definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub short_roots: u64,
    pub long_roots: u64,
}

/// Divisibility is measured in the sublattice `within` of an ambient lattice when given, where
/// `embedding` lists the images of the basis vectors of `l` (rows, in ambient coordinates).
pub fn root_report(l: &Lattice, within: Option<(&Sublattice, &IntMatrix)>) -> Result<RootReport> {
    if l.rank() == 0 {
        return Ok(RootReport {
            short_roots: 0,
            long_roots: 0,
        });
    }
    let sign: i64 = if l.is_positive_definite() {
        1
    } else if l.is_negative_definite() {
        -1
    } else {
        return Err(Error::IndefiniteLattice);
    };
    let div_of = |v: &Vector| -> Result<BigInt> {
        match within {
            None => l.divisibility(v),
            Some((sub, emb)) => {
                let w = sub.ambient.gram().mul_vec(&emb.vec_mul(v));
                Ok(crate::exactalg::gcd_all(sub.basis.mul_vec(&w).iter()))
            }
        }
    };
    let count = |norm: i64, div: i64| -> Result<u64> {
        let vs = list_vectors(&EnumQuery::new(l.clone(), sign * norm))?;
        let mut c = 0;
        for v in &vs {
            if div_of(v)? == BigInt::from(div) {
                c += 1;
            }
        }
        Ok(c)
    };
    Ok(RootReport {
        short_roots: count(2, 1)?,
        long_roots: count(6, 3)?,
    })
}

pub fn has_square_one(l: &Lattice) -> Result<bool> {
    let sign = if l.is_positive_definite() {
        1
    } else if l.is_negative_definite() {
        -1
    } else {
        return Err(Error::IndefiniteLattice);
    };
    Ok(count_vectors(&EnumQuery::new(l.clone(), sign))? > 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WallClass {
    Pex,
    Wall,
    Neither,
}

/// Membership of a vector of the given square and divisibility in `𝐋` among the prime
/// exceptional divisors and the remaining wall divisors.
pub fn wall_class(square: i64, div: i64) -> WallClass {
    match (square, div.abs()) {
        (-2, _) | (-6, 3) => WallClass::Pex,
        (-4, _) | (-24, 3) => WallClass::Wall,
        _ => WallClass::Neither,
    }
}
