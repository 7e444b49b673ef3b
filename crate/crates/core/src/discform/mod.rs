//! Finite quadratic forms: discriminant groups of lattices and their subquotients.
//!
//! A form is stored on independent generators `g_i` of orders `d_i`, with all values
//! as integer numerators over the common denominator `n = lcm(d_i)`:
//! `q(g_i) = q[i]/n mod 2` and `b(g_i, g_j) = b[i][j]/n mod 1`.

mod gauss;
mod search;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{integer_kernel, row_basis, smith_normal_form, IntMatrix, RatMatrix};
use crate::lattice::Lattice;

pub use gauss::milgram_signature;
pub use search::{
    all_subgroups, forms_isomorphic, forms_isomorphic_with_limit, isometric_embeddings,
    isotropic_subgroups, Subgroup, DEFAULT_SEARCH_LIMIT,
};

/// Coefficients of a group element on the generators, reduced modulo the orders.
pub type DiscElement = Vec<u64>;

/// Largest common denominator handled; keeps all numerator products inside `u128`.
const MAX_EXPONENT: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    n: u64,
    q: Option<Vec<u64>>,
    b: Vec<Vec<u64>>,
}

fn to_num(x: &BigRational, n: u64, modulus: u64) -> Result<u64> {
    let scaled = x * BigRational::from_integer(BigInt::from(n));
    if !scaled.is_integer() {
        return Err(Error::Invalid(format!(
            "value {x} does not have denominator dividing {n}"
        )));
    }
    Ok(scaled
        .to_integer()
        .mod_floor(&BigInt::from(modulus))
        .to_u64()
        .unwrap())
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: vec![],
            n: 1,
            q: Some(vec![]),
            b: vec![],
        }
    }

    /// Build from rational values on independent generators; `q = None` for a bilinear-only form.
    pub fn from_rationals(
        orders: Vec<u64>,
        q: Option<Vec<BigRational>>,
        b: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let k = orders.len();
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::Invalid("generator orders must exceed 1".into()));
        }
        if b.len() != k
            || b.iter().any(|r| r.len() != k)
            || q.as_ref().is_some_and(|q| q.len() != k)
        {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: b.len(),
            });
        }
        let n = orders.iter().fold(1u64, |a, &d| a.lcm(&d));
        if n > MAX_EXPONENT {
            return Err(Error::TooLarge {
                size: n,
                limit: MAX_EXPONENT,
            });
        }
        let bn = b
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| to_num(x, n, n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let qn = q
            .map(|q| {
                q.iter()
                    .map(|x| to_num(x, n, 2 * n))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let f = FiniteQuadraticForm {
            orders,
            n,
            q: qn,
            b: bn,
        };
        f.validate()?;
        Ok(f.normalized())
    }

    fn validate(&self) -> Result<()> {
        let k = self.rank();
        for i in 0..k {
            for j in 0..k {
                if self.b[i][j] != self.b[j][i] {
                    return Err(Error::Invalid("bilinear values are not symmetric".into()));
                }
                // d_i · b(g_i, g_j) ∈ ℤ
                if (self.orders[i] as u128 * self.b[i][j] as u128) % self.n as u128 != 0 {
                    return Err(Error::Invalid(
                        "bilinear values incompatible with orders".into(),
                    ));
                }
            }
            if let Some(q) = &self.q {
                if q[i] % self.n != self.b[i][i] % self.n {
                    return Err(Error::Invalid("q(x) and b(x,x) disagree mod 1".into()));
                }
                let d = self.orders[i] as u128;
                if (d * d * q[i] as u128) % (2 * self.n as u128) != 0 {
                    return Err(Error::Invalid(
                        "q is not well defined on a generator".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Reduce the common denominator to the exponent of the group.
    fn normalized(mut self) -> Self {
        let e = self.orders.iter().fold(1u64, |a, &d| a.lcm(&d));
        if e != self.n {
            let f = self.n / e;
            for r in self.b.iter_mut() {
                for x in r.iter_mut() {
                    debug_assert_eq!(*x % f, 0);
                    *x /= f;
                }
            }
            if let Some(q) = self.q.as_mut() {
                for x in q.iter_mut() {
                    debug_assert_eq!(*x % f, 0);
                    *x /= f;
                }
            }
            self.n = e;
        }
        self
    }

    /// Number of generators (the length, when generators are in invariant-factor form).
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    /// Order as `u64`, or `TooLarge` with the given limit.
    pub fn order_within(&self, limit: u64) -> Result<u64> {
        let o = self.order();
        if o > limit as u128 {
            return Err(Error::TooLarge {
                size: o.min(u64::MAX as u128) as u64,
                limit,
            });
        }
        Ok(o as u64)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn has_quadratic(&self) -> bool {
        self.q.is_some()
    }

    pub fn q_values(&self) -> Result<Vec<BigRational>> {
        let q = self.q.as_ref().ok_or(Error::OddLatticeQuadratic)?;
        Ok(q.iter().map(|&x| self.rat(x)).collect())
    }

    pub fn b_values(&self) -> Vec<Vec<BigRational>> {
        self.b
            .iter()
            .map(|r| r.iter().map(|&x| self.rat(x)).collect())
            .collect()
    }

    fn rat(&self, num: u64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(self.n))
    }

    pub fn zero(&self) -> DiscElement {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> DiscElement {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, c: &[BigInt]) -> DiscElement {
        c.iter()
            .zip(&self.orders)
            .map(|(x, &d)| x.mod_floor(&BigInt::from(d)).to_u64().unwrap())
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> DiscElement {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg_elem(&self, x: &[u64]) -> DiscElement {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &d)| (d - a) % d)
            .collect()
    }

    pub fn mul_elem(&self, k: u64, x: &[u64]) -> DiscElement {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &d)| ((k as u128 * *a as u128) % d as u128) as u64)
            .collect()
    }

    pub fn is_zero_elem(x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    /// Numerator of `q(x)` over `n`, in `[0, 2n)`.
    pub(crate) fn q_num(&self, x: &[u64]) -> Result<u64> {
        let q = self.q.as_ref().ok_or(Error::OddLatticeQuadratic)?;
        let m = 2 * self.n as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as u128;
            acc = (acc + xi * xi % m * q[i] as u128) % m;
            for j in i + 1..x.len() {
                if x[j] == 0 {
                    continue;
                }
                acc = (acc + 2 * (xi * x[j] as u128 % m) * self.b[i][j] as u128) % m;
            }
        }
        Ok(acc as u64)
    }

    /// Numerator of `b(x, y)` over `n`, in `[0, n)`.
    pub(crate) fn b_num(&self, x: &[u64], y: &[u64]) -> u64 {
        let m = self.n as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let mut row: u128 = 0;
            for j in 0..y.len() {
                if y[j] != 0 {
                    row = (row + y[j] as u128 * self.b[i][j] as u128) % m;
                }
            }
            acc = (acc + x[i] as u128 * row) % m;
        }
        acc as u64
    }

    /// `q(x) ∈ ℚ/2ℤ`, as a representative in `[0, 2)`.
    pub fn q(&self, x: &[u64]) -> Result<BigRational> {
        Ok(self.rat(self.q_num(x)?))
    }

    /// `b(x, y) ∈ ℚ/ℤ`, as a representative in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> BigRational {
        self.rat(self.b_num(x, y))
    }

    /// `x` is isotropic: `q(x) = 0` (or `b(x,x) = 0` for a bilinear-only form).
    pub fn is_isotropic_elem(&self, x: &[u64]) -> bool {
        match self.q {
            Some(_) => self.q_num(x).unwrap() == 0,
            None => self.b_num(x, x) == 0,
        }
    }

    /// All elements in mixed-radix order (first coordinate fastest).
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            orders: &self.orders,
            next: Some(self.zero()),
        }
    }

    /// Mixed-radix index of an element, consistent with [`Self::elements`].
    pub fn index_of(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (a, &d) in x.iter().zip(&self.orders) {
            idx += *a as usize * stride;
            stride *= d as usize;
        }
        idx
    }

    /// Orthogonal direct sum; generators of `self` come first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n.lcm(&other.n);
        let (fa, fb) = (n / self.n, n / other.n);
        let k = self.rank() + other.rank();
        let mut b = vec![vec![0u64; k]; k];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                b[i][j] = self.b[i][j] * fa;
            }
        }
        let o = self.rank();
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                b[o + i][o + j] = other.b[i][j] * fb;
            }
        }
        let q = match (&self.q, &other.q) {
            (Some(x), Some(y)) => Some(
                x.iter()
                    .map(|v| v * fa)
                    .chain(y.iter().map(|v| v * fb))
                    .collect(),
            ),
            _ => None,
        };
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        FiniteQuadraticForm { orders, n, q, b }
    }

    /// The form with all values negated, `A(−1)`.
    pub fn negated(&self) -> Self {
        let n = self.n;
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            n,
            q: self
                .q
                .as_ref()
                .map(|q| q.iter().map(|&x| (2 * n - x) % (2 * n)).collect()),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|&x| (n - x) % n).collect())
                .collect(),
        }
    }

    /// Same group and bilinear form, quadratic refinement dropped.
    pub fn bilinear_only(&self) -> Self {
        FiniteQuadraticForm {
            q: None,
            ..self.clone()
        }
    }

    /// Lattice in `ℤ^k` of all lifts of the subgroup generated by `gens`.
    fn lift_lattice(&self, gens: &[DiscElement]) -> IntMatrix {
        let k = self.rank();
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        for i in 0..k {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(self.orders[i]);
            rows.push(r);
        }
        row_basis(&IntMatrix::from_rows(rows).unwrap())
    }

    /// Lattice in `ℤ^k` of lifts of `{x : b(x, h) = 0 for all h ∈ gens}`.
    fn perp_lattice(&self, gens: &[DiscElement]) -> IntMatrix {
        let k = self.rank();
        let m = gens.len();
        if m == 0 {
            return IntMatrix::identity(k);
        }
        // x · C ≡ 0 mod n, where column s of C is B · h_s
        let mut stacked = IntMatrix::zeros(k + m, m);
        for (s, h) in gens.iter().enumerate() {
            for i in 0..k {
                let v: u128 = (0..k)
                    .map(|j| self.b[i][j] as u128 * h[j] as u128)
                    .sum::<u128>()
                    % self.n as u128;
                stacked[(i, s)] = BigInt::from(v);
            }
            stacked[(k + s, s)] = BigInt::from(self.n);
        }
        let ker = integer_kernel(&stacked);
        let cols: Vec<usize> = (0..k).collect();
        let rows: Vec<usize> = (0..ker.rows()).collect();
        row_basis(&ker.submatrix(&rows, &cols))
    }

    /// Independent generators `(element, order)` of `X / Y` for full-rank lift lattices `Y ⊆ X`.
    fn quotient_basis(&self, x: &IntMatrix, y: &IntMatrix) -> Vec<(DiscElement, u64)> {
        let xinv = x.to_rat().inverse().expect("full-rank lift lattice");
        let r = (&y.to_rat() * &xinv).to_int().expect("Y is contained in X");
        let s = smith_normal_form(&r);
        let vinv = s.v.inverse_unimodular().expect("unimodular");
        let xp = &vinv * x;
        let mut out = Vec::new();
        for (i, d) in s.diagonal().iter().enumerate() {
            if d.is_one() {
                continue;
            }
            out.push((self.reduce(xp.row(i)), d.to_u64().expect("order fits")));
        }
        out
    }

    /// Independent generators of the subgroup generated by `gens`.
    pub fn subgroup_basis(&self, gens: &[DiscElement]) -> Vec<(DiscElement, u64)> {
        let x = self.lift_lattice(gens);
        let y = self.lift_lattice(&[]);
        self.quotient_basis(&x, &y)
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[DiscElement]) -> u128 {
        self.subgroup_basis(gens)
            .iter()
            .map(|(_, d)| *d as u128)
            .product()
    }

    /// Independent generators of `H^⊥` for `H = ⟨gens⟩`.
    pub fn perp(&self, gens: &[DiscElement]) -> Vec<(DiscElement, u64)> {
        let x = self.perp_lattice(gens);
        let y = self.lift_lattice(&[]);
        self.quotient_basis(&x, &y)
    }

    /// Restriction of the form to independent elements `basis` with the given orders.
    pub fn restrict(&self, basis: &[(DiscElement, u64)]) -> FiniteQuadraticForm {
        let k = basis.len();
        let orders: Vec<u64> = basis.iter().map(|(_, d)| *d).collect();
        let b = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.b_num(&basis[i].0, &basis[j].0))
                    .collect()
            })
            .collect();
        let q = self
            .q
            .as_ref()
            .map(|_| basis.iter().map(|(e, _)| self.q_num(e).unwrap()).collect());
        FiniteQuadraticForm {
            orders,
            n: self.n,
            q,
            b,
        }
        .normalized()
    }

    /// `H^⊥ / H` for an isotropic subgroup `H = ⟨gens⟩`, together with the chosen
    /// representatives of its generators in this form.
    pub fn subquotient(
        &self,
        gens: &[DiscElement],
    ) -> Result<(FiniteQuadraticForm, Vec<DiscElement>)> {
        for (i, g) in gens.iter().enumerate() {
            if !self.is_isotropic_elem(g) {
                return Err(Error::NotIsotropic);
            }
            for h in &gens[..i] {
                if self.b_num(g, h) != 0 {
                    return Err(Error::NotIsotropic);
                }
            }
        }
        let x = self.perp_lattice(gens);
        let y = self.lift_lattice(gens);
        let basis = self.quotient_basis(&x, &y);
        let reps = basis.iter().map(|(e, _)| e.clone()).collect();
        Ok((self.restrict(&basis), reps))
    }

    /// Same form on invariant-factor generators `d₁ | d₂ | …`.
    pub fn to_invariant_factors(&self) -> FiniteQuadraticForm {
        let gens: Vec<DiscElement> = (0..self.rank()).map(|i| self.generator(i)).collect();
        let basis = self.subgroup_basis(&gens);
        self.restrict(&basis)
    }

    /// Radical of the bilinear form is trivial.
    pub fn is_nondegenerate(&self) -> bool {
        let gens: Vec<DiscElement> = (0..self.rank()).map(|i| self.generator(i)).collect();
        self.perp(&gens).is_empty()
    }

    /// Length: minimal number of generators.
    pub fn length(&self) -> usize {
        self.to_invariant_factors().rank()
    }

    /// Elementary divisors (prime powers), sorted; identifies the abstract group.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &d in &self.orders {
            let mut m = d;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    let mut pk = 1;
                    while m % p == 0 {
                        m /= p;
                        pk *= p;
                    }
                    out.push(pk);
                }
                p += 1;
            }
            if m > 1 {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }
}

pub struct ElementIter<'a> {
    orders: &'a [u64],
    next: Option<DiscElement>,
}

impl Iterator for ElementIter<'_> {
    type Item = DiscElement;
    fn next(&mut self) -> Option<DiscElement> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut i = 0;
        loop {
            if i == nxt.len() {
                break;
            }
            nxt[i] += 1;
            if nxt[i] < self.orders[i] {
                self.next = Some(nxt);
                break;
            }
            nxt[i] = 0;
            i += 1;
        }
        Some(cur)
    }
}

fn fmt_rat_num(num: u64, n: u64) -> String {
    let r = BigRational::new(BigInt::from(num), BigInt::from(n));
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0 (trivial)");
        }
        let g: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", g.join(" + "))?;
        match &self.q {
            Some(q) => {
                let qs: Vec<String> = q.iter().map(|&x| fmt_rat_num(x, self.n)).collect();
                write!(f, ", q = ({})", qs.join(", "))?;
            }
            None => {
                let bs: Vec<String> = (0..self.rank())
                    .map(|i| fmt_rat_num(self.b[i][i], self.n))
                    .collect();
                write!(f, ", b(g,g) = ({})", bs.join(", "))?;
            }
        }
        let off: Vec<String> = (0..self.rank())
            .flat_map(|i| (i + 1..self.rank()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.b[i][j] != 0)
            .map(|(i, j)| {
                format!(
                    "b({},{}) = {}",
                    i + 1,
                    j + 1,
                    fmt_rat_num(self.b[i][j], self.n)
                )
            })
            .collect();
        if !off.is_empty() {
            write!(f, ", {}", off.join(", "))?;
        }
        Ok(())
    }
}

/// Explicit lifts of discriminant generators to the dual lattice.
#[derive(Clone, Debug)]
pub struct DiscLift {
    /// Row `i` is a vector of `L^∨` (coordinates in the basis of `L`) lifting generator `i`.
    pub lifts: RatMatrix,
    vinv: IntMatrix,
    positions: Vec<usize>,
    orders: Vec<u64>,
}

impl DiscLift {
    /// Class in `A_L` of a dual vector `x` (coordinates in the basis of `L`).
    pub fn class_of(&self, x: &[BigRational]) -> Result<DiscElement> {
        let y = self.vinv.to_rat().mul_vec(x);
        self.positions
            .iter()
            .zip(&self.orders)
            .map(|(&p, &d)| {
                let c = &y[p] * BigRational::from_integer(BigInt::from(d));
                if !c.is_integer() {
                    return Err(Error::Invalid("vector is not in the dual lattice".into()));
                }
                Ok(c.to_integer().mod_floor(&BigInt::from(d)).to_u64().unwrap())
            })
            .collect()
    }

    /// A dual vector representing `x`.
    pub fn lift(&self, x: &[u64]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.lifts.cols()];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(c));
            for (o, l) in out.iter_mut().zip(self.lifts.row(i)) {
                *o += &c * l;
            }
        }
        out
    }
}

/// Discriminant form `L^∨/L` of a lattice, with explicit generator lifts.
///
/// For odd lattices only the bilinear part is recorded; asking for `q` then fails
/// with `OddLatticeQuadratic`.
pub fn discriminant_form(l: &Lattice) -> Result<(FiniteQuadraticForm, DiscLift)> {
    let g = l.gram();
    let k = l.rank();
    let s = smith_normal_form(g);
    let diag = s.diagonal();
    let positions: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
    let orders: Vec<u64> = positions
        .iter()
        .map(|&i| {
            diag[i].to_u64().ok_or(Error::TooLarge {
                size: u64::MAX,
                limit: MAX_EXPONENT,
            })
        })
        .collect::<Result<_>>()?;
    let mut lifts = RatMatrix::zeros(positions.len(), k);
    for (r, &p) in positions.iter().enumerate() {
        let d = BigRational::from_integer(diag[p].clone());
        for j in 0..k {
            lifts[(r, j)] = BigRational::from_integer(s.v[(j, p)].clone()) / &d;
        }
    }
    let gr = g.to_rat();
    let m = positions.len();
    let gl: Vec<Vec<BigRational>> = (0..m).map(|i| gr.mul_vec(lifts.row(i))).collect();
    let pair = |i: usize, j: usize| -> BigRational {
        lifts
            .row(i)
            .iter()
            .zip(&gl[j])
            .fold(BigRational::zero(), |a, (x, y)| a + x * y)
    };
    let frac1 = |x: BigRational| x.clone() - BigRational::from_integer(x.floor().to_integer());
    let b: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| frac1(pair(i, j))).collect())
        .collect();
    let q = if l.is_even() {
        let two = BigRational::from_integer(BigInt::from(2));
        Some(
            (0..m)
                .map(|i| {
                    let v = pair(i, i);
                    let t = (&v / &two).floor();
                    v - &two * t
                })
                .collect(),
        )
    } else {
        None
    };
    let form = FiniteQuadraticForm::from_rationals(orders.clone(), q, b)?;
    let vinv = s.v.inverse_unimodular().expect("unimodular");
    Ok((
        form,
        DiscLift {
            lifts,
            vinv,
            positions,
            orders,
        },
    ))
}

/// δ of a 2-elementary form: 0 iff all values of q are integral.
pub fn delta_invariant(f: &FiniteQuadraticForm) -> Result<u8> {
    if f.orders.iter().any(|&d| d != 2) {
        return Err(Error::NotTwoElementary);
    }
    let q = f.q.as_ref().ok_or(Error::OddLatticeQuadratic)?;
    // q(x + y) = q(x) + q(y) + 2b(x, y) with 2b ∈ ℤ, so generators decide
    Ok(if q.iter().all(|&x| x % f.n == 0) {
        0
    } else {
        1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse_lattice;
    use num_traits::Signed;

    fn disc(e: &str) -> FiniteQuadraticForm {
        discriminant_form(&parse_lattice(e).unwrap()).unwrap().0
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn discriminant_examples() {
        let a2 = disc("A2");
        assert_eq!(a2.generator_orders(), &[3]);
        assert_eq!(a2.q_values().unwrap(), vec![r(2, 3)]);
        assert!(disc("U").is_trivial());
        let og = disc("OG10");
        assert_eq!(og.generator_orders(), &[3]);
        assert_eq!(og.q_values().unwrap(), vec![r(4, 3)]);
    }

    #[test]
    fn odd_lattice_has_no_quadratic_values() {
        let f = disc("[3]");
        assert_eq!(f.q_values(), Err(Error::OddLatticeQuadratic));
        assert_eq!(f.b_values(), vec![vec![r(1, 3)]]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_invariant(&disc("D4")).unwrap(), 0);
        assert_eq!(delta_invariant(&disc("[2]")).unwrap(), 1);
        assert_eq!(delta_invariant(&FiniteQuadraticForm::trivial()).unwrap(), 0);
        assert_eq!(delta_invariant(&disc("A2")), Err(Error::NotTwoElementary));
    }

    #[test]
    fn lifts_are_dual_vectors_of_the_right_class() {
        let l = parse_lattice("A2(-1) + U(3) + D4").unwrap();
        let (f, lift) = discriminant_form(&l).unwrap();
        assert_eq!(f.order(), 3 * 9 * 4);
        for i in 0..f.rank() {
            let v = lift.lifts.row(i).to_vec();
            let gv = l.gram().to_rat().mul_vec(&v);
            assert!(gv.iter().all(|x| x.is_integer()));
            assert_eq!(lift.class_of(&v).unwrap(), f.generator(i));
        }
    }

    #[test]
    fn quadratic_refines_bilinear_on_generator_pairs() {
        for e in ["A2 + A2(-1)", "D4 + E6", "U(3) + A4(-1)", "L17", "N69"] {
            let f = disc(e);
            let n = f.exponent();
            for i in 0..f.rank() {
                for j in 0..f.rank() {
                    let (x, y) = (f.generator(i), f.generator(j));
                    let lhs = (f.q_num(&f.add(&x, &y)).unwrap() + 4 * n
                        - f.q_num(&x).unwrap()
                        - f.q_num(&y).unwrap())
                        % (2 * n);
                    assert_eq!(lhs, 2 * f.b_num(&x, &y) % (2 * n), "{e}");
                }
            }
        }
    }

    #[test]
    fn group_order_matches_determinant() {
        for e in [
            "A2", "A4", "D4", "D5", "E6", "E7", "U(3)", "K7", "H5", "L17", "N69", "N15", "ExA",
            "E6*(3)", "OG10",
        ] {
            let l = parse_lattice(e).unwrap();
            assert_eq!(BigInt::from(disc(e).order()), l.det().abs(), "{e}");
        }
    }

    #[test]
    fn subquotient_of_diagonal_is_trivial() {
        let f = disc("A2 + A2(-1)");
        let (sq, _) = f.subquotient(&[vec![1, 1]]).unwrap();
        assert!(sq.is_trivial());
        assert_eq!(f.subquotient(&[vec![1, 0]]), Err(Error::NotIsotropic));
    }

    #[test]
    fn invariant_factor_normalisation() {
        let f = disc("A2")
            .direct_sum(&disc("[2]").bilinear_only())
            .to_invariant_factors();
        assert_eq!(f.generator_orders(), &[6]);
        assert_eq!(disc("A2").direct_sum(&disc("A2")).length(), 2);
    }
}
