//! Isometries: invariant and coinvariant lattices, discriminant action, spinor norm, and the
//! extension from `𝐋` to `𝚲`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::discform::{discriminant_form, DiscElement, FiniteQuadraticForm};
use crate::error::{Error, Result};
use crate::exactalg::{integer_kernel, smith_normal_form, IntMatrix, RatMatrix};
use crate::glue::{glue_group, lambda_embedding, orthogonal_complement, GlueGroup, Sublattice};
use crate::lattice::{
    is_prime, lattice_from_json, lattice_to_json, make_named, matrix_from_json, matrix_to_json,
    Lattice,
};

/// Default search cap for [`Isometry::order`].
pub const ORDER_CAP: u32 = 120;

/// Spinor norm of a reflection in a vector of negative square. Reflections in positive vectors
/// get the opposite sign.
pub const NEGATIVE_REFLECTION_SPIN: i8 = 1;

/// An isometry acting on column coordinate vectors: `v ↦ matrix · v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lattice: Lattice, matrix: IntMatrix) -> Result<Self> {
        let n = lattice.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.rows(),
            });
        }
        if lattice.gram().congruence(&matrix.transpose()) != *lattice.gram() {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry { lattice, matrix })
    }

    pub fn identity(lattice: Lattice) -> Self {
        let n = lattice.rank();
        Isometry {
            lattice,
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn minus_identity(lattice: Lattice) -> Self {
        let n = lattice.rank();
        Isometry {
            lattice,
            matrix: IntMatrix::identity(n).neg(),
        }
    }

    /// Reflection `x ↦ x − 2(x,v)/(v,v)·v`; fails unless it is integral.
    pub fn reflection(lattice: Lattice, v: &[BigInt]) -> Result<Self> {
        let vv = lattice.norm(v)?;
        if vv.is_zero() {
            return Err(Error::Invalid("reflection in an isotropic vector".into()));
        }
        let n = lattice.rank();
        let gv = lattice.gram().mul_vec(v);
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            let num = BigInt::from(2) * &gv[j];
            if !(&num % &vv).is_zero() {
                return Err(Error::Invalid(
                    "reflection is not integral on this lattice".into(),
                ));
            }
            let c = num / &vv;
            for i in 0..n {
                m[(i, j)] -= &c * &v[i];
            }
        }
        Isometry::new(lattice, m)
    }

    /// Product of the reflections in the basis vectors, in order (a Coxeter element for root
    /// lattices in the simple-root basis).
    pub fn coxeter(lattice: Lattice) -> Result<Self> {
        let mut f = Isometry::identity(lattice.clone());
        for i in 0..lattice.rank() {
            f = f.compose(&Isometry::reflection(
                lattice.clone(),
                &lattice.basis_vector(i),
            )?)?;
        }
        Ok(f)
    }

    /// Cyclic shift of `k` copies of `l`: block `i` goes to block `i + 1`.
    pub fn cyclic_shift(l: &Lattice, k: usize) -> Result<Self> {
        let n = l.rank();
        let sum = crate::lattice::direct_sum(&vec![l.clone(); k])?;
        let mut m = IntMatrix::zeros(n * k, n * k);
        for b in 0..k {
            for i in 0..n {
                m[(((b + 1) % k) * n + i, b * n + i)] = BigInt::one();
            }
        }
        Isometry::new(sum, m)
    }

    /// Block-diagonal isometry of the direct sum.
    pub fn block_sum(parts: &[Isometry]) -> Result<Self> {
        let lat = crate::lattice::direct_sum(
            &parts.iter().map(|p| p.lattice.clone()).collect::<Vec<_>>(),
        )?;
        let m = IntMatrix::block_diag(&parts.iter().map(|p| &p.matrix).collect::<Vec<_>>());
        Isometry::new(lat, m)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Self> {
        if self.lattice.gram() != other.lattice.gram() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice.rank(),
                got: other.lattice.rank(),
            });
        }
        Ok(Isometry {
            lattice: self.lattice.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut m = IntMatrix::identity(self.lattice.rank());
        for _ in 0..k {
            m = &m * &self.matrix;
        }
        Isometry {
            lattice: self.lattice.clone(),
            matrix: m,
        }
    }

    pub fn inverse(&self) -> Self {
        let m = self
            .matrix
            .inverse_unimodular()
            .expect("isometries are unimodular");
        Isometry {
            lattice: self.lattice.clone(),
            matrix: m,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.lattice.rank())
    }

    /// Smallest `n ≤ cap` with `fⁿ = id`.
    pub fn order_with_cap(&self, cap: u32) -> Option<u32> {
        let id = IntMatrix::identity(self.lattice.rank());
        let mut p = self.matrix.clone();
        for n in 1..=cap {
            if p == id {
                return Some(n);
            }
            p = &p * &self.matrix;
        }
        None
    }

    pub fn order(&self) -> Option<u32> {
        self.order_with_cap(ORDER_CAP)
    }

    pub fn to_json(&self) -> Value {
        json!({ "lattice": lattice_to_json(&self.lattice), "matrix": matrix_to_json(&self.matrix) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let lat = lattice_from_json(
            v.get("lattice")
                .ok_or_else(|| Error::Parse("missing \"lattice\"".into()))?,
        )?;
        let m = matrix_from_json(
            v.get("matrix")
                .ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?,
        )?;
        Isometry::new(lat, m)
    }
}

/// Invariant lattice `L^G`, coinvariant lattice `L_G = (L^G)^⊥`, and the glue between them.
#[derive(Clone, Debug)]
pub struct InvariantPair {
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub glue: GlueGroup,
    pub glue_a: usize,
    pub order: u32,
}

pub fn invariant_coinvariant(f: &Isometry) -> Result<InvariantPair> {
    let order = f.order().ok_or(Error::InfiniteOrder(ORDER_CAP))?;
    let l = f.lattice.clone();
    let n = l.rank();
    // v with (F − I)v = 0
    let moved = f.matrix.sub(&IntMatrix::identity(n)).transpose();
    let k = integer_kernel(&moved);
    let invariant = Sublattice::new(
        l.clone(),
        if k.rows() == 0 {
            IntMatrix::zeros(0, n)
        } else {
            k
        },
    )?;
    let coinvariant = orthogonal_complement(&invariant)?;
    let p = if is_prime(order as u64) {
        Some(order as u64)
    } else {
        None
    };
    let glue = glue_group(&l, &invariant, &coinvariant, p)?;
    Ok(InvariantPair {
        glue_a: glue.a,
        invariant,
        coinvariant,
        glue,
        order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ActionKind {
    Identity,
    MinusIdentity,
    Other,
}

/// The induced automorphism of `A_L`, by images of the generators of `discriminant_form(L)`.
#[derive(Clone, Debug)]
pub struct DiscAction {
    pub form: FiniteQuadraticForm,
    pub images: Vec<DiscElement>,
    pub kind: ActionKind,
}

impl DiscAction {
    pub fn apply(&self, x: &[u64]) -> DiscElement {
        let mut out = self.form.zero();
        for (i, &c) in x.iter().enumerate() {
            out = self.form.add(&out, &self.form.mul_elem(c, &self.images[i]));
        }
        out
    }

    pub fn compose(&self, other: &DiscAction) -> DiscAction {
        let images: Vec<DiscElement> = other.images.iter().map(|y| self.apply(y)).collect();
        let kind = classify(&self.form, &images);
        DiscAction {
            form: self.form.clone(),
            images,
            kind,
        }
    }
}

fn classify(f: &FiniteQuadraticForm, images: &[DiscElement]) -> ActionKind {
    let gens: Vec<DiscElement> = (0..f.rank()).map(|i| f.generator(i)).collect();
    if images == gens.as_slice() {
        ActionKind::Identity
    } else if images.iter().zip(&gens).all(|(x, g)| *x == f.neg_elem(g)) {
        ActionKind::MinusIdentity
    } else {
        ActionKind::Other
    }
}

pub fn discriminant_action(f: &Isometry) -> Result<DiscAction> {
    let (form, lift) = discriminant_form(&f.lattice)?;
    let rf = f.matrix.to_rat();
    let mut images = Vec::with_capacity(form.rank());
    for i in 0..form.rank() {
        let v = lift.lift(&form.generator(i));
        images.push(lift.class_of(&rf.mul_vec(&v))?);
    }
    let kind = classify(&form, &images);
    Ok(DiscAction { form, images, kind })
}

fn rat_inner(g: &RatMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

/// Orthogonal basis of `ℚⁿ` for the form `g`, by projection with an isotropic-pair fallback.
fn orthogonal_basis(g: &RatMatrix) -> Vec<Vec<BigRational>> {
    let n = g.rows();
    let mut cands: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    while !cands.is_empty() {
        let u = match cands.iter().position(|c| !rat_inner(g, c, c).is_zero()) {
            Some(i) => cands.remove(i),
            None => {
                let (i, j) = (0..cands.len())
                    .flat_map(|i| (i + 1..cands.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !rat_inner(g, &cands[i], &cands[j]).is_zero())
                    .expect("nondegenerate form");
                let ci = cands.remove(i);
                ci.iter().zip(&cands[j - 1]).map(|(a, b)| a + b).collect()
            }
        };
        let uu = rat_inner(g, &u, &u);
        for c in cands.iter_mut() {
            let t = rat_inner(g, c, &u) / &uu;
            for (x, y) in c.iter_mut().zip(&u) {
                *x -= &t * y;
            }
        }
        out.push(u);
    }
    out
}

/// Reflects every column of `m` in `w`.
fn reflect_columns(g: &RatMatrix, m: &mut RatMatrix, w: &[BigRational]) {
    let ww = rat_inner(g, w, w);
    let gw = g.mul_vec(w);
    for j in 0..m.cols() {
        let col: Vec<BigRational> = (0..m.rows()).map(|i| m[(i, j)].clone()).collect();
        let t = BigRational::from_integer(BigInt::from(2))
            * col.iter().zip(&gw).map(|(a, b)| a * b).sum::<BigRational>()
            / &ww;
        for i in 0..m.rows() {
            m[(i, j)] -= &t * &w[i];
        }
    }
}

/// Writes `f` as a product of reflections over `ℚ` and returns the reflection vectors, leftmost
/// first: `f = r_{w₁} ∘ r_{w₂} ∘ ⋯`.
pub fn reflection_factorization(f: &Isometry) -> Vec<Vec<BigRational>> {
    let g = f.lattice.gram().to_rat();
    let n = g.rows();
    let mut cur = f.matrix.to_rat();
    let mut out = Vec::new();
    for u in orthogonal_basis(&g) {
        let gu = cur.mul_vec(&u);
        if gu == u {
            continue;
        }
        let w: Vec<BigRational> = gu.iter().zip(&u).map(|(a, b)| a - b).collect();
        if !rat_inner(&g, &w, &w).is_zero() {
            reflect_columns(&g, &mut cur, &w);
            out.push(w);
        } else {
            // (gu − u)² = 0 forces (gu + u)² = 4u² ≠ 0; then r_u r_{gu+u} sends gu to u
            let s: Vec<BigRational> = gu.iter().zip(&u).map(|(a, b)| a + b).collect();
            reflect_columns(&g, &mut cur, &s);
            reflect_columns(&g, &mut cur, &u);
            out.push(s);
            out.push(u);
        }
    }
    debug_assert_eq!(cur, RatMatrix::identity(n));
    out
}

/// Spinor norm: the product over a reflection factorization of
/// [`NEGATIVE_REFLECTION_SPIN`] for negative vectors and its opposite for positive ones.
pub fn spinor_norm(f: &Isometry) -> i8 {
    let g = f.lattice.gram().to_rat();
    reflection_factorization(f)
        .iter()
        .map(|w| {
            if rat_inner(&g, w, w).is_negative() {
                NEGATIVE_REFLECTION_SPIN
            } else {
                -NEGATIVE_REFLECTION_SPIN
            }
        })
        .product()
}

/// Extends an isometry of `𝐋` acting as `±id` on `A_𝐋` to `𝚲`, fixing `c, d` (case `id`) or
/// swapping them (case `−id`). The result is in the basis of [`lambda_embedding`].
pub fn extend_to_lambda(f: &Isometry) -> Result<Isometry> {
    let og10 = make_named("OG10", &[])?;
    if f.lattice.gram() != og10.gram() {
        return Err(Error::Invalid(
            "extension to 𝚲 needs an isometry of the OG10 lattice".into(),
        ));
    }
    let sigma = match discriminant_action(f)?.kind {
        ActionKind::Identity => IntMatrix::identity(2),
        ActionKind::MinusIdentity => IntMatrix::from_i64(&[[0, 1], [1, 0]]),
        ActionKind::Other => return Err(Error::NontrivialDiscAction),
    };
    let emb = lambda_embedding();
    let phi = IntMatrix::block_diag(&[&f.matrix, &sigma]).to_rat();
    // columns of B are the 𝚲 basis vectors in 𝐋 ⊕ A₂ coordinates
    let b = emb.basis.transpose();
    let binv = b.inverse().expect("basis");
    let m = (&(&binv * &phi) * &b)
        .to_int()
        .ok_or(Error::NontrivialDiscAction)?;
    Isometry::new(emb.lambda, m)
}

/// Length and elementarity of the `p`-part of `A_L`.
fn p_part(l: &Lattice, p: u64) -> (usize, bool) {
    if l.rank() == 0 {
        return (0, true);
    }
    let p = BigInt::from(p);
    let mut len = 0;
    let mut elementary = true;
    for d in smith_normal_form(l.gram()).diagonal() {
        let d = d.abs();
        if (&d % &p).is_zero() {
            len += 1;
            if (&d / &p % &p).is_zero() {
                elementary = false;
            }
        }
    }
    (len, elementary)
}

/// Outcome of the necessary conditions for a non-symplectic prime-order action.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub glue_a: Option<usize>,
    pub failures: Vec<String>,
}

/// Necessary conditions on `(invariant, coinvariant)` for a prime-order non-symplectic action on
/// a lattice of signature `(3, n)` with the given discriminant group orders: signatures `(1, ·)`
/// and `(2, ·)`, `p ≤ 23`, `(p − 1) | rk`, elementary `p`-parts, and glue `(ℤ/p)^a` with
/// `a ≤ rk/(p − 1)` determined by `|A_inv|·|A_coinv| = |A_L|·p^{2a}`.
pub fn nonsymplectic_feasible_abstract(
    invariant: &Lattice,
    coinvariant: &Lattice,
    ambient: &Lattice,
    p: u64,
) -> FeasibilityReport {
    let mut failures = Vec::new();
    if !is_prime(p) {
        failures.push(format!("{p} is not prime"));
    } else if p > 23 {
        failures.push(format!("p = {p} > 23"));
    }
    let rk = coinvariant.rank();
    if invariant.rank() + rk != ambient.rank() {
        failures.push(format!(
            "ranks {} + {} ≠ {}",
            invariant.rank(),
            rk,
            ambient.rank()
        ));
    }
    let sc = if rk == 0 {
        (0, 0)
    } else {
        coinvariant.signature()
    };
    if sc.0 != 2 {
        failures.push(format!("coinvariant signature {sc:?} is not (2, rk − 2)"));
    }
    let si = if invariant.rank() == 0 {
        (0, 0)
    } else {
        invariant.signature()
    };
    if si.0 != 1 {
        failures.push(format!("invariant signature {si:?} is not (1, rk − 1)"));
    }
    if p > 1 && rk % (p as usize - 1) != 0 {
        failures.push(format!("p − 1 = {} does not divide rk = {rk}", p - 1));
    }
    let (li, ei) = p_part(invariant, p);
    let (lc, ec) = p_part(coinvariant, p);
    let (la, _) = p_part(ambient, p);
    if !ei || !ec {
        failures.push("p-parts of the discriminant groups are not elementary".into());
    }
    if li.abs_diff(lc) > la {
        failures.push(format!("p-lengths {li} and {lc} differ by more than {la}"));
    }
    let det = |l: &Lattice| {
        if l.rank() == 0 {
            BigInt::one()
        } else {
            l.det().abs()
        }
    };
    let (num, rem) = (det(invariant) * det(coinvariant)).div_rem(&det(ambient));
    let mut glue_a = None;
    if !rem.is_zero() {
        failures.push("determinants are incompatible with a primitive pair".into());
    } else {
        let mut a = 0usize;
        let mut x = num;
        let p2 = BigInt::from(p * p);
        while (&x % &p2).is_zero() && !x.is_one() {
            x /= &p2;
            a += 1;
        }
        if !x.is_one() {
            failures.push("glue order is not an even power of p".into());
        } else {
            if p > 1 && a * (p as usize - 1) > rk {
                failures.push(format!("glue length a = {a} exceeds rk/(p − 1)"));
            }
            glue_a = Some(a);
        }
    }
    FeasibilityReport {
        feasible: failures.is_empty(),
        glue_a,
        failures,
    }
}

/// [`nonsymplectic_feasible_abstract`] for a pair coming from an actual isometry, additionally
/// checking the glue group of the embedding.
pub fn nonsymplectic_feasible(pair: &InvariantPair, p: u64) -> Result<FeasibilityReport> {
    let ambient = pair.invariant.ambient.clone();
    let inv = if pair.invariant.rank() == 0 {
        Lattice::zero()
    } else {
        pair.invariant.lattice()?
    };
    let coinv = if pair.coinvariant.rank() == 0 {
        Lattice::zero()
    } else {
        pair.coinvariant.lattice()?
    };
    let mut r = nonsymplectic_feasible_abstract(&inv, &coinv, &ambient, p);
    let pb = BigInt::from(p);
    if !pair.glue.orders.iter().all(|d| *d == pb) {
        r.failures.push("glue group is not p-elementary".into());
    }
    if r.glue_a.is_some_and(|a| a != pair.glue_a) {
        r.failures.push(format!(
            "glue length {} differs from the determinant count",
            pair.glue_a
        ));
    }
    r.feasible = r.failures.is_empty();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int_vec;
    use crate::lattice::{direct_sum, parse_lattice};
    use proptest::prelude::*;

    fn lat(e: &str) -> Lattice {
        parse_lattice(e).unwrap()
    }

    fn rot3() -> Isometry {
        Isometry::new(lat("A2"), IntMatrix::from_i64(&[[0, -1], [1, -1]])).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(Isometry::identity(lat("A2")).order(), Some(1));
        assert_eq!(Isometry::minus_identity(lat("A2")).order(), Some(2));
        assert_eq!(rot3().order(), Some(3));
        assert_eq!(Isometry::coxeter(lat("A4")).unwrap().order(), Some(5));
        assert_eq!(Isometry::coxeter(lat("E8")).unwrap().order(), Some(30));
        let shear = Isometry::new(lat("U"), IntMatrix::from_i64(&[[1, 0], [0, 1]])).unwrap();
        assert_eq!(shear.order_with_cap(1), Some(1));
        assert_eq!(
            Isometry::new(lat("A2"), IntMatrix::from_i64(&[[1, 1], [0, 1]])),
            Err(Error::NotAnIsometry)
        );
    }

    #[test]
    fn invariant_coinvariant_examples() {
        let p = invariant_coinvariant(&Isometry::minus_identity(lat("U"))).unwrap();
        assert_eq!(
            (
                p.invariant.rank(),
                p.coinvariant.lattice().unwrap().gram().clone(),
                p.glue_a
            ),
            (0, lat("U").gram().clone(), 0)
        );
        let p = invariant_coinvariant(&rot3()).unwrap();
        assert_eq!((p.invariant.rank(), p.coinvariant.rank()), (0, 2));
        assert_eq!(p.coinvariant.rank() % 2, 0);
        let f = Isometry::block_sum(&[Isometry::identity(lat("U")), rot3()]).unwrap();
        let p = invariant_coinvariant(&f).unwrap();
        assert_eq!(p.invariant.lattice().unwrap(), lat("U"));
        assert_eq!(p.coinvariant.lattice().unwrap(), lat("A2"));
        assert_eq!(p.glue_a, 0);
    }

    #[test]
    fn infinite_order_is_reported() {
        // (3, 2) solves x² − 2y² = 1
        let f = Isometry::new(lat("[1] + [-2]"), IntMatrix::from_i64(&[[3, 4], [2, 3]])).unwrap();
        assert_eq!(f.order(), None);
        assert_eq!(
            invariant_coinvariant(&f).unwrap_err(),
            Error::InfiniteOrder(ORDER_CAP)
        );
    }

    #[test]
    fn discriminant_actions() {
        let a = discriminant_action(&Isometry::minus_identity(lat("E8"))).unwrap();
        assert_eq!(a.kind, ActionKind::Identity);
        let og = lat("OG10");
        assert_eq!(
            discriminant_action(&Isometry::minus_identity(og.clone()))
                .unwrap()
                .kind,
            ActionKind::MinusIdentity
        );
        // swap the two E8(−1) blocks (coordinates 6..14 and 14..22)
        let mut m = IntMatrix::zeros(24, 24);
        for i in 0..24 {
            let j = if (6..14).contains(&i) {
                i + 8
            } else if (14..22).contains(&i) {
                i - 8
            } else {
                i
            };
            m[(j, i)] = BigInt::one();
        }
        let swap = Isometry::new(og, m).unwrap();
        assert_eq!(
            discriminant_action(&swap).unwrap().kind,
            ActionKind::Identity
        );
        let r = discriminant_action(&rot3()).unwrap();
        assert_eq!(r.kind, ActionKind::Identity);
    }

    #[test]
    fn spinor_norm_examples() {
        let og = lat("OG10");
        // a vector of square −2 in the first E8(−1) block
        let mut v = vec![BigInt::zero(); 24];
        v[6] = BigInt::one();
        assert_eq!(og.norm(&v).unwrap(), BigInt::from(-2));
        assert_eq!(
            spinor_norm(&Isometry::reflection(og.clone(), &v).unwrap()),
            1
        );
        assert_eq!(spinor_norm(&Isometry::identity(og)), 1);
        let u = lat("U");
        assert_eq!(
            spinor_norm(&Isometry::reflection(u, &int_vec(&[1, 1])).unwrap()),
            -1
        );
        assert_eq!(NEGATIVE_REFLECTION_SPIN, 1);
    }

    /// Independent oracle: the real spinor norm with this sign convention is the orientation
    /// character on maximal positive subspaces, `sign det(π_P ∘ f|_P)`.
    fn orientation_oracle(f: &Isometry) -> i8 {
        let g = f.lattice.gram().to_rat();
        let pos: Vec<Vec<BigRational>> = orthogonal_basis(&g)
            .into_iter()
            .filter(|u| rat_inner(&g, u, u).is_positive())
            .collect();
        let k = pos.len();
        if k == 0 {
            return 1;
        }
        let fm = f.matrix.to_rat();
        let mut m = RatMatrix::zeros(k, k);
        for (j, u) in pos.iter().enumerate() {
            let fu = fm.mul_vec(u);
            for (i, w) in pos.iter().enumerate() {
                m[(i, j)] = rat_inner(&g, &fu, w) / rat_inner(&g, w, w);
            }
        }
        let den = m.denominator_lcm();
        let mut mi = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                mi[(i, j)] = (&m[(i, j)] * BigRational::from_integer(den.clone())).to_integer();
            }
        }
        if mi.det().is_positive() {
            1
        } else {
            -1
        }
    }

    fn sample_isometries() -> Vec<Isometry> {
        let l = lat("U + A2 + A2(-1)");
        let mut gens = Vec::new();
        for i in 0..6 {
            if let Ok(r) = Isometry::reflection(l.clone(), &l.basis_vector(i)) {
                gens.push(r);
            }
        }
        gens.push(Isometry::reflection(l.clone(), &int_vec(&[1, -1, 0, 0, 0, 0])).unwrap());
        gens.push(Isometry::reflection(l.clone(), &int_vec(&[1, 1, 0, 0, 0, 0])).unwrap());
        gens.push(
            Isometry::block_sum(&[
                Isometry::identity(lat("U")),
                rot3(),
                Isometry::identity(lat("A2(-1)")),
            ])
            .unwrap(),
        );
        gens.push(Isometry::minus_identity(l));
        gens
    }

    #[test]
    fn spinor_norm_matches_orientation_oracle() {
        let gens = sample_isometries();
        for a in &gens {
            for b in &gens {
                let f = a.compose(b).unwrap();
                assert_eq!(spinor_norm(&f), orientation_oracle(&f));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(15))]
        #[test]
        fn spinor_norm_is_multiplicative(word_a in proptest::collection::vec(0usize..10, 1..5), word_b in proptest::collection::vec(0usize..10, 1..5)) {
            let gens = sample_isometries();
            let build = |w: &[usize]| w.iter().fold(Isometry::identity(gens[0].lattice.clone()), |acc, &i| acc.compose(&gens[i % gens.len()]).unwrap());
            let (f, g) = (build(&word_a), build(&word_b));
            prop_assert_eq!(spinor_norm(&f.compose(&g).unwrap()), spinor_norm(&f) * spinor_norm(&g));
        }
    }

    #[test]
    fn disc_action_has_the_order_of_the_isometry() {
        let og = lat("OG10");
        let mut blocks = vec![Isometry::identity(lat("U^3 + E8(-1)^2"))];
        blocks
            .push(Isometry::new(lat("A2(-1)"), IntMatrix::from_i64(&[[0, -1], [1, -1]])).unwrap());
        let f = Isometry::block_sum(&blocks).unwrap();
        assert_eq!(f.lattice().gram(), og.gram());
        let a = discriminant_action(&f).unwrap();
        let mut acc = a.clone();
        for _ in 1..f.order().unwrap() {
            acc = acc.compose(&a);
        }
        assert_eq!(acc.kind, ActionKind::Identity);
        let m = discriminant_action(&Isometry::minus_identity(og)).unwrap();
        assert_eq!(m.compose(&m).kind, ActionKind::Identity);
    }

    #[test]
    fn extension_to_lambda() {
        let og = lat("OG10");
        let emb = lambda_embedding();
        let id = extend_to_lambda(&Isometry::identity(og.clone())).unwrap();
        assert!(id.is_identity());
        let minus = extend_to_lambda(&Isometry::minus_identity(og.clone())).unwrap();
        assert_eq!(minus.lattice().gram(), emb.lambda.gram());
        let (c, d) = (emb.a2_rows.row_vec(0), emb.a2_rows.row_vec(1));
        assert_eq!(minus.apply(&c), d);
        assert_eq!(minus.apply(&d), c);
        for i in 0..24 {
            let e = emb.l_rows.row_vec(i);
            assert_eq!(minus.apply(&e), e.iter().map(|x| -x).collect::<Vec<_>>());
        }
        let p = invariant_coinvariant(&minus).unwrap();
        assert_eq!(p.invariant.rank(), 1);
        let cd: Vec<BigInt> = c.iter().zip(&d).map(|(a, b)| a + b).collect();
        assert_eq!(
            p.invariant
                .basis
                .row_vec(0)
                .iter()
                .map(|x| x.abs())
                .collect::<Vec<_>>(),
            cd.iter().map(|x| x.abs()).collect::<Vec<_>>()
        );
        assert_eq!(p.invariant.gram(), IntMatrix::from_i64(&[[2]]));
    }

    #[test]
    fn order_three_extension_with_trivial_action() {
        // cyclic permutation of the three U summands
        let og = lat("OG10");
        let mut m = IntMatrix::zeros(24, 24);
        for i in 0..24 {
            let j = if i < 6 { (i + 2) % 6 } else { i };
            m[(j, i)] = BigInt::one();
        }
        let f = Isometry::new(og.clone(), m).unwrap();
        assert_eq!(discriminant_action(&f).unwrap().kind, ActionKind::Identity);
        let ext = extend_to_lambda(&f).unwrap();
        let emb = lambda_embedding();
        for r in 0..2 {
            let v = emb.a2_rows.row_vec(r);
            assert_eq!(ext.apply(&v), v);
        }
        let pl = invariant_coinvariant(&f)
            .unwrap()
            .coinvariant
            .lattice()
            .unwrap();
        let pe = invariant_coinvariant(&ext)
            .unwrap()
            .coinvariant
            .lattice()
            .unwrap();
        assert_eq!(pl.invariants().signature, pe.invariants().signature);
        assert_eq!(pl.det(), pe.det());
    }

    #[test]
    fn non_scalar_disc_action() {
        let f = Isometry::block_sum(&[
            Isometry::identity(lat("A2")),
            Isometry::minus_identity(lat("A2")),
        ])
        .unwrap();
        assert_eq!(discriminant_action(&f).unwrap().kind, ActionKind::Other);
        assert!(matches!(extend_to_lambda(&f), Err(Error::Invalid(_))));
    }

    #[test]
    fn feasibility() {
        let og = lat("OG10");
        let inv = lat("U + E6(-2)");
        let coinv = lat("U^2 + D4(-1)^3");
        let r = nonsymplectic_feasible_abstract(&inv, &coinv, &og, 2);
        assert!(r.feasible, "{:?}", r.failures);
        assert_eq!(inv.signature(), (1, 7));
        assert_eq!(r.glue_a, Some(6));
        let r = nonsymplectic_feasible_abstract(&og, &Lattice::zero(), &og, 29);
        assert!(!r.feasible);
        assert!(r.failures.iter().any(|f| f.contains("> 23")));
        let r = nonsymplectic_feasible_abstract(
            &lat("U^3 + E8(-1)^2 + A2(-1)"),
            &Lattice::zero(),
            &og,
            3,
        );
        assert!(!r.feasible);
        let pos = nonsymplectic_feasible_abstract(
            &lat("U(3) + E6(-1) + A2(-1)^3 + U"),
            &lat("A2^4"),
            &og,
            3,
        );
        assert!(pos
            .failures
            .iter()
            .any(|f| f.contains("coinvariant signature")));
    }

    /// Block isometries of prime order on direct sums.
    fn prime_order_suite() -> Vec<(Isometry, u64)> {
        let mut out = Vec::new();
        let cox = |e: &str| Isometry::coxeter(lat(e)).unwrap();
        let shift = |e: &str, k| Isometry::cyclic_shift(&lat(e), k).unwrap();
        let id = |e: &str| Isometry::identity(lat(e));
        let neg = |e: &str| Isometry::minus_identity(lat(e));
        let cases: Vec<(Vec<Isometry>, u64)> = vec![
            (vec![neg("U")], 2),
            (vec![neg("A2"), id("U")], 2),
            (vec![shift("U", 2)], 2),
            (vec![shift("A1", 2), id("A1")], 2),
            (vec![shift("E8(-1)", 2), id("U")], 2),
            (vec![shift("A2", 2), neg("U")], 2),
            (vec![neg("D4"), shift("U(2)", 2)], 2),
            (vec![rot3(), id("U")], 3),
            (vec![rot3(), rot3()], 3),
            (vec![shift("U", 3)], 3),
            (vec![shift("A1", 3), rot3()], 3),
            (vec![shift("A2(-1)", 3), id("A2")], 3),
            (vec![cox("E6").pow(4), id("U")], 3),
            (vec![shift("U(3)", 3)], 3),
            (vec![cox("A4")], 5),
            (vec![cox("A4"), id("U")], 5),
            (vec![shift("U", 5)], 5),
            (vec![shift("A1", 5), cox("A4(-1)")], 5),
            (vec![cox("A6")], 7),
            (vec![shift("U", 7), id("A2")], 7),
            (vec![cox("A10")], 11),
            (vec![shift("A1", 3), shift("A1", 3)], 3),
        ];
        for (blocks, p) in cases {
            out.push((Isometry::block_sum(&blocks).unwrap(), p));
        }
        out
    }

    #[test]
    fn glue_index_bound_on_prime_order_isometries() {
        let suite = prime_order_suite();
        assert!(suite.len() >= 20);
        for (f, p) in suite {
            assert_eq!(f.order(), Some(p as u32));
            let pair = invariant_coinvariant(&f).unwrap();
            let pb = BigInt::from(p);
            assert!(pair.glue.orders.iter().all(|d| *d == pb), "{:?}", pair.glue);
            assert_eq!(pair.coinvariant.rank() % (p as usize - 1), 0);
            assert!(pair.glue_a * (p as usize - 1) <= pair.coinvariant.rank());
            assert_eq!(pair.glue.bound_ok, Some(true));
            let s = direct_sum(&[
                pair.invariant.lattice().unwrap_or(Lattice::zero()),
                pair.coinvariant.lattice().unwrap(),
            ])
            .unwrap();
            assert_eq!(
                s.det().abs(),
                f.lattice().det().abs() * num_traits::pow(pb.clone(), 2 * pair.glue_a)
            );
        }
    }

    #[test]
    fn isometry_json_round_trip() {
        let f = rot3();
        let g = Isometry::from_json(&f.to_json()).unwrap();
        assert_eq!(f.matrix(), g.matrix());
        let bad = json!({"lattice": "A2", "matrix": [[1, 1], [0, 1]]});
        assert_eq!(Isometry::from_json(&bad), Err(Error::NotAnIsometry));
    }
}
