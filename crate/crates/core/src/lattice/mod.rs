//! The lattice type, named constructors and first-order invariants.

mod expr;
mod json;
mod named;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::discform::{delta_invariant, discriminant_form};
use crate::error::{Error, Result};
use crate::exactalg::{gcd_all, rational_signature, smith_normal_form, IntMatrix, RatMatrix};

pub use expr::parse_lattice;
pub use json::{lattice_from_json, lattice_to_json, matrix_from_json, matrix_to_json};
pub use named::{make_named, NAMED_LATTICES};

/// Coordinates of a lattice vector in the lattice basis.
pub type Vector = Vec<BigInt>;

/// A nondegenerate integral lattice given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    gram: IntMatrix,
    label: Option<String>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}
impl Eq for Lattice {}

impl Lattice {
    /// Validates symmetry and nondegeneracy. A rank-0 lattice is allowed.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn zero() -> Self {
        Lattice {
            gram: IntMatrix::zeros(0, 0),
            label: Some("0".into()),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("rank-{} lattice", self.rank()))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn signature(&self) -> (usize, usize) {
        rational_signature(&self.gram).expect("lattice gram is nondegenerate")
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().1 == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().0 == 0
    }

    pub fn is_definite(&self) -> bool {
        let (p, m) = self.signature();
        p == 0 || m == 0
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `vᵀ · gram · w`.
    pub fn inner(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigInt> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(self.gram.bilinear(v, w))
    }

    pub fn norm(&self, v: &[BigInt]) -> Result<BigInt> {
        self.inner(v, v)
    }

    /// Positive generator of the ideal `(v, L) ⊆ ℤ`.
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        self.check_dim(v)?;
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(gcd_all(&self.gram.mul_vec(v)))
    }

    /// Basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        v
    }

    pub fn rescale(&self, k: i64) -> Result<Lattice> {
        self.rescale_big(&BigInt::from(k))
    }

    pub fn rescale_big(&self, k: &BigInt) -> Result<Lattice> {
        if k.is_zero() {
            return Err(Error::ZeroScale);
        }
        let label = self.label.as_ref().map(|l| format!("{l}({k})"));
        Ok(Lattice {
            gram: self.gram.scale(k),
            label,
        })
    }

    /// Negated form `L(−1)`.
    pub fn neg(&self) -> Lattice {
        self.rescale(-1).expect("nonzero scale")
    }

    /// Gram matrix of the sublattice spanned by the rows of `basis`.
    pub fn restricted_gram(&self, basis: &IntMatrix) -> IntMatrix {
        self.gram.congruence(basis)
    }

    /// Inverse Gram matrix: coordinates of the dual basis.
    pub fn dual_gram(&self) -> RatMatrix {
        self.gram.to_rat().inverse().expect("nondegenerate")
    }

    pub fn invariants(&self) -> LatticeInvariants {
        let snf = smith_normal_form(&self.gram);
        let orders: Vec<BigInt> = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        let p_elementary = p_elementary_of(&orders);
        let delta = if self.is_even() && p_elementary.map(|(p, _)| p) == Some(2) {
            discriminant_form(self)
                .ok()
                .and_then(|(f, _)| delta_invariant(&f).ok())
        } else {
            None
        };
        LatticeInvariants {
            rank: self.rank(),
            signature: self.signature(),
            determinant: self.det(),
            even: self.is_even(),
            disc_group_orders: orders,
            p_elementary,
            delta,
        }
    }

    /// Length `a` if the discriminant group is `(ℤ/p)^a` (a = 0 for unimodular lattices).
    pub fn p_elementary_length(&self, p: u64) -> Option<usize> {
        let orders = self.invariants().disc_group_orders;
        orders
            .iter()
            .all(|d| *d == BigInt::from(p))
            .then_some(orders.len())
    }

    /// Number of generators of the discriminant group.
    pub fn length(&self) -> usize {
        self.invariants().disc_group_orders.len()
    }
}

fn p_elementary_of(orders: &[BigInt]) -> Option<(u64, usize)> {
    let first = orders.first()?.to_u64()?;
    if !is_prime(first) || orders.iter().any(|d| d != &BigInt::from(first)) {
        return None;
    }
    Some((first, orders.len()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Block-diagonal sum of a nonempty list.
pub fn direct_sum(ls: &[Lattice]) -> Result<Lattice> {
    if ls.is_empty() {
        return Err(Error::EmptyList);
    }
    let blocks: Vec<&IntMatrix> = ls.iter().map(|l| &l.gram).collect();
    let labels: Option<Vec<&str>> = ls.iter().map(|l| l.label()).collect();
    Ok(Lattice {
        gram: IntMatrix::block_diag(&blocks),
        label: labels.map(|v| v.join(" + ")),
    })
}

/// First-order invariants of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    #[serde(serialize_with = "ser_big")]
    pub determinant: BigInt,
    pub even: bool,
    #[serde(serialize_with = "ser_big_vec")]
    pub disc_group_orders: Vec<BigInt>,
    pub p_elementary: Option<(u64, usize)>,
    pub delta: Option<u8>,
}

pub(crate) fn ser_big<S: serde::Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) fn ser_big_vec<S: serde::Serializer>(
    xs: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl fmt::Display for LatticeInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = if self.disc_group_orders.is_empty() {
            "0".to_string()
        } else {
            self.disc_group_orders
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(
            f,
            "rank {}, sig ({},{}), det {}, {}, A = {}",
            self.rank,
            self.signature.0,
            self.signature.1,
            self.determinant,
            if self.even { "even" } else { "odd" },
            group
        )?;
        if let Some((p, a)) = self.p_elementary {
            write!(f, ", {p}-elementary a = {a}")?;
        }
        if let Some(d) = self.delta {
            write!(f, ", delta = {d}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            writeln!(f, "{l}")?;
        }
        write!(f, "{}", self.gram)
    }
}
