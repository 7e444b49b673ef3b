//! Sublattices, overlattices and gluing of discriminant forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::discform::{
    all_subgroups, discriminant_form, forms_isomorphic_with_limit, isometric_embeddings,
    DiscElement, FiniteQuadraticForm, DEFAULT_SEARCH_LIMIT,
};
use crate::error::{Error, Result};
use crate::exactalg::{
    hermite_normal_form, integer_kernel, rank, smith_normal_form, IntMatrix, RatMatrix,
};
use crate::lattice::{direct_sum, make_named, Lattice};

/// A sublattice, given by the coordinates of its basis vectors (rows) in the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub ambient: Lattice,
    pub basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.rows() > 0 && basis.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: ambient.rank(),
                got: basis.cols(),
            });
        }
        let basis = if basis.rows() == 0 {
            IntMatrix::zeros(0, ambient.rank())
        } else {
            basis
        };
        if rank(&basis) != basis.rows() {
            return Err(Error::Invalid(
                "sublattice basis rows are linearly dependent".into(),
            ));
        }
        Ok(Sublattice { ambient, basis })
    }

    /// Span of the given vectors; dependent generators are allowed.
    pub fn spanned_by(ambient: Lattice, gens: &IntMatrix) -> Result<Self> {
        let (h, _) = hermite_normal_form(gens);
        let r = crate::exactalg::echelon_rank(&h);
        Self::new(ambient, h.select_rows(&(0..r).collect::<Vec<_>>()))
    }

    pub fn whole(ambient: Lattice) -> Self {
        let n = ambient.rank();
        Sublattice {
            ambient,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn gram(&self) -> IntMatrix {
        self.ambient.restricted_gram(&self.basis)
    }

    /// The sublattice as an abstract lattice; fails if the restricted form is degenerate.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram()).map_err(|e| match e {
            Error::DegenerateForm => Error::DegenerateComplement,
            e => e,
        })
    }

    /// Torsion-free cokernel.
    pub fn is_primitive(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        smith_normal_form(&self.basis)
            .diagonal()
            .iter()
            .all(One::is_one)
    }

    /// Index of the sublattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        if self.rank() == 0 {
            return BigInt::one();
        }
        smith_normal_form(&self.basis).diagonal().iter().product()
    }
}

/// Smallest primitive sublattice containing `s`, and its Gram matrix.
pub fn saturate(s: &Sublattice) -> (Sublattice, IntMatrix) {
    if s.is_primitive() {
        return (s.clone(), s.gram());
    }
    let n = s.ambient.rank();
    // vectors Euclidean-orthogonal to the span, then everything orthogonal to those
    let k = integer_kernel(&s.basis.transpose());
    let sat = if k.rows() == 0 {
        IntMatrix::identity(n)
    } else {
        integer_kernel(&k.transpose())
    };
    let out = Sublattice::spanned_by(s.ambient.clone(), &sat).expect("independent kernel basis");
    let g = out.gram();
    (out, g)
}

/// `{x : (x, s) = 0}`; primitive by construction.
pub fn orthogonal_complement(s: &Sublattice) -> Result<Sublattice> {
    let n = s.ambient.rank();
    if s.rank() == 0 {
        return Ok(Sublattice::whole(s.ambient.clone()));
    }
    let m = s.ambient.gram() * &s.basis.transpose();
    let k = integer_kernel(&m);
    let c = Sublattice::new(
        s.ambient.clone(),
        if k.rows() == 0 {
            IntMatrix::zeros(0, n)
        } else {
            k
        },
    )?;
    if c.rank() > 0 && c.gram().det().is_zero() {
        return Err(Error::DegenerateComplement);
    }
    Ok(c)
}

/// Lattice spanned by `ℤⁿ` and extra rational vectors, as a rational basis matrix (rows).
fn rational_span(n: usize, extra: &[Vec<BigRational>]) -> RatMatrix {
    let den = extra
        .iter()
        .flat_map(|v| v.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { den.clone() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for v in extra {
        rows.push(
            v.iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(rows).unwrap());
    let mut p = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] = BigRational::new(h[(i, j)].clone(), den.clone());
        }
    }
    p
}

/// Gram matrix in a rational basis, required to be integral.
fn integral_gram(g: &IntMatrix, p: &RatMatrix) -> Option<IntMatrix> {
    (&(p * &g.to_rat()) * &p.transpose()).to_int()
}

/// An overlattice together with its basis in the coordinates of the original lattice.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    /// Rows: basis vectors of the overlattice in the rational coordinates of the original.
    pub basis: RatMatrix,
}

impl Overlattice {
    /// Index `[M : L]`.
    pub fn index(&self) -> BigInt {
        // the basis is H / den with H integral, so the index is denⁿ / |det H|
        let n = self.basis.rows();
        let den = self.basis.denominator_lcm();
        let mut h = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] =
                    (&self.basis[(i, j)] * BigRational::from_integer(den.clone())).to_integer();
            }
        }
        num_traits::pow(den, n) / num_traits::Signed::abs(&h.det())
    }
}

/// Overlattice of `l` by rational vectors of `L^∨` (coordinates in the basis of `l`).
pub fn overlattice_by_vectors(l: &Lattice, extra: &[Vec<BigRational>]) -> Result<Overlattice> {
    let basis = rational_span(l.rank(), extra);
    let gram = integral_gram(l.gram(), &basis).ok_or(Error::NotIsotropic)?;
    Ok(Overlattice {
        lattice: Lattice::new(gram)?,
        basis,
    })
}

/// Overlattice for the subgroup of `A_l` generated by `gens` (in the basis of `discriminant_form(l)`).
pub fn overlattice(l: &Lattice, gens: &[DiscElement]) -> Result<Overlattice> {
    let (f, lift) = discriminant_form(l)?;
    for (i, g) in gens.iter().enumerate() {
        if !f.is_isotropic_elem(g) || gens[..i].iter().any(|h| f.b_num(g, h) != 0) {
            return Err(Error::NotIsotropic);
        }
    }
    let extra: Vec<_> = gens.iter().map(|g| lift.lift(g)).collect();
    overlattice_by_vectors(l, &extra)
}

/// Gluing data: a subgroup of `A_left` and its images in `A_right`, with
/// `q_right(γx) = −q_left(x)` (or the bilinear analogue for odd lattices).
#[derive(Clone, Debug)]
pub struct GlueData {
    pub left: Lattice,
    pub right: Lattice,
    pub subgroup: Vec<DiscElement>,
    pub images: Vec<DiscElement>,
}

impl GlueData {
    pub fn new(
        left: Lattice,
        right: Lattice,
        subgroup: Vec<DiscElement>,
        images: Vec<DiscElement>,
    ) -> Result<Self> {
        if subgroup.len() != images.len() {
            return Err(Error::DimensionMismatch {
                expected: subgroup.len(),
                got: images.len(),
            });
        }
        let g = GlueData {
            left,
            right,
            subgroup,
            images,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let (fl, _) = discriminant_form(&self.left)?;
        let (fr, _) = discriminant_form(&self.right)?;
        let graph = fl.direct_sum(&fr);
        let els: Vec<DiscElement> = self
            .subgroup
            .iter()
            .zip(&self.images)
            .map(|(x, y)| x.iter().chain(y).copied().collect())
            .collect();
        for (i, e) in els.iter().enumerate() {
            if !graph.is_isotropic_elem(e) || els[..i].iter().any(|h| graph.b_num(e, h) != 0) {
                return Err(Error::NotIsotropicGraph);
            }
        }
        if fl.subgroup_order(&self.subgroup) != fr.subgroup_order(&self.images)
            || graph.subgroup_order(&els) != fl.subgroup_order(&self.subgroup)
        {
            return Err(Error::Invalid("gluing map is not injective".into()));
        }
        Ok(())
    }

    /// Searches for an anti-isometry of the whole of `A_left` into `A_right`.
    pub fn full(left: Lattice, right: Lattice, limit: u64) -> Result<Option<GlueData>> {
        let (fl, _) = discriminant_form(&left)?;
        let (fr, _) = discriminant_form(&right)?;
        let basis: Vec<(DiscElement, u64)> = (0..fl.rank())
            .map(|i| (fl.generator(i), fl.generator_orders()[i]))
            .collect();
        let maps = isometric_embeddings(&fl, &basis, &fr.negated(), limit, 1)?;
        Ok(maps.into_iter().next().map(|images| GlueData {
            left,
            right,
            subgroup: basis.into_iter().map(|(g, _)| g).collect(),
            images,
        }))
    }
}

/// Overlattice of `left ⊕ right` along the graph of the gluing map.
pub fn primitive_extension(g: &GlueData) -> Result<Overlattice> {
    g.check()?;
    let (_, ll) = discriminant_form(&g.left)?;
    let (_, lr) = discriminant_form(&g.right)?;
    let sum = direct_sum(&[g.left.clone(), g.right.clone()])?;
    let extra: Vec<Vec<BigRational>> = g
        .subgroup
        .iter()
        .zip(&g.images)
        .map(|(x, y)| {
            let mut v = ll.lift(x);
            v.extend(lr.lift(y));
            v
        })
        .collect();
    overlattice_by_vectors(&sum, &extra).map_err(|e| match e {
        Error::NotIsotropic => Error::NotIsotropicGraph,
        e => e,
    })
}

/// A gluing choice for embedding a lattice `S` into a host `M`: independent generators of a
/// subgroup `H ⊂ A_S` and their images under an isometric embedding `γ : H → A_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueChoice {
    pub subgroup: Vec<(DiscElement, u64)>,
    pub images: Vec<DiscElement>,
}

impl GlueChoice {
    pub fn trivial() -> Self {
        GlueChoice {
            subgroup: vec![],
            images: vec![],
        }
    }

    pub fn order(&self) -> u128 {
        self.subgroup.iter().map(|(_, d)| *d as u128).product()
    }
}

fn sub_signature(host: (usize, usize), sub: (usize, usize)) -> Result<(usize, usize)> {
    if sub.0 > host.0 || sub.1 > host.1 {
        return Err(Error::InfeasibleSignature { host, sub });
    }
    Ok((host.0 - sub.0, host.1 - sub.1))
}

/// Genus of the orthogonal complement of `sub` in a host with the given discriminant form and
/// signature, for one gluing choice: `(sig_host − sig_sub, Γ^⊥/Γ)` with `Γ` the graph of `γ`
/// inside `A_sub(−1) ⊕ A_host`.
pub fn complement_genus(
    host_disc: &FiniteQuadraticForm,
    host_sig: (usize, usize),
    sub: &Lattice,
    choice: &GlueChoice,
) -> Result<((usize, usize), FiniteQuadraticForm)> {
    let sig = sub_signature(
        host_sig,
        if sub.rank() == 0 {
            (0, 0)
        } else {
            sub.signature()
        },
    )?;
    let fs = if sub.rank() == 0 {
        FiniteQuadraticForm::trivial()
    } else {
        discriminant_form(sub)?.0
    };
    let w = fs.negated().direct_sum(host_disc);
    let gamma: Vec<DiscElement> = choice
        .subgroup
        .iter()
        .zip(&choice.images)
        .map(|((x, _), y)| x.iter().chain(y).copied().collect())
        .collect();
    let (form, _) = w.subquotient(&gamma).map_err(|e| match e {
        Error::NotIsotropic => Error::NotIsotropicGraph,
        e => e,
    })?;
    Ok((sig, form.to_invariant_factors()))
}

/// All gluing choices of `sub` into a host form: every subgroup of `A_sub` with every
/// q-preserving injection into `A_host`.
pub fn glue_choices(
    host_disc: &FiniteQuadraticForm,
    sub: &Lattice,
    limit: u64,
) -> Result<Vec<GlueChoice>> {
    if sub.rank() == 0 {
        return Ok(vec![GlueChoice::trivial()]);
    }
    let (fs, _) = discriminant_form(sub)?;
    let mut out = Vec::new();
    for h in all_subgroups(&fs, limit)? {
        for images in isometric_embeddings(&fs, &h.generators, host_disc, limit, usize::MAX)? {
            out.push(GlueChoice {
                subgroup: h.generators.clone(),
                images,
            });
        }
    }
    Ok(out)
}

/// Distinct complement genera over all gluing choices, keeping only those whose length does
/// not exceed the rank (a necessary condition for existence).
pub fn complement_genera(
    host_disc: &FiniteQuadraticForm,
    host_sig: (usize, usize),
    sub: &Lattice,
    limit: u64,
) -> Result<Vec<((usize, usize), FiniteQuadraticForm)>> {
    let mut out: Vec<((usize, usize), FiniteQuadraticForm)> = Vec::new();
    for choice in glue_choices(host_disc, sub, limit)? {
        let (sig, form) = complement_genus(host_disc, host_sig, sub, &choice)?;
        if form.rank() > sig.0 + sig.1 {
            continue;
        }
        let mut dup = false;
        for (s, f) in &out {
            if *s == sig && forms_isomorphic_with_limit(f, &form, limit.max(DEFAULT_SEARCH_LIMIT))?
            {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push((sig, form));
        }
    }
    Ok(out)
}

/// The quotient `L / (S₁ ⊕ S₂)` for mutually orthogonal sublattices of full total rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueGroup {
    pub orders: Vec<BigInt>,
    /// Number of invariant factors of the quotient.
    pub a: usize,
    /// With a prime tag: all orders equal `p` and `a ≤ rk(S₂)/(p − 1)`.
    pub bound_ok: Option<bool>,
}

pub fn glue_group(
    l: &Lattice,
    sub1: &Sublattice,
    sub2: &Sublattice,
    p: Option<u64>,
) -> Result<GlueGroup> {
    let n = l.rank();
    if sub1.rank() + sub2.rank() != n {
        return Err(Error::NotComplementary);
    }
    if sub1.rank() > 0
        && sub2.rank() > 0
        && !(&(&sub1.basis * l.gram()) * &sub2.basis.transpose()).is_zero()
    {
        return Err(Error::NotComplementary);
    }
    let stacked = sub1.basis.vstack(&sub2.basis);
    if stacked.det().is_zero() {
        return Err(Error::NotComplementary);
    }
    let orders: Vec<BigInt> = smith_normal_form(&stacked)
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    let a = orders.len();
    let bound_ok = p.map(|p| {
        orders.iter().all(|d| *d == BigInt::from(p)) && (a as u64) * (p - 1) <= sub2.rank() as u64
    });
    Ok(GlueGroup {
        orders,
        a,
        bound_ok,
    })
}

/// The fixed embedding `𝐋 ↪ 𝚲`: the overlattice of `𝐋 ⊕ A₂` generated by `(a−b+c−d)/3` and
/// `(a+2b+c+2d)/3`, where `a, b` span the `A₂(−1)` summand of `𝐋` and `c, d` the `A₂`.
#[derive(Clone, Debug)]
pub struct LambdaEmbedding {
    pub lambda: Lattice,
    /// Basis of `𝚲` (rows) in the rational coordinates of `𝐋 ⊕ A₂`.
    pub basis: RatMatrix,
    /// The 24 basis vectors of `𝐋`, in the basis of `𝚲`.
    pub l_rows: IntMatrix,
    /// `c` and `d`, in the basis of `𝚲`.
    pub a2_rows: IntMatrix,
}

pub fn lambda_embedding() -> LambdaEmbedding {
    let l = make_named("OG10", &[]).expect("builtin");
    let a2 = make_named("A_n", &[2]).expect("builtin");
    let sum = direct_sum(&[l, a2]).expect("nonempty");
    let third = |v: [i64; 4]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); 26];
        for (k, &c) in v.iter().enumerate() {
            out[22 + k] = BigRational::new(BigInt::from(c), BigInt::from(3));
        }
        out
    };
    let extra = vec![third([1, -1, 1, -1]), third([1, 2, 1, 2])];
    let ov = overlattice_by_vectors(&sum, &extra).expect("isotropic glue");
    let pinv = ov.basis.inverse().expect("basis");
    let rows_of = |idx: std::ops::Range<usize>| -> IntMatrix {
        let mut m = RatMatrix::zeros(idx.len(), 26);
        for (r, i) in idx.enumerate() {
            for j in 0..26 {
                m[(r, j)] = pinv[(i, j)].clone();
            }
        }
        m.to_int().expect("L ⊕ A₂ sits inside 𝚲")
    };
    LambdaEmbedding {
        lambda: ov.lattice.with_label("Lambda (glued)"),
        basis: ov.basis,
        l_rows: rows_of(0..24),
        a2_rows: rows_of(24..26),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::{forms_isomorphic, isotropic_subgroups, milgram_signature};
    use crate::exactalg::int_vec;
    use crate::lattice::parse_lattice;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn lat(e: &str) -> Lattice {
        parse_lattice(e).unwrap()
    }

    #[test]
    fn saturation_examples() {
        let u = lat("U");
        let s = Sublattice::new(u.clone(), IntMatrix::from_i64(&[[2, 0]])).unwrap();
        let (t, _) = saturate(&s);
        assert_eq!(t.basis, IntMatrix::from_i64(&[[1, 0]]));
        assert_eq!(s.saturation_index(), BigInt::from(2));
        let p = Sublattice::new(u, IntMatrix::from_i64(&[[1, 1]])).unwrap();
        assert_eq!(saturate(&p).0, p);
    }

    #[test]
    fn saturation_index_of_a_glue_pattern() {
        // (a − b) + 3w with w the last basis vector of the first U block of 𝐋
        let l = lat("OG10");
        let mut v = vec![BigInt::zero(); 24];
        v[22] = BigInt::one();
        v[23] = BigInt::from(-1);
        v[1] = BigInt::from(3);
        let mut w = vec![BigInt::zero(); 24];
        w[22] = BigInt::from(3);
        let s = Sublattice::new(l, IntMatrix::from_rows(vec![v, w]).unwrap()).unwrap();
        assert_eq!(s.saturation_index(), BigInt::from(3));
        assert!(saturate(&s).0.is_primitive());
    }

    #[test]
    fn complement_examples() {
        let emb = lambda_embedding();
        let a2 = Sublattice::new(emb.lambda.clone(), emb.a2_rows.clone()).unwrap();
        let c = orthogonal_complement(&a2).unwrap().lattice().unwrap();
        let inv = c.invariants();
        assert_eq!(
            (inv.determinant.clone(), inv.signature, inv.p_elementary),
            (BigInt::from(-3), (3, 21), Some((3, 1)))
        );
        let e = Sublattice::new(lat("U"), IntMatrix::from_i64(&[[1, 0]])).unwrap();
        assert_eq!(orthogonal_complement(&e), Err(Error::DegenerateComplement));
    }

    #[test]
    fn overlattice_examples() {
        let l = lat("A2 + A2(-1)");
        let m = overlattice(&l, &[vec![1, 1]]).unwrap();
        assert!(m.lattice.is_even() && m.lattice.is_unimodular());
        assert_eq!(m.lattice.signature(), (2, 2));
        assert_eq!(m.index(), BigInt::from(3));
        assert!(forms_isomorphic(
            &discriminant_form(&m.lattice).unwrap().0,
            &FiniteQuadraticForm::trivial()
        )
        .unwrap());
        let same = overlattice(&l, &[]).unwrap();
        assert_eq!(same.lattice, l);
        assert_eq!(
            overlattice(&l, &[vec![1, 0]]).unwrap_err(),
            Error::NotIsotropic
        );
    }

    #[test]
    fn lambda_glue() {
        let emb = lambda_embedding();
        let lam = &emb.lambda;
        assert!(lam.is_even() && lam.is_unimodular());
        assert_eq!((lam.rank(), lam.signature()), (26, (5, 21)));
        let l = Sublattice::new(lam.clone(), emb.l_rows.clone()).unwrap();
        assert_eq!(l.gram(), *lat("OG10").gram());
        assert!(l.is_primitive());
        let a2 = Sublattice::new(lam.clone(), emb.a2_rows.clone()).unwrap();
        assert_eq!(a2.gram(), *lat("A2").gram());
        let gg = glue_group(lam, &a2, &l, Some(3)).unwrap();
        assert_eq!(
            (gg.orders.clone(), gg.a, gg.bound_ok),
            (vec![BigInt::from(3)], 1, Some(true))
        );
    }

    #[test]
    fn glue_group_examples() {
        let uu = lat("U + U");
        let s1 = Sublattice::new(
            uu.clone(),
            IntMatrix::from_i64(&[[1, 0, 0, 0], [0, 1, 0, 0]]),
        )
        .unwrap();
        let s2 = Sublattice::new(
            uu.clone(),
            IntMatrix::from_i64(&[[0, 0, 1, 0], [0, 0, 0, 1]]),
        )
        .unwrap();
        let gg = glue_group(&uu, &s1, &s2, None).unwrap();
        assert_eq!((gg.a, gg.bound_ok), (0, None));
        assert_eq!(
            glue_group(&uu, &s1, &s1, None),
            Err(Error::NotComplementary)
        );
    }

    #[test]
    fn primitive_extension_examples() {
        let g = GlueData::new(lat("U"), lat("U"), vec![], vec![]).unwrap();
        assert_eq!(primitive_extension(&g).unwrap().lattice, lat("U + U"));
        let a = lat("A2");
        let b = lat("A2(-1)");
        let g = GlueData::full(a.clone(), b.clone(), 100).unwrap().unwrap();
        let m = primitive_extension(&g).unwrap().lattice;
        assert!(m.is_unimodular() && m.is_even());
        assert!(matches!(
            GlueData::new(a.clone(), a, vec![vec![1]], vec![vec![1]]),
            Err(Error::NotIsotropicGraph)
        ));
        let _ = b;
    }

    #[test]
    fn complement_genus_examples() {
        let host = FiniteQuadraticForm::trivial();
        let a2 = lat("A2");
        let (sig, form) = complement_genus(&host, (5, 21), &a2, &GlueChoice::trivial()).unwrap();
        assert_eq!(sig, (3, 21));
        assert!(forms_isomorphic(&form, &discriminant_form(&lat("OG10")).unwrap().0).unwrap());
        let (sig, form) = complement_genus(
            &discriminant_form(&lat("U(3)")).unwrap().0,
            (1, 1),
            &Lattice::zero(),
            &GlueChoice::trivial(),
        )
        .unwrap();
        assert_eq!(
            (sig, form.generator_orders().to_vec()),
            ((1, 1), vec![3, 3])
        );
        assert!(matches!(
            complement_genus(&host, (1, 1), &a2, &GlueChoice::trivial()),
            Err(Error::InfeasibleSignature { .. })
        ));
    }

    #[test]
    fn complement_genera_in_the_og10_genus() {
        let host = lat("U^3 + E8(-1)^2 + A2(-1)");
        let fd = discriminant_form(&host).unwrap().0;
        let out = complement_genera(&fd, host.signature(), &lat("A2(-1)"), 1000).unwrap();
        // full glue or no glue of A₂(−1) into the ℤ/3 of 𝐋
        assert!(!out.is_empty());
        for (sig, f) in &out {
            assert_eq!(*sig, (3, 19));
            assert_eq!(
                milgram_signature(f).unwrap() as i64,
                (3i64 - 19).rem_euclid(8)
            );
        }
    }

    fn random_primitive(seed: &[i64]) -> Option<Sublattice> {
        let amb = lat("U^3 + E8(-1)");
        let n = amb.rank();
        let r = 1 + (seed[0].unsigned_abs() as usize % 4);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..n).map(|j| seed[(1 + i * n + j) % seed.len()]).collect())
            .collect();
        let m = IntMatrix::from_i64(&rows);
        let s = Sublattice::spanned_by(amb, &m).ok()?;
        let (s, g) = saturate(&s);
        if s.rank() == 0 || g.det().is_zero() {
            return None;
        }
        Some(s)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn double_complement_is_saturation(seed in proptest::collection::vec(-3i64..=3, 60)) {
            if let Some(s) = random_primitive(&seed) {
                if let Ok(c) = orthogonal_complement(&s) {
                    let cc = orthogonal_complement(&c).unwrap();
                    prop_assert_eq!(
                        hermite_normal_form(&cc.basis).0,
                        hermite_normal_form(&s.basis).0
                    );
                }
            }
        }

        #[test]
        fn overlattice_determinant_identity(idx in 0usize..4) {
            let e = ["A2 + A2(-1)", "A2 + A2 + A2(-1) + A2(-1)", "U(3) + A2", "D4 + D4"][idx];
            let l = lat(e);
            let f = discriminant_form(&l).unwrap().0;
            for h in isotropic_subgroups(&f, 1000).unwrap() {
                let m = overlattice(&l, &h.generator_elements()).unwrap();
                let ix = BigInt::from(h.order());
                prop_assert_eq!(m.index(), ix.clone());
                prop_assert_eq!(m.lattice.det() * &ix * &ix, l.det());
                prop_assert!(m.lattice.is_even());
            }
        }
    }

    #[test]
    fn inner_product_helper_is_exact() {
        let l = lat("ExB");
        assert_eq!(
            l.inner(&int_vec(&[1, 1]), &int_vec(&[1, -1]))
                .unwrap()
                .abs(),
            BigInt::from(2)
        );
    }
}
