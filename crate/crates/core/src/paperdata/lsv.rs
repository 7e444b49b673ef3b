use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::cubic::invariant_lattice;
use super::tables::{LsvRow, CUBIC, LSV};
use super::{RowVerdict, VerdictReport};
use crate::discform::{
    all_subgroups, discriminant_form, forms_isomorphic, isometric_embeddings, DiscElement,
};
use crate::enumerate::{count_vectors, list_vectors, EnumQuery};
use crate::error::{Error, Result};
use crate::exactalg::{gcd_all, IntMatrix, RatMatrix};
use crate::glue::{orthogonal_complement, primitive_extension, GlueData, Sublattice};
use crate::isom::nonsymplectic_feasible_abstract;
use crate::lattice::{make_named, parse_lattice, Lattice};

const LIMIT: u64 = 100_000;

fn sig(l: &Lattice) -> (usize, usize) {
    if l.rank() == 0 {
        (0, 0)
    } else {
        l.signature()
    }
}

fn same_genus(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.rank() != b.rank() || sig(a) != sig(b) || a.is_even() != b.is_even() {
        return Ok(false);
    }
    forms_isomorphic(&discriminant_form(a)?.0, &discriminant_form(b)?.0)
}

/// A primitive `U(3)` inside `m`: `e, f` with `e² = f² = 0`, `(e, f) = 3` from a small
/// coefficient box.
fn find_u3(m: &Lattice) -> Option<IntMatrix> {
    let n = m.rank();
    let g = m.gram().to_i64_rows()?;
    let norm = |v: &[i64]| -> i64 {
        (0..n)
            .map(|i| v[i] * (0..n).map(|j| g[i][j] * v[j]).sum::<i64>())
            .sum()
    };
    let mut es: Vec<Vec<i64>> = Vec::new();
    odometer(n, 1, |v| {
        if v.iter().any(|&c| c != 0) && norm(v) == 0 {
            es.push(v.to_vec());
        }
        false
    });
    es.sort_by_key(|v| (v.iter().filter(|&&c| c != 0).count(), v.clone()));
    let b = if n <= 8 { 3 } else { 1 };
    for e in es.iter().take(64) {
        let ge: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| g[i][j] * e[j]).sum())
            .collect();
        let mut found = None;
        odometer(n, b, |f| {
            if f.iter().zip(&ge).map(|(a, b)| a * b).sum::<i64>() != 3 || norm(f) != 0 {
                return false;
            }
            let basis = IntMatrix::from_i64(&[e.clone(), f.to_vec()]);
            let ok = Sublattice::new(m.clone(), basis.clone()).is_ok_and(|s| s.is_primitive());
            if ok {
                found = Some(basis);
            }
            ok
        });
        if let Some(basis) = found {
            return Some(basis);
        }
    }
    None
}

/// Visits every `M ⊃ U(3) ⊕ c` in the genus of `target`, with the basis of `U(3)` in the
/// coordinates of `M`, until `visit` returns true.
fn u3_from_complement(
    c: &Lattice,
    target: &Lattice,
    mut visit: impl FnMut(&Lattice, &IntMatrix) -> Result<bool>,
) -> Result<bool> {
    let u3 = parse_lattice("U(3)")?;
    if c.rank() == 0 {
        return Ok(same_genus(&u3, target)? && visit(&u3, &IntMatrix::identity(2))?);
    }
    let (fu, _) = discriminant_form(&u3)?;
    let (fc, _) = discriminant_form(c)?;
    let (ft, _) = discriminant_form(target)?;
    let prod = fu.order() * fc.order();
    if prod % ft.order() != 0 {
        return Ok(false);
    }
    let h2 = prod / ft.order();
    let total = u3.rank() + c.rank();
    for h in all_subgroups(&fu, LIMIT)? {
        if (h.order() as u128).pow(2) != h2 {
            continue;
        }
        for images in isometric_embeddings(&fu, &h.generators, &fc.negated(), LIMIT, usize::MAX)? {
            let gens = h.generators.iter().map(|(e, _)| e.clone()).collect();
            let ext = primitive_extension(&GlueData::new(u3.clone(), c.clone(), gens, images)?)?;
            if !same_genus(&ext.lattice, target)? {
                continue;
            }
            let rows = basis_rows(&ext.basis, 0..2, total);
            if visit(&ext.lattice, &IntMatrix::from_rows(rows)?)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Rows `idx` of the summand basis, written in the basis of the overlattice.
fn basis_rows(basis: &RatMatrix, idx: std::ops::Range<usize>, total: usize) -> Vec<Vec<BigInt>> {
    let pinv = basis.inverse().expect("basis");
    idx.map(|i| {
        let mut v = vec![BigRational::zero(); total];
        v[i] = BigRational::from_integer(BigInt::from(1));
        pinv.vec_mul(&v)
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    })
    .collect()
}

/// Vectors of `U(3)^⊥` in the coordinates of `M`, sorted into `(−2)`- and `(−6)`-vectors.
struct PexCandidates {
    short: usize,
    long: Vec<Vec<BigInt>>,
}

impl PexCandidates {
    fn new(c: &Sublattice) -> Result<Self> {
        if c.rank() == 0 {
            return Ok(PexCandidates {
                short: 0,
                long: vec![],
            });
        }
        let cl = c.lattice()?;
        let to_m = |v: Vec<BigInt>| c.basis.vec_mul(&v);
        let short = count_vectors(&EnumQuery::new(cl.clone(), -2))? as usize;
        let long = list_vectors(&EnumQuery::new(cl, -6))?
            .into_iter()
            .map(to_m)
            .collect();
        Ok(PexCandidates { short, long })
    }

    /// `(−6)`-vectors of divisibility 3 in the overlattice `M + lifts(H_M)`.
    fn long_count(&self, m: &Lattice, hm: &[(DiscElement, u64)]) -> Result<usize> {
        let (_, lift) = discriminant_form(m)?;
        let g = m.gram().to_rat();
        let lifts: Vec<Vec<BigRational>> =
            hm.iter().map(|(x, _)| g.mul_vec(&lift.lift(x))).collect();
        let three = BigInt::from(3);
        Ok(self
            .long
            .iter()
            .filter(|v| {
                let gv = m.gram().mul_vec(v);
                let rv: Vec<BigRational> = v
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let pair = |w: &Vec<BigRational>| {
                    rv.iter()
                        .zip(w)
                        .map(|(a, b)| a * b)
                        .sum::<BigRational>()
                        .to_integer()
                };
                let d = gcd_all(
                    gv.iter()
                        .chain(lifts.iter().map(pair).collect::<Vec<_>>().iter()),
                );
                d == three
            })
            .count())
    }
}

/// Order of the embedding subgroup of `S ⊂ M ⊂ 𝐋`, where `𝐋 ⊃ M` is determined by the glue
/// subgroup `H_M ⊂ A_M`: the image of `M + lifts(H_M)` under orthogonal projection to `S`.
fn embedding_subgroup_order(
    m: &Lattice,
    s: &Sublattice,
    hm: &[(DiscElement, u64)],
) -> Result<u128> {
    let (_, lift_m) = discriminant_form(m)?;
    let sl = s.lattice()?;
    let (fs, lift_s) = discriminant_form(&sl)?;
    let gs_inv = sl.gram().to_rat().inverse().expect("nondegenerate");
    let bg: RatMatrix = (&s.basis * m.gram()).to_rat();
    let mut classes: Vec<DiscElement> = Vec::new();
    for (x, _) in hm {
        let y = lift_m.lift(x);
        let c = gs_inv.mul_vec(&bg.mul_vec(&y));
        classes.push(lift_s.class_of(&c)?);
    }
    Ok(fs.subgroup_order(&classes))
}

struct Realisation {
    lattice: Lattice,
}

/// A realisation of `M ⊕ N ⊂ 𝐋` by a glue `H_M = x^⊥ ≅ A_N(−1)` with `q(x) = q(A_𝐋)`, where
/// the embedding subgroup of `S` has order 3 and `accept(H_M)` holds. Divisibilities in `𝐋` of
/// vectors of `M` depend on `H_M` only, so `accept` runs before any gluing map is built.
fn realise(
    m: &Lattice,
    n: &Lattice,
    s: &Sublattice,
    mut accept: impl FnMut(&[(DiscElement, u64)]) -> Result<bool>,
) -> Result<Option<Realisation>> {
    let (fm, _) = discriminant_form(m)?;
    let (fn_, _) = discriminant_form(n)?;
    let og10 = make_named("OG10", &[])?;
    let (fl, _) = discriminant_form(&og10)?;
    let ql = fl.q(&fl.generator(0))?;
    if fm.order() != 3 * fn_.order() {
        return Ok(None);
    }
    let target = fn_.negated();
    for x in fm.elements() {
        if fm.q(&x)? != ql {
            continue;
        }
        let hm = fm.perp(std::slice::from_ref(&x));
        if embedding_subgroup_order(m, s, &hm)? != 3
            || !forms_isomorphic(&fm.restrict(&hm), &target)?
        {
            continue;
        }
        if !accept(&hm)? {
            continue;
        }
        let Some(images) = isometric_embeddings(&fm, &hm, &target, LIMIT, 1)?
            .into_iter()
            .next()
        else {
            continue;
        };
        let glue = GlueData::new(
            m.clone(),
            n.clone(),
            hm.iter().map(|(e, _)| e.clone()).collect(),
            images,
        )?;
        let ext = primitive_extension(&glue)?;
        let l = &ext.lattice;
        if !(l.is_even() && l.signature() == (3, 21) && same_genus(l, &og10)?) {
            continue;
        }
        return Ok(Some(Realisation {
            lattice: ext.lattice,
        }));
    }
    Ok(None)
}

/// Progress of the search for a `U(3) ⊂ 𝐋^G` satisfying the composite-glue criterion.
#[derive(Default)]
struct U3Search {
    choices: usize,
    /// Glue subgroups `H_M` compatible with order-3 embedding subgroup.
    tried: usize,
    /// Fewest `((−2), (−6, div 3))` vectors in `U(3)^⊥` over the subgroups tried.
    best: Option<(usize, usize)>,
    /// A glued lattice in the `𝐋` genus, pex-free when one exists.
    glued: Option<Lattice>,
}

impl U3Search {
    /// Returns true once a pex-free realisation has been found.
    fn visit(&mut self, m: &Lattice, basis: &IntMatrix, n: &Lattice) -> Result<bool> {
        self.choices += 1;
        let s = Sublattice::new(m.clone(), basis.clone())?;
        let pex = PexCandidates::new(&orthogonal_complement(&s)?)?;
        let real = realise(m, n, &s, |hm| {
            let counts = (pex.short, pex.long_count(m, hm)?);
            self.tried += 1;
            if self.best.is_none_or(|b| counts.0 + counts.1 < b.0 + b.1) {
                self.best = Some(counts);
            }
            Ok(counts == (0, 0))
        })?;
        if let Some(real) = real {
            self.glued = Some(real.lattice.with_label("a lattice of the 𝐋 genus"));
            return Ok(true);
        }
        if self.glued.is_none() {
            self.glued = realise(m, n, &s, |_| Ok(true))?
                .map(|r| r.lattice.with_label("a lattice of the 𝐋 genus"));
        }
        Ok(false)
    }
}

/// Visits every vector of `[−b, b]^n` until `visit` returns true.
fn odometer(n: usize, b: i64, mut visit: impl FnMut(&[i64]) -> bool) {
    let mut v = vec![-b; n];
    loop {
        if visit(&v) {
            return;
        }
        let mut i = 0;
        while i < n && v[i] == b {
            v[i] = -b;
            i += 1;
        }
        if i == n {
            return;
        }
        v[i] += 1;
    }
}

fn verify_row(r: &LsvRow) -> RowVerdict {
    let mut v = RowVerdict::new(r.id);
    if let Err(e) = verify_row_into(r, &mut v) {
        v.check("completed", false, e.to_string());
    }
    v
}

fn verify_row_into(r: &LsvRow, v: &mut RowVerdict) -> Result<()> {
    let inv = parse_lattice(r.invariant)?;
    let coinv_expr = match parse_lattice(r.coinvariant) {
        Ok(_) => r.coinvariant,
        Err(_) => {
            let reading = r
                .coinvariant_reading
                .ok_or_else(|| Error::Parse(format!("cannot read `{}`", r.coinvariant)))?;
            let mut sums = Vec::new();
            for k in 1..=3 {
                let trial = r.coinvariant.replace("U^⊕", &format!("U^{k}"));
                if let Ok(l) = parse_lattice(&trial) {
                    sums.push(format!("U^{k} gives {}", l.rank() + inv.rank()));
                }
            }
            v.note(format!(
                "printed `{}` is ambiguous; rank sums: {}; checked as `{reading}`",
                r.coinvariant,
                sums.join(", ")
            ));
            reading
        }
    };
    let coinv = parse_lattice(coinv_expr)?;
    let rs = inv.rank() + coinv.rank();
    v.check(
        "rank_sum",
        rs == 24,
        format!("{} + {} = {rs}", inv.rank(), coinv.rank()),
    );
    let si = sig(&inv);
    v.check(
        "signature_invariant",
        si == r.sig_invariant,
        format!("{si:?} (printed {:?})", r.sig_invariant),
    );
    let og10 = make_named("OG10", &[])?;
    let feas = nonsymplectic_feasible_abstract(&inv, &coinv, &og10, r.p);
    v.check(
        "necessary_conditions",
        feas.feasible,
        if feas.feasible {
            format!("glue (ℤ/{})^{}", r.p, feas.glue_a.unwrap_or(0))
        } else {
            feas.failures.join("; ")
        },
    );

    // for rows coming from a cubic fourfold, U(3)^⊥ should be 𝐅^G(−1); otherwise search
    let mut outcome = U3Search::default();
    let how = match r.cubic {
        Some(cid) => {
            let case = CUBIC.iter().find(|c| c.id == cid).expect("fixture id");
            let c = invariant_lattice(case).neg();
            u3_from_complement(&c, &inv, |m, b| outcome.visit(m, b, &coinv))?;
            format!("U(3) ⊕ 𝐅^G({})(−1) glued into the genus of 𝐋^G", case.label)
        }
        None => {
            if let Some(b) = find_u3(&inv) {
                outcome.visit(&inv, &b, &coinv)?;
            }
            "U(3) by box search".to_string()
        }
    };
    match outcome {
        U3Search { choices: 0, .. } => {
            v.check("u3_composite_glue", false, "no primitive U(3) found")
        }
        U3Search { glued: None, .. } => v.check(
            "u3_composite_glue",
            false,
            format!("{how}; no gluing into the 𝐋 genus with embedding subgroup ℤ/3"),
        ),
        U3Search {
            glued: Some(l),
            best,
            tried,
            ..
        } => {
            v.check(
                "u3_composite_glue",
                true,
                format!("{how}; embedding subgroup of order 3 in {}", l.name()),
            );
            let (a, b) = best.unwrap_or((0, 0));
            v.check(
                "u3_perp_avoids_pex",
                (a, b) == (0, 0),
                format!(
                    "(−2)-vectors {a}, (−6, div 3) vectors {b} (best of {tried} glue subgroups)"
                ),
            );
        }
    }

    if let Some(cid) = r.cubic {
        let case = CUBIC.iter().find(|c| c.id == cid).expect("fixture id");
        let fneg = parse_lattice(case.coinvariant)?.neg();
        let ok = same_genus(&coinv, &fneg)?;
        v.check(
            "transport_genus",
            ok,
            format!(
                "𝐋_G {} 𝐅_G({})(−1)",
                if ok { "≅ genus of" } else { "differs from" },
                case.label
            ),
        );
    }
    Ok(())
}

pub fn verify_lsv_rows(rows: &[LsvRow]) -> VerdictReport {
    let rows: Vec<RowVerdict> = rows.par_iter().map(verify_row).collect();
    VerdictReport {
        table: "lsv".into(),
        rows,
    }
}

pub fn verify_lsv_table() -> VerdictReport {
    verify_lsv_rows(LSV)
}
