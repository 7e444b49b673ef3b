//! Exhaustive searches on small finite forms: isomorphisms, isometric embeddings, subgroups.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;

use super::{DiscElement, FiniteQuadraticForm};
use crate::error::Result;

/// Largest group order the searches accept by default.
pub const DEFAULT_SEARCH_LIMIT: u64 = 10_000;

/// A subgroup, with independent generators and the sorted list of all its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub generators: Vec<(DiscElement, u64)>,
    pub elements: Vec<DiscElement>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_elements(&self) -> Vec<DiscElement> {
        self.generators.iter().map(|(g, _)| g.clone()).collect()
    }
}

/// Elements of a subgroup, indexed by the mixed-radix index of the ambient form.
struct ElementSet {
    member: Vec<bool>,
    list: Vec<DiscElement>,
}

impl ElementSet {
    fn trivial(f: &FiniteQuadraticForm, size: usize) -> Self {
        let mut member = vec![false; size];
        member[0] = true;
        ElementSet {
            member,
            list: vec![f.zero()],
        }
    }

    /// Smallest `k > 0` with `k·y` in the set.
    fn relative_order(&self, f: &FiniteQuadraticForm, y: &[u64]) -> u64 {
        let mut k = 1;
        let mut cur = y.to_vec();
        while !self.member[f.index_of(&cur)] {
            cur = f.add(&cur, y);
            k += 1;
        }
        k
    }

    fn extended(&self, f: &FiniteQuadraticForm, y: &[u64], rel: u64) -> Self {
        let mut member = self.member.clone();
        let mut list = self.list.clone();
        let mut mult = y.to_vec();
        for _ in 1..rel {
            for s in &self.list {
                let e = f.add(s, &mult);
                let i = f.index_of(&e);
                if !member[i] {
                    member[i] = true;
                    list.push(e);
                }
            }
            mult = f.add(&mult, y);
        }
        ElementSet { member, list }
    }
}

/// Values of q (or of b(x,x) when q is absent) in a common denominator `den`.
fn self_value(f: &FiniteQuadraticForm, x: &[u64], den: u64, use_q: bool) -> u64 {
    let scale = den / f.exponent();
    if use_q {
        f.q_num(x).unwrap() * scale
    } else {
        f.b_num(x, x) * scale
    }
}

struct EmbeddingSearch<'a> {
    src: &'a FiniteQuadraticForm,
    basis: &'a [(DiscElement, u64)],
    dst: &'a FiniteQuadraticForm,
    den: u64,
    candidates: Vec<Vec<DiscElement>>,
    size: usize,
    max_results: usize,
    found: Vec<Vec<DiscElement>>,
}

impl EmbeddingSearch<'_> {
    fn b_src(&self, i: usize, j: usize) -> u64 {
        self.src.b_num(&self.basis[i].0, &self.basis[j].0) * (self.den / self.src.exponent())
    }

    fn b_dst(&self, x: &[u64], y: &[u64]) -> u64 {
        self.dst.b_num(x, y) * (self.den / self.dst.exponent())
    }

    fn run(&mut self, images: &mut Vec<DiscElement>, span: &ElementSet) {
        if self.found.len() >= self.max_results {
            return;
        }
        let t = images.len();
        if t == self.basis.len() {
            self.found.push(images.clone());
            return;
        }
        let d = self.basis[t].1;
        for ci in 0..self.candidates[t].len() {
            let y = self.candidates[t][ci].clone();
            if (0..t).any(|j| self.b_dst(&y, &images[j]) != self.b_src(t, j)) {
                continue;
            }
            if span.relative_order(self.dst, &y) != d {
                continue;
            }
            let next = span.extended(self.dst, &y, d);
            images.push(y);
            self.run(images, &next);
            images.pop();
            if self.found.len() >= self.max_results {
                return;
            }
        }
    }
}

/// Injective maps of the subgroup with independent basis `basis ⊂ src` into `dst` that
/// preserve q (or only b when either form lacks q). Each result lists the basis images.
pub fn isometric_embeddings(
    src: &FiniteQuadraticForm,
    basis: &[(DiscElement, u64)],
    dst: &FiniteQuadraticForm,
    limit: u64,
    max_results: usize,
) -> Result<Vec<Vec<DiscElement>>> {
    let size = dst.order_within(limit)? as usize;
    let use_q = src.has_quadratic() && dst.has_quadratic();
    let den = 2 * src.exponent().lcm(&dst.exponent());
    let mut buckets: HashMap<(u64, u64), Vec<DiscElement>> = HashMap::new();
    for y in dst.elements() {
        let key = (dst.element_order(&y), self_value(dst, &y, den, use_q));
        buckets.entry(key).or_default().push(y);
    }
    let candidates = basis
        .iter()
        .map(|(x, d)| {
            buckets
                .get(&(*d, self_value(src, x, den, use_q)))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    let mut s = EmbeddingSearch {
        src,
        basis,
        dst,
        den,
        candidates,
        size,
        max_results,
        found: vec![],
    };
    let start = ElementSet::trivial(dst, s.size);
    s.run(&mut vec![], &start);
    Ok(s.found)
}

fn value_profile(f: &FiniteQuadraticForm, den: u64, use_q: bool) -> HashMap<(u64, u64), usize> {
    let mut h = HashMap::new();
    for x in f.elements() {
        *h.entry((f.element_order(&x), self_value(f, &x, den, use_q)))
            .or_insert(0) += 1;
    }
    h
}

pub fn forms_isomorphic(f: &FiniteQuadraticForm, g: &FiniteQuadraticForm) -> Result<bool> {
    forms_isomorphic_with_limit(f, g, DEFAULT_SEARCH_LIMIT)
}

/// Isomorphism of finite forms by backtracking over generator images.
///
/// Prunes by group structure and by the multiset of (order, value) pairs before searching.
/// When either form carries only a bilinear form, only the bilinear forms are compared.
pub fn forms_isomorphic_with_limit(
    f: &FiniteQuadraticForm,
    g: &FiniteQuadraticForm,
    limit: u64,
) -> Result<bool> {
    f.order_within(limit)?;
    g.order_within(limit)?;
    if f.order() != g.order() || f.elementary_divisors() != g.elementary_divisors() {
        return Ok(false);
    }
    if f.is_trivial() {
        return Ok(true);
    }
    let use_q = f.has_quadratic() && g.has_quadratic();
    let den = 2 * f.exponent().lcm(&g.exponent());
    if value_profile(f, den, use_q) != value_profile(g, den, use_q) {
        return Ok(false);
    }
    let basis: Vec<(DiscElement, u64)> = (0..f.rank())
        .map(|i| (f.generator(i), f.generator_orders()[i]))
        .collect();
    Ok(!isometric_embeddings(f, &basis, g, limit, 1)?.is_empty())
}

fn subgroup_from(set: &ElementSet, f: &FiniteQuadraticForm) -> Subgroup {
    let mut elements = set.list.clone();
    elements.sort_by_key(|e| f.index_of(e));
    let generators = f.subgroup_basis(&elements);
    Subgroup {
        generators,
        elements,
    }
}

fn enumerate_subgroups(
    f: &FiniteQuadraticForm,
    limit: u64,
    isotropic_only: bool,
) -> Result<Vec<Subgroup>> {
    let size = f.order_within(limit)? as usize;
    let all: Vec<DiscElement> = f.elements().collect();
    let admissible: Vec<&DiscElement> = all
        .iter()
        .filter(|x| !isotropic_only || f.is_isotropic_elem(x))
        .collect();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let start = ElementSet::trivial(f, size);
    seen.insert(start.member.clone());
    let mut queue = vec![start];
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for &x in &admissible {
            if s.member[f.index_of(x)] {
                continue;
            }
            if isotropic_only && s.list.iter().any(|h| f.b_num(h, x) != 0) {
                continue;
            }
            let rel = s.relative_order(f, x);
            let t = s.extended(f, x, rel);
            if seen.insert(t.member.clone()) {
                queue.push(t);
            }
        }
        out.push(subgroup_from(&s, f));
    }
    out.sort_by(|a, b| {
        a.order().cmp(&b.order()).then_with(|| {
            let ka: Vec<usize> = a.elements.iter().map(|e| f.index_of(e)).collect();
            let kb: Vec<usize> = b.elements.iter().map(|e| f.index_of(e)).collect();
            ka.cmp(&kb)
        })
    });
    Ok(out)
}

/// All subgroups, sorted by order and then by element indices.
pub fn all_subgroups(f: &FiniteQuadraticForm, limit: u64) -> Result<Vec<Subgroup>> {
    enumerate_subgroups(f, limit, false)
}

/// All subgroups on which q (and hence b) vanishes; for bilinear-only forms, b must vanish.
pub fn isotropic_subgroups(f: &FiniteQuadraticForm, limit: u64) -> Result<Vec<Subgroup>> {
    enumerate_subgroups(f, limit, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::discriminant_form;
    use crate::error::Error;
    use crate::lattice::parse_lattice;
    use proptest::prelude::*;

    fn disc(e: &str) -> FiniteQuadraticForm {
        discriminant_form(&parse_lattice(e).unwrap()).unwrap().0
    }

    #[test]
    fn isomorphism_examples() {
        assert!(forms_isomorphic(&disc("ExA"), &disc("ExB")).unwrap());
        assert!(!forms_isomorphic(&disc("A2"), &disc("A2(-1)")).unwrap());
        assert!(forms_isomorphic(&FiniteQuadraticForm::trivial(), &disc("U")).unwrap());
        assert!(forms_isomorphic(&disc("A2 + A2"), &disc("A2(-1) + A2(-1)")).unwrap());
        assert!(!forms_isomorphic(&disc("D4"), &disc("A1 + A1")).unwrap());
        assert!(matches!(
            forms_isomorphic(&disc("A2(-1)^9"), &disc("A2(-1)^9")),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn isotropic_subgroup_examples() {
        // both graphs x ↦ ±x are isotropic: q(1,1) = 2 and q(1,2) = 6
        let iso = isotropic_subgroups(&disc("A2 + A2(-1)"), DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(iso.len(), 3);
        assert!(iso[1..].iter().all(|h| h.order() == 3));
        assert!(iso
            .iter()
            .any(|h| h.elements == vec![vec![0, 0], vec![1, 1], vec![2, 2]]));
        assert!(iso
            .iter()
            .any(|h| h.elements == vec![vec![0, 0], vec![2, 1], vec![1, 2]]));
        assert_eq!(
            isotropic_subgroups(&disc("A2"), DEFAULT_SEARCH_LIMIT)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            isotropic_subgroups(&FiniteQuadraticForm::trivial(), 10)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn subgroup_counts() {
        // (ℤ/3)² has 1 + 4 + 1 subgroups
        assert_eq!(all_subgroups(&disc("A2 + A2"), 100).unwrap().len(), 6);
        // ℤ/4 ⊕ ℤ/2 has 8 subgroups
        assert_eq!(
            all_subgroups(&disc("[4] + A1").bilinear_only(), 100)
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn embeddings_into_larger_forms() {
        let src = disc("A2(-1)");
        let basis = vec![(vec![1], 3)];
        let dst = disc("OG10 + A2");
        let emb = isometric_embeddings(&src, &basis, &dst, 1000, usize::MAX).unwrap();
        // the generator of q = 4/3 maps to ±(1,0); (0,1) has q = 2/3
        assert_eq!(emb.len(), 2);
    }

    fn pool() -> Vec<FiniteQuadraticForm> {
        [
            "A2",
            "A2(-1)",
            "E6",
            "A2 + A2",
            "A2(-1) + A2(-1)",
            "U(3)",
            "A1",
            "E7",
            "A1(-1)",
            "D4",
        ]
        .iter()
        .map(|e| disc(e))
        .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn isomorphism_is_an_equivalence(i in 0usize..10, j in 0usize..10, k in 0usize..10) {
            let p = pool();
            let iso = |a: usize, b: usize| forms_isomorphic(&p[a], &p[b]).unwrap();
            prop_assert!(iso(i, i));
            prop_assert_eq!(iso(i, j), iso(j, i));
            if iso(i, j) && iso(j, k) {
                prop_assert!(iso(i, k));
            }
        }
    }
}
