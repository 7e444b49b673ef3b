//! Exact Gauss sums in cyclotomic rings, and the Milgram signature.

use num_integer::{Integer, Roots};

use super::FiniteQuadraticForm;
use crate::error::{Error, Result};

/// Biggest group summed element by element.
const GAUSS_LIMIT: u128 = 20_000_000;

type Poly = Vec<i128>;

fn poly_mul_mod(a: &[i128], b: &[i128], m: usize) -> Poly {
    let mut out = vec![0i128; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % m] += x * y;
            }
        }
    }
    out
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Exact quotient by a monic polynomial.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Poly {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i128; r.len().saturating_sub(dd)];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    trim(q)
}

fn poly_rem(num: &[i128], den: &[i128]) -> Poly {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() <= dd {
        r.resize(dd, 0);
        return r;
    }
    for i in (0..r.len() - dd).rev() {
        let c = r[i + dd];
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    r.truncate(dd);
    r
}

/// Cyclotomic polynomial `Φ_m`, lowest degree first.
fn cyclotomic(m: usize) -> Poly {
    let mut p = vec![0i128; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

/// Gauss sum `Σ exp(πi q(x))` as an element of `ℤ[x]/(x^m − 1)` with `x = ζ_m`; `2n | m`.
fn gauss_sum(f: &FiniteQuadraticForm, m: usize) -> Result<Poly> {
    let two_n = 2 * f.exponent() as usize;
    debug_assert_eq!(m % two_n, 0);
    let step = m / two_n;
    let mut out = vec![0i128; m];
    for x in f.elements() {
        out[f.q_num(&x)? as usize * step] += 1;
    }
    Ok(out)
}

fn prime_factors(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Form `ℤ/p` with `q(g) = (p−1)/p` (discriminant of `A_{p−1}`); for p = 2 this is `A₁`.
fn padding_form(p: u64) -> FiniteQuadraticForm {
    FiniteQuadraticForm {
        orders: vec![p],
        n: p,
        q: Some(vec![p - 1]),
        b: vec![vec![p - 1]],
    }
}

/// Signature mod 8 from the Gauss sum `Σ exp(πi q(x)) = √|A| · exp(πi s / 4)`.
///
/// The group is first padded with discriminant forms of `A_{p−1}` so that its order is a
/// perfect square; the sum is then an integer multiple of an eighth root of unity, which is
/// identified exactly by reduction modulo the cyclotomic polynomial.
pub fn milgram_signature(f: &FiniteQuadraticForm) -> Result<u8> {
    if !f.has_quadratic() {
        return Err(Error::OddLatticeQuadratic);
    }
    if !f.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let order = f.order();
    if order > GAUSS_LIMIT {
        return Err(Error::TooLarge {
            size: order as u64,
            limit: GAUSS_LIMIT as u64,
        });
    }
    let mut pads = Vec::new();
    let mut extra_sig = 0u64;
    let mut total = order;
    for (p, e) in prime_factors(order) {
        if e % 2 == 1 {
            pads.push(padding_form(p as u64));
            extra_sig += p as u64 - 1;
            total *= p;
        }
    }
    let mut m = 8usize;
    m = m.lcm(&(2 * f.exponent() as usize));
    for pf in &pads {
        m = m.lcm(&(2 * pf.exponent() as usize));
    }
    let mut g = gauss_sum(f, m)?;
    for pf in &pads {
        g = poly_mul_mod(&g, &gauss_sum(pf, m)?, m);
    }
    let root = total.sqrt();
    debug_assert_eq!(root * root, total);
    let k = root as i128;
    let phi = cyclotomic(m);
    let g = poly_rem(&g, &phi);
    for t in 0..8usize {
        let mut target = vec![0i128; m];
        target[t * m / 8] = k;
        if poly_rem(&target, &phi) == g {
            return Ok(((t as i64 - extra_sig as i64).rem_euclid(8)) as u8);
        }
    }
    Err(Error::Invalid(
        "Gauss sum is not a multiple of an eighth root of unity".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::discriminant_form;
    use crate::lattice::parse_lattice;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(24).len(), 9);
    }

    fn milgram(e: &str) -> u8 {
        milgram_signature(&discriminant_form(&parse_lattice(e).unwrap()).unwrap().0).unwrap()
    }

    #[test]
    fn milgram_examples() {
        assert_eq!(milgram("E8(-1)"), 0);
        assert_eq!(milgram("A2"), 2);
        assert_eq!(milgram("OG10"), 6);
        assert_eq!(milgram("A1"), 1);
        assert_eq!(milgram("D4"), 4);
        assert_eq!(milgram("E7(-1)"), 1);
    }

    #[test]
    fn odd_forms_have_no_gauss_sum() {
        let f = discriminant_form(&parse_lattice("[3]").unwrap()).unwrap().0;
        assert_eq!(milgram_signature(&f), Err(Error::OddLatticeQuadratic));
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        let f = FiniteQuadraticForm {
            orders: vec![3],
            n: 3,
            q: Some(vec![0]),
            b: vec![vec![0]],
        };
        assert_eq!(milgram_signature(&f), Err(Error::DegenerateForm));
    }
}
