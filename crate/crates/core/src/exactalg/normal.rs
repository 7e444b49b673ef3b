//! Smith and Hermite normal forms with their unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d` with `d` diagonal, `d₁ | d₂ | …`, all diagonal entries ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries, including zeros and ones.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Diagonal entries different from 1 (the nontrivial invariant factors and zeros).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| *x != BigInt::from(1))
            .collect()
    }
}

fn smallest_nonzero(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            if m[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= m[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let mut clean = true;
        for i in t + 1..r {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = d[(i, t)].div_floor(&d[(t, t)]);
            d.add_row_multiple(i, t, &-&q);
            u.add_row_multiple(i, t, &-&q);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..c {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = d[(t, j)].div_floor(&d[(t, t)]);
            d.add_col_multiple(j, t, &-&q);
            v.add_col_multiple(j, t, &-&q);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            // a smaller remainder appeared; pivot again on it
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let piv = d[(t, t)].clone();
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&piv)));
        if let Some(i) = bad {
            d.add_row_multiple(t, i, &BigInt::from(1));
            u.add_row_multiple(t, i, &BigInt::from(1));
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SnfResult { d, u, v }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u · m = h`, `u` unimodular,
/// `h` in row echelon form with positive pivots and entries above pivots reduced into `[0, pivot)`.
/// Zero rows of `h` come last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            // smallest nonzero entry at or below `row` in this column
            let mut best: Option<usize> = None;
            for i in row..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| h[(i, col)].abs() < h[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut done = true;
            for i in row + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-&q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-&q);
        }
        row += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in row echelon form.
pub fn echelon_rank(h: &IntMatrix) -> usize {
    (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count()
}

/// Basis (as rows) of the left kernel `{x ∈ ℤⁿ : x · m = 0}`; automatically saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let rk = echelon_rank(&h);
    let idx: Vec<usize> = (rk..m.rows()).collect();
    u.select_rows(&idx)
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    echelon_rank(&hermite_normal_form(m).0)
}

/// HNF basis of the row span (nonzero rows only).
pub fn row_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rk = echelon_rank(&h);
    h.select_rows(&(0..rk).collect::<Vec<_>>())
}
