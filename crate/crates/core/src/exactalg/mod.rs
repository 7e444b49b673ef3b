//! Exact integer/rational linear algebra.

mod matrix;
mod normal;
mod signature;

pub use matrix::{gcd_all, int_vec, rat_vec, IntMatrix, RatMatrix};
pub use normal::{
    echelon_rank, hermite_normal_form, integer_kernel, rank, row_basis, smith_normal_form,
    SnfResult,
};
pub use signature::{
    congruence_diagonal, is_negative_definite, is_positive_definite, rational_signature,
};
