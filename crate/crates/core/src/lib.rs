//! Exact arithmetic for integral quadratic lattices.

pub mod discform;
pub mod enumerate;
pub mod error;
pub mod exactalg;
pub mod glue;
pub mod isom;
pub mod lattice;
pub mod paperdata;

pub use error::{Error, Result};
