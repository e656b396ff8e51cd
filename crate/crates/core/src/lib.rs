//! Exact computation of intermediate-ring lattices: principal subfields of
//! number fields and subalgebra lattices of finite algebras over `F_q`.

pub mod arith;
pub mod check;
pub mod cli;
pub mod error;
pub mod field;
pub mod finite;
pub mod lattice;
pub mod matrix;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod principal;
pub mod report;

pub use error::{Error, Result};
