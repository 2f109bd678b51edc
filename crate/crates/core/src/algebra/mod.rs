//! Exact scalar algebras and the integer kernels (extended gcd, Smith
//! normal form) the module and matrix categories are built on.

mod integer;
mod laws;
mod scalar;
mod snf;

pub use integer::{gcd, gcd_ext, IntMatrix};
pub use laws::{check_algebra_laws, Law, LawReport, LawResult};
pub use scalar::{AlgebraKind, FiniteTable, Scalar, ScalarAlgebra};
pub use snf::{smith_normal_form, SnfResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("table error: {0}")]
    Table(String),
    #[error("table error: {op}[{row}][{col}] = {value} is outside the carrier")]
    NotClosed { op: String, row: usize, col: usize, value: u64 },
    #[error("value {value} is not in the {algebra} carrier")]
    ForeignScalar { algebra: String, value: String },
    #[error("algebra descriptor: {0}")]
    Descriptor(String),
    #[error("shape error: {0}")]
    Shape(String),
}
