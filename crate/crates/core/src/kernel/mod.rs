//! Exact scalar arithmetic and the small dense linear-algebra engine used by
//! every other module: rational scalars, symmetric matrices, an exact
//! pivoted LDL^T positivity certificate, a float Jacobi eigensolver and the
//! Gram-Schmidt quotient construction.

mod jacobi;
mod ldlt;
mod matrix;
mod quotient;
mod scalar;

pub use jacobi::{jacobi_eigs_f64, symmetric_eigs};
pub use ldlt::{ldlt_psd_certificate, PsdCertificate};
pub use matrix::{Mat, SymMatrix};
pub use quotient::{quotient_basis, QuotientBasis};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("tolerance must be strictly positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("matrix is not positive semidefinite: negative norm encountered at column {col}")]
    IndefiniteGram { col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed scalar literal: {0:?}")]
    BadScalarLiteral(String),
}
