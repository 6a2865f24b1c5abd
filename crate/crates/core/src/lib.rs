//! Combinatorial and linear-algebra machinery for generalized Brownian motion:
//! pair-partition statistics, the *-semigroup of broken pair partitions,
//! weight functions and their moment/Wick calculus, and finite GNS/Fock
//! matrix models with exact rational positivity certification.
//!
//! All scalar arithmetic is exact (arbitrary-precision rationals); floating
//! point appears only in advisory spectral reports.

// Dense matrix code indexes rows and columns explicitly throughout.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]

pub mod gns;
pub mod kernel;
pub mod partitions;
pub mod perm;
pub mod semigroup;
pub mod weights;
pub mod wick;

pub use kernel::{ldlt_psd_certificate, quotient_basis, symmetric_eigs};
pub use kernel::{KernelError, Mat, PsdCertificate, QuotientBasis, Scalar, SymMatrix};
pub use partitions::{BlockDecomposition, PairPartition, PartitionError};
pub use perm::Permutation;
pub use semigroup::{Diagram, GeneratorWord, SemigroupError, Token};
pub use weights::{PairWeight, Weight, WeightError};
