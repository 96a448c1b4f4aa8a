//! Complex Hadamard matrices of order 6 from 2-circulant blocks.
//!
//! The crate builds the two-parameter family `X6(alpha)` (and its transpose)
//! of complex Hadamard matrices, describes its parameter region bounded by
//! two deltoids, decides Hadamard equivalence by exhaustive search, carries a
//! small catalog of related known matrices, and turns any member of the
//! family into a triplet of mutually unbiased bases in `C^6`.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Fourier/circulant constructors,
//!   Hadamard residual, dephasing, and the text format used for I/O.
//! - [`region`]: `phi`, the discriminant `D[alpha]`, region membership and
//!   boundary classification.
//! - [`cubic`]: roots of `f_alpha`, i.e. the inverse of `phi`.
//! - [`family`]: the block matrix `H`, the dephased `X6`, and all 36 root
//!   choices.
//! - [`equivalence`]: canonical dephased forms, exhaustive equivalence search,
//!   quartet fingerprints.
//! - [`catalog`]: `D(t)`, the self-adjoint pattern `B(x,y,z)`, their
//!   2-circulant representations, generalized Fourier matrices, file loading.
//! - [`mub`]: 2×2 unitary factorization, block diagonalization and the
//!   resulting MUB triplets.

// `!(x <= tol)` is used on purpose so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cubic;
pub mod equivalence;
pub mod error;
pub mod family;
pub mod linalg;
pub mod mub;
pub mod region;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DiagonalPhases, PhaseValue};
pub use num_complex::Complex64;
pub use region::{AlphaPoint, RegionClass};
