//! Dense symmetric eigenvalues, exact integer characteristic polynomials and
//! real-root isolation.

mod charpoly;
mod jacobi;
mod matrix;
mod poly;
mod sturm;

use thiserror::Error;

pub use charpoly::char_poly_exact;
pub use jacobi::{sym_eigenvalues, verify_eigenpair, Spectrum, MAX_SWEEPS};
pub use matrix::{IntMatrix, SymMatrix};
pub use poly::IntPolynomial;
pub use sturm::{compare_roots, sturm_real_roots, ExtremeRoot, RealRoot, RootOrder};

/// Tolerances shared across the crate.
pub mod tol {
    /// Off-diagonal threshold for the Jacobi sweeps.
    pub const SOLVER: f64 = 1e-12;
    /// Two computed reals are "the same" within this distance.
    pub const COMPARE: f64 = 1e-9;
    /// Strict inequalities with a margin at or below this get an exact re-check.
    pub const RECHECK: f64 = 1e-6;
    /// Eigenvector entries with magnitude at or below this count as zero.
    pub const ZERO: f64 = 1e-9;
    /// Gap below which the least eigenvalue is treated as repeated.
    pub const DEGENERACY_GAP: f64 = 1e-8;
    /// Width of root brackets from Sturm isolation.
    pub const ROOT: f64 = 1e-12;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("rows have inconsistent lengths")]
    Ragged,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}
