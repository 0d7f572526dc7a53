//! Self-contained dense linear algebra over complex scalars.
//!
//! Direct methods only, sized for dense problems up to a few hundred rows:
//! LU with partial pivoting, Householder least squares with column pivoting,
//! one-sided Jacobi singular values, Osborne balancing, and the real
//! Hessenberg/Schur eigendecomposition with eigenvector extraction that the
//! rest of the crate builds on. Inverses are never formed explicitly; every
//! solve goes through a factorization.

mod balance;
mod cmatrix;
mod dual;
mod eig;
mod lu;
mod qr;
mod svd;

pub use balance::balance;
pub use cmatrix::{CMatrix, RMatrix};
pub use dual::dual_basis;
pub use eig::{eig, EigOptions, EigenSystem};
pub use lu::{lu_solve, LuFactors};
pub use qr::least_squares;
pub use svd::svd_values;

use num_complex::Complex;
use thiserror::Error;

use crate::scalar::Scalar;

/// Relative pivot threshold under which LU declares the matrix singular.
pub const LU_PIVOT_RTOL: f64 = 1e-14;
/// Relative pivot-ratio threshold under which pivoted QR declares rank
/// deficiency.
pub const QR_RANK_RTOL: f64 = 1e-10;
/// Default residual acceptance tolerance for eigendecompositions.
pub const DEFAULT_EIG_TOL: f64 = 1e-9;

/// Errors from the dense kernels.
#[derive(Debug, Clone, Error)]
pub enum LaError<T: Scalar> {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: &'static str },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is numerically singular: pivot {pivot:e} below threshold {threshold:e}")]
    Singular { pivot: T, threshold: T },
    #[error("rank-deficient system: pivot ratio {ratio:e} below threshold {threshold:e}")]
    RankDeficient { ratio: T, threshold: T },
    #[error("no convergence after {iterations} iterations of {algorithm}")]
    NoConvergence {
        algorithm: &'static str,
        iterations: usize,
    },
    #[error(
        "near-defective eigendecomposition: residual {residual:e} exceeds {tol:e} (kappa {kappa:e})"
    )]
    NearDefective {
        kappa: T,
        residual: T,
        tol: T,
        /// The computed decomposition; callers may accept it explicitly.
        system: Box<EigenSystem<T>>,
    },
}

impl<T: Scalar> LaError<T> {
    /// Extracts the computed decomposition from a near-defective rejection,
    /// for callers that decide to proceed with a large residual.
    pub fn into_system(self) -> Option<EigenSystem<T>> {
        match self {
            LaError::NearDefective { system, .. } => Some(*system),
            _ => None,
        }
    }
}

pub(crate) fn require_finite_complex<T: Scalar>(a: &CMatrix<T>) -> Result<(), LaError<T>> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(LaError::NonFinite)
    }
}

pub(crate) fn require_finite_real<T: Scalar>(a: &RMatrix<T>) -> Result<(), LaError<T>> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(LaError::NonFinite)
    }
}

/// `‖AX − B‖_F` for result checking in tests and diagnostics.
pub fn solve_residual<T: Scalar>(a: &CMatrix<T>, x: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.mul(x).sub(b).frobenius_norm()
}

pub(crate) fn complex_zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}
