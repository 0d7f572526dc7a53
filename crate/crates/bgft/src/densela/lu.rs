//! LU factorization with partial pivoting, complex.

use num_complex::Complex;

use super::{require_finite_complex, CMatrix, LaError, LU_PIVOT_RTOL};
use crate::scalar::Scalar;

/// Packed LU factors of a square complex matrix, `PA = LU`.
///
/// Reusable across right-hand sides; the transform cache in
/// [`crate::transform::Spectrum`] holds one of these for the eigenvector
/// matrix so repeated analysis solves share the factorization.
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    /// L below the diagonal (unit diagonal implied), U on and above.
    packed: Vec<Complex<T>>,
    /// Row exchanges: step k swapped rows k and `pivots[k]`.
    pivots: Vec<usize>,
    n: usize,
}

impl<T: Scalar> LuFactors<T> {
    /// Factors `A` with partial pivoting. A pivot of magnitude below
    /// `1e-14·‖A‖_F` is treated as exact singularity.
    pub fn factor(a: &CMatrix<T>) -> Result<Self, LaError<T>> {
        if !a.is_square() {
            return Err(LaError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        require_finite_complex(a)?;
        let n = a.rows();
        let threshold = T::lit(LU_PIVOT_RTOL) * a.frobenius_norm();
        let mut lu: Vec<Complex<T>> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            // Pick the largest magnitude in column k at or below the diagonal.
            let mut piv = k;
            let mut piv_mag = lu[k * n + k].norm();
            for i in (k + 1)..n {
                let mag = lu[i * n + k].norm();
                if mag > piv_mag {
                    piv = i;
                    piv_mag = mag;
                }
            }
            if piv_mag < threshold || piv_mag == T::zero() {
                return Err(LaError::Singular {
                    pivot: piv_mag,
                    threshold,
                });
            }
            pivots[k] = piv;
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= factor * ukj;
                }
            }
        }
        Ok(Self {
            packed: lu,
            pivots,
            n,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Solves `Ax = b` for one right-hand side.
    #[allow(clippy::needless_range_loop)] // indexed triangular substitution
    pub fn solve_vec(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>, LaError<T>> {
        if b.len() != self.n {
            return Err(LaError::DimensionMismatch {
                context: "right-hand side length must match matrix order",
            });
        }
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        // Forward substitution, unit lower triangle.
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.packed[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        // Back substitution, upper triangle.
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.packed[i * n + j] * x[j];
            }
            x[i] = acc / self.packed[i * n + i];
        }
        Ok(x)
    }

    /// Solves `AX = B` column by column.
    pub fn solve(&self, b: &CMatrix<T>) -> Result<CMatrix<T>, LaError<T>> {
        if b.rows() != self.n {
            return Err(LaError::DimensionMismatch {
                context: "right-hand side rows must match matrix order",
            });
        }
        let mut x = CMatrix::zeros(self.n, b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.column(j))?;
            x.set_column(j, &col);
        }
        Ok(x)
    }
}

/// One-shot solve of `AX = B` by LU with partial pivoting. `A⁻¹` is never
/// formed.
pub fn lu_solve<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<CMatrix<T>, LaError<T>> {
    LuFactors::factor(a)?.solve(b)
}
