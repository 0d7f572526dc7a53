//! Singular values by one-sided (Hestenes) Jacobi orthogonalization.

use num_complex::Complex;

use super::{require_finite_complex, CMatrix, LaError};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 60;

/// Singular values of a complex matrix, non-increasing. One value is returned
/// per column; when the column rank falls short (including `rows < cols`) the
/// tail entries are zero.
///
/// Columns are rotated pairwise until every pair is orthogonal, which leaves
/// the column norms equal to the singular values. Rotations act on columns
/// only, so no accumulation error from a separate triangularization enters.
#[allow(clippy::needless_range_loop)] // rotations touch two columns at once
pub fn svd_values<T: Scalar>(a: &CMatrix<T>) -> Result<Vec<T>, LaError<T>> {
    require_finite_complex(a)?;
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return Ok(Vec::new());
    }
    if m < n {
        // Wide matrix: more columns than the space can hold orthogonal, so
        // pairwise sweeps stall. σ(A) = σ(A^H); run tall and pad with zeros.
        let mut sigma = svd_values(&a.adjoint())?;
        sigma.resize(n, T::zero());
        return Ok(sigma);
    }
    // Column-major working copy: u[j] is column j.
    let mut u: Vec<Vec<Complex<T>>> = (0..n).map(|j| a.column(j)).collect();
    let tol = T::epsilon() * T::from_count(m.max(1)).sqrt();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = 0usize;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = T::zero();
                let mut aqq = T::zero();
                let mut apq = Complex::new(T::zero(), T::zero());
                for i in 0..m {
                    app += u[p][i].norm_sqr();
                    aqq += u[q][i].norm_sqr();
                    apq += u[p][i].conj() * u[q][i];
                }
                let off = apq.norm();
                if off <= tol * (app * aqq).sqrt() {
                    continue;
                }
                rotated += 1;
                // Absorb the phase of the inner product into column q, then
                // apply the real Jacobi rotation that annihilates it.
                let phase_conj = apq.conj() / off;
                let tau = (aqq - app) / (off + off);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let up = u[p][i];
                    let uq = u[q][i] * phase_conj;
                    u[p][i] = up.scale(c) - uq.scale(s);
                    u[q][i] = up.scale(s) + uq.scale(c);
                }
            }
        }
        if rotated == 0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LaError::NoConvergence {
            algorithm: "one-sided Jacobi SVD",
            iterations: MAX_SWEEPS,
        });
    }

    let mut sigma: Vec<T> = u
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    Ok(sigma)
}
