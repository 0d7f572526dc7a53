//! Householder least squares with column pivoting, complex.

use num_complex::Complex;

use super::{complex_zero, require_finite_complex, CMatrix, LaError, QR_RANK_RTOL};
use crate::scalar::Scalar;

/// Minimizes `‖Bc − y‖₂` for an `m×K` matrix with `m ≥ K`, via Householder QR
/// with column pivoting. Equals `B†y` when `B` has full column rank.
///
/// Rank is decided from the pivot magnitudes: the factorization is rejected
/// as rank-deficient when the smallest retained pivot falls below
/// `1e-10` times the largest. `m < K` forces column rank below `K` and is
/// reported the same way.
pub fn least_squares<T: Scalar>(
    b: &CMatrix<T>,
    y: &[Complex<T>],
) -> Result<Vec<Complex<T>>, LaError<T>> {
    require_finite_complex(b)?;
    let (m, k) = (b.rows(), b.cols());
    if y.len() != m {
        return Err(LaError::DimensionMismatch {
            context: "observation length must match matrix rows",
        });
    }
    if m < k {
        return Err(LaError::RankDeficient {
            ratio: T::zero(),
            threshold: T::lit(QR_RANK_RTOL),
        });
    }

    // Row-major working copy of B and the transformed observations.
    let mut r: Vec<Complex<T>> = (0..m).flat_map(|i| b.row(i).to_vec()).collect();
    let mut qty: Vec<Complex<T>> = y.to_vec();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut rdiag: Vec<Complex<T>> = vec![complex_zero(); k];

    for j in 0..k {
        // Column pivot: largest trailing norm among columns j..k.
        let mut best = j;
        let mut best_sq = T::zero();
        for col in j..k {
            let sq: T = (j..m).map(|i| r[i * k + col].norm_sqr()).sum();
            if sq > best_sq {
                best_sq = sq;
                best = col;
            }
        }
        if best != j {
            perm.swap(j, best);
            for i in 0..m {
                r.swap(i * k + j, i * k + best);
            }
        }
        let norm = best_sq.sqrt();
        if norm == T::zero() {
            rdiag[j] = complex_zero();
            continue;
        }
        let alpha = r[j * k + j];
        let phase = if alpha.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            alpha / alpha.norm()
        };
        let beta = -phase * norm;
        rdiag[j] = beta;
        // Reflector v = x − β·e₁ stored in the pivot column below row j;
        // ‖v‖² = 2·norm·(norm + |α|).
        r[j * k + j] = alpha - beta;
        let vnorm_sq = (T::one() + T::one()) * norm * (norm + alpha.norm());
        for col in (j + 1)..k {
            let dot: Complex<T> = (j..m).map(|i| r[i * k + j].conj() * r[i * k + col]).sum();
            let tau = dot * (T::one() + T::one()) / vnorm_sq;
            for i in j..m {
                let vij = r[i * k + j];
                r[i * k + col] -= tau * vij;
            }
        }
        let dot: Complex<T> = (j..m).map(|i| r[i * k + j].conj() * qty[i]).sum();
        let tau = dot * (T::one() + T::one()) / vnorm_sq;
        for i in j..m {
            let vij = r[i * k + j];
            qty[i] -= tau * vij;
        }
    }

    // Rank decision on the pivot magnitudes.
    let threshold = T::lit(QR_RANK_RTOL);
    let largest = rdiag[0].norm();
    if largest == T::zero() {
        return Err(LaError::RankDeficient {
            ratio: T::zero(),
            threshold,
        });
    }
    for d in &rdiag {
        let ratio = d.norm() / largest;
        if ratio < threshold {
            return Err(LaError::RankDeficient { ratio, threshold });
        }
    }

    // Back substitution on the triangular factor.
    let mut c = vec![complex_zero(); k];
    for j in (0..k).rev() {
        let mut acc = qty[j];
        for col in (j + 1)..k {
            acc -= r[j * k + col] * c[col];
        }
        c[j] = acc / rdiag[j];
    }

    // Undo the column permutation.
    let mut out = vec![complex_zero(); k];
    for j in 0..k {
        out[perm[j]] = c[j];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dot, norm2};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_returns_observations() {
        let b = CMatrix::<f64>::identity(4);
        let y = vec![c(1.0, 1.0), c(2.0, 0.0), c(-1.0, 3.0), c(0.0, -2.0)];
        let sol = least_squares(&b, &y).unwrap();
        for (a, b) in sol.iter().zip(&y) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn mean_of_two_points() {
        let b = CMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]]);
        let y = vec![c(0.0, 0.0), c(2.0, 0.0)];
        let sol = least_squares(&b, &y).unwrap();
        assert!((sol[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn consistent_overdetermined_system_is_recovered() {
        // 6×3 complex matrix of full rank, exact solution c0.
        let b = CMatrix::from_fn(6, 3, |i, j| {
            c(
                ((i * 3 + j) as f64 * 0.37).sin(),
                ((i + 2 * j) as f64 * 0.61).cos(),
            )
        });
        let c0 = vec![c(1.0, -2.0), c(0.5, 0.25), c(-3.0, 1.0)];
        let y = b.matvec(&c0);
        let sol = least_squares(&b, &y).unwrap();
        for (a, b) in sol.iter().zip(&c0) {
            assert!((a - b).norm() < 1e-10, "got {a}, want {b}");
        }
    }

    #[test]
    fn residual_is_orthogonal_to_column_space() {
        let b = CMatrix::from_fn(8, 3, |i, j| {
            c(
                ((i as f64 + 1.0) * (j as f64 + 1.0)).sin(),
                (i as f64 - j as f64).cos(),
            )
        });
        let y: Vec<Complex64> = (0..8)
            .map(|i| c((i as f64 * 1.3).cos(), (i as f64 * 0.7).sin()))
            .collect();
        let sol = least_squares(&b, &y).unwrap();
        let fitted = b.matvec(&sol);
        let resid: Vec<Complex64> = fitted.iter().zip(&y).map(|(f, o)| f - o).collect();
        for j in 0..3 {
            let col = b.column(j);
            let proj = dot(&col, &resid).norm();
            assert!(
                proj <= 1e-9 * b.frobenius_norm() * norm2(&y),
                "column {j} projection {proj}"
            );
        }
    }

    #[test]
    fn rank_deficiency_is_reported() {
        // Second column is twice the first.
        let b = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
            vec![c(-1.0, 0.0), c(-2.0, 0.0)],
        ]);
        let y = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        match least_squares(&b, &y) {
            Err(LaError::RankDeficient { .. }) => {}
            other => panic!("expected rank-deficient error, got {other:?}"),
        }
    }

    #[test]
    fn underdetermined_is_rank_deficient() {
        let b = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)]]);
        let y = vec![c(1.0, 0.0)];
        assert!(matches!(
            least_squares(&b, &y),
            Err(LaError::RankDeficient { .. })
        ));
    }
}
