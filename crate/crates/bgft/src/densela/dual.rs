//! Dual (left eigenvector) basis of an eigendecomposition.

use super::{CMatrix, EigenSystem, LaError, LuFactors};
use crate::scalar::Scalar;

/// Dual basis `U = (V⁻¹)^H` of the eigenvector matrix `V`.
///
/// Column `u_k` is the left eigenvector paired with `v_k`, scaled so that
/// `⟨u_j, v_k⟩ = δ_jk`. Computed by LU-solving `Vᵀ X = I` and conjugating the
/// solution entrywise; the inverse itself is never formed. In floats the
/// biorthogonality `U^H V = I` holds to roughly `κ(V)·ε`.
///
/// Fails with [`LaError::Singular`] when `V` is numerically singular.
pub fn dual_basis<T: Scalar>(e: &EigenSystem<T>) -> Result<CMatrix<T>, LaError<T>> {
    let vt = e.vectors.transpose();
    let lu = LuFactors::factor(&vt)?;
    let x = lu.solve(&CMatrix::identity(e.vectors.rows()))?;
    Ok(x.conj())
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::densela::{eig, EigOptions, RMatrix};

    fn biorthogonality_defect(u: &CMatrix<f64>, v: &CMatrix<f64>) -> f64 {
        let n = v.rows();
        u.adjoint().mul(v).sub(&CMatrix::identity(n)).max_abs()
    }

    #[test]
    fn identity_basis_is_self_dual() {
        let sys = eig(&RMatrix::<f64>::identity(3), EigOptions::default()).unwrap();
        let u = dual_basis(&sys).unwrap();
        assert!(u.sub(&CMatrix::identity(3)).max_abs() < 1e-14);
    }

    #[test]
    fn orthogonal_basis_equals_its_dual() {
        // Symmetric matrix: V is real orthogonal, so (V^H)⁻¹ = V.
        let a = RMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let sys = eig(&a, EigOptions::default()).unwrap();
        let u = dual_basis(&sys).unwrap();
        assert!(u.sub(&sys.vectors).max_abs() < 1e-12);
    }

    #[test]
    fn dual_columns_are_biorthogonal_left_eigenvectors() {
        let a = RMatrix::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![0.0, 3.0, 1.0],
            vec![0.0, 0.0, 5.0],
        ]);
        let sys = eig(&a, EigOptions::default()).unwrap();
        let u = dual_basis(&sys).unwrap();
        assert!(biorthogonality_defect(&u, &sys.vectors) < 1e-9 * sys.kappa);

        // u_k is a left eigenvector: A^H u_k = conj(λ_k) u_k.
        let ah = a.transpose().to_complex();
        for (k, lambda) in sys.values.iter().enumerate() {
            let uk = u.column(k);
            let lhs = ah.matvec(&uk);
            let defect: f64 = lhs
                .iter()
                .zip(&uk)
                .map(|(&l, &x)| (l - x * lambda.conj()).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(defect < 1e-9 * sys.kappa, "column {k}: defect {defect}");
        }
    }

    #[test]
    fn singular_basis_is_rejected() {
        let mut sys = eig(&RMatrix::<f64>::identity(2), EigOptions::default()).unwrap();
        sys.vectors = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        ]);
        assert!(matches!(dual_basis(&sys), Err(LaError::Singular { .. })));
    }
}
