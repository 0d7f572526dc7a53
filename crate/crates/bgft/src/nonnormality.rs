//! Scalar diagnostics for how far an operator is from normal.
//!
//! Four complementary measures, all dimensionless:
//!
//! - `α(A) = ‖A − Aᵀ‖_F / ‖A‖_F` — structural asymmetry of the matrix itself;
//! - `δ(A) = ‖AAᵀ − AᵀA‖_F / ‖A‖_F²` — commutator departure (zero iff normal);
//! - `Δ(A) = (‖A‖_F² − Σ|λ_k|²)/n` — Henrici's departure from normality;
//! - `κ(V) = σ_max(V)/σ_min(V)` — conditioning of the eigenvector basis.
//!
//! For a normal matrix δ, Δ vanish and κ = 1; all of them grow together as
//! the eigenbasis turns oblique and the transform's Parseval interval widens.

use thiserror::Error;

use num_complex::Complex;

use crate::densela::{eig, EigOptions, EigenSystem, LaError, RMatrix};
use crate::digraph::Digraph;
use crate::scalar::Scalar;

/// Below this smallest singular value the eigenbasis is treated as
/// numerically defective and κ is refused rather than reported as a huge
/// meaningless number.
pub const DEFECTIVE_SIGMA_MIN: f64 = 1e-14;
/// Henrici's departure is clamped to zero when rounding pushes it this far
/// below zero.
pub const HENRICI_CLAMP: f64 = 1e-9;

/// Errors from the metric computations.
#[derive(Debug, Clone, Error)]
pub enum NonnormalityError<T: Scalar> {
    #[error("expected {expected} eigenvalues, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("eigenbasis is numerically defective: σ_min = {sigma_min:e}")]
    NumericallyDefective { sigma_min: T },
    #[error(transparent)]
    La(#[from] LaError<T>),
}

/// One row of the metrics table: every diagnostic for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport<T: Scalar> {
    pub graph_label: String,
    pub alpha: T,
    pub delta: T,
    pub henrici: T,
    pub kappa: T,
}

/// Asymmetry index `α(A) = ‖A − Aᵀ‖_F / ‖A‖_F`, with `α(0) = 0`.
///
/// `α = 0` exactly for symmetric matrices; the directed cycle achieves
/// `α = 1`; `α` never exceeds 2.
pub fn asymmetry_index<T: Scalar>(a: &RMatrix<T>) -> T {
    let norm = a.frobenius_norm();
    if norm == T::zero() {
        return T::zero();
    }
    let n = a.rows();
    let mut skew_sq = T::zero();
    for i in 0..n {
        for j in 0..n {
            let d = a[(i, j)] - a[(j, i)];
            skew_sq += d * d;
        }
    }
    skew_sq.sqrt() / norm
}

/// Commutator departure `δ(A) = ‖AAᵀ − AᵀA‖_F / ‖A‖_F²`, with `δ(0) = 0`.
/// Zero exactly when `A` is normal.
pub fn commutator_departure<T: Scalar>(a: &RMatrix<T>) -> T {
    let norm = a.frobenius_norm();
    if norm == T::zero() {
        return T::zero();
    }
    let n = a.rows();
    let at = a.transpose();
    let mut comm_sq = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut aat = T::zero();
            let mut ata = T::zero();
            for k in 0..n {
                aat += a[(i, k)] * at[(k, j)];
                ata += at[(i, k)] * a[(k, j)];
            }
            let d = aat - ata;
            comm_sq += d * d;
        }
    }
    comm_sq.sqrt() / (norm * norm)
}

/// Henrici's departure from normality `Δ(A) = (‖A‖_F² − Σ|λ_k|²)/n`.
///
/// Non-negative in exact arithmetic (Schur's inequality); tiny negative
/// rounding residue within `1e-9` of zero is clamped to zero. The eigenvalue
/// list must have exactly `n` entries.
pub fn henrici_departure<T: Scalar>(
    a: &RMatrix<T>,
    values: &[Complex<T>],
) -> Result<T, NonnormalityError<T>> {
    let n = a.rows();
    if values.len() != n {
        return Err(NonnormalityError::CountMismatch {
            expected: n,
            found: values.len(),
        });
    }
    let frob_sq = a.frobenius_norm().powi(2);
    let spectral_sq: T = values.iter().map(|z| z.norm_sqr()).sum();
    let raw = (frob_sq - spectral_sq) / T::from_count(n);
    if raw < T::zero() && raw >= -T::lit(HENRICI_CLAMP) {
        Ok(T::zero())
    } else {
        Ok(raw)
    }
}

/// Eigenbasis condition number `κ(V) = σ_max(V)/σ_min(V)` from the singular
/// values stored in the eigensystem.
///
/// Refuses with [`NonnormalityError::NumericallyDefective`] when
/// `σ_min < 1e-14`: at that point `V` is singular to working precision and a
/// condition number would be noise.
pub fn condition_number<T: Scalar>(e: &EigenSystem<T>) -> Result<T, NonnormalityError<T>> {
    if e.sigma_min < T::lit(DEFECTIVE_SIGMA_MIN) {
        return Err(NonnormalityError::NumericallyDefective {
            sigma_min: e.sigma_min,
        });
    }
    Ok(e.sigma_max / e.sigma_min)
}

/// All four metrics of a graph's Laplacian, labelled for the metrics table.
pub fn report<T: Scalar>(
    g: &Digraph<T>,
    label: &str,
    opts: EigOptions<T>,
) -> Result<MetricsReport<T>, NonnormalityError<T>> {
    let lap = g.laplacian();
    let system = eig(lap.matrix(), opts)?;
    let alpha = asymmetry_index(lap.matrix());
    let delta = commutator_departure(lap.matrix());
    let henrici = henrici_departure(lap.matrix(), &system.values)?;
    let kappa = condition_number(&system)?;
    Ok(MetricsReport {
        graph_label: label.to_string(),
        alpha,
        delta,
        henrici,
        kappa,
    })
}
