//! Bandlimited sampling and stable least-squares recovery.
//!
//! A signal bandlimited to the modes `Ω` is `x = V_Ω c`. Observing it on the
//! sample vertices `M` gives `y = B c` with `B = P_M V_Ω`, and recovery is
//! the least-squares solve `ĉ = B⁺y`. Everything about stability is carried
//! by `γ = σ_min(B)`: the plan is usable exactly when `γ > 0`, and noisy
//! recovery obeys `‖x̂ − x‖ ≤ σ_max(V_Ω)·‖η‖/γ`.

use num_complex::Complex;
use thiserror::Error;

use crate::densela::{least_squares, svd_values, CMatrix, LaError};
use crate::scalar::{norm2, Scalar};
use crate::transform::{Signal, Spectrum, TransformError};

/// Relative σ threshold below which a sampling operator is declared
/// rank-deficient and its γ reported as exactly zero.
pub const SAMPLING_RANK_RTOL: f64 = 1e-10;

/// Errors from plan construction and recovery.
#[derive(Debug, Clone, Error)]
pub enum SamplingError<T: Scalar> {
    #[error("{kind} set must not be empty")]
    EmptySet { kind: &'static str },
    #[error("{kind} index {index} appears more than once")]
    DuplicateIndex { kind: &'static str, index: usize },
    #[error("{kind} index {index} is out of range for {n} vertices")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        n: usize,
    },
    #[error("expected {expected} observations, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("plan is rank-deficient (γ = 0): the samples cannot distinguish the band")]
    RankDeficientPlan,
    #[error("observations must be finite")]
    NonFinite,
    #[error(transparent)]
    La(#[from] LaError<T>),
    #[error(transparent)]
    Transform(#[from] TransformError<T>),
}

/// A frozen sampling design: band `Ω`, sample set `M`, the sampling operator
/// `B = P_M V_Ω`, and its stability constants.
#[derive(Debug, Clone)]
pub struct SamplingPlan<T: Scalar> {
    omega: Vec<usize>,
    samples: Vec<usize>,
    v_omega: CMatrix<T>,
    b: CMatrix<T>,
    gamma: T,
    vnorm: T,
    full_rank: bool,
}

/// Output of a recovery solve.
#[derive(Debug, Clone)]
pub struct RecoveryResult<T: Scalar> {
    /// Recovered vertex-domain signal `x̂ = V_Ω ĉ` on all `n` vertices.
    pub x_hat: Signal<T>,
    /// Recovered band coefficients `ĉ`.
    pub c_hat: Vec<Complex<T>>,
    /// Data misfit `‖Bĉ − y‖₂` at the samples.
    pub residual: T,
    /// `σ_max(V_Ω)·‖η‖/γ` when a noise norm was supplied.
    pub bound_noise: Option<T>,
}

fn check_index_set<T: Scalar>(
    kind: &'static str,
    set: &[usize],
    n: usize,
) -> Result<(), SamplingError<T>> {
    if set.is_empty() {
        return Err(SamplingError::EmptySet { kind });
    }
    for &index in set {
        if index >= n {
            return Err(SamplingError::IndexOutOfRange { kind, index, n });
        }
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(SamplingError::DuplicateIndex {
                kind,
                index: pair[0],
            });
        }
    }
    Ok(())
}

/// Builds a sampling plan for band `omega` (spectral indices in canonical
/// order) observed at vertices `samples`.
///
/// Never fails just because the design is poor: an unusable design — fewer
/// samples than modes, or samples blind to part of the band — comes back as
/// a plan flagged rank-deficient with `γ = 0`, so experiment drivers can
/// count and skip it. Index-set problems (duplicates, out of range, empty)
/// are hard errors.
pub fn make_plan<T: Scalar>(
    s: &Spectrum<T>,
    omega: &[usize],
    samples: &[usize],
) -> Result<SamplingPlan<T>, SamplingError<T>> {
    let n = s.n();
    check_index_set("band", omega, n)?;
    check_index_set("sample", samples, n)?;
    let v_omega = s.vectors().select_columns(omega);
    let b = v_omega.select_rows(samples);
    let sigma_b = svd_values(&b)?;
    let smax = sigma_b[0];
    let smin = sigma_b[sigma_b.len() - 1];
    let full_rank = smin > T::zero() && smin >= T::lit(SAMPLING_RANK_RTOL) * smax;
    let gamma = if full_rank { smin } else { T::zero() };
    let vnorm = svd_values(&v_omega)?[0];
    Ok(SamplingPlan {
        omega: omega.to_vec(),
        samples: samples.to_vec(),
        v_omega,
        b,
        gamma,
        vnorm,
        full_rank,
    })
}

impl<T: Scalar> SamplingPlan<T> {
    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn samples(&self) -> &[usize] {
        &self.samples
    }

    /// The sampling operator `B = P_M V_Ω` (`m × K`).
    pub fn operator(&self) -> &CMatrix<T> {
        &self.b
    }

    /// The full synthesis operator of the band, `V_Ω` (`n × K`).
    pub fn v_omega(&self) -> &CMatrix<T> {
        &self.v_omega
    }

    /// `σ_min(B)`; exactly zero when the plan is rank-deficient.
    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// `σ_max(V_Ω)`.
    pub fn vnorm(&self) -> T {
        self.vnorm
    }

    pub fn is_full_rank(&self) -> bool {
        self.full_rank
    }

    pub fn band_size(&self) -> usize {
        self.omega.len()
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }
}

fn recover_impl<T: Scalar>(
    plan: &SamplingPlan<T>,
    y: &[Complex<T>],
    eta_norm: Option<T>,
) -> Result<RecoveryResult<T>, SamplingError<T>> {
    if !plan.full_rank {
        return Err(SamplingError::RankDeficientPlan);
    }
    if y.len() != plan.sample_count() {
        return Err(SamplingError::LengthMismatch {
            expected: plan.sample_count(),
            found: y.len(),
        });
    }
    if y.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SamplingError::NonFinite);
    }
    let c_hat = least_squares(&plan.b, y)?;
    let x_hat = Signal::vertex(plan.v_omega.matvec(&c_hat))?;
    let fitted = plan.b.matvec(&c_hat);
    let misfit: Vec<Complex<T>> = fitted.iter().zip(y).map(|(&f, &o)| f - o).collect();
    Ok(RecoveryResult {
        x_hat,
        c_hat,
        residual: norm2(&misfit),
        bound_noise: eta_norm.map(|e| noise_bound(plan, e)),
    })
}

/// Noiseless recovery `ĉ = B⁺y`, `x̂ = V_Ω ĉ`.
///
/// Requires a full-rank plan (`γ > 0`); a rank-deficient plan is
/// unrecoverable by construction.
pub fn recover<T: Scalar>(
    plan: &SamplingPlan<T>,
    y: &[Complex<T>],
) -> Result<RecoveryResult<T>, SamplingError<T>> {
    recover_impl(plan, y, None)
}

/// Recovery from noisy observations, additionally reporting the worst-case
/// error bound `σ_max(V_Ω)·‖η‖/γ` for the supplied noise norm.
pub fn recover_noisy<T: Scalar>(
    plan: &SamplingPlan<T>,
    y: &[Complex<T>],
    eta_norm: T,
) -> Result<RecoveryResult<T>, SamplingError<T>> {
    recover_impl(plan, y, Some(eta_norm))
}

/// Worst-case vertex-domain recovery error `σ_max(V_Ω)·‖η‖/γ` for noise of
/// norm `‖η‖` at the samples. Requires `γ > 0`; infinite otherwise.
pub fn noise_bound<T: Scalar>(plan: &SamplingPlan<T>, eta_norm: T) -> T {
    debug_assert!(plan.gamma > T::zero(), "noise bound needs a full-rank plan");
    if plan.gamma > T::zero() {
        plan.vnorm * eta_norm / plan.gamma
    } else {
        T::infinity()
    }
}

/// Worst-case relative spectral-coefficient amplification `κ·‖η‖/‖x̂‖` of
/// vertex-domain noise with norm `‖η‖` against coefficients of norm `‖x̂‖`.
/// Requires `coeff_norm > 0`.
pub fn amplification_bound<T: Scalar>(kappa: T, eta_norm: T, coeff_norm: T) -> T {
    assert!(
        coeff_norm > T::zero(),
        "amplification bound needs nonzero coefficients"
    );
    kappa * eta_norm / coeff_norm
}
