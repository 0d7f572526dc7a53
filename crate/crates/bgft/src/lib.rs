//! Biorthogonal spectral analysis on directed graphs.
//!
//! The combinatorial directed Laplacian `L = D_out − A` of a weighted digraph
//! is generally non-normal: its eigenvectors are not orthogonal, so the
//! classical graph Fourier toolbox (Parseval identity, Rayleigh-quotient
//! frequency ordering) does not apply as-is. This crate implements the
//! biorthogonal replacement and quantifies exactly how much geometry is lost:
//!
//! - [`digraph`] — digraph model, deterministic generators, edge-list
//!   ingestion, and the directed Laplacian;
//! - [`densela`] — self-contained dense complex linear algebra: LU, pivoted
//!   QR least squares, one-sided Jacobi singular values, Osborne balancing,
//!   and a Hessenberg/real-Schur eigensolver with eigenvector extraction;
//! - [`transform`] — the Biorthogonal Graph Fourier Transform (analysis
//!   `x̂ = V⁻¹x`, synthesis `x = Vx̂`), the Gram-metric energy identity, and
//!   diagonal spectral filtering;
//! - [`nonnormality`] — scalar non-normality diagnostics: asymmetry index α,
//!   commutator departure δ, Henrici departure Δ, and κ(V);
//! - [`variation`] — directed total variation `‖Lx‖₂²`, its two-sided
//!   spectral-domain bounds, and the canonical frequency ordering;
//! - [`sampling`] — bandlimited sampling plans, least-squares recovery, and
//!   the explicit stability constants of the noise/amplification bounds;
//! - [`experiments`] — deterministic experiment drivers behind the `bgft`
//!   CLI, emitting plot-ready CSV.
//!
//! All numeric kernels are generic over the real scalar via [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases below fix `f64`, which is what the CLI and
//! the experiment drivers use.

pub mod densela;
pub mod digraph;
pub mod experiments;
pub mod nonnormality;
pub mod prng;
pub mod sampling;
pub mod scalar;
pub mod transform;
pub mod variation;

pub use scalar::Scalar;

/// Complex double-precision scalar.
pub type C64 = num_complex::Complex<f64>;

/// Double-precision digraph.
pub type Digraph64 = digraph::Digraph<f64>;
/// Double-precision directed Laplacian.
pub type Laplacian64 = digraph::Laplacian<f64>;
/// Double-precision real dense matrix.
pub type RMatrix64 = densela::RMatrix<f64>;
/// Double-precision complex dense matrix.
pub type CMatrix64 = densela::CMatrix<f64>;
/// Double-precision eigendecomposition.
pub type EigenSystem64 = densela::EigenSystem<f64>;
/// Double-precision spectrum (eigensystem + Gram metric + solver cache).
pub type Spectrum64 = transform::Spectrum<f64>;
/// Double-precision graph signal.
pub type Signal64 = transform::Signal<f64>;
/// Double-precision non-normality report.
pub type MetricsReport64 = nonnormality::MetricsReport<f64>;
/// Double-precision sampling plan.
pub type SamplingPlan64 = sampling::SamplingPlan<f64>;
/// Double-precision recovery result.
pub type RecoveryResult64 = sampling::RecoveryResult<f64>;
