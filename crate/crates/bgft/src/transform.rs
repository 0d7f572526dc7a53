//! The biorthogonal graph Fourier transform (BGFT).
//!
//! For a digraph Laplacian with eigendecomposition `L = VΛV⁻¹`, analysis is
//! `x̂ = V⁻¹x` and synthesis is `x = Vx̂`. Because `V` is not unitary for
//! non-normal `L`, Parseval's identity is replaced by the exact Gram-metric
//! identity `‖x‖² = x̂^H M x̂` with `M = V^H V`, plus two-sided bounds through
//! the extreme singular values of `V`. Analysis never inverts `V`: it solves
//! against a cached LU factorization.

use std::fmt;

use num_complex::Complex;
use thiserror::Error;

use crate::densela::{eig, CMatrix, EigOptions, EigenSystem, LaError, LuFactors};
use crate::digraph::Laplacian;
use crate::scalar::{dot, norm2, norm_sq, Scalar};

/// DC acceptance gate: the smallest-modulus eigenvalue must be below
/// `1e-9·‖L‖_F` for a matrix claiming to be a directed Laplacian.
pub const DC_MODE_RTOL: f64 = 1e-9;
/// Largest imaginary residue tolerated in the energy quadratic form,
/// relative to its real part.
pub const ENERGY_IMAG_RTOL: f64 = 1e-9;

/// Which side of the transform a signal lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// One complex value per vertex.
    Vertex,
    /// One complex coefficient per eigenvector, in canonical order.
    Spectral,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Vertex => write!(f, "vertex"),
            Domain::Spectral => write!(f, "spectral"),
        }
    }
}

/// Errors from transform construction and application.
#[derive(Debug, Clone, Error)]
pub enum TransformError<T: Scalar> {
    #[error("signal is in the {found} domain, expected {expected}")]
    WrongDomain { expected: Domain, found: Domain },
    #[error("{context}: expected length {expected}, got {found}")]
    LengthMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("signal entries must be finite")]
    NonFinite,
    #[error(
        "no DC mode: smallest eigenvalue modulus {modulus:e} exceeds {threshold:e}; \
         input is not a directed Laplacian"
    )]
    MissingDcMode { modulus: T, threshold: T },
    #[error("energy form is not real: imaginary residue {imaginary:e} against real part {real:e}")]
    NonRealEnergy { imaginary: T, real: T },
    #[error(transparent)]
    La(#[from] LaError<T>),
}

/// A complex-valued graph signal tagged with its domain.
///
/// The tag makes accidental double transforms a type
/// error at runtime rather than silent nonsense: `forward` only accepts
/// vertex signals, `inverse` only spectral ones, and each flips the tag.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T: Scalar> {
    values: Vec<Complex<T>>,
    domain: Domain,
}

impl<T: Scalar> Signal<T> {
    fn new(values: Vec<Complex<T>>, domain: Domain) -> Result<Self, TransformError<T>> {
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(TransformError::NonFinite);
        }
        Ok(Self { values, domain })
    }

    /// Vertex-domain signal.
    pub fn vertex(values: Vec<Complex<T>>) -> Result<Self, TransformError<T>> {
        Self::new(values, Domain::Vertex)
    }

    /// Spectral-domain coefficient vector (canonical eigenvalue order).
    pub fn spectral(values: Vec<Complex<T>>) -> Result<Self, TransformError<T>> {
        Self::new(values, Domain::Spectral)
    }

    /// Vertex-domain signal from real samples.
    pub fn vertex_real(values: &[T]) -> Result<Self, TransformError<T>> {
        Self::vertex(values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Euclidean norm `‖x‖₂`.
    pub fn norm(&self) -> T {
        norm2(&self.values)
    }
}

/// An analyzed Laplacian: eigensystem, Gram metric `M = V^H V`, and an eager
/// LU factorization of `V` shared by every analysis solve.
///
/// All fields are computed at construction, so a `Spectrum` is immutable and
/// safe to share across threads; concurrent `forward` calls reuse the same
/// factorization without synchronization.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Scalar> {
    system: EigenSystem<T>,
    gram: CMatrix<T>,
    lu: LuFactors<T>,
}

impl<T: Scalar> Spectrum<T> {
    /// Analyzes a directed Laplacian.
    ///
    /// Beyond the eigensolver's own acceptance gate this enforces the one
    /// structural fact every directed Laplacian must satisfy: a DC mode.
    /// The canonical ordering puts the smallest-modulus eigenvalue first, and
    /// it must vanish within `1e-9·‖L‖_F`.
    pub fn of_laplacian(
        lap: &Laplacian<T>,
        opts: EigOptions<T>,
    ) -> Result<Self, TransformError<T>> {
        let system = eig(lap.matrix(), opts)?;
        let modulus = system.values[0].norm();
        let threshold = T::lit(DC_MODE_RTOL) * lap.matrix().frobenius_norm();
        if modulus > threshold {
            return Err(TransformError::MissingDcMode { modulus, threshold });
        }
        Self::from_eigensystem(system)
    }

    /// Wraps an existing eigendecomposition without the DC gate, for general
    /// diagonalizable operators.
    pub fn from_eigensystem(system: EigenSystem<T>) -> Result<Self, TransformError<T>> {
        let lu = LuFactors::factor(&system.vectors)?;
        let gram = system.vectors.adjoint().mul(&system.vectors);
        Ok(Self { system, gram, lu })
    }

    pub fn n(&self) -> usize {
        self.system.vectors.rows()
    }

    /// Eigenvalues in canonical `(|λ|, Re λ, Im λ)` order.
    pub fn values(&self) -> &[Complex<T>] {
        &self.system.values
    }

    /// Right eigenvector basis `V`, one column per eigenvalue.
    pub fn vectors(&self) -> &CMatrix<T> {
        &self.system.vectors
    }

    /// Gram metric `M = V^H V` of the eigenbasis.
    pub fn gram(&self) -> &CMatrix<T> {
        &self.gram
    }

    pub fn system(&self) -> &EigenSystem<T> {
        &self.system
    }

    pub fn kappa(&self) -> T {
        self.system.kappa
    }

    pub fn sigma_min(&self) -> T {
        self.system.sigma_min
    }

    pub fn sigma_max(&self) -> T {
        self.system.sigma_max
    }

    fn expect(
        &self,
        x: &Signal<T>,
        domain: Domain,
        context: &'static str,
    ) -> Result<(), TransformError<T>> {
        if x.domain != domain {
            return Err(TransformError::WrongDomain {
                expected: domain,
                found: x.domain,
            });
        }
        if x.len() != self.n() {
            return Err(TransformError::LengthMismatch {
                context,
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Analysis `x̂ = V⁻¹x`, by LU solve against the cached factorization.
    pub fn forward(&self, x: &Signal<T>) -> Result<Signal<T>, TransformError<T>> {
        self.expect(x, Domain::Vertex, "analysis input")?;
        let coeffs = self.lu.solve_vec(&x.values)?;
        Signal::spectral(coeffs)
    }

    /// Synthesis `x = Vx̂`.
    pub fn inverse(&self, xhat: &Signal<T>) -> Result<Signal<T>, TransformError<T>> {
        self.expect(xhat, Domain::Spectral, "synthesis input")?;
        Signal::vertex(self.system.vectors.matvec(&xhat.values))
    }

    /// Vertex-domain energy from spectral coefficients via the Gram metric:
    /// `‖x‖² = x̂^H M x̂`, exactly (no Parseval approximation).
    ///
    /// The quadratic form is Hermitian so its value is real up to rounding;
    /// an imaginary residue above `1e-9` of the real part is reported as an
    /// error rather than silently dropped.
    pub fn spectral_energy(&self, xhat: &Signal<T>) -> Result<T, TransformError<T>> {
        self.expect(xhat, Domain::Spectral, "energy input")?;
        let mx = self.gram.matvec(&xhat.values);
        let q = dot(&xhat.values, &mx);
        if q.im.abs() > T::lit(ENERGY_IMAG_RTOL) * q.re.abs() && q.im != T::zero() {
            return Err(TransformError::NonRealEnergy {
                imaginary: q.im,
                real: q.re,
            });
        }
        Ok(q.re.max(T::zero()))
    }

    /// Two-sided Parseval surrogate:
    /// `σ_min(V)²‖x̂‖² ≤ ‖x‖² ≤ σ_max(V)²‖x̂‖²`, returned as `(lower, upper)`.
    /// The interval collapses exactly when `V` is unitary (κ = 1).
    pub fn parseval_bounds(&self, xhat: &Signal<T>) -> Result<(T, T), TransformError<T>> {
        self.expect(xhat, Domain::Spectral, "bounds input")?;
        let e = norm_sq(&xhat.values);
        let smin = self.system.sigma_min;
        let smax = self.system.sigma_max;
        Ok((smin * smin * e, smax * smax * e))
    }

    /// Diagonal spectral filter: analysis, pointwise multiplication by `h`
    /// (indexed in canonical order), synthesis.
    pub fn apply_filter(
        &self,
        h: &[Complex<T>],
        x: &Signal<T>,
    ) -> Result<Signal<T>, TransformError<T>> {
        if h.len() != self.n() {
            return Err(TransformError::LengthMismatch {
                context: "filter response",
                expected: self.n(),
                found: h.len(),
            });
        }
        let xhat = self.forward(x)?;
        let filtered: Vec<Complex<T>> = xhat
            .values
            .iter()
            .zip(h)
            .map(|(&c, &gain)| c * gain)
            .collect();
        self.inverse(&Signal::spectral(filtered)?)
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::densela::RMatrix;
    use crate::digraph::Digraph;
    use crate::prng::Prng;

    type C = Complex64;

    fn cycle_spectrum(n: usize) -> Spectrum<f64> {
        let lap = Digraph::<f64>::directed_cycle(n).unwrap().laplacian();
        Spectrum::of_laplacian(&lap, EigOptions::default()).unwrap()
    }

    fn perturbed_spectrum(n: usize, seed: u64) -> Spectrum<f64> {
        let lap = Digraph::<f64>::perturbed_cycle(n, 0.2, 0.8, seed)
            .unwrap()
            .laplacian();
        Spectrum::of_laplacian(&lap, EigOptions::default()).unwrap()
    }

    fn random_vertex_signal(n: usize, rng: &mut Prng) -> Signal<f64> {
        Signal::vertex(rng.complex_gaussian_vec(n)).unwrap()
    }

    fn max_diff(a: &[C], b: &[C]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_signal_is_a_dc_spike() {
        let s = cycle_spectrum(8);
        let ones = Signal::vertex_real(&[1.0; 8]).unwrap();
        let xhat = s.forward(&ones).unwrap();
        assert_eq!(xhat.domain(), Domain::Spectral);
        // ones = √8 · v₀ since v₀ is the unit constant vector.
        assert!((xhat.values()[0] - C::new(8f64.sqrt(), 0.0)).norm() < 1e-9);
        for k in 1..8 {
            assert!(xhat.values()[k].norm() < 1e-9, "leak into mode {k}");
        }
    }

    #[test]
    fn eigenvector_transforms_to_a_unit_spike() {
        let s = perturbed_spectrum(10, 3);
        let v2 = Signal::vertex(s.vectors().column(2)).unwrap();
        let xhat = s.forward(&v2).unwrap();
        for k in 0..10 {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            assert!(
                (xhat.values()[k] - C::new(expected, 0.0)).norm() < 1e-9 * s.kappa(),
                "coefficient {k}"
            );
        }
    }

    #[test]
    fn forward_then_inverse_is_the_identity() {
        let mut rng = Prng::new(17);
        for s in [cycle_spectrum(12), perturbed_spectrum(12, 5)] {
            for _ in 0..10 {
                let x = random_vertex_signal(12, &mut rng);
                let back = s.inverse(&s.forward(&x).unwrap()).unwrap();
                let tol = 1e-10 * s.kappa() * x.norm().max(1.0);
                assert!(max_diff(x.values(), back.values()) < tol);
            }
        }
    }

    #[test]
    fn gram_energy_identity_is_exact() {
        let mut rng = Prng::new(23);
        for s in [cycle_spectrum(9), perturbed_spectrum(9, 8)] {
            for _ in 0..20 {
                let x = random_vertex_signal(9, &mut rng);
                let xhat = s.forward(&x).unwrap();
                let energy = s.spectral_energy(&xhat).unwrap();
                let direct = x.norm() * x.norm();
                assert!(
                    (energy - direct).abs() <= 1e-9 * direct,
                    "energy {energy} vs ‖x‖² {direct}"
                );
            }
        }
    }

    #[test]
    fn unit_coefficient_energy_is_one() {
        // x̂ = e_k synthesizes v_k, which has unit norm; M_kk = 1.
        let s = perturbed_spectrum(7, 11);
        for k in 0..7 {
            let mut e = vec![C::new(0.0, 0.0); 7];
            e[k] = C::new(1.0, 0.0);
            let energy = s.spectral_energy(&Signal::spectral(e).unwrap()).unwrap();
            assert!((energy - 1.0).abs() < 1e-12, "mode {k}: {energy}");
        }
    }

    #[test]
    fn parseval_bounds_sandwich_the_energy() {
        let mut rng = Prng::new(29);
        let s = perturbed_spectrum(11, 2);
        assert!(s.kappa() > 1.0 + 1e-9, "perturbed basis should be oblique");
        for _ in 0..20 {
            let x = random_vertex_signal(11, &mut rng);
            let xhat = s.forward(&x).unwrap();
            let energy = s.spectral_energy(&xhat).unwrap();
            let (lo, hi) = s.parseval_bounds(&xhat).unwrap();
            let slack = 1e-12 * energy.max(1.0);
            assert!(lo <= energy + slack, "lower bound {lo} vs {energy}");
            assert!(energy <= hi + slack, "upper bound {hi} vs {energy}");
        }
    }

    #[test]
    fn unitary_basis_collapses_the_bounds() {
        let s = cycle_spectrum(10);
        assert!((s.kappa() - 1.0).abs() < 1e-9);
        let mut rng = Prng::new(31);
        let x = random_vertex_signal(10, &mut rng);
        let xhat = s.forward(&x).unwrap();
        let energy = s.spectral_energy(&xhat).unwrap();
        let (lo, hi) = s.parseval_bounds(&xhat).unwrap();
        assert!(hi - lo <= 1e-8 * energy);
        assert!((energy - 0.5 * (lo + hi)).abs() <= 1e-8 * energy);
    }

    #[test]
    fn all_pass_filter_is_the_identity() {
        let s = perturbed_spectrum(9, 13);
        let h = vec![C::new(1.0, 0.0); 9];
        let mut rng = Prng::new(37);
        let x = random_vertex_signal(9, &mut rng);
        let y = s.apply_filter(&h, &x).unwrap();
        let tol = 1e-8 * s.kappa() * s.kappa() * x.norm();
        assert!(max_diff(x.values(), y.values()) < tol);
    }

    #[test]
    fn filters_compose_pointwise() {
        let s = perturbed_spectrum(8, 19);
        let h1: Vec<C> = (0..8)
            .map(|k| C::new(1.0 / (1.0 + k as f64), 0.0))
            .collect();
        let h2: Vec<C> = (0..8).map(|k| C::new(0.3 * k as f64, 0.1)).collect();
        let h12: Vec<C> = h1.iter().zip(&h2).map(|(&a, &b)| a * b).collect();
        let mut rng = Prng::new(41);
        let x = random_vertex_signal(8, &mut rng);
        let chained = s
            .apply_filter(&h2, &s.apply_filter(&h1, &x).unwrap())
            .unwrap();
        let fused = s.apply_filter(&h12, &x).unwrap();
        let tol = 1e-8 * s.kappa() * s.kappa() * x.norm();
        assert!(max_diff(chained.values(), fused.values()) < tol);
    }

    #[test]
    fn spectral_multiplication_by_lambda_matches_the_laplacian() {
        // Filtering with h = λ is multiplication by L in the vertex domain.
        let lap = Digraph::<f64>::perturbed_cycle(9, 0.2, 0.8, 21)
            .unwrap()
            .laplacian();
        let s = Spectrum::of_laplacian(&lap, EigOptions::default()).unwrap();
        let h: Vec<C> = s.values().to_vec();
        let mut rng = Prng::new(43);
        let x = random_vertex_signal(9, &mut rng);
        let filtered = s.apply_filter(&h, &x).unwrap();
        let direct = lap.matrix().matvec_complex(x.values());
        let tol = 1e-8 * s.kappa() * s.kappa() * x.norm();
        assert!(max_diff(filtered.values(), &direct) < tol);
    }

    #[test]
    fn repeated_dc_modes_span_the_constants() {
        // Two disjoint 3-cycles: eigenvalue zero has multiplicity two, and
        // the constant vector lies in the span of the first two modes.
        let edges = [
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 0, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (5, 3, 1.0),
        ];
        let lap = Digraph::<f64>::from_edge_list(6, &edges)
            .unwrap()
            .laplacian();
        let s = Spectrum::of_laplacian(&lap, EigOptions::default()).unwrap();
        assert!(s.values()[0].norm() < 1e-9);
        assert!(s.values()[1].norm() < 1e-9);
        let ones = Signal::vertex_real(&[1.0; 6]).unwrap();
        let xhat = s.forward(&ones).unwrap();
        let outside: f64 = xhat.values()[2..].iter().map(|z| z.norm_sqr()).sum();
        let total: f64 = xhat.values().iter().map(|z| z.norm_sqr()).sum();
        assert!(outside <= 1e-9 * total);
    }

    #[test]
    fn non_laplacian_input_fails_the_dc_gate() {
        let fake = Laplacian::from_matrix(RMatrix::<f64>::identity(4));
        match Spectrum::of_laplacian(&fake, EigOptions::default()) {
            Err(TransformError::MissingDcMode { modulus, .. }) => {
                assert!((modulus - 1.0).abs() < 1e-12);
            }
            other => panic!("expected DC-gate failure, got {other:?}"),
        }
    }

    #[test]
    fn from_eigensystem_skips_the_dc_gate() {
        let sys = eig(&RMatrix::<f64>::identity(3), EigOptions::default()).unwrap();
        let s = Spectrum::from_eigensystem(sys).unwrap();
        let x = Signal::vertex_real(&[1.0, 2.0, 3.0]).unwrap();
        let xhat = s.forward(&x).unwrap();
        assert!(max_diff(x.values(), xhat.values()) < 1e-14);
    }

    #[test]
    fn domain_and_length_misuse_are_rejected() {
        let s = cycle_spectrum(4);
        let vertex = Signal::vertex_real(&[1.0; 4]).unwrap();
        let spectral = s.forward(&vertex).unwrap();
        assert!(matches!(
            s.forward(&spectral),
            Err(TransformError::WrongDomain { .. })
        ));
        assert!(matches!(
            s.inverse(&vertex),
            Err(TransformError::WrongDomain { .. })
        ));
        assert!(matches!(
            s.spectral_energy(&vertex),
            Err(TransformError::WrongDomain { .. })
        ));
        assert!(matches!(
            s.parseval_bounds(&vertex),
            Err(TransformError::WrongDomain { .. })
        ));
        let short = Signal::vertex_real(&[1.0; 3]).unwrap();
        assert!(matches!(
            s.forward(&short),
            Err(TransformError::LengthMismatch { .. })
        ));
        let h = vec![C::new(1.0, 0.0); 3];
        assert!(matches!(
            s.apply_filter(&h, &vertex),
            Err(TransformError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_signals_are_rejected() {
        assert!(matches!(
            Signal::vertex_real(&[1.0, f64::NAN]),
            Err(TransformError::NonFinite)
        ));
        assert!(matches!(
            Signal::spectral(vec![C::new(f64::INFINITY, 0.0)]),
            Err(TransformError::NonFinite)
        ));
    }
}
