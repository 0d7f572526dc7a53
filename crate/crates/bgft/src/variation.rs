//! Directed total variation and the canonical frequency ordering.
//!
//! `TV_G(x) = ‖Lx‖₂²` measures how much a signal disagrees with where its
//! edges point; it vanishes exactly on the DC modes. In the spectral domain
//! the same quantity is pinched between `σ_min(V)²·Σ|λ_k|²|x̂_k|²` and
//! `σ_max(V)²·Σ|λ_k|²|x̂_k|²`, so `|λ|` is the right notion of frequency and
//! the two-sided bound collapses to an equality exactly when the basis is
//! unitary.

use num_complex::Complex;

use crate::digraph::Laplacian;
use crate::scalar::{norm_sq, Scalar};
use crate::transform::{Domain, Signal, Spectrum, TransformError};

/// A permutation that sorts eigenvalues into canonical frequency order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyOrder {
    permutation: Vec<usize>,
}

impl FrequencyOrder {
    /// `permutation[k]` is the input index of the k-th lowest frequency.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(k, &p)| k == p)
    }

    /// Reorders a slice: output position `k` takes input position
    /// `permutation[k]`.
    pub fn apply<V: Copy>(&self, items: &[V]) -> Vec<V> {
        assert_eq!(items.len(), self.permutation.len(), "length mismatch");
        self.permutation.iter().map(|&p| items[p]).collect()
    }
}

/// Canonical frequency order: stable sort by `(|λ|, Re λ, Im λ)`.
///
/// Stability pins the order of exactly repeated eigenvalues to their input
/// order, so the permutation is deterministic.
pub fn frequency_order<T: Scalar>(values: &[Complex<T>]) -> FrequencyOrder {
    let mut permutation: Vec<usize> = (0..values.len()).collect();
    permutation.sort_by(|&i, &j| {
        let a = (values[i].norm(), values[i].re, values[i].im);
        let b = (values[j].norm(), values[j].re, values[j].im);
        a.partial_cmp(&b).expect("eigenvalues must be finite")
    });
    FrequencyOrder { permutation }
}

/// Directed total variation `TV_G(x) = ‖Lx‖₂²` of a vertex signal.
pub fn directed_tv<T: Scalar>(lap: &Laplacian<T>, x: &Signal<T>) -> Result<T, TransformError<T>> {
    if x.domain() != Domain::Vertex {
        return Err(TransformError::WrongDomain {
            expected: Domain::Vertex,
            found: x.domain(),
        });
    }
    if x.len() != lap.n() {
        return Err(TransformError::LengthMismatch {
            context: "total-variation input",
            expected: lap.n(),
            found: x.len(),
        });
    }
    Ok(norm_sq(&lap.matrix().matvec_complex(x.values())))
}

/// Two-sided spectral bounds on the directed total variation:
/// `σ_min(V)²·S ≤ TV_G(x) ≤ σ_max(V)²·S` with `S = Σ|λ_k|²|x̂_k|²`,
/// returned as `(lower, upper)`.
pub fn tv_bounds<T: Scalar>(
    s: &Spectrum<T>,
    xhat: &Signal<T>,
) -> Result<(T, T), TransformError<T>> {
    if xhat.domain() != Domain::Spectral {
        return Err(TransformError::WrongDomain {
            expected: Domain::Spectral,
            found: xhat.domain(),
        });
    }
    if xhat.len() != s.n() {
        return Err(TransformError::LengthMismatch {
            context: "total-variation bounds input",
            expected: s.n(),
            found: xhat.len(),
        });
    }
    let weighted: T = s
        .values()
        .iter()
        .zip(xhat.values())
        .map(|(lambda, c)| lambda.norm_sqr() * c.norm_sqr())
        .sum();
    let smin = s.sigma_min();
    let smax = s.sigma_max();
    Ok((smin * smin * weighted, smax * smax * weighted))
}
