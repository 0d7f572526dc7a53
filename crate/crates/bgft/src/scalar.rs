//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is generic over the underlying real float; complex
//! quantities are `num_complex::Complex<T>` over the same `T`. Concrete `f64`
//! aliases live at the crate root.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar underlying all matrices and signals.
///
/// Implemented for `f32` and `f64`. Tolerance defaults throughout the crate
/// are stated as `f64` literals and converted through [`Scalar::lit`]; they are
/// calibrated for `f64`, so `f32` instantiations are best treated as
/// reduced-precision smoke configurations.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant (tolerances, defaults) into `Self`.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("constant must be representable in the scalar type")
    }

    /// Converts a count into `Self`.
    fn from_count(value: usize) -> Self {
        Self::from_usize(value).expect("count must be representable in the scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate's scalar type.
pub type CScalar<T> = Complex<T>;

/// Squared Euclidean norm of a complex vector.
pub fn norm_sq<T: Scalar>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean norm of a complex vector.
pub fn norm2<T: Scalar>(v: &[Complex<T>]) -> T {
    norm_sq(v).sqrt()
}

/// Hermitian inner product `⟨a, b⟩ = Σ conj(a_i)·b_i`.
pub fn dot<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
