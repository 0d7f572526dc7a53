//! Diagonal balancing (Osborne), restricted to powers of two.
//!
//! Replaces `A` with `D⁻¹AD` where `D` is diagonal with power-of-two entries,
//! chosen so each row/column pair has comparable 1-norms. Scaling by exact
//! powers of the radix perturbs no mantissa bit, so the eigenvalues of the
//! balanced matrix are bit-identical to a similarity transform of the input;
//! only the conditioning of the subsequent reduction improves.

use super::RMatrix;
use crate::scalar::Scalar;

const MAX_PASSES: usize = 100;

/// Balances a square real matrix. Returns the diagonal of `D` and the
/// balanced matrix `D⁻¹AD`. An eigenvector `w` of the balanced matrix maps
/// back to an eigenvector of `A` via `v_i = d_i · w_i`.
pub fn balance<T: Scalar>(a: &RMatrix<T>) -> (Vec<T>, RMatrix<T>) {
    let n = a.rows();
    debug_assert!(a.is_square());
    let mut b = a.clone();
    let mut scale = vec![T::one(); n];
    let radix = T::lit(2.0);
    let radix_sq = radix * radix;

    for _ in 0..MAX_PASSES {
        let mut converged = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c += b[(j, i)].abs();
                    r += b[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let g = r / radix;
            while c < g {
                f *= radix;
                c *= radix_sq;
            }
            let g = r * radix;
            while c >= g {
                f /= radix;
                c /= radix_sq;
            }
            if (c + r) / f < T::lit(0.95) * s {
                converged = false;
                scale[i] *= f;
                let g = T::one() / f;
                for j in 0..n {
                    b[(i, j)] *= g;
                }
                for j in 0..n {
                    b[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
    (scale, b)
}
