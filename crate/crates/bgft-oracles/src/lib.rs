//! Independent reference computations used by the `bgft` test suites.
//!
//! Everything here deliberately avoids the solver machinery in `bgft`: the
//! characteristic polynomial comes from cofactor expansion, its roots from
//! Durand–Kerner iteration, and Hermitian eigenvalues from a classical
//! two-sided Jacobi sweep. These routes are slow (factorial in the matrix
//! dimension for the determinant) but simple enough to trust, which is the
//! point: they cross-check the production Hessenberg/Schur and one-sided
//! Jacobi paths without sharing any code with them.
//!
//! Only `f64` is supported; oracles run at desk scale (n ≤ 8 or so).

use num_complex::Complex;

pub type C64 = Complex<f64>;

/// Dense polynomial with ascending real coefficients: `p[k]` multiplies `x^k`.
pub mod poly {
    /// Adds two coefficient vectors.
    pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] += c;
        }
        out
    }

    /// Multiplies two coefficient vectors (convolution).
    pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        if a.is_empty() || b.is_empty() {
            return vec![0.0];
        }
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
        a.iter().map(|&c| c * s).collect()
    }

    /// Horner evaluation at a complex point.
    pub fn eval(a: &[f64], z: super::C64) -> super::C64 {
        let mut acc = super::C64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Characteristic polynomial `det(A − λI)` of a real row-major `n×n` matrix,
/// by Laplace cofactor expansion over polynomial entries. Exponential cost;
/// intended for `n ≤ 6`.
pub fn char_poly(a: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n, "matrix must be n*n");
    // Entries of A − λI as degree ≤ 1 polynomials.
    let entries: Vec<Vec<f64>> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                vec![a[idx], -1.0]
            } else {
                vec![a[idx]]
            }
        })
        .collect();
    det_poly(&entries, n)
}

fn det_poly(m: &[Vec<f64>], n: usize) -> Vec<f64> {
    if n == 1 {
        return m[0].clone();
    }
    let mut acc = vec![0.0];
    for j in 0..n {
        // Minor removing row 0 and column j.
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for i in 1..n {
            for k in 0..n {
                if k != j {
                    minor.push(m[i * n + k].clone());
                }
            }
        }
        let cofactor = det_poly(&minor, n - 1);
        let signed = if j % 2 == 0 {
            poly::mul(&m[j], &cofactor)
        } else {
            poly::scale(&poly::mul(&m[j], &cofactor), -1.0)
        };
        acc = poly::add(&acc, &signed);
    }
    acc
}

/// All complex roots of a real-coefficient polynomial by Durand–Kerner
/// simultaneous iteration. Coefficients ascending; the leading coefficient
/// must be nonzero.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<C64> {
    let degree = coeffs.len() - 1;
    assert!(degree >= 1, "polynomial must have degree >= 1");
    let lead = coeffs[degree];
    assert!(lead != 0.0, "leading coefficient must be nonzero");
    let monic: Vec<f64> = coeffs.iter().map(|&c| c / lead).collect();

    // Radius heuristic keeps the initial ring around the root magnitudes.
    let radius = 1.0 + monic[..degree].iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..degree)
        .map(|k| seed.powu(k as u32 + 1) / seed.norm().powi(k as i32 + 1) * radius * 0.9)
        .collect();

    let tol = 1e-13;
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let zi = roots[i];
            let mut denom = C64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge deterministically.
                roots[i] += C64::new(1e-8, 1e-8);
                max_step = f64::INFINITY;
                continue;
            }
            let step = poly::eval(&monic, zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm());
        }
        let scale = 1.0 + roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if max_step <= tol * scale {
            break;
        }
    }
    roots
}

/// Optimal matching distance between two equally sized complex multisets:
/// `min over permutations π of max_i |a_i − b_π(i)|`. Brute force, n ≤ 8.
pub fn matching_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets must have equal size");
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    assert!(n <= 8, "brute-force matching limited to n <= 8");
    let mut used = vec![false; n];
    fn go(a: &[C64], b: &[C64], i: usize, used: &mut [bool], cur: f64, best: &mut f64) {
        if cur >= *best {
            return; // prune: max over the partial assignment already worse
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(a, b, i + 1, used, cur.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(a, b, 0, &mut used, 0.0, &mut best);
    best
}

/// Directed Hausdorff-style set distance: the larger of the two one-sided
/// nearest-neighbour maxima. Useful when the multisets are well separated.
pub fn set_distance(a: &[C64], b: &[C64]) -> f64 {
    let one_sided = |xs: &[C64], ys: &[C64]| {
        xs.iter()
            .map(|x| {
                ys.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// Eigenvalues of a Hermitian matrix (row-major, `n×n`) by classical
/// two-sided Jacobi rotations. Returns the eigenvalues in descending order.
pub fn hermitian_eigenvalues(h: &[C64], n: usize) -> Vec<f64> {
    assert_eq!(h.len(), n * n, "matrix must be n*n");
    let mut m = h.to_vec();
    let norm: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return vec![0.0; n];
    }
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-14 * norm {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phase = apq / apq.norm(); // e^{i·arg(apq)}
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update: H ← H·J with J = [[c, s],[−s·e^{−iφ}, c·e^{−iφ}]].
                for i in 0..n {
                    let hp = m[i * n + p];
                    let hq = m[i * n + q];
                    m[i * n + p] = hp * c - hq * s * phase.conj();
                    m[i * n + q] = hp * s + hq * c * phase.conj();
                }
                // Row update: H ← J^H·H.
                for j in 0..n {
                    let hp = m[p * n + j];
                    let hq = m[q * n + j];
                    m[p * n + j] = hp * c - hq * s * phase;
                    m[q * n + j] = hp * s + hq * c * phase;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

/// Reference eigenvalues of the directed n-cycle Laplacian:
/// `λ_k = 1 − e^{2πik/n}` for `k = 0, …, n−1`.
pub fn cycle_laplacian_eigenvalues(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            C64::new(1.0 - theta.cos(), -theta.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_2x2() {
        // det([[1−λ, 2], [3, 4−λ]]) = λ² − 5λ − 2.
        let p = char_poly(&[1.0, 2.0, 3.0, 4.0], 2);
        assert_eq!(p, vec![-2.0, -5.0, 1.0]);
    }

    #[test]
    fn char_poly_identity_3x3() {
        // det(I − λI) = (1 − λ)³ = 1 − 3λ + 3λ² − λ³.
        let a = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        let p = char_poly(&a, 3);
        assert_eq!(p, vec![1.0, -3.0, 3.0, -1.0]);
    }

    #[test]
    fn durand_kerner_real_roots() {
        // (x−1)(x−2)(x−3) = x³ − 6x² + 11x − 6.
        let roots = durand_kerner(&[-6.0, 11.0, -6.0, 1.0]);
        let expected = [C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)];
        assert!(matching_distance(&roots, &expected) < 1e-9);
    }

    #[test]
    fn durand_kerner_complex_roots() {
        // x² + 1 = 0.
        let roots = durand_kerner(&[1.0, 0.0, 1.0]);
        let expected = [C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
        assert!(matching_distance(&roots, &expected) < 1e-10);
    }

    #[test]
    fn durand_kerner_scaled_leading_coefficient() {
        // 2x² − 8 = 0 → ±2.
        let roots = durand_kerner(&[-8.0, 0.0, 2.0]);
        let expected = [C64::new(2.0, 0.0), C64::new(-2.0, 0.0)];
        assert!(matching_distance(&roots, &expected) < 1e-10);
    }

    #[test]
    fn matching_distance_handles_permutations() {
        let a = [C64::new(1.0, 1.0), C64::new(2.0, -1.0), C64::new(0.0, 0.0)];
        let b = [a[2], a[0], a[1]];
        assert_eq!(matching_distance(&a, &b), 0.0);
    }

    #[test]
    fn hermitian_jacobi_known_2x2() {
        // [[2, i], [−i, 2]] has eigenvalues {3, 1}.
        let h = [
            C64::new(2.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
            C64::new(2.0, 0.0),
        ];
        let values = hermitian_eigenvalues(&h, 2);
        assert!((values[0] - 3.0).abs() < 1e-12);
        assert!((values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_jacobi_diagonal() {
        let h = [
            C64::new(5.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
        ];
        let values = hermitian_eigenvalues(&h, 2);
        assert_eq!(values, vec![5.0, -1.0]);
    }

    #[test]
    fn cycle_eigenvalues_lie_on_unit_circle_about_one() {
        for n in 3..=12 {
            for lambda in cycle_laplacian_eigenvalues(n) {
                assert!(((lambda - C64::new(1.0, 0.0)).norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
