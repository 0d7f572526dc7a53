//! Real nonsymmetric eigendecomposition.
//!
//! Pipeline: optional Osborne balancing, Householder reduction to Hessenberg
//! form, Francis double-shift QR iteration to real Schur form, eigenvector
//! back substitution, and assembly into complex eigenpairs. The reduction and
//! iteration are ports of the classical Algol/EISPACK routines (`orthes`,
//! `hqr2`) — the same lineage behind every mainstream dense solver — kept
//! structurally close to the originals on purpose: the index gymnastics are
//! load-bearing and easy to break "cleaning up".

use num_complex::Complex;

use super::{
    balance::balance, require_finite_real, svd::svd_values, CMatrix, LaError, RMatrix,
    DEFAULT_EIG_TOL,
};
use crate::scalar::Scalar;

/// Knobs for [`eig`].
#[derive(Debug, Clone, Copy)]
pub struct EigOptions<T: Scalar> {
    /// Pre-scale with a power-of-two diagonal similarity before reducing.
    /// Off by default. Scaling is exact, so eigenvalues move by at most the
    /// usual iteration noise; it can help badly scaled inputs converge.
    pub balance: bool,
    /// Acceptance gate on the relative residual `‖AV − VΛ‖_F / ‖A‖_F`.
    pub tol: T,
}

impl<T: Scalar> Default for EigOptions<T> {
    fn default() -> Self {
        Self {
            balance: false,
            tol: T::lit(DEFAULT_EIG_TOL),
        }
    }
}

/// A complete right eigensystem `AV = VΛ` with quality diagnostics.
///
/// Columns of `vectors` have unit 2-norm and a fixed phase: the entry of
/// largest modulus is real and positive (ties resolved to the lowest index).
/// Eigenpairs are sorted by `(|λ|, Re λ, Im λ)`, so conjugate pairs sit
/// adjacent with the negative imaginary part first.
#[derive(Debug, Clone)]
pub struct EigenSystem<T: Scalar> {
    /// Eigenvalues in canonical order.
    pub values: Vec<Complex<T>>,
    /// Matching right eigenvectors, one per column.
    pub vectors: CMatrix<T>,
    /// Smallest singular value of the eigenvector basis.
    pub sigma_min: T,
    /// Largest singular value of the eigenvector basis.
    pub sigma_max: T,
    /// Spectral condition number of the eigenvector basis, `σ_max/σ_min`.
    /// Infinite when the basis is numerically singular.
    pub kappa: T,
    /// Relative residual `‖AV − VΛ‖_F / ‖A‖_F` (zero for the zero matrix).
    pub residual: T,
}

/// Full eigendecomposition of a square real matrix.
///
/// Fails with [`LaError::NearDefective`] when the residual exceeds
/// `opts.tol`; the rejected system rides along in the error so callers can
/// inspect it or accept it deliberately. The QR iteration gets a total budget
/// of `30n` double steps before giving up with [`LaError::NoConvergence`].
pub fn eig<T: Scalar>(a: &RMatrix<T>, opts: EigOptions<T>) -> Result<EigenSystem<T>, LaError<T>> {
    if !a.is_square() {
        return Err(LaError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    require_finite_real(a)?;
    let n = a.rows();
    let a_norm = a.frobenius_norm();
    if a_norm == T::zero() {
        // Zero matrix: eigenvalue 0 with full multiplicity, standard basis.
        return Ok(EigenSystem {
            values: vec![Complex::new(T::zero(), T::zero()); n],
            vectors: CMatrix::identity(n),
            sigma_min: T::one(),
            sigma_max: T::one(),
            kappa: T::one(),
            residual: T::zero(),
        });
    }

    let (scale, working) = if opts.balance {
        balance(a)
    } else {
        (vec![T::one(); n], a.clone())
    };

    let mut ws = SchurWorkspace {
        n,
        h: working,
        v: RMatrix::zeros(n, n),
        d: vec![T::zero(); n],
        e: vec![T::zero(); n],
        ort: vec![T::zero(); n],
    };
    ws.reduce_to_hessenberg();
    ws.schur_decompose(30 * n)?;

    // Assemble complex eigenpairs from the real Schur data. A conjugate pair
    // occupies two adjacent real columns carrying (Re v, Im v).
    let mut values: Vec<Complex<T>> = Vec::with_capacity(n);
    let mut columns: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if ws.e[k] == T::zero() {
            values.push(Complex::new(ws.d[k], T::zero()));
            columns.push(
                (0..n)
                    .map(|i| Complex::new(ws.v[(i, k)], T::zero()))
                    .collect(),
            );
            k += 1;
        } else {
            debug_assert!(ws.e[k] > T::zero() && k + 1 < n, "pair layout violated");
            values.push(Complex::new(ws.d[k], ws.e[k]));
            columns.push(
                (0..n)
                    .map(|i| Complex::new(ws.v[(i, k)], ws.v[(i, k + 1)]))
                    .collect(),
            );
            values.push(Complex::new(ws.d[k + 1], ws.e[k + 1]));
            columns.push(
                (0..n)
                    .map(|i| Complex::new(ws.v[(i, k)], -ws.v[(i, k + 1)]))
                    .collect(),
            );
            k += 2;
        }
    }

    // Undo balancing, then fix each column's length and phase.
    for col in &mut columns {
        for (entry, s) in col.iter_mut().zip(&scale) {
            *entry = entry.scale(*s);
        }
        normalize_column(col);
    }

    // Canonical order: modulus, then real part, then imaginary part.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let ka = (values[i].norm(), values[i].re, values[i].im);
        let kb = (values[j].norm(), values[j].re, values[j].im);
        ka.partial_cmp(&kb).expect("eigenvalues are finite")
    });
    let values: Vec<Complex<T>> = order.iter().map(|&i| values[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (jnew, &jold) in order.iter().enumerate() {
        vectors.set_column(jnew, &columns[jold]);
    }

    // Diagnostics against the *original* matrix, not the balanced one.
    let mut resid_sq = T::zero();
    for (j, lambda) in values.iter().enumerate() {
        let col = vectors.column(j);
        let av = a.matvec_complex(&col);
        for i in 0..n {
            resid_sq += (av[i] - col[i] * lambda).norm_sqr();
        }
    }
    let residual = resid_sq.sqrt() / a_norm;
    let sigma = svd_values(&vectors)?;
    let sigma_max = sigma[0];
    let sigma_min = sigma[n - 1];
    let kappa = if sigma_min > T::zero() {
        sigma_max / sigma_min
    } else {
        T::infinity()
    };

    let system = EigenSystem {
        values,
        vectors,
        sigma_min,
        sigma_max,
        kappa,
        residual,
    };
    // Negated comparison so a NaN residual is also rejected.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(system.residual <= opts.tol) {
        return Err(LaError::NearDefective {
            kappa,
            residual,
            tol: opts.tol,
            system: Box::new(system),
        });
    }
    Ok(system)
}

/// Unit norm plus the phase convention: the largest-modulus entry becomes
/// real and positive, ties resolved toward the lowest index.
fn normalize_column<T: Scalar>(col: &mut [Complex<T>]) {
    let norm = col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if norm > T::zero() {
        for z in col.iter_mut() {
            *z = z.unscale(norm);
        }
    }
    let mut best = 0;
    let mut best_mag = T::zero();
    for (i, z) in col.iter().enumerate() {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag > T::zero() {
        let rot = (col[best] / best_mag).conj();
        for z in col.iter_mut() {
            *z *= rot;
        }
    }
}

/// Complex scalar division `(xr + i·xi) / (yr + i·yi)` without intermediate
/// overflow (Smith's formula).
fn cdiv<T: Scalar>(xr: T, xi: T, yr: T, yi: T) -> (T, T) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

/// Shared state for the reduction and iteration; `h` is destroyed in place,
/// `v` accumulates the transformations, `(d, e)` receive Re/Im eigenvalues.
struct SchurWorkspace<T: Scalar> {
    n: usize,
    h: RMatrix<T>,
    v: RMatrix<T>,
    d: Vec<T>,
    e: Vec<T>,
    ort: Vec<T>,
}

impl<T: Scalar> SchurWorkspace<T> {
    /// Householder reduction to upper Hessenberg form with accumulation of
    /// the orthogonal transformations into `v` (orthes + ortran).
    fn reduce_to_hessenberg(&mut self) {
        let n = self.n;
        let Self { h, v, ort, .. } = self;
        let low = 0usize;
        let high = n - 1;

        for m in (low + 1)..high {
            // Scale the column to avoid under/overflow.
            let mut scale = T::zero();
            for i in m..=high {
                scale += h[(i, m - 1)].abs();
            }
            if scale != T::zero() {
                let mut hsum = T::zero();
                for i in (m..=high).rev() {
                    ort[i] = h[(i, m - 1)] / scale;
                    hsum += ort[i] * ort[i];
                }
                let mut g = hsum.sqrt();
                if ort[m] > T::zero() {
                    g = -g;
                }
                hsum -= ort[m] * g;
                ort[m] -= g;

                // Apply H ← (I − uuᵀ/h)·H·(I − uuᵀ/h) with u in ort[m..=high].
                for j in m..n {
                    let mut f = T::zero();
                    for i in (m..=high).rev() {
                        f += ort[i] * h[(i, j)];
                    }
                    f /= hsum;
                    for i in m..=high {
                        h[(i, j)] -= f * ort[i];
                    }
                }
                for i in 0..=high {
                    let mut f = T::zero();
                    for j in (m..=high).rev() {
                        f += ort[j] * h[(i, j)];
                    }
                    f /= hsum;
                    for j in m..=high {
                        h[(i, j)] -= f * ort[j];
                    }
                }
                ort[m] = scale * ort[m];
                h[(m, m - 1)] = scale * g;
            }
        }

        // Accumulate the transformations (ortran). The reflector vectors are
        // still parked below the subdiagonal of h.
        for i in 0..n {
            for j in 0..n {
                v[(i, j)] = if i == j { T::one() } else { T::zero() };
            }
        }
        for m in ((low + 1)..high).rev() {
            if h[(m, m - 1)] != T::zero() {
                for i in (m + 1)..=high {
                    ort[i] = h[(i, m - 1)];
                }
                for j in m..=high {
                    let mut g = T::zero();
                    for i in m..=high {
                        g += ort[i] * v[(i, j)];
                    }
                    // Double division avoids possible underflow.
                    g = (g / ort[m]) / h[(m, m - 1)];
                    for i in m..=high {
                        v[(i, j)] += g * ort[i];
                    }
                }
            }
        }
    }

    /// Francis double-shift QR iteration from Hessenberg to real Schur form,
    /// plus eigenvector back substitution and back transformation (hqr2).
    ///
    /// `max_steps` bounds the *total* number of double QR steps across all
    /// eigenvalues.
    #[allow(clippy::too_many_lines)]
    fn schur_decompose(&mut self, max_steps: usize) -> Result<(), LaError<T>> {
        let nn = self.n;
        let Self { h, v, d, e, .. } = self;
        let high = nn - 1;
        let eps = T::epsilon();
        let two = T::lit(2.0);
        let mut exshift = T::zero();
        let mut p;
        let mut q;
        let mut r = T::zero();
        let mut s = T::zero();
        let mut z = T::zero();
        let mut t;
        let mut w;
        let mut x;
        let mut y;

        // Norm over the structurally meaningful part (upper triangle plus
        // the subdiagonal); anything below is Householder leftovers.
        let mut norm = T::zero();
        for i in 0..nn {
            for j in i.saturating_sub(1)..nn {
                norm += h[(i, j)].abs();
            }
        }

        let mut n_cur: isize = nn as isize - 1;
        let mut iter = 0usize;
        let mut steps = 0usize;
        while n_cur >= 0 {
            let n = n_cur as usize;

            // Look for a single small subdiagonal element.
            let mut l = n;
            while l > 0 {
                s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
                if s == T::zero() {
                    s = norm;
                }
                if h[(l, l - 1)].abs() < eps * s {
                    break;
                }
                l -= 1;
            }

            if l == n {
                // One root found.
                h[(n, n)] += exshift;
                d[n] = h[(n, n)];
                e[n] = T::zero();
                n_cur -= 1;
                iter = 0;
            } else if l == n - 1 {
                // Two roots found in the trailing 2×2 block.
                w = h[(n, n - 1)] * h[(n - 1, n)];
                p = (h[(n - 1, n - 1)] - h[(n, n)]) / two;
                q = p * p + w;
                z = q.abs().sqrt();
                h[(n, n)] += exshift;
                h[(n - 1, n - 1)] += exshift;
                x = h[(n, n)];
                if q >= T::zero() {
                    // Real pair.
                    z = if p >= T::zero() { p + z } else { p - z };
                    d[n - 1] = x + z;
                    d[n] = d[n - 1];
                    if z != T::zero() {
                        d[n] = x - w / z;
                    }
                    e[n - 1] = T::zero();
                    e[n] = T::zero();
                    x = h[(n, n - 1)];
                    s = x.abs() + z.abs();
                    p = x / s;
                    q = z / s;
                    r = (p * p + q * q).sqrt();
                    p /= r;
                    q /= r;
                    // Row modification.
                    for j in (n - 1)..nn {
                        z = h[(n - 1, j)];
                        h[(n - 1, j)] = q * z + p * h[(n, j)];
                        h[(n, j)] = q * h[(n, j)] - p * z;
                    }
                    // Column modification.
                    for i in 0..=n {
                        z = h[(i, n - 1)];
                        h[(i, n - 1)] = q * z + p * h[(i, n)];
                        h[(i, n)] = q * h[(i, n)] - p * z;
                    }
                    // Accumulate transformations.
                    for i in 0..=high {
                        z = v[(i, n - 1)];
                        v[(i, n - 1)] = q * z + p * v[(i, n)];
                        v[(i, n)] = q * v[(i, n)] - p * z;
                    }
                } else {
                    // Complex pair.
                    d[n - 1] = x + p;
                    d[n] = x + p;
                    e[n - 1] = z;
                    e[n] = -z;
                }
                n_cur -= 2;
                iter = 0;
            } else {
                // No convergence yet: form a shift and chase one bulge.
                x = h[(n, n)];
                y = T::zero();
                w = T::zero();
                if l < n {
                    y = h[(n - 1, n - 1)];
                    w = h[(n, n - 1)] * h[(n - 1, n)];
                }

                // Original ad hoc shift (Wilkinson).
                if iter == 10 {
                    exshift += x;
                    for i in 0..=n {
                        h[(i, i)] -= x;
                    }
                    s = h[(n, n - 1)].abs() + h[(n - 1, n - 2)].abs();
                    x = T::lit(0.75) * s;
                    y = x;
                    w = T::lit(-0.4375) * s * s;
                }

                // MATLAB's ad hoc shift.
                if iter == 30 {
                    s = (y - x) / two;
                    s = s * s + w;
                    if s > T::zero() {
                        s = s.sqrt();
                        if y < x {
                            s = -s;
                        }
                        s = x - w / ((y - x) / two + s);
                        for i in 0..=n {
                            h[(i, i)] -= s;
                        }
                        exshift += s;
                        x = T::lit(0.964);
                        y = x;
                        w = x;
                    }
                }

                iter += 1;
                steps += 1;
                if steps > max_steps {
                    return Err(LaError::NoConvergence {
                        algorithm: "Francis QR",
                        iterations: max_steps,
                    });
                }

                // Look for two consecutive small subdiagonal elements.
                let mut m = n - 2;
                loop {
                    z = h[(m, m)];
                    r = x - z;
                    s = y - z;
                    p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                    q = h[(m + 1, m + 1)] - z - r - s;
                    r = h[(m + 2, m + 1)];
                    s = p.abs() + q.abs() + r.abs();
                    p /= s;
                    q /= s;
                    r /= s;
                    if m == l {
                        break;
                    }
                    if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                        < eps
                            * (p.abs()
                                * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                    {
                        break;
                    }
                    m -= 1;
                }
                for i in (m + 2)..=n {
                    h[(i, i - 2)] = T::zero();
                    if i > m + 2 {
                        h[(i, i - 3)] = T::zero();
                    }
                }

                // Double QR step on rows l..=n and columns m..=n.
                for k in m..n {
                    let notlast = k != n - 1;
                    if k != m {
                        p = h[(k, k - 1)];
                        q = h[(k + 1, k - 1)];
                        r = if notlast {
                            h[(k + 2, k - 1)]
                        } else {
                            T::zero()
                        };
                        x = p.abs() + q.abs() + r.abs();
                        if x == T::zero() {
                            continue;
                        }
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                    s = (p * p + q * q + r * r).sqrt();
                    if p < T::zero() {
                        s = -s;
                    }
                    if s != T::zero() {
                        if k != m {
                            h[(k, k - 1)] = -s * x;
                        } else if l != m {
                            h[(k, k - 1)] = -h[(k, k - 1)];
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;

                        // Row modification.
                        for j in k..nn {
                            p = h[(k, j)] + q * h[(k + 1, j)];
                            if notlast {
                                p += r * h[(k + 2, j)];
                                h[(k + 2, j)] -= p * z;
                            }
                            h[(k, j)] -= p * x;
                            h[(k + 1, j)] -= p * y;
                        }

                        // Column modification.
                        for i in 0..=n.min(k + 3) {
                            p = x * h[(i, k)] + y * h[(i, k + 1)];
                            if notlast {
                                p += z * h[(i, k + 2)];
                                h[(i, k + 2)] -= p * r;
                            }
                            h[(i, k)] -= p;
                            h[(i, k + 1)] -= p * q;
                        }

                        // Accumulate transformations.
                        for i in 0..=high {
                            p = x * v[(i, k)] + y * v[(i, k + 1)];
                            if notlast {
                                p += z * v[(i, k + 2)];
                                v[(i, k + 2)] -= p * r;
                            }
                            v[(i, k)] -= p;
                            v[(i, k + 1)] -= p * q;
                        }
                    }
                }
            }
        }

        // Back substitution: eigenvectors of the triangular form, written
        // into the columns of h.
        if norm == T::zero() {
            return Ok(());
        }
        for nb in (0..nn).rev() {
            let pv = d[nb];
            let qv = e[nb];
            if qv == T::zero() {
                // Real vector.
                let mut l = nb;
                h[(nb, nb)] = T::one();
                for i in (0..nb).rev() {
                    w = h[(i, i)] - pv;
                    r = T::zero();
                    for j in l..=nb {
                        r += h[(i, j)] * h[(j, nb)];
                    }
                    if e[i] < T::zero() {
                        z = w;
                        s = r;
                    } else {
                        l = i;
                        if e[i] == T::zero() {
                            if w != T::zero() {
                                h[(i, nb)] = -r / w;
                            } else {
                                h[(i, nb)] = -r / (eps * norm);
                            }
                        } else {
                            // Solve the real 2×2 block equation.
                            x = h[(i, i + 1)];
                            y = h[(i + 1, i)];
                            q = (d[i] - pv) * (d[i] - pv) + e[i] * e[i];
                            t = (x * s - z * r) / q;
                            h[(i, nb)] = t;
                            if x.abs() > z.abs() {
                                h[(i + 1, nb)] = (-r - w * t) / x;
                            } else {
                                h[(i + 1, nb)] = (-s - y * t) / z;
                            }
                        }

                        // Overflow control.
                        t = h[(i, nb)].abs();
                        if (eps * t) * t > T::one() {
                            for j in i..=nb {
                                h[(j, nb)] /= t;
                            }
                        }
                    }
                }
            } else if qv < T::zero() {
                // Complex vector, stored as (Re, Im) in columns nb-1, nb.
                let mut l = nb - 1;

                // The last vector component is chosen so the block is
                // triangular.
                if h[(nb, nb - 1)].abs() > h[(nb - 1, nb)].abs() {
                    h[(nb - 1, nb - 1)] = qv / h[(nb, nb - 1)];
                    h[(nb - 1, nb)] = -(h[(nb, nb)] - pv) / h[(nb, nb - 1)];
                } else {
                    let (cr, ci) = cdiv(T::zero(), -h[(nb - 1, nb)], h[(nb - 1, nb - 1)] - pv, qv);
                    h[(nb - 1, nb - 1)] = cr;
                    h[(nb - 1, nb)] = ci;
                }
                h[(nb, nb - 1)] = T::zero();
                h[(nb, nb)] = T::one();
                for i in (0..nb - 1).rev() {
                    let mut ra = T::zero();
                    let mut sa = T::zero();
                    for j in l..=nb {
                        ra += h[(i, j)] * h[(j, nb - 1)];
                        sa += h[(i, j)] * h[(j, nb)];
                    }
                    w = h[(i, i)] - pv;

                    if e[i] < T::zero() {
                        z = w;
                        r = ra;
                        s = sa;
                    } else {
                        l = i;
                        if e[i] == T::zero() {
                            let (cr, ci) = cdiv(-ra, -sa, w, qv);
                            h[(i, nb - 1)] = cr;
                            h[(i, nb)] = ci;
                        } else {
                            // Solve the complex 2×2 block equation.
                            x = h[(i, i + 1)];
                            y = h[(i + 1, i)];
                            let mut vr = (d[i] - pv) * (d[i] - pv) + e[i] * e[i] - qv * qv;
                            let vi = (d[i] - pv) * two * qv;
                            if vr == T::zero() && vi == T::zero() {
                                vr =
                                    eps * norm * (w.abs() + qv.abs() + x.abs() + y.abs() + z.abs());
                            }
                            let (cr, ci) =
                                cdiv(x * r - z * ra + qv * sa, x * s - z * sa - qv * ra, vr, vi);
                            h[(i, nb - 1)] = cr;
                            h[(i, nb)] = ci;
                            if x.abs() > z.abs() + qv.abs() {
                                h[(i + 1, nb - 1)] =
                                    (-ra - w * h[(i, nb - 1)] + qv * h[(i, nb)]) / x;
                                h[(i + 1, nb)] = (-sa - w * h[(i, nb)] - qv * h[(i, nb - 1)]) / x;
                            } else {
                                let (cr, ci) =
                                    cdiv(-r - y * h[(i, nb - 1)], -s - y * h[(i, nb)], z, qv);
                                h[(i + 1, nb - 1)] = cr;
                                h[(i + 1, nb)] = ci;
                            }
                        }

                        // Overflow control.
                        t = h[(i, nb - 1)].abs().max(h[(i, nb)].abs());
                        if (eps * t) * t > T::one() {
                            for j in i..=nb {
                                h[(j, nb - 1)] /= t;
                                h[(j, nb)] /= t;
                            }
                        }
                    }
                }
            }
        }

        // Back transformation to eigenvectors of the pre-Hessenberg matrix.
        for j in (0..nn).rev() {
            for i in 0..=high {
                z = T::zero();
                for k in 0..=j.min(high) {
                    z += v[(i, k)] * h[(k, j)];
                }
                v[(i, j)] = z;
            }
        }
        Ok(())
    }
}
