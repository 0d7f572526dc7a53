//! Dense row-major matrix storage, real and complex.

use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::scalar::Scalar;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from nested row slices; rows must all have `cols` entries.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real(a: &RMatrix<T>) -> Self {
        Self {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex<T>]) {
        assert_eq!(col.len(), self.rows);
        for (i, &z) in col.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, x.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |m, v| m.max(v))
    }

    /// New matrix from the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        assert!(cols.iter().all(|&j| j < self.cols), "column out of range");
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// New matrix from the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        assert!(rows.iter().all(|&i| i < self.rows), "row out of range");
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }
}

impl<T: Scalar> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> RMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Real matrix times complex vector.
    pub fn matvec_complex(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, x.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| b * a).sum())
            .collect()
    }

    pub fn to_complex(&self) -> CMatrix<T> {
        CMatrix::from_real(self)
    }
}

impl<T: Scalar> Index<(usize, usize)> for RMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for RMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(-2.0, 0.0)],
        ]);
        let ah = a.adjoint();
        assert_eq!(ah[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(ah[(1, 0)], Complex64::new(3.0, 1.0));
    }

    #[test]
    fn mul_against_hand_product() {
        let a = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        let b = CMatrix::from_rows(&[
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)],
        ]);
        let c = a.mul(&b);
        assert_eq!(c[(0, 0)], Complex64::new(2.0, 1.0));
        assert_eq!(c[(0, 1)], Complex64::new(1.0, -2.0));
        assert_eq!(c[(1, 0)], Complex64::new(4.0, 3.0));
        assert_eq!(c[(1, 1)], Complex64::new(3.0, -4.0));
    }

    #[test]
    fn frobenius_norm_matches_definition() {
        let a = CMatrix::<f64>::from_rows(&[
            vec![Complex64::new(3.0, 4.0)],
            vec![Complex64::new(0.0, 0.0)],
        ]);
        assert!((a.frobenius_norm() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn select_rows_and_columns() {
        let a = RMatrix::from_fn(3, 3, |i, j| (3 * i + j) as f64);
        let c = a.to_complex().select_rows(&[2, 0]);
        assert_eq!(c[(0, 1)].re, 7.0);
        assert_eq!(c[(1, 2)].re, 2.0);
        let k = a.to_complex().select_columns(&[1]);
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(2, 0)].re, 7.0);
    }

    #[test]
    fn real_matvec_complex_vector() {
        let a = RMatrix::from_rows(&[vec![1.0, -1.0], vec![0.0, 2.0]]);
        let x = [Complex64::new(1.0, 1.0), Complex64::new(2.0, -1.0)];
        let y = a.matvec_complex(&x);
        assert_eq!(y[0], Complex64::new(-1.0, 2.0));
        assert_eq!(y[1], Complex64::new(4.0, -2.0));
    }
}
