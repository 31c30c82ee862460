//! Small dense row-major matrices over [`Real`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, PartialEq)]
pub struct Mat<T = f64> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
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
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| T::from_f64(rows[i][j]))
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
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

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * &rhs[(k, j)];
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    /// `self * rhs` for operands already known to be conformant.
    pub(crate) fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        self.matmul(rhs).expect("conformant operands")
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip_map(rhs, |a, b| a.clone() + b)
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip_map(rhs, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        self.map(|a| a.clone() * s)
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip_map(&self, rhs: &Mat<T>, f: impl Fn(&T, &T) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Largest absolute entry, rounded to `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].to_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Real::is_finite)
    }

    /// Rows and columns restricted to `idx`, in the given order.
    pub fn select(&self, idx: &[usize]) -> Mat<T> {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn to_f64(&self) -> Mat<f64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Real::to_f64).collect(),
        }
    }

    pub fn row_vec(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self[(i, j)].to_f64()).collect()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let p = pivot_row(&a, k);
            if a[(p, k)].is_zero() {
                return T::zero();
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            for i in (k + 1)..n {
                let f = a[(i, k)].clone() / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = a[(i, j)].clone() - f.clone() * &a[(k, j)];
                    a[(i, j)] = v;
                }
            }
            det = det * &pivot;
        }
        det
    }

    /// Solves `self * X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        assert!(self.is_square());
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let p = pivot_row(&a, k);
            if a[(p, k)].is_zero() {
                return Err(Error::Numerical("singular matrix in linear solve".into()));
            }
            if p != k {
                a.swap_rows(p, k);
                b.swap_rows(p, k);
            }
            let pivot = a[(k, k)].clone();
            for i in (k + 1)..n {
                let f = a[(i, k)].clone() / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = a[(i, j)].clone() - f.clone() * &a[(k, j)];
                    a[(i, j)] = v;
                }
                for j in 0..b.cols {
                    let v = b[(i, j)].clone() - f.clone() * &b[(k, j)];
                    b[(i, j)] = v;
                }
            }
        }
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = b[(i, j)].clone();
                for k in (i + 1)..n {
                    acc = acc - a[(i, k)].clone() * &b[(k, j)];
                }
                b[(i, j)] = acc / &a[(i, i)];
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mat<f64> {
    /// Promotes every entry exactly into another precision.
    pub fn cast<U: Real>(&self) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| U::from_f64(x)).collect(),
        }
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

fn pivot_row<T: Real>(a: &Mat<T>, k: usize) -> usize {
    let mut best = k;
    let mut best_val = a[(k, k)].abs();
    for i in (k + 1)..a.rows {
        let v = a[(i, k)].abs();
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.6e} ", self[(i, j)].to_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;

    #[test]
    fn determinant_of_permutation_and_triangular() {
        let p: Mat = Mat::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert_eq!(p.det(), -1.0);
        let u: Mat = Mat::from_rows(&[vec![2.0, 5.0], vec![0.0, 3.0]]);
        assert_eq!(u.det(), 6.0);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a: Mat = Mat::from_rows(&[
            vec![4.0, -2.0, 1.0],
            vec![-2.0, 4.0, -2.0],
            vec![1.0, -2.0, 4.0],
        ]);
        let x: Mat = Mat::from_rows(&[vec![1.0], vec![2.0], vec![3.0]]);
        let b = a.mul(&x);
        let got = a.solve(&b).unwrap();
        assert!(got.sub(&x).max_abs() < 1e-14);
    }

    #[test]
    fn singular_solve_is_reported() {
        let a: Mat = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(a.solve(&Mat::identity(2)).is_err());
    }

    #[test]
    fn extended_determinant_survives_cancellation() {
        // det = 1 from entries of order 1e12: hopeless in f64, exact here.
        let big = 1e12;
        let m: Mat<Extended> =
            Mat::from_rows(&[vec![big, big + 1.0], vec![big - 1.0, big]]);
        assert!((m.det().to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn mismatched_product_is_an_error() {
        let a: Mat = Mat::zeros(2, 3);
        let b: Mat = Mat::zeros(2, 3);
        assert!(matches!(
            a.matmul(&b),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }
}
