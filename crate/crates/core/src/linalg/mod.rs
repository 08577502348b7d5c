//! Dense complex matrices and the handful of kernels the block-sparse layer
//! needs: GEMM, Householder QR, Jacobi SVD and eigensolvers, and a strided
//! copy/accumulate kernel used for index permutations and traces.

mod eig;
mod qr;
mod strided;
mod svd;

use std::fmt;

use crate::sector::C64;

pub use eig::{eig_normal, eigh};
pub use qr::{lq, qr};
pub use strided::{strided_axpy, StridedView};
pub use svd::svd;

/// Column-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        let mut c = Matrix::zeros(self.rows, other.cols);
        gemm(C64::new(1.0, 0.0), self, other, C64::new(0.0, 0.0), &mut c);
        c
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Copy of rows `r0..r0+nr`, columns `c0..c0+nc`.
    pub fn sub_matrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        Matrix::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_sub_matrix(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for j in 0..m.cols {
            for i in 0..m.rows {
                self[(r0 + i, c0 + j)] = m[(i, j)];
            }
        }
    }

    /// Distance of `self† self` from the identity (max entry).
    pub fn isometry_error(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&Matrix::identity(self.cols))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self[(i, j)];
                write!(f, " {:>9.5}{:+.5}i", x.re, x.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `c = alpha * a * b + beta * c`.
pub fn gemm(alpha: C64, a: &Matrix, b: &Matrix, beta: C64, c: &mut Matrix) {
    assert_eq!(a.cols, b.rows, "gemm inner dimension");
    assert_eq!((c.rows, c.cols), (a.rows, b.cols), "gemm output shape");
    let (m, k, n) = (a.rows, a.cols, b.cols);
    if m == 0 || n == 0 {
        return;
    }
    if k == 0 {
        for x in c.data.iter_mut() {
            *x *= beta;
        }
        return;
    }
    // SAFETY: C64 is repr(C) with two f64 fields, matching [f64; 2]; the
    // strides describe column-major buffers of exactly the asserted shapes.
    unsafe {
        matrixmultiply::zgemm(
            matrixmultiply::CGemmOption::Standard,
            matrixmultiply::CGemmOption::Standard,
            m,
            k,
            n,
            [alpha.re, alpha.im],
            a.data.as_ptr() as *const [f64; 2],
            1,
            m as isize,
            b.data.as_ptr() as *const [f64; 2],
            1,
            k as isize,
            [beta.re, beta.im],
            c.data.as_mut_ptr() as *mut [f64; 2],
            1,
            m as isize,
        );
    }
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm2(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal columns appended to `q` (m×k, orthonormal) until it has
/// `target` columns; uses Gram-Schmidt (twice) on unit vectors.
pub(crate) fn complete_basis(q: &mut Matrix, replace: &[usize]) {
    let m = q.rows;
    let mut e = 0;
    for &j in replace {
        loop {
            assert!(e < m, "no room to complete basis");
            let mut v = vec![C64::new(0.0, 0.0); m];
            v[e] = C64::new(1.0, 0.0);
            e += 1;
            for _ in 0..2 {
                for k in 0..q.cols {
                    if k == j || (replace.contains(&k) && k > j) {
                        continue;
                    }
                    let c = dot(q.col(k), &v);
                    for (x, y) in v.iter_mut().zip(q.col(k)) {
                        *x -= c * y;
                    }
                }
            }
            let nv = norm2(&v);
            if nv > 0.5 {
                for (x, y) in q.col_mut(j).iter_mut().zip(&v) {
                    *x = y / nv;
                }
                break;
            }
        }
    }
}
