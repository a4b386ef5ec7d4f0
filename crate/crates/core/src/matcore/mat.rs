//! Dense row-major matrices over any [`Scalar`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};


use super::scalar::{FloatScalar, Scalar, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type CMat = Mat<C64>;
pub type RMat = Mat<f64>;

impl<T: Scalar> Mat<T> {
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

    pub fn scalar(n: usize, v: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = v.clone();
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

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Mat { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[T]) {
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn to_c64(&self) -> CMat {
        self.map(|v| v.to_c64())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.shape_string(),
                right: other.shape_string(),
            });
        }
        Ok(self * other)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.shape_string(),
                right: other.shape_string(),
            });
        }
        Ok(())
    }

    pub fn shape_string(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reorders rows and columns: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(perm[i], perm[j])].clone())
    }

    /// Column permutation: `out[:, j] = self[:, perm[j]]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, perm[j])].clone())
    }

    pub fn hstack(parts: &[Self]) -> Self {
        let r = parts.first().map_or(0, |p| p.rows);
        let c = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(r, c);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, r);
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }
}

impl<T: FloatScalar> Mat<T> {
    pub fn norm_fro(&self) -> f64 {
        self.data
            .iter()
            .map(|v| {
                let m = v.modulus();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.modulus()))
    }
}

impl CMat {
    pub fn re(&self) -> RMat {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].re)
    }

    pub fn im(&self) -> RMat {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].im)
    }

    pub fn from_real(m: &RMat) -> Self {
        m.map(|v| C64::new(*v, 0.0))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.im.abs() <= tol)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = Mat::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for Mat<T> {
            type Output = Mat<T>;
            fn $f(self, rhs: Mat<T>) -> Mat<T> {
                (&self).$f(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Mat<T>> for Mat<T> {
            type Output = Mat<T>;
            fn $f(self, rhs: &Mat<T>) -> Mat<T> {
                (&self).$f(rhs)
            }
        }
        impl<T: Scalar> $tr<Mat<T>> for &Mat<T> {
            type Output = Mat<T>;
            fn $f(self, rhs: Mat<T>) -> Mat<T> {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> Neg for Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn additive_inverse() {
        let i2 = CMat::identity(2);
        assert!((&i2 + &(-&i2)).is_zero());
    }

    #[test]
    fn rotation_squares_to_minus_identity() {
        let j = RMat::from_rows(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert_eq!(&j * &j, RMat::scalar(2, -1.0));
    }

    #[test]
    fn conj_of_coninvolutory_times_itself() {
        let m = RMat::from_rows(vec![vec![1.0, 1.0], vec![0.0, -1.0]]);
        let m = CMat::from_real(&m);
        assert_eq!(&m.conj() * &m, CMat::identity(2));
    }

    #[test]
    fn conj_entrywise() {
        let m = CMat::from_rows(vec![vec![c(0.0, 1.0)]]);
        assert_eq!(m.conj()[(0, 0)], c(0.0, -1.0));
        let r = CMat::from_rows(vec![vec![c(2.0, 0.0), c(-3.0, 0.0)]]);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn mismatched_shapes_error() {
        let a = CMat::identity(2);
        let b = CMat::identity(3);
        assert!(matches!(a.try_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn direct_sum_and_permute() {
        let a = RMat::diag(&[1.0, 2.0]);
        let b = RMat::diag(&[3.0]);
        let s = RMat::direct_sum(&[a, b]);
        assert_eq!(s, RMat::diag(&[1.0, 2.0, 3.0]));
        assert_eq!(s.permute(&[2, 0, 1]), RMat::diag(&[3.0, 1.0, 2.0]));
    }
}
