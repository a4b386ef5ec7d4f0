//! Exact elimination over [`ExactField`] scalars. No rounding happens here.


use super::mat::Mat;
use super::poly::Poly;
use super::scalar::ExactField;
use crate::error::{Error, Result};

/// Reduced row echelon form; returns the pivot columns alongside.
pub fn rref<T: ExactField>(a: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = T::one() / m[(r, c)].clone();
        for j in c..cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                if !m[(r, j)].is_zero() {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<T: ExactField>(a: &Mat<T>) -> usize {
    rref(a).1.len()
}

/// Basis of the right kernel `{x : A x = 0}`.
pub fn nullspace<T: ExactField>(a: &Mat<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

pub fn inverse<T: ExactField>(a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.n();
    let aug = Mat::hstack(&[a.clone(), Mat::identity(n)]);
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular {
            pivot: pivots.iter().take_while(|&&p| p < n).count(),
        });
    }
    Ok(r.submatrix(0, n, n, n))
}

pub fn det<T: ExactField>(a: &Mat<T>) -> T {
    let n = a.n();
    let mut m = a.clone();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return T::zero();
        };
        if p != c {
            for j in 0..n {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(c, j)].clone();
                m[(c, j)] = tmp;
            }
            d = -d;
        }
        let piv = m[(c, c)].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone() / piv.clone();
            for j in c..n {
                m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
            }
        }
    }
    d
}

/// Monic characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier.
pub fn char_poly<T: ExactField>(a: &Mat<T>) -> Poly<T> {
    let n = a.n();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = Mat::<T>::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        m = next;
        let am = a * &m;
        coeffs[n - k] = -am.trace() / T::from_i64(k as i64);
    }
    Poly::new(coeffs)
}

/// Incrementally grown subspace of `T^n`, kept in reduced echelon form for
/// exact membership tests.
#[derive(Clone, Debug)]
pub struct Span<T> {
    dim: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: ExactField> Span<T> {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi = wi.clone() - f.clone() * ri.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / w[p].clone();
        let w: Vec<T> = w.into_iter().map(|x| x * inv.clone()).collect();
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (ri, wi) in row.iter_mut().zip(&w) {
                *ri = ri.clone() - f.clone() * wi.clone();
            }
        }
        self.rows.push((p, w));
        true
    }
}
