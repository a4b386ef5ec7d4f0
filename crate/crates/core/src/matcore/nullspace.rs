//! Real-linear kernels for antilinear matrix equations.
//!
//! An `n x k` complex unknown `X` is flattened to `2nk` real coordinates:
//! real parts row-major first, then imaginary parts.

use super::float::real_nullspace;
use super::mat::{CMat, RMat};
use super::scalar::C64;
use super::Tolerance;

pub fn flatten(x: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = x.data().iter().map(|z| z.re).collect();
    v.extend(x.data().iter().map(|z| z.im));
    v
}

pub fn unflatten(v: &[f64], rows: usize, cols: usize) -> CMat {
    let nk = rows * cols;
    CMat::from_fn(rows, cols, |i, j| {
        let p = i * cols + j;
        C64::new(v[p], v[nk + p])
    })
}

/// Real matrix of the map `X -> A X - conj(X) B` for `A` n x n, `B` k x k.
pub fn consim_operator(a: &CMat, b: &CMat) -> RMat {
    let (n, k) = (a.n(), b.n());
    let nk = n * k;
    let mut op = RMat::zeros(2 * nk, 2 * nk);
    for i in 0..n {
        for j in 0..k {
            let row = i * k + j;
            // (A X)_ij = sum_l A_il X_lj
            for l in 0..n {
                let c = a[(i, l)];
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let col = l * k + j;
                op[(row, col)] += c.re;
                op[(row, nk + col)] -= c.im;
                op[(nk + row, col)] += c.im;
                op[(nk + row, nk + col)] += c.re;
            }
            // -(conj(X) B)_ij = -sum_l conj(X_il) B_lj
            for l in 0..k {
                let c = b[(l, j)];
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let col = i * k + l;
                op[(row, col)] -= c.re;
                op[(row, nk + col)] -= c.im;
                op[(nk + row, col)] -= c.im;
                op[(nk + row, nk + col)] += c.re;
            }
        }
    }
    op
}

/// Kernel basis of a real operator matrix at the given singular-value bound.
pub fn real_linear_nullspace(op: &RMat, tol: Tolerance) -> Vec<Vec<f64>> {
    real_nullspace(op, tol)
}

/// All `X` (as complex `n x k` matrices) with `A X = conj(X) B`.
pub fn consim_kernel(a: &CMat, b: &CMat, tol: Tolerance) -> Vec<CMat> {
    let op = consim_operator(a, b);
    real_linear_nullspace(&op, tol)
        .into_iter()
        .map(|v| unflatten(&v, a.n(), b.n()))
        .collect()
}
