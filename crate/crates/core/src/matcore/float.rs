//! Floating-point kernels: pivoted inversion and SVD-backed rank decisions.

use nalgebra::DMatrix;

use super::mat::{CMat, Mat, RMat};
use super::scalar::{FloatScalar, C64};
use super::Tolerance;
use crate::error::{Error, Result};

/// Gauss-Jordan inversion with partial pivoting. A pivot whose modulus falls
/// below `1e-14 * max|a_ij|` is treated as singular.
pub fn inverse<T: FloatScalar>(a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.n();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut m = a.clone();
    let mut inv = Mat::<T>::identity(n);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[(i, c)].modulus().total_cmp(&m[(j, c)].modulus()))
            .unwrap();
        if m[(p, c)].modulus() <= 1e-14 * scale {
            return Err(Error::Singular { pivot: c });
        }
        if p != c {
            for j in 0..n {
                let t = m[(p, j)];
                m[(p, j)] = m[(c, j)];
                m[(c, j)] = t;
                let t = inv[(p, j)];
                inv[(p, j)] = inv[(c, j)];
                inv[(c, j)] = t;
            }
        }
        let piv = m[(c, c)];
        for j in 0..n {
            m[(c, j)] = m[(c, j)] / piv;
            inv[(c, j)] = inv[(c, j)] / piv;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = m[(i, c)];
            if f.modulus() == 0.0 {
                continue;
            }
            for j in 0..n {
                m[(i, j)] = m[(i, j)] - f * m[(c, j)];
                inv[(i, j)] = inv[(i, j)] - f * inv[(c, j)];
            }
        }
    }
    Ok(inv)
}

fn to_na_c(a: &CMat) -> DMatrix<C64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

fn to_na_r(a: &RMat) -> DMatrix<f64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

/// Singular values in descending order.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_na_c(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// 2-norm condition number; infinite for singular input.
pub fn cond(a: &CMat) -> f64 {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Numerical rank: singular values above `tol.bound(sigma_max)`.
pub fn rank(a: &CMat, tol: Tolerance) -> usize {
    let s = singular_values(a);
    let smax = s.first().copied().unwrap_or(0.0);
    let bound = tol.bound(smax);
    s.iter().filter(|&&v| v > bound).count()
}

/// Right kernel of a real matrix by SVD, with the given singular-value bound.
pub fn real_nullspace(a: &RMat, tol: Tolerance) -> Vec<Vec<f64>> {
    let (r, c) = (a.rows(), a.cols());
    if c == 0 {
        return Vec::new();
    }
    // Pad to at least square so the SVD exposes the full right basis.
    let padded = if r < c {
        let mut p = RMat::zeros(c, c);
        p.set_block(0, 0, a);
        p
    } else {
        a.clone()
    };
    let svd = to_na_r(&padded).svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let bound = tol.bound(smax);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= bound)
        .map(|(k, _)| v_t.row(k).iter().copied().collect())
        .collect()
}

/// Residual-checked inverse used when a transform must be undone.
pub fn inverse_checked(a: &CMat) -> Result<CMat> {
    let inv = inverse(a)?;
    let n = a.n();
    let err = (&(a * &inv) - &CMat::identity(n)).norm_fro();
    if !err.is_finite() || err > 1e-6 * (n as f64).sqrt() {
        return Err(Error::Singular { pivot: n });
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_multiplies_back() {
        let a = CMat::from_rows(vec![
            vec![C64::new(1.0, 1.0), C64::new(2.0, 0.0)],
            vec![C64::new(0.0, -1.0), C64::new(3.0, 0.5)],
        ]);
        let inv = inverse(&a).unwrap();
        assert!((&(&a * &inv) - &CMat::identity(2)).norm_fro() < 1e-14);
    }

    #[test]
    fn singular_detected() {
        let a = RMat::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(inverse(&a).is_err());
    }

    #[test]
    fn nullspace_identity_and_zero() {
        let tol = Tolerance::rank_default();
        assert!(real_nullspace(&RMat::identity(3), tol).is_empty());
        assert_eq!(real_nullspace(&RMat::zeros(2, 2), tol).len(), 2);
    }

    #[test]
    fn cond_of_diag() {
        let d = CMat::from_real(&RMat::diag(&[1.0, 0.5, 4.0]));
        assert!((cond(&d) - 8.0).abs() < 1e-12);
        assert_eq!(rank(&d, Tolerance::rank_default()), 3);
    }
}
