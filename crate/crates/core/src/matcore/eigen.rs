//! Eigenvalues of dense complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift QR sweeps with deflation.

use super::mat::CMat;
use super::scalar::C64;
use crate::error::{Error, Result};

pub const DEFAULT_DESK_BOUND: usize = 16;

/// Unitary similarity to upper Hessenberg form.
pub fn hessenberg(a: &CMat) -> CMat {
    let n = a.n();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut v: Vec<C64> = (0..len).map(|i| h[(k + 1 + i, k)]).collect();
        let alpha = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            C64::new(1.0, 0.0)
        };
        v[0] += phase * alpha;
        let vn = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        // H <- (I - 2vv*) H
        for j in 0..n {
            let mut t = C64::new(0.0, 0.0);
            for i in 0..len {
                t += v[i].conj() * h[(k + 1 + i, j)];
            }
            for i in 0..len {
                h[(k + 1 + i, j)] -= v[i] * t * 2.0;
            }
        }
        // H <- H (I - 2vv*)
        for i in 0..n {
            let mut t = C64::new(0.0, 0.0);
            for j in 0..len {
                t += h[(i, k + 1 + j)] * v[j];
            }
            for j in 0..len {
                h[(i, k + 1 + j)] -= t * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    h
}

/// Rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let alpha = a / a.norm();
    (a.norm() / r, alpha * b.conj() / r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = d - (b * c) / (half + disc);
    let mu2 = d - (b * c) / (half - disc);
    let pick = |m: C64| if m.is_finite() { m } else { d };
    let (mu1, mu2) = (pick(mu1), pick(mu2));
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// All `n` eigenvalues with multiplicity. Fails for `n` above `desk_bound`
/// or when the iteration cap `500 n` is exhausted.
pub fn eigenvalues_bounded(a: &CMat, desk_bound: usize) -> Result<Vec<C64>> {
    let n = a.n();
    if n > desk_bound {
        return Err(Error::DeskScale { n, bound: desk_bound });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(a);
    let cap = 500 * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    let zero = C64::new(0.0, 0.0);
    let hnorm = h.norm_fro().max(f64::MIN_POSITIVE);
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(Error::NoConvergence { iterations: cap });
        }
        let shift = if since_deflation % 11 == 10 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.31 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let top = (k + 2).min(hi + 1);
            for i in lo..top.max(k + 2).min(hi + 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

pub fn eigenvalues(a: &CMat) -> Result<Vec<C64>> {
    eigenvalues_bounded(a, DEFAULT_DESK_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::mat::RMat;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_spectrum() {
        let a = CMat::from_real(&RMat::diag(&[1.0, 2.0, 3.0]));
        let ev = sorted(eigenvalues(&a).unwrap());
        for (e, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((e - C64::new(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_spectrum() {
        let a = CMat::from_real(&RMat::from_rows(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]));
        let ev = sorted(eigenvalues(&a).unwrap());
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn jordan_block_spectrum() {
        let a = CMat::from_real(&RMat::from_rows(vec![vec![2.0, 1.0], vec![0.0, 2.0]]));
        for e in eigenvalues(&a).unwrap() {
            assert!((e - C64::new(2.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn desk_bound_enforced() {
        let a = CMat::identity(4);
        assert!(matches!(
            eigenvalues_bounded(&a, 3),
            Err(Error::DeskScale { n: 4, bound: 3 })
        ));
    }
}
