//! Parameters of the real skew block subtracted from a diagonal pair so the
//! remainder has two distinct real eigenvalues.

use crate::error::{Error, Result};
use crate::matcore::RMat;

use super::pairs::m_block;

/// Consecutive diagonal positions `(2k, 2k+1)` of an upper bidiagonal matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSpec {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Coupling inside the pair, 0 or 1.
    pub eps: f64,
    /// Coupling from this pair to the next one.
    pub right_coupling: f64,
}

impl PairSpec {
    /// No real skew block leaves real eigenvalues for `lambda I_2`.
    pub fn is_forbidden(&self) -> bool {
        self.eps == 0.0 && self.lambda1 == self.lambda2
    }
}

/// `M(a, b)` with `b != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewParams {
    pub a: f64,
    pub b: f64,
}

impl SkewParams {
    pub fn block(&self) -> RMat {
        m_block(&self.a, &self.b)
    }
}

pub const PARAM_CAP: f64 = 1e3;
pub const B_FLOOR: f64 = 1e-3;
pub const SEPARATION: f64 = 1e-2;
const CANDIDATES: usize = 400;

/// Pair specs of an even-size upper bidiagonal matrix.
pub fn pair_specs(b: &RMat) -> Vec<PairSpec> {
    let n = b.n();
    (0..n / 2)
        .map(|k| {
            let p = 2 * k;
            PairSpec {
                lambda1: b[(p, p)],
                lambda2: b[(p + 1, p + 1)],
                eps: b[(p, p + 1)],
                right_coupling: if p + 2 < n { b[(p + 1, p + 2)] } else { 0.0 },
            }
        })
        .collect()
}

/// Discriminant of the remainder `[[l1, eps], [0, l2]] - M(a, b)`:
/// `(l1 - l2 - 2a)^2 + 4 (eps - b)(1 + a^2) / b`.
pub fn discriminant(p: &PairSpec, s: &SkewParams) -> f64 {
    let d = p.lambda1 - p.lambda2 - 2.0 * s.a;
    d * d + 4.0 * (p.eps - s.b) * (1.0 + s.a * s.a) / s.b
}

/// Parameters for the spread `s` (the root difference), if admissible.
fn params_for_spread(p: &PairSpec, s: f64) -> Option<SkewParams> {
    let delta = p.lambda1 - p.lambda2;
    let out = if p.eps == 0.0 {
        if delta == 0.0 {
            return None;
        }
        let a = (delta * delta - 4.0 - s * s) / (4.0 * delta);
        SkewParams {
            a,
            b: (1.0 + a * a).sqrt(),
        }
    } else {
        // a = 0: s^2 = delta^2 + 4 (eps - b) / b
        let denom = s * s - delta * delta + 4.0 * p.eps;
        if denom <= 0.0 {
            return None;
        }
        SkewParams {
            a: 0.0,
            b: 4.0 * p.eps / denom,
        }
    };
    (out.a.abs() <= PARAM_CAP && out.b.abs() >= B_FLOOR && out.b.abs() <= PARAM_CAP)
        .then_some(out)
}

/// Parameters whose remainder eigenvalues are real, distinct and at least
/// [`SEPARATION`] (scaled) away from `used`; returns them with the
/// eigenvalues.
pub fn choose_pair_params(p: &PairSpec, used: &[f64]) -> Result<(SkewParams, [f64; 2])> {
    if p.is_forbidden() {
        return Err(Error::InvalidParameters(format!(
            "pair ({}, {}) without coupling has eigenvalues lambda +- i for every real skew block",
            p.lambda1, p.lambda2
        )));
    }
    let delta = p.lambda1 - p.lambda2;
    let scale = 1.0f64.max(p.lambda1.abs()).max(p.lambda2.abs());
    let gap = SEPARATION * scale;
    let step = 0.1 * 1.0f64.max(delta.abs());
    let s0 = if p.eps == 0.0 {
        (delta * delta - 4.0).max(0.0).sqrt().max(step)
    } else {
        2.0
    };
    let mid = (p.lambda1 + p.lambda2) / 2.0;
    for k in 0..CANDIDATES {
        // s0, s0 + step, s0 - step, s0 + 2 step, ...
        let off = step * (k.div_ceil(2) as f64) * 1.0009f64.powi(k as i32);
        let s = if k % 2 == 0 { s0 + off } else { s0 - off };
        if s <= 0.0 {
            continue;
        }
        let Some(params) = params_for_spread(p, s) else {
            continue;
        };
        let nu = [mid + s / 2.0, mid - s / 2.0];
        if nu.iter().all(|v| used.iter().all(|u| (u - v).abs() > gap)) {
            return Ok((params, nu));
        }
    }
    Err(Error::NoTransform(format!(
        "no admissible skew block for the pair ({}, {})",
        p.lambda1, p.lambda2
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l1: f64, l2: f64, eps: f64) -> PairSpec {
        PairSpec {
            lambda1: l1,
            lambda2: l2,
            eps,
            right_coupling: 0.0,
        }
    }

    fn remainder_eigs(p: &PairSpec, s: &SkewParams) -> (f64, f64) {
        let m = s.block();
        let r = [
            [p.lambda1 - m[(0, 0)], p.eps - m[(0, 1)]],
            [-m[(1, 0)], p.lambda2 - m[(1, 1)]],
        ];
        let tr = r[0][0] + r[1][1];
        let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
        let disc = tr * tr - 4.0 * det;
        assert!(disc > 0.0, "disc {disc}");
        ((tr + disc.sqrt()) / 2.0, (tr - disc.sqrt()) / 2.0)
    }

    #[test]
    fn jordan_pair_half() {
        let p = spec(0.0, 0.0, 1.0);
        let s = SkewParams { a: 0.0, b: 0.5 };
        assert!((discriminant(&p, &s) - 4.0).abs() < 1e-15);
        let (x, y) = remainder_eigs(&p, &s);
        assert!((x - 1.0).abs() < 1e-14 && (y + 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_pair_sign_of_a() {
        let p = spec(3.0, 0.0, 0.0);
        let neg = SkewParams { a: 2.0, b: 1.0 };
        assert!((discriminant(&p, &neg) - (9.0 - 24.0 - 4.0)).abs() < 1e-12);
        let pos = SkewParams { a: -2.0, b: 1.0 };
        assert!((discriminant(&p, &pos) - 29.0).abs() < 1e-12);
    }

    #[test]
    fn chosen_eigenvalues_match_oracle() {
        let mut used = Vec::new();
        for p in [spec(3.0, 0.0, 0.0), spec(2.0, 2.0, 1.0), spec(1.0, 4.0, 0.0), spec(0.0, 0.0, 1.0)] {
            let (s, nu) = choose_pair_params(&p, &used).unwrap();
            let (x, y) = remainder_eigs(&p, &s);
            assert!((x - nu[0]).abs() < 1e-9 && (y - nu[1]).abs() < 1e-9);
            for v in nu {
                assert!(used.iter().all(|u: &f64| (u - v).abs() > SEPARATION));
                used.push(v);
            }
        }
    }

    #[test]
    fn equal_uncoupled_pair_rejected() {
        assert!(choose_pair_params(&spec(2.0, 2.0, 0.0), &[]).is_err());
    }
}
