//! Definitional predicates, decomposition certificates and brute-force
//! oracles.

use serde_json::{json, Value};

use crate::concanon::{concanonical_form, same_blocks};
use crate::conisum::{DecompKind, Decomposition, NONOPTIMAL_COUNT};
use crate::exactcanon::factor::factor;
use crate::matcore::exact::char_poly;
use crate::matcore::float::{inverse, rank};
use crate::matcore::eigen::eigenvalues;
use crate::matcore::scalar::{is_integer, Q};
use crate::matcore::{CMat, Mat, Matrix, Tolerance};

pub fn coninvolutory_residual(k: &CMat) -> f64 {
    (&(&k.conj() * k) - &CMat::identity(k.n())).norm_fro()
}

pub fn skew_residual(k: &CMat) -> f64 {
    (&(&k.conj() * k) + &CMat::identity(k.n())).norm_fro()
}

fn squared_norm(k: &CMat) -> f64 {
    k.norm_fro().powi(2)
}

/// `conj(K) K = I`; literal equality on the exact pathway.
pub fn is_coninvolutory(k: &Matrix, tol: Tolerance) -> bool {
    match k {
        Matrix::Exact(m) => m.is_square() && m * m == Mat::identity(m.n()),
        Matrix::Floating(m) => {
            m.is_square() && coninvolutory_residual(m) <= tol.bound(squared_norm(m))
        }
    }
}

/// `conj(K) K = -I`; always false in odd dimension, where
/// `det(conj(K) K) = |det K|^2 >= 0` rules it out.
pub fn is_skew_coninvolutory(k: &Matrix, tol: Tolerance) -> bool {
    if !k.n().is_multiple_of(2) {
        return false;
    }
    match k {
        Matrix::Exact(m) => m * m == -Mat::identity(m.n()),
        Matrix::Floating(m) => m.is_square() && skew_residual(m) <= tol.bound(squared_norm(m)),
    }
}

pub fn involutory_residual(k: &CMat) -> f64 {
    (&(k * k) - &CMat::identity(k.n())).norm_fro()
}

pub fn is_involutory(k: &Matrix, tol: Tolerance) -> bool {
    match k {
        Matrix::Exact(m) => m * m == Mat::identity(m.n()),
        Matrix::Floating(m) => involutory_residual(m) <= tol.bound(squared_norm(m)),
    }
}

/// Exact diagonalizability over the rationals: the squarefree part of the
/// characteristic polynomial kills `D` and splits into linear factors.
pub fn is_rationally_diagonalizable(d: &Mat<Q>) -> bool {
    let chi = char_poly(d);
    let sqf = chi.divrem(&chi.gcd(&chi.derivative())).0;
    sqf.eval_mat(d).is_zero() && factor(&sqf).iter().all(|(p, _)| p.degree() == Some(1))
}

/// Real-condiagonalizability test: `conj(D) D` has nonnegative real
/// spectrum and the same rank as `D`.
pub fn looks_real_condiagonalizable(d: &CMat, tol: Tolerance) -> bool {
    let m = &d.conj() * d;
    let Ok(ev) = eigenvalues(&m) else {
        return false;
    };
    let scale = tol.bound(m.norm_fro()).sqrt();
    let spectrum_ok = ev.iter().all(|z| z.im.abs() <= scale && z.re >= -scale);
    let rt = Tolerance::rank_default();
    spectrum_ok && rank(d, rt) == rank(&m, rt)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: DecompKind,
    /// Per summand: `||conj(K) K -+ I||_F` (coninvolutory or skew kinds),
    /// `||V^2 - I||_F` for the involutory part of `thm1a`.
    pub residuals: Vec<f64>,
    pub sum_residual: f64,
    pub count: usize,
    pub pass: bool,
    pub tolerance: Tolerance,
    pub flags: Vec<String>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "residuals": self.residuals.iter().map(|r| format!("{r:e}")).collect::<Vec<_>>(),
            "sum_residual": format!("{:e}", self.sum_residual),
            "count": self.count,
            "pass": self.pass,
            "tolerance": {"abs": self.tolerance.abs, "rel": self.tolerance.rel},
            "flags": self.flags,
            "failures": self.failures,
        })
    }
}

/// Summand-count bound of a kind (the exact count for the two-part kinds).
pub fn count_bound(kind: DecompKind, n: usize, flags: &[String]) -> usize {
    match kind {
        DecompKind::ConinvolutorySum => {
            if n == 2 {
                4
            } else {
                5
            }
        }
        DecompKind::SkewSum => {
            if flags.iter().any(|f| f == NONOPTIMAL_COUNT) {
                6
            } else {
                5
            }
        }
        DecompKind::Thm1a | DecompKind::Thm1b => 2,
    }
}

fn exact_sum(summands: &[Matrix]) -> Option<Mat<Q>> {
    let mut acc: Option<Mat<Q>> = None;
    for s in summands {
        let Matrix::Exact(m) = s else {
            return None;
        };
        acc = Some(match acc {
            Some(a) => &a + m,
            None => m.clone(),
        });
    }
    acc
}

pub fn verify_decomposition(a: &Matrix, d: &Decomposition, tol: Tolerance) -> Certificate {
    let n = a.n();
    let mut failures = Vec::new();
    let all_exact = matches!(a, Matrix::Exact(_))
        && d.summands.iter().all(|s| matches!(s, Matrix::Exact(_)));
    if d.summands.iter().any(|s| s.n() != n) {
        failures.push("summand dimension differs from the target".to_string());
    }
    let ac = a.to_c64();
    let cs: Vec<CMat> = d
        .summands
        .iter()
        .filter(|s| s.n() == n)
        .map(|s| s.to_c64())
        .collect();
    let mut sum_residual = if cs.is_empty() {
        ac.norm_fro()
    } else {
        let total = cs.iter().skip(1).fold(cs[0].clone(), |s, k| &s + k);
        (&total - &ac).norm_fro()
    };
    if all_exact {
        if let (Some(total), Matrix::Exact(ae)) = (exact_sum(&d.summands), a) {
            if &total == ae {
                sum_residual = 0.0;
            } else {
                failures.push("exact sum differs from the target".to_string());
            }
        }
    } else if sum_residual > tol.bound(ac.norm_fro()) {
        failures.push(format!("sum residual {sum_residual:e} above tolerance"));
    }
    let mut residuals = Vec::new();
    match d.kind {
        DecompKind::ConinvolutorySum | DecompKind::SkewSum => {
            let skew = d.kind == DecompKind::SkewSum;
            if skew && n % 2 == 1 {
                failures.push("skew-coninvolutory summands need even dimension".to_string());
            }
            for (i, s) in d.summands.iter().enumerate() {
                let c = s.to_c64();
                let r = if skew { skew_residual(&c) } else { coninvolutory_residual(&c) };
                residuals.push(r);
                let ok = if skew {
                    is_skew_coninvolutory(s, tol)
                } else {
                    is_coninvolutory(s, tol)
                };
                if !ok {
                    failures.push(format!("summand {i} fails the predicate (residual {r:e})"));
                }
            }
        }
        DecompKind::Thm1a => {
            if let Some(v) = d.summands.first() {
                residuals.push(match v {
                    Matrix::Exact(x) if (x * x) == Mat::identity(n) => 0.0,
                    _ => involutory_residual(&v.to_c64()),
                });
                if !is_involutory(v, tol) {
                    failures.push("first summand is not involutory".to_string());
                }
            }
            if let Some(Matrix::Exact(dm)) = d.summands.get(1) {
                if !is_rationally_diagonalizable(dm) {
                    failures.push("second summand is not diagonalizable".to_string());
                }
            }
        }
        DecompKind::Thm1b => {
            if let Some(c) = d.summands.first() {
                residuals.push(coninvolutory_residual(&c.to_c64()));
                if !is_coninvolutory(c, tol) {
                    failures.push("first summand is not coninvolutory".to_string());
                }
            }
            if let Some(dm) = d.summands.get(1) {
                if !looks_real_condiagonalizable(&dm.to_c64(), tol) {
                    failures.push("second summand is not real-condiagonalizable".to_string());
                }
            }
        }
    }
    let count = d.summands.len();
    let bound = count_bound(d.kind, n, &d.flags);
    let exact_count = matches!(d.kind, DecompKind::Thm1a | DecompKind::Thm1b);
    if (exact_count && count != bound) || count > bound || count == 0 {
        failures.push(format!("summand count {count} outside the bound {bound}"));
    }
    Certificate {
        kind: d.kind,
        residuals,
        sum_residual,
        count,
        pass: failures.is_empty(),
        tolerance: tol,
        flags: d.flags.clone(),
        failures,
    }
}

/// The involutory part of a `thm1a` decomposition has integer trace.
pub fn oracle_involutory_trace(d: &Decomposition) -> bool {
    if d.kind != DecompKind::Thm1a {
        return false;
    }
    match d.summands.first() {
        Some(Matrix::Exact(v)) => is_integer(&v.trace()),
        Some(Matrix::Floating(v)) => {
            let t = v.trace();
            t.im.abs() <= 1e-9 && (t.re - t.re.round()).abs() <= 1e-9
        }
        None => false,
    }
}

/// Parameter tolerance for comparing canonical block multisets.
pub const INVARIANT_TOL: f64 = 1e-6;

/// `A` and `conj(T)^-1 A T` have the same concanonical block multiset.
pub fn oracle_consim_invariant(a: &CMat, t: &CMat) -> bool {
    let Ok(t_bar_inv) = inverse(&t.conj()) else {
        return false;
    };
    let b = &(&t_bar_inv * a) * t;
    match (concanonical_form(a), concanonical_form(&b)) {
        (Ok(fa), Ok(fb)) => same_blocks(&fa.blocks, &fb.blocks, INVARIANT_TOL),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concanon::skew_base;
    use crate::matcore::scalar::qi;
    use crate::matcore::{RMat, C64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::certify_default()
    }

    #[test]
    fn predicates() {
        assert!(is_coninvolutory(&Matrix::Floating(CMat::identity(2)), tol()));
        let k = CMat::from_rows(vec![vec![c(2.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -3.0), c(2.0, 0.0)]]);
        assert!(is_coninvolutory(&Matrix::Floating(k), tol()));
        assert!(!is_coninvolutory(&Matrix::Floating(CMat::scalar(2, c(2.0, 0.0))), tol()));
        let s = CMat::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]);
        assert!(is_skew_coninvolutory(&Matrix::Floating(s), tol()));
        assert!(!is_skew_coninvolutory(&Matrix::Floating(CMat::identity(3)), tol()));
        assert!(is_skew_coninvolutory(&Matrix::Floating(skew_base(2)), tol()));
    }

    #[test]
    fn certificates() {
        let z = Matrix::Floating(CMat::zeros(2, 2));
        let k = skew_base(1);
        let d = Decomposition::from_floating(DecompKind::SkewSum, vec![k.clone(), -&k]);
        assert!(verify_decomposition(&z, &d, tol()).pass);
        let i2 = Matrix::Floating(CMat::identity(2));
        let bad = Decomposition::from_floating(
            DecompKind::ConinvolutorySum,
            vec![CMat::identity(2), CMat::identity(2)],
        );
        let cert = verify_decomposition(&i2, &bad, tol());
        assert!(!cert.pass);
        assert!(cert.sum_residual > 1.0);
    }

    #[test]
    fn trace_oracle() {
        let mk = |v: Mat<Q>| Decomposition {
            kind: DecompKind::Thm1a,
            summands: vec![Matrix::Exact(v)],
            log: Vec::new(),
            flags: Vec::new(),
        };
        let v = Mat::from_rows(vec![vec![qi(1), qi(-3)], vec![qi(0), qi(-1)]]);
        assert!(oracle_involutory_trace(&mk(v)));
        assert!(oracle_involutory_trace(&mk(Mat::diag(&[qi(1), qi(1), qi(-1)]))));
        let half = Decomposition {
            kind: DecompKind::Thm1a,
            summands: vec![Matrix::Floating(CMat::from_real(&RMat::diag(&[0.25, 0.25])))],
            log: Vec::new(),
            flags: Vec::new(),
        };
        assert!(!oracle_involutory_trace(&half));
    }

    #[test]
    fn invariant_oracle() {
        let t = CMat::from_rows(vec![vec![c(1.0, 0.5), c(0.2, 0.0)], vec![c(-0.3, 0.1), c(0.9, -0.4)]]);
        assert!(oracle_consim_invariant(&CMat::identity(2), &t));
        let h = CMat::from_real(&RMat::from_rows(vec![vec![0.0, 1.0], vec![-2.0, 0.0]]));
        assert!(oracle_consim_invariant(&h, &t));
        let f1 = concanonical_form(&CMat::from_real(&RMat::diag(&[1.0, 2.0]))).unwrap();
        let f2 = concanonical_form(&CMat::from_real(&RMat::diag(&[1.0, 3.0]))).unwrap();
        assert!(!same_blocks(&f1.blocks, &f2.blocks, INVARIANT_TOL));
    }
}
