//! Real 2x2 matrices up to real similarity, and their four-summand
//! coninvolutory decompositions.

use crate::error::{Error, Result};
use crate::matcore::float::inverse;
use crate::matcore::{CMat, RMat, C64};

use super::pairs::{diag_four, nilpotent_pair, rotation_pair, scalar_pair};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Real2x2Kind {
    Diag { a: f64, b: f64 },
    Jordan { a: f64 },
    /// `[[a, b], [-b, a]]` with `b > 0`.
    Rotation { a: f64, b: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Real2x2Class {
    pub kind: Real2x2Kind,
    /// `P` with `P^-1 A P` equal to the representative.
    pub transform: RMat,
}

impl Real2x2Class {
    pub fn representative(&self) -> RMat {
        match self.kind {
            Real2x2Kind::Diag { a, b } => RMat::diag(&[a, b]),
            Real2x2Kind::Jordan { a } => RMat::from_rows(vec![vec![a, 1.0], vec![0.0, a]]),
            Real2x2Kind::Rotation { a, b } => RMat::from_rows(vec![vec![a, b], vec![-b, a]]),
        }
    }
}

/// Relative size of the discriminant below which the eigenvalues count as
/// equal.
const DOUBLE_ROOT_REL: f64 = 1e-12;

fn unit(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

/// Kernel vector of the real 2x2 `[[p, q], [r, s]]` (assumed singular).
fn kernel_vector(p: f64, q: f64, r: f64, s: f64) -> [f64; 2] {
    if p.hypot(q) >= r.hypot(s) {
        unit([q, -p])
    } else {
        unit([s, -r])
    }
}

pub fn classify_real_2x2(m: &RMat) -> Result<Real2x2Class> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::UnsupportedSize {
            what: "classify_real_2x2",
            requirement: "a 2x2 matrix",
            n: m.rows(),
        });
    }
    let (p, q, r, s) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    if q == 0.0 && r == 0.0 {
        return Ok(Real2x2Class {
            kind: Real2x2Kind::Diag { a: p, b: s },
            transform: RMat::identity(2),
        });
    }
    let half = (p + s) / 2.0;
    let disc = ((p - s) / 2.0).powi(2) + q * r;
    let scale = 1.0 + m.norm_fro().powi(2);
    if disc.abs() <= DOUBLE_ROOT_REL * scale {
        let n = RMat::from_rows(vec![vec![p - half, q], vec![r, s - half]]);
        if n.norm_fro() <= 1e-12 * scale.sqrt() {
            return Ok(Real2x2Class {
                kind: Real2x2Kind::Diag { a: p, b: s },
                transform: RMat::identity(2),
            });
        }
        // P = [N v, v] with v the unit vector whose image under N is largest
        let v = if n[(0, 0)].hypot(n[(1, 0)]) >= n[(0, 1)].hypot(n[(1, 1)]) {
            [1.0, 0.0]
        } else {
            [0.0, 1.0]
        };
        let nv = [
            n[(0, 0)] * v[0] + n[(0, 1)] * v[1],
            n[(1, 0)] * v[0] + n[(1, 1)] * v[1],
        ];
        return Ok(Real2x2Class {
            kind: Real2x2Kind::Jordan { a: half },
            transform: RMat::from_rows(vec![vec![nv[0], v[0]], vec![nv[1], v[1]]]),
        });
    }
    if disc > 0.0 {
        let root = disc.sqrt();
        let (l1, l2) = (half + root, half - root);
        let v1 = kernel_vector(p - l1, q, r, s - l1);
        let v2 = kernel_vector(p - l2, q, r, s - l2);
        return Ok(Real2x2Class {
            kind: Real2x2Kind::Diag { a: l1, b: l2 },
            transform: RMat::from_rows(vec![vec![v1[0], v2[0]], vec![v1[1], v2[1]]]),
        });
    }
    // eigenvector w = u + i v for a + i b gives A [u, v] = [u, v] [[a, b], [-b, a]]
    let b = (-disc).sqrt();
    let lam = C64::new(half, b);
    let w = if q.abs() >= r.abs() {
        [C64::new(q, 0.0), lam - p]
    } else {
        [lam - s, C64::new(r, 0.0)]
    };
    Ok(Real2x2Class {
        kind: Real2x2Kind::Rotation { a: half, b },
        transform: RMat::from_rows(vec![vec![w[0].re, w[0].im], vec![w[1].re, w[1].im]]),
    })
}

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Four coninvolutory summands of the representative.
pub fn representative_summands(kind: Real2x2Kind) -> [CMat; 4] {
    let i = C64::new(0.0, 1.0);
    match kind {
        Real2x2Kind::Diag { a, b } => diag_four(&c(a), &c(b), &i),
        Real2x2Kind::Jordan { a } => {
            let [k1, k2] = scalar_pair(&c(a / 2.0), &i);
            let [k3, k4] = nilpotent_pair::<C64>();
            [k1, k2, k3, k4]
        }
        Real2x2Kind::Rotation { a, b } => {
            let [k1, k2] = scalar_pair(&c(a / 2.0), &i);
            let [k3, k4] = rotation_pair(&c(b));
            [k1, k2, k3, k4]
        }
    }
}

/// Four coninvolutory matrices summing to the real 2x2 `m`: the
/// representative's summands conjugated back by the real transform.
pub fn coninv_sum_2x2(m: &RMat) -> Result<(Real2x2Class, [CMat; 4])> {
    let class = classify_real_2x2(m)?;
    let p = CMat::from_real(&class.transform);
    let p_inv = inverse(&p)?;
    let ks = representative_summands(class.kind).map(|k| &(&p * &k) * &p_inv);
    Ok((class, ks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: [[f64; 2]; 2]) -> RMat {
        RMat::from_rows(rows.iter().map(|x| x.to_vec()).collect())
    }

    fn check(m: &RMat) {
        let (class, ks) = coninv_sum_2x2(m).unwrap();
        let p = &class.transform;
        let back = &(&inverse(p).unwrap() * m) * p;
        assert!((&back - &class.representative()).norm_fro() < 1e-10);
        let sum = ks.iter().skip(1).fold(ks[0].clone(), |s, k| &s + k);
        assert!((&sum - &CMat::from_real(m)).norm_fro() < 1e-10);
        for k in &ks {
            assert!((&(&k.conj() * k) - &CMat::identity(2)).norm_fro() < 1e-10);
        }
    }

    #[test]
    fn classes() {
        let d = classify_real_2x2(&r([[1.0, 0.0], [0.0, 2.0]])).unwrap();
        assert_eq!(d.kind, Real2x2Kind::Diag { a: 1.0, b: 2.0 });
        assert_eq!(d.transform, RMat::identity(2));
        let j = classify_real_2x2(&r([[3.0, 1.0], [0.0, 3.0]])).unwrap();
        assert_eq!(j.kind, Real2x2Kind::Jordan { a: 3.0 });
        let rot = classify_real_2x2(&r([[0.0, 2.0], [-2.0, 0.0]])).unwrap();
        assert_eq!(rot.kind, Real2x2Kind::Rotation { a: 0.0, b: 2.0 });
    }

    #[test]
    fn sums_verify() {
        check(&r([[3.0, 0.0], [0.0, 1.0]]));
        check(&r([[0.0, 1.0], [0.0, 0.0]]));
        check(&r([[0.0, 0.0], [0.0, 0.0]]));
        check(&r([[0.0, 2.0], [-2.0, 0.0]]));
        check(&r([[1.5, -2.0], [0.25, 4.0]]));
        check(&r([[1.0, 3.0], [-1.0, 0.5]]));
        check(&r([[2.0, 0.0], [5.0, 2.0]]));
    }

    #[test]
    fn nilpotent_uses_displayed_pair() {
        let (_, ks) = coninv_sum_2x2(&r([[0.0, 1.0], [0.0, 0.0]])).unwrap();
        let want = r([[1.0, 1.0], [0.0, -1.0]]);
        assert!((&ks[2] - &CMat::from_real(&want)).norm_fro() < 1e-14);
    }
}
