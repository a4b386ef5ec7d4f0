//! Seeded test-matrix generators.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::concanon::{build_block, jordan, ConCanonicalBlock};
use crate::error::{Error, Result};
use crate::matcore::float::{cond, inverse};
use crate::matcore::{CMat, Mat, RMat, C64, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Independent standard normal real and imaginary parts, times `scale`.
pub fn random_complex(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(n, n, |_, _| C64::new(normal(rng), normal(rng)) * scale)
}

pub fn random_real(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> RMat {
    RMat::from_fn(n, n, |_, _| normal(rng) * scale)
}

/// Entries `p/q` with `|p| <= 9`, `1 <= q <= 6`.
pub fn random_rational(n: usize, rng: &mut ChaCha8Rng) -> Mat<Q> {
    Mat::from_fn(n, n, |_, _| {
        let p: i64 = rng.random_range(-9..=9);
        let q: i64 = rng.random_range(1..=6);
        Q::new(BigInt::from(p), BigInt::from(q))
    })
}

/// Random complex matrix shifted by a growing multiple of `I` until its
/// condition number is at most `max_cond`.
pub fn random_conditioned(n: usize, max_cond: f64, rng: &mut ChaCha8Rng) -> CMat {
    let g = random_complex(n, 1.0 / (n as f64).sqrt(), rng);
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let mut alpha = 0.0;
    loop {
        let s = &g + &CMat::scalar(n, phase * alpha);
        if cond(&s) <= max_cond {
            return s;
        }
        alpha = if alpha == 0.0 { 0.25 } else { alpha * 1.5 };
    }
}

/// Real upper bidiagonal matrix with the given diagonal and superdiagonal
/// couplings `eps[i]` in `{0, 1}` between positions `i` and `i + 1`.
pub fn jordan_chain(diag: &[f64], eps: &[u8]) -> Result<RMat> {
    let n = diag.len();
    if eps.len() + 1 != n.max(1) || eps.iter().any(|&e| e > 1) {
        return Err(Error::InvalidParameters(format!(
            "need {} couplings in {{0, 1}}, got {:?}",
            n.saturating_sub(1),
            eps
        )));
    }
    for (i, &e) in eps.iter().enumerate() {
        if e == 1 && diag[i] != diag[i + 1] {
            return Err(Error::InvalidParameters(format!(
                "coupled positions {i} and {} carry different diagonal entries",
                i + 1
            )));
        }
    }
    let mut m = RMat::diag(diag);
    for (i, &e) in eps.iter().enumerate() {
        m[(i, i + 1)] = e as f64;
    }
    Ok(m)
}

pub fn jordan_block(n: usize, lambda: f64) -> RMat {
    jordan(n, C64::new(lambda, 0.0)).re()
}

pub fn hblock(m: usize, mu: C64) -> Result<CMat> {
    build_block(&ConCanonicalBlock::H { m, mu })
}

/// `conj(S)^-1 B S`.
pub fn plant(b: &CMat, s: &CMat) -> Result<CMat> {
    Ok(&(&inverse(&s.conj())? * b) * s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlantKind {
    J,
    H,
    Mixed,
}

/// Canonical blocks of total size `n` with separated squared moduli, so the
/// spectrum of `conj(A) A` has well-separated clusters. `H` plants of odd
/// size carry one `J` block.
pub fn random_blocks(n: usize, kind: PlantKind, rng: &mut ChaCha8Rng) -> Vec<ConCanonicalBlock> {
    loop {
        let mut blocks = Vec::new();
        let mut left = n;
        let mut sigmas: Vec<C64> = Vec::new();
        while left > 0 {
            let want_h = match kind {
                PlantKind::J => false,
                PlantKind::H => true,
                PlantKind::Mixed => rng.random_bool(0.5),
            };
            let b = if want_h && left >= 2 {
                let m = rng.random_range(1..=(left / 2).min(2));
                let mu = if rng.random_bool(0.3) {
                    C64::new(-rng.random_range(0.3..4.0), 0.0)
                } else {
                    let im: f64 = rng.random_range(0.3..3.0);
                    C64::new(rng.random_range(-3.0..3.0), if rng.random_bool(0.5) { im } else { -im })
                };
                ConCanonicalBlock::H { m, mu }
            } else {
                let size = rng.random_range(1..=left.min(3));
                let lambda = if rng.random_bool(0.15) {
                    0.0
                } else {
                    rng.random_range(0.3..3.0)
                };
                ConCanonicalBlock::J { n: size, lambda }
            };
            let sigma = match b {
                ConCanonicalBlock::J { lambda, .. } => C64::new(lambda * lambda, 0.0),
                ConCanonicalBlock::H { mu, .. } => mu,
            };
            left -= b.size();
            sigmas.push(sigma);
            blocks.push(b);
        }
        let separated = sigmas.iter().enumerate().all(|(i, x)| {
            sigmas[i + 1..]
                .iter()
                .all(|y| (x - y).norm() > 0.2 && (x - y.conj()).norm() > 0.2)
        });
        let fits = match kind {
            PlantKind::H => {
                blocks
                    .iter()
                    .filter(|b| !matches!(b, ConCanonicalBlock::H { .. }))
                    .count()
                    == n % 2
            }
            _ => true,
        };
        if separated && fits {
            return blocks;
        }
    }
}
