//! Intertwiners `S` with `A S = conj(S) B`, found as real kernels.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matcore::float::cond;
use crate::matcore::nullspace::consim_kernel;
use crate::matcore::{CMat, Tolerance, C64};

pub const DEFAULT_SEED: u64 = 0xC0571F;
/// Random kernel combinations tried before giving up.
pub const SOLVE_TRIALS: usize = 32;
/// Singular-value thresholds tried in turn for the kernel.
const KERNEL_LADDER: [f64; 3] = [1e-10, 1e-8, 1e-6];
const MAX_COND: f64 = 1e12;

pub fn residual(a: &CMat, s: &CMat, b: &CMat) -> f64 {
    (&(a * s) - &(&s.conj() * b)).norm_fro()
}

/// Bound for an intertwiner normalized to `||S||_F = sqrt(n)`.
fn accept_bound(a: &CMat, b: &CMat) -> f64 {
    1e-8 * (1.0 + a.norm_fro() + b.norm_fro())
}

fn combine(basis: &[CMat], rng: &mut ChaCha8Rng) -> CMat {
    let mut s = CMat::zeros(basis[0].rows(), basis[0].cols());
    for y in basis {
        let g: f64 = StandardNormal.sample(rng);
        s = &s + &y.scale(&C64::new(g, 0.0));
    }
    s
}

fn normalized(s: CMat) -> CMat {
    let f = s.norm_fro();
    let target = (s.cols() as f64).sqrt();
    if f > 0.0 {
        s.scale(&C64::new(target / f, 0.0))
    } else {
        s
    }
}

/// Column-blocked intertwiner: for each target block `B_b` a kernel of
/// `X -> A X - conj(X) B_b` is combined at random, and the best-conditioned
/// concatenation over the trials is kept.
pub fn solve_blocks(a: &CMat, blocks: &[CMat], seed: u64) -> Option<(CMat, f64)> {
    solve_blocks_capped(a, blocks, seed, MAX_COND)
}

/// [`solve_blocks`] accepting only transforms with condition number below
/// `max_cond`.
pub fn solve_blocks_capped(
    a: &CMat,
    blocks: &[CMat],
    seed: u64,
    max_cond: f64,
) -> Option<(CMat, f64)> {
    let target = CMat::direct_sum(blocks);
    if target.n() != a.n() {
        return None;
    }
    let bound = accept_bound(a, &target);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &thr in &KERNEL_LADDER {
        let tol = Tolerance::new(0.0, thr);
        let mut bases: Vec<Vec<CMat>> = Vec::with_capacity(blocks.len());
        let mut cache: Vec<(CMat, Vec<CMat>)> = Vec::new();
        let mut ok = true;
        for b in blocks {
            let basis = match cache.iter().find(|(k, _)| k == b) {
                Some((_, v)) => v.clone(),
                None => {
                    let v = consim_kernel(a, b, tol);
                    cache.push((b.clone(), v.clone()));
                    v
                }
            };
            if basis.is_empty() {
                ok = false;
                break;
            }
            bases.push(basis);
        }
        if !ok {
            continue;
        }
        let mut best: Option<(CMat, f64)> = None;
        for trial in 0..SOLVE_TRIALS {
            let parts: Vec<CMat> = bases.iter().map(|b| combine(b, &mut rng)).collect();
            let s = normalized(CMat::hstack(&parts));
            let c = cond(&s);
            if c.is_finite() && best.as_ref().is_none_or(|(_, bc)| c < *bc) {
                best = Some((s, c));
            }
            if trial >= 3 && best.as_ref().is_some_and(|(_, bc)| *bc < 1e3) {
                break;
            }
        }
        if let Some((s, c)) = best {
            let r = residual(a, &s, &target);
            if c < max_cond && r <= bound {
                return Some((s, r));
            }
        }
    }
    None
}

/// Nonsingular `S` with `A S = conj(S) B`, or `None` when no trial yields one.
pub fn solve_consimilarity(a: &CMat, b: &CMat) -> Option<CMat> {
    solve_consimilarity_seeded(a, b, DEFAULT_SEED)
}

pub fn solve_consimilarity_seeded(a: &CMat, b: &CMat, seed: u64) -> Option<CMat> {
    if a.n() != b.n() {
        return None;
    }
    solve_blocks(a, std::slice::from_ref(b), seed).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::float::inverse;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_gives_real_transform() {
        let i2 = CMat::identity(2);
        let s = solve_consimilarity(&i2, &i2).unwrap();
        assert!(residual(&i2, &s, &i2) < 1e-10);
        // conj(S)^-1 S = I forces S real
        assert!(s.im().norm_fro() < 1e-10);
    }

    #[test]
    fn scalar_i_to_one() {
        let a = CMat::from_rows(vec![vec![c(0.0, 1.0)]]);
        let b = CMat::identity(1);
        let s = solve_consimilarity(&a, &b).unwrap();
        assert!(residual(&a, &s, &b) < 1e-10);
        let back = &(&inverse(&s.conj()).unwrap() * &a) * &s;
        assert!((back[(0, 0)] - c(1.0, 0.0)).norm() < 1e-10);
        // S is a real multiple of exp(-i pi / 4)
        let z = s[(0, 0)];
        let phase = z / z.norm();
        let want = c(0.5f64.sqrt(), -(0.5f64.sqrt()));
        assert!((phase - want).norm() < 1e-8 || (phase + want).norm() < 1e-8);
    }

    #[test]
    fn modulus_is_invariant() {
        let a = CMat::from_rows(vec![vec![c(2.0, 0.0)]]);
        let b = CMat::from_rows(vec![vec![c(3.0, 0.0)]]);
        assert!(solve_consimilarity(&a, &b).is_none());
    }
}
