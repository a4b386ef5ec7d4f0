//! Upper bidiagonal real input: a real skew part `C` plus a remainder with
//! distinct real eigenvalues, which is diagonalized and split four ways.

use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::conisum::split::{eigenvector, from_na, to_na};
use crate::conisum::sum::{absorb_defect, pair_positions, transport};
use crate::conisum::{DecompKind, Decomposition, NONOPTIMAL_COUNT};
use crate::error::{Error, Result};
use crate::matcore::float::cond;
use crate::matcore::{CMat, RMat, C64};

use super::pairs::skew_diag_four;
use super::params::{choose_pair_params, pair_specs, SkewParams, SEPARATION};

const MAX_BASIS_COND: f64 = 1e10;
pub const SEARCH_RESTARTS: usize = 200;
const SEARCH_ITERS: u64 = 2000;

/// Four skew-coninvolutory matrices summing to `diag(nu)`, pairing
/// positions adjacent in value.
pub fn diag_skew_summands(nu: &[f64]) -> [CMat; 4] {
    let n = nu.len();
    let mut ks: [CMat; 4] = std::array::from_fn(|_| CMat::zeros(n, n));
    let i = C64::new(0.0, 1.0);
    for (p, q) in pair_positions(nu, None) {
        let parts = skew_diag_four(&C64::new(nu[p], 0.0), &C64::new(nu[q], 0.0), &i);
        for (k, part) in ks.iter_mut().zip(parts.iter()) {
            k[(p, p)] = part[(0, 0)];
            k[(p, q)] = part[(0, 1)];
            k[(q, p)] = part[(1, 0)];
            k[(q, q)] = part[(1, 1)];
        }
    }
    ks
}

/// Real eigenvalues of `d` when all of them are real and pairwise separated.
fn real_distinct_spectrum(d: &RMat) -> Option<Vec<f64>> {
    let scale = 1.0 + d.norm_fro();
    let ev = to_na(d).complex_eigenvalues();
    if ev.iter().any(|z| z.im.abs() > 1e-9 * scale) {
        return None;
    }
    let mut nu: Vec<f64> = ev.iter().map(|z| z.re).collect();
    nu.sort_by(f64::total_cmp);
    nu.windows(2)
        .all(|w| w[1] - w[0] > 1e-7 * scale)
        .then_some(nu)
}

/// `R` with `d R = R diag(nu)`, checked for conditioning and residual.
fn real_eigenbasis(d: &RMat, nu: &[f64]) -> Option<RMat> {
    let dn = to_na(d);
    let cols: Vec<Vec<f64>> = nu.iter().map(|&v| eigenvector(&dn, v)).collect();
    let r = RMat::from_columns(&cols);
    if cond(&CMat::from_real(&r)) > MAX_BASIS_COND {
        return None;
    }
    let lhs = d * &r;
    let rhs = &r * &RMat::diag(nu);
    ((&lhs - &rhs).norm_fro() <= 1e-9 * (1.0 + d.norm_fro())).then_some(r)
}

/// `leading` followed by the four summands of `b - sum(leading)`.
fn assemble(b: &RMat, leading: Vec<RMat>, nu: &[f64]) -> Option<Vec<CMat>> {
    let mut d = b.clone();
    for c in &leading {
        d = &d - c;
    }
    let r = real_eigenbasis(&d, nu)?;
    let tail = transport(&CMat::from_real(&r), &diag_skew_summands(nu)).ok()?;
    let mut ks: Vec<CMat> = leading.iter().map(CMat::from_real).collect();
    ks.extend(tail);
    absorb_defect(&CMat::from_real(b), &mut ks);
    Some(ks)
}

/// `C` as a direct sum of `M(a_k, b_k)` chosen pair by pair.
pub fn greedy_skew_part(b: &RMat) -> Result<(RMat, Vec<SkewParams>, Vec<f64>)> {
    let mut used = Vec::new();
    let mut params = Vec::new();
    for p in pair_specs(b) {
        let (s, nu) = choose_pair_params(&p, &used)?;
        params.push(s);
        used.extend(nu);
    }
    let blocks: Vec<RMat> = params.iter().map(|s| s.block()).collect();
    Ok((RMat::direct_sum(&blocks), params, used))
}

struct SpectrumCost {
    b: DMatrix<f64>,
    j: DMatrix<f64>,
    gap: f64,
}

impl SpectrumCost {
    fn skew_part(&self, x: &[f64]) -> Option<DMatrix<f64>> {
        let n = self.b.nrows();
        let p = DMatrix::identity(n, n) + DMatrix::from_row_slice(n, n, x);
        let p_inv = p.clone().try_inverse()?;
        Some(&p * &self.j * p_inv)
    }
}

impl CostFunction for SpectrumCost {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        let Some(c) = self.skew_part(x) else {
            return Ok(1e6);
        };
        let ev = (&self.b - &c).complex_eigenvalues();
        let mut f: f64 = ev.iter().map(|z| z.im.abs()).sum();
        for i in 0..ev.len() {
            for k in i + 1..ev.len() {
                f += (self.gap - (ev[i] - ev[k]).norm()).max(0.0);
            }
        }
        // keep C moderate without disturbing the zero set
        f += 1e-3 * (c.norm() - 100.0).max(0.0);
        Ok(f)
    }
}

/// Seeded Nelder-Mead over `C = P J P^-1`, minimizing the imaginary parts
/// and clustering of `spec(B - C)`.
pub fn search_skew_part(b: &RMat, seed: u64, restarts: usize) -> Option<(RMat, Vec<f64>)> {
    let n = b.n();
    let scale = 1.0 + b.norm_fro() / (n as f64).sqrt();
    let j = to_na(&crate::concanon::skew_base(n / 2).re());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..restarts {
        let x0: Vec<f64> = (0..n * n)
            .map(|_| {
                let v: f64 = StandardNormal.sample(&mut rng);
                0.5 * v
            })
            .collect();
        let mut simplex = vec![x0.clone()];
        for k in 0..n * n {
            let mut v = x0.clone();
            v[k] += 0.3;
            simplex.push(v);
        }
        let cost = SpectrumCost {
            b: to_na(b),
            j: j.clone(),
            gap: 5.0 * SEPARATION * scale,
        };
        let solver = NelderMead::new(simplex).with_sd_tolerance(1e-14).ok()?;
        let Ok(res) = Executor::new(cost, solver)
            .configure(|s| s.max_iters(SEARCH_ITERS).target_cost(0.0))
            .run()
        else {
            continue;
        };
        let Some(x) = res.state().get_best_param() else {
            continue;
        };
        let cost = SpectrumCost {
            b: to_na(b),
            j: j.clone(),
            gap: 0.0,
        };
        let Some(c) = cost.skew_part(x).map(|c| from_na(&c)) else {
            continue;
        };
        if let Some(nu) = real_distinct_spectrum(&(b - &c)) {
            return Some((c, nu));
        }
    }
    None
}

/// Six summands for upper triangular `b`: `M(a_k, 1)` and `M(a_k, -1)` sum
/// to `diag(2a_k, -2a_k)`, which separates the diagonal.
fn six_summands(b: &RMat) -> Option<Vec<CMat>> {
    let n = b.n();
    let scale = 1.0 + b.max_abs();
    let mut used: Vec<f64> = Vec::new();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for k in 0..n / 2 {
        let (l1, l2) = (b[(2 * k, 2 * k)], b[(2 * k + 1, 2 * k + 1)]);
        let a = (0..400).map(|j| 0.5 * scale * (1.0 + 0.618 * j as f64)).find(|&a| {
            let nu = [l1 - 2.0 * a, l2 + 2.0 * a];
            (nu[0] - nu[1]).abs() > SEPARATION * scale
                && nu
                    .iter()
                    .all(|v| used.iter().all(|u| (u - v).abs() > SEPARATION * scale))
        })?;
        used.extend([l1 - 2.0 * a, l2 + 2.0 * a]);
        c1.push(SkewParams { a, b: 1.0 }.block());
        c2.push(SkewParams { a, b: -1.0 }.block());
    }
    assemble(b, vec![RMat::direct_sum(&c1), RMat::direct_sum(&c2)], &used)
}

fn is_upper_bidiagonal(b: &RMat) -> bool {
    let n = b.n();
    (0..n).all(|i| (0..n).all(|j| j == i || j == i + 1 || b[(i, j)] == 0.0))
}

/// At most five summands for an even-size real upper bidiagonal `b`; six,
/// flagged, only when neither the pairwise choice nor the search succeeds.
pub fn skew_sum_jordan(b: &RMat, seed: u64) -> Result<Decomposition> {
    let n = b.n();
    if n % 2 == 1 || n == 0 {
        return Err(Error::UnsupportedSize {
            what: "skew_sum_jordan",
            requirement: "even n",
            n,
        });
    }
    if !is_upper_bidiagonal(b) {
        return Err(Error::InvalidParameters(
            "skew_sum_jordan expects an upper bidiagonal matrix".into(),
        ));
    }
    let mut d = Decomposition::new(DecompKind::SkewSum);
    let pairwise = greedy_skew_part(b);
    if let Ok((c, params, nu)) = &pairwise {
        if let Some(ks) = assemble(b, vec![c.clone()], nu) {
            d.note(
                "pairs",
                format!(
                    "skew blocks M(a, b) at {}",
                    params
                        .iter()
                        .map(|s| format!("({:.4}, {:.4})", s.a, s.b))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            d.summands = ks.into_iter().map(crate::matcore::Matrix::Floating).collect();
            return Ok(d);
        }
    }
    if let Err(e) = &pairwise {
        d.note("pairs", format!("pairwise choice failed: {e}"));
    }
    if let Some((c, nu)) = search_skew_part(b, seed, SEARCH_RESTARTS) {
        if let Some(ks) = assemble(b, vec![c], &nu) {
            d.note("search", "general real skew part from the randomized search");
            d.summands = ks.into_iter().map(crate::matcore::Matrix::Floating).collect();
            return Ok(d);
        }
    }
    let ks = six_summands(b).ok_or_else(|| {
        Error::NoTransform("no skew split of the bidiagonal input".into())
    })?;
    d.note("fallback", "two real skew parts summing to a diagonal shift");
    d.flags.push(NONOPTIMAL_COUNT.to_string());
    d.summands = ks.into_iter().map(crate::matcore::Matrix::Floating).collect();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify_decomposition;
    use crate::gen::jordan_block;
    use crate::matcore::{Matrix, Tolerance};

    fn check(b: &RMat, d: &Decomposition) {
        let a = Matrix::Floating(CMat::from_real(b));
        let cert = verify_decomposition(&a, d, Tolerance::certify_default());
        assert!(cert.pass, "{:?}", cert.failures);
    }

    #[test]
    fn jordan_two_by_two() {
        let b = jordan_block(2, 3.0);
        let d = skew_sum_jordan(&b, 1).unwrap();
        assert_eq!(d.count(), 5);
        assert!(d.flags.is_empty());
        check(&b, &d);
    }

    #[test]
    fn forbidden_pair_found_by_search() {
        let b = RMat::direct_sum(&[jordan_block(3, 0.0), jordan_block(1, 0.0)]);
        assert!(greedy_skew_part(&b).is_err());
        let d = skew_sum_jordan(&b, 1).unwrap();
        assert!(d.count() <= 6);
        check(&b, &d);
    }

    #[test]
    fn six_summand_fallback_verifies() {
        let b = RMat::direct_sum(&[jordan_block(3, 1.0), jordan_block(1, 1.0)]);
        let ks = six_summands(&b).unwrap();
        let mut d = Decomposition::from_floating(DecompKind::SkewSum, ks);
        assert_eq!(d.count(), 6);
        d.flags.push(NONOPTIMAL_COUNT.to_string());
        check(&b, &d);
    }

    #[test]
    fn diag_summands_sum() {
        let nu = [3.0, -1.0, 0.5, 7.0];
        let ks = diag_skew_summands(&nu);
        let sum = ks.iter().skip(1).fold(ks[0].clone(), |s, k| &s + k);
        assert!((&sum - &CMat::from_real(&RMat::diag(&nu))).norm_fro() < 1e-14);
    }
}
