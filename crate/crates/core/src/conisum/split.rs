//! Real involutory-plus-diagonalizable splits `B = conj(W) (C + diag(mu)) W^-1`
//! with `C` real involutory, by two routes:
//!
//! * Hessenberg: after a random orthogonal rotation, reduce to upper
//!   Hessenberg form and give each unreduced diagonal block the involutory
//!   part `[[I, b], [0, -1]]`, choosing `b` so the remainder has a prescribed
//!   real spectrum. Fast, floating point, needs globally distinct values.
//! * Exact: rationalize, take the Frobenius form and split each companion
//!   block exactly. Handles derogatory input (repeated scalars, zero blocks).

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exactcanon::split::{choose_values, corollary_split};
use crate::exactcanon::thm1a::split_companion_blocks;
use crate::exactcanon::{frobenius_form, merge_companions, thm1a_decompose};
use crate::matcore::exact::inverse as exact_inverse;
use crate::matcore::float::{cond, inverse};
use crate::matcore::rational::rationalize_real;
use crate::matcore::scalar::{q_to_f64, Q};
use crate::matcore::{CMat, Mat, Poly, RMat, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRoute {
    Hessenberg,
    Exact,
}

impl SplitRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplitRoute::Hessenberg => "hessenberg",
            SplitRoute::Exact => "exact",
        }
    }
}

/// `B = conj(W) (C + diag(mu)) W^-1`, `C` real with `C^2 = I`. When an
/// anchor is requested, `mu[anchor]` is 0 or 2.
#[derive(Clone, Debug)]
pub struct RealSplit {
    pub w: CMat,
    pub c: RMat,
    pub mu: Vec<f64>,
    pub anchor: Option<usize>,
    pub route: SplitRoute,
}

impl RealSplit {
    pub fn reassemble(&self) -> Result<CMat> {
        let inner = CMat::from_real(&(&self.c + &RMat::diag(&self.mu)));
        Ok(&(&self.w.conj() * &inner) * &inverse(&self.w)?)
    }

    /// `||conj(W) (C + diag(mu)) W^-1 - B||_F`.
    pub fn residual(&self, b: &RMat) -> f64 {
        match self.reassemble() {
            Ok(m) => (&m - &CMat::from_real(b)).norm_fro(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn involution_defect(&self) -> f64 {
        (&(&self.c * &self.c) - &RMat::identity(self.c.n())).norm_fro()
    }
}

const DEFLATE_REL: f64 = 1e-13;
const MAX_SPLIT_COND: f64 = 1e8;
const SPREADS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

pub(crate) fn to_na(m: &RMat) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub(crate) fn from_na(m: &DMatrix<f64>) -> RMat {
    RMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    g.qr().q()
}

/// Leading principal characteristic polynomials `p_0 .. p_(m-1)` of the
/// Hessenberg block `h` (rows and columns `lo..lo+m`), evaluated at `z`.
fn leading_charpolys(h: &RMat, lo: usize, m: usize, z: f64) -> Vec<f64> {
    let mut p = vec![1.0; m];
    for k in 1..m {
        // p_k = (z - h_kk) p_(k-1) - sum_(i<k) h_ik (prod_(l=i..k-1) h_(l+1,l)) p_(i-1)
        let kk = lo + k - 1;
        let mut v = (z - h[(kk, kk)]) * p[k - 1];
        let mut prod = 1.0;
        for i in (1..k).rev() {
            let ii = lo + i - 1;
            prod *= h[(ii + 1, ii)];
            v -= h[(ii, kk)] * prod * p[i - 1];
        }
        p[k] = v;
    }
    p
}

/// Upper-right column `b` (length `m - 1`) of the block involution such that
/// `H_block - [[I, b], [0, -1]]` has the eigenvalues `mus`.
fn block_involution_column(h: &RMat, lo: usize, m: usize, mus: &[f64]) -> Option<Vec<f64>> {
    let last = lo + m - 1;
    let xm = h[(last, last)] + 2.0;
    // beta_i = prod_(k=i..m-1) h_(k+1,k), 1-based i
    let mut beta = vec![1.0; m];
    for i in (1..m).rev() {
        let k = lo + i - 1;
        beta[i - 1] = beta[i] * h[(k + 1, k)];
    }
    let k = m - 1;
    let mut sys = DMatrix::<f64>::zeros(k, k);
    let mut rhs = nalgebra::DVector::<f64>::zeros(k);
    for (j, &mu) in mus.iter().take(k).enumerate() {
        let z = mu + 1.0;
        let p = leading_charpolys(h, lo, m, z);
        let pm1 = p[m - 1];
        for i in 0..k {
            sys[(j, i)] = p[i];
        }
        rhs[j] = (z - xm) * pm1;
    }
    let y = sys.lu().solve(&rhs)?;
    let mut b = Vec::with_capacity(k);
    for i in 0..k {
        if beta[i] == 0.0 {
            return None;
        }
        let x = y[i] / beta[i];
        b.push(h[(lo + i, last)] - x);
    }
    b.iter().all(|v| v.is_finite()).then_some(b)
}

/// `count` values summing to `sum`, spread by `scale` around the mean.
fn spread(count: usize, sum: f64, scale: f64, jitter: usize) -> Vec<f64> {
    if count == 1 {
        return vec![sum];
    }
    let mut t: Vec<f64> = (0..count)
        .map(|k| {
            -1.0 + 2.0 * k as f64 / (count - 1) as f64 + 0.1 * jitter as f64 * ((k + 1) as f64).sin()
        })
        .collect();
    let mean = t.iter().sum::<f64>() / count as f64;
    for v in t.iter_mut() {
        *v -= mean;
    }
    t.iter().map(|v| sum / count as f64 + scale * v).collect()
}

fn far_from(v: f64, used: &[f64], gap: f64) -> bool {
    used.iter().all(|u| (u - v).abs() > gap)
}

struct Candidate {
    r: RMat,
    mu: Vec<f64>,
    anchor: Option<usize>,
    score: f64,
}

pub(crate) fn eigenvector(d: &DMatrix<f64>, mu: f64) -> Vec<f64> {
    let n = d.nrows();
    let shifted = d - DMatrix::<f64>::identity(n, n) * mu;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let k = (0..n)
        .min_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]))
        .unwrap_or(0);
    v_t.row(k).iter().copied().collect()
}

fn try_candidate(
    h: &RMat,
    blocks: &[(usize, usize)],
    anchor_block: Option<usize>,
    anchor_value: f64,
    scale_factor: f64,
    jitter: usize,
) -> Option<Candidate> {
    let n = h.n();
    let hnorm = h.norm_fro();
    let gap = 1e-3 * (1.0 + hnorm / (n as f64).sqrt());
    let mut g = RMat::identity(n);
    let mut mu = vec![0.0; n];
    let mut used: Vec<f64> = Vec::new();
    let mut anchor = None;
    // anchor block first so its fixed value is reserved
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    if let Some(ab) = anchor_block {
        order.retain(|&x| x != ab);
        order.insert(0, ab);
    }
    for bi in order {
        let (lo, m) = blocks[bi];
        if m == 1 {
            let hv = h[(lo, lo)];
            let (sign, v) = if far_from(hv - 1.0, &used, gap) {
                (1.0, hv - 1.0)
            } else if far_from(hv + 1.0, &used, gap) {
                (-1.0, hv + 1.0)
            } else {
                return None;
            };
            g[(lo, lo)] = sign;
            mu[lo] = v;
            used.push(v);
            continue;
        }
        let trace: f64 = (lo..lo + m).map(|i| h[(i, i)]).sum();
        let sum = trace + 2.0 - m as f64;
        let block = h.submatrix(lo, lo, m, m);
        let scale = scale_factor * (block.norm_fro() / (m as f64).sqrt()).max(1.0);
        let vals = if Some(bi) == anchor_block {
            let mut v = vec![anchor_value];
            v.extend(spread(m - 1, sum - anchor_value, scale, jitter));
            v
        } else {
            spread(m, sum, scale, jitter)
        };
        for (k, &v) in vals.iter().enumerate() {
            if !far_from(v, &used, gap) || !far_from(v, &vals[..k], gap) {
                return None;
            }
        }
        let b = block_involution_column(h, lo, m, &vals)?;
        let last = lo + m - 1;
        g[(last, last)] = -1.0;
        for (i, bv) in b.iter().enumerate() {
            g[(lo + i, last)] = *bv;
        }
        for (k, &v) in vals.iter().enumerate() {
            mu[lo + k] = v;
        }
        if Some(bi) == anchor_block {
            anchor = Some(lo);
        }
        used.extend(vals);
    }
    let d = to_na(&(h - &g));
    let cols: Vec<Vec<f64>> = mu.iter().map(|&v| eigenvector(&d, v)).collect();
    let r = RMat::from_columns(&cols);
    let rc = CMat::from_real(&r);
    let k = cond(&rc);
    if !k.is_finite() || k > MAX_SPLIT_COND {
        return None;
    }
    let dr = &from_na(&d) * &r;
    let rdiag = &r * &RMat::diag(&mu);
    if (&dr - &rdiag).norm_fro() > 1e-9 * (1.0 + hnorm) {
        return None;
    }
    Some(Candidate {
        score: k * (1.0 + g.norm_fro()),
        r,
        mu,
        anchor,
    })
}

/// Floating route; `None` when no candidate spectrum gives a usable split.
pub fn hessenberg_split(b: &RMat, want_anchor: bool, seed: u64) -> Option<RealSplit> {
    let n = b.n();
    if n == 0 {
        return None;
    }
    let p = random_orthogonal(n, seed);
    let b1 = p.transpose() * to_na(b) * &p;
    let (q, hm) = b1.hessenberg().unpack();
    let qt = from_na(&(&p * q));
    let mut h = from_na(&hm);
    let hnorm = h.norm_fro().max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            h[(i, j)] = 0.0;
        }
    }
    let mut blocks = Vec::new();
    let mut lo = 0;
    for k in 0..n {
        let end = k + 1 == n || h[(k + 1, k)].abs() <= DEFLATE_REL * hnorm;
        if end {
            if k + 1 < n {
                h[(k + 1, k)] = 0.0;
            }
            blocks.push((lo, k + 1 - lo));
            lo = k + 1;
        }
    }
    let anchor_block = if want_anchor {
        let best = (0..blocks.len())
            .filter(|&i| blocks[i].1 >= 2)
            .max_by_key(|&i| blocks[i].1)?;
        Some(best)
    } else {
        None
    };
    let anchors: &[f64] = if want_anchor { &[0.0, 2.0] } else { &[0.0] };
    let mut best: Option<Candidate> = None;
    for &av in anchors {
        for &sf in &SPREADS {
            for jitter in 0..3 {
                if let Some(c) = try_candidate(&h, &blocks, anchor_block, av, sf, jitter) {
                    if best.as_ref().is_none_or(|b| c.score < b.score) {
                        best = Some(c);
                    }
                    break;
                }
            }
        }
    }
    let cand = best?;
    let w = &qt * &cand.r;
    // C from B itself keeps the sum exact; rounding lands in C^2 - I
    let mut c = &(&inverse(&w).ok()? * b) * &w;
    for (i, v) in cand.mu.iter().enumerate() {
        c[(i, i)] -= v;
    }
    Some(RealSplit {
        w: CMat::from_real(&w),
        c,
        mu: cand.mu,
        anchor: cand.anchor,
        route: SplitRoute::Hessenberg,
    })
}

fn to_f(m: &Mat<Q>) -> RMat {
    m.map(q_to_f64)
}

/// Permutation `P` with `P[old, new] = 1` for the block order `order`.
fn block_permutation(sizes: &[usize], order: &[usize]) -> Mat<Q> {
    let n: usize = sizes.iter().sum();
    let starts: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let st = *acc;
            *acc += s;
            Some(st)
        })
        .collect();
    let mut p = Mat::<Q>::zeros(n, n);
    let mut col = 0;
    for &bi in order {
        for k in 0..sizes[bi] {
            p[(starts[bi] + k, col)] = Q::one();
            col += 1;
        }
    }
    p
}

/// Exact route. With `want_anchor` the leading block is made non-scalar (by
/// merging two scalar blocks, flipping one sign by the consimilarity
/// `[a] ~ [-a]` when they agree) and `mu[0]` is 0, or 2 for `x^2 - c`.
pub fn exact_split(bq: &Mat<Q>, want_anchor: bool) -> Result<RealSplit> {
    let n = bq.n();
    if !want_anchor {
        let t = thm1a_decompose(bq)?;
        let r_inv = exact_inverse(&t.r)?;
        let c = &(&r_inv * &t.v) * &t.r;
        return Ok(RealSplit {
            w: CMat::from_real(&to_f(&t.r)),
            c: to_f(&c),
            mu: t.eig.iter().map(q_to_f64).collect(),
            anchor: None,
            route: SplitRoute::Exact,
        });
    }
    if bq.is_zero() || n < 2 {
        return Err(Error::InvalidParameters(
            "an anchored split needs a nonzero matrix of size >= 2".into(),
        ));
    }
    let frob = frobenius_form(bq)?;
    let sizes = frob.block_sizes();
    let mut blocks = frob.blocks.clone();
    let mut flip = false;
    let order: Vec<usize>;
    let mut merge_t: Option<Mat<Q>> = None;
    if let Some(i) = sizes.iter().position(|&s| s > 1) {
        order = std::iter::once(i)
            .chain((0..blocks.len()).filter(|&k| k != i))
            .collect();
        blocks = order.iter().map(|&k| frob.blocks[k].clone()).collect();
    } else {
        let vals: Vec<Q> = blocks.iter().map(|f| -f.monic().coeff(0)).collect();
        let i = vals.iter().position(|v| !v.is_zero()).expect("nonzero matrix");
        let j = (0..vals.len())
            .find(|&k| k != i && vals[k] != vals[i])
            .unwrap_or(if i == 0 { 1 } else { 0 });
        order = [i, j]
            .into_iter()
            .chain((0..vals.len()).filter(|&k| k != i && k != j))
            .collect();
        let mut ai = vals[i].clone();
        if ai == vals[j] {
            flip = true;
            ai = -ai;
        }
        let (fi, fj) = (Poly::linear(ai), Poly::linear(vals[j].clone()));
        let (t, _) = merge_companions(&fi, &fj)?;
        merge_t = Some(t);
        let merged = fi.mul(&fj);
        blocks = std::iter::once(merged)
            .chain(order[2..].iter().map(|&k| frob.blocks[k].clone()))
            .collect();
    }
    let p = block_permutation(&sizes, &order);
    // leading block: corollary split with the anchor value first
    let f1 = blocks[0].monic();
    let m1 = f1.degree().unwrap_or(0);
    let a1 = f1.recurrence()[0].clone();
    let two = Q::from_integer(2.into());
    let mu1 = if m1 == 2 && a1.is_zero() { two.clone() } else { Q::zero() };
    let sum = &a1 + &two - Q::from_integer((m1 as i64).into());
    let mut mus = vec![mu1.clone()];
    mus.extend(choose_values(m1 - 1, &(&sum - &mu1), std::slice::from_ref(&mu1)));
    let lead = corollary_split(&f1, &mus)?;
    let mut used = mus.clone();
    let rest = split_companion_blocks(&blocks[1..], &mut used)?;
    let g = Mat::direct_sum(
        &std::iter::once(lead.g.clone())
            .chain(rest.iter().map(|s| s.g.clone()))
            .collect::<Vec<_>>(),
    );
    let r = Mat::direct_sum(
        &std::iter::once(lead.r.clone())
            .chain(rest.iter().map(|s| s.r.clone()))
            .collect::<Vec<_>>(),
    );
    let eig: Vec<Q> = mus
        .iter()
        .cloned()
        .chain(rest.iter().flat_map(|s| s.eig.iter().cloned()))
        .collect();
    let c = &(&exact_inverse(&r)? * &g) * &r;
    // B = conj(U) B' U^-1 with U = s_inv P U3 U4 R
    let left = &frob.s_inv * &p;
    let mut right = r;
    if let Some(t) = merge_t {
        let mut u4 = Mat::<Q>::identity(n);
        u4.set_block(0, 0, &exact_inverse(&t)?);
        right = &u4 * &right;
    }
    let mut u3 = CMat::identity(n);
    if flip {
        u3[(0, 0)] = C64::new(0.0, 1.0);
    }
    let w = &(&CMat::from_real(&to_f(&left)) * &u3) * &CMat::from_real(&to_f(&right));
    Ok(RealSplit {
        w,
        c: to_f(&c),
        mu: eig.iter().map(q_to_f64).collect(),
        anchor: Some(0),
        route: SplitRoute::Exact,
    })
}

/// Largest numerator or denominator bit length after rationalization.
pub fn rational_height(bq: &Mat<Q>) -> u64 {
    bq.data()
        .iter()
        .map(|v| v.numer().bits().max(v.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// Height below which the exact route is tried first.
pub const EXACT_FIRST_HEIGHT: u64 = 20;

pub fn split_accepted(b: &RMat, s: &RealSplit) -> bool {
    let bn = b.norm_fro();
    let cn = s.c.norm_fro();
    s.residual(b) <= 1e-9 * (1.0 + bn) && s.involution_defect() <= 1e-9 * (1.0 + cn * cn)
}

/// Route order for a real matrix: structured (low-height) input goes exact
/// first.
pub fn route_order(b: &RMat) -> (Mat<Q>, [SplitRoute; 2]) {
    let bq = rationalize_real(b);
    let order = if rational_height(&bq) <= EXACT_FIRST_HEIGHT {
        [SplitRoute::Exact, SplitRoute::Hessenberg]
    } else {
        [SplitRoute::Hessenberg, SplitRoute::Exact]
    };
    (bq, order)
}

pub fn split_by(
    route: SplitRoute,
    b: &RMat,
    bq: &Mat<Q>,
    want_anchor: bool,
    seed: u64,
) -> Option<RealSplit> {
    let s = match route {
        SplitRoute::Hessenberg => hessenberg_split(b, want_anchor, seed)?,
        SplitRoute::Exact => exact_split(bq, want_anchor).ok()?,
    };
    split_accepted(b, &s).then_some(s)
}

/// First accepted split along [`route_order`].
pub fn real_split(b: &RMat, want_anchor: bool, seed: u64) -> Result<RealSplit> {
    let (bq, order) = route_order(b);
    for route in order {
        if let Some(s) = split_by(route, b, &bq, want_anchor, seed) {
            return Ok(s);
        }
    }
    Err(Error::NoTransform(
        "neither split route produced a verified involutory split".into(),
    ))
}
