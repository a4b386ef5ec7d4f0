//! Consimilarity canonical form from the Jordan data of `conj(A) A` and the
//! ranks of the alternating products `A, conj(A) A, A conj(A) A, ...`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matcore::eigen::{eigenvalues_bounded, DEFAULT_DESK_BOUND};
use crate::matcore::float::singular_values;
use crate::matcore::json::cmat_to_json;
use crate::matcore::{CMat, C64};

use super::block::{build_block, ConCanonicalBlock};
use super::solve::{solve_blocks_capped, DEFAULT_SEED};

/// Relative clustering tolerances tried in turn.
pub const CLUSTER_LADDER: [f64; 4] = [1e-6, 1e-5, 1e-4, 1e-3];
const RANK_REL: f64 = 1e-10;
/// A merged Jordan cluster split into nearby simple eigenvalues can still be
/// diagonalized, but only by a transform far worse conditioned than this.
const FORM_MAX_COND: f64 = 1e7;

#[derive(Clone, Debug, PartialEq)]
pub struct ConCanonicalForm {
    pub blocks: Vec<ConCanonicalBlock>,
    /// `conj(S)^-1 A S` is the direct sum of the blocks.
    pub s: CMat,
    /// `||A S - conj(S) B||_F`.
    pub residual: f64,
}

impl ConCanonicalForm {
    pub fn canonical(&self) -> CMat {
        CMat::direct_sum(
            &self
                .blocks
                .iter()
                .map(|b| build_block(b).expect("validated block"))
                .collect::<Vec<_>>(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "blocks": self.blocks.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
            "S": cmat_to_json(&self.s),
            "residual": format!("{:e}", self.residual),
        })
    }
}

fn rank_above(m: &CMat, bound: f64) -> usize {
    singular_values(m).iter().filter(|&&v| v > bound).count()
}

/// Sizes of the nilpotent blocks, from the alternating-product ranks.
fn zero_block_sizes(a: &CMat) -> Vec<usize> {
    let n = a.n();
    let mut ranks = vec![n];
    let abar = a.conj();
    let mut p = a.clone();
    let scale = a.norm_fro().max(f64::MIN_POSITIVE);
    for j in 1..=n {
        // noise in the j-fold product is relative to ||A||^j, not to ||P_j||
        let r = rank_above(&p, RANK_REL * scale.powi(j as i32));
        ranks.push(r);
        if r == ranks[j - 1] {
            break;
        }
        p = if j % 2 == 1 { &abar * &p } else { a * &p };
    }
    // ranks[j-1] - ranks[j] blocks have size >= j
    let mut sizes = Vec::new();
    for j in 1..ranks.len() {
        let at_least = ranks[j - 1] - ranks[j];
        let at_least_next = if j + 1 < ranks.len() {
            ranks[j] - ranks[j + 1]
        } else {
            0
        };
        for _ in 0..at_least.saturating_sub(at_least_next) {
            sizes.push(j);
        }
    }
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    sizes
}

#[derive(Clone, Debug)]
struct Cluster {
    mean: C64,
    count: usize,
}

/// Single-linkage clustering at `tol * max(1, |z|)`.
fn cluster(ev: &[C64], tol: f64) -> Vec<Cluster> {
    let n = ev.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(ev[i].norm()).max(ev[j].norm());
            if (ev[i] - ev[j]).norm() <= tol * scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &e) in ev.iter().enumerate().take(n) {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(e),
            None => groups.push((r, vec![e])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| Cluster {
            mean: g.iter().sum::<C64>() / g.len() as f64,
            count: g.len(),
        })
        .collect()
}

/// Jordan block sizes of `m` at `sigma` from nullities of powers, using the
/// relative singular-value threshold `rel`; `None` when inconsistent with
/// the algebraic multiplicity `count`.
fn jordan_sizes(m: &CMat, sigma: C64, count: usize, rel: f64) -> Option<Vec<usize>> {
    let n = m.n();
    let shifted = m - &CMat::scalar(n, sigma);
    let mut nullity = vec![0usize];
    let mut p = CMat::identity(n);
    for _ in 0..count {
        p = &p * &shifted;
        let scale = shifted.norm_fro().max(1.0).powi(nullity.len() as i32);
        let s = singular_values(&p);
        let k = s.iter().filter(|&&v| v <= rel * scale).count();
        nullity.push(k);
        if k >= count {
            break;
        }
    }
    if *nullity.last()? != count {
        return None;
    }
    let mut sizes = Vec::new();
    for j in 1..nullity.len() {
        let ge_j = nullity[j] - nullity[j - 1];
        let ge_next = if j + 1 < nullity.len() {
            nullity[j + 1] - nullity[j]
        } else {
            0
        };
        if ge_next > ge_j {
            return None;
        }
        for _ in 0..ge_j - ge_next {
            sizes.push(j);
        }
    }
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    Some(sizes)
}

/// All partitions of `c`, largest parts first.
fn partitions(c: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(c, c, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    PositiveReal,
    NegativeReal,
    Upper,
    Lower,
}

fn classify(z: C64, tol: f64) -> Kind {
    if z.im.abs() <= tol * z.norm().max(1.0) {
        if z.re > 0.0 {
            Kind::PositiveReal
        } else {
            Kind::NegativeReal
        }
    } else if z.im > 0.0 {
        Kind::Upper
    } else {
        Kind::Lower
    }
}

fn blocks_for(kind: Kind, sigma: C64, sizes: &[usize]) -> Option<Vec<ConCanonicalBlock>> {
    match kind {
        Kind::PositiveReal => Some(
            sizes
                .iter()
                .map(|&n| ConCanonicalBlock::J {
                    n,
                    lambda: sigma.re.sqrt(),
                })
                .collect(),
        ),
        Kind::NegativeReal => {
            // sizes must pair up
            if sizes.len() % 2 == 1 || sizes.chunks(2).any(|p| p[0] != p[1]) {
                return None;
            }
            Some(
                sizes
                    .chunks(2)
                    .map(|p| ConCanonicalBlock::H {
                        m: p[0],
                        mu: C64::new(sigma.re, 0.0),
                    })
                    .collect(),
            )
        }
        Kind::Upper => Some(
            sizes
                .iter()
                .map(|&m| ConCanonicalBlock::H { m, mu: sigma })
                .collect(),
        ),
        Kind::Lower => Some(Vec::new()),
    }
}

fn sort_blocks(blocks: &mut [ConCanonicalBlock]) {
    let key = |b: &ConCanonicalBlock| match *b {
        ConCanonicalBlock::J { n, lambda } => (0, -lambda, 0.0, n),
        ConCanonicalBlock::H { m, mu } => (1, mu.re, mu.im, m),
    };
    blocks.sort_by(|x, y| {
        let (a, b) = (key(x), key(y));
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
            .then(b.3.cmp(&a.3))
    });
}

fn try_blocks(a: &CMat, blocks: &[ConCanonicalBlock], seed: u64) -> Option<ConCanonicalForm> {
    let mats: Vec<CMat> = blocks.iter().map(|b| build_block(b).ok()).collect::<Option<_>>()?;
    if mats.iter().map(|m| m.n()).sum::<usize>() != a.n() {
        return None;
    }
    solve_blocks_capped(a, &mats, seed, FORM_MAX_COND).map(|(s, residual)| ConCanonicalForm {
        blocks: blocks.to_vec(),
        s,
        residual,
    })
}

pub fn concanonical_form(a: &CMat) -> Result<ConCanonicalForm> {
    concanonical_form_seeded(a, DEFAULT_SEED)
}

pub fn concanonical_form_seeded(a: &CMat, seed: u64) -> Result<ConCanonicalForm> {
    let n = a.n();
    if n > DEFAULT_DESK_BOUND {
        return Err(Error::DeskScale {
            n,
            bound: DEFAULT_DESK_BOUND,
        });
    }
    let m = &a.conj() * a;
    let mut ev = eigenvalues_bounded(&m, DEFAULT_DESK_BOUND)?;
    let zero_sizes = zero_block_sizes(a);
    let zero_total: usize = zero_sizes.iter().sum();
    ev.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    let rest: Vec<C64> = ev[zero_total..].to_vec();
    let zero_blocks: Vec<ConCanonicalBlock> = zero_sizes
        .iter()
        .map(|&k| ConCanonicalBlock::J { n: k, lambda: 0.0 })
        .collect();

    for &tol in &CLUSTER_LADDER {
        let clusters = cluster(&rest, tol);
        let kinds: Vec<Kind> = clusters.iter().map(|c| classify(c.mean, tol)).collect();
        // conjugate clusters must balance
        let up: usize = clusters
            .iter()
            .zip(&kinds)
            .filter(|(_, k)| **k == Kind::Upper)
            .map(|(c, _)| c.count)
            .sum();
        let low: usize = clusters
            .iter()
            .zip(&kinds)
            .filter(|(_, k)| **k == Kind::Lower)
            .map(|(c, _)| c.count)
            .sum();
        if up != low {
            continue;
        }
        let sigma = |c: &Cluster, k: Kind| match k {
            Kind::PositiveReal | Kind::NegativeReal => C64::new(c.mean.re, 0.0),
            _ => c.mean,
        };
        for &rel in &[RANK_REL, tol, tol.sqrt()] {
            let mut blocks = zero_blocks.clone();
            let mut ok = true;
            for (c, &k) in clusters.iter().zip(&kinds) {
                if k == Kind::Lower {
                    continue;
                }
                let s = sigma(c, k);
                let sizes = if c.count == 1 {
                    Some(vec![1])
                } else {
                    jordan_sizes(&m, s, c.count, rel)
                };
                match sizes.and_then(|sz| blocks_for(k, s, &sz)) {
                    Some(b) => blocks.extend(b),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            sort_blocks(&mut blocks);
            if let Some(f) = try_blocks(a, &blocks, seed) {
                return Ok(f);
            }
        }
        // Exhaustive partitions for a single multiple cluster.
        let multi: Vec<usize> = (0..clusters.len())
            .filter(|&i| clusters[i].count > 1 && kinds[i] != Kind::Lower)
            .collect();
        if multi.len() == 1 && clusters[multi[0]].count <= 6 {
            let i = multi[0];
            for part in partitions(clusters[i].count) {
                let mut blocks = zero_blocks.clone();
                let mut ok = true;
                for (j, (c, &k)) in clusters.iter().zip(&kinds).enumerate() {
                    if k == Kind::Lower {
                        continue;
                    }
                    let sizes = if j == i { part.clone() } else { vec![1; c.count] };
                    match blocks_for(k, sigma(c, k), &sizes) {
                        Some(b) => blocks.extend(b),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                sort_blocks(&mut blocks);
                if let Some(f) = try_blocks(a, &blocks, seed) {
                    return Ok(f);
                }
            }
        }
    }
    Err(Error::CanonicalFormFailed {
        best_residual: f64::INFINITY,
    })
}

/// Block multisets agree up to `tol` in the parameters.
pub fn same_blocks(x: &[ConCanonicalBlock], y: &[ConCanonicalBlock], tol: f64) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut used = vec![false; y.len()];
    'outer: for b in x {
        for (j, c) in y.iter().enumerate() {
            if used[j] {
                continue;
            }
            let close = match (*b, *c) {
                (
                    ConCanonicalBlock::J { n, lambda },
                    ConCanonicalBlock::J {
                        n: n2,
                        lambda: l2,
                    },
                ) => n == n2 && (lambda - l2).abs() <= tol * (1.0 + lambda.abs()),
                (ConCanonicalBlock::H { m, mu }, ConCanonicalBlock::H { m: m2, mu: mu2 }) => {
                    m == m2
                        && ((mu - mu2).norm() <= tol * (1.0 + mu.norm())
                            || (mu - mu2.conj()).norm() <= tol * (1.0 + mu.norm()))
                }
                _ => false,
            };
            if close {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}
