//! Sums of at most five skew-coninvolutory matrices for even sizes.

use crate::concanon::{concanonical_form_seeded, jordan, skew_base, ConCanonicalBlock, DEFAULT_SEED};
use crate::conisum::sum::{absorb_defect, check_size, pad_summands, transport};
use crate::conisum::{DecompKind, Decomposition};
use crate::error::{Error, Result};
use crate::matcore::float::cond;
use crate::matcore::{CMat, Matrix, RMat};

use super::hblock::skew_sum_hblock;
use super::jordan::{diag_skew_summands, skew_sum_jordan};
use super::pairs::skew_diag_four;

pub fn skew_sum_diag_pair(a: f64, b: f64) -> Decomposition {
    let i = crate::matcore::C64::new(0.0, 1.0);
    let ks = skew_diag_four(
        &crate::matcore::C64::new(a, 0.0),
        &crate::matcore::C64::new(b, 0.0),
        &i,
    );
    let mut d = Decomposition::from_floating(DecompKind::SkewSum, ks.to_vec());
    d.note("diagonal", format!("real pair at c = {}, scalar pair at c = {}", (a - b) / 4.0, (a + b) / 4.0));
    d
}

/// Odd-size Jordan blocks ordered so that consecutive ones, which share a
/// straddling pair, carry different eigenvalues wherever possible. Even
/// blocks go first.
pub fn order_jordan_blocks(blocks: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = blocks.iter().copied().filter(|b| b.0 % 2 == 0).collect();
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for &(n, l) in blocks.iter().filter(|b| b.0 % 2 == 1) {
        match groups.iter_mut().find(|g| g.0 == l) {
            Some(g) => g.1.push(n),
            None => groups.push((l, vec![n])),
        }
    }
    loop {
        groups.retain(|g| !g.1.is_empty());
        groups.sort_by_key(|g| std::cmp::Reverse(g.1.len()));
        match groups.len() {
            0 => break,
            1 => {
                let (l, sizes) = groups.remove(0);
                out.extend(sizes.into_iter().map(|n| (n, l)));
                break;
            }
            _ => {
                let x = groups[0].1.pop().expect("nonempty");
                let y = groups[1].1.pop().expect("nonempty");
                out.push((x, groups[0].0));
                out.push((y, groups[1].0));
            }
        }
    }
    out
}

fn zero_sum(n: usize) -> Decomposition {
    let k = skew_base(n / 2);
    let mut d = Decomposition::from_floating(DecompKind::SkewSum, vec![k.clone(), -&k]);
    d.note("zero", "K + (-K) with K = [[0, I], [-I, 0]]");
    d
}

fn real_diagonal(a: &CMat) -> Option<Vec<f64>> {
    let n = a.n();
    let off = (0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)].norm() == 0.0));
    (off && a.im().max_abs() == 0.0).then(|| (0..n).map(|i| a[(i, i)].re).collect())
}

/// One direct-sum part: its summands, size, log and flags.
struct Part {
    size: usize,
    summands: Vec<CMat>,
    log: Vec<(String, String)>,
    flags: Vec<String>,
}

impl Part {
    fn from_decomposition(size: usize, d: Decomposition) -> Self {
        Part {
            size,
            summands: d.summands_c64(),
            log: d.log.into_iter().map(|e| (e.stage, e.detail)).collect(),
            flags: d.flags,
        }
    }
}

pub fn skew_sum(a: &Matrix) -> Result<Decomposition> {
    skew_sum_seeded(a, DEFAULT_SEED)
}

pub fn skew_sum_seeded(a: &Matrix, seed: u64) -> Result<Decomposition> {
    let n = a.n();
    if n % 2 == 1 {
        return Err(Error::UnsupportedSize {
            what: "skew_sum",
            requirement: "even n (skew-coninvolutory matrices have even size)",
            n,
        });
    }
    check_size(n, "skew_sum", 2)?;
    let ac = a.to_c64();
    if ac.max_abs() == 0.0 {
        return Ok(zero_sum(n));
    }
    if let Some(diag) = real_diagonal(&ac) {
        let mut d = Decomposition::from_floating(DecompKind::SkewSum, diag_skew_summands(&diag).to_vec());
        d.note("case", "real diagonal: paired 2x2 diagonal blocks");
        return Ok(d);
    }
    let form = concanonical_form_seeded(&ac, seed)?;
    // column ranges of S for each canonical block
    let mut starts = Vec::with_capacity(form.blocks.len());
    let mut at = 0;
    for b in &form.blocks {
        starts.push(at);
        at += b.size();
    }
    let mut h_parts: Vec<(usize, usize, num_complex::Complex64)> = Vec::new();
    let mut j_blocks: Vec<(usize, f64, usize)> = Vec::new();
    for (b, &st) in form.blocks.iter().zip(&starts) {
        match *b {
            ConCanonicalBlock::H { m, mu } => h_parts.push((st, m, mu)),
            ConCanonicalBlock::J { n, lambda } => j_blocks.push((n, lambda, st)),
        }
    }
    // reorder Jordan blocks, keeping track of their columns
    let ordered = order_jordan_blocks(&j_blocks.iter().map(|&(n, l, _)| (n, l)).collect::<Vec<_>>());
    let mut pool = j_blocks.clone();
    let mut j_order: Vec<(usize, f64, usize)> = Vec::new();
    for (n, l) in ordered {
        let k = pool.iter().position(|&(m, x, _)| m == n && x == l).expect("block present");
        j_order.push(pool.remove(k));
    }
    let mut cols: Vec<usize> = Vec::with_capacity(n);
    let mut parts: Vec<Part> = Vec::new();
    for &(st, m, mu) in &h_parts {
        cols.extend(st..st + 2 * m);
        parts.push(Part::from_decomposition(2 * m, skew_sum_hblock(m, mu)?));
    }
    if !j_order.is_empty() {
        let size: usize = j_order.iter().map(|b| b.0).sum();
        for &(m, _, st) in &j_order {
            cols.extend(st..st + m);
        }
        let bj = RMat::direct_sum(
            &j_order
                .iter()
                .map(|&(m, l, _)| jordan(m, num_complex::Complex64::new(l, 0.0)).re())
                .collect::<Vec<_>>(),
        );
        let part = if j_order.iter().all(|b| b.0 == 1) {
            let diag: Vec<f64> = j_order.iter().map(|b| b.1).collect();
            let mut d = Decomposition::from_floating(DecompKind::SkewSum, diag_skew_summands(&diag).to_vec());
            d.note("case", "diagonal Jordan part: paired 2x2 diagonal blocks");
            d
        } else {
            skew_sum_jordan(&bj, seed)?
        };
        parts.push(Part::from_decomposition(size, part));
    }
    let len = parts.iter().map(|p| p.summands.len()).max().unwrap_or(0);
    let mut d = Decomposition::new(DecompKind::SkewSum);
    d.note(
        "form",
        format!(
            "{} H blocks, {} J blocks, cond(S) = {:.3e}",
            h_parts.len(),
            j_order.len(),
            cond(&form.s)
        ),
    );
    for p in parts.iter_mut() {
        for (stage, detail) in p.log.drain(..) {
            d.note(&stage, detail);
        }
        for f in p.flags.drain(..) {
            if !d.has_flag(&f) {
                d.flags.push(f);
            }
        }
        if p.summands.len() < len {
            let filler = skew_base(p.size / 2);
            let from = p.summands.len();
            p.summands = pad_summands(std::mem::take(&mut p.summands), len, &filler)?;
            d.note("pad", format!("part of size {} padded {from} -> {len}", p.size));
        }
    }
    let s = form.s.permute_columns(&cols);
    let joined: Vec<CMat> = (0..len)
        .map(|k| CMat::direct_sum(&parts.iter().map(|p| p.summands[k].clone()).collect::<Vec<_>>()))
        .collect();
    let mut ks = transport(&s, &joined)?;
    absorb_defect(&ac, &mut ks);
    d.summands = ks.into_iter().map(Matrix::Floating).collect();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify_decomposition;
    use crate::gen::{jordan_block, random_complex, rng};
    use crate::matcore::{Tolerance, C64};

    fn check(a: &Matrix, d: &Decomposition) {
        let cert = verify_decomposition(a, d, Tolerance::certify_default());
        assert!(cert.pass, "{:?}", cert.failures);
    }

    fn real(m: RMat) -> Matrix {
        Matrix::Floating(CMat::from_real(&m))
    }

    #[test]
    fn diag_pair_examples() {
        let d = skew_sum_diag_pair(3.0, 1.0);
        assert_eq!(d.count(), 4);
        check(&real(RMat::diag(&[3.0, 1.0])), &d);
        let d = skew_sum_diag_pair(2.0, 2.0);
        let ks = d.summands_c64();
        assert_eq!(ks[2][(1, 0)], C64::new(0.0, 2.0));
    }

    #[test]
    fn odd_size_rejected() {
        let a = real(RMat::identity(3));
        assert!(matches!(skew_sum(&a), Err(Error::UnsupportedSize { n: 3, .. })));
    }

    #[test]
    fn zero_and_scalars() {
        let z = real(RMat::zeros(2, 2));
        let d = skew_sum(&z).unwrap();
        assert_eq!(d.count(), 2);
        check(&z, &d);
        for l in [1.0, 5.0] {
            let a = real(RMat::diag(&[l; 4]));
            let d = skew_sum(&a).unwrap();
            assert_eq!(d.count(), 4);
            check(&a, &d);
        }
    }

    #[test]
    fn structured_inputs() {
        let h = RMat::from_rows(vec![vec![0.0, 1.0], vec![-2.0, 0.0]]);
        for (a, max) in [
            (jordan_block(2, 3.0), 5),
            (h.clone(), 5),
            (RMat::direct_sum(&[RMat::from_rows(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]), RMat::diag(&[1.0, 2.0])]), 5),
            (RMat::direct_sum(&[h, RMat::diag(&[1.0, 2.0])]), 5),
            (RMat::diag(&[5.0, -5.0, 3.0, 3.0]), 4),
            (RMat::direct_sum(&[jordan_block(3, 0.0), jordan_block(1, 0.0)]), 6),
        ] {
            let a = real(a);
            let d = skew_sum(&a).unwrap();
            assert!(d.count() <= max, "{} summands", d.count());
            check(&a, &d);
        }
    }

    #[test]
    fn random_even_sizes() {
        let mut r = rng(5);
        for n in [2, 4, 6, 8] {
            let a = Matrix::Floating(random_complex(n, 1.0, &mut r));
            let d = skew_sum(&a).unwrap();
            assert!(d.count() <= 5 && d.flags.is_empty());
            check(&a, &d);
        }
    }

    #[test]
    fn jordan_order_avoids_equal_neighbours() {
        let o = order_jordan_blocks(&[(1, 2.0), (1, 2.0), (1, 3.0), (1, 3.0), (2, 1.0)]);
        assert_eq!(o[0], (2, 1.0));
        for w in o[1..].chunks(2) {
            assert_ne!(w[0].1, w[1].1);
        }
    }
}
