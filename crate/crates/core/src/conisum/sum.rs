//! Sums of at most five coninvolutory matrices, and the splits into a
//! coninvolutory plus a real-condiagonalizable part.

use crate::certify::verify_decomposition;
use crate::concanon::{consimilar_to_real, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::matcore::eigen::DEFAULT_DESK_BOUND;
use crate::matcore::float::{cond, inverse};
use crate::matcore::scalar::q_to_f64;
use crate::matcore::{CMat, Matrix, RMat, Tolerance, C64};

use super::decomposition::{DecompKind, Decomposition};
use super::pairs::diag_four;
use super::real2::coninv_sum_2x2;
use super::split::{route_order, split_by, RealSplit, SplitRoute};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumOptions {
    /// Pad the summand list to exactly this many terms.
    pub pad_to: Option<usize>,
    pub seed: u64,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions {
            pad_to: None,
            seed: DEFAULT_SEED,
        }
    }
}

/// `S` and real `B` with `A = conj(S) B S^-1`; exact input is already real.
pub(crate) fn real_target(a: &Matrix) -> Result<(CMat, RMat, f64)> {
    match a {
        Matrix::Exact(m) => Ok((CMat::identity(m.n()), m.map(q_to_f64), 0.0)),
        Matrix::Floating(m) => {
            let rf = consimilar_to_real(m)?;
            Ok((rf.s, rf.b, rf.max_imag))
        }
    }
}

pub(crate) fn check_size(n: usize, what: &'static str, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::UnsupportedSize {
            what,
            requirement: if min == 2 { "n >= 2" } else { "n >= 1" },
            n,
        });
    }
    if n > DEFAULT_DESK_BOUND {
        return Err(Error::DeskScale {
            n,
            bound: DEFAULT_DESK_BOUND,
        });
    }
    Ok(())
}

/// `conj(T) K T^-1` for every `K`.
pub(crate) fn transport(t: &CMat, ks: &[CMat]) -> Result<Vec<CMat>> {
    let t_inv = inverse(t)?;
    let t_bar = t.conj();
    Ok(ks.iter().map(|k| &(&t_bar * k) * &t_inv).collect())
}

/// Adds the rounding defect `A - sum K` to the largest summand, whose
/// coninvolutory check is the most lenient.
pub(crate) fn absorb_defect(a: &CMat, ks: &mut [CMat]) {
    let Some(j) = (0..ks.len()).max_by(|&x, &y| ks[x].norm_fro().total_cmp(&ks[y].norm_fro()))
    else {
        return;
    };
    let mut defect = a.clone();
    for k in ks.iter() {
        defect = &defect - k;
    }
    ks[j] = &ks[j] + &defect;
}

/// Pairs of diagonal positions, adjacent after sorting by value so each
/// pair's difference stays small.
pub(crate) fn pair_positions(mu: &[f64], skip: Option<usize>) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..mu.len()).filter(|&i| Some(i) != skip).collect();
    idx.sort_by(|&x, &y| mu[x].total_cmp(&mu[y]));
    idx.chunks(2).map(|p| (p[0], p[1])).collect()
}

/// Four coninvolutory matrices summing to `diag(mu)`; the `anchor` entry
/// (0 or 2) takes the unimodular border scalars `1, mu - 1, 1, -1`.
pub fn diagonal_four(mu: &[f64], anchor: Option<usize>) -> [CMat; 4] {
    let n = mu.len();
    let mut ks: [CMat; 4] = std::array::from_fn(|_| CMat::zeros(n, n));
    let i = C64::new(0.0, 1.0);
    for (p, q) in pair_positions(mu, anchor) {
        let parts = diag_four(&C64::new(mu[p], 0.0), &C64::new(mu[q], 0.0), &i);
        for (k, part) in ks.iter_mut().zip(parts.iter()) {
            k[(p, p)] = part[(0, 0)];
            k[(p, q)] = part[(0, 1)];
            k[(q, p)] = part[(1, 0)];
            k[(q, q)] = part[(1, 1)];
        }
    }
    if let Some(a) = anchor {
        let border = [1.0, mu[a] - 1.0, 1.0, -1.0];
        for (k, v) in ks.iter_mut().zip(border) {
            k[(a, a)] = C64::new(v, 0.0);
        }
    }
    ks
}

/// Zero-sum padding: `(K, -K)` pairs, and for an odd shortfall one summand
/// split as `e^{i pi/3} K + e^{-i pi/3} K`.
pub fn pad_summands(mut ks: Vec<CMat>, target: usize, filler: &CMat) -> Result<Vec<CMat>> {
    if target < ks.len() {
        return Err(Error::InvalidParameters(format!(
            "cannot pad {} summands down to {target}",
            ks.len()
        )));
    }
    if ks.is_empty() && target > 0 {
        return Err(Error::InvalidParameters("nothing to pad".into()));
    }
    let mut short = target - ks.len();
    if short % 2 == 1 {
        let k = ks.pop().expect("nonempty");
        let w = C64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        ks.push(k.scale(&w));
        ks.push(k.scale(&w.conj()));
        short -= 1;
    }
    for _ in 0..short / 2 {
        ks.push(filler.clone());
        ks.push(-filler);
    }
    Ok(ks)
}

fn zero_sum(n: usize, pad_to: Option<usize>) -> Result<Decomposition> {
    let id = CMat::identity(n);
    let mut d = Decomposition::new(DecompKind::ConinvolutorySum);
    let ks = match pad_to {
        Some(p) if p % 2 == 1 && p >= 3 => {
            let w = C64::from_polar(1.0, 2.0 * std::f64::consts::FRAC_PI_3);
            let base = vec![id.clone(), id.scale(&w), id.scale(&(w * w))];
            d.note("zero", "I + wI + w^2 I with w = exp(2 pi i / 3), padded by (I, -I)");
            pad_summands(base, p, &id)?
        }
        Some(1) => {
            return Err(Error::InvalidParameters(
                "the zero matrix is not coninvolutory".into(),
            ))
        }
        Some(p) => {
            d.note("zero", "I + (-I), padded by (I, -I)");
            pad_summands(vec![id.clone(), -&id], p, &id)?
        }
        None => {
            d.note("zero", "I + (-I)");
            vec![id.clone(), -&id]
        }
    };
    d.summands = ks.into_iter().map(Matrix::Floating).collect();
    Ok(d)
}

fn summands_from_split(split: &RealSplit) -> Vec<CMat> {
    let mut ks = vec![CMat::from_real(&split.c)];
    ks.extend(diagonal_four(&split.mu, split.anchor));
    ks
}

fn max_bound(n: usize) -> usize {
    if n == 2 {
        4
    } else {
        5
    }
}

/// Summands, their log lines and the certified sum residual.
type Candidate<'a> = (Vec<CMat>, Vec<(&'a str, String)>, f64);

pub fn coninv_sum(a: &Matrix) -> Result<Decomposition> {
    coninv_sum_with(a, SumOptions::default())
}

pub fn coninv_sum_with(a: &Matrix, opts: SumOptions) -> Result<Decomposition> {
    let n = a.n();
    check_size(n, "coninv_sum", 2)?;
    if let Some(p) = opts.pad_to {
        if p > max_bound(n) {
            return Err(Error::InvalidParameters(format!(
                "pad_to {p} exceeds the summand bound {} for n = {n}",
                max_bound(n)
            )));
        }
    }
    let ac = a.to_c64();
    if ac.max_abs() == 0.0 {
        return zero_sum(n, opts.pad_to);
    }
    let (s, b, imag) = real_target(a)?;
    let tol = Tolerance::certify_default();
    let mut log = vec![(
        "real-form",
        format!("cond(S) = {:.3e}, discarded imaginary part {imag:.1e}", cond(&s)),
    )];
    let mut best: Option<Candidate> = None;
    if n == 2 {
        let (class, ks) = coninv_sum_2x2(&b)?;
        let t = &s * &CMat::from_real(&class.transform);
        let mut ks = transport(&t, &ks)?;
        absorb_defect(&ac, &mut ks);
        log.push(("case", format!("2x2 real class {:?}", class.kind)));
        best = Some((ks, log.clone(), 0.0));
    } else {
        let anchor = n % 2 == 1;
        let (bq, order) = route_order(&b);
        for route in order {
            let Some(split) = split_by(route, &b, &bq, anchor, opts.seed) else {
                log.push(("route", format!("{} split rejected", route.as_str())));
                continue;
            };
            let t = &s * &split.w;
            let mut ks = transport(&t, &summands_from_split(&split))?;
            absorb_defect(&ac, &mut ks);
            let mut entry_log = log.clone();
            entry_log.push(("route", route.as_str().to_string()));
            entry_log.push((
                "case",
                if anchor {
                    format!(
                        "odd n: involutory part plus bordered diagonal, anchor value {}",
                        split.anchor.map(|i| split.mu[i]).unwrap_or(f64::NAN)
                    )
                } else {
                    "even n: involutory part plus paired diagonal".to_string()
                },
            ));
            entry_log.push(("transform", format!("cond(T) = {:.3e}", cond(&t))));
            let trial = Decomposition::from_floating(DecompKind::ConinvolutorySum, ks.clone());
            let cert = verify_decomposition(a, &trial, tol);
            let worst = cert
                .residuals
                .iter()
                .copied()
                .fold(cert.sum_residual, f64::max);
            let done = cert.pass;
            if best.as_ref().is_none_or(|(_, _, w)| worst < *w) || done {
                best = Some((ks, entry_log, worst));
            }
            if done {
                break;
            }
            if route == SplitRoute::Hessenberg {
                log.push(("route", "hessenberg summands failed verification".into()));
            }
        }
    }
    let (ks, log, _) = best.ok_or_else(|| {
        Error::NoTransform("no involutory split could be verified".into())
    })?;
    let mut d = Decomposition::new(DecompKind::ConinvolutorySum);
    for (stage, detail) in log {
        d.note(stage, detail);
    }
    let ks = match opts.pad_to {
        Some(p) if p != ks.len() => {
            d.note("pad", format!("{} -> {p} summands", ks.len()));
            pad_summands(ks, p, &CMat::identity(n))?
        }
        _ => ks,
    };
    d.summands = ks.into_iter().map(Matrix::Floating).collect();
    Ok(d)
}

/// `conj(S)^-1 A S = C + diag(d)` with `C` coninvolutory (here real
/// involutory) and `d` real.
#[derive(Clone, Debug)]
pub struct Thm1d {
    pub s: CMat,
    pub c: CMat,
    pub d: Vec<f64>,
}

impl Thm1d {
    pub fn residual(&self, a: &CMat) -> f64 {
        match inverse(&self.s.conj()) {
            Ok(sb) => {
                let lhs = &(&sb * a) * &self.s;
                let rhs = &self.c + &CMat::from_real(&RMat::diag(&self.d));
                (&lhs - &rhs).norm_fro()
            }
            Err(_) => f64::INFINITY,
        }
    }
}

pub fn thm1d_form(a: &Matrix) -> Result<Thm1d> {
    thm1d_form_seeded(a, DEFAULT_SEED)
}

pub fn thm1d_form_seeded(a: &Matrix, seed: u64) -> Result<Thm1d> {
    let n = a.n();
    check_size(n, "thm1d_form", 1)?;
    let (s, b, _) = real_target(a)?;
    let (bq, order) = route_order(&b);
    for route in order {
        if let Some(split) = split_by(route, &b, &bq, false, seed) {
            return Ok(Thm1d {
                s: &s * &split.w,
                c: CMat::from_real(&split.c),
                d: split.mu,
            });
        }
    }
    Err(Error::NoTransform("no involutory split could be verified".into()))
}

/// `A = C + D`, `C` coninvolutory and `D` real-condiagonalizable with
/// `conj(T)^-1 D T = diag(diag)`.
#[derive(Clone, Debug)]
pub struct Thm1b {
    pub c: CMat,
    pub d: CMat,
    pub t: CMat,
    pub diag: Vec<f64>,
}

impl Thm1b {
    pub fn to_decomposition(&self) -> Decomposition {
        let mut d = Decomposition::from_floating(
            DecompKind::Thm1b,
            vec![self.c.clone(), self.d.clone()],
        );
        d.note(
            "witness",
            format!(
                "conj(T)^-1 D T = diag({})",
                self.diag.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(", ")
            ),
        );
        d
    }
}

pub fn thm1b_decompose(a: &Matrix) -> Result<Thm1b> {
    let f = thm1d_form(a)?;
    let ks = transport(
        &f.s,
        &[f.c.clone(), CMat::from_real(&RMat::diag(&f.d))],
    )?;
    let [c, d]: [CMat; 2] = ks.try_into().expect("two parts");
    Ok(Thm1b {
        c,
        d,
        t: f.s,
        diag: f.d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_complex, rng};
    use crate::matcore::Mat;
    use crate::matcore::scalar::qi;

    fn tol() -> Tolerance {
        Tolerance::certify_default()
    }

    fn check(a: &Matrix, d: &Decomposition) {
        let cert = verify_decomposition(a, d, tol());
        assert!(cert.pass, "{:?}", cert.failures);
    }

    #[test]
    fn two_by_two_cases() {
        for rows in [
            vec![vec![3.0, 0.0], vec![0.0, 1.0]],
            vec![vec![2.0, 1.0], vec![0.0, 2.0]],
            vec![vec![0.0, 2.0], vec![-2.0, 0.0]],
        ] {
            let a = Matrix::Floating(CMat::from_real(&RMat::from_rows(rows)));
            let d = coninv_sum(&a).unwrap();
            assert_eq!(d.count(), 4);
            check(&a, &d);
        }
    }

    #[test]
    fn zero_matrices() {
        let z = Matrix::Floating(CMat::zeros(3, 3));
        let d = coninv_sum(&z).unwrap();
        assert_eq!(d.count(), 2);
        check(&z, &d);
        let d = coninv_sum_with(&z, SumOptions { pad_to: Some(5), ..Default::default() }).unwrap();
        assert_eq!(d.count(), 5);
        check(&z, &d);
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::FRAC_PI_3);
        assert!((d.summands_c64()[1][(0, 0)] - w).norm() < 1e-15);
    }

    #[test]
    fn odd_structured() {
        for a in [
            Mat::diag(&[qi(1), qi(2), qi(3)]),
            Mat::scalar(3, qi(5)),
            Mat::scalar(5, qi(1)),
            Mat::diag(&[qi(0), qi(0), qi(4)]),
        ] {
            let a = Matrix::Exact(a);
            let d = coninv_sum(&a).unwrap();
            assert!(d.count() <= 5);
            check(&a, &d);
        }
    }

    #[test]
    fn random_complex_sizes() {
        let mut r = rng(21);
        for n in 2..=8 {
            let a = Matrix::Floating(random_complex(n, 1.0, &mut r));
            let d = coninv_sum(&a).unwrap();
            assert!(d.count() <= max_bound(n));
            check(&a, &d);
        }
    }

    #[test]
    fn padding_keeps_certificate() {
        let a = Matrix::Floating(CMat::from_real(&RMat::diag(&[1.0, 2.0, 4.0, 8.0])));
        {
            let p = 5;
            let d = coninv_sum_with(&a, SumOptions { pad_to: Some(p), ..Default::default() }).unwrap();
            assert_eq!(d.count(), p);
            check(&a, &d);
        }
        let b = Matrix::Floating(CMat::from_real(&RMat::diag(&[3.0, 1.0])));
        assert!(coninv_sum_with(&b, SumOptions { pad_to: Some(6), ..Default::default() }).is_err());
    }

    #[test]
    fn thm1b_and_thm1d() {
        let i = Matrix::Floating(CMat::from_rows(vec![vec![C64::new(0.0, 1.0)]]));
        let f = thm1d_form(&i).unwrap();
        assert!(f.residual(&i.to_c64()) < 1e-10);
        let j = Matrix::Floating(CMat::from_real(&RMat::from_rows(vec![
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ])));
        let b = thm1b_decompose(&j).unwrap();
        check(&j, &b.to_decomposition());
        let f = thm1d_form(&j).unwrap();
        assert!(f.residual(&j.to_c64()) < 1e-10);
    }
}
