//! Consimilarity to a real matrix and coninvolutory factorization.

use crate::error::{Error, Result};
use crate::matcore::float::{cond, inverse};
use crate::matcore::{CMat, RMat, Tolerance, C64};

use super::block::{jordan, real_jordan_pair, ConCanonicalBlock};
use super::form::concanonical_form;
use super::solve::{solve_blocks, DEFAULT_SEED};

#[derive(Clone, Debug)]
pub struct RealForm {
    /// `conj(S)^-1 A S = B`.
    pub s: CMat,
    pub b: RMat,
    /// Largest imaginary part of `conj(S)^-1 A S` as computed, before the
    /// real part is taken.
    pub max_imag: f64,
}

/// Real block replacing a canonical block: `J_n(l)` stays, `H_2m(mu)` becomes
/// the real Jordan pair at the principal root of `mu`.
pub fn real_block(b: &ConCanonicalBlock) -> CMat {
    match *b {
        ConCanonicalBlock::J { n, lambda } => jordan(n, C64::new(lambda, 0.0)),
        ConCanonicalBlock::H { m, mu } => real_jordan_pair(m, mu.sqrt()),
    }
}

pub fn consimilar_to_real(a: &CMat) -> Result<RealForm> {
    let n = a.n();
    if a.im().max_abs() == 0.0 {
        return Ok(RealForm {
            s: CMat::identity(n),
            b: a.re(),
            max_imag: 0.0,
        });
    }
    let form = concanonical_form(a)?;
    let blocks: Vec<CMat> = form.blocks.iter().map(real_block).collect();
    let (s, _) = solve_blocks(a, &blocks, DEFAULT_SEED).ok_or_else(|| {
        Error::NoTransform("no consimilarity to the real canonical blocks".into())
    })?;
    let raw = &(&inverse(&s.conj())? * a) * &s;
    Ok(RealForm {
        max_imag: raw.im().max_abs(),
        b: raw.re(),
        s,
    })
}

/// Number of phases tried in [`coninvolutory_factor`].
const PHASES: usize = 16;

/// `S` with `conj(S)^-1 S = C` for coninvolutory `C`, taken as
/// `e^{it} C + e^{-it} I` at the best-conditioned phase.
pub fn coninvolutory_factor(c: &CMat) -> Result<CMat> {
    let n = c.n();
    let defect = (&(&c.conj() * c) - &CMat::identity(n)).norm_fro();
    let tol = Tolerance::certify_default();
    let norm = c.norm_fro();
    if defect > tol.bound(norm * norm) {
        return Err(Error::NotConinvolutory { residual: defect });
    }
    let mut best: Option<(CMat, f64)> = None;
    for k in 1..=PHASES {
        let t = std::f64::consts::PI * k as f64 / (PHASES + 1) as f64;
        let w = C64::from_polar(1.0, t);
        let s = &c.scale(&w) + &CMat::scalar(n, w.conj());
        let k = cond(&s);
        if k.is_finite() && best.as_ref().is_none_or(|(_, b)| k < *b) {
            best = Some((s, k));
        }
    }
    best.map(|(s, _)| s)
        .ok_or_else(|| Error::NoTransform("every phase gave a singular factor".into()))
}
