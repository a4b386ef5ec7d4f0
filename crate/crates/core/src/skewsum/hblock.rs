//! `H_2m(mu) = [[0, I], [-I, 0]] + [[0, 0], [J_m(mu) + I, 0]]`; the second
//! part is consimilar to a real `[[0, 0], [B, 0]]`, a sum of two involutions,
//! each consimilar to `I`, which is a sum of two skew blocks.

use crate::concanon::{build_block, coninvolutory_factor, consimilar_to_real, jordan, skew_base, ConCanonicalBlock};
use crate::conisum::sum::{absorb_defect, transport};
use crate::conisum::{DecompKind, Decomposition};
use crate::error::Result;
use crate::matcore::float::{cond, inverse};
use crate::matcore::{CMat, Matrix, RMat, C64};

use super::pairs::scalar_skew_pair;

/// `I_2k` as the sum of the scalar skew pair at `c = 1/2` on every 2x2
/// diagonal block.
pub fn identity_skew_pair(k: usize) -> [CMat; 2] {
    let [p, q] = scalar_skew_pair(&C64::new(0.5, 0.0), &C64::new(0.0, 1.0));
    [CMat::direct_sum(&vec![p; k]), CMat::direct_sum(&vec![q; k])]
}

/// Split of the real `[[0, 0], [B, 0]]` into `[[I, 0], [B, -I]]` and
/// `[[-I, 0], [0, I]]`.
pub fn involution_split(b: &RMat) -> [RMat; 2] {
    let m = b.n();
    let id = RMat::identity(m);
    let mut e1 = RMat::zeros(2 * m, 2 * m);
    e1.set_block(0, 0, &id);
    e1.set_block(m, 0, b);
    e1.set_block(m, m, &(-&id));
    let mut e2 = RMat::identity(2 * m);
    e2.set_block(0, 0, &(-&id));
    [e1, e2]
}

pub fn skew_sum_hblock(m: usize, mu: C64) -> Result<Decomposition> {
    let h = build_block(&ConCanonicalBlock::H { m, mu })?;
    let mut d = Decomposition::new(DecompKind::SkewSum);
    let base = skew_base(m);
    let shifted = &jordan(m, mu) + &CMat::identity(m);
    if shifted.max_abs() == 0.0 {
        d.note("hblock", "J_m(mu) + I vanishes; the skew base alone");
        d.summands = vec![Matrix::Floating(base)];
        return Ok(d);
    }
    let rf = consimilar_to_real(&shifted)?;
    d.note(
        "hblock",
        format!("J_m(mu) + I made real with cond(S) = {:.3e}", cond(&rf.s)),
    );
    let lift = CMat::direct_sum(&[rf.s.clone(), rf.s.clone()]);
    let mut ks = vec![base];
    for e in involution_split(&rf.b) {
        let e = CMat::from_real(&e);
        // e = conj(F)^-1 F, so e = conj(T) I T^-1 with T = F^-1
        let f = coninvolutory_factor(&e)?;
        let t = &lift * &inverse(&f)?;
        ks.extend(transport(&t, &identity_skew_pair(m))?);
    }
    absorb_defect(&h, &mut ks);
    d.summands = ks.into_iter().map(Matrix::Floating).collect();
    Ok(d)
}
