//! Involutory plus diagonalizable decomposition of rational matrices.

use num_traits::One;

use crate::error::Result;
use crate::matcore::exact::inverse;
use crate::matcore::scalar::Q;
use crate::matcore::{Mat, Poly};

use super::frobenius::{frobenius_form, FrobeniusForm};
use super::split::{choose_values, involutory_split_companion};

/// Split of one companion block: `G + D = companion`, `D = R diag(eig) R^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSplit {
    pub g: Mat<Q>,
    pub d: Mat<Q>,
    pub r: Mat<Q>,
    pub eig: Vec<Q>,
}

/// Splits every companion block, keeping the eigenvalues of the `D` parts
/// away from `used` and from each other. Scalar blocks `[a]` have only the
/// choices `a - 1` and `a + 1`; a third equal scalar forces a repeat.
pub fn split_companion_blocks(blocks: &[Poly<Q>], used: &mut Vec<Q>) -> Result<Vec<BlockSplit>> {
    let mut out: Vec<Option<BlockSplit>> = vec![None; blocks.len()];
    let one = Q::one();
    for (i, f) in blocks.iter().enumerate() {
        if f.degree() != Some(1) {
            continue;
        }
        let a = -f.monic().coeff(0);
        let plus = &a - &one;
        let minus = &a + &one;
        let (sign, e) = if !used.contains(&plus) || used.contains(&minus) {
            (one.clone(), plus)
        } else {
            (-one.clone(), minus)
        };
        used.push(e.clone());
        out[i] = Some(BlockSplit {
            g: Mat::from_rows(vec![vec![sign]]),
            d: Mat::from_rows(vec![vec![e.clone()]]),
            r: Mat::identity(1),
            eig: vec![e],
        });
    }
    for (i, f) in blocks.iter().enumerate() {
        let m = f.degree().unwrap_or(0);
        if m < 2 {
            continue;
        }
        let a1 = f.monic().recurrence()[0].clone();
        let sum = a1 + Q::from_integer(2.into()) - Q::from_integer((m as i64).into());
        let mus = choose_values(m, &sum, used);
        used.extend(mus.iter().cloned());
        let lambdas: Vec<Q> = mus.iter().map(|u| u + &one).collect();
        let s = involutory_split_companion(f, &lambdas)?;
        out[i] = Some(BlockSplit {
            g: s.g,
            d: s.d,
            r: s.r,
            eig: mus,
        });
    }
    Ok(out.into_iter().map(|b| b.expect("every block split")).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm1a {
    /// Involutory part.
    pub v: Mat<Q>,
    /// Diagonalizable part, `D = R diag(eig) R^-1`.
    pub d: Mat<Q>,
    pub r: Mat<Q>,
    pub eig: Vec<Q>,
    pub frobenius: FrobeniusForm,
}

/// `A = V + D` exactly with `V^2 = I` and `D` diagonalizable over the
/// rationals. A 1x1 input `[a]` gives `([1], [a - 1])`.
pub fn thm1a_decompose(a: &Mat<Q>) -> Result<Thm1a> {
    let frob = frobenius_form(a)?;
    let mut used = Vec::new();
    let splits = split_companion_blocks(&frob.blocks, &mut used)?;
    let g = Mat::direct_sum(&splits.iter().map(|s| s.g.clone()).collect::<Vec<_>>());
    let rb = Mat::direct_sum(&splits.iter().map(|s| s.r.clone()).collect::<Vec<_>>());
    let eig: Vec<Q> = splits.iter().flat_map(|s| s.eig.iter().cloned()).collect();
    let v = &(&frob.s_inv * &g) * &frob.s;
    let d = a - &v;
    let r = &frob.s_inv * &rb;
    Ok(Thm1a {
        v,
        d,
        r,
        eig,
        frobenius: frob,
    })
}

impl Thm1a {
    /// Exact check of `R^-1 D R = diag(eig)`.
    pub fn diagonalization_holds(&self) -> bool {
        inverse(&self.r).is_ok_and(|ri| &(&ri * &self.d) * &self.r == Mat::diag(&self.eig))
    }
}
