//! Primary rational canonical form over the rationals.
//!
//! For each prime `p` of the characteristic polynomial, with `N = p(A)` and
//! `K_e = ker N^e`, the chain tops of exponent `e` are picked greedily from
//! `K_e` modulo `K_(e-1) + N K_(e+1)` and the tops already taken. Each top `w`
//! contributes the Krylov columns `w, Aw, ..., A^(de-1) w`.

use crate::error::{Error, Result};
use crate::matcore::exact::{char_poly, inverse, nullspace, Span};
use crate::matcore::scalar::Q;
use crate::matcore::{Mat, Poly};

use super::companion::companion;
use super::factor::factor;

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusForm {
    /// Prime-power characteristic polynomials of the companion blocks.
    pub blocks: Vec<Poly<Q>>,
    /// `S A S^-1 = companion(blocks[0]) + ... ` (direct sum).
    pub s: Mat<Q>,
    /// `S^-1`, whose columns are the Krylov chains.
    pub s_inv: Mat<Q>,
}

impl FrobeniusForm {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.degree().unwrap_or(0)).collect()
    }

    /// The direct sum of companion matrices.
    pub fn canonical(&self) -> Mat<Q> {
        Mat::direct_sum(&self.blocks.iter().map(companion).collect::<Vec<_>>())
    }
}

fn krylov(a: &Mat<Q>, w: &[Q], len: usize) -> Vec<Vec<Q>> {
    let mut cols = Vec::with_capacity(len);
    let mut v = w.to_vec();
    for k in 0..len {
        if k > 0 {
            v = a.mul_vec(&v);
        }
        cols.push(v.clone());
    }
    cols
}

fn columns_of(m: &Mat<Q>, vs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    vs.iter().map(|v| m.mul_vec(v)).collect()
}

pub fn frobenius_form(a: &Mat<Q>) -> Result<FrobeniusForm> {
    let n = a.n();
    let chi = char_poly(a);
    let mut blocks: Vec<Poly<Q>> = Vec::new();
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(n);

    for (p, mult) in factor(&chi) {
        let d = p.degree().unwrap_or(0);
        let target = d * mult;
        let nmat = p.eval_mat(a);
        // kernels[e] = basis of ker N^e, e = 0..=top
        let mut kernels: Vec<Vec<Vec<Q>>> = vec![Vec::new()];
        let mut power = Mat::<Q>::identity(n);
        while kernels.last().map_or(0, |k| k.len()) < target {
            power = &power * &nmat;
            let ker = nullspace(&power);
            if ker.len() == kernels.last().unwrap().len() {
                return Err(Error::NoTransform(
                    "kernel chain of a prime factor stalled".into(),
                ));
            }
            kernels.push(ker);
        }
        let top = kernels.len() - 1;
        let mut tops: Vec<(usize, Vec<Q>)> = Vec::new();
        for e in (1..=top).rev() {
            let mut span = Span::new(n);
            for v in &kernels[e - 1] {
                span.insert(v);
            }
            let above = if e < top { &kernels[e + 1] } else { &kernels[top] };
            for v in columns_of(&nmat, above) {
                span.insert(&v);
            }
            for w in &kernels[e] {
                if span.contains(w) {
                    continue;
                }
                for v in krylov(a, w, d) {
                    span.insert(&v);
                }
                tops.push((e, w.clone()));
            }
        }
        for (e, w) in tops {
            blocks.push(p.pow(e));
            cols.extend(krylov(a, &w, d * e));
        }
    }

    if cols.len() != n {
        return Err(Error::NoTransform(format!(
            "Krylov chains span {} of {n} dimensions",
            cols.len()
        )));
    }
    let s_inv = Mat::from_columns(&cols);
    let s = inverse(&s_inv)
        .map_err(|_| Error::NoTransform("Krylov chains are dependent".into()))?;
    let form = FrobeniusForm { blocks, s, s_inv };
    if (a * &form.s_inv) != (&form.s_inv * &form.canonical()) {
        return Err(Error::NoTransform("Frobenius residual is nonzero".into()));
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::qi;

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect())
    }

    fn sorted_blocks(f: &FrobeniusForm) -> Vec<Vec<Q>> {
        let mut b: Vec<Vec<Q>> = f.blocks.iter().map(|p| p.coeffs().to_vec()).collect();
        b.sort_by_key(|c| format!("{c:?}"));
        b
    }

    #[test]
    fn distinct_scalars() {
        let f = frobenius_form(&m(&[&[2, 0], &[0, 3]])).unwrap();
        let mut want = vec![
            Poly::linear(qi(2)).coeffs().to_vec(),
            Poly::linear(qi(3)).coeffs().to_vec(),
        ];
        want.sort_by_key(|c| format!("{c:?}"));
        assert_eq!(sorted_blocks(&f), want);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let f = frobenius_form(&m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(f.blocks, vec![Poly::x().pow(2)]);
    }

    #[test]
    fn companion_splits_into_primes() {
        let a = m(&[&[0, -6], &[1, 5]]);
        let f = frobenius_form(&a).unwrap();
        assert_eq!(f.blocks.len(), 2);
        assert_eq!(&(&f.s * &a) * &f.s_inv, f.canonical());
    }

    #[test]
    fn mixed_structure() {
        // J2(1) + J1(1) + rotation-type block x^2 + 1
        let a = Mat::direct_sum(&[
            m(&[&[1, 1], &[0, 1]]),
            m(&[&[1]]),
            m(&[&[0, -1], &[1, 0]]),
        ]);
        let t = m(&[
            &[1, 2, 0, 0, 1],
            &[0, 1, 1, 0, 0],
            &[0, 0, 1, 3, 0],
            &[1, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        let b = &(&t * &a) * &inverse(&t).unwrap();
        let f = frobenius_form(&b).unwrap();
        let mut sizes = f.block_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(&(&f.s * &b) * &f.s_inv, f.canonical());
    }
}
