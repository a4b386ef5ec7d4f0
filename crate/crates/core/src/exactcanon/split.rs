//! Involutory plus diagonalizable splits of a single companion matrix.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matcore::exact::inverse;
use crate::matcore::scalar::Q;
use crate::matcore::{Mat, Poly};

use super::companion::companion;

/// `companion(f) = G + D` with `G^2 = I` and `R^-1 (D + I) R = diag(lambdas)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutorySplit {
    pub g: Mat<Q>,
    pub d: Mat<Q>,
    pub lambdas: Vec<Q>,
    pub r: Mat<Q>,
}

impl InvolutorySplit {
    /// Eigenvalues of `D`, i.e. `lambda_i - 1`.
    pub fn mus(&self) -> Vec<Q> {
        self.lambdas.iter().map(|l| l - Q::one()).collect()
    }

    /// `R^-1 G R`, the involutory part in the basis where `D` is diagonal.
    pub fn g_diagonal_basis(&self) -> Result<Mat<Q>> {
        Ok(&(&inverse(&self.r)? * &self.g) * &self.r)
    }
}

/// Eigenvector of the companion with last column `col` for its eigenvalue
/// `lambda`, normalized by a unit last entry.
pub fn companion_eigenvector(col: &[Q], lambda: &Q) -> Vec<Q> {
    let m = col.len();
    let mut v = vec![Q::zero(); m];
    v[m - 1] = Q::one();
    for i in (1..m).rev() {
        v[i - 1] = lambda * &v[i] - &col[i];
    }
    v
}

fn check_distinct(values: &[Q], what: &str) -> Result<()> {
    for i in 0..values.len() {
        if values[i + 1..].contains(&values[i]) {
            return Err(Error::InvalidParameters(format!(
                "{what} must be pairwise distinct"
            )));
        }
    }
    Ok(())
}

pub fn involutory_split_companion(f: &Poly<Q>, lambdas: &[Q]) -> Result<InvolutorySplit> {
    let f = f.monic();
    let a = f.recurrence();
    let m = a.len();
    if m < 2 {
        return Err(Error::UnsupportedSize {
            what: "involutory companion split",
            requirement: "m >= 2",
            n: m,
        });
    }
    if lambdas.len() != m {
        return Err(Error::InvalidParameters(format!(
            "need {m} lambdas, got {}",
            lambdas.len()
        )));
    }
    check_distinct(lambdas, "lambdas")?;
    let want = &a[0] + Q::from_integer(2.into());
    let sum: Q = lambdas.iter().fold(Q::zero(), |s, l| s + l);
    if sum != want {
        return Err(Error::InvalidParameters(format!(
            "lambdas must sum to a1 + 2 = {want}, got {sum}"
        )));
    }
    let c = Poly::from_roots(lambdas).recurrence();
    let mut g = Mat::<Q>::identity(m);
    g[(m - 1, m - 1)] = -Q::one();
    // rows 0..m-1 of the last column hold b_m .. b_2
    for j in 2..=m {
        g[(m - j, m - 1)] = &a[j - 1] - &c[j - 1];
    }
    let fm = companion(&f);
    let d = &fm - &g;
    let shifted: Vec<Q> = {
        let dp = &d + &Mat::identity(m);
        (0..m).map(|i| dp[(i, m - 1)].clone()).collect()
    };
    let cols: Vec<Vec<Q>> = lambdas
        .iter()
        .map(|l| companion_eigenvector(&shifted, l))
        .collect();
    let r = Mat::from_columns(&cols);
    Ok(InvolutorySplit {
        g,
        d,
        lambdas: lambdas.to_vec(),
        r,
    })
}

/// Split with `R^-1 companion(f) R = R^-1 G R + diag(mus)`; needs
/// `sum(mus) = a1 + 2 - m`.
pub fn corollary_split(f: &Poly<Q>, mus: &[Q]) -> Result<InvolutorySplit> {
    let m = f.degree().unwrap_or(0);
    check_distinct(mus, "mus")?;
    let a1 = f.monic().recurrence().first().cloned().unwrap_or_else(Q::zero);
    let want = a1 + Q::from_integer(2.into()) - Q::from_integer((m as i64).into());
    let sum: Q = mus.iter().fold(Q::zero(), |s, l| s + l);
    if sum != want {
        return Err(Error::InvalidParameters(format!(
            "mus must sum to a1 + 2 - m = {want}, got {sum}"
        )));
    }
    let lambdas: Vec<Q> = mus.iter().map(|u| u + Q::one()).collect();
    involutory_split_companion(f, &lambdas)
}

/// Integers ordered by magnitude: 0, 1, -1, 2, -2, ...
fn small_integers() -> impl Iterator<Item = Q> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![Q::zero()]
        } else {
            vec![Q::from_integer(k.into()), Q::from_integer((-k).into())]
        }
    })
}

/// `m` distinct values summing to `sum` that avoid `used`: the smallest
/// available integers, with the last entry absorbing the remainder.
pub fn choose_values(m: usize, sum: &Q, used: &[Q]) -> Vec<Q> {
    if m <= 1 {
        return vec![sum.clone(); m];
    }
    let avail: Vec<Q> = small_integers()
        .filter(|v| !used.contains(v))
        .take(m + 2 * used.len() + 8)
        .collect();
    let mut skip = 0;
    loop {
        // first m-2 smallest, then one candidate further out
        let mut picks: Vec<Q> = avail.iter().take(m.saturating_sub(2)).cloned().collect();
        if m >= 2 {
            let extra = avail
                .get(m - 2 + skip)
                .cloned()
                .unwrap_or_else(|| Q::from_integer((1000 + skip as i64).into()));
            picks.push(extra);
        }
        let partial: Q = picks.iter().fold(Q::zero(), |s, v| s + v);
        let last = sum - partial;
        if !picks.contains(&last) && !used.contains(&last) {
            picks.push(last);
            return picks;
        }
        skip += 1;
    }
}
