use crate::error::{Error, Result};
use crate::matcore::exact::inverse;
use crate::matcore::scalar::Q;
use crate::matcore::{Mat, Poly};

use super::companion::companion;

/// For coprime `f, g`: `F = companion(f g)` and `T` with
/// `T (companion(f) + companion(g)) T^-1 = F` (direct sum).
pub fn merge_companions(f: &Poly<Q>, g: &Poly<Q>) -> Result<(Mat<Q>, Mat<Q>)> {
    if f.gcd(g).degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let (cf, cg) = (companion(f), companion(g));
    let x = Mat::direct_sum(&[cf.clone(), cg.clone()]);
    let n = x.n();
    // e1 + e1 is cyclic for the direct sum of coprime companions.
    let mut v = vec![Q::from_integer(0.into()); n];
    v[0] = Q::from_integer(1.into());
    v[cf.n()] = Q::from_integer(1.into());
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            v = x.mul_vec(&v);
        }
        cols.push(v.clone());
    }
    let k = Mat::from_columns(&cols);
    let t = inverse(&k)?;
    let fm = companion(&f.monic().mul(&g.monic()));
    debug_assert_eq!(&(&t * &x) * &k, fm);
    Ok((t, fm))
}
