//! Continued-fraction rationalization of doubles for entry into the exact
//! pathway.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Zero};

use super::mat::{Mat, RMat};
use super::scalar::{GaussQ, Q, C64};

pub const RATIONALIZE_TOL: f64 = 1e-12;

/// Smallest-denominator convergent within `tol * max(1, |x|)` of `x`. Falls
/// back to the exact binary value of `x` when no convergent qualifies.
pub fn rationalize(x: f64, tol: f64) -> Q {
    if x == 0.0 || !x.is_finite() {
        return Q::zero();
    }
    let target = tol * x.abs().max(1.0);
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let Some(ai) = BigInt::from_f64(a) else { break };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = Q::new(h1.clone(), k1.clone());
        if (super::scalar::q_to_f64(&approx) - x).abs() <= target {
            return approx;
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    Q::from_float(x).unwrap_or_else(Q::zero)
}

pub fn rationalize_real(m: &RMat) -> Mat<Q> {
    m.map(|v| rationalize(*v, RATIONALIZE_TOL))
}

pub fn rationalize_complex(z: C64) -> GaussQ {
    GaussQ::new(
        rationalize(z.re, RATIONALIZE_TOL),
        rationalize(z.im, RATIONALIZE_TOL),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::q;

    #[test]
    fn recovers_small_fractions() {
        assert_eq!(rationalize(0.5, 1e-12), q(1, 2));
        assert_eq!(rationalize(-1.0 / 3.0, 1e-12), q(-1, 3));
        assert_eq!(rationalize(7.0, 1e-12), q(7, 1));
        assert_eq!(rationalize(22.0 / 7.0, 1e-12), q(22, 7));
    }

    #[test]
    fn close_to_irrationals() {
        let x = std::f64::consts::PI;
        let r = rationalize(x, 1e-12);
        assert!((crate::matcore::scalar::q_to_f64(&r) - x).abs() <= 1e-12 * x);
    }
}
