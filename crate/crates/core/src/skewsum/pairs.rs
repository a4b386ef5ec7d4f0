//! Closed-form 2x2 skew-coninvolutory blocks, generic over the scalar so the
//! identities can be checked exactly.

use std::ops::Div;

use crate::matcore::mat::Mat;
use crate::matcore::scalar::Scalar;

fn m2<T: Scalar>(a: T, b: T, c: T, d: T) -> Mat<T> {
    Mat::from_rows(vec![vec![a, b], vec![c, d]])
}

/// `M(a, b) = [[a, b], [-(1+a^2)/b, -a]]`: trace 0 and determinant 1, so
/// `M^2 = -I`. Every real 2x2 skew-coninvolutory matrix has this form.
pub fn m_block<T: Scalar + Div<Output = T>>(a: &T, b: &T) -> Mat<T> {
    let w = T::one() + a.clone() * a.clone();
    m2(a.clone(), b.clone(), -(w / b.clone()), -a.clone())
}

/// `diag(2c, -2c) = [[c, -1], [1+c^2, -c]] + [[c, 1], [-(1+c^2), -c]]`.
pub fn real_skew_pair<T: Scalar>(c: &T) -> [Mat<T>; 2] {
    let one = T::one();
    let w = one.clone() + c.clone() * c.clone();
    [
        m2(c.clone(), -one.clone(), w.clone(), -c.clone()),
        m2(c.clone(), one, -w, -c.clone()),
    ]
}

/// `diag(2c, 2c) = [[c, -i], [(1+c^2) i, c]] + [[c, i], [-(1+c^2) i, c]]`.
pub fn scalar_skew_pair<T: Scalar>(c: &T, i: &T) -> [Mat<T>; 2] {
    let w = T::one() + c.clone() * c.clone();
    [
        m2(c.clone(), -i.clone(), w.clone() * i.clone(), c.clone()),
        m2(c.clone(), i.clone(), -(w * i.clone()), c.clone()),
    ]
}

/// Four skew-coninvolutory summands of `diag(a, b)`: the real pair at
/// `c = (a-b)/4`, then the scalar pair at `c = (a+b)/4`.
pub fn skew_diag_four<T: Scalar + Div<Output = T>>(a: &T, b: &T, i: &T) -> [Mat<T>; 4] {
    let four = T::from_i64(4);
    let [k1, k2] = real_skew_pair(&((a.clone() - b.clone()) / four.clone()));
    let [k3, k4] = scalar_skew_pair(&((a.clone() + b.clone()) / four), i);
    [k1, k2, k3, k4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concanon::skew_base;
    use crate::matcore::scalar::{gq, q, qi, GaussQ, Q};
    use crate::matcore::{CMat, C64};
    use num_traits::Zero;

    fn g(v: Q) -> GaussQ {
        gq(v, Q::zero())
    }

    fn i() -> GaussQ {
        gq(qi(0), qi(1))
    }

    fn skew(k: &Mat<GaussQ>) -> bool {
        &k.conj() * k == -&Mat::<GaussQ>::identity(k.n())
    }

    #[test]
    fn pairs_exact() {
        for c in [q(0, 1), q(1, 2), q(-1, 2), qi(1), qi(-1), qi(2), qi(-2)] {
            let c = g(c);
            let two_c = c.clone() + c.clone();
            let [a, b] = scalar_skew_pair(&c, &i());
            assert!(skew(&a) && skew(&b));
            assert_eq!(&a + &b, Mat::diag(&[two_c.clone(), two_c.clone()]));
            let [a, b] = real_skew_pair(&c);
            assert!(skew(&a) && skew(&b));
            assert_eq!(&a + &b, Mat::diag(&[two_c.clone(), -two_c]));
        }
    }

    #[test]
    fn m_block_squares_to_minus_one() {
        for (a, b) in [(qi(0), qi(1)), (q(3, 7), q(-2, 5)), (qi(-4), q(1, 9))] {
            let m = m_block(&a, &b);
            assert_eq!(m.trace(), qi(0));
            assert_eq!(&m * &m, -&Mat::<Q>::identity(2));
        }
    }

    #[test]
    fn zero_diag_uses_displayed_blocks() {
        let ks = skew_diag_four(&C64::new(0.0, 0.0), &C64::new(0.0, 0.0), &C64::new(0.0, 1.0));
        let r = |rows: [[f64; 2]; 2]| {
            CMat::from_rows(rows.iter().map(|x| x.iter().map(|&v| C64::new(v, 0.0)).collect()).collect())
        };
        assert_eq!(ks[0], r([[0.0, -1.0], [1.0, 0.0]]));
        assert_eq!(ks[1], r([[0.0, 1.0], [-1.0, 0.0]]));
        assert_eq!(ks[2][(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(ks[2][(1, 0)], C64::new(0.0, 1.0));
        assert_eq!(ks[1], skew_base(1));
    }
}
