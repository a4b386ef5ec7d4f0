//! Closed-form 2x2 coninvolutory pairs, generic over the scalar so the same
//! formulas run exactly (Gaussian rationals) and in floating point.

use std::ops::Div;

use crate::matcore::mat::Mat;
use crate::matcore::scalar::Scalar;

fn m2<T: Scalar>(a: T, b: T, c: T, d: T) -> Mat<T> {
    Mat::from_rows(vec![vec![a, b], vec![c, d]])
}

/// `diag(2c, -2c) = [[c, 1], [1-c^2, -c]] + [[c, -1], [-(1-c^2), -c]]`.
pub fn traceless_pair<T: Scalar>(c: &T) -> [Mat<T>; 2] {
    let one = T::one();
    let r = one.clone() - c.clone() * c.clone();
    [
        m2(c.clone(), one.clone(), r.clone(), -c.clone()),
        m2(c.clone(), -one, -r, -c.clone()),
    ]
}

/// `diag(2c, 2c) = [[c, i], [(1-c^2) i, c]] + [[c, -i], [-(1-c^2) i, c]]`,
/// with `i` the imaginary unit of `T`.
pub fn scalar_pair<T: Scalar>(c: &T, i: &T) -> [Mat<T>; 2] {
    let r = T::one() - c.clone() * c.clone();
    [
        m2(c.clone(), i.clone(), r.clone() * i.clone(), c.clone()),
        m2(c.clone(), -i.clone(), -(r * i.clone()), c.clone()),
    ]
}

/// `[[0, 1], [0, 0]] = [[1, 1], [0, -1]] + [[-1, 0], [0, 1]]`.
pub fn nilpotent_pair<T: Scalar>() -> [Mat<T>; 2] {
    let (o, z) = (T::one(), T::zero());
    [
        m2(o.clone(), o.clone(), z.clone(), -o.clone()),
        m2(-o.clone(), z.clone(), z, o),
    ]
}

/// `[[0, b], [-b, 0]] = [[1, b], [0, -1]] + [[-1, 0], [-b, 1]]`.
pub fn rotation_pair<T: Scalar>(b: &T) -> [Mat<T>; 2] {
    let (o, z) = (T::one(), T::zero());
    [
        m2(o.clone(), b.clone(), z.clone(), -o.clone()),
        m2(-o.clone(), z, -b.clone(), o),
    ]
}

/// Four coninvolutory summands of `diag(a, b)`: the traceless pair at
/// `c = (a-b)/4` followed by the scalar pair at `c = (a+b)/4`.
pub fn diag_four<T: Scalar + Div<Output = T>>(a: &T, b: &T, i: &T) -> [Mat<T>; 4] {
    let four = T::from_i64(4);
    let [k1, k2] = traceless_pair(&((a.clone() - b.clone()) / four.clone()));
    let [k3, k4] = scalar_pair(&((a.clone() + b.clone()) / four), i);
    [k1, k2, k3, k4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::{gq, q, qi, GaussQ, Q};
    use num_traits::Zero;

    fn g(v: Q) -> GaussQ {
        gq(v, Q::zero())
    }

    fn i() -> GaussQ {
        gq(qi(0), qi(1))
    }

    fn coninvolutory(k: &Mat<GaussQ>) -> bool {
        &k.conj() * k == Mat::identity(k.n())
    }

    #[test]
    fn pairs_exact() {
        for c in [q(0, 1), q(1, 2), q(-1, 2), qi(1), qi(-1), qi(2), qi(-2)] {
            let c = g(c);
            let two_c = c.clone() + c.clone();
            let [a, b] = scalar_pair(&c, &i());
            assert!(coninvolutory(&a) && coninvolutory(&b));
            assert_eq!(&a + &b, Mat::diag(&[two_c.clone(), two_c.clone()]));
            let [a, b] = traceless_pair(&c);
            assert!(coninvolutory(&a) && coninvolutory(&b));
            assert_eq!(&a + &b, Mat::diag(&[two_c.clone(), -two_c]));
        }
    }

    #[test]
    fn jordan_and_rotation_pairs() {
        let [a, b] = nilpotent_pair::<GaussQ>();
        assert!(coninvolutory(&a) && coninvolutory(&b));
        let z = GaussQ::zero();
        let o = g(qi(1));
        assert_eq!(&a + &b, m2(z.clone(), o, z.clone(), z.clone()));
        for bv in [qi(1), qi(2), q(1, 2)] {
            let bv = g(bv);
            let [a, b] = rotation_pair(&bv);
            assert!(coninvolutory(&a) && coninvolutory(&b));
            assert_eq!(&a + &b, m2(z.clone(), bv.clone(), -bv, z.clone()));
        }
    }

    #[test]
    fn diag_three_one() {
        let ks = diag_four(&g(qi(3)), &g(qi(1)), &i());
        let sum = ks.iter().skip(1).fold(ks[0].clone(), |s, k| &s + k);
        assert_eq!(sum, Mat::diag(&[g(qi(3)), g(qi(1))]));
        assert!(ks.iter().all(coninvolutory));
        // c = 1/2 for the traceless half, c = 1 for the scalar half
        assert_eq!(ks[0][(0, 0)], g(q(1, 2)));
        assert_eq!(ks[2][(0, 0)], g(qi(1)));
    }
}
