//! Univariate polynomials with coefficients stored lowest degree first.


use super::mat::Mat;
use super::scalar::{ExactField, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// `x - r`
    pub fn linear(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| acc.mul(&Poly::linear(r.clone())))
    }

    /// Monic polynomial `x^m - a1 x^(m-1) - ... - am` from `a = [a1, .., am]`.
    pub fn from_recurrence(a: &[T]) -> Self {
        let m = a.len();
        let mut coeffs = vec![T::zero(); m + 1];
        coeffs[m] = T::one();
        for (j, aj) in a.iter().enumerate() {
            coeffs[m - 1 - j] = -aj.clone();
        }
        Poly::new(coeffs)
    }

    /// Inverse of [`Poly::from_recurrence`]. Requires a monic polynomial.
    pub fn recurrence(&self) -> Vec<T> {
        debug_assert!(self.is_monic());
        let m = self.degree().unwrap_or(0);
        (1..=m).map(|j| -self.coeffs[m - j].clone()).collect()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, a: &Mat<T>) -> Mat<T> {
        let n = a.n();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] = acc[(i, i)].clone() + c.clone();
                }
            }
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: ExactField> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = T::one() / self.leading();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divrem(self).1.is_zero()
    }

    /// True iff the polynomial has no repeated roots.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::{qi, Q};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn recurrence_roundtrip() {
        // x^2 - 5x + 6: a1 = 5, a2 = -6
        let f = Poly::from_recurrence(&[qi(5), qi(-6)]);
        assert_eq!(f, p(&[6, -5, 1]));
        assert_eq!(f.recurrence(), vec![qi(5), qi(-6)]);
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[6, -5, 1]);
        let g = p(&[-2, 1]);
        let (quot, rem) = f.divrem(&g);
        assert_eq!(quot, p(&[-3, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&p(&[-3, 1])), p(&[-3, 1]));
        assert_eq!(f.gcd(&p(&[1, 1])), p(&[1]));
    }

    #[test]
    fn squarefree() {
        assert!(p(&[6, -5, 1]).is_squarefree());
        assert!(!p(&[4, -4, 1]).is_squarefree());
    }

    #[test]
    fn eval_at_matrix() {
        let f = p(&[6, -5, 1]);
        let a = Mat::diag(&[qi(2), qi(3)]);
        assert!(f.eval_mat(&a).is_zero());
    }
}
