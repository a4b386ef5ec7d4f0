//! Scalar types shared by the exact and floating pathways.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Q = BigRational;
/// Exact Gaussian rational `p + q i` with `p, q` rational.
pub type GaussQ = Complex<BigRational>;
pub type C64 = Complex64;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Lossy conversion used when leaving the exact pathway.
    fn to_c64(&self) -> C64;
}

/// Scalars with exact division: elimination on these never rounds.
pub trait ExactField: Scalar + Div<Output = Self> {}

/// Floating scalars with a modulus, used by pivoted elimination.
pub trait FloatScalar: Scalar + Div<Output = Self> + Copy {
    fn modulus(&self) -> f64;
}

impl Scalar for f64 {
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
}

impl FloatScalar for f64 {
    fn modulus(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for C64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

impl FloatScalar for C64 {
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Q {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(self), 0.0)
    }
}

impl ExactField for Q {}

impl Scalar for GaussQ {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_i64(v: i64) -> Self {
        GaussQ::new(Q::from_i64(v), Q::zero())
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

impl ExactField for GaussQ {}

/// Nearest-double conversion that survives numerators and denominators
/// beyond the f64 range.
pub fn q_to_f64(q: &Q) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
    let (n, d) = if shift > 0 {
        (q.numer() >> shift as usize, q.denom() >> shift as usize)
    } else {
        (q.numer().clone(), q.denom().clone())
    };
    if d.is_zero() {
        return if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn gq(re: Q, im: Q) -> GaussQ {
    GaussQ::new(re, im)
}

/// Embeds a rational into the Gaussian rationals.
pub fn q_to_gq(v: &Q) -> GaussQ {
    GaussQ::new(v.clone(), Q::zero())
}

pub fn is_integer(v: &Q) -> bool {
    v.denom().is_one()
}

/// Formats `p/q` (or `p` when integral), the decimal-string form used in JSON.
pub fn q_to_string(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Q::from_integer(n));
    }
    // Terminating decimal such as "-1.25".
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
        .parse()
        .ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Some(Q::new(digits * sign, denom))
}
