//! Dense square matrices over exact rationals and complex doubles.

pub mod eigen;
pub mod exact;
pub mod float;
pub mod json;
pub mod mat;
pub mod nullspace;
pub mod poly;
pub mod rational;
pub mod scalar;

use serde::{Deserialize, Serialize};

pub use mat::{CMat, Mat, RMat};
pub use poly::Poly;
pub use scalar::{GaussQ, Q, C64};

use crate::error::{Error, Result};
use scalar::Scalar;

/// Residual bound `abs + rel * (1 + reference)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// Certificate default.
    pub const fn certify_default() -> Self {
        Tolerance::new(1e-8, 1e-8)
    }

    /// Singular-value threshold for rank and kernel decisions.
    pub const fn rank_default() -> Self {
        Tolerance::new(1e-10, 1e-10)
    }

    pub fn bound(&self, reference: f64) -> f64 {
        self.abs + self.rel * (1.0 + reference)
    }

    pub fn validate(&self) -> Result<()> {
        if self.abs >= 0.0 && self.rel >= 0.0 && self.abs.is_finite() && self.rel.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "tolerance components must be finite and nonnegative, got abs={} rel={}",
                self.abs, self.rel
            )))
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::certify_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pathway {
    Exact,
    Floating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A matrix tagged with its scalar pathway.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    Exact(Mat<Q>),
    Floating(CMat),
}

impl Matrix {
    pub fn n(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rows(),
            Matrix::Floating(m) => m.rows(),
        }
    }

    pub fn pathway(&self) -> Pathway {
        match self {
            Matrix::Exact(_) => Pathway::Exact,
            Matrix::Floating(_) => Pathway::Floating,
        }
    }

    /// Floating view; exact entries are rounded to the nearest double.
    pub fn to_c64(&self) -> CMat {
        match self {
            Matrix::Exact(m) => m.to_c64(),
            Matrix::Floating(m) => m.clone(),
        }
    }

    pub fn conj(&self) -> Matrix {
        match self {
            Matrix::Exact(m) => Matrix::Exact(m.clone()),
            Matrix::Floating(m) => Matrix::Floating(m.conj()),
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        match self {
            Matrix::Exact(m) => exact::inverse(m).map(Matrix::Exact),
            Matrix::Floating(m) => float::inverse(m).map(Matrix::Floating),
        }
    }

    /// Characteristic polynomial; exact for exact input, and computed from
    /// the eigenvalues otherwise.
    pub fn char_poly(&self) -> Result<Poly<C64>> {
        match self {
            Matrix::Exact(m) => Ok(exact::char_poly(m).map(|c| c.to_c64())),
            Matrix::Floating(m) => Ok(Poly::from_roots(&eigen::eigenvalues(m)?)),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        eigen::eigenvalues(&self.to_c64())
    }
}

/// `A op B` with dimension and pathway checks.
pub fn arith(a: &Matrix, b: &Matrix, op: ArithOp) -> Result<Matrix> {
    fn go<T: scalar::Scalar>(x: &Mat<T>, y: &Mat<T>, op: ArithOp) -> Result<Mat<T>> {
        match op {
            ArithOp::Add => x.try_add(y),
            ArithOp::Sub => x.try_sub(y),
            ArithOp::Mul => x.try_mul(y),
        }
    }
    match (a, b) {
        (Matrix::Exact(x), Matrix::Exact(y)) => go(x, y, op).map(Matrix::Exact),
        (Matrix::Floating(x), Matrix::Floating(y)) => go(x, y, op).map(Matrix::Floating),
        _ => Err(Error::PathwayMismatch),
    }
}
