use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matcore::{CMat, C64};

/// One summand of the consimilarity canonical form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConCanonicalBlock {
    /// `J_n(lambda)`, `lambda >= 0`.
    J { n: usize, lambda: f64 },
    /// `H_2m(mu) = [[0, I], [J_m(mu), 0]]`, `mu` outside `[0, inf)`.
    H { m: usize, mu: C64 },
}

impl ConCanonicalBlock {
    pub fn size(&self) -> usize {
        match *self {
            ConCanonicalBlock::J { n, .. } => n,
            ConCanonicalBlock::H { m, .. } => 2 * m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ConCanonicalBlock::J { n, lambda } => {
                if n == 0 || !lambda.is_finite() || lambda < 0.0 {
                    return Err(Error::InvalidParameters(format!(
                        "J block needs n >= 1 and lambda >= 0, got n={n} lambda={lambda}"
                    )));
                }
            }
            ConCanonicalBlock::H { m, mu } => {
                if m == 0 || !mu.re.is_finite() || !mu.im.is_finite() {
                    return Err(Error::InvalidParameters(format!("bad H block m={m} mu={mu}")));
                }
                if mu.im == 0.0 && mu.re >= 0.0 {
                    return Err(Error::InvalidParameters(format!(
                        "H block mu must not lie in [0, inf), got {}",
                        mu.re
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match *self {
            ConCanonicalBlock::J { n, lambda } => json!({"kind": "J", "n": n, "lambda": lambda}),
            ConCanonicalBlock::H { m, mu } => json!({"kind": "H", "m": m, "mu": [mu.re, mu.im]}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("bad block descriptor {v}"));
        let b = match v["kind"].as_str().ok_or_else(bad)? {
            "J" => ConCanonicalBlock::J {
                n: v["n"].as_u64().ok_or_else(bad)? as usize,
                lambda: v["lambda"].as_f64().ok_or_else(bad)?,
            },
            "H" => ConCanonicalBlock::H {
                m: v["m"].as_u64().ok_or_else(bad)? as usize,
                mu: C64::new(
                    v["mu"][0].as_f64().ok_or_else(bad)?,
                    v["mu"][1].as_f64().ok_or_else(bad)?,
                ),
            },
            _ => return Err(bad()),
        };
        b.validate()?;
        Ok(b)
    }
}

/// Upper bidiagonal Jordan block with complex eigenvalue.
pub fn jordan(n: usize, lambda: C64) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            lambda
        } else if j == i + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn build_block(b: &ConCanonicalBlock) -> Result<CMat> {
    b.validate()?;
    Ok(match *b {
        ConCanonicalBlock::J { n, lambda } => jordan(n, C64::new(lambda, 0.0)),
        ConCanonicalBlock::H { m, mu } => {
            let mut h = CMat::zeros(2 * m, 2 * m);
            h.set_block(0, m, &CMat::identity(m));
            h.set_block(m, 0, &jordan(m, mu));
            h
        }
    })
}

pub fn build_blocks(blocks: &[ConCanonicalBlock]) -> Result<CMat> {
    let mats = blocks.iter().map(build_block).collect::<Result<Vec<_>>>()?;
    Ok(CMat::direct_sum(&mats))
}

/// `[[0, I], [-I, 0]]` of size `2 n_half`.
pub fn skew_base(n_half: usize) -> CMat {
    let mut k = CMat::zeros(2 * n_half, 2 * n_half);
    k.set_block(0, n_half, &CMat::identity(n_half));
    k.set_block(n_half, 0, &(-&CMat::identity(n_half)));
    k
}

/// Real Jordan-type block for the pair `z, conj(z)`: `Z = [[a, b], [-b, a]]`
/// on the diagonal and `I_2` on the block superdiagonal.
pub fn real_jordan_pair(m: usize, z: C64) -> CMat {
    let mut out = CMat::zeros(2 * m, 2 * m);
    for k in 0..m {
        let r = 2 * k;
        out[(r, r)] = C64::new(z.re, 0.0);
        out[(r, r + 1)] = C64::new(z.im, 0.0);
        out[(r + 1, r)] = C64::new(-z.im, 0.0);
        out[(r + 1, r + 1)] = C64::new(z.re, 0.0);
        if k + 1 < m {
            out[(r, r + 2)] = C64::new(1.0, 0.0);
            out[(r + 1, r + 3)] = C64::new(1.0, 0.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_shapes() {
        let j = build_block(&ConCanonicalBlock::J { n: 2, lambda: 1.0 }).unwrap();
        assert_eq!(j, jordan(2, C64::new(1.0, 0.0)));
        assert_eq!(j[(0, 1)], C64::new(1.0, 0.0));
        let h = build_block(&ConCanonicalBlock::H {
            m: 1,
            mu: C64::new(-2.0, 0.0),
        })
        .unwrap();
        let want = CMat::from_real(&crate::matcore::RMat::from_rows(vec![
            vec![0.0, 1.0],
            vec![-2.0, 0.0],
        ]));
        assert_eq!(h, want);
        assert!(build_block(&ConCanonicalBlock::J { n: 1, lambda: -1.0 }).is_err());
        assert!(build_block(&ConCanonicalBlock::H {
            m: 1,
            mu: C64::new(3.0, 0.0)
        })
        .is_err());
    }

    #[test]
    fn skew_base_squares() {
        for m in 1..=8 {
            let k = skew_base(m);
            assert_eq!(&k * &k, -CMat::identity(2 * m));
            assert_eq!(&k.conj() * &k, -CMat::identity(2 * m));
        }
    }

    #[test]
    fn json_roundtrip() {
        for b in [
            ConCanonicalBlock::J { n: 3, lambda: 0.5 },
            ConCanonicalBlock::H {
                m: 2,
                mu: C64::new(0.0, 1.0),
            },
        ] {
            assert_eq!(ConCanonicalBlock::from_json(&b.to_json()).unwrap(), b);
        }
    }
}
