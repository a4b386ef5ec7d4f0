//! JSON matrix form `{"n", "pathway", "entries": [[re, im], ...]}`, row-major.
//! Exact entries are written as `"p/q"` strings with imaginary part `"0"`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::mat::{CMat, Mat};
use super::scalar::{parse_q, q_to_string, Q, C64};
use super::{Matrix, Pathway};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub pathway: Pathway,
    pub entries: Vec<[Value; 2]>,
}

fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn cmat_to_json(m: &CMat) -> Value {
    json!({
        "n": m.rows(),
        "pathway": "floating",
        "entries": m.data().iter().map(|z| json!([num(z.re), num(z.im)])).collect::<Vec<_>>(),
    })
}

pub fn qmat_to_json(m: &Mat<Q>) -> Value {
    json!({
        "n": m.rows(),
        "pathway": "exact",
        "entries": m.data().iter().map(|v| json!([q_to_string(v), "0"])).collect::<Vec<_>>(),
    })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    match m {
        Matrix::Exact(x) => qmat_to_json(x),
        Matrix::Floating(x) => cmat_to_json(x),
    }
}

fn value_to_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(x) => x
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("number out of range: {x}"))),
        Value::String(s) => {
            if let Ok(x) = s.trim().parse::<f64>() {
                return Ok(x);
            }
            parse_q(s)
                .map(|q| super::scalar::q_to_f64(&q))
                .ok_or_else(|| Error::Parse(format!("bad scalar string {s:?}")))
        }
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn value_to_q(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))),
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else {
                parse_q(&x.to_string())
                    .ok_or_else(|| Error::Parse(format!("bad rational {x}")))
            }
        }
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn matrix_from_value(v: &Value) -> Result<Matrix> {
    let mj: MatrixJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let n = mj.n;
    if n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    if mj.entries.len() != n * n {
        return Err(Error::Parse(format!(
            "expected {} entries for n = {n}, got {}",
            n * n,
            mj.entries.len()
        )));
    }
    match mj.pathway {
        Pathway::Floating => {
            let mut data = Vec::with_capacity(n * n);
            for [re, im] in &mj.entries {
                let z = C64::new(value_to_f64(re)?, value_to_f64(im)?);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::Parse("non-finite entry".into()));
                }
                data.push(z);
            }
            Ok(Matrix::Floating(CMat::from_vec(n, n, data)))
        }
        Pathway::Exact => {
            let mut data = Vec::with_capacity(n * n);
            for [re, im] in &mj.entries {
                if !value_to_q(im)?.is_zero() {
                    return Err(Error::Parse(
                        "exact pathway entries must have zero imaginary part".into(),
                    ));
                }
                data.push(value_to_q(re)?);
            }
            Ok(Matrix::Exact(Mat::from_vec(n, n, data)))
        }
    }
}

pub fn matrix_from_str(s: &str) -> Result<Matrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    matrix_from_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::{q, qi};

    #[test]
    fn floating_roundtrip() {
        let m = CMat::from_rows(vec![
            vec![C64::new(1.5, -2.0), C64::new(0.0, 0.1)],
            vec![C64::new(-3.0, 0.0), C64::new(1e-17, 4.0)],
        ]);
        let back = matrix_from_value(&cmat_to_json(&m)).unwrap();
        assert_eq!(back, Matrix::Floating(m));
    }

    #[test]
    fn exact_roundtrip() {
        let m = Mat::from_rows(vec![vec![q(1, 3), qi(-2)], vec![qi(0), q(-7, 2)]]);
        let v = qmat_to_json(&m);
        assert_eq!(v["entries"][0][0], "1/3");
        assert_eq!(matrix_from_value(&v).unwrap(), Matrix::Exact(m));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matrix_from_str(r#"{"n":2,"pathway":"floating","entries":[[1,0]]}"#).is_err());
        assert!(matrix_from_str(r#"{"n":1,"pathway":"exact","entries":[["1","1"]]}"#).is_err());
        assert!(matrix_from_str("not json").is_err());
    }
}
