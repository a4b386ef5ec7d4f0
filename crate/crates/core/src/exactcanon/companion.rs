//! Companion matrices in the last-column convention.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matcore::scalar::{parse_q, q_to_string, ExactField, Q};
use crate::matcore::{Mat, Poly};

/// Companion of the monic `f = x^m - a1 x^(m-1) - ... - am`: ones on the
/// subdiagonal, last column `(am, ..., a1)` from top to bottom.
pub fn companion<T: ExactField>(f: &Poly<T>) -> Mat<T> {
    let a = f.monic().recurrence();
    let m = a.len();
    let mut c = Mat::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = T::one();
    }
    for (j, aj) in a.iter().enumerate() {
        c[(m - 1 - j, m - 1)] = aj.clone();
    }
    c
}

/// Last column of a companion matrix read back into recurrence order.
pub fn companion_coeffs<T: ExactField>(c: &Mat<T>) -> Vec<T> {
    let m = c.n();
    (0..m).map(|j| c[(m - 1 - j, m - 1)].clone()).collect()
}

/// `{"m": deg, "a": ["p/q", ...]}` with `a = [a1, .., am]`.
pub fn poly_to_json(f: &Poly<Q>) -> Value {
    let a = f.monic().recurrence();
    json!({ "m": a.len(), "a": a.iter().map(q_to_string).collect::<Vec<_>>() })
}

pub fn poly_from_json(v: &Value) -> Result<Poly<Q>> {
    let a = v["a"]
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial needs an \"a\" array".into()))?;
    let coeffs = a
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_q(s),
            Value::Number(n) => parse_q(&n.to_string()),
            _ => None,
        })
        .collect::<Option<Vec<Q>>>()
        .ok_or_else(|| Error::Parse("bad polynomial coefficient".into()))?;
    if let Some(m) = v["m"].as_u64() {
        if m as usize != coeffs.len() {
            return Err(Error::Parse(format!("m = {m} but {} coefficients", coeffs.len())));
        }
    }
    Ok(Poly::from_recurrence(&coeffs))
}

/// Human-readable form such as `x^2 - 5x + 6`.
pub fn poly_to_string(f: &Poly<Q>) -> String {
    use num_traits::{One, Signed, Zero};
    let mut out = String::new();
    let deg = f.degree().unwrap_or(0);
    for k in (0..=deg).rev() {
        let c = f.coeff(k);
        if c.is_zero() && !(deg == 0 && k == 0) {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_coeff = k == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&q_to_string(&mag));
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{k}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::exact::char_poly;
    use crate::matcore::scalar::qi;

    fn from_a(a: &[i64]) -> Poly<Q> {
        Poly::from_recurrence(&a.iter().map(|&v| qi(v)).collect::<Vec<_>>())
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&from_a(&[3])), Mat::from_rows(vec![vec![qi(3)]]));
        let f = from_a(&[5, -6]);
        let c = companion(&f);
        assert_eq!(
            c,
            Mat::from_rows(vec![vec![qi(0), qi(-6)], vec![qi(1), qi(5)]])
        );
        assert_eq!(char_poly(&c), f);
        let c3 = companion(&from_a(&[0, 0, 0]));
        assert_eq!(c3[(1, 0)], qi(1));
        assert_eq!(c3[(2, 1)], qi(1));
        assert!(c3.column(2).iter().all(|v| *v == qi(0)));
    }

    #[test]
    fn json_roundtrip_and_display() {
        let f = from_a(&[5, -6]);
        let v = poly_to_json(&f);
        assert_eq!(v["a"][0], "5");
        assert_eq!(poly_from_json(&v).unwrap(), f);
        assert_eq!(poly_to_string(&f), "x^2 - 5x + 6");
        assert_eq!(companion_coeffs(&companion(&f)), vec![qi(5), qi(-6)]);
    }
}
