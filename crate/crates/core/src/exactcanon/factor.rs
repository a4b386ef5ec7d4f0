//! Factorization of rational polynomials into prime powers.
//!
//! Squarefree parts come from Yun's algorithm. Rational roots and small
//! factors are proposed numerically and accepted only after exact division,
//! so every reported factor divides exactly. A factor that resists splitting
//! is reported as prime.

use num_traits::{One, Zero};

use crate::matcore::eigen::eigenvalues_bounded;
use crate::matcore::scalar::{q_to_f64, Q, C64};
use crate::matcore::{CMat, Poly};

/// Largest factor degree for which conjugate-closed root subsets are tried.
const SUBSET_SEARCH_MAX_UNITS: usize = 12;

/// `f = prod g_i^i` with squarefree, pairwise coprime `g_i`.
pub fn squarefree_decomposition(f: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let c = df.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let b_next = b.divrem(&a).0;
        let c_next = d.divrem(&a).0;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b_next;
        d = c_next.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Convergents of the continued fraction of `x`, denominators up to `max_den`.
fn convergents(x: f64, max_den: f64) -> Vec<Q> {
    use num_bigint::BigInt;
    use num_traits::FromPrimitive;
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..40 {
        if !r.is_finite() {
            break;
        }
        let a = r.floor();
        let Some(ai) = BigInt::from_f64(a) else { break };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if q_to_f64(&Q::from_integer(k2.clone())) > max_den {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        out.push(Q::new(h1.clone(), k1.clone()));
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Numerical roots via the eigenvalues of the companion matrix.
pub fn numeric_roots(f: &Poly<Q>) -> Option<Vec<C64>> {
    let f = f.monic();
    let m = f.degree()?;
    if m == 0 {
        return Some(Vec::new());
    }
    let a = f.recurrence();
    let c = CMat::from_fn(m, m, |i, j| {
        if j == m - 1 {
            C64::new(q_to_f64(&a[m - 1 - i]), 0.0)
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    eigenvalues_bounded(&c, m.max(16)).ok()
}

/// Monic rational linear factors `x - r` of a squarefree `f`, plus the cofactor.
fn split_rational_roots(f: &Poly<Q>) -> (Vec<Q>, Poly<Q>) {
    let mut rest = f.monic();
    let mut roots: Vec<Q> = Vec::new();
    if rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) > 0 {
        roots.push(Q::zero());
        rest = rest.divrem(&Poly::x()).0;
    }
    let Some(approx) = numeric_roots(&rest) else {
        return (roots, rest);
    };
    for z in approx {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
            continue;
        }
        for cand in convergents(z.re, 1e12) {
            if roots.contains(&cand) {
                continue;
            }
            if rest.eval(&cand).is_zero() {
                rest = rest.divrem(&Poly::linear(cand.clone())).0;
                roots.push(cand);
                break;
            }
        }
    }
    (roots, rest)
}

/// Tries to write a squarefree `f` without rational roots as `g h` with
/// rational monic factors, using conjugate-closed subsets of its roots.
fn split_by_root_subsets(f: &Poly<Q>) -> Option<(Poly<Q>, Poly<Q>)> {
    let m = f.degree()?;
    if m < 4 {
        return None;
    }
    let roots = numeric_roots(f)?;
    // Group into real singletons and conjugate pairs.
    let mut units: Vec<Vec<C64>> = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if z.im.abs() <= 1e-8 * (1.0 + z.norm()) {
            units.push(vec![z]);
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j])
            .min_by(|&p, &q| {
                (roots[p] - z.conj())
                    .norm()
                    .total_cmp(&(roots[q] - z.conj()).norm())
            })?;
        used[partner] = true;
        units.push(vec![z, roots[partner]]);
    }
    let k = units.len();
    if k > SUBSET_SEARCH_MAX_UNITS {
        return None;
    }
    let mut best: Option<(Poly<Q>, Poly<Q>)> = None;
    for mask in 1u32..(1u32 << k) - 1 {
        let deg: usize = (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| units[b].len())
            .sum();
        if deg < 2 || 2 * deg > m {
            continue;
        }
        if best.as_ref().is_some_and(|(g, _)| g.degree() <= Some(deg)) {
            continue;
        }
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for b in (0..k).filter(|b| mask >> b & 1 == 1) {
            for &r in &units[b] {
                let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += *c;
                    next[i] -= *c * r;
                }
                coeffs = next;
            }
        }
        let mut cands: Vec<Vec<Q>> = Vec::with_capacity(deg);
        for c in coeffs.iter().take(deg) {
            cands.push(convergents(c.re, 1e12));
        }
        // Try the convergent levels jointly: level t picks the t-th (or last)
        // convergent of each coefficient.
        let levels = cands.iter().map(|v| v.len()).max().unwrap_or(0);
        for t in 0..levels {
            let mut cs: Vec<Q> = cands
                .iter()
                .map(|v| v.get(t).or(v.last()).cloned().unwrap_or_else(Q::zero))
                .collect();
            cs.push(Q::one());
            let g = Poly::new(cs);
            let (h, r) = f.divrem(&g);
            if r.is_zero() {
                best = Some((g, h));
                break;
            }
        }
    }
    best
}

fn split_squarefree(f: &Poly<Q>, out: &mut Vec<Poly<Q>>) {
    let (roots, rest) = split_rational_roots(f);
    out.extend(roots.into_iter().map(Poly::linear));
    let mut stack = vec![rest];
    while let Some(g) = stack.pop() {
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        match split_by_root_subsets(&g) {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => out.push(g.monic()),
        }
    }
}

/// Prime factors with multiplicities, monic, in a deterministic order
/// (degree, then coefficients as strings).
pub fn factor(f: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        let mut primes = Vec::new();
        split_squarefree(&g, &mut primes);
        out.extend(primes.into_iter().map(|p| (p, mult)));
    }
    out.sort_by(|(p, _), (q, _)| {
        p.degree()
            .cmp(&q.degree())
            .then_with(|| format!("{:?}", p.coeffs()).cmp(&format!("{:?}", q.coeffs())))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::scalar::{q, qi};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&v| qi(v)).collect())
    }

    fn product(fs: &[(Poly<Q>, usize)]) -> Poly<Q> {
        fs.iter().fold(Poly::one(), |acc, (g, k)| acc.mul(&g.pow(*k)))
    }

    #[test]
    fn yun_multiplicities() {
        // (x - 1)^3 (x + 2)
        let f = Poly::linear(qi(1)).pow(3).mul(&Poly::linear(qi(-2)));
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq, vec![(Poly::linear(qi(-2)), 1), (Poly::linear(qi(1)), 3)]);
    }

    #[test]
    fn rational_roots_found() {
        let f = Poly::from_roots(&[q(1, 2), qi(-3), qi(0), q(7, 3)]);
        let fs = factor(&f);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(g, k)| g.degree() == Some(1) && *k == 1));
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn quadratic_factors_split() {
        // (x^2 - 2)(x^2 + 1)(x^2 - 3)^2
        let f = p(&[-2, 0, 1]).mul(&p(&[1, 0, 1])).mul(&p(&[-3, 0, 1]).pow(2));
        let fs = factor(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, _)| g.degree() == Some(2)));
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(factor(&f), vec![(f.clone(), 1)]);
        let g = p(&[1, 1, 0, 0, 1]);
        assert_eq!(factor(&g), vec![(g.clone(), 1)]);
    }
}
