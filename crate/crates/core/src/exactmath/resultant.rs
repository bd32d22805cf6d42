use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Rational};
use super::matrix::PolyMatrix;
use super::poly::MultiPoly;
use crate::error::{domain, Result};

/// Sylvester-matrix resultant with respect to `var`.
pub fn resultant<F: Field>(f: &MultiPoly<F>, h: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>> {
    let (f, h) = {
        let s = f + &MultiPoly::zero_in(h.vars().clone());
        let vars = s.vars().clone();
        (f.with_vars(&vars)?, h.with_vars(&vars)?)
    };
    let vars = f.vars().clone();
    let Some(idx) = vars.iter().position(|v| v == var) else {
        return domain(format!("{var} occurs in neither polynomial"));
    };
    let m = f.degree_in(idx).unwrap_or(0);
    let n = h.degree_in(idx).unwrap_or(0);
    if m < 1 && n < 1 {
        return domain(format!("both polynomials are constant in {var}"));
    }
    if f.is_zero() || h.is_zero() {
        return Ok(MultiPoly::zero_in(vars));
    }
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(h.pow(m as u32));
    }
    let (m, n) = (m as usize, n as usize);
    let fc = f.coeffs_in(idx);
    let hc = h.coeffs_in(idx);
    let zero = MultiPoly::zero_in(vars.clone());
    let coeff = |c: &std::collections::BTreeMap<i64, MultiPoly<F>>, k: i64| {
        c.get(&k).cloned().unwrap_or_else(|| zero.clone())
    };
    let size = m + n;
    let s = PolyMatrix::from_fn(size, size, |i, j| {
        if i < n {
            // row i holds f shifted by i, highest coefficient first
            let k = j as i64 - i as i64;
            if (0..=m as i64).contains(&k) {
                coeff(&fc, m as i64 - k)
            } else {
                zero.clone()
            }
        } else {
            let r = i - n;
            let k = j as i64 - r as i64;
            if (0..=n as i64).contains(&k) {
                coeff(&hc, n as i64 - k)
            } else {
                zero.clone()
            }
        }
    });
    s.det()
}

/// `(−1)^{n(n−1)/2}·Res(f, ∂f)/lc(f)` with respect to `var`.
pub fn discriminant<F: Field>(f: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>> {
    let idx = f.var_index(var)?;
    let n = f.degree_in(idx).unwrap_or(0);
    if n < 2 {
        return domain(format!("discriminant needs degree ≥ 2 in {var}"));
    }
    let r = resultant(f, &f.deriv(idx), var)?;
    let lc = f.leading_coeff_in(idx);
    let q = r.div_exact(&lc).expect("leading coefficient divides the resultant");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

const TRIALS: usize = 8;
const HEIGHT: i64 = 1_000_000;

pub const DEFAULT_SEED: u64 = 0x5eed_d0b5;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-HEIGHT..=HEIGHT);
    let d: i64 = rng.gen_range(1..=HEIGHT);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate coefficients (low to high) in `idx` after fixing the other variables.
fn specialize<F: Field>(f: &MultiPoly<F>, idx: usize, point: &[F]) -> Vec<F> {
    let coeffs = f.coeffs_in(idx);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![F::zero(); deg + 1];
    for (k, c) in coeffs {
        out[k as usize] = c.eval(point);
    }
    out
}

fn trim<F: Field>(p: &mut Vec<F>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn uni_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = b[db].inv().unwrap();
    while r.len() > db {
        let k = r.len() - 1;
        let q = r[k].clone() * &inv;
        for (i, c) in b.iter().enumerate() {
            let t = q.clone() * c;
            r[k - db + i] -= &t;
        }
        trim(&mut r);
    }
    r
}

/// Degree of the univariate gcd.
fn uni_gcd_degree<F: Field>(a: &[F], b: &[F]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Squarefreeness with the default seed.
pub fn squarefree<F: Field>(f: &MultiPoly<F>) -> Result<bool> {
    squarefree_seeded(f, DEFAULT_SEED)
}

/// A polynomial is squarefree iff no variable carries a repeated factor. For each
/// variable, random specializations with a coprime gcd(f, ∂f) prove this; the
/// exact fallback is the vanishing of the resultant of f and ∂f.
pub fn squarefree_seeded<F: Field>(f: &MultiPoly<F>, seed: u64) -> Result<bool> {
    if f.is_zero() {
        return domain("squarefree of the zero polynomial");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = f.nvars();
    for idx in 0..nv {
        let deg = f.degree_in(idx).unwrap_or(0);
        if deg < 1 {
            continue;
        }
        if deg == 1 {
            // a factor of multiplicity ≥ 2 involving this variable needs degree ≥ 2
            continue;
        }
        let df = f.deriv(idx);
        let mut proven = false;
        for _ in 0..TRIALS {
            let point: Vec<F> = (0..nv).map(|_| F::from_rational(random_rational(&mut rng))).collect();
            let a = specialize(f, idx, &point);
            if a.last().map_or(true, |c| c.is_zero()) {
                continue;
            }
            let b = specialize(&df, idx, &point);
            if uni_gcd_degree(&a, &b) == 0 {
                proven = true;
                break;
            }
        }
        if !proven {
            let r = resultant(f, &df, &f.vars()[idx])?;
            if r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{frac, rat};
    use crate::exactmath::poly::proportional;

    fn gens(names: &[&str]) -> Vec<MultiPoly> {
        MultiPoly::gens(names)
    }

    #[test]
    fn linear_resultant() {
        let g = gens(&["u", "a", "b"]);
        let r = resultant(&(&g[0] - &g[1]), &(&g[0] - &g[2]), "u").unwrap();
        assert!(proportional(&r, &(&g[1] - &g[2])).is_some());
    }

    #[test]
    fn quadratic_discriminant() {
        let g = gens(&["u", "b", "c"]);
        let f = g[0].pow(2) + &g[1] * &g[0] + &g[2];
        let d = discriminant(&f, "u").unwrap();
        assert_eq!(d, g[1].pow(2) - g[2].scale(&rat(4)));
    }

    #[test]
    fn repeated_root() {
        let u = &gens(&["u"])[0];
        let f = (u.add_const(&rat(-1))).pow(2) * u.add_const(&rat(2));
        assert!(discriminant(&f, "u").unwrap().is_zero());
        assert!(discriminant(&u.add_const(&rat(1)), "u").is_err());
    }

    #[test]
    fn squarefree_examples() {
        let g = gens(&["x", "y"]);
        assert!(!squarefree(&(g[0].pow(2) * &g[1])).unwrap());
        assert!(squarefree(&(&g[0] * &g[1] + g[0].pow(2).scale(&frac(1, 2)))).unwrap());
        assert!(!squarefree(&(&g[0] + &g[1]).pow(2)).unwrap());
        assert!(squarefree(&MultiPoly::constant_in(g[0].vars().clone(), rat(3))).unwrap());
    }
}
