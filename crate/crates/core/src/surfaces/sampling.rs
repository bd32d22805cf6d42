use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dopcore::Cometric;
use crate::error::{domain, Result};
use crate::exactmath::{det_scalar, discriminant, MultiPoly, Rational};

/// (D, C): discriminant of Γ in `var` (Γ itself when linear) and its leading coefficient.
pub fn discriminant_profile(gamma: &MultiPoly, var: &str) -> Result<(MultiPoly, MultiPoly)> {
    let idx = gamma.var_index(var)?;
    let deg = gamma.degree_in(idx).unwrap_or(0);
    if deg < 1 {
        return domain(format!("Γ is constant in {var}"));
    }
    let lead = gamma.leading_coeff_in(idx);
    let d = if deg == 1 { gamma.clone() } else { discriminant(gamma, var)? };
    Ok((d, lead))
}

/// Axis-aligned box [x0,x1]×[y0,y1]×[z0,z1].
#[derive(Clone, Debug)]
pub struct SampleBox {
    pub lo: [Rational; 3],
    pub hi: [Rational; 3],
}

impl SampleBox {
    pub fn new(b: [Rational; 6]) -> Result<Self> {
        let [x0, x1, y0, y1, z0, z1] = b;
        let s = SampleBox { lo: [x0, y0, z0], hi: [x1, y1, z1] };
        if (0..3).any(|k| s.lo[k] >= s.hi[k]) {
            return domain("empty box");
        }
        Ok(s)
    }

    pub fn cube(r: Rational) -> Result<Self> {
        Self::new([-r.clone(), r.clone(), -r.clone(), r.clone(), -r.clone(), r])
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Approximate points of {Γ = 0}: exact sign changes along grid edges, located by linear interpolation.
pub fn sample_surface(gamma: &MultiPoly, bx: &SampleBox, grid: usize) -> Result<Vec<[f64; 3]>> {
    if gamma.nvars() != 3 {
        return domain("sampling needs a polynomial in 3 variables");
    }
    if grid == 0 {
        return domain("grid must be positive");
    }
    let n = grid + 1;
    let step: Vec<Rational> = (0..3)
        .map(|k| (bx.hi[k].clone() - &bx.lo[k]) / Rational::from_integer(grid.into()))
        .collect();
    let coord = |k: usize, i: usize| bx.lo[k].clone() + step[k].clone() * Rational::from_integer(i.into());
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let values: Vec<Rational> = (0..n * n * n)
        .into_par_iter()
        .map(|p| {
            let (i, j, k) = (p / (n * n), (p / n) % n, p % n);
            gamma.eval(&[coord(0, i), coord(1, j), coord(2, k)])
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let here = [i, j, k];
                let v0 = &values[idx(i, j, k)];
                let p0: Vec<Rational> = (0..3).map(|a| coord(a, here[a])).collect();
                if v0.is_zero() {
                    out.push([to_f64(&p0[0]), to_f64(&p0[1]), to_f64(&p0[2])]);
                    continue;
                }
                for axis in 0..3 {
                    if here[axis] + 1 >= n {
                        continue;
                    }
                    let mut next = here;
                    next[axis] += 1;
                    let v1 = &values[idx(next[0], next[1], next[2])];
                    if v1.is_zero() || v0.is_positive() == v1.is_positive() {
                        continue;
                    }
                    let s = v0.clone() / (v0.clone() - v1);
                    let mut p = p0.clone();
                    p[axis] = p[axis].clone() + s * &step[axis];
                    out.push([to_f64(&p[0]), to_f64(&p[1]), to_f64(&p[2])]);
                }
            }
        }
    }
    Ok(out)
}

pub fn points_to_csv(points: &[[f64; 3]]) -> String {
    let mut s = String::from("x,y,z\n");
    for p in points {
        s.push_str(&format!("{},{},{}\n", p[0], p[1], p[2]));
    }
    s
}

#[derive(Clone, Debug)]
pub struct ProbePoint {
    pub point: Vec<Rational>,
    pub minors: Vec<Rational>,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub points: Vec<ProbePoint>,
}

impl ProbeReport {
    pub fn all_positive(&self) -> bool {
        self.points.iter().all(|p| p.positive)
    }

    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "point": p.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "minors": p.minors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "positive": p.positive,
                })
            })
            .collect();
        json!({"points": pts, "allPositive": self.all_positive()})
    }
}

/// Leading principal minors of g at each point (Sylvester's criterion).
pub fn positivity_probe(g: &Cometric, points: &[Vec<Rational>]) -> Result<ProbeReport> {
    let n = g.dim();
    let mut out = Vec::new();
    for p in points {
        if p.len() != n {
            return domain(format!("point of dimension {} for a {n}-dimensional cometric", p.len()));
        }
        let m = g.matrix().eval(p);
        let minors: Vec<Rational> = (1..=n)
            .map(|k| {
                let sub: Vec<Vec<Rational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
                det_scalar(&sub)
            })
            .collect();
        let positive = minors.iter().all(|x| x.is_positive());
        out.push(ProbePoint { point: p.clone(), minors, positive });
    }
    Ok(ProbeReport { points: out })
}
