//! First-principles pushforward: ambient operator in the coordinates x_i, x_i² or
//! the torus avatars t_i, carré du champ of the invariants, symmetric decomposition,
//! then the constant substitutions of the construction.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::closed::{aaffine_coords, assemble_op, konst, var};
use super::{product, CoxeterSpec, Family, PushforwardModel};
use crate::dopcore::Operator;
use crate::error::{Error, Result};
use crate::exactmath::{
    elementary, frac, rat, sym_decompose_in, Field, GaussianRational, MultiPoly, PolyMatrix, Rational, Vars,
};

fn names(prefix: &str, lo: usize, hi: usize) -> Vec<String> {
    (lo..=hi).map(|k| format!("{prefix}{k}")).collect()
}

fn to_vars(v: &[String]) -> Vars {
    Vars::from(v.to_vec().into_boxed_slice())
}

fn delta(i: usize, j: usize) -> Rational {
    rat(i64::from(i == j))
}

/// Γ(I_a, I_b) for a ≤ b and Δ(I_a) in ambient coordinates.
struct Raw {
    gamma: Vec<Vec<MultiPoly>>,
    delta: Vec<MultiPoly>,
}

fn raw(op: &Operator, inv: &[MultiPoly]) -> Raw {
    let m = inv.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let vals: Vec<MultiPoly> = pairs.par_iter().map(|&(i, j)| op.carre_du_champ(&inv[i], &inv[j])).collect();
    let mut gamma = vec![vec![MultiPoly::zero_in(op.coords.clone()); m]; m];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        gamma[i][j] = v.clone();
        gamma[j][i] = v;
    }
    let delta = inv.par_iter().map(|f| op.apply(f)).collect();
    Raw { gamma, delta }
}

impl Raw {
    fn map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly> + Sync) -> Result<Raw> {
        let gamma = self
            .gamma
            .par_iter()
            .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let delta = self.delta.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(Raw { gamma, delta })
    }

    fn into_operator(self, target: &Vars) -> Result<Operator> {
        let n = target.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &self.gamma {
            for e in row {
                entries.push(e.with_vars(target)?);
            }
        }
        let g = PolyMatrix::new(n, n, entries)?.with_vars(target)?;
        let b = self.delta.iter().map(|d| d.with_vars(target)).collect::<Result<Vec<_>>>()?;
        Ok(Operator::new(target.clone(), g, b))
    }
}

/// Substitute a polynomial for every variable, looked up by name.
fn by_name<F: Field>(f: &MultiPoly<F>, images: &[(String, MultiPoly<F>)]) -> Result<MultiPoly<F>> {
    let imgs = f
        .vars()
        .iter()
        .map(|v| {
            images
                .iter()
                .find(|(n, _)| n == v)
                .map(|(_, p)| p.clone())
                .ok_or_else(|| Error::Consistency(format!("no image for {v} (not an invariant expression)")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(f.compose(&imgs))
}

/// Decompose into S1..Sn (elementary symmetric in `tnames`), passive variables kept.
fn to_s(f: &MultiPoly, tnames: &[String]) -> Result<MultiPoly> {
    let t: Vec<&str> = tnames.iter().map(String::as_str).collect();
    let e = names("S", 1, tnames.len());
    let e: Vec<&str> = e.iter().map(String::as_str).collect();
    sym_decompose_in(f, &t, &e).map_err(|err| Error::Consistency(format!("symmetric decomposition: {err}")))
}

/// Split a polynomial invariant under sign changes of an even number of x_i into
/// f₀(x²) + (Πx_i)·f₁(x²), returned over `tnames`.
fn parity_split(f: &MultiPoly, tvars: &Vars) -> Result<(MultiPoly, MultiPoly)> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (e, c) in f.terms() {
        if e.iter().all(|x| x % 2 == 0) {
            even.push((e.iter().map(|x| x / 2).collect(), c.clone()));
        } else if e.iter().all(|x| x % 2 == 1) {
            odd.push((e.iter().map(|x| (x - 1) / 2).collect(), c.clone()));
        } else {
            return Err(Error::Consistency("term not invariant under the D_n sign changes".into()));
        }
    }
    Ok((MultiPoly::from_terms(tvars.clone(), even), MultiPoly::from_terms(tvars.clone(), odd)))
}

fn s_images(target: &Vars, n: usize, fixed: &[(usize, MultiPoly)], first_free: usize) -> Vec<(String, MultiPoly)> {
    let mut out: Vec<(String, MultiPoly)> = fixed.iter().map(|(k, p)| (format!("S{k}"), p.with_vars(target).unwrap())).collect();
    for k in first_free..=n {
        if fixed.iter().all(|(j, _)| *j != k) {
            out.push((format!("S{k}"), var(target, &format!("X{k}"))));
        }
    }
    out
}

/// Γ and Δ of e_1..e_n of the ambient operator in S-coordinates (no substitution).
fn s_space(op: &Operator, tnames: &[String], which: &[usize]) -> Result<Raw> {
    let tv = op.coords.clone();
    let idx: Vec<usize> = (0..tnames.len()).collect();
    let inv: Vec<MultiPoly> = which.iter().map(|&k| elementary(&tv, &idx, k)).collect();
    raw(op, &inv).map(|f| to_s(f, tnames))
}

fn ambient_x(n: usize, hyperplane: bool, sphere_dim: usize) -> (Vec<String>, Operator) {
    // sphere of dimension `sphere_dim`: Δx = −sphere_dim·x on linear functions
    let xs = names("x", 1, n);
    let v = to_vars(&xs);
    let shift = if hyperplane { frac(1, n as i64) } else { rat(0) };
    let op = assemble_op(
        &v,
        |i, j| {
            konst(&v, delta(i, j) - &shift) - var(&v, &xs[i]) * var(&v, &xs[j])
        },
        |i| var(&v, &xs[i]).scale(&rat(-(sphere_dim as i64))),
    );
    (xs, op)
}

/// Sphere ambient in t_i = x_i²: Γ_E(t_i,t_j) = 4t_iδ_ij, Δ_E t_i = 2, Euler field 2t_i.
fn ambient_t_sphere(n: usize, total_dim: usize) -> (Vec<String>, Operator) {
    let ts = names("t", 1, n);
    let v = to_vars(&ts);
    let t = |i: usize| var(&v, &ts[i]);
    let big_n = total_dim as i64;
    let op = assemble_op(
        &v,
        |i, j| t(i).scale(&(delta(i, j) * rat(4))) - (t(i) * t(j)).scale(&rat(4)),
        // Δ_S = Δ_E − (r∂_r)² − (N−2)r∂_r
        |i| konst(&v, rat(2)) - t(i).scale(&rat(4)) - t(i).scale(&rat(2 * (big_n - 2))),
    );
    (ts, op)
}

/// Brute-force pushforward of the Laplacian.
pub fn oracle_pushforward(spec: &CoxeterSpec) -> Result<PushforwardModel> {
    spec.validate()?;
    if spec.family == Family::Product {
        return product::product_oracle(&spec.factors, spec.variant.unwrap_or(1));
    }
    let target = spec.vars();
    let n = spec.rank;
    let k = |c: Rational| konst(&target, c);
    let op = match spec.family {
        Family::A => {
            let (xs, amb) = ambient_x(n, true, n - 2);
            let imgs = s_images(&target, n, &[(1, k(rat(0))), (2, k(frac(-1, 2)))], 3);
            s_space(&amb, &xs, &(3..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
        }
        Family::BProj1 | Family::BProj2 => {
            let (ts, amb) = if spec.family == Family::BProj1 {
                ambient_t_sphere(n, n)
            } else {
                // t_i = n x_i² − 1: Γ_E = 4n(t_i+1)δ_ij, Δ_E t_i = 2n, Euler field 2(t_i+1)
                let ts = names("t", 1, n);
                let v = to_vars(&ts);
                let t1 = |i: usize| var(&v, &ts[i]) + konst(&v, rat(1));
                let nn = n as i64;
                let op = assemble_op(
                    &v,
                    |i, j| t1(i).scale(&(delta(i, j) * rat(4 * nn))) - (t1(i) * t1(j)).scale(&rat(4)),
                    |i| konst(&v, rat(2 * nn)) - t1(i).scale(&rat(4)) - t1(i).scale(&rat(2 * (nn - 2))),
                );
                (ts, op)
            };
            let s1 = if spec.family == Family::BProj1 { rat(1) } else { rat(0) };
            let imgs = s_images(&target, n, &[(1, k(s1))], 2);
            s_space(&amb, &ts, &(2..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
        }
        Family::D => {
            let (xs, amb) = ambient_x(n, false, n - 1);
            let xv = amb.coords.clone();
            let idx: Vec<usize> = (0..n).collect();
            let sq: Vec<MultiPoly> = xs.iter().map(|x| var(&xv, x).pow(2)).collect();
            let mut inv: Vec<MultiPoly> =
                (2..n).map(|a| elementary(&xv, &idx, a).compose(&sq)).collect();
            let mut prod = MultiPoly::one_in(xv.clone());
            for x in &xs {
                prod = prod * var(&xv, x);
            }
            inv.push(prod);
            let ts = names("t", 1, n);
            let tv = to_vars(&ts);
            let z = var(&target, "Z");
            let imgs = s_images(&target, n, &[(1, k(rat(1))), (n, &z * &z)], 2);
            raw(&amb, &inv)
                .map(|f| {
                    let (even, odd) = parity_split(f, &tv)?;
                    let e = by_name(&to_s(&even, &ts)?, &imgs)?;
                    let o = by_name(&to_s(&odd, &ts)?, &imgs)?;
                    Ok(e + o * &z)
                })?
                .into_operator(&target)?
        }
        Family::A1A => match spec.variant {
            Some(1) => {
                let (xs, amb) = ambient_x(n, true, n - 1);
                let imgs = s_images(&target, n, &[(1, k(rat(0)))], 2);
                s_space(&amb, &xs, &(2..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
            }
            Some(2) => {
                // coordinates (x̂₀, x_1..x_n) on Sⁿ ⊂ ℝ ⊕ ℝ ⊕ H; x₀ never enters the invariants
                let mut all = vec!["h".to_string()];
                let xs = names("x", 1, n);
                all.extend(xs.iter().cloned());
                let v = to_vars(&all);
                let shift = frac(1, n as i64);
                let amb = assemble_op(
                    &v,
                    |i, j| {
                        let base = if i == 0 || j == 0 { delta(i, j) } else { delta(i, j) - &shift };
                        konst(&v, base) - var(&v, &all[i]) * var(&v, &all[j])
                    },
                    |i| var(&v, &all[i]).scale(&rat(-(n as i64))),
                );
                let idx: Vec<usize> = (1..=n).collect();
                let mut inv = vec![var(&v, "h")];
                inv.extend((2..=n).map(|a| elementary(&v, &idx, a)));
                let mut imgs = s_images(&target, n, &[(1, k(rat(0)))], 2);
                imgs.push(("h".into(), var(&target, "X1")));
                raw(&amb, &inv).map(|f| by_name(&to_s(f, &xs)?, &imgs))?.into_operator(&target)?
            }
            _ => {
                let (xs, amb) = ambient_x(n, false, n);
                let imgs = s_images(&target, n, &[], 1);
                s_space(&amb, &xs, &(1..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
            }
        },
        Family::A1B => {
            let (ts, amb) = ambient_t_sphere(n, n + 1);
            let imgs = s_images(&target, n, &[], 1);
            s_space(&amb, &ts, &(1..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
        }
        Family::Caffine => {
            let (ts, amb) = ambient_torus_c(n);
            let imgs = s_images(&target, n, &[], 1);
            s_space(&amb, &ts, &(1..=n).collect::<Vec<_>>())?.map(|f| by_name(f, &imgs))?.into_operator(&target)?
        }
        Family::BaffinePartial => baffine_oracle(n, &target)?,
        Family::Aaffine => aaffine_oracle(n, &target)?,
        Family::Product | Family::Trivial => unreachable!(),
    };
    let boundary = super::boundary_poly(spec)?;
    Ok(PushforwardModel::assemble(spec, op, boundary))
}

/// t_i = cos θ_i: Γ(t_i,t_j) = δ_ij(1 − t_i²), Δt_i = −t_i.
fn ambient_torus_c(n: usize) -> (Vec<String>, Operator) {
    let ts = names("t", 1, n);
    let v = to_vars(&ts);
    let op = assemble_op(
        &v,
        |i, j| {
            if i == j {
                konst(&v, rat(1)) - var(&v, &ts[i]).pow(2)
            } else {
                MultiPoly::zero_in(v.clone())
            }
        },
        |i| -var(&v, &ts[i]),
    );
    (ts, op)
}

/// C̃ quantities in S-space used by the B̃ chain rule: Γ(s_a, s_b), Δ(s_a) and P(1).
struct TorusS {
    gamma: Vec<Vec<MultiPoly>>,
    delta: Vec<MultiPoly>,
    p1: MultiPoly,
    svars: Vars,
}

fn torus_s(n: usize) -> Result<TorusS> {
    let (ts, amb) = ambient_torus_c(n);
    let r = s_space(&amb, &ts, &(1..=n).collect::<Vec<_>>())?;
    let sn = names("S", 1, n);
    let svars = to_vars(&sn);
    let gamma = r
        .gamma
        .iter()
        .map(|row| row.iter().map(|e| e.with_vars(&svars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let delta = r.delta.iter().map(|e| e.with_vars(&svars)).collect::<Result<Vec<_>>>()?;
    let mut p1 = MultiPoly::one_in(svars.clone());
    for s in &sn {
        p1 = p1 + var(&svars, s);
    }
    Ok(TorusS { gamma, delta, p1, svars })
}

fn exact(num: &MultiPoly, den: &MultiPoly, what: &str) -> Result<MultiPoly> {
    num.div_exact(den).ok_or_else(|| Error::Consistency(format!("{what}: division by P(1) is not exact")))
}

/// ŝ_n = P(1)^{1/2}, handled by the chain rule and exact division by P(1).
fn baffine_oracle(n: usize, target: &Vars) -> Result<Operator> {
    let ts = torus_s(n)?;
    let z = var(target, "Z");
    let mut imgs: Vec<(String, MultiPoly)> = (1..n).map(|k| (format!("S{k}"), var(target, &format!("X{k}")))).collect();
    let mut sn = &z * &z - konst(target, rat(1));
    for k in 1..n {
        sn = sn - var(target, &format!("X{k}"));
    }
    imgs.push((format!("S{n}"), sn));
    let to_t = |f: &MultiPoly| by_name(f, &imgs);

    // Q_a = Γ(s_a, P(1)); Γ(s_a, ŝ) = Q_a / (2ŝ) = ŝ·Q_a/(2P(1))
    let q: Vec<MultiPoly> = (0..n)
        .map(|a| ts.gamma[a].iter().fold(MultiPoly::zero_in(ts.svars.clone()), |acc, e| acc + e))
        .collect();
    let gpp = q.iter().fold(MultiPoly::zero_in(ts.svars.clone()), |acc, e| acc + e);
    let dp1 = ts.delta.iter().fold(MultiPoly::zero_in(ts.svars.clone()), |acc, e| acc + e);
    let m = n - 1;
    let mut entries = vec![MultiPoly::zero_in(target.clone()); n * n];
    for a in 0..m {
        for b in 0..m {
            entries[a * n + b] = to_t(&ts.gamma[a][b])?.with_vars(target)?;
        }
        let e = (to_t(&exact(&q[a], &ts.p1, "Γ(s_a, ŝ_n)")?)? * &z).scale(&frac(1, 2)).with_vars(target)?;
        entries[a * n + m] = e.clone();
        entries[m * n + a] = e;
    }
    entries[m * n + m] = to_t(&exact(&gpp, &ts.p1, "Γ(ŝ_n, ŝ_n)")?)?.scale(&frac(1, 4)).with_vars(target)?;
    let mut b: Vec<MultiPoly> = (0..m).map(|a| to_t(&ts.delta[a])?.with_vars(target)).collect::<Result<_>>()?;
    // Δŝ = ŝ·(2P(1)ΔP(1) − Γ(P(1),P(1)))/(4P(1)²)
    let num = (&ts.p1 * &dp1).scale(&rat(2)) - &gpp;
    let inner = exact(&exact(&num, &ts.p1, "Δŝ_n")?, &ts.p1, "Δŝ_n")?;
    b.push((to_t(&inner)? * &z).scale(&frac(1, 4)).with_vars(target)?);
    let g = PolyMatrix::new(n, n, entries)?;
    Ok(Operator::new(target.clone(), g, b))
}

/// Outcome of the two printed B̃ identities and the ŝ_n eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaffineReport {
    pub n: usize,
    pub gamma_s_shat: bool,
    pub gamma_shat_shat: bool,
    pub delta_shat: bool,
    /// The sum form −nŝ² + Σ(n−k)s_k taken literally (without the factor 2 of 2P'(1)).
    pub literal_sum_form: bool,
}

impl BaffineReport {
    pub fn pass(&self) -> bool {
        self.gamma_s_shat && self.gamma_shat_shat && self.delta_shat
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "2Γ(s_a,ŝ_n) = ((n−a+1)s_{a−1} − a s_a)ŝ_n": self.gamma_s_shat,
            "4Γ(ŝ_n,ŝ_n) = 2P'(1) − nP(1)": self.gamma_shat_shat,
            "4Γ(ŝ_n,ŝ_n) = −nŝ_n² + Σ(n−k)s_k (literal)": self.literal_sum_form,
            "Δŝ_n = −(n/4)ŝ_n": self.delta_shat,
            "pass": self.pass(),
        })
    }
}

/// Check the B̃ identities against the torus oracle, squared out so that ŝ_n = P(1)^{1/2}
/// never appears: Γ(s_a,P(1)) = ((n−a+1)s_{a−1} − a s_a)P(1),
/// Γ(P(1),P(1)) = P(1)(2P'(1) − nP(1)), 2P(1)ΔP(1) − Γ(P(1),P(1)) = −nP(1)².
/// Expanding P'(1) = Σ_{k<n}(n−k)s_k, the sum carries a factor 2; `literal_sum_form`
/// records the check without it.
pub fn baffine_partial_identities(n: usize) -> Result<BaffineReport> {
    if n < 2 {
        return Err(Error::Parameter(format!("B̃ identities need n ≥ 2, got {n}")));
    }
    let ts = torus_s(n)?;
    let sv = &ts.svars;
    let s = |k: usize| if k == 0 { MultiPoly::one_in(sv.clone()) } else { var(sv, &format!("S{k}")) };
    let zero = MultiPoly::zero_in(sv.clone());
    let q: Vec<MultiPoly> = (0..n).map(|a| ts.gamma[a].iter().fold(zero.clone(), |acc, e| acc + e)).collect();
    let nn = n as i64;
    let gamma_s_shat = (1..n).all(|a| {
        let ai = a as i64;
        let rhs = (s(a - 1).scale(&rat(nn - ai + 1)) - s(a).scale(&rat(ai))) * &ts.p1;
        q[a - 1] == rhs
    });
    let gpp = q.iter().fold(zero.clone(), |acc, e| acc + e);
    let mut dp = MultiPoly::zero_in(sv.clone());
    for k in 0..n {
        dp = dp + s(k).scale(&rat(nn - k as i64));
    }
    let minus_np = ts.p1.scale(&rat(-nn));
    let gamma_shat_shat = gpp == &ts.p1 * &(dp.scale(&rat(2)) + &minus_np);
    let literal_sum_form = gpp == &ts.p1 * &(dp + &minus_np);
    let dp1 = ts.delta.iter().fold(zero, |acc, e| acc + e);
    let delta_shat = (&ts.p1 * &dp1).scale(&rat(2)) - &gpp == (&ts.p1 * &ts.p1).scale(&rat(-nn));
    Ok(BaffineReport { n, gamma_s_shat, gamma_shat_shat, delta_shat, literal_sum_form })
}

/// Ã: generic s_1..s_n, then s_n = 1 and the real/imaginary split.
fn aaffine_oracle(n: usize, target: &Vars) -> Result<Operator> {
    let ts = names("t", 1, n);
    let v = to_vars(&ts);
    let nn = n as i64;
    // Γ_H(t_i,t_j) = −δ_ij t_i² + t_i t_j/n, Δ_H t_i = −(1 − 1/n) t_i
    let amb = assemble_op(
        &v,
        |i, j| {
            let tt = var(&v, &ts[i]) * var(&v, &ts[j]);
            tt.scale(&(frac(1, nn) - delta(i, j)))
        },
        |i| var(&v, &ts[i]).scale(&frac(1 - nn, nn)),
    );
    let r = s_space(&amb, &ts, &(1..n).collect::<Vec<_>>())?;

    type G = GaussianRational;
    let gt = |p: &MultiPoly| p.map_coeffs(|c| G::from_rational(c.clone()));
    let coords = aaffine_coords(n);
    let tvars_g = target.clone();
    let x = |k: usize| MultiPoly::<G>::var_in(tvars_g.clone(), &format!("X{k}")).unwrap();
    let y = |k: usize| MultiPoly::<G>::var_in(tvars_g.clone(), &format!("Y{k}")).unwrap();
    let i_unit = G::i();
    let mut imgs: Vec<(String, MultiPoly<G>)> = Vec::new();
    for k in 1..=n {
        let img = if k == n {
            MultiPoly::<G>::one_in(tvars_g.clone())
        } else {
            let j = k.min(n - k);
            if 2 * j == n {
                x(j)
            } else if k < n - k {
                x(j) + y(j).scale(&i_unit)
            } else {
                x(j) - y(j).scale(&i_unit)
            }
        };
        imgs.push((format!("S{k}"), img));
    }
    // real coordinate as a ℚ(i)-combination of s_p (p = 1..n−1, index p−1)
    let combo = |im: bool, a: usize| -> Vec<(usize, G)> {
        let half = G::from_rational(frac(1, 2));
        if 2 * a == n {
            return vec![(a - 1, <G as num_traits::One>::one())];
        }
        if im {
            // y_a = (s_a − s_{n−a})/(2i)
            let c = G::new(rat(0), frac(-1, 2));
            vec![(a - 1, c.clone()), (n - a - 1, -c)]
        } else {
            vec![(a - 1, half.clone()), (n - a - 1, half)]
        }
    };
    let zero_g = MultiPoly::<G>::zero_in(tvars_g.clone());
    let real = |p: MultiPoly<G>| -> Result<MultiPoly> {
        p.try_map_coeffs(|c| c.to_rational())
            .ok_or_else(|| Error::Consistency("Ã pushforward entry is not real".into()))?
            .with_vars(target)
    };
    let dim = coords.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for (_, im_i, a) in &coords {
        for (_, im_j, b) in &coords {
            let mut acc = zero_g.clone();
            for (p, cp) in combo(*im_i, *a) {
                for (q, cq) in combo(*im_j, *b) {
                    let e = by_name(&gt(&r.gamma[p][q]), &imgs)?;
                    acc = acc + e.scale(&(cp.clone() * &cq));
                }
            }
            entries.push(real(acc)?);
        }
    }
    let mut b = Vec::with_capacity(dim);
    for (_, im, a) in &coords {
        let mut acc = zero_g.clone();
        for (p, cp) in combo(*im, *a) {
            acc = acc + by_name(&gt(&r.delta[p]), &imgs)?.scale(&cp);
        }
        b.push(real(acc)?);
    }
    Ok(Operator::new(target.clone(), PolyMatrix::new(dim, dim, entries)?.with_vars(target)?, b))
}
