use num_traits::Zero;
use serde_json::{json, Value};

use super::model::{Cometric, DensitySpec, DopModel};
use super::operator::Operator;
use crate::error::{domain, Error, Result};
use crate::exactmath::json::poly_to_json;
use crate::exactmath::resultant::DEFAULT_SEED;
use crate::exactmath::{inverse, squarefree_seeded, Exps, Field, MultiPoly, PolyMatrix, Rational, Vars};

/// Outcome of one condition.
#[derive(Clone, Debug)]
pub struct Check {
    pub condition: String,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn new(condition: &str, pass: bool, detail: Value) -> Self {
        Check { condition: condition.to_string(), pass, detail }
    }

    pub fn to_json(&self) -> Value {
        json!({"condition": self.condition, "pass": self.pass, "detail": self.detail})
    }
}

fn gradient_contraction(g: &Cometric, f: &MultiPoly, i: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero_in(g.coords().clone());
    for j in 0..g.dim() {
        let d = f.deriv(j);
        if !d.is_zero() {
            acc = acc + g.entry(i, j) * &d;
        }
    }
    acc
}

/// (A1): every entry has total degree ≤ 2.
pub fn check_a1(g: &Cometric) -> Check {
    let bad = g.degree_violators(2);
    let names: Vec<Value> = bad.iter().map(|(i, j)| json!([i + 1, j + 1])).collect();
    let degenerate = g.matrix().entries().iter().all(|e| e.is_zero());
    Check::new("A1", bad.is_empty(), json!({"violators": names, "zeroMatrix": degenerate}))
}

pub struct A2Report {
    pub check: Check,
    pub cofactor: Option<MultiPoly>,
}

/// (A2): Γ divides det g.
pub fn check_a2(g: &Cometric, gamma: &MultiPoly) -> Result<A2Report> {
    if gamma.is_zero() {
        return domain("Γ = 0");
    }
    let det = g.det();
    let cofactor = det.div_exact(&gamma.with_vars(g.coords())?);
    let detail = match &cofactor {
        Some(c) => json!({"cofactor": poly_to_json(c)}),
        None => json!({"reason": "Γ does not divide det g"}),
    };
    Ok(A2Report { check: Check::new("A2", cofactor.is_some(), detail), cofactor })
}

pub struct A3Report {
    pub check: Check,
    pub quotients: Vec<Option<MultiPoly>>,
}

fn quotients(g: &Cometric, base: &MultiPoly) -> Vec<Option<MultiPoly>> {
    (0..g.dim())
        .map(|i| gradient_contraction(g, base, i).div_exact(base))
        .collect()
}

/// (A3): Γ divides Σ_j g^{ij}∂_jΓ for each i.
pub fn check_a3(g: &Cometric, gamma: &MultiPoly) -> Result<A3Report> {
    if gamma.is_zero() {
        return domain("Γ = 0");
    }
    let gamma = gamma.with_vars(g.coords())?;
    let qs = quotients(g, &gamma);
    let pass = qs.iter().all(Option::is_some);
    let detail: Vec<Value> = qs
        .iter()
        .enumerate()
        .map(|(i, q)| match q {
            Some(q) => json!({"i": i + 1, "quotient": poly_to_json(q), "degree": q.total_degree().unwrap_or(0)}),
            None => json!({"i": i + 1, "quotient": null}),
        })
        .collect();
    Ok(A3Report { check: Check::new("A3", pass, json!({"rows": detail})), quotients: qs })
}

pub struct A5Report {
    pub check: Check,
    pub drifts: Option<Vec<MultiPoly>>,
}

/// (A5): Σ_j g^{ij}∂_j log ρ is a polynomial of degree ≤ 1 for each i.
///
/// The sum runs over j; the single-index form Σ g^{ij}∂_i is not consistent
/// with the divergence form of the operator.
pub fn check_a5(g: &Cometric, rho: &DensitySpec) -> A5Report {
    let n = g.dim();
    let mut drifts = vec![MultiPoly::zero_in(g.coords().clone()); n];
    for (k, f) in rho.factors.iter().enumerate() {
        let base = f.base.with_vars(g.coords()).unwrap();
        let qs = quotients(g, &base);
        for (i, q) in qs.into_iter().enumerate() {
            match q {
                Some(q) => drifts[i] = &drifts[i] + &q.scale(&f.exp),
                None => {
                    return A5Report {
                        check: Check::new(
                            "A5",
                            false,
                            json!({
                                "factor": k,
                                "row": i + 1,
                                "reason": "density base does not divide Σ_j g^{ij}∂_j(base)",
                                "summation": "j",
                            }),
                        ),
                        drifts: None,
                    }
                }
            }
        }
    }
    if let Some(arg) = &rho.exp_arg {
        let arg = arg.with_vars(g.coords()).unwrap();
        for (i, d) in drifts.iter_mut().enumerate() {
            *d = &*d + &gradient_contraction(g, &arg, i);
        }
    }
    let bad: Vec<usize> = (0..n)
        .filter(|&i| drifts[i].total_degree().unwrap_or(0) > 1)
        .collect();
    let detail = json!({
        "drifts": drifts.iter().map(poly_to_json).collect::<Vec<_>>(),
        "violators": bad.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "summation": "j",
    });
    A5Report { check: Check::new("A5", bad.is_empty(), detail), drifts: Some(drifts) }
}

/// Divergence-form operator: B^i = Σ_j ∂_j g^{ij} + drift_i.
pub fn build_operator(g: &Cometric, rho: &DensitySpec) -> Result<Operator> {
    let a5 = check_a5(g, rho);
    let Some(drifts) = a5.drifts.filter(|_| a5.check.pass) else {
        return Err(Error::Domain(format!("(A5) fails: {}", a5.check.detail)));
    };
    let n = g.dim();
    let b = (0..n)
        .map(|i| {
            let mut acc = drifts[i].clone();
            for j in 0..n {
                acc = acc + g.entry(i, j).deriv(j);
            }
            acc
        })
        .collect();
    Ok(Operator::new(g.coords().clone(), g.matrix().clone(), b))
}

/// All exponent vectors in n variables of total degree ≤ d.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exps<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exps<u32>>) {
        if cur.len() == n {
            out.push(cur.iter().copied().collect());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| e.iter().sum::<u32>());
    out
}

/// Whether L maps every polynomial of degree ≤ m into degree ≤ m, for m ≤ maxDeg.
pub fn check_filtration<F: Field>(op: &Operator<F>, max_deg: u32) -> Check {
    let vars = op.g.vars().clone();
    let idx: Vec<usize> = op
        .coords
        .iter()
        .map(|c| vars.iter().position(|v| v == c).unwrap())
        .collect();
    for e in monomials_up_to(op.dim(), max_deg) {
        let mut full: Exps<u32> = smallvec::smallvec![0; vars.len()];
        for (k, &i) in idx.iter().enumerate() {
            full[i] = e[k];
        }
        let m = MultiPoly::monomial(vars.clone(), full, F::one());
        let image = op.apply(&m);
        let deg = e.iter().sum::<u32>() as i64;
        if image.total_degree().unwrap_or(0) > deg {
            return Check::new(
                "filtration",
                false,
                json!({"maxDegree": max_deg, "monomial": e.to_vec(), "imageDegree": image.total_degree()}),
            );
        }
    }
    Check::new("filtration", true, json!({"maxDegree": max_deg}))
}

/// Aggregated verification report.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub label: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seed: u64,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, condition: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.condition == condition)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "pass": self.pass(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
            "seed": self.seed,
        })
    }
}

pub fn verify_model(m: &DopModel) -> VerifyReport {
    verify_model_with(m, 6, DEFAULT_SEED)
}

pub fn verify_model_with(m: &DopModel, max_deg: u32, seed: u64) -> VerifyReport {
    let mut checks = vec![check_a1(&m.g)];
    let mut notes = vec!["(A5) is evaluated as Σ_j g^{ij}∂_j log ρ".to_string()];
    if m.gamma.is_zero() {
        checks.push(Check::new("A2", false, json!({"reason": "Γ = 0"})));
        checks.push(Check::new("A3", false, json!({"reason": "Γ = 0"})));
        checks.push(Check::new("A-squarefree", false, json!({"reason": "Γ = 0"})));
    } else {
        checks.push(check_a2(&m.g, &m.gamma).expect("nonzero Γ").check);
        checks.push(check_a3(&m.g, &m.gamma).expect("nonzero Γ").check);
        let sf = squarefree_seeded(&m.gamma, seed).unwrap_or(false);
        checks.push(Check::new("A-squarefree", sf, json!({})));
    }
    let a5 = check_a5(&m.g, &m.rho);
    let a5_pass = a5.check.pass;
    checks.push(a5.check);
    if a5_pass {
        let op = build_operator(&m.g, &m.rho).expect("(A5) passed");
        checks.push(check_filtration(&op, max_deg));
    } else {
        checks.push(Check::new("filtration", false, json!({"reason": "no operator without (A5)"})));
        notes.push("filtration not evaluated".into());
    }
    VerifyReport { label: m.label.clone(), checks, notes, seed }
}

fn affine_images(coords: &Vars, a: &[Vec<Rational>], c: &[Rational]) -> Vec<MultiPoly> {
    let ys: Vec<MultiPoly> = coords.iter().map(|v| MultiPoly::var_in(coords.clone(), v).unwrap()).collect();
    (0..coords.len())
        .map(|i| {
            let mut acc = MultiPoly::constant_in(coords.clone(), c[i].clone());
            for (j, y) in ys.iter().enumerate() {
                acc = acc + y.scale(&a[i][j]);
            }
            acc
        })
        .collect()
}

impl Cometric {
    /// g_y = A⁻¹·g(A·y + c)·A⁻ᵀ, the cometric in coordinates y with x = A·y + c.
    pub fn affine_pullback(&self, a: &[Vec<Rational>], c: &[Rational]) -> Result<Cometric> {
        let n = self.dim();
        let coords = self.coords().clone();
        let ainv = inverse(a).ok_or_else(|| Error::Domain("singular affine map".into()))?;
        let images = affine_images(&coords, a, c);
        let gx = self.matrix().map(|e| e.compose(&images).with_vars(&coords).unwrap());
        let gy = PolyMatrix::from_fn(n, n, |i, j| {
            let mut acc = MultiPoly::zero_in(coords.clone());
            for k in 0..n {
                for l in 0..n {
                    let w = ainv[i][k].clone() * &ainv[j][l];
                    if !w.is_zero() {
                        acc = acc + gx.get(k, l).scale(&w);
                    }
                }
            }
            acc
        });
        Cometric::new(coords, gy)
    }
}

impl DopModel {
    /// The model pulled back along x = A·y + c (A invertible), in the same coordinate names.
    pub fn affine_pullback(&self, a: &[Vec<Rational>], c: &[Rational]) -> Result<DopModel> {
        let coords = self.g.coords().clone();
        let g = self.g.affine_pullback(a, c)?;
        let images = affine_images(&coords, a, c);
        let pull = |p: &MultiPoly| p.compose(&images).with_vars(&coords).unwrap();
        let rho = DensitySpec {
            factors: self
                .rho
                .factors
                .iter()
                .map(|f| super::model::DensityFactor { base: pull(&f.base), ..f.clone() })
                .collect(),
            exp_arg: self.rho.exp_arg.as_ref().map(pull),
        };
        let gamma = pull(&self.gamma);
        Ok(DopModel::new(g, gamma, rho, &self.label)?.with_params(self.params.clone()))
    }
}
