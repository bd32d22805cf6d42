use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::random_rational;
use crate::dopcore::Cometric;
use crate::exactmath::{Field, MultiPoly, PolyMatrix, Vars};

pub const EXACT_THRESHOLD: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Forced,
    NotForced,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Forced => "forced",
            Verdict::NotForced => "not-forced",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ForcedReport {
    pub verdict: Verdict,
    /// True when decided on the parametric determinant rather than by sampling.
    pub exact: bool,
    /// det(Σ c_k g_k) vanishes identically.
    pub det_identically_zero: bool,
    pub basis_dim: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ForcedReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "exact": self.exact,
            "detIdenticallyZero": self.det_identically_zero,
            "basisDim": self.basis_dim,
            "trials": self.trials,
            "seed": self.seed,
        })
    }
}

fn combination<F: Field>(basis: &[Cometric<F>], coeffs: &[MultiPoly<F>], vars: &Vars) -> PolyMatrix<F> {
    let n = basis[0].dim();
    PolyMatrix::from_fn(n, n, |i, j| {
        let mut acc = MultiPoly::zero_in(vars.clone());
        for (g, c) in basis.iter().zip(coeffs) {
            let e = g.entry(i, j).with_vars(vars).unwrap();
            if !e.is_zero() {
                acc = acc + &e * &c.with_vars(vars).unwrap();
            }
        }
        acc
    })
}

/// Does `factor` divide det g for every g in the span of `basis`?
pub fn forced_factor<F: Field>(basis: &[Cometric<F>], factor: &MultiPoly<F>, trials: usize, seed: u64) -> ForcedReport {
    let d = basis.len();
    let mut report = ForcedReport {
        verdict: Verdict::Indeterminate,
        exact: false,
        det_identically_zero: false,
        basis_dim: d,
        trials: 0,
        seed,
    };
    if d == 0 {
        return report;
    }
    let coords = basis[0].coords().clone();
    if d <= EXACT_THRESHOLD {
        let mut names: Vec<String> = coords.to_vec();
        let cnames: Vec<String> = (1..=d).map(|k| format!("c{k}")).collect();
        names.extend(cnames.iter().cloned());
        let vars: Vars = names.into();
        let cs: Vec<MultiPoly<F>> = cnames.iter().map(|c| MultiPoly::var_in(vars.clone(), c).unwrap()).collect();
        let det = combination(basis, &cs, &vars).det().expect("square");
        report.exact = true;
        report.det_identically_zero = det.is_zero();
        let f = factor.with_vars(&vars).unwrap();
        report.verdict = if MultiPoly::divides(&f, &det) { Verdict::Forced } else { Verdict::NotForced };
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all_zero = true;
    for _ in 0..trials {
        report.trials += 1;
        let cs: Vec<MultiPoly<F>> = (0..d)
            .map(|_| MultiPoly::constant_in(coords.clone(), F::from_rational(random_rational(&mut rng, 1000, 30))))
            .collect();
        let det = combination(basis, &cs, &coords).det().expect("square");
        all_zero &= det.is_zero();
        if !MultiPoly::divides(&factor.with_vars(&coords).unwrap(), &det) {
            report.verdict = Verdict::NotForced;
            report.det_identically_zero = false;
            return report;
        }
    }
    report.det_identically_zero = all_zero;
    report.verdict = Verdict::Forced;
    report
}
