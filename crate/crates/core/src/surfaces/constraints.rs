use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::branch::{developable_patch, CurveBranch, SurfacePatch};
use super::random_rational;
use crate::dopcore::Cometric;
use crate::error::Result;
use crate::exactmath::{
    in_span, nullspace, rank, vars_of, Field, LaurentPoly, MultiPoly, PolyMatrix, SparseRow, Vars,
};

/// Upper-triangular index pairs (0-based) in unknown order.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Exponent triples klm with k+l+m ≤ 2 in unknown order.
pub const MONOMIALS: [[u32; 3]; 10] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
];

pub const NUM_UNKNOWNS: usize = 60;

/// The coefficient g^{ij}_{klm}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub i: usize,
    pub j: usize,
    pub klm: [u32; 3],
}

impl std::fmt::Display for Unknown {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [k, l, m] = self.klm;
        write!(f, "g{}{}_{}{}{}", self.i + 1, self.j + 1, k, l, m)
    }
}

pub fn unknowns() -> Vec<Unknown> {
    PAIRS
        .iter()
        .flat_map(|&(i, j)| MONOMIALS.iter().map(move |&klm| Unknown { i, j, klm }))
        .collect()
}

pub fn unknown_index(i: usize, j: usize, klm: [u32; 3]) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let p = PAIRS.iter().position(|&q| q == (i, j)).unwrap();
    let m = MONOMIALS.iter().position(|&q| q == klm).unwrap();
    p * MONOMIALS.len() + m
}

/// Coefficient tag: t-exponent α, u-exponent β, equation index i (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowTag {
    pub patch: usize,
    pub alpha: i64,
    pub beta: i64,
    pub i: usize,
}

/// Linear system in the 60 unknowns g^{ij}_{klm}.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<F: Field> {
    pub unknowns: Vec<Unknown>,
    pub rows: Vec<(RowTag, SparseRow<F>)>,
}

impl<F: Field> ConstraintSystem<F> {
    pub fn sparse_rows(&self) -> Vec<SparseRow<F>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.sparse_rows(), NUM_UNKNOWNS)
    }

    /// Keep the rows accepted by the predicate.
    pub fn filter(&self, keep: impl Fn(&RowTag) -> bool) -> Self {
        ConstraintSystem {
            unknowns: self.unknowns.clone(),
            rows: self.rows.iter().filter(|(t, _)| keep(t)).cloned().collect(),
        }
    }

    pub fn solve(&self) -> SolutionSpace<F> {
        SolutionSpace { basis: nullspace(&self.sparse_rows(), NUM_UNKNOWNS) }
    }
}

fn patch_rows<F: Field>(patch_no: usize, p: &SurfacePatch<F>) -> Vec<(RowTag, SparseRow<F>)> {
    let normal = p.normal();
    let x = p.components();
    let monos: Vec<LaurentPoly<F>> = MONOMIALS
        .iter()
        .map(|klm| {
            let mut acc = LaurentPoly::one_in(x[0].vars().clone());
            for (c, &e) in x.iter().zip(klm) {
                if e > 0 {
                    acc = acc * c.pow(e);
                }
            }
            acc
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..3).flat_map(|j| (0..MONOMIALS.len()).map(move |m| (j, m))).collect();
    let products: Vec<(usize, usize, LaurentPoly<F>)> = jobs
        .par_iter()
        .map(|&(j, m)| (j, m, &normal[j] * &monos[m]))
        .collect();
    let mut acc: BTreeMap<RowTag, BTreeMap<usize, F>> = BTreeMap::new();
    for (j, m, prod) in &products {
        for (e, c) in prod.terms() {
            for i in 0..3 {
                let tag = RowTag { patch: patch_no, alpha: e[0] as i64, beta: e[1] as i64, i };
                let col = unknown_index(i, *j, MONOMIALS[*m]);
                let slot = acc.entry(tag).or_default().entry(col).or_insert_with(F::zero);
                *slot += c;
            }
        }
    }
    acc.into_iter()
        .filter_map(|(tag, row)| {
            let row: SparseRow<F> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            (!row.is_empty()).then_some((tag, row))
        })
        .collect()
}

/// Expand E_i = Σ_j (Jacobian minor)_j · g^{ij}(X) on every patch, one row per (α, β, i).
pub fn assemble_constraints<F: Field>(patches: &[SurfacePatch<F>]) -> ConstraintSystem<F> {
    let rows = patches
        .par_iter()
        .enumerate()
        .map(|(k, p)| patch_rows(k, p))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    ConstraintSystem { unknowns: unknowns(), rows }
}

pub fn xyz() -> Vars {
    vars_of(&["x", "y", "z"])
}

/// Reassemble a coefficient vector into a symmetric cometric in x, y, z.
pub fn vector_to_cometric<F: Field>(v: &[F]) -> Cometric<F> {
    let vars = xyz();
    let entry = |i: usize, j: usize| {
        MultiPoly::from_terms(
            vars.clone(),
            MONOMIALS
                .iter()
                .map(|klm| (klm.iter().copied().collect(), v[unknown_index(i, j, *klm)].clone())),
        )
    };
    let m = PolyMatrix::from_fn(3, 3, entry);
    Cometric::new(vars, m).expect("symmetric by construction")
}

/// Coefficient vector of a cometric; None if some entry has degree > 2.
pub fn cometric_to_vector<F: Field>(g: &Cometric<F>) -> Option<Vec<F>> {
    if g.dim() != 3 || !g.degree_violators(2).is_empty() {
        return None;
    }
    let g = g.matrix().with_vars(&xyz()).ok()?;
    let mut v = vec![F::zero(); NUM_UNKNOWNS];
    for &(i, j) in &PAIRS {
        for klm in &MONOMIALS {
            let e: Vec<u32> = klm.to_vec();
            v[unknown_index(i, j, *klm)] = g.get(i, j).coeff(&e);
        }
    }
    Some(v)
}

/// Exact nullspace of a constraint system, in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace<F: Field> {
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> SolutionSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cometrics(&self) -> Vec<Cometric<F>> {
        self.basis.iter().map(|v| vector_to_cometric(v)).collect()
    }

    pub fn contains(&self, g: &Cometric<F>) -> bool {
        cometric_to_vector(g).is_some_and(|v| in_span(&self.basis, &v))
    }
}

pub fn solution_space<F: Field>(patches: &[SurfacePatch<F>]) -> SolutionSpace<F> {
    assemble_constraints(patches).solve()
}

/// Nullspace basis of the assembled system as cometrics, in canonical order.
pub fn solve_cometric<F: Field>(patches: &[SurfacePatch<F>]) -> Vec<Cometric<F>> {
    solution_space(patches).cometrics()
}

/// Rows of a developable system not affected by terms of order > `truncation`.
#[derive(Clone, Debug)]
pub struct LocalSystem<F: Field> {
    pub system: ConstraintSystem<F>,
    /// Rows with α below this bound are kept.
    pub alpha_safe: i64,
    pub seed: u64,
}

/// The developable system of a branch known only up to t-order `truncation`.
///
/// Components flagged in `truncated` get two random tails of order truncation+1
/// and truncation+2; rows are kept for every α below the first t-exponent at which
/// the tailed system differs from the untailed one.
pub fn local_system<F: Field>(
    b: &CurveBranch<F>,
    truncated: [bool; 3],
    truncation: i32,
    seed: u64,
) -> Result<LocalSystem<F>> {
    let base = assemble_constraints(&[developable_patch(b)?]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alpha_safe = i64::MAX;
    for _ in 0..2 {
        let comps: Vec<LaurentPoly<F>> = b
            .components()
            .iter()
            .zip(truncated)
            .map(|(c, tr)| {
                if !tr {
                    return c.clone();
                }
                let tail = LaurentPoly::from_terms(
                    c.vars().clone(),
                    (1..=2).map(|k| {
                        (smallvec::smallvec![truncation + k], F::from_rational(random_rational(&mut rng, 1000, 30)))
                    }),
                );
                c + &tail
            })
            .collect();
        let tailed = CurveBranch::new([comps[0].clone(), comps[1].clone(), comps[2].clone()])?;
        let other = assemble_constraints(&[developable_patch(&tailed)?]);
        let a: BTreeMap<RowTag, &SparseRow<F>> = base.rows.iter().map(|(t, r)| (*t, r)).collect();
        let o: BTreeMap<RowTag, &SparseRow<F>> = other.rows.iter().map(|(t, r)| (*t, r)).collect();
        for tag in a.keys().chain(o.keys()) {
            if a.get(tag) != o.get(tag) {
                alpha_safe = alpha_safe.min(tag.alpha);
            }
        }
    }
    Ok(LocalSystem { system: base.filter(|t| t.alpha < alpha_safe), alpha_safe, seed })
}
