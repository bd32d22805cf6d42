//! Pushforwards of sphere and torus Laplacians through Coxeter-group invariants.
//!
//! `closed_form` writes the operators down from the printed formulas; `oracle_pushforward`
//! recomputes them from the ambient operator by symmetric decomposition.

mod closed;
mod formulas;
mod oracle;
mod product;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::dopcore::{Cometric, DensitySpec, DopModel, Operator};
use crate::error::{Error, Result};
use crate::exactmath::json::{matrix_to_json, poly_to_json};
use crate::exactmath::{frac, rat, Field, MultiPoly, Rational, Vars};

pub use closed::{boundary_poly, closed_form};
pub use oracle::{baffine_partial_identities, oracle_pushforward, BaffineReport};
pub use product::product_model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    BProj1,
    BProj2,
    D,
    A1A,
    A1B,
    Caffine,
    Aaffine,
    BaffinePartial,
    Product,
    Trivial,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::A,
        Family::BProj1,
        Family::BProj2,
        Family::D,
        Family::A1A,
        Family::A1B,
        Family::Caffine,
        Family::Aaffine,
        Family::BaffinePartial,
        Family::Product,
        Family::Trivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::BProj1 => "B_proj1",
            Family::BProj2 => "B_proj2",
            Family::D => "D",
            Family::A1A => "A1A",
            Family::A1B => "A1B",
            Family::Caffine => "Caffine",
            Family::Aaffine => "Aaffine",
            Family::BaffinePartial => "Baffine_partial",
            Family::Product => "Product",
            Family::Trivial => "Trivial",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().to_ascii_lowercase() == key)
            .or(match key.as_str() {
                "d4" => Some(Family::D),
                "b" => Some(Family::BProj1),
                "c" | "c_affine" => Some(Family::Caffine),
                "a_affine" => Some(Family::Aaffine),
                "b_affine" | "baffine" => Some(Family::BaffinePartial),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown Coxeter family {s:?}")))
    }
}

/// Which quotient to build. `rank` is the n of the construction (number of ambient
/// coordinates x_1..x_n or angles θ_1..θ_n); products carry their factors instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSpec {
    pub family: Family,
    pub rank: usize,
    pub variant: Option<u8>,
    pub factors: Vec<CoxeterSpec>,
}

impl CoxeterSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        CoxeterSpec { family, rank, variant: None, factors: Vec::new() }
    }

    pub fn d4() -> Self {
        Self::new(Family::D, 4)
    }

    pub fn a1a(rank: usize, variant: u8) -> Self {
        CoxeterSpec { variant: Some(variant), ..Self::new(Family::A1A, rank) }
    }

    pub fn product(factors: Vec<CoxeterSpec>, variant: u8) -> Self {
        CoxeterSpec { family: Family::Product, rank: 0, variant: Some(variant), factors }
    }

    /// Parse a product factor token: `T<k>` (trivial group on ℝ^k), `A<m>` (A_m on the
    /// hyperplane of ℝ^{m+1}), `B<m>` (B_m on ℝ^m).
    pub fn parse_factor(tok: &str) -> Result<Self> {
        let tok = tok.trim();
        let (head, num) = tok.split_at(tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len()));
        let m: usize = num.parse().map_err(|_| Error::Parse(format!("bad factor {tok:?}")))?;
        match head {
            "T" => Ok(Self::new(Family::Trivial, m)),
            "A" => Ok(Self::new(Family::A, m + 1)),
            "B" => Ok(Self::new(Family::BProj1, m)),
            _ => Err(Error::Parse(format!("bad factor {tok:?}; use T<k>, A<m> or B<m>"))),
        }
    }

    fn min_rank(&self) -> usize {
        match self.family {
            Family::A => 3,
            Family::D => 4,
            Family::A1A | Family::BProj1 | Family::BProj2 | Family::Aaffine | Family::BaffinePartial => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Product => {
                let v = self.variant.unwrap_or(1);
                product::check_preconditions(&self.factors, v)
            }
            Family::Trivial => Err(Error::Parameter("the trivial group is only a product factor".into())),
            _ => {
                if self.rank < self.min_rank() {
                    return Err(Error::Parameter(format!(
                        "{} needs rank ≥ {}, got {}",
                        self.family,
                        self.min_rank(),
                        self.rank
                    )));
                }
                match (self.family, self.variant) {
                    (Family::A1A, Some(1..=3)) => Ok(()),
                    (Family::A1A, v) => Err(Error::Parameter(format!("A1A needs variant 1, 2 or 3, got {v:?}"))),
                    (_, None) | (_, Some(1)) => Ok(()),
                    (f, Some(v)) => Err(Error::Parameter(format!("{f} has no variant {v}"))),
                }
            }
        }
    }

    /// Target coordinate names.
    pub fn coords(&self) -> Vec<String> {
        let n = self.rank;
        let xs = |lo: usize, hi: usize| (lo..=hi).map(|k| format!("X{k}")).collect::<Vec<_>>();
        match self.family {
            Family::A => xs(3, n),
            Family::BProj1 | Family::BProj2 => xs(2, n),
            Family::D => {
                let mut v = xs(2, n - 1);
                v.push("Z".into());
                v
            }
            Family::A1A => match self.variant {
                Some(1) => xs(2, n),
                _ => xs(1, n),
            },
            Family::A1B | Family::Caffine => xs(1, n),
            Family::BaffinePartial => {
                let mut v = xs(1, n - 1);
                v.push("Z".into());
                v
            }
            Family::Aaffine => closed::aaffine_coords(n).into_iter().map(|(name, _, _)| name).collect(),
            Family::Product => product::coords(&self.factors, self.variant.unwrap_or(1)),
            Family::Trivial => (1..=n).map(|k| format!("x{k}")).collect(),
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Product => {
                let fs: Vec<String> = self.factors.iter().map(|f| f.factor_token()).collect();
                format!("Product[{}] variant {}", fs.join("+"), self.variant.unwrap_or(1))
            }
            Family::A1A => format!("A1A rank {} variant {}", self.rank, self.variant.unwrap_or(1)),
            Family::D if self.rank == 4 => "D4".into(),
            f => format!("{f} rank {}", self.rank),
        }
    }

    fn factor_token(&self) -> String {
        match self.family {
            Family::Trivial => format!("T{}", self.rank),
            Family::A => format!("A{}", self.rank - 1),
            Family::BProj1 => format!("B{}", self.rank),
            _ => self.label(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("family".into(), json!(self.family.name()));
        m.insert("rank".into(), json!(self.rank));
        if let Some(v) = self.variant {
            m.insert("variant".into(), json!(v));
        }
        if !self.factors.is_empty() {
            m.insert("factors".into(), Value::Array(self.factors.iter().map(|f| f.to_json()).collect()));
        }
        Value::Object(m)
    }

    fn vars(&self) -> Vars {
        let c = self.coords();
        Vars::from(c.into_boxed_slice())
    }
}

/// The image of the Laplacian in invariant coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardModel {
    pub spec: CoxeterSpec,
    pub op: Operator,
    pub boundary: MultiPoly,
    /// Coefficient of X_a in Δ(X_a).
    pub eigen: Vec<(String, Rational)>,
    /// Filtration weights; all one for an unweighted solution.
    pub weights: Vec<Rational>,
}

impl PushforwardModel {
    pub(crate) fn assemble(spec: &CoxeterSpec, op: Operator, boundary: MultiPoly) -> Self {
        let eigen = op
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let idx = op.b[i].var_index(c).expect("drift uses target coordinates");
                let mut e: crate::exactmath::Exps<u32> = smallvec::smallvec![0; op.b[i].nvars()];
                e[idx] = 1;
                (c.clone(), op.b[i].coeff(&e))
            })
            .collect();
        let weights = default_weights(spec, op.dim());
        PushforwardModel { spec: spec.clone(), op, boundary, eigen, weights }
    }

    pub fn coords(&self) -> &Vars {
        &self.op.coords
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|w| w != &rat(1))
    }

    pub fn det(&self) -> MultiPoly {
        self.op.g.det().expect("square")
    }

    /// (g, Γ = boundary, ρ = (det g)^{−1/2}).
    pub fn to_dop_model(&self) -> Result<DopModel> {
        let g = Cometric::new(self.op.coords.clone(), self.op.g.clone())?;
        let det = g.det();
        if det.is_zero() {
            return Err(Error::Consistency("det g vanishes identically".into()));
        }
        let rho = DensitySpec::uniform().factor(det, frac(-1, 2), None);
        DopModel::new(g, self.boundary.clone(), rho, &self.spec.label())
    }

    pub fn to_json(&self) -> Value {
        let eigen: Map<String, Value> =
            self.eigen.iter().map(|(c, l)| (c.clone(), Value::String(l.to_string()))).collect();
        json!({
            "spec": self.spec.to_json(),
            "coords": self.op.coords.to_vec(),
            "g": matrix_to_json(&self.op.g),
            "b": self.op.b.iter().map(poly_to_json).collect::<Vec<_>>(),
            "boundary": poly_to_json(&self.boundary),
            "eigen": eigen,
            "weights": self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn default_weights(spec: &CoxeterSpec, dim: usize) -> Vec<Rational> {
    let mut w = vec![rat(1); dim];
    let half_last = match spec.family {
        Family::D => spec.rank >= 5,
        Family::BaffinePartial => spec.rank >= 3,
        _ => false,
    };
    if half_last {
        w[dim - 1] = frac(1, 2);
    }
    w
}

/// An entry of g of total degree above two, with its leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeViolation {
    pub row: usize,
    pub col: usize,
    pub degree: i64,
    pub monomial: MultiPoly,
}

impl DegreeViolation {
    pub fn to_json(&self) -> Value {
        json!({
            "entry": [self.row + 1, self.col + 1],
            "degree": self.degree,
            "monomial": self.monomial.to_string(),
        })
    }
}

/// Entries (upper triangle) whose total degree exceeds two.
pub fn degree_violations(model: &PushforwardModel) -> Vec<DegreeViolation> {
    let g = &model.op.g;
    let n = g.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let e = g.get(i, j);
            if let Some((m, c)) = e.lead() {
                let d: i64 = m.iter().map(|&x| x as i64).sum();
                if d > 2 {
                    let monomial = MultiPoly::monomial(e.vars().clone(), m.iter().copied().collect(), c.clone());
                    out.push(DegreeViolation { row: i, col: j, degree: d, monomial });
                }
            }
        }
    }
    out
}

/// Scale to leading coefficient one.
pub(crate) fn monic<F: Field>(f: &MultiPoly<F>) -> MultiPoly<F> {
    match f.lead() {
        Some((_, c)) => f.scale(&c.inv().expect("nonzero lead")),
        None => f.clone(),
    }
}

/// First entrywise difference between two operators on the same coordinates.
pub fn operator_mismatch(a: &Operator, b: &Operator) -> Option<String> {
    if a.coords != b.coords {
        return Some(format!("coordinates differ: {:?} vs {:?}", a.coords, b.coords));
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if a.g.get(i, j) != &b.g.get(i, j).with_vars(a.g.vars()).unwrap_or_else(|_| b.g.get(i, j).clone()) {
                return Some(format!("G[{},{}]: {} vs {}", a.coords[i], a.coords[j], a.g.get(i, j), b.g.get(i, j)));
            }
        }
        if a.b[i] != b.b[i] {
            return Some(format!("B[{}]: {} vs {}", a.coords[i], a.b[i], b.b[i]));
        }
    }
    None
}
