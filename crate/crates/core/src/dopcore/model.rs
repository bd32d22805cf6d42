use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{domain, Error, Result};
use crate::exactmath::json::{matrix_from_json, matrix_to_json, poly_to_json, rational_poly_from_json};
use crate::exactmath::{parse_rational, Field, MultiPoly, PolyMatrix, Rational, Vars};

/// Symmetric matrix of polynomials in named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cometric<F: Field = Rational> {
    coords: Vars,
    m: PolyMatrix<F>,
}

impl<F: Field> Cometric<F> {
    /// Build from a square symmetric matrix whose entries use (at most) `coords`.
    pub fn new(coords: Vars, m: PolyMatrix<F>) -> Result<Self> {
        if !m.is_square() || m.rows() != coords.len() {
            return domain(format!(
                "cometric of size {}x{} over {} coordinates",
                m.rows(),
                m.cols(),
                coords.len()
            ));
        }
        let m = m.with_vars(&coords)?;
        if !m.is_symmetric() {
            return domain("cometric is not symmetric");
        }
        Ok(Cometric { coords, m })
    }

    /// Like `new`, additionally rejecting entries of degree > 2.
    pub fn new_strict(coords: Vars, m: PolyMatrix<F>) -> Result<Self> {
        let g = Self::new(coords, m)?;
        if let Some((i, j)) = g.degree_violators(2).first() {
            return domain(format!("entry ({},{}) has degree > 2", i + 1, j + 1));
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Vars {
        &self.coords
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly<F> {
        self.m.get(i, j)
    }

    /// Upper-triangular positions whose entry exceeds the degree bound.
    pub fn degree_violators(&self, bound: i64) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if self.entry(i, j).total_degree().unwrap_or(0) > bound {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn det(&self) -> MultiPoly<F> {
        self.m.det().expect("square")
    }
}

/// One factor `base^exp` of a density; `symbol` keeps the symbolic exponent (e.g. "p-1").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityFactor {
    pub base: MultiPoly,
    pub exp: Rational,
    pub symbol: Option<String>,
}

/// ρ = exp(expArg)·Π base_k^{exp_k}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensitySpec {
    pub factors: Vec<DensityFactor>,
    pub exp_arg: Option<MultiPoly>,
}

impl DensitySpec {
    pub fn uniform() -> Self {
        DensitySpec::default()
    }

    pub fn factor(mut self, base: MultiPoly, exp: Rational, symbol: Option<&str>) -> Self {
        self.factors.push(DensityFactor { base, exp, symbol: symbol.map(str::to_string) });
        self
    }

    pub fn with_exp_arg(mut self, arg: MultiPoly) -> Self {
        self.exp_arg = Some(arg);
        self
    }
}

/// The triple (g, Γ, ρ) with descriptive metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DopModel {
    pub g: Cometric,
    pub gamma: MultiPoly,
    pub rho: DensitySpec,
    pub label: String,
    pub params: BTreeMap<String, Rational>,
}

impl DopModel {
    pub fn new(g: Cometric, gamma: MultiPoly, rho: DensitySpec, label: &str) -> Result<Self> {
        let coords = g.coords().clone();
        let gamma = gamma.with_vars(&coords)?;
        let rho = DensitySpec {
            factors: rho
                .factors
                .into_iter()
                .map(|f| {
                    if f.base.is_zero() {
                        return domain("density base is zero");
                    }
                    Ok(DensityFactor { base: f.base.with_vars(&coords)?, ..f })
                })
                .collect::<Result<_>>()?,
            exp_arg: rho.exp_arg.map(|a| a.with_vars(&coords)).transpose()?,
        };
        Ok(DopModel { g, gamma, rho, label: label.to_string(), params: BTreeMap::new() })
    }

    pub fn with_params(mut self, params: BTreeMap<String, Rational>) -> Self {
        self.params = params;
        self
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .rho
            .factors
            .iter()
            .map(|f| {
                let mut m = Map::new();
                m.insert("base".into(), poly_to_json(&f.base));
                m.insert("exp".into(), Value::String(f.exp.to_string()));
                if let Some(s) = &f.symbol {
                    m.insert("symbol".into(), Value::String(s.clone()));
                }
                Value::Object(m)
            })
            .collect();
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        json!({
            "g": matrix_to_json(self.g.matrix()),
            "gamma": poly_to_json(&self.gamma),
            "rho": {
                "factors": factors,
                "expArg": self.rho.exp_arg.as_ref().map(poly_to_json).unwrap_or(Value::Null),
            },
            "label": self.label,
            "params": params,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("model without \"{k}\"")));
        let m = matrix_from_json(field("g")?)?;
        let coords = m.vars().clone();
        let g = Cometric::new(coords, m).map_err(|e| Error::Parse(e.to_string()))?;
        let gamma = rational_poly_from_json(field("gamma")?)?;
        let rho_v = field("rho")?;
        let mut rho = DensitySpec::uniform();
        for f in rho_v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("rho without \"factors\"".into()))?
        {
            let base = rational_poly_from_json(f.get("base").ok_or_else(|| Error::Parse("factor without base".into()))?)?;
            let exp = f
                .get("exp")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("factor without exp".into()))
                .and_then(parse_rational)?;
            let symbol = f.get("symbol").and_then(Value::as_str);
            rho = rho.factor(base, exp, symbol);
        }
        match rho_v.get("expArg") {
            None | Some(Value::Null) => {}
            Some(a) => rho = rho.with_exp_arg(rational_poly_from_json(a)?),
        }
        let label = v.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        let mut params = BTreeMap::new();
        if let Some(Value::Object(p)) = v.get("params") {
            for (k, x) in p {
                let s = x.as_str().ok_or_else(|| Error::Parse(format!("param {k} must be a string")))?;
                params.insert(k.clone(), parse_rational(s)?);
            }
        }
        Ok(DopModel::new(g, gamma, rho, &label).map_err(|e| Error::Parse(e.to_string()))?.with_params(params))
    }
}
