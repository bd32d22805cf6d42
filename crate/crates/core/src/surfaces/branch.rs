use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::exactmath::json::{laurent_from_json, poly_to_json};
use crate::exactmath::{vars_of, Field, LaurentPoly, Rational, Vars};

/// A space-curve branch t ↦ (ξ₁(t), ξ₂(t), ξ₃(t)) with Laurent-polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBranch<F: Field = Rational> {
    components: [LaurentPoly<F>; 3],
}

fn t_vars() -> Vars {
    vars_of(&["t"])
}

fn tu_vars() -> Vars {
    vars_of(&["t", "u"])
}

impl<F: Field> CurveBranch<F> {
    pub fn new(components: [LaurentPoly<F>; 3]) -> Result<Self> {
        let tv = t_vars();
        let components = [
            components[0].with_vars(&tv)?,
            components[1].with_vars(&tv)?,
            components[2].with_vars(&tv)?,
        ];
        if components.iter().all(|c| c.is_constant()) {
            return domain("constant branch");
        }
        Ok(CurveBranch { components })
    }

    /// Build from (coefficient, exponent) lists per component.
    pub fn from_terms(parts: [&[(F, i32)]; 3]) -> Result<Self> {
        let tv = t_vars();
        let comp = |p: &[(F, i32)]| {
            LaurentPoly::from_terms(tv.clone(), p.iter().map(|(c, e)| (smallvec::smallvec![*e], c.clone())))
        };
        Self::new([comp(parts[0]), comp(parts[1]), comp(parts[2])])
    }

    pub fn components(&self) -> &[LaurentPoly<F>; 3] {
        &self.components
    }

    pub fn var() -> &'static str {
        "t"
    }

    /// The component-wise image under x ↦ A·x + c.
    pub fn affine_image(&self, a: &[Vec<F>], c: &[F]) -> Result<Self> {
        let comps: Vec<LaurentPoly<F>> = (0..3)
            .map(|i| {
                let mut acc = LaurentPoly::constant_in(t_vars(), c[i].clone());
                for j in 0..3 {
                    acc = acc + self.components[j].scale(&a[i][j]);
                }
                acc
            })
            .collect();
        Self::new([comps[0].clone(), comps[1].clone(), comps[2].clone()])
    }

    /// Substitute t by a Laurent polynomial in t.
    pub fn reparametrize(&self, t_image: &LaurentPoly<F>) -> Result<Self> {
        let b = [("t", t_image.with_vars(&t_vars())?)];
        let c: Vec<LaurentPoly<F>> = self
            .components
            .iter()
            .map(|p| p.substitute(&b).and_then(|q| q.with_vars(&t_vars())))
            .collect::<Result<_>>()?;
        Self::new([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": F::TAG,
            "var": "t",
            "components": self.components.iter().map(poly_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let var = v.get("var").and_then(Value::as_str).unwrap_or("t");
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("branch needs three components".into()))?;
        let mut out = Vec::new();
        for c in comps {
            let p: LaurentPoly<F> = laurent_from_json(c)?;
            let p = if p.nvars() == 0 {
                p.with_vars(&t_vars())?
            } else {
                p.with_vars(&vars_of(&[var]))?.renamed(t_vars())
            };
            out.push(p);
        }
        Self::new([out[0].clone(), out[1].clone(), out[2].clone()])
    }
}

/// Lowest t-exponent of each component.
pub fn branch_order<F: Field>(b: &CurveBranch<F>) -> Result<[i64; 3]> {
    let mut out = [0; 3];
    for (k, c) in b.components.iter().enumerate() {
        if c.is_zero() {
            return domain(format!("component {} is zero", k + 1));
        }
        out[k] = c.min_degree_in(0).unwrap();
    }
    Ok(out)
}

/// A surface patch (t, u) ↦ (X₁, X₂, X₃).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePatch<F: Field = Rational> {
    components: [LaurentPoly<F>; 3],
}

impl<F: Field> SurfacePatch<F> {
    pub fn new(components: [LaurentPoly<F>; 3]) -> Result<Self> {
        let v = tu_vars();
        let components = [
            components[0].with_vars(&v)?,
            components[1].with_vars(&v)?,
            components[2].with_vars(&v)?,
        ];
        let p = SurfacePatch { components };
        if p.normal().iter().all(|m| m.is_zero()) {
            return domain("degenerate patch: all Jacobian minors vanish");
        }
        Ok(p)
    }

    pub fn components(&self) -> &[LaurentPoly<F>; 3] {
        &self.components
    }

    /// Jacobian minors ∂(X_{j+1}, X_{j−1})/∂(t, u), indices mod 3.
    pub fn normal(&self) -> [LaurentPoly<F>; 3] {
        let dt: Vec<LaurentPoly<F>> = self.components.iter().map(|c| c.deriv(0)).collect();
        let du: Vec<LaurentPoly<F>> = self.components.iter().map(|c| c.deriv(1)).collect();
        let minor = |j: usize| {
            let a = (j + 1) % 3;
            let b = (j + 2) % 3;
            &dt[a] * &du[b] - &du[a] * &dt[b]
        };
        [minor(0), minor(1), minor(2)]
    }
}

fn lift<F: Field>(p: &LaurentPoly<F>) -> LaurentPoly<F> {
    p.with_vars(&tu_vars()).unwrap()
}

/// X_j = ξ_j + u·ξ_j′.
pub fn developable_patch<F: Field>(b: &CurveBranch<F>) -> Result<SurfacePatch<F>> {
    let u = LaurentPoly::var_in(tu_vars(), "u").unwrap();
    let c: Vec<LaurentPoly<F>> = b
        .components
        .iter()
        .map(|x| lift(x) + &u * &lift(&x.deriv(0)))
        .collect();
    SurfacePatch::new([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// X_j = u·ξ_j(t).
pub fn cone_patch<F: Field>(b: &CurveBranch<F>) -> Result<SurfacePatch<F>> {
    let u = LaurentPoly::var_in(tu_vars(), "u").unwrap();
    let c: Vec<LaurentPoly<F>> = b.components.iter().map(|x| &u * &lift(x)).collect();
    SurfacePatch::new([c[0].clone(), c[1].clone(), c[2].clone()])
}
