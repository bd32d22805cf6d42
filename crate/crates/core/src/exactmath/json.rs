use serde_json::{json, Map, Value};

use super::field::{Field, GaussianRational, Rational};
use super::matrix::PolyMatrix;
use super::poly::{vars_of, Exponent, Exps, LaurentPoly, MultiPoly, Poly};
use crate::error::{Error, Result};

pub fn poly_to_json<F: Field, E: Exponent>(p: &Poly<F, E>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(e, c)| {
            json!({
                "c": c.coeff_to_json(),
                "e": e.iter().map(|x| x.to_i64()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("field".into(), Value::String(F::TAG.into()));
    m.insert("vars".into(), json!(p.vars().to_vec()));
    m.insert("terms".into(), Value::Array(terms));
    if E::LAURENT {
        m.insert("laurent".into(), Value::Bool(true));
    }
    Value::Object(m)
}

fn field_tag(v: &Value) -> Result<&str> {
    v.get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("polynomial without \"field\"".into()))
}

pub fn poly_from_json<F: Field, E: Exponent>(v: &Value) -> Result<Poly<F, E>> {
    let tag = field_tag(v)?;
    if tag != F::TAG && !(tag == "Q" && F::TAG == "Qi") {
        return Err(Error::Parse(format!("expected field {}, found {tag}", F::TAG)));
    }
    let laurent = v.get("laurent").and_then(Value::as_bool).unwrap_or(false);
    let vars: Vec<String> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial without \"vars\"".into()))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("variable names must be strings".into())))
        .collect::<Result<_>>()?;
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let vars = vars_of(&names);
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial without \"terms\"".into()))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = F::coeff_from_json(t.get("c").ok_or_else(|| Error::Parse("term without \"c\"".into()))?)?;
        let e = t
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term without \"e\"".into()))?;
        if e.len() != vars.len() {
            return Err(Error::Parse("exponent length differs from variable count".into()));
        }
        let mut exps: Exps<E> = Exps::new();
        for x in e {
            let k = x.as_i64().ok_or_else(|| Error::Parse("exponents must be integers".into()))?;
            if k < 0 && !laurent {
                return Err(Error::Parse("negative exponent outside a laurent file".into()));
            }
            exps.push(E::from_i64(k).ok_or_else(|| Error::Parse(format!("exponent {k} out of range")))?);
        }
        out.push((exps, c));
    }
    Ok(Poly::from_terms(vars, out))
}

/// Parse a rational-field polynomial; a "Qi" polynomial is accepted when every coefficient is real.
pub fn rational_poly_from_json(v: &Value) -> Result<MultiPoly<Rational>> {
    match field_tag(v)? {
        "Q" => poly_from_json(v),
        "Qi" => poly_from_json::<GaussianRational, u32>(v)?
            .try_map_coeffs(|c| c.to_rational())
            .ok_or_else(|| Error::Parse("non-real coefficient where a rational one is required".into())),
        t => Err(Error::Parse(format!("unknown field {t}"))),
    }
}

pub fn laurent_from_json<F: Field>(v: &Value) -> Result<LaurentPoly<F>> {
    poly_from_json(v)
}

pub fn matrix_to_json<F: Field>(m: &PolyMatrix<F>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<PolyMatrix<Rational>> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("matrix without \"{k}\"")))
    };
    let (rows, cols) = (get("rows")? as usize, get("cols")? as usize);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrix without \"entries\"".into()))?
        .iter()
        .map(rational_poly_from_json)
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(rows, cols, entries).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{frac, rat};

    #[test]
    fn canonical_format() {
        let g = MultiPoly::<Rational>::gens(&["x", "y", "z"]);
        let p = g[0].pow(2).scale(&frac(3, 2)) * &g[1] - g[2].scale(&rat(1));
        let s = serde_json::to_string(&poly_to_json(&p)).unwrap();
        assert_eq!(
            s,
            r#"{"field":"Q","terms":[{"c":"3/2","e":[2,1,0]},{"c":"-1","e":[0,0,1]}],"vars":["x","y","z"]}"#
        );
        let back: MultiPoly = poly_from_json(&poly_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn laurent_and_gaussian() {
        let t = LaurentPoly::<GaussianRational>::gens(&["t"]).remove(0);
        let tinv = LaurentPoly::monomial(t.vars().clone(), smallvec::smallvec![-1], GaussianRational::i());
        let p = &t + &tinv;
        let v = poly_to_json(&p);
        assert_eq!(v["laurent"], Value::Bool(true));
        assert_eq!(v["terms"][1]["c"], json!(["0", "1"]));
        let back: LaurentPoly<GaussianRational> = poly_from_json(&v).unwrap();
        assert_eq!(back, p);
        let mut bad = v.clone();
        bad.as_object_mut().unwrap().remove("laurent");
        assert!(poly_from_json::<GaussianRational, i32>(&bad).is_err());
    }
}
