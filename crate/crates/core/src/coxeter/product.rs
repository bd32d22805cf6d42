//! Diagonal actions of products G_1 × … × G_m on ⊕E_α: both block constructions and
//! an ambient oracle for them.

use super::closed::{assemble_op, discr_of, konst, var};
use super::formulas::{self as fm, Slots};
use super::{monic, CoxeterSpec, Family, PushforwardModel};
use crate::dopcore::Operator;
use crate::error::{Error, Result};
use crate::exactmath::{elementary, frac, rat, sym_decompose_in, MultiPoly, Rational, Vars};

fn to_vars(v: &[String]) -> Vars {
    Vars::from(v.to_vec().into_boxed_slice())
}

/// Invariant names, weighted degrees, dimension of E_α and the scale c with
/// (quadratic form) = c·I_{α,1}.
struct Shape {
    names: Vec<String>,
    degrees: Vec<i64>,
    dim: usize,
    quad: Option<Rational>,
}

fn shape(alpha: usize, f: &CoxeterSpec) -> Result<Shape> {
    let nm = |k: usize| format!("x{alpha}_{k}");
    let n = f.rank;
    match f.family {
        Family::Trivial if n >= 1 => Ok(Shape { names: (1..=n).map(nm).collect(), degrees: vec![1; n], dim: n, quad: None }),
        Family::A if n >= 2 => Ok(Shape {
            names: (2..=n).map(nm).collect(),
            degrees: (2..=n as i64).collect(),
            dim: n - 1,
            quad: Some(rat(-2)),
        }),
        Family::BProj1 if n >= 1 => Ok(Shape {
            names: (1..=n).map(nm).collect(),
            degrees: (1..=n as i64).map(|a| 2 * a).collect(),
            dim: n,
            quad: Some(rat(1)),
        }),
        _ => Err(Error::Parameter(format!(
            "product factor {} rank {} is not one of T<k>, A<m>, B<m>",
            f.family, f.rank
        ))),
    }
}

pub(crate) fn check_preconditions(factors: &[CoxeterSpec], variant: u8) -> Result<()> {
    let shapes = factors.iter().enumerate().map(|(i, f)| shape(i + 1, f)).collect::<Result<Vec<_>>>()?;
    match variant {
        1 => {
            if shapes.is_empty() {
                return Err(Error::Parameter("product needs at least one factor".into()));
            }
            if let Some(i) = shapes.iter().position(|s| s.quad.is_none()) {
                return Err(Error::Parameter(format!(
                    "variant 1 needs a quadratic basic invariant in every factor; factor {} is trivial",
                    i + 1
                )));
            }
            Ok(())
        }
        2 => {
            let m = shapes.len();
            if m < 2 {
                return Err(Error::Parameter("variant 2 needs at least two factors".into()));
            }
            if shapes[0].quad.is_some() {
                return Err(Error::Parameter("variant 2 needs a trivial first factor".into()));
            }
            let last = &shapes[m - 1];
            if last.dim != 1 || last.quad.is_none() {
                return Err(Error::Parameter("variant 2 needs a one-dimensional last factor with a quadratic invariant".into()));
            }
            if shapes[1..m - 1].iter().any(|s| s.quad.is_none()) {
                return Err(Error::Parameter("variant 2 allows a trivial group only in the first factor".into()));
            }
            Ok(())
        }
        v => Err(Error::Parameter(format!("product variant must be 1 or 2, got {v}"))),
    }
}

/// (all invariant names, eliminated name, kept names).
fn layout(factors: &[CoxeterSpec], variant: u8) -> Result<(Vec<Shape>, String, Vec<String>)> {
    check_preconditions(factors, variant)?;
    let shapes: Vec<Shape> = factors.iter().enumerate().map(|(i, f)| shape(i + 1, f)).collect::<Result<_>>()?;
    let elim = if variant == 1 { shapes[0].names[0].clone() } else { shapes[shapes.len() - 1].names[0].clone() };
    let kept = shapes.iter().flat_map(|s| s.names.iter().cloned()).filter(|n| n != &elim).collect();
    Ok((shapes, elim, kept))
}

pub(crate) fn coords(factors: &[CoxeterSpec], variant: u8) -> Vec<String> {
    layout(factors, variant).map(|(_, _, k)| k).unwrap_or_default()
}

/// Value of the eliminated invariant from the sphere equation Σ (quadratic forms) = 1.
fn elimination(shapes: &[Shape], all: &Vars, variant: u8) -> MultiPoly {
    let mut rest = konst(all, rat(1));
    let (skip, c) = if variant == 1 { (0, shapes[0].quad.clone().unwrap()) } else { (shapes.len() - 1, shapes[shapes.len() - 1].quad.clone().unwrap()) };
    for (i, s) in shapes.iter().enumerate() {
        if i == skip {
            continue;
        }
        match &s.quad {
            Some(q) => rest = rest - var(all, &s.names[0]).scale(q),
            None => {
                for nm in &s.names {
                    rest = rest - var(all, nm).pow(2);
                }
            }
        }
    }
    rest.scale(&(rat(1) / c))
}

/// Euclidean Γ_E, Δ_E and boundary of one factor, over the common variable list.
fn euclid(f: &CoxeterSpec, s: &Shape, all: &Vars) -> Result<(Vec<Vec<MultiPoly>>, Vec<MultiPoly>, MultiPoly)> {
    let own = to_vars(&s.names);
    let n = f.rank as i64;
    let m = s.names.len();
    let lift = |p: MultiPoly| p.with_vars(all);
    match f.family {
        Family::Trivial => {
            let g = (0..m)
                .map(|i| (0..m).map(|j| konst(all, rat(i64::from(i == j)))).collect())
                .collect();
            Ok((g, vec![MultiPoly::zero_in(all.clone()); m], MultiPoly::one_in(all.clone())))
        }
        Family::A => {
            let mut vals = vec![konst(&own, rat(1)), konst(&own, rat(0))];
            vals.extend(s.names.iter().map(|x| var(&own, x)));
            let sl = Slots::new(&own, vals);
            let a = |i: usize| i as i64 + 2;
            let g = (0..m)
                .map(|i| (0..m).map(|j| lift(fm::hyper_a(n, a(i), a(j), &sl))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let d = (0..m).map(|i| lift(fm::delta_hyper_a(n, a(i), &sl))).collect::<Result<Vec<_>>>()?;
            let coeffs: Vec<MultiPoly> = (0..=n).map(|k| sl.s(k).clone()).collect();
            Ok((g, d, lift(discr_of(&own, &coeffs)?)?))
        }
        Family::BProj1 => {
            let mut vals = vec![konst(&own, rat(1))];
            vals.extend(s.names.iter().map(|x| var(&own, x)));
            let sl = Slots::new(&own, vals);
            let a = |i: usize| i as i64 + 1;
            let g = (0..m)
                .map(|i| (0..m).map(|j| lift(fm::euclid_b(n, a(i), a(j), &sl))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let d = (0..m).map(|i| lift(fm::delta_euclid_b(n, a(i), &sl))).collect::<Result<Vec<_>>>()?;
            let coeffs: Vec<MultiPoly> = (0..=n).map(|k| sl.s(k).clone()).collect();
            let bd = sl.s(n).clone() * discr_of(&own, &coeffs)?;
            Ok((g, d, lift(bd)?))
        }
        _ => unreachable!("rejected by shape"),
    }
}

fn spec_of(factors: &[CoxeterSpec], variant: u8) -> CoxeterSpec {
    CoxeterSpec::product(factors.to_vec(), variant)
}

/// Block cometric of the product construction (variant 1 or 2).
pub fn product_model(factors: &[CoxeterSpec], variant: u8) -> Result<PushforwardModel> {
    let (shapes, elim, kept) = layout(factors, variant)?;
    let all_names: Vec<String> = shapes.iter().flat_map(|s| s.names.iter().cloned()).collect();
    let all = to_vars(&all_names);
    let big_n: i64 = shapes.iter().map(|s| s.dim as i64).sum();
    let mut blocks = Vec::new();
    for (f, s) in factors.iter().zip(&shapes) {
        blocks.push(euclid(f, s, &all)?);
    }
    // flat index → (factor, local index)
    let index: Vec<(usize, usize)> =
        shapes.iter().enumerate().flat_map(|(a, s)| (0..s.names.len()).map(move |i| (a, i))).collect();
    let deg = |p: usize| shapes[index[p].0].degrees[index[p].1];
    let x = |p: usize| var(&all, &all_names[p]);
    let value = elimination(&shapes, &all, variant);
    let sub = |p: MultiPoly| p.subs(&[(elim.as_str(), value.clone())]);
    let kv = to_vars(&kept);
    let pos: Vec<usize> = kept.iter().map(|k| all_names.iter().position(|n| n == k).unwrap()).collect();
    let op = assemble_op(
        &kv,
        |i, j| {
            let (p, q) = (pos[i], pos[j]);
            let (a, ia) = index[p];
            let (b, ib) = index[q];
            let mut e = (x(p) * x(q)).scale(&rat(-deg(p) * deg(q)));
            if a == b {
                e = e + &blocks[a].0[ia][ib];
            }
            sub(e)
        },
        |i| {
            let p = pos[i];
            let (a, ia) = index[p];
            let d = deg(p);
            sub(blocks[a].1[ia].clone() - x(p).scale(&rat(d * (d + big_n - 2))))
        },
    );
    let mut bd = MultiPoly::one_in(all.clone());
    for b in &blocks {
        bd = bd * &b.2;
    }
    let boundary = monic(&sub(bd).with_vars(&kv)?);
    Ok(PushforwardModel::assemble(&spec_of(factors, variant), op, boundary))
}

pub(crate) fn product_boundary(factors: &[CoxeterSpec], variant: u8) -> Result<MultiPoly> {
    Ok(product_model(factors, variant)?.boundary)
}

/// Ambient computation on the unit sphere of ⊕E_α.
pub(crate) fn product_oracle(factors: &[CoxeterSpec], variant: u8) -> Result<PushforwardModel> {
    let (shapes, elim, kept) = layout(factors, variant)?;
    let big_n: i64 = shapes.iter().map(|s| s.dim as i64).sum();

    // ambient coordinates: y (linear, for T and A) or t = x² (for B)
    struct Amb {
        names: Vec<String>,
        squared: bool,
        hyper: Option<i64>,
    }
    let ambs: Vec<Amb> = factors
        .iter()
        .enumerate()
        .map(|(a, f)| {
            let a = a + 1;
            match f.family {
                Family::Trivial => Amb { names: (1..=f.rank).map(|i| format!("y{a}_{i}")).collect(), squared: false, hyper: None },
                Family::A => Amb {
                    names: (1..=f.rank).map(|i| format!("y{a}_{i}")).collect(),
                    squared: false,
                    hyper: Some(f.rank as i64),
                },
                _ => Amb { names: (1..=f.rank).map(|i| format!("t{a}_{i}")).collect(), squared: true, hyper: None },
            }
        })
        .collect();
    let amb_names: Vec<String> = ambs.iter().flat_map(|a| a.names.iter().cloned()).collect();
    let av = to_vars(&amb_names);
    let owner: Vec<usize> = ambs.iter().enumerate().flat_map(|(i, a)| a.names.iter().map(move |_| i)).collect();
    let v = |p: usize| var(&av, &amb_names[p]);
    let euler = |p: usize| if ambs[owner[p]].squared { v(p).scale(&rat(2)) } else { v(p) };
    let op = assemble_op(
        &av,
        |i, j| {
            let mut e = -(euler(i) * euler(j));
            if owner[i] == owner[j] {
                let am = &ambs[owner[i]];
                if am.squared {
                    if i == j {
                        e = e + v(i).scale(&rat(4));
                    }
                } else {
                    let mut c = rat(i64::from(i == j));
                    if let Some(n) = am.hyper {
                        c -= &frac(1, n);
                    }
                    e = e + konst(&av, c);
                }
            }
            e
        },
        |i| {
            // Δ_S = Δ_E − (r∂_r)² − (N−2)r∂_r
            if ambs[owner[i]].squared {
                konst(&av, rat(2)) - v(i).scale(&rat(4)) - v(i).scale(&rat(2 * (big_n - 2)))
            } else {
                -v(i) - v(i).scale(&rat(big_n - 2))
            }
        },
    );

    // invariants, in the order of the product layout
    let mut inv = Vec::new();
    for (a, am) in ambs.iter().enumerate() {
        let idx: Vec<usize> = am.names.iter().map(|n| amb_names.iter().position(|m| m == n).unwrap()).collect();
        match factors[a].family {
            Family::Trivial => inv.extend(idx.iter().map(|&p| v(p))),
            Family::A => inv.extend((2..=factors[a].rank).map(|k| elementary(&av, &idx, k))),
            _ => inv.extend((1..=factors[a].rank).map(|k| elementary(&av, &idx, k))),
        }
    }
    let all_names: Vec<String> = shapes.iter().flat_map(|s| s.names.iter().cloned()).collect();
    let all = to_vars(&all_names);
    let value = elimination(&shapes, &all, variant);
    let kv = to_vars(&kept);

    let reduce = |f: &MultiPoly| -> Result<MultiPoly> {
        let mut cur = f.clone();
        let mut images: Vec<(String, MultiPoly)> = Vec::new();
        for (a, am) in ambs.iter().enumerate() {
            let alpha = a + 1;
            match factors[a].family {
                Family::Trivial => {
                    for (i, nm) in am.names.iter().enumerate() {
                        images.push((nm.clone(), var(&all, &shapes[a].names[i])));
                    }
                }
                fam => {
                    let en: Vec<String> = (1..=am.names.len()).map(|k| format!("E{alpha}_{k}")).collect();
                    let t: Vec<&str> = am.names.iter().map(String::as_str).collect();
                    let e: Vec<&str> = en.iter().map(String::as_str).collect();
                    cur = sym_decompose_in(&cur, &t, &e)
                        .map_err(|err| Error::Consistency(format!("symmetric decomposition: {err}")))?;
                    for (k, nm) in en.iter().enumerate() {
                        let img = if fam == Family::A {
                            if k == 0 {
                                konst(&all, rat(0))
                            } else {
                                var(&all, &format!("x{alpha}_{}", k + 1))
                            }
                        } else {
                            var(&all, &format!("x{alpha}_{}", k + 1))
                        };
                        images.push((nm.clone(), img));
                    }
                }
            }
        }
        let imgs = cur
            .vars()
            .iter()
            .map(|nm| {
                images
                    .iter()
                    .find(|(n, _)| n == nm)
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| Error::Consistency(format!("no image for {nm}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cur.compose(&imgs).with_vars(&all)?.subs(&[(elim.as_str(), value.clone())]).with_vars(&kv)
    };

    let pos: Vec<usize> = kept.iter().map(|k| all_names.iter().position(|n| n == k).unwrap()).collect();
    let m = kept.len();
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            entries.push(reduce(&op.carre_du_champ(&inv[pos[i]], &inv[pos[j]]))?);
        }
    }
    let b = (0..m).map(|i| reduce(&op.apply(&inv[pos[i]]))).collect::<Result<Vec<_>>>()?;
    let g = crate::exactmath::PolyMatrix::new(m, m, entries)?.with_vars(&kv)?;
    let boundary = product_boundary(factors, variant)?;
    Ok(PushforwardModel::assemble(&spec_of(factors, variant), Operator::new(kv, g, b), boundary))
}
