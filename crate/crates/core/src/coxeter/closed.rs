use rayon::prelude::*;

use super::formulas::{self as fm, ReIm, Slots};
use super::{monic, product, CoxeterSpec, Family, PushforwardModel};
use crate::dopcore::Operator;
use crate::error::{Error, Result};
use crate::exactmath::{discriminant, frac, rat, Field, GaussianRational, MultiPoly, PolyMatrix, Rational, Vars};

pub(crate) fn var(vars: &Vars, name: &str) -> MultiPoly {
    MultiPoly::var_in(vars.clone(), name).expect("known coordinate")
}

pub(crate) fn konst(vars: &Vars, c: Rational) -> MultiPoly {
    MultiPoly::constant_in(vars.clone(), c)
}

/// Build an operator from entry and drift closures, entries computed in parallel.
pub(crate) fn assemble_op(
    vars: &Vars,
    g: impl Fn(usize, usize) -> MultiPoly + Sync,
    b: impl Fn(usize) -> MultiPoly + Sync,
) -> Operator {
    let n = vars.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let upper: Vec<MultiPoly> = pairs.par_iter().map(|&(i, j)| g(i, j).with_vars(vars).expect("entry in target coords")).collect();
    let mut full = vec![MultiPoly::zero_in(vars.clone()); n * n];
    for (&(i, j), e) in pairs.iter().zip(upper) {
        full[i * n + j] = e.clone();
        full[j * n + i] = e;
    }
    let g = PolyMatrix::new(n, n, full).expect("square").with_vars(vars).expect("target coords");
    let b: Vec<MultiPoly> = (0..n).into_par_iter().map(|i| b(i).with_vars(vars).expect("drift in target coords")).collect();
    Operator::new(vars.clone(), g, b)
}

/// s-slot table [head..., X_lo, ..., X_hi].
fn slots_with(vars: &Vars, head: Vec<Rational>, lo: usize, hi: usize) -> Slots {
    let mut vals: Vec<MultiPoly> = head.into_iter().map(|c| konst(vars, c)).collect();
    for k in lo..=hi {
        vals.push(var(vars, &format!("X{k}")));
    }
    Slots::new(vars, vals)
}

/// Coordinates of the Ã quotient: (name, is_imaginary_part, index a).
pub(crate) fn aaffine_coords(n: usize) -> Vec<(String, bool, usize)> {
    let mut out = Vec::new();
    for a in 1..=n / 2 {
        out.push((format!("X{a}"), false, a));
        if 2 * a != n {
            out.push((format!("Y{a}"), true, a));
        }
    }
    out
}

/// Real/imaginary slot tables for Ã: s_0 = s_n = 1, s_{n−k} = conj(s_k).
pub(crate) fn aaffine_reim(vars: &Vars, n: usize) -> ReIm {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for k in 0..=n {
        let j = k.min(n - k);
        if j == 0 {
            re.push(konst(vars, rat(1)));
            im.push(konst(vars, rat(0)));
            continue;
        }
        re.push(var(vars, &format!("X{j}")));
        if 2 * j == n {
            im.push(konst(vars, rat(0)));
        } else {
            let y = var(vars, &format!("Y{j}"));
            im.push(if k > n / 2 && 2 * k != n { -y } else { y });
        }
    }
    ReIm { re: Slots::new(vars, re), im: Slots::new(vars, im) }
}

/// The model written from the printed formulas.
pub fn closed_form(spec: &CoxeterSpec) -> Result<PushforwardModel> {
    spec.validate()?;
    if spec.family == Family::Product {
        return product::product_model(&spec.factors, spec.variant.unwrap_or(1));
    }
    let op = closed_operator(spec)?;
    Ok(PushforwardModel::assemble(spec, op, boundary_poly(spec)?))
}

fn closed_operator(spec: &CoxeterSpec) -> Result<Operator> {
    let vars = spec.vars();
    let n = spec.rank as i64;
    let nu = spec.rank;
    let op = match spec.family {
        Family::A => {
            let s = slots_with(&vars, vec![rat(1), rat(0), frac(-1, 2)], 3, nu);
            let a = |i: usize| i as i64 + 3;
            assemble_op(&vars, |i, j| fm::sphere_a(n, a(i), a(j), &s), |i| fm::delta_sphere_a(n, a(i), &s))
        }
        Family::BProj1 => {
            let s = slots_with(&vars, vec![rat(1), rat(1)], 2, nu);
            let a = |i: usize| i as i64 + 2;
            assemble_op(&vars, |i, j| fm::sphere_b(n, a(i), a(j), &s), |i| fm::delta_sphere_b(n, a(i), &s))
        }
        Family::BProj2 => {
            let s = slots_with(&vars, vec![rat(1), rat(0)], 2, nu);
            let a = |i: usize| i as i64 + 2;
            assemble_op(&vars, |i, j| fm::proj2_b(n, a(i), a(j), &s), |i| fm::delta_proj2_b(n, a(i), &s))
        }
        Family::D => {
            let z = var(&vars, "Z");
            let mut vals: Vec<MultiPoly> = vec![konst(&vars, rat(1)), konst(&vars, rat(1))];
            for k in 2..nu {
                vals.push(var(&vars, &format!("X{k}")));
            }
            vals.push(&z * &z);
            let s = Slots::new(&vars, vals);
            let last = nu - 2;
            let a = |i: usize| i as i64 + 2;
            assemble_op(
                &vars,
                |i, j| match (i == last, j == last) {
                    (false, false) => fm::sphere_b(n, a(i), a(j), &s),
                    (true, true) => (&z * &z).scale(&rat(-n * n)) + s.s(n - 1),
                    (false, true) | (true, false) => {
                        let k = a(i.min(j));
                        (s.s(k).scale(&rat(-2 * k * n)) + s.s(k - 1).scale(&rat(2 * (n - k + 1)))) * &z
                    }
                },
                |i| {
                    if i == last {
                        z.scale(&rat(-2 * n * (n - 1)))
                    } else {
                        fm::delta_sphere_b(n, a(i), &s)
                    }
                },
            )
        }
        Family::A1A => match spec.variant {
            Some(1) => {
                let s = slots_with(&vars, vec![rat(1), rat(0)], 2, nu);
                let a = |i: usize| i as i64 + 2;
                assemble_op(
                    &vars,
                    |i, j| fm::sphere_a(n, a(i), a(j), &s),
                    |i| fm::delta_sphere_a(n, a(i), &s) - s.s(a(i)).scale(&rat(a(i))),
                )
            }
            Some(2) => {
                let s = slots_with(&vars, vec![rat(1), rat(0)], 2, nu);
                let x1 = var(&vars, "X1");
                let a = |i: usize| i as i64 + 1;
                assemble_op(
                    &vars,
                    |i, j| match (i, j) {
                        (0, 0) => konst(&vars, rat(1)) - &x1 * &x1,
                        (0, k) | (k, 0) => (&x1 * s.s(a(k))).scale(&rat(-a(k))),
                        _ => fm::sphere_a(n, a(i), a(j), &s),
                    },
                    |i| {
                        if i == 0 {
                            x1.scale(&rat(-n))
                        } else {
                            fm::delta_sphere_a(n, a(i), &s) - s.s(a(i)).scale(&rat(2 * a(i)))
                        }
                    },
                )
            }
            _ => {
                let s = slots_with(&vars, vec![rat(1)], 1, nu);
                let a = |i: usize| i as i64 + 1;
                assemble_op(&vars, |i, j| fm::direct_a(n, a(i), a(j), &s), |i| fm::delta_direct_a(n, a(i), &s))
            }
        },
        Family::A1B => {
            let s = slots_with(&vars, vec![rat(1)], 1, nu);
            let a = |i: usize| i as i64 + 1;
            assemble_op(
                &vars,
                |i, j| fm::sphere_b(n, a(i), a(j), &s),
                |i| fm::delta_sphere_b(n, a(i), &s) - s.s(a(i)).scale(&rat(2 * a(i))),
            )
        }
        Family::Caffine => {
            let s = slots_with(&vars, vec![rat(1)], 1, nu);
            let a = |i: usize| i as i64 + 1;
            assemble_op(&vars, |i, j| fm::torus_c(n, a(i), a(j), &s), |i| fm::delta_torus_c(a(i), &s))
        }
        Family::BaffinePartial => {
            let s = baffine_slots(&vars, nu);
            let z = var(&vars, "Z");
            let last = nu - 1;
            let a = |i: usize| i as i64 + 1;
            assemble_op(
                &vars,
                |i, j| match (i == last, j == last) {
                    (false, false) => fm::torus_c(n, a(i), a(j), &s),
                    (true, true) => {
                        // 4Γ(ŝ,ŝ) = 2P'(1) − nP(1)
                        let mut acc = (&z * &z).scale(&rat(-n));
                        for k in 0..n {
                            acc = acc + s.s(k).scale(&rat(2 * (n - k)));
                        }
                        acc.scale(&frac(1, 4))
                    }
                    _ => {
                        let k = a(i.min(j));
                        ((s.s(k - 1).scale(&rat(n - k + 1)) - s.s(k).scale(&rat(k))) * &z).scale(&frac(1, 2))
                    }
                },
                |i| {
                    if i == last {
                        z.scale(&frac(-n, 4))
                    } else {
                        fm::delta_torus_c(a(i), &s)
                    }
                },
            )
        }
        Family::Aaffine => {
            let coords = aaffine_coords(nu);
            let ri = aaffine_reim(&vars, nu);
            assemble_op(
                &vars,
                |i, j| {
                    let (_, im_i, a) = coords[i];
                    let (_, im_j, b) = coords[j];
                    // order so that the first index is the smaller one
                    let ((im_p, p), (im_q, q)) = if a <= b { ((im_i, a), (im_j, b)) } else { ((im_j, b), (im_i, a)) };
                    let [ba, bb, bc, bd] = ri.abcd(n, p as i64, q as i64);
                    let two = match (im_p, im_q) {
                        (false, false) => ba + bc,
                        (false, true) => bb - bd,
                        (true, false) => bb + bd,
                        (true, true) => bc - ba,
                    };
                    two.scale(&frac(1, 2))
                },
                |i| {
                    let (ref name, _, a) = coords[i];
                    let a = a as i64;
                    var(&vars, name).scale(&frac(a * (a - n), n))
                },
            )
        }
        Family::Product | Family::Trivial => unreachable!("handled by validate / product"),
    };
    Ok(op)
}

/// s_0..s_n for B̃: s_k = X_k (k < n) and s_n = Z² − Σ_{k<n} s_k.
pub(crate) fn baffine_slots(vars: &Vars, n: usize) -> Slots {
    let mut vals = vec![konst(vars, rat(1))];
    for k in 1..n {
        vals.push(var(vars, &format!("X{k}")));
    }
    let z = var(vars, "Z");
    let mut sn = &z * &z;
    for v in &vals {
        sn = sn - v;
    }
    vals.push(sn);
    Slots::new(vars, vals)
}

/// discr_u(Σ c_k u^{n−k}) in the target coordinates.
pub(crate) fn discr_of<F: Field>(vars: &Vars, coeffs: &[MultiPoly<F>]) -> Result<MultiPoly<F>> {
    let mut names: Vec<String> = vars.to_vec();
    names.push("u".into());
    let uvars = Vars::from(names.into_boxed_slice());
    let u = MultiPoly::<F>::var_in(uvars.clone(), "u")?;
    let n = coeffs.len() - 1;
    let mut p = MultiPoly::zero_in(uvars.clone());
    for (k, c) in coeffs.iter().enumerate() {
        p = p + c.with_vars(&uvars)? * u.pow((n - k) as u32);
    }
    if n < 2 {
        return Ok(MultiPoly::one_in(vars.clone()));
    }
    discriminant(&p, "u")?.with_vars(vars)
}

fn eval_at<F: Field>(vars: &Vars, coeffs: &[MultiPoly<F>], u: i64) -> MultiPoly<F> {
    let n = coeffs.len() - 1;
    let mut acc = MultiPoly::zero_in(vars.clone());
    for (k, c) in coeffs.iter().enumerate() {
        acc = acc + c.scale(&F::from_i64(u.pow((n - k) as u32)));
    }
    acc
}

/// The boundary hypersurface of the image, leading coefficient one.
pub fn boundary_poly(spec: &CoxeterSpec) -> Result<MultiPoly> {
    spec.validate()?;
    let vars = spec.vars();
    let nu = spec.rank;
    let xv = |k: usize| var(&vars, &format!("X{k}"));
    let k = |c: Rational| konst(&vars, c);
    let coeffs = |head: Vec<Rational>, lo: usize, hi: usize| -> Vec<MultiPoly> {
        let mut v: Vec<MultiPoly> = head.into_iter().map(|c| konst(&vars, c)).collect();
        v.extend((lo..=hi).map(xv));
        v
    };
    let f = match spec.family {
        Family::A => discr_of(&vars, &coeffs(vec![rat(1), rat(0), frac(-1, 2)], 3, nu))?,
        Family::BProj1 => xv(nu) * discr_of(&vars, &coeffs(vec![rat(1), rat(1)], 2, nu))?,
        Family::BProj2 => {
            let c = coeffs(vec![rat(1), rat(0)], 2, nu);
            eval_at(&vars, &c, 1) * discr_of(&vars, &c)?
        }
        Family::D => {
            let z = var(&vars, "Z");
            let mut c = coeffs(vec![rat(1), rat(1)], 2, nu - 1);
            c.push(&z * &z);
            discr_of(&vars, &c)?
        }
        Family::A1A => {
            let x1 = || xv(1);
            match spec.variant {
                Some(1) => (k(rat(1)) + xv(2).scale(&rat(2))) * discr_of(&vars, &coeffs(vec![rat(1), rat(0)], 2, nu))?,
                Some(2) => {
                    (k(rat(1)) + xv(2).scale(&rat(2)) - x1() * x1())
                        * discr_of(&vars, &coeffs(vec![rat(1), rat(0)], 2, nu))?
                }
                _ => {
                    let x2 = if nu >= 2 { xv(2) } else { k(rat(0)) };
                    (k(rat(1)) + x2.scale(&rat(2)) - x1() * x1()) * discr_of(&vars, &coeffs(vec![rat(1)], 1, nu))?
                }
            }
        }
        Family::A1B => xv(nu) * (k(rat(1)) - xv(1)) * discr_of(&vars, &coeffs(vec![rat(1)], 1, nu))?,
        Family::Caffine => {
            let c = coeffs(vec![rat(1)], 1, nu);
            discr_of(&vars, &c)? * eval_at(&vars, &c, 1) * eval_at(&vars, &c, -1)
        }
        Family::BaffinePartial => {
            let s = baffine_slots(&vars, nu);
            let c: Vec<MultiPoly> = (0..=nu as i64).map(|j| s.s(j).clone()).collect();
            discr_of(&vars, &c)? * eval_at(&vars, &c, -1)
        }
        Family::Aaffine => {
            let ri = aaffine_reim(&vars, nu);
            let c: Vec<MultiPoly<GaussianRational>> = (0..=nu as i64)
                .map(|j| {
                    let re = ri.re.s(j).map_coeffs(|x| GaussianRational::from_rational(x.clone()));
                    let im = ri.im.s(j).map_coeffs(|x| GaussianRational::new(rat(0), x.clone()));
                    re + im
                })
                .collect();
            let d = discr_of(&vars, &c)?;
            d.try_map_coeffs(|z| z.to_rational())
                .ok_or_else(|| Error::Consistency("Ã discriminant is not real".into()))?
        }
        Family::Product => return product::product_boundary(&spec.factors, spec.variant.unwrap_or(1)),
        Family::Trivial => unreachable!("rejected by validate"),
    };
    Ok(monic(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::vars_of;

    /// Real and imaginary parts of a quadratic form in symbolic S_0..S_n.
    fn split(p: &MultiPoly, ri: &ReIm) -> (MultiPoly, MultiPoly) {
        let mut re = ri.re.zero();
        let mut im = ri.re.zero();
        for (e, c) in p.terms() {
            let idx: Vec<i64> = e.iter().enumerate().flat_map(|(k, &m)| std::iter::repeat(k as i64).take(m as usize)).collect();
            assert_eq!(idx.len(), 2, "quadratic in the slots");
            let (x1, y1) = (ri.re.s(idx[0]), ri.im.s(idx[0]));
            let (x2, y2) = (ri.re.s(idx[1]), ri.im.s(idx[1]));
            re = re + (x1 * x2 - y1 * y2).scale(c);
            im = im + (x1 * y2 + y1 * x2).scale(c);
        }
        (re, im)
    }

    #[test]
    fn aaffine_blocks_are_real_and_imaginary_parts() {
        for n in 3..=6usize {
            let spec = CoxeterSpec::new(Family::Aaffine, n);
            let vars = spec.vars();
            let ri = aaffine_reim(&vars, n);
            let names: Vec<String> = (0..=n).map(|k| format!("S{k}")).collect();
            let sv = vars_of(&names.iter().map(String::as_str).collect::<Vec<_>>());
            let sym = Slots::new(&sv, (0..=n).map(|k| var(&sv, &names[k])).collect());
            let n = n as i64;
            for a in 1..=n / 2 {
                for b in a..=n / 2 {
                    let [ba, bb, bc, bd] = ri.abcd(n, a, b);
                    let (re, im) = split(&fm::torus_a(n, a, b, &sym), &ri);
                    assert_eq!((re, im), (ba, bb), "Γ(s_a,s_b) n={n} a={a} b={b}");
                    let (re, im) = split(&fm::torus_a(n, a, n - b, &sym), &ri);
                    assert_eq!((re, im), (bc, bd), "Γ(s_a,s̄_b) n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn baffine_last_slot_closes_p_at_one() {
        let spec = CoxeterSpec::new(Family::BaffinePartial, 4);
        let vars = spec.vars();
        let s = baffine_slots(&vars, 4);
        let total = (0..=4).fold(MultiPoly::zero_in(vars.clone()), |acc, k| acc + s.s(k));
        let z = var(&vars, "Z");
        assert_eq!(total, &z * &z);
    }

    #[test]
    fn discr_of_linear_is_one() {
        let v = vars_of(&["X1"]);
        let one = discr_of(&v, &[konst(&v, rat(1)), var(&v, "X1")]).unwrap();
        assert_eq!(one, MultiPoly::one_in(v));
    }
}
