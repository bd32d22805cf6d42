use crate::dopcore::Cometric;
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

use crate::exactmath::{frac, parse_poly, rat, vars_of, Field, GaussianRational, LaurentPoly, MultiPoly, PolyMatrix, Rational};
use crate::surfaces::CurveBranch;

use super::polys::{p, xyz};
use super::{CatalogCase, Params};

/// Symmetric 3×3 matrix from its upper triangle (11, 12, 13, 22, 23, 33).
pub(crate) fn sym3(upper: [&str; 6]) -> PolyMatrix {
    PolyMatrix::symmetric_from_upper(3, upper.iter().map(|s| p(s)).collect()).unwrap()
}

pub(crate) fn combine(parts: &[(Rational, PolyMatrix)]) -> PolyMatrix {
    let mut acc = PolyMatrix::from_fn(3, 3, |_, _| MultiPoly::zero_in(xyz()));
    for (c, m) in parts {
        acc = acc.add(&m.scale(&MultiPoly::constant_in(xyz(), c.clone())));
    }
    acc
}

/// The six basis matrices of the twisted-cubic family, coefficients a…f.
pub fn lemma43_basis() -> [PolyMatrix; 6] {
    [
        sym3(["0", "0", "0", "2(x^2-y)", "3(xy-z)", "18(y^2-xz)"]),
        sym3(["1", "2x", "3y", "4x^2", "6xy", "9y^2"]),
        sym3(["x", "2x^2", "3xy", "5xy-z", "6y^2", "9yz"]),
        sym3(["x", "2y", "3z", "3xy+z", "6xz", "9yz"]),
        sym3(["x^2", "2xy", "3xz", "4y^2", "6yz", "9z^2"]),
        sym3(["2(x^2-y)", "xy-z", "0", "2(y^2-xz)", "0", "0"]),
    ]
}

/// The twisted-cubic family with a…f left as variables (order x, y, z, a, …, f).
pub fn lemma43_symbolic() -> PolyMatrix {
    let vars = vars_of(&["x", "y", "z", "a", "b", "c", "d", "e", "f"]);
    let mut acc = PolyMatrix::from_fn(3, 3, |_, _| MultiPoly::zero_in(vars.clone()));
    for (m, name) in lemma43_basis().iter().zip(["a", "b", "c", "d", "e", "f"]) {
        let c = MultiPoly::var_in(vars.clone(), name).unwrap();
        acc = acc.add(&m.with_vars(&vars).unwrap().scale(&c));
    }
    acc
}

pub fn lemma43(params: &[Rational; 6]) -> PolyMatrix {
    let parts: Vec<(Rational, PolyMatrix)> = params.iter().cloned().zip(lemma43_basis()).collect();
    combine(&parts)
}

pub fn lemma44_basis() -> [PolyMatrix; 2] {
    [
        sym3(["0", "0", "0", "2(1-xy)", "3(y-xz)", "18(y^2-z)"]),
        sym3(["x^2", "-xy", "-2xz", "y^2", "2yz", "4z^2"]),
    ]
}

pub fn lemma45_basis() -> [PolyMatrix; 3] {
    [
        sym3(["4x", "6y", "8z", "3(9x^2+z)", "36xy", "144(y^2-xz)"]),
        sym3(["4y", "2(9x^2+z)", "24xy", "36xy", "36y^2", "48yz"]),
        sym3(["4x^2", "6xy", "8xz", "9y^2", "12yz", "16z^2"]),
    ]
}

/// Matrix pencil M₀ + ε·M₁ for the three ε-families.
pub fn eps_family(which: u8, eps: i64) -> PolyMatrix {
    let (m0, m1) = match which {
        11 => (
            sym3(["x^2", "3xy - 12", "4xz-4y", "9y^2 - 12z", "12yz", "16z^2"]),
            sym3(["-4", "0", "0", "72 - 24xy", "24y - 36xz", "32y^2 - 144z"]),
        ),
        12 => (
            sym3(["4y - 9x^2", "2z - 12xy", "-15xz", "-16y^2", "-20yz", "-25z^2"]),
            sym3(["24", "32x", "40y", "16(6x^2 - 5y)", "120(xy - z)", "400(y^2 - xz)"]),
        ),
        13 => (
            sym3(["3x^2 - 8y", "2xy - 12z", "xz", "4y^2 - 8xz", "2yz", "3z^2"]),
            sym3(["0", "0", "16", "16", "12x", "8y"]),
        ),
        _ => unreachable!("no such family"),
    };
    combine(&[(rat(1), m0), (rat(eps), m1)])
}

/// The cometric of the four-cusped sextic.
pub fn sextic_cometric() -> PolyMatrix {
    sym3([
        "8 + y^2 + 4z - 2x^2",
        "-3xy",
        "12x - 2xz",
        "8 - 4z + x^2 - 2y^2",
        "-12y - 2yz",
        "16 + 8x^2 + 8y^2 - 4z^2",
    ])
}

fn laurent(src: &str) -> LaurentPoly {
    // Negative powers are written as powers of w = t⁻¹.
    let q = parse_poly(src, &["t", "w"]).expect("well-formed");
    let terms: Vec<(crate::exactmath::Exps<i32>, Rational)> = q
        .terms()
        .map(|(e, c)| (smallvec::smallvec![e[0] as i32 - e[1] as i32], c.clone()))
        .collect();
    let mut acc = LaurentPoly::zero_in(vars_of(&["t"]));
    for (e, c) in terms {
        acc = acc + LaurentPoly::monomial(vars_of(&["t"]), e, c);
    }
    acc
}

fn branch(c: [&str; 3]) -> CurveBranch {
    CurveBranch::new([laurent(c[0]), laurent(c[1]), laurent(c[2])]).expect("non-constant")
}

/// The printed parametrization of a catalog curve.
///
/// The four-cusped sextic has no rational Laurent form; see [`sextic_branch`].
pub fn curve(case: CatalogCase) -> Result<CurveBranch> {
    use CatalogCase::*;
    Ok(match case.curve_family() {
        Some(I1) => branch(["t", "t^2", "t^3"]),
        Some(Ii) => branch(["w", "t", "t^2"]),
        Some(Iii1) => branch(["t^2", "2t^3", "3t^4"]),
        Some(Iv) => branch(["w + t", "3t - t^3", "2t^2 - t^4"]),
        Some(IvP) => branch(["w - t", "3t + t^3", "2t^2 + t^4"]),
        Some(V) => branch(["3t - t^3", "4t^2 - 2t^4", "5t^3 - 3t^5"]),
        Some(VP) => branch(["3t + t^3", "4t^2 + 2t^4", "5t^3 + 3t^5"]),
        Some(ViP) => branch(["3w + t^3", "3w^2 + 3t^2", "w^3 + 3t"]),
        Some(ViPP) => branch(["3w - t^3", "3w^2 - 3t^2", "w^3 - 3t"]),
        Some(Vi) => return Err(Error::Parameter("the sextic is available only over Q(i); use sextic_branch".into())),
        _ => return Err(Error::Parameter(format!("case {} has no curve", case.id()))),
    })
}

/// The curve in the coordinates of its cometric family: the quintic cases are
/// rescaled by (x, y, z) ↦ (x, 3y/2, 2z).
pub fn family_curve(case: CatalogCase) -> Result<CurveBranch> {
    let c = curve(case)?;
    match case.curve_family() {
        Some(CatalogCase::V) | Some(CatalogCase::VP) => {
            let a = vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), frac(3, 2), rat(0)],
                vec![rat(0), rat(0), rat(2)],
            ];
            c.affine_image(&a, &[rat(0), rat(0), rat(0)])
        }
        _ => Ok(c),
    }
}

/// θ ↦ (3cosθ + cos3θ, 3sinθ − sin3θ, 6cos2θ) written in t = e^{iθ}.
pub fn sextic_branch() -> CurveBranch<GaussianRational> {
    let g = |re: Rational, im: Rational| GaussianRational::new(re, im);
    let half = frac(1, 2);
    let z0 = rat(0);
    let t = |k: i32, c: GaussianRational| LaurentPoly::monomial(vars_of(&["t"]), smallvec::smallvec![k], c);
    let x = t(1, g(frac(3, 2), z0.clone()))
        + t(-1, g(frac(3, 2), z0.clone()))
        + t(3, g(half.clone(), z0.clone()))
        + t(-3, g(half.clone(), z0.clone()));
    let y = t(1, g(z0.clone(), frac(-3, 2)))
        + t(-1, g(z0.clone(), frac(3, 2)))
        + t(3, g(z0.clone(), half.clone()))
        + t(-3, g(z0.clone(), -half));
    let z = t(2, g(rat(3), z0.clone())) + t(-2, g(rat(3), z0));
    CurveBranch::new([x, y, z]).expect("non-constant")
}

pub fn to_gaussian(m: &PolyMatrix) -> PolyMatrix<GaussianRational> {
    PolyMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).map_coeffs(|c| GaussianRational::from_rational(c.clone())))
}

fn get(p: &Params, name: &str) -> Rational {
    p.get(name).cloned().expect("bound parameters")
}

fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn violated(case: CatalogCase, what: &str) -> Error {
    Error::Parameter(format!("case {}: constraint {what} violated", case.id()))
}

fn unit_sign(case: CatalogCase, v: &Rational, what: &str) -> Result<()> {
    if v.abs() != rat(1) {
        return Err(violated(case, what));
    }
    Ok(())
}

/// (a, …, f) of a twisted-cubic case.
pub fn lemma43_params(case: CatalogCase, given: &Params) -> Result<[Rational; 6]> {
    use CatalogCase::*;
    let p = case.bind(given)?;
    let r = |v: [i64; 6]| v.map(rat);
    Ok(match case {
        I1 => {
            let [a, b, c, d, e, f] = ["a", "b", "c", "d", "e", "f"].map(|n| get(&p, n));
            if all_zero(&[a.clone(), c.clone() - &d, f.clone()]) {
                return Err(violated(case, "(a,c-d,f)≠(0,0,0)"));
            }
            if all_zero(&[b.clone(), c.clone() + &d, e.clone(), a.clone() * &f - d.clone() * &d]) {
                return Err(violated(case, "(b,c+d,e,af-d^2)≠(0,0,0,0)"));
            }
            [a, b, c, d, e, f]
        }
        I2 => {
            let [a, c, e] = ["a", "c", "e"].map(|n| get(&p, n));
            if all_zero(&[c.clone(), a.clone() * &e]) {
                return Err(violated(case, "(c,ae)≠(0,0)"));
            }
            [a, rat(0), c, rat(0), e, rat(0)]
        }
        I3 => {
            let [d, e, f] = ["d", "e", "f"].map(|n| get(&p, n));
            if all_zero(&[d.clone(), e.clone() * &f]) {
                return Err(violated(case, "(d,ef)≠(0,0)"));
            }
            [rat(0), rat(0), rat(0), d, e, f]
        }
        I4 | Thm51I4 => r([0, 0, 0, 1, -1, 0]),
        I5 | Thm51I5 => r([1, 1, 0, 0, -1, -1]),
        I6 | Thm51I6 => {
            let (alpha, e) = (get(&p, "alpha"), get(&p, "e"));
            if alpha.is_zero() {
                return Err(violated(case, "α≠0"));
            }
            unit_sign(case, &e, "e=±1")?;
            [alpha * rat(2), rat(1), rat(0), rat(0), e, rat(0)]
        }
        I7 => r([1, 0, 1, 1, 0, 0]),
        Thm52I1 => [get(&p, "alpha") * rat(2), rat(1), rat(0), rat(0), rat(0), rat(0)],
        Thm52I3 => r([0, 0, 0, 1, 0, 0]),
        _ => return Err(Error::Parameter(format!("case {} is not on the twisted cubic", case.id()))),
    })
}

/// (a, b, c) of a cuspidal-quartic case.
pub fn lemma45_params(case: CatalogCase, given: &Params) -> Result<[Rational; 3]> {
    use CatalogCase::*;
    let p = case.bind(given)?;
    Ok(match case {
        Iii1 => {
            let [a, b, c] = ["a", "b", "c"].map(|n| get(&p, n));
            if all_zero(&[a.clone(), b.clone()]) {
                return Err(violated(case, "(a,b)≠(0,0)"));
            }
            [a, b, c]
        }
        Iii2 | Thm51Iii2 => [rat(3), rat(1), rat(-1)],
        Iii3 => {
            let c = get(&p, "c");
            unit_sign(case, &c, "c=±1")?;
            [rat(1), rat(0), c]
        }
        Thm51Iii3 => [rat(1), rat(0), rat(-1)],
        Thm52Iii1 => [rat(1), rat(0), rat(0)],
        _ => return Err(Error::Parameter(format!("case {} is not on the cuspidal quartic", case.id()))),
    })
}

/// The printed cometric of a case at the given parameters.
pub fn cometric_family(case: CatalogCase, given: &Params) -> Result<Cometric> {
    use CatalogCase::*;
    let m = match case.curve_family() {
        Some(I1) => lemma43(&lemma43_params(case, given)?),
        Some(Iii1) => {
            let abc = lemma45_params(case, given)?;
            let parts: Vec<(Rational, PolyMatrix)> = abc.into_iter().zip(lemma45_basis()).collect();
            combine(&parts)
        }
        Some(Ii) => {
            let p = case.bind(given)?;
            let (a, b) = (get(&p, "a"), get(&p, "b"));
            if (a.clone() * &b).is_zero() {
                return Err(violated(case, "ab≠0"));
            }
            let [ma, mb] = lemma44_basis();
            combine(&[(a, ma), (b, mb)])
        }
        _ => {
            case.bind(given)?;
            match case.family_case() {
                Iv => eps_family(11, 1),
                IvP => eps_family(11, -1),
                V => eps_family(12, 1),
                VP => eps_family(12, -1),
                Vi => sextic_cometric(),
                ViP => eps_family(13, -1),
                ViPP => eps_family(13, 1),
                _ => unreachable!("every case has a family"),
            }
        }
    };
    Ok(Cometric::new(xyz(), m).expect("catalog matrices are symmetric 3×3"))
}
