use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::families::{
    cometric_family, family_curve, lemma43_params, lemma45_params, sextic_branch, to_gaussian,
};
use super::polys::{cubic_p, gamma1_lemma45, gamma2_lemma43, gamma4, gamma5, lemma44_quartic, p, xyz};
use super::{CatalogCase, Params};
use crate::dopcore::{Cometric, DensitySpec, DopModel};
use crate::error::{Error, Result};
use crate::exactmath::{
    discriminant, frac, parse_poly, proportional, rat, vars_of, Field, GaussianRational, LaurentPoly, MultiPoly,
    Rational,
};
use crate::surfaces::developable_patch;

/// Outcome of checking the printed factorization of det g.
#[derive(Clone, Debug)]
pub struct DetgReport {
    pub case: CatalogCase,
    pub identity: String,
    pub pass: bool,
    /// Γ₂ or Γ₁ where the identity names one.
    pub cofactor: Option<MultiPoly>,
    /// det g divided by the printed right-hand side, when they are proportional.
    pub scalar: Option<String>,
    /// det g vanishes on the tangent developable of the case's curve.
    pub vanishes_on_developable: bool,
}

impl DetgReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.id(),
            "identity": self.identity,
            "pass": self.pass,
            "cofactor": self.cofactor.as_ref().map(|c| c.to_string()),
            "scalar": self.scalar,
            "vanishesOnDevelopable": self.vanishes_on_developable,
        })
    }
}

fn vanishes_on_developable(case: CatalogCase, det: &MultiPoly) -> Result<bool> {
    fn on<F: Field>(det: &MultiPoly<F>, b: &crate::surfaces::CurveBranch<F>) -> Result<bool> {
        let patch = developable_patch(b)?;
        let binds: Vec<(&str, LaurentPoly<F>)> =
            ["x", "y", "z"].into_iter().zip(patch.components().iter().cloned()).collect();
        Ok(det.substitute(&binds)?.is_zero())
    }
    if case.needs_gaussian() {
        let d = det.map_coeffs(|c| GaussianRational::from_rational(c.clone()));
        return on(&d, &sextic_branch());
    }
    on(det, &family_curve(case.curve_family().expect("family cases have curves"))?)
}

/// Check the printed factorization of det g for a case.
pub fn detg_identity(case: CatalogCase, given: &Params) -> Result<DetgReport> {
    use CatalogCase::*;
    let g = cometric_family(case, given)?;
    let det = g.det();
    let vanishes = vanishes_on_developable(case, &det)?;
    let mut report = DetgReport {
        case,
        identity: String::new(),
        pass: false,
        cofactor: None,
        scalar: None,
        vanishes_on_developable: vanishes,
    };
    let mut exact = |identity: &str, rhs: MultiPoly, cofactor: Option<MultiPoly>| {
        report.identity = identity.to_string();
        report.pass = det == rhs;
        report.scalar = proportional(&det, &rhs).map(|s| s.to_string());
        report.cofactor = cofactor;
    };
    match case.curve_family() {
        Some(I1) => {
            let g2 = gamma2_lemma43(&lemma43_params(case, given)?);
            exact("det g = Γ4·Γ2", gamma4() * g2.clone(), Some(g2));
        }
        Some(Ii) => {
            let bound = case.bind(given)?;
            let (a, b) = (bound["a"].clone(), bound["b"].clone());
            let k = MultiPoly::constant_in(xyz(), rat(9) * &a * &a * &b);
            exact("det g = 9a²b·x²·(3y²-4xy³-4z+6xyz-x²z²)", k * p("x^2") * lemma44_quartic(), None);
        }
        Some(Iii1) => {
            let [a, b, c] = lemma45_params(case, given)?;
            let g1 = gamma1_lemma45(&a, &b, &c);
            exact("det g = Γ5·Γ1", gamma5() * g1.clone(), Some(g1));
        }
        Some(V) if case.family_case() == V => {
            let quintic = parse_poly("u^5 - 10u^3 - 10xu^2 - 5yu - z", &["x", "y", "z", "u"])?;
            let disc = discriminant(&quintic, "u")?.with_vars(&xyz())?;
            // ¼·det(5g) = (125/4)·det g.
            let lhs = det.scale(&frac(125, 4));
            report.identity = "¼det(5g) = discr_u(u⁵-10u³-10xu²-5yu-z)".into();
            report.scalar = proportional(&lhs, &disc).map(|s| s.to_string());
            report.pass = lhs == disc;
        }
        Some(Vi) => {
            let vars = vars_of(&["x", "y", "z", "u"]);
            let gi = |re: i64, im: i64| GaussianRational::new(rat(re), rat(im));
            let var = |n: &str| MultiPoly::<GaussianRational>::var_in(vars.clone(), n).unwrap();
            let k = |c: GaussianRational| MultiPoly::constant_in(vars.clone(), c);
            let s = var("x") + var("y") * k(gi(0, 1));
            let sbar = var("x") - var("y") * k(gi(0, 1));
            let u = var("u");
            let quartic = u.pow(4) - s * u.pow(3) + var("z") * u.pow(2) - sbar * u.clone() + k(gi(1, 0));
            let disc = discriminant(&quartic, "u")?.with_vars(&xyz())?;
            let lhs = to_gaussian(g.matrix()).det()?.scale(&GaussianRational::from_rational(frac(1, 4)));
            report.identity = "¼det g = discr_u(u⁴-su³+zu²-s̄u+1), s=x+iy".into();
            report.scalar = proportional(&lhs, &disc).map(|s| s.to_string());
            report.pass = lhs == disc;
        }
        _ => {
            report.identity = "Γ = det g vanishes on the tangent developable".into();
            report.pass = vanishes;
        }
    }
    Ok(report)
}

/// The affine map x ↦ (x+μ, y+2μx+μ², z+3μy+3μ²x+μ³) as (A, c), X = A·x + c.
///
/// It maps (t, t², t³) to the same curve at t+μ; its linear part is (x, y+2μx, z+3μy+3μ²x).
pub fn phi_mu(mu: &Rational) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let a = vec![
        vec![rat(1), rat(0), rat(0)],
        vec![rat(2) * mu, rat(1), rat(0)],
        vec![rat(3) * mu * mu, rat(3) * mu, rat(1)],
    ];
    (a, vec![mu.clone(), mu * mu, mu * mu * mu])
}

/// The cometric carried forward along [`phi_mu`].
pub fn phi_mu_pushforward(g: &Cometric, mu: &Rational) -> Result<Cometric> {
    // Pushing forward along X = φ(x) is pulling back along x = φ⁻¹(X) = φ_{−μ}(X).
    let (a, c) = phi_mu(&-mu.clone());
    g.affine_pullback(&a, &c)
}

/// The parameters (a, …, f) after the change of variables by φ_μ.
pub fn phi_mu_params(v: &[Rational; 6], mu: &Rational) -> [Rational; 6] {
    let [a, b, c, d, e, f] = v.clone();
    let m2 = mu * mu;
    [
        a + mu * (c.clone() - &d) + &m2 * &f,
        b - mu * (c.clone() + &d) + &m2 * &e,
        c + mu * (f.clone() - &e),
        d - mu * (f.clone() + &e),
        e,
        f,
    ]
}

/// Strict or equality predicates printed with a solution.
fn predicate_holds(pred: &str, p: &Params) -> bool {
    let v = |n: &str| p.get(n).cloned().unwrap_or_else(Rational::zero);
    let (pp, q, r) = (v("p"), v("q"), v("r"));
    let zero = Rational::zero();
    let one = Rational::one();
    match pred {
        "6p>1" => rat(6) * &pp > one,
        "4p>1" => rat(4) * &pp > one,
        "p>1/6" => pp > frac(1, 6),
        "p>1/4" => pp > frac(1, 4),
        "q>0" => q > zero,
        "r>0" => r > zero,
        "2p+q>1" => rat(2) * &pp + &q > one,
        "2p+r>1" => rat(2) * &pp + &r > one,
        "α>0" => v("alpha") > zero,
        "λ>0" => v("lambda") > zero,
        "e=-1" => v("e") == rat(-1),
        _ => unreachable!("unlisted predicate {pred}"),
    }
}

/// Build a closed-form solution, rejecting parameters outside its admissible range.
pub fn solution(case: CatalogCase, given: &Params) -> Result<DopModel> {
    if !case.is_solution() {
        return Err(Error::Parameter(format!("{} is not a solution case", case.id())));
    }
    let bound = case.bind(given)?;
    let failed: Vec<&str> = case.constraints().iter().copied().filter(|c| !predicate_holds(c, &bound)).collect();
    if !failed.is_empty() {
        return Err(Error::Parameter(format!("{}: violated {}", case.id(), failed.join(", "))));
    }
    solution_unchecked(case, &bound)
}

/// Like [`solution`] without the inequality predicates (e.g. (i₆) with e = +1).
pub fn solution_unchecked(case: CatalogCase, given: &Params) -> Result<DopModel> {
    use CatalogCase::*;
    let bound = case.bind(given)?;
    let v = |n: &str| bound[n].clone();
    let minus1 = |n: &str| v(n) - rat(1);
    let g = cometric_family(case, &bound)?;
    let k = |c: Rational| MultiPoly::constant_in(xyz(), c);
    let (gamma, rho) = match case {
        Thm51I4 => (
            p("(x-1)z") * gamma4(),
            DensitySpec::uniform()
                .factor(gamma4(), minus1("p"), Some("Γ4"))
                .factor(p("z"), minus1("q"), None)
                .factor(p("1-x"), minus1("r"), None),
        ),
        Thm51I5 => {
            let (p1, m1) = (cubic_p(&rat(1)), cubic_p(&rat(-1)));
            (
                p1.clone() * m1.clone() * gamma4(),
                DensitySpec::uniform()
                    .factor(gamma4(), minus1("p"), Some("Γ4"))
                    .factor(p1, minus1("q"), Some("P(1)"))
                    .factor(m1, minus1("r"), Some("P(-1)")),
            )
        }
        Thm51I6 => {
            // Γ₂ = −4αe·(y − (α+1)x² − eα); the bracket is the printed cylinder up to sign.
            let alpha = v("alpha");
            let cyl = p("y") - p("x^2") * k(alpha.clone() + rat(1)) - k(v("e") * &alpha);
            (
                gamma4() * cyl.clone(),
                DensitySpec::uniform()
                    .factor(gamma4(), minus1("p"), Some("Γ4"))
                    .factor(cyl, minus1("q"), Some("Γ2")),
            )
        }
        Thm51Iii2 => {
            let [a, b, c] = lemma45_params(case, &bound)?;
            let g1 = gamma1_lemma45(&a, &b, &c);
            (
                gamma5() * g1.clone(),
                DensitySpec::uniform()
                    .factor(gamma5(), minus1("p"), Some("Γ5"))
                    .factor(g1, minus1("q"), Some("Γ1")),
            )
        }
        Thm51Iii3 => (
            p("x-1") * gamma5(),
            DensitySpec::uniform()
                .factor(gamma5(), minus1("p"), Some("Γ5"))
                .factor(p("1-x"), minus1("q"), None),
        ),
        Thm51V | Thm51Vi => {
            let det = g.det();
            (det.clone(), DensitySpec::uniform().factor(det, minus1("p"), Some("det g")))
        }
        Thm52I1 => {
            let (alpha, lambda) = (v("alpha"), v("lambda"));
            let arg = p("y") * k(lambda.clone()) - p("x^2") * k(lambda * (rat(1) + alpha));
            (gamma4(), DensitySpec::uniform().factor(gamma4(), minus1("p"), Some("Γ4")).with_exp_arg(arg))
        }
        Thm52I3 => (
            p("z") * gamma4(),
            DensitySpec::uniform()
                .factor(gamma4(), minus1("p"), Some("Γ4"))
                .factor(p("z"), minus1("q"), None)
                .with_exp_arg(p("x") * k(-v("lambda"))),
        ),
        Thm52Iii1 => (
            gamma5(),
            DensitySpec::uniform()
                .factor(gamma5(), minus1("p"), Some("Γ5"))
                .with_exp_arg(p("x") * k(-v("lambda"))),
        ),
        _ => unreachable!("checked by is_solution"),
    };
    Ok(DopModel::new(g, gamma, rho, case.id())?.with_params(bound))
}

/// Description of the domain Ω of a solution.
pub fn domain_description(case: CatalogCase) -> Option<&'static str> {
    use CatalogCase::*;
    Some(match case {
        Thm51I4 | Thm51I5 | Thm51I6 | Thm51Iii2 | Thm51Iii3 | Thm51V | Thm51Vi => {
            "the only bounded component of the complement of {det g = 0}"
        }
        Thm52I1 => "the component of the complement of {det g = 0} containing (0,-1,0)",
        Thm52I3 | Thm52Iii1 => "the only component of the complement of {det g = 0} whose section by x=1 is bounded",
        _ => return None,
    })
}

/// A rational interior point of Ω at the example parameters: g is positive
/// definite there and no density base vanishes.
///
/// Located by a grid flood fill bounded by the sign changes of the density bases.
pub fn witness_point(case: CatalogCase) -> Option<[Rational; 3]> {
    use CatalogCase::*;
    let w = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| Some([frac(a.0, a.1), frac(b.0, b.1), frac(c.0, c.1)]);
    match case {
        Thm51I4 => w((7, 8), (1, 2), (3, 16)),
        Thm51I5 => w((0, 1), (-3, 16), (0, 1)),
        Thm51I6 => w((0, 1), (-1, 2), (0, 1)),
        Thm51Iii2 | Thm51Iii3 | Thm52Iii1 => w((1, 2), (0, 1), (-1, 1)),
        Thm51V => w((0, 1), (-5, 2), (0, 1)),
        Thm51Vi => w((0, 1), (0, 1), (0, 1)),
        Thm52I1 => w((0, 1), (-1, 1), (0, 1)),
        Thm52I3 => w((3, 1), (5, 4), (1, 4)),
        _ => None,
    }
}
