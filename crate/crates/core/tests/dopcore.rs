mod common;

use common::xyz_poly as p;
use dop_core::catalog::{self, CatalogCase};
use dop_core::dopcore::*;
use dop_core::exactmath::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn xyz() -> Vars {
    catalog::xyz()
}

fn cometric(m: PolyMatrix) -> Cometric {
    Cometric::new(xyz(), m).unwrap()
}

fn identity() -> Cometric {
    cometric(PolyMatrix::identity(3, xyz()))
}

fn lemma43(v: [i64; 6]) -> Cometric {
    cometric(catalog::lemma43(&v.map(rat)))
}

fn solution_cases() -> Vec<CatalogCase> {
    CatalogCase::ALL.iter().copied().filter(CatalogCase::is_solution).collect()
}

fn example(case: CatalogCase) -> DopModel {
    catalog::solution(case, &case.example_params()).unwrap()
}

#[test]
fn a1_examples() {
    assert!(check_a1(&lemma43([2, -1, 3, 1, 5, -7])).pass);
    let m = PolyMatrix::from_fn(3, 3, |i, j| if i == 0 && j == 0 { p("x^3") } else { p("0") });
    let c = check_a1(&cometric(m));
    assert!(!c.pass);
    assert_eq!(c.detail["violators"], serde_json::json!([[1, 1]]));
    let zero = check_a1(&cometric(PolyMatrix::from_fn(3, 3, |_, _| p("0"))));
    assert!(zero.pass);
    assert_eq!(zero.detail["zeroMatrix"], true);
}

#[test]
fn a2_examples() {
    let lemma45 = |a: i64, b: i64, c: i64| {
        let parts = catalog::lemma45_basis();
        cometric(parts[0].scale(&p(&a.to_string())).add(&parts[1].scale(&p(&b.to_string()))).add(&parts[2].scale(&p(&c.to_string()))))
    };
    let g1 = catalog::gamma1_lemma45(&rat(3), &rat(1), &rat(-1));
    let r = check_a2(&lemma45(3, 1, -1), &(g1 * catalog::gamma5())).unwrap();
    assert!(r.check.pass);
    assert!(r.cofactor.unwrap().is_constant());

    let r = check_a2(&lemma43([1, 1, 0, 0, 0, 0]), &catalog::gamma4()).unwrap();
    let gamma2 = catalog::gamma2_lemma43(&[1, 1, 0, 0, 0, 0].map(rat));
    assert_eq!(gamma2, p("1"));
    assert_eq!(proportional(&r.cofactor.unwrap(), &gamma2), Some(rat(9)));

    assert!(!check_a2(&identity(), &p("x")).unwrap().check.pass);
    assert!(check_a2(&identity(), &p("0")).is_err());
}

#[test]
fn a3_examples() {
    let g = lemma43([0, 0, 0, 1, -1, 0]);
    let gamma = p("(x - 1) z") * catalog::gamma4();
    let r = check_a3(&g, &gamma).unwrap();
    assert!(r.check.pass);
    assert!(r.quotients.iter().all(|q| q.as_ref().unwrap().total_degree().unwrap_or(0) <= 1));
    assert!(!check_a3(&g, &(gamma + p("1"))).unwrap().check.pass);
    assert!(!check_a3(&identity(), &p("x")).unwrap().check.pass);
    assert!(check_a3(&identity(), &p("0")).is_err());
}

#[test]
fn a5_examples() {
    let ones = catalog::params([("p", rat(1)), ("q", rat(1)), ("r", rat(1))]);
    let m = catalog::solution(CatalogCase::Thm51I5, &ones).unwrap();
    let r = check_a5(&m.g, &m.rho);
    assert!(r.check.pass);
    assert!(r.drifts.unwrap().iter().all(|d| d.is_zero()));

    let m = catalog::solution(CatalogCase::Thm52I1, &catalog::params([("alpha", frac(2, 3)), ("lambda", frac(-5, 4)), ("p", rat(1))]));
    assert!(m.is_err(), "λ>0 is required");
    let m = catalog::solution_unchecked(CatalogCase::Thm52I1, &catalog::params([("alpha", frac(2, 3)), ("lambda", frac(5, 4)), ("p", rat(1))])).unwrap();
    let r = check_a5(&m.g, &m.rho);
    assert!(r.check.pass);
    assert!(r.drifts.unwrap().iter().any(|d| d.total_degree() == Some(1)));

    let g = lemma43([0, 0, 0, 1, -1, 0]);
    let rho = DensitySpec::uniform().factor(p("x + 1"), frac(1, 2), None);
    assert!(!check_a5(&g, &rho).check.pass);
}

#[test]
fn operator_examples() {
    let op = build_operator(&identity(), &DensitySpec::uniform()).unwrap();
    assert!(op.b.iter().all(MultiPoly::is_zero));
    assert_eq!(apply_operator(&op, &p("x^2 + y^2")), p("4"));

    let ones = catalog::params([("p", rat(1)), ("q", rat(1)), ("r", rat(1))]);
    let m = catalog::solution(CatalogCase::Thm51I4, &ones).unwrap();
    let op = build_operator(&m.g, &m.rho).unwrap();
    assert!(op.b.iter().all(|b| b.total_degree().unwrap_or(0) <= 1));
    assert!(op.b.iter().any(|b| !b.is_zero()));

    let bad = DensitySpec::uniform().factor(p("x + 1"), frac(1, 2), None);
    assert!(build_operator(&m.g, &bad).is_err());
}

#[test]
fn operator_reproduces_drift_on_coordinates() {
    for case in solution_cases() {
        let m = example(case);
        let op = build_operator(&m.g, &m.rho).unwrap();
        for (i, v) in ["x", "y", "z"].iter().enumerate() {
            assert_eq!(apply_operator(&op, &p(v)), op.b[i], "{case}");
        }
    }
}

#[test]
fn filtration_examples() {
    let zero = Operator::new(xyz(), PolyMatrix::from_fn(3, 3, |_, _| p("0")), vec![p("0"); 3]);
    assert!(check_filtration(&zero, 4).pass);
    let cubic = PolyMatrix::from_fn(3, 3, |i, j| if i == j { p("x^3 + 1") } else { p("0") });
    let op = Operator::new(xyz(), cubic, vec![p("0"); 3]);
    assert!(!check_filtration(&op, 3).pass);
    let drift = Operator::new(xyz(), PolyMatrix::identity(3, xyz()), vec![p("x^2"), p("0"), p("0")]);
    let c = check_filtration(&drift, 2);
    assert!(!c.pass);
}

#[test]
fn catalog_models_verify() {
    for case in solution_cases() {
        let r = verify_model(&example(case));
        assert!(r.pass(), "{case}: {}", r.to_json());
        for cond in ["A1", "A2", "A3", "A-squarefree", "A5", "filtration"] {
            assert!(r.get(cond).is_some(), "{case} {cond}");
        }
    }
}

#[test]
fn positive_cylinder_sign_passes_algebraically() {
    let params = catalog::params([("alpha", rat(1)), ("e", rat(1)), ("p", frac(1, 3)), ("q", rat(1))]);
    assert!(catalog::solution(CatalogCase::Thm51I6, &params).is_err());
    let m = catalog::solution_unchecked(CatalogCase::Thm51I6, &params).unwrap();
    assert!(verify_model(&m).pass());
}

#[test]
fn model_json_round_trip() {
    for case in [CatalogCase::Thm51I4, CatalogCase::Thm52I1, CatalogCase::Thm51V] {
        let m = example(case);
        let v = m.to_json();
        assert_eq!(v["label"], case.id());
        let back = DopModel::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
        assert!(verify_model(&back).pass());
    }
}

/// L·U with unit diagonals, so det A = 1.
fn unimodular(rng: &mut ChaCha8Rng) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let mut r = || dop_core::surfaces::random_rational(rng, 3, 2);
    let l = [[rat(1), rat(0), rat(0)], [r(), rat(1), rat(0)], [r(), r(), rat(1)]];
    let u = [[rat(1), r(), r()], [rat(0), rat(1), r()], [rat(0), rat(0), rat(1)]];
    let a = (0..3)
        .map(|i| (0..3).map(|j| (0..3).fold(rat(0), |s, k| s + &l[i][k] * &u[k][j])).collect())
        .collect();
    (a, vec![r(), r(), r()])
}

#[test]
fn verification_is_affine_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let good = example(CatalogCase::Thm51I4);
    let mut bad = example(CatalogCase::Thm51Iii3);
    bad.gamma = bad.gamma.clone() * p("y");
    for _ in 0..5 {
        let (a, c) = unimodular(&mut rng);
        assert_eq!(det_scalar(&a), rat(1));
        assert!(verify_model(&good.affine_pullback(&a, &c).unwrap()).pass());
        assert!(!verify_model(&bad.affine_pullback(&a, &c).unwrap()).pass());
    }
}

fn mutation() -> impl Strategy<Value = (usize, usize, usize, usize, i64, i64)> {
    let n = solution_cases().len();
    (0..n, 0usize..3, 0usize..3, 0usize..10, 1i64..50, 1i64..7)
        .prop_map(|(c, i, j, m, num, den)| (c, i.min(j), i.max(j), m, if m % 2 == 0 { num } else { -num }, den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Bumping one coefficient of g breaks (A2) or (A3).
    #[test]
    fn single_coefficient_mutations_fail((c, i, j, m, num, den) in mutation()) {
        let model = example(solution_cases()[c]);
        let mono = monomials_up_to(3, 2)[m].clone();
        let bump = MultiPoly::monomial(xyz(), mono, frac(num, den));
        let g = cometric(PolyMatrix::from_fn(3, 3, |a, b| {
            let e = model.g.entry(a, b).clone();
            if (a, b) == (i, j) || (a, b) == (j, i) { e + bump.clone() } else { e }
        }));
        let a2 = check_a2(&g, &model.gamma).unwrap().check.pass;
        let a3 = check_a3(&g, &model.gamma).unwrap().check.pass;
        prop_assert!(!(a2 && a3), "{} survived the mutation", model.label);
    }
}
