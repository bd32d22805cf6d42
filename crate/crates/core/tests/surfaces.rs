mod common;

use common::{shape_verdict, xyz_poly};
use dop_core::catalog::{self, CatalogCase};
use dop_core::dopcore::Cometric;
use dop_core::exactmath::*;
use dop_core::surfaces::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tu(s: &str) -> LaurentPoly {
    parse_poly(s, &["t", "u"]).unwrap().to_laurent()
}

fn branch(s: [&str; 3]) -> CurveBranch {
    let c = |src: &str| parse_poly(src, &["t"]).unwrap().to_laurent();
    CurveBranch::new([c(s[0]), c(s[1]), c(s[2])]).unwrap()
}

fn cubic() -> CurveBranch {
    branch(["t", "t^2", "t^3"])
}

/// Σ_j (Jacobian minor)_j · g^{ij} restricted to the patch, for each i.
fn tangency_residuals(g: &Cometric, p: &SurfacePatch) -> Vec<LaurentPoly> {
    let normal = p.normal();
    let binds: Vec<(&str, LaurentPoly)> = ["x", "y", "z"].into_iter().zip(p.components().iter().cloned()).collect();
    (0..3)
        .map(|i| {
            (0..3).fold(LaurentPoly::zero_in(p.components()[0].vars().clone()), |acc, j| {
                acc + &normal[j] * &g.entry(i, j).substitute(&binds).unwrap()
            })
        })
        .collect()
}

fn same_space(a: &SolutionSpace<Rational>, b: &SolutionSpace<Rational>) -> bool {
    a.dim() == b.dim() && a.cometrics().iter().all(|g| b.contains(g))
}

#[test]
fn branch_orders() {
    assert_eq!(branch_order(&cubic()).unwrap(), [1, 2, 3]);
    assert_eq!(branch_order(&catalog::curve(CatalogCase::Iv).unwrap()).unwrap(), [-1, 1, 2]);
    assert_eq!(branch_order(&branch(["t^2", "2t^3", "3t^4"])).unwrap(), [2, 3, 4]);
    let zero = CurveBranch::from_terms([&[(rat(1), 1)], &[], &[(rat(1), 2)]]).unwrap();
    assert!(branch_order(&zero).is_err());
}

#[test]
fn patches() {
    let d = developable_patch(&cubic()).unwrap();
    assert_eq!(d.components(), &[tu("t + u"), tu("t^2 + 2t u"), tu("t^3 + 3t^2 u")]);

    let d = developable_patch(&catalog::curve(CatalogCase::Iv).unwrap()).unwrap();
    let x = &d.components()[0];
    let inv_t = LaurentPoly::monomial(x.vars().clone(), smallvec::smallvec![-1, 0], rat(1));
    let u_inv_t2 = LaurentPoly::monomial(x.vars().clone(), smallvec::smallvec![-2, 1], rat(-1));
    assert_eq!(x, &(inv_t + u_inv_t2 + tu("t + u")));

    let c = cone_patch(&branch(["1", "t", "t^3"])).unwrap();
    assert_eq!(c.components(), &[tu("u"), tu("u t"), tu("u t^3")]);
    assert!(CurveBranch::from_terms([&[(rat(2), 0)], &[(rat(1), 0)], &[]]).is_err());
}

#[test]
fn nullspace_dimensions_of_model_curves() {
    for (case, dim) in [(CatalogCase::I1, 6), (CatalogCase::Ii, 2), (CatalogCase::Iii1, 3), (CatalogCase::Iv, 1)] {
        let p = developable_patch(&catalog::curve(case).unwrap()).unwrap();
        let system = assemble_constraints(&[p.clone()]);
        assert_eq!(NUM_UNKNOWNS - system.rank(), dim, "{case}");
        let basis = solve_cometric(&[p]);
        assert_eq!(basis.len(), dim);
    }
}

#[test]
fn solutions_are_tangent_to_their_patches() {
    for case in [CatalogCase::Ii, CatalogCase::Iii1, CatalogCase::V, CatalogCase::ViP] {
        let p = developable_patch(&catalog::family_curve(case).unwrap()).unwrap();
        for g in solve_cometric(&[p.clone()]) {
            assert!(tangency_residuals(&g, &p).iter().all(LaurentPoly::is_zero), "{case}");
        }
    }
}

#[test]
fn sextic_space_contains_its_cometric() {
    let p = developable_patch(&catalog::sextic_branch()).unwrap();
    let space = solution_space(&[p]);
    assert!(space.dim() >= 1);
    let g = catalog::cometric_family(CatalogCase::Vi, &Default::default()).unwrap();
    let gi = Cometric::new(g.coords().clone(), catalog::families::to_gaussian(g.matrix())).unwrap();
    assert!(space.contains(&gi));
}

#[test]
fn quadratic_cone_admits_solutions() {
    let space = solution_space(&[cone_patch(&branch(["1", "t", "t^2"])).unwrap()]);
    assert!(space.dim() >= 1);
    let probe = positivity_probe(&space.cometrics()[0], &[vec![rat(1), rat(0), rat(1)]]).unwrap();
    assert_eq!(probe.points.len(), 1);
}

#[test]
fn reparametrization_invariance() {
    let base = solution_space(&[developable_patch(&cubic()).unwrap()]);
    let t = |s: &str| parse_poly(s, &["t"]).unwrap().to_laurent();
    for image in ["2t", "t + 3", "t - 1/2"] {
        let b = cubic().reparametrize(&t(image)).unwrap();
        let other = solution_space(&[developable_patch(&b).unwrap()]);
        assert!(same_space(&base, &other), "t ↦ {image}");
    }
    let b = catalog::curve(CatalogCase::Ii).unwrap().reparametrize(&t("2t")).unwrap();
    let a = solution_space(&[developable_patch(&catalog::curve(CatalogCase::Ii).unwrap()).unwrap()]);
    assert!(same_space(&a, &solution_space(&[developable_patch(&b).unwrap()])));
}

#[test]
fn affine_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = solution_space(&[developable_patch(&cubic()).unwrap()]);
    let mut done = 0;
    while done < 3 {
        let a: Vec<Vec<Rational>> = (0..3).map(|_| (0..3).map(|_| random_rational(&mut rng, 4, 3)).collect()).collect();
        let Some(ainv) = inverse(&a) else { continue };
        let c: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng, 4, 3)).collect();
        let image = solution_space(&[developable_patch(&cubic().affine_image(&a, &c).unwrap()).unwrap()]);
        assert_eq!(image.dim(), base.dim());
        // push forward along X = A·x + c, i.e. pull back along x = A⁻¹X − A⁻¹c
        let shift: Vec<Rational> = (0..3).map(|i| -(0..3).fold(rat(0), |s, j| s + &ainv[i][j] * &c[j])).collect();
        for g in base.cometrics() {
            assert!(image.contains(&g.affine_pullback(&ainv, &shift).unwrap()));
        }
        done += 1;
    }
}

#[test]
fn forced_factor_examples() {
    let basis: Vec<Cometric> =
        catalog::lemma43_basis().into_iter().map(|m| Cometric::new(catalog::xyz(), m).unwrap()).collect();
    let r = forced_factor(&basis, &xyz_poly("x^2"), 5, 1);
    assert_eq!(r.verdict, Verdict::NotForced);
    assert!(r.exact && !r.det_identically_zero);
    assert_eq!(forced_factor(&basis, &xyz_poly("1"), 5, 1).verdict, Verdict::Forced);
    assert_eq!(forced_factor(&basis, &catalog::gamma4(), 5, 1).verdict, Verdict::Forced);
    assert_eq!(forced_factor::<Rational>(&[], &xyz_poly("x"), 5, 1).verdict, Verdict::Indeterminate);
    let json = r.to_json();
    assert_eq!(json["verdict"], "not-forced");
    assert_eq!(json["basisDim"], 6);
}

#[test]
fn excluded_branch_shapes_force_z_squared() {
    for y_lead in [3, 2] {
        for seed in 0..2 {
            let r = shape_verdict(y_lead, seed);
            assert_eq!(r.verdict, Verdict::Forced, "ord (1,{y_lead},4), seed {seed}");
        }
    }
    // (1,3,4): the window leaves a single cometric, with det ≡ 0
    let r = shape_verdict(3, 5);
    assert!(r.exact && r.det_identically_zero && r.basis_dim == 1);
}

#[test]
fn profiles() {
    let (d, c) = discriminant_profile(&xyz_poly("z^2 - x"), "z").unwrap();
    assert!(proportional(&d, &xyz_poly("x")).is_some());
    assert_eq!(c, xyz_poly("1"));
    assert!(discriminant_profile(&xyz_poly("x + y"), "z").is_err());

    let params = catalog::params([("alpha", rat(1)), ("e", rat(-1))]);
    let g = catalog::cometric_family(CatalogCase::I6, &params).unwrap();
    let (d, c) = discriminant_profile(&g.det(), "z").unwrap();
    let cyl = xyz_poly("2x^2 - y - 1");
    assert!(proportional(&c, &cyl).is_some());
    let rest = d.div_exact(&(&c * &c)).unwrap();
    assert!(proportional(&rest, &xyz_poly("y - x^2").pow(3)).is_some());
}

#[test]
fn sampling() {
    let bx = SampleBox::cube(rat(2)).unwrap();
    let pts = sample_surface(&catalog::gamma4(), &bx, 12).unwrap();
    assert!(!pts.is_empty());
    assert!(sample_surface(&xyz_poly("1"), &bx, 8).unwrap().is_empty());
    assert!(SampleBox::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(1)]).is_err());
    let csv = points_to_csv(&pts);
    assert!(csv.starts_with("x,y,z\n"));
    assert_eq!(csv.lines().count(), pts.len() + 1);
}

#[test]
fn positivity_probes() {
    let params = catalog::params([("alpha", rat(1)), ("e", rat(-1))]);
    let g = catalog::cometric_family(CatalogCase::I6, &params).unwrap();
    let r = positivity_probe(&g, &[vec![rat(0), frac(-1, 2), rat(0)]]).unwrap();
    assert!(r.all_positive());

    let g = catalog::cometric_family(CatalogCase::Ii, &catalog::params([("a", rat(1)), ("b", rat(-1))])).unwrap();
    let r = positivity_probe(&g, &[vec![rat(0), rat(1), rat(1)]]).unwrap();
    assert!(!r.all_positive());
    assert_eq!(r.points[0].minors[2], rat(0));
}

#[test]
fn local_system_of_exact_branch_keeps_everything() {
    let b = cubic();
    let full = assemble_constraints(&[developable_patch(&b).unwrap()]);
    let local = local_system(&b, [false; 3], 3, 0).unwrap();
    assert_eq!(local.alpha_safe, i64::MAX);
    assert_eq!(local.system.rows.len(), full.rows.len());
}

#[test]
fn branch_json_round_trip() {
    let b = catalog::curve(CatalogCase::ViP).unwrap();
    let v = b.to_json();
    assert_eq!(v["var"], "t");
    assert_eq!(CurveBranch::from_json(&v).unwrap(), b);
}
