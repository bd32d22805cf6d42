#![allow(dead_code)]

use dop_core::catalog::{CatalogCase, Params};
use dop_core::exactmath::{parse_poly, rat, MultiPoly};
use dop_core::surfaces::{local_system, random_rational, CurveBranch, ForcedReport, forced_factor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn xyz_poly(s: &str) -> MultiPoly {
    parse_poly(s, &["x", "y", "z"]).unwrap()
}

/// Highest t-exponent kept in a sampled branch.
pub const SHAPE_ORDER: i32 = 11;

/// (t, t^{y_lead} + …, t⁴ + …) with random rational tails up to [`SHAPE_ORDER`] and b₄ = 0.
pub fn shape_branch(y_lead: i32, seed: u64) -> CurveBranch {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ys = vec![(rat(1), y_lead)];
    for k in (y_lead + 1)..=SHAPE_ORDER {
        if k != 4 {
            ys.push((random_rational(&mut rng, 9, 5), k));
        }
    }
    let mut zs = vec![(rat(1), 4)];
    for k in 5..=SHAPE_ORDER {
        zs.push((random_rational(&mut rng, 9, 5), k));
    }
    CurveBranch::from_terms([&[(rat(1), 1)], &ys, &zs]).unwrap()
}

/// Solve the equations with α ≤ `alpha_max` that do not see the unknown tail of the
/// branch, and ask whether z² divides det g on the whole solution space.
pub fn shape_verdict(y_lead: i32, seed: u64) -> ForcedReport {
    let alpha_max = if y_lead == 3 { 9 } else { 5 };
    let b = shape_branch(y_lead, seed);
    let local = local_system(&b, [false, true, true], SHAPE_ORDER, seed).unwrap();
    assert!(local.alpha_safe > alpha_max);
    let basis = local.system.filter(|t| t.alpha <= alpha_max).solve().cometrics();
    forced_factor(&basis, &xyz_poly("z^2"), 5, seed)
}

/// Nonzero random rationals for every parameter of a curve-family case.
pub fn random_params(case: CatalogCase, seed: u64) -> Params {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    case.param_names()
        .iter()
        .map(|n| (n.to_string(), random_rational(&mut rng, 20, 7)))
        .collect()
}

