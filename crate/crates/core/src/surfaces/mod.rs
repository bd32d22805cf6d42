//! Curve branches, ruled-surface patches, and the linear systems their tangency imposes on a cometric.

pub mod branch;
pub mod constraints;
pub mod forced;
pub mod sampling;

use num_bigint::BigInt;
use rand::Rng;

use crate::exactmath::Rational;

pub use branch::{branch_order, cone_patch, developable_patch, CurveBranch, SurfacePatch};
pub use constraints::{
    assemble_constraints, cometric_to_vector, local_system, solution_space, solve_cometric, unknown_index, unknowns,
    vector_to_cometric, ConstraintSystem, LocalSystem, RowTag, SolutionSpace, Unknown, NUM_UNKNOWNS,
};
pub use forced::{forced_factor, ForcedReport, Verdict};
pub use sampling::{discriminant_profile, points_to_csv, positivity_probe, sample_surface, ProbeReport, SampleBox};

/// Nonzero rational p/q with |p| ≤ num_max, 1 ≤ q ≤ den_max.
pub fn random_rational(rng: &mut impl Rng, num_max: i64, den_max: i64) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-num_max..=num_max);
    }
    let q = rng.gen_range(1..=den_max);
    Rational::new(BigInt::from(p), BigInt::from(q))
}
