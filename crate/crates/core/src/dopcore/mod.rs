//! The DOP data model, the (A1)–(A5) verifier, and the divergence-form operator.

pub mod checks;
pub mod model;
pub mod operator;

pub use checks::{
    build_operator, check_a1, check_a2, check_a3, check_a5, check_filtration, monomials_up_to, verify_model,
    verify_model_with, Check, VerifyReport,
};
pub use model::{Cometric, DensityFactor, DensitySpec, DopModel};
pub use operator::{apply_operator, Operator};
