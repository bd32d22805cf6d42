//! Exact coefficient fields, sparse polynomials, linear algebra, resultants and
//! symmetric-function decomposition.

pub mod field;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod symmetric;

pub use field::{frac, parse_rational, rat, Field, GaussianRational, Rational};
pub use linalg::{in_span, inverse, nullspace, rank, rref, SparseRow};
pub use matrix::{det_scalar, PolyMatrix};
pub use parse::parse_poly;
pub use poly::{exact_divides, poly_divrem, proportional, vars_of, DivRem, Exps, LaurentPoly, MultiPoly, Poly, Vars};
pub use resultant::{discriminant, resultant, squarefree, squarefree_seeded};
pub use symmetric::{elementary, sym_decompose, sym_decompose_in};
