//! Construction and exact verification of diffusion orthogonal polynomial models.

pub mod error;
pub mod dopcore;
pub mod exactmath;
pub mod surfaces;
pub mod catalog;
pub mod coxeter;
pub mod pluecker;

pub use error::{Error, Result};
