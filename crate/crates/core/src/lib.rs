//! Exact Hochschild cohomology of rank-one smash products B = k[x]/(x^n) # kG
//! over prime fields.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod field;
pub mod group;
pub mod hochschild;
pub mod linalg;
pub mod rankone;
pub mod smashext;
pub mod sparse;

pub use error::{Error, Result};
pub use field::{PrimeField, Scalar};
