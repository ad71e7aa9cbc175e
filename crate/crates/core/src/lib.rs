pub mod analysis;
pub mod error;
pub mod invariants;
pub mod ktypes;
pub mod liealg;
pub mod linalg;
pub mod orbits;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
