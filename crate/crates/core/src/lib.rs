//! Exact computations with pre-metric groups (finite abelian groups carrying a
//! quadratic form into Q/Z) and with 3-cocycles on small finite groups.

pub mod abelian;
pub mod doubles;
pub mod error;
pub mod linalg;
pub mod premetric;
pub mod qz;

pub use abelian::{FinAbGroup, GroupHom, Subgroup};
pub use error::{Error, Result};
pub use premetric::PreMetricGroup;
pub use qz::QZ;
