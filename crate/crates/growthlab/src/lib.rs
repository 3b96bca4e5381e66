//! growthlab: an exact-arithmetic library and CLI workbench for sumset
//! calculus, incidence geometry, expander image sets and function-field
//! ultrametric geometry, with machine-checkable certificates and brute-force
//! oracles at desk scale.

pub mod calculus;
pub mod cert;
pub mod error;
pub mod expander;
pub mod ffield;
pub mod harness;
pub mod incidence;
pub mod field;
pub mod projective;
pub mod set;

pub use error::{Error, Result};
