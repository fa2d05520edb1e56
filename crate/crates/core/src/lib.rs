//! Computable left-orderings of concrete groups.

pub mod braid;
pub mod error;
pub mod extension;
pub mod free;
pub mod group;
pub mod klein;
pub mod lattice;
pub mod lospace;
pub mod matrix;
pub mod oracle;
pub mod quadratic;
pub mod report;
pub mod suites;

pub use error::{OrderError, Result};
pub use group::{Ball, Group, Sign};
pub use oracle::{GroupAutomorphism, Oracle, SignOracle};
