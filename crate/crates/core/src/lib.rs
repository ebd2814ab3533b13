//! Exact differential algebra over `K = Q(t)(x)` with the commuting
//! derivations `d/dx` and `d/dt`.
//!
//! The crate provides Ore operators, linear differential systems and their
//! module constructions, a complete rational-solution solver, and the decision
//! procedures built on it: isomonodromy (complete integrability) testing,
//! splitting of extensions, and a hypertranscendence criterion for
//! inhomogeneous equations `L(y) = b`.

pub mod error;
pub mod field;
pub mod galois;
pub mod linsys;
pub mod matrix;
pub mod ore;
pub mod ratsol;

pub use error::{Error, Result};
pub use field::{FieldElem, ParamScalar, Rational};
pub use linsys::{DiffSystem, ExtensionSystem};
pub use matrix::{Matrix, MatrixK};
pub use ore::OreOperator;
