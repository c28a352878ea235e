//! Exact arithmetic for A-motives over `F_q[t]`: finite-field towers,
//! semilinear modules, motives and isogenies, Tate modules with Frobenius,
//! and valuation solvers over Laurent series.

pub mod algebra;
pub mod bold;
pub mod error;
pub mod galois;
pub mod motive;
pub mod periods;

pub use error::{Error, Result};
