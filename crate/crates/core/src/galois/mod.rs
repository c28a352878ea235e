//! Galois side for finite `K`: torsion representations, Tate modules at a
//! prime of `A = F_q[t]` with their Frobenius matrices, semisimplicity
//! evidence and the comparison of homomorphisms.
//!
//! The absolute Galois group of a finite field is procyclic, generated by
//! the Frobenius `x -> x^{q^s}` with `q^s = |K|`, so all Galois data below is
//! a single matrix.

pub mod lang;
pub mod quot;
pub mod tate;
pub mod torsion;

pub use quot::QuotRing;
pub use tate::{
    frobenius_charpoly, frobenius_minpoly, semisimplicity_report, tate_conjecture_check, tate_module,
    SemisimplicityReport, TateApproximation, TateCheck, Verdict,
};
pub use torsion::{dq, rq, TorsionGaloisRep};

/// Default cap on the degree over `F_p` of the fields holding solutions.
pub const DEFAULT_MAX_LEVEL: usize = 192;
