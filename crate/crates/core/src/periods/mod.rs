//! Period-ring kernels over `F_q(u)` and finite fields.
//!
//! Laurent series in `t` with coefficients in `L^d` (the splitting of the
//! residue field tensor the coefficients), the valuations `v_x` at places
//! of `F_q(u)` and its constant-field extensions, the coefficient recursion
//! for `sigma(s) = f s`, truncated solutions of `sigma^m(F) = Delta F` with
//! their valuation bound, the floor inequality, and membership tests.
//!
//! Places are tracked only through constant-field extensions, which are
//! unramified, so every valuation is an integer.

pub mod format;
mod laurent;
mod membership;
mod places;
mod solve;

pub use laurent::{LaurentApprox, TowerCoeffs};
pub use membership::{bplus_membership, eps_floor_check, s_membership, BPlus, EpsCheck};
pub use places::{
    place_key, poles, vx, vx_matrix, vx_over, Place, PlaceKind, PlaceSet, RatCoeffs, RatLaurent, Val, Valuation,
};
pub use solve::{
    fixpoint_bound_check, fixpoint_residual, sigma_quotient_solve, FixpointCheck, SigmaQuotient, DEFAULT_PERIOD_LEVEL,
};
