pub mod additive;
pub mod encode;
pub mod factor;
pub mod field;
pub mod fp;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod polymat;
pub mod ratfunc;
pub mod semilinear;

pub use field::{Field, Ring};
pub use fp::{Fp, FpMat};
pub use gf::{tower_for, FieldTower, Gf, GfElem};
pub use matrix::Matrix;
pub use poly::{Poly, PolyRing};
pub use ratfunc::{RatField, RatFunc};

/// `K[t]` over a finite field.
pub type Kt = PolyRing<Gf>;
/// `K(t)` over a finite field.
pub type KtFrac = RatField<Gf>;
/// Polynomials over a finite field.
pub type KPoly = Poly<GfElem>;
/// Rational functions over a finite field.
pub type KRat = RatFunc<GfElem>;
