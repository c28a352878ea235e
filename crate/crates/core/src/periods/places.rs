//! Places of `F_q(u)` and of its constant-field extensions `F_{q^m}(u)`,
//! and the valuations `v_x` on Laurent series.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::laurent::{LaurentApprox, TowerCoeffs};
use crate::algebra::encode::encode_poly;
use crate::algebra::factor::{factor, is_irreducible};
use crate::algebra::matrix::Matrix;
use crate::algebra::{FieldTower, Gf, GfElem, Poly, PolyRing, RatField, RatFunc, Ring};
use crate::error::{Error, Result};

/// Rational functions at a tower level.
pub type RatCoeffs = RatField<Gf>;
/// Laurent series with rational-function coefficients.
pub type RatLaurent = LaurentApprox<RatCoeffs>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    /// Zero of a monic irreducible polynomial in `u`.
    Finite(Poly<GfElem>),
    Infinity,
}

/// A place of `F_{p^level}(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Place {
    pub level: usize,
    pub kind: PlaceKind,
}

impl Place {
    pub fn infinity(level: usize) -> Place {
        Place { level, kind: PlaceKind::Infinity }
    }

    /// Place of the monic irreducible `pi` over tower level `level`.
    pub fn finite(tower: &FieldTower, level: usize, pi: Poly<GfElem>) -> Result<Place> {
        let field = tower.level(level);
        let ring = PolyRing::new(field.clone());
        if pi.degree().unwrap_or(0) == 0 || !ring.is_monic(&pi) || !is_irreducible(&field, &pi) {
            return Err(Error::Invalid("a finite place needs a monic irreducible polynomial".into()));
        }
        Ok(Place { level, kind: PlaceKind::Finite(pi) })
    }

    /// Residue degree over the level's constant field (`1` at infinity).
    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(pi) => pi.degree().unwrap(),
            PlaceKind::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(pi) => write!(f, "{}", encode_poly(pi)),
            PlaceKind::Infinity => write!(f, "inf"),
        }
    }
}

/// Valuation value: an integer or `+inf` (the zero element).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Val {
    Fin(i64),
    Inf,
}

impl Val {
    pub fn scale(self, k: i64) -> Val {
        match self {
            Val::Fin(v) => Val::Fin(v * k),
            Val::Inf => Val::Inf,
        }
    }

    pub fn plus(self, other: Val) -> Val {
        match (self, other) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Inf, Val::Inf) => Ordering::Equal,
            (Val::Inf, _) => Ordering::Greater,
            (_, Val::Inf) => Ordering::Less,
            (Val::Fin(a), Val::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// `v_x` of a Laurent series. For a truncated series the value is the
/// minimum over the known window, which bounds the true infimum from above;
/// `exact` records which case applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub value: Val,
    pub exact: bool,
}

/// The tracked places of `F_{p^k}(u)` and their lifts to constant-field
/// extensions.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    pub tower: Arc<FieldTower>,
    /// Level of the constant field of `K`.
    pub base_level: usize,
}

impl PlaceSet {
    pub fn new(tower: Arc<FieldTower>, base_level: usize) -> PlaceSet {
        PlaceSet { tower, base_level }
    }

    /// Infinity and all finite places of `K` of degree at most `max_degree`.
    pub fn base_places(&self, max_degree: usize) -> Vec<Place> {
        let field = self.tower.level(self.base_level);
        let size = field.size().expect("finite constant field");
        let mut out = Vec::new();
        for deg in 1..=max_degree {
            let count = size.pow(deg as u32);
            for n in 0..count {
                let mut c: Vec<GfElem> = Vec::with_capacity(deg + 1);
                let mut k = n;
                for _ in 0..deg {
                    c.push(field.from_index(k % size));
                    k /= size;
                }
                c.push(field.one());
                let pi = Poly { coeffs: c };
                if is_irreducible(&field, &pi) {
                    out.push(Place { level: self.base_level, kind: PlaceKind::Finite(pi) });
                }
            }
        }
        out.push(Place::infinity(self.base_level));
        out
    }

    /// The places of level `m` above `x` (`x.level` divides `m`).
    pub fn lifts(&self, x: &Place, m: usize) -> Result<Vec<Place>> {
        if !m.is_multiple_of(x.level) {
            return Err(Error::UntrackedPlace(format!("level {} does not divide {m}", x.level)));
        }
        match &x.kind {
            PlaceKind::Infinity => Ok(vec![Place::infinity(m)]),
            PlaceKind::Finite(pi) => {
                let up = Poly { coeffs: pi.coeffs.iter().map(|c| self.tower.embed(c, x.level, m)).collect() };
                let field = self.tower.level(m);
                Ok(factor(&field, &up)
                    .into_iter()
                    .map(|(g, e)| {
                        debug_assert_eq!(e, 1, "constant-field lifts are unramified");
                        Place { level: m, kind: PlaceKind::Finite(g) }
                    })
                    .collect())
            }
        }
    }

    /// The place of level `k` below `x` (`k` divides `x.level`): the norm of
    /// its polynomial down to `F_{p^k}`.
    pub fn below(&self, x: &Place, k: usize) -> Result<Place> {
        if !x.level.is_multiple_of(k) {
            return Err(Error::UntrackedPlace(format!("level {k} does not divide {}", x.level)));
        }
        let PlaceKind::Finite(pi) = &x.kind else {
            return Ok(Place::infinity(k));
        };
        let field = self.tower.level(x.level);
        let ring = PolyRing::new(field.clone());
        let mut conj = pi.clone();
        let mut acc = ring.one();
        loop {
            acc = ring.mul(&acc, &conj);
            for _ in 0..k {
                conj = ring.frobenius_coeffs(&conj);
            }
            if conj == *pi {
                break;
            }
        }
        let coeffs: Option<Vec<GfElem>> = acc.coeffs.iter().map(|c| self.tower.restrict(c, k, x.level)).collect();
        let coeffs = coeffs.ok_or_else(|| Error::Internal("norm not defined over the subfield".into()))?;
        Ok(Place { level: k, kind: PlaceKind::Finite(Poly { coeffs }) })
    }

    /// Valuation of a rational function of level `a` at `x`; `a` must divide
    /// the level of `x`.
    pub fn value(&self, a: usize, f: &RatFunc<GfElem>, x: &Place) -> Result<Val> {
        if !x.level.is_multiple_of(a) {
            return Err(Error::UntrackedPlace(format!(
                "place at level {} does not determine valuations at level {a}",
                x.level
            )));
        }
        if f.num.is_zero() {
            return Ok(Val::Inf);
        }
        let rf = RatField::new(self.tower.level(x.level));
        let g = RatField::new(self.tower.level(a)).embed(&self.tower, f, x.level);
        Ok(Val::Fin(match &x.kind {
            PlaceKind::Finite(pi) => rf.valuation_at(&g, pi).unwrap(),
            PlaceKind::Infinity => rf.valuation_at_infinity(&g).unwrap(),
        }))
    }
}

/// `v_x(f)`: the minimum over coefficients and tuple components.
pub fn vx(f: &RatLaurent, x: &Place) -> Result<Valuation> {
    let places = PlaceSet::new(f.tower.clone(), f.field.level());
    let a = f.field.level();
    if !x.level.is_multiple_of(a) {
        return Err(Error::UntrackedPlace(format!("series at level {a}, place at level {}", x.level)));
    }
    let mut best = Val::Inf;
    for (_, tuple) in f.terms() {
        for c in tuple {
            best = best.min(places.value(a, c, x)?);
        }
    }
    Ok(Valuation { value: best, exact: f.is_exact() })
}

/// `v_x` of a matrix: the minimum over its entries.
pub fn vx_matrix(m: &Matrix<RatLaurent>, x: &Place) -> Result<Valuation> {
    let mut best = Valuation { value: Val::Inf, exact: true };
    for i in 0..m.rows {
        for j in 0..m.cols {
            let v = vx(m.get(i, j), x)?;
            best.value = best.value.min(v.value);
            best.exact &= v.exact;
        }
    }
    Ok(best)
}

/// `v_x(f)` at every place of level `m` above `x`, for `f` of a level
/// dividing `m`.
pub fn vx_over(f: &RatLaurent, x: &Place, m: usize) -> Result<Vec<(Place, Valuation)>> {
    let places = PlaceSet::new(f.tower.clone(), x.level);
    places.lifts(x, m)?.into_iter().map(|y| vx(f, &y).map(|v| (y, v))).collect()
}

/// Poles of a rational function at level `a`, as places of that level.
pub fn poles(tower: &Arc<FieldTower>, a: usize, f: &RatFunc<GfElem>) -> Vec<Place> {
    let field = tower.level(a);
    let mut out: Vec<Place> =
        factor(&field, &f.den).into_iter().map(|(g, _)| Place { level: a, kind: PlaceKind::Finite(g) }).collect();
    if !f.num.is_zero() && f.num.deg() > f.den.deg() {
        out.push(Place::infinity(a));
    }
    out
}

/// Sort key making place lists deterministic: finite places by degree then
/// coefficients, infinity last.
pub fn place_key(tower: &FieldTower, x: &Place) -> (usize, Vec<Vec<u32>>) {
    match &x.kind {
        PlaceKind::Infinity => (usize::MAX, Vec::new()),
        PlaceKind::Finite(pi) => {
            let f = tower.level(x.level);
            (pi.degree().unwrap(), pi.coeffs.iter().map(|c| f.order_key(c)).collect())
        }
    }
}
