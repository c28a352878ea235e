//! Truncated Laurent series in `t` whose coefficients are `d`-tuples over a
//! coefficient field at some level of a constant-field tower.

use std::sync::Arc;

use crate::algebra::{Field, FieldTower, Gf, GfElem, Poly, RatField, RatFunc};
use crate::error::{Error, Result};

/// Coefficient fields that sit at a level of a constant-field tower: finite
/// fields `F_{p^m}` and rational function fields `F_{p^m}(u)`.
pub trait TowerCoeffs: Field {
    /// Degree of the constant field over the prime field.
    fn level(&self) -> usize;
    /// The same kind of field at level `m`.
    fn at_level(&self, tower: &FieldTower, m: usize) -> Self;
    /// Image of `x` under the constant-field embedding into level `m`.
    fn embed(&self, tower: &FieldTower, x: &Self::Elem, m: usize) -> Self::Elem;
    /// Whether `x` is defined over the level `k` subfield.
    fn lies_in(&self, tower: &FieldTower, x: &Self::Elem, k: usize) -> bool;
}

impl TowerCoeffs for Gf {
    fn level(&self) -> usize {
        self.degree()
    }
    fn at_level(&self, tower: &FieldTower, m: usize) -> Self {
        tower.level(m)
    }
    fn embed(&self, tower: &FieldTower, x: &GfElem, m: usize) -> GfElem {
        tower.embed(x, self.degree(), m)
    }
    fn lies_in(&self, tower: &FieldTower, x: &GfElem, k: usize) -> bool {
        self.degree().is_multiple_of(k) && tower.restrict(x, k, self.degree()).is_some()
    }
}

fn embed_poly(tower: &FieldTower, f: &Poly<GfElem>, a: usize, b: usize) -> Poly<GfElem> {
    Poly { coeffs: f.coeffs.iter().map(|c| tower.embed(c, a, b)).collect() }
}

impl TowerCoeffs for RatField<Gf> {
    fn level(&self) -> usize {
        self.base().degree()
    }
    fn at_level(&self, tower: &FieldTower, m: usize) -> Self {
        RatField::new(tower.level(m))
    }
    fn embed(&self, tower: &FieldTower, x: &RatFunc<GfElem>, m: usize) -> RatFunc<GfElem> {
        let a = self.level();
        // The embedding is injective and fixes 1, so the fraction stays reduced
        // with monic denominator.
        RatFunc { num: embed_poly(tower, &x.num, a, m), den: embed_poly(tower, &x.den, a, m) }
    }
    fn lies_in(&self, tower: &FieldTower, x: &RatFunc<GfElem>, k: usize) -> bool {
        let base = self.base();
        x.num.coeffs.iter().chain(&x.den.coeffs).all(|c| base.lies_in(tower, c, k))
    }
}

/// Element of `(L^d)((t))` known on a window of `t`-exponents.
///
/// Coefficient `i` is stored at `coeffs[i - start]`. With `known_until =
/// None` the series has finite support inside the stored range; otherwise
/// coefficients are known only for exponents below `known_until`.
#[derive(Clone, Debug)]
pub struct LaurentApprox<F: TowerCoeffs> {
    pub tower: Arc<FieldTower>,
    pub field: F,
    pub d: usize,
    pub start: i64,
    pub coeffs: Vec<Vec<F::Elem>>,
    pub known_until: Option<i64>,
}

impl<F: TowerCoeffs> LaurentApprox<F> {
    /// Finitely supported series `sum_i coeffs[i] t^{start+i}`.
    pub fn exact(tower: Arc<FieldTower>, field: F, d: usize, start: i64, coeffs: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut s = LaurentApprox { tower, field, d, start, coeffs, known_until: None };
        s.check_shape()?;
        s.trim();
        Ok(s)
    }

    /// Series known for exponents `start..known_until`; `coeffs` are padded
    /// with zeros or cut to that window.
    pub fn truncated(
        tower: Arc<FieldTower>,
        field: F,
        d: usize,
        start: i64,
        mut coeffs: Vec<Vec<F::Elem>>,
        known_until: i64,
    ) -> Result<Self> {
        if known_until < start {
            return Err(Error::Invalid("empty precision window".into()));
        }
        let len = (known_until - start) as usize;
        coeffs.resize(len, vec![field.zero(); d]);
        let s = LaurentApprox { tower, field, d, start, coeffs, known_until: Some(known_until) };
        s.check_shape()?;
        Ok(s)
    }

    pub fn zero(tower: Arc<FieldTower>, field: F, d: usize) -> Self {
        LaurentApprox { tower, field, d, start: 0, coeffs: Vec::new(), known_until: None }
    }

    /// The constant series with every component equal to `c`.
    pub fn constant(tower: Arc<FieldTower>, field: F, d: usize, c: F::Elem) -> Self {
        let mut s = LaurentApprox { tower, field, d, start: 0, coeffs: vec![vec![c; d]], known_until: None };
        s.trim();
        s
    }

    fn check_shape(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Invalid("tuple length must be positive".into()));
        }
        if self.coeffs.iter().any(|c| c.len() != self.d) {
            return Err(Error::Invalid(format!("coefficient tuples must have length {}", self.d)));
        }
        Ok(())
    }

    fn trim(&mut self) {
        if self.known_until.is_some() {
            return;
        }
        let f = &self.field;
        while self.coeffs.last().is_some_and(|c| c.iter().all(|x| f.is_zero(x))) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.iter().all(|x| f.is_zero(x))).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn is_exact(&self) -> bool {
        self.known_until.is_none()
    }

    /// One past the largest known exponent (`i64::MAX` for exact series).
    pub fn end(&self) -> i64 {
        self.known_until.unwrap_or(i64::MAX)
    }

    /// One past the largest stored exponent.
    pub fn stored_end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient tuple of `t^i`; `None` beyond the known window.
    pub fn coeff(&self, i: i64) -> Option<Vec<F::Elem>> {
        if i >= self.end() {
            return None;
        }
        if i < self.start || i >= self.stored_end() {
            return Some(vec![self.field.zero(); self.d]);
        }
        Some(self.coeffs[(i - self.start) as usize].clone())
    }

    fn coeff_ref(&self, i: i64) -> Option<&[F::Elem]> {
        if i < self.start || i >= self.stored_end() {
            None
        } else {
            Some(&self.coeffs[(i - self.start) as usize])
        }
    }

    /// Indices and tuples of the stored, nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Vec<F::Elem>)> {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.iter().any(|x| !f.is_zero(x)))
            .map(move |(k, c)| (self.start + k as i64, c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.field != other.field {
            return Err(Error::Mismatch("Laurent series over different coefficient rings".into()));
        }
        Ok(())
    }

    fn build(&self, start: i64, coeffs: Vec<Vec<F::Elem>>, known_until: Option<i64>) -> Self {
        let mut s = LaurentApprox {
            tower: self.tower.clone(),
            field: self.field.clone(),
            d: self.d,
            start,
            coeffs,
            known_until,
        };
        if let Some(e) = known_until {
            let len = (e - start).max(0) as usize;
            s.coeffs.resize(len, vec![self.field.zero(); self.d]);
        }
        s.trim();
        s
    }

    fn combine(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.check_compatible(other)?;
        let end = self.end().min(other.end());
        let known = if end == i64::MAX { None } else { Some(end) };
        let start = self.start.min(other.start);
        let last = self.stored_end().max(other.stored_end()).min(end);
        let z = vec![self.field.zero(); self.d];
        let coeffs = (start..last.max(start))
            .map(|i| {
                let a = self.coeff_ref(i).unwrap_or(&z);
                let b = other.coeff_ref(i).unwrap_or(&z);
                a.iter().zip(b).map(|(x, y)| op(x, y)).collect()
            })
            .collect();
        Ok(self.build(start, coeffs, known))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.field.clone();
        self.combine(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let f = self.field.clone();
        self.combine(other, |a, b| f.sub(a, b))
    }

    /// Product; componentwise in the tuple, convolution in `t`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let end = match (self.known_until, other.known_until) {
            (None, None) => None,
            (Some(a), None) => Some(a.saturating_add(other.start)),
            (None, Some(b)) => Some(b.saturating_add(self.start)),
            (Some(a), Some(b)) => Some((a + other.start).min(b + self.start)),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            let start = self.start + other.start;
            return Ok(self.build(start, Vec::new(), end.map(|e| e.max(start))));
        }
        let start = self.start + other.start;
        let mut last = self.stored_end() + other.stored_end() - 1;
        if let Some(e) = end {
            last = last.min(e);
        }
        let mut coeffs = vec![vec![f.zero(); self.d]; (last - start).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                for c in 0..self.d {
                    if !f.is_zero(&a[c]) && !f.is_zero(&b[c]) {
                        coeffs[k][c] = f.add(&coeffs[k][c], &f.mul(&a[c], &b[c]));
                    }
                }
            }
        }
        Ok(self.build(start, coeffs, end.map(|e| e.max(start))))
    }

    /// Multiplies every coefficient tuple componentwise by `c`.
    pub fn scale(&self, c: &[F::Elem]) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|t| t.iter().zip(c).map(|(x, y)| f.mul(x, y)).collect()).collect();
        self.build(self.start, coeffs, self.known_until)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.build(self.start + k, self.coeffs.clone(), self.known_until.map(|e| e + k))
    }

    /// `sigma` on one tuple: `(z_0, .., z_{d-1}) -> (z_{d-1}^q, z_0^q, .., z_{d-2}^q)`.
    pub fn sigma_tuple(&self, z: &[F::Elem]) -> Vec<F::Elem> {
        let d = self.d;
        (0..d).map(|i| self.field.frobenius(&z[(i + d - 1) % d])).collect()
    }

    /// `sigma` acts on coefficients and fixes `t`.
    pub fn sigma(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.sigma_tuple(c)).collect();
        self.build(self.start, coeffs, self.known_until)
    }

    pub fn sigma_pow(&self, e: u32) -> Self {
        let mut s = self.clone();
        for _ in 0..e {
            s = s.sigma();
        }
        s
    }

    /// Exponent of the first nonzero known coefficient; `None` if every
    /// known coefficient vanishes.
    pub fn order(&self) -> Option<i64> {
        self.terms().next().map(|(i, _)| i)
    }

    /// Whether the series has order `0` with all components of the leading
    /// coefficient nonzero, i.e. is a unit of the power series ring.
    pub fn is_unit_of_order_zero(&self) -> bool {
        self.start >= 0
            && self.end() > 0
            && self.order() == Some(0)
            && self.coeff(0).unwrap().iter().all(|x| !self.field.is_zero(x))
    }

    /// Inverse of a unit of order zero, known through `t^{n-1}`.
    pub fn inverse(&self, n: i64) -> Result<Self> {
        if !self.is_unit_of_order_zero() {
            return Err(Error::Hypothesis("inverse needs order 0 and an invertible leading coefficient".into()));
        }
        let n = n.min(self.end());
        let f = &self.field;
        let g0: Vec<F::Elem> = self.coeff(0).unwrap().iter().map(|x| f.inv(x).unwrap()).collect();
        let mut g: Vec<Vec<F::Elem>> = vec![g0.clone()];
        for r in 1..n.max(0) {
            let mut acc = vec![f.zero(); self.d];
            for l in 1..=r {
                let a = self.coeff(l).unwrap();
                for c in 0..self.d {
                    acc[c] = f.add(&acc[c], &f.mul(&a[c], &g[(r - l) as usize][c]));
                }
            }
            g.push((0..self.d).map(|c| f.neg(&f.mul(&g0[c], &acc[c]))).collect());
        }
        g.truncate(n.max(0) as usize);
        Ok(self.build(0, g, Some(n.max(0))))
    }

    /// Forgets coefficients from `t^n` on.
    pub fn truncate(&self, n: i64) -> Self {
        let end = self.end().min(n);
        let keep = (end - self.start).clamp(0, self.coeffs.len() as i64) as usize;
        self.build(self.start.min(end), self.coeffs[..keep].to_vec(), Some(end))
    }

    /// Image at tower level `m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        let a = self.field.level();
        if !m.is_multiple_of(a) {
            return Err(Error::Mismatch(format!("level {a} does not divide {m}")));
        }
        let field = self.field.at_level(&self.tower, m);
        let coeffs =
            self.coeffs.iter().map(|c| c.iter().map(|x| self.field.embed(&self.tower, x, m)).collect()).collect();
        Ok(LaurentApprox {
            tower: self.tower.clone(),
            field,
            d: self.d,
            start: self.start,
            coeffs,
            known_until: self.known_until,
        })
    }

    /// Whether all known coefficients below `t^n` vanish.
    pub fn vanishes_below(&self, n: i64) -> bool {
        self.terms().all(|(i, _)| i >= n)
    }

    /// Whether every known coefficient below `t^n` lies in level `k`.
    pub fn defined_over(&self, k: usize, n: i64) -> bool {
        self.terms().filter(|(i, _)| *i < n).all(|(_, c)| c.iter().all(|x| self.field.lies_in(&self.tower, x, k)))
    }
}
