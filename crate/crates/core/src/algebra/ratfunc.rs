//! Rational function fields `F(x)` over a field handle.

use super::field::{Field, Ring};
use super::poly::{Poly, PolyRing};

/// Reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

/// The field `F(x)`; its Frobenius is `f -> f^q` (so `x -> x^q`).
#[derive(Clone, Debug, PartialEq)]
pub struct RatField<F> {
    pub ring: PolyRing<F>,
}

impl<F: Field> RatField<F> {
    pub fn new(base: F) -> Self {
        RatField { ring: PolyRing::new(base) }
    }

    pub fn base(&self) -> &F {
        &self.ring.base
    }

    /// Builds `num/den`, reducing and normalising; `None` if `den = 0`.
    pub fn frac(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Option<RatFunc<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = self.ring.gcd(&num, &den);
        let mut n = self.ring.exact_div(&num, &g).unwrap();
        let mut d = self.ring.exact_div(&den, &g).unwrap();
        let l = self.ring.base.inv(d.lead().unwrap()).unwrap();
        n = self.ring.scale(&n, &l);
        d = self.ring.scale(&d, &l);
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(&self, p: Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc { num: p, den: self.ring.one() }
    }

    pub fn from_base(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(self.ring.constant(c))
    }

    /// The variable.
    pub fn var(&self) -> RatFunc<F::Elem> {
        self.from_poly(self.ring.x())
    }

    pub fn is_poly(&self, a: &RatFunc<F::Elem>) -> bool {
        a.den.degree() == Some(0)
    }

    /// Element of the base field when `a` is constant.
    pub fn as_constant(&self, a: &RatFunc<F::Elem>) -> Option<F::Elem> {
        if !self.is_poly(a) {
            return None;
        }
        match a.num.degree() {
            None => Some(self.ring.base.zero()),
            Some(0) => Some(a.num.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Applies a base-field map to all coefficients, keeping the variable.
    pub fn map_coeffs<G: Fn(&F::Elem) -> F::Elem>(&self, a: &RatFunc<F::Elem>, g: G) -> RatFunc<F::Elem> {
        let n = self.ring.map_coeffs(&a.num, &g);
        let d = self.ring.map_coeffs(&a.den, &g);
        self.frac(n, d).expect("coefficient map killed the denominator")
    }

    /// Order of vanishing at the monic irreducible `pi`.
    pub fn valuation_at(&self, a: &RatFunc<F::Elem>, pi: &Poly<F::Elem>) -> Option<i64> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.ring.multiplicity(&a.num, pi) as i64 - self.ring.multiplicity(&a.den, pi) as i64)
    }

    /// Valuation at infinity: `deg den - deg num`.
    pub fn valuation_at_infinity(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        if a.num.is_zero() {
            return None;
        }
        Some(a.den.deg() - a.num.deg())
    }

    /// `x -> x^e` substitution on a polynomial.
    fn spread(&self, p: &Poly<F::Elem>, e: usize) -> Poly<F::Elem> {
        if p.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![self.ring.base.zero(); (p.coeffs.len() - 1) * e + 1];
        for (i, x) in p.coeffs.iter().enumerate() {
            c[i * e] = self.ring.base.frobenius(x);
        }
        self.ring.from_coeffs(c)
    }
}

impl<F: Field> Ring for RatField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc { num: Poly::zero(), den: self.ring.one() }
    }
    fn one(&self) -> Self::Elem {
        RatFunc { num: self.ring.one(), den: self.ring.one() }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.frac(self.ring.add(&a.num, &b.num), a.den.clone()).unwrap();
        }
        let n = self.ring.add(&self.ring.mul(&a.num, &b.den), &self.ring.mul(&b.num, &a.den));
        self.frac(n, self.ring.mul(&a.den, &b.den)).unwrap()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc { num: self.ring.neg(&a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if self.is_poly(a) && self.is_poly(b) {
            return self.from_poly(self.ring.mul(&a.num, &b.num));
        }
        self.frac(self.ring.mul(&a.num, &b.num), self.ring.mul(&a.den, &b.den)).unwrap()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(self.ring.base.from_i64(n))
    }
}

impl<F: Field> Field for RatField<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        self.frac(a.den.clone(), a.num.clone())
    }
    fn characteristic(&self) -> u32 {
        self.ring.base.characteristic()
    }
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.characteristic() as usize;
        RatFunc { num: self.spread(&a.num, q), den: self.spread(&a.den, q) }
    }
    fn flatten(&self, xs: &[Self::Elem]) -> Vec<Vec<u32>> {
        let mut common = self.ring.one();
        for x in xs {
            common = self.ring.lcm(&common, &x.den);
        }
        let nums: Vec<Poly<F::Elem>> =
            xs.iter().map(|x| self.ring.mul(&x.num, &self.ring.exact_div(&common, &x.den).unwrap())).collect();
        let len = nums.iter().map(|n| n.coeffs.len()).max().unwrap_or(0);
        let mut out = vec![Vec::new(); xs.len()];
        for k in 0..len {
            let col: Vec<F::Elem> = nums.iter().map(|n| self.ring.coeff(n, k)).collect();
            for (i, v) in self.ring.base.flatten(&col).into_iter().enumerate() {
                out[i].extend(v);
            }
        }
        out
    }
    fn prime_minpoly(&self, a: &Self::Elem) -> Option<Vec<u32>> {
        let c = self.as_constant(a)?;
        self.ring.base.prime_minpoly(&c)
    }
    fn is_finite(&self) -> bool {
        false
    }
}
