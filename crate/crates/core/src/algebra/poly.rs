//! Dense univariate polynomials over a ring handle.

use super::field::{Field, Ring};

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// Polynomial ring `R[x]` over a ring handle.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn normalize(&self, mut c: Vec<R::Elem>) -> Poly<R::Elem> {
        while c.last().is_some_and(|x| self.base.is_zero(x)) {
            c.pop();
        }
        Poly { coeffs: c }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.normalize(vec![c])
    }

    /// The variable `x`.
    pub fn x(&self) -> Poly<R::Elem> {
        Poly { coeffs: vec![self.base.zero(), self.base.one()] }
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.normalize(v)
    }

    /// `x - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        Poly { coeffs: vec![self.base.neg(a), self.base.one()] }
    }

    pub fn coeff(&self, f: &Poly<R::Elem>, k: usize) -> R::Elem {
        f.coeffs.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn from_coeffs(&self, c: Vec<R::Elem>) -> Poly<R::Elem> {
        self.normalize(c)
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.normalize(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn shift(&self, f: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Keeps the coefficients of degree below `n`.
    pub fn truncate(&self, f: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        self.normalize(f.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// `f(g(x))`.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = Poly::zero();
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.normalize(
            f.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.base.mul(c, &self.base.from_i64(i as i64))).collect(),
        )
    }

    /// Applies `h` to each coefficient.
    pub fn map_coeffs<F: Fn(&R::Elem) -> R::Elem>(&self, f: &Poly<R::Elem>, h: F) -> Poly<R::Elem> {
        self.normalize(f.coeffs.iter().map(h).collect())
    }

    /// Multiplication truncated below degree `n`.
    pub fn mul_trunc(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let len = (a.coeffs.len() + b.coeffs.len() - 1).min(n);
        let mut out = vec![self.base.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len || self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.normalize(out)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        self.normalize(
            (0..n).map(|i| self.base.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))).collect(),
        )
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        self.normalize(
            (0..n).map(|i| self.base.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))).collect(),
        )
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        self.mul_trunc(a, b, usize::MAX)
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
}

impl<F: Field> PolyRing<F> {
    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.base.inv(b.lead().unwrap()).unwrap();
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.base.mul(&r[k + db], &inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] = self.base.sub(&r[k + j], &self.base.mul(&c, bc));
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.normalize(q), self.normalize(r))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// `a / b` when `b` divides `a`.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.rem(a, b).is_zero()
    }

    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.lead() {
            None => Poly::zero(),
            Some(l) => {
                let inv = self.base.inv(l).unwrap();
                self.scale(f, &inv)
            }
        }
    }

    pub fn is_monic(&self, f: &Poly<F::Elem>) -> bool {
        f.lead().is_some_and(|l| self.base.is_one(l))
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.base.inv(l).unwrap();
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn lcm(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(a, b);
        self.monic(&self.mul(&self.exact_div(a, &g).unwrap(), b))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.ext_gcd(&self.rem(a, m), m);
        (g.degree() == Some(0)).then(|| self.rem(&s, m))
    }

    pub fn mul_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// Applies the Frobenius of the coefficient field to every coefficient.
    pub fn frobenius_coeffs(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.map_coeffs(f, |c| self.base.frobenius(c))
    }

    /// Multiplicity of `g` (nonconstant) as a divisor of `f` (nonzero).
    pub fn multiplicity(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> usize {
        let mut k = 0;
        let mut cur = f.clone();
        while let Some(q) = self.exact_div(&cur, g) {
            k += 1;
            cur = q;
        }
        k
    }

    pub fn is_squarefree(&self, f: &Poly<F::Elem>) -> bool {
        let g = self.gcd(f, &self.derivative(f));
        g.degree() == Some(0)
    }

    /// Resultant of `a` and `b` by the Euclidean algorithm.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let f = &self.base;
        if a.is_zero() || b.is_zero() {
            return f.zero();
        }
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = f.one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return f.zero(),
                Some(d) => d,
            };
            if db == 0 {
                return f.mul(&acc, &f.pow(b.lead().unwrap(), da as u64));
            }
            let r = self.rem(&a, &b);
            if r.is_zero() {
                return f.zero();
            }
            let dr = r.degree().unwrap();
            // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
            if (da * db) % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(b.lead().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
        }
    }
}
