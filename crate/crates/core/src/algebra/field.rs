//! Ring and field handles.
//!
//! Fields here are chosen at runtime (a finite field is defined by a stored
//! modulus), so arithmetic goes through a handle instead of operator traits
//! on bare elements.

use std::fmt::Debug;
use std::hash::Hash;

/// A commutative ring given by a handle; elements are plain values.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field of characteristic `p` carrying the Frobenius `c -> c^q`.
///
/// `q` is the size of the constant field and is always equal to the
/// characteristic in this crate.
pub trait Field: Ring + PartialEq {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u32;
    /// `c -> c^q`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;

    /// Coordinates over the prime field for a family of elements, chosen so
    /// that prime-field linear relations among `xs` are exactly the linear
    /// relations among the returned vectors. All vectors have equal length.
    fn flatten(&self, xs: &[Self::Elem]) -> Vec<Vec<u32>>;

    /// Minimal polynomial over the prime field, ascending coefficients, or
    /// `None` when `a` is transcendental.
    fn prime_minpoly(&self, a: &Self::Elem) -> Option<Vec<u32>>;

    /// Whether the field is finite.
    fn is_finite(&self) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn frobenius_pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..e {
            x = self.frobenius(&x);
        }
        x
    }
}
