//! Bold rings and modules: free modules over `K[t]`, `K(t)` or the
//! localisation of `K[t]` at a prime, with a `sigma`-semilinear `tau` given
//! by a matrix, `tau(v) = T * sigma(v)`.
//!
//! `sigma` is the coefficient Frobenius `c -> c^q` of `K`, fixing `t`.
//! Completions are handled by the truncated solvers in [`crate::galois`].

use crate::algebra::matrix::{det_field, identity, inverse, kron, mat_mul, mat_vec, Matrix};
use crate::algebra::semilinear::{semilinear_kernel, SemilinearKernel};
use crate::algebra::{Field, Gf, GfElem, Poly, RatField, RatFunc, Ring};
use crate::error::{Error, Result};

/// Which subring of `K(t)` the module lives over.
#[derive(Clone, Debug, PartialEq)]
pub enum RingKind<E> {
    /// `K[t]`.
    Polynomial,
    /// `K(t)`.
    Fractions,
    /// `K[t]` localised at the monic prime `p` of `F_q[t]` (coefficients in
    /// the prime field, embedded in `K`).
    Local(Poly<E>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoldRing<F: Field> {
    pub kt: RatField<F>,
    pub kind: RingKind<F::Elem>,
}

impl<F: Field> BoldRing<F> {
    pub fn polynomial(k: F) -> Self {
        BoldRing { kt: RatField::new(k), kind: RingKind::Polynomial }
    }

    pub fn fractions(k: F) -> Self {
        BoldRing { kt: RatField::new(k), kind: RingKind::Fractions }
    }

    pub fn local(k: F, prime: Poly<F::Elem>) -> Self {
        BoldRing { kt: RatField::new(k), kind: RingKind::Local(prime) }
    }

    pub fn contains(&self, x: &RatFunc<F::Elem>) -> bool {
        match &self.kind {
            RingKind::Polynomial => self.kt.is_poly(x),
            RingKind::Fractions => true,
            RingKind::Local(p) => !self.kt.ring.divides(p, &x.den),
        }
    }

    pub fn is_unit(&self, x: &RatFunc<F::Elem>) -> bool {
        if self.kt.is_zero(x) || !self.contains(x) {
            return false;
        }
        match &self.kind {
            RingKind::Polynomial => x.num.degree() == Some(0),
            RingKind::Fractions => true,
            RingKind::Local(p) => !self.kt.ring.divides(p, &x.num),
        }
    }

    /// `sigma` on one element.
    pub fn sigma(&self, x: &RatFunc<F::Elem>) -> RatFunc<F::Elem> {
        let k = self.kt.base().clone();
        self.kt.map_coeffs(x, |c| k.frobenius(c))
    }

    pub fn sigma_vec(&self, v: &[RatFunc<F::Elem>]) -> Vec<RatFunc<F::Elem>> {
        v.iter().map(|x| self.sigma(x)).collect()
    }

    pub fn sigma_matrix(&self, m: &Matrix<RatFunc<F::Elem>>) -> Matrix<RatFunc<F::Elem>> {
        m.map(|x| self.sigma(x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoldModule<F: Field> {
    pub ring: BoldRing<F>,
    pub tau: Matrix<RatFunc<F::Elem>>,
}

impl<F: Field> BoldModule<F> {
    pub fn new(ring: BoldRing<F>, tau: Matrix<RatFunc<F::Elem>>) -> Result<Self> {
        if !tau.is_square() {
            return Err(Error::Invalid("tau matrix must be square".into()));
        }
        if let Some(x) = tau.data.iter().find(|x| !ring.contains(x)) {
            return Err(Error::Invalid(format!("entry {x:?} is not in the ring")));
        }
        Ok(BoldModule { ring, tau })
    }

    /// The unit object of rank one (`tau = [1]`).
    pub fn unit(ring: BoldRing<F>) -> Self {
        let tau = identity(&ring.kt, 1);
        BoldModule { ring, tau }
    }

    pub fn rank(&self) -> usize {
        self.tau.rows
    }

    pub fn det(&self) -> RatFunc<F::Elem> {
        det_field(&self.ring.kt, &self.tau)
    }

    /// `tau_lin` bijective, i.e. the determinant is a unit of the ring.
    pub fn is_restricted(&self) -> bool {
        self.ring.is_unit(&self.det())
    }

    /// `tau` applied to a vector.
    pub fn apply_tau(&self, v: &[RatFunc<F::Elem>]) -> Vec<RatFunc<F::Elem>> {
        mat_vec(&self.ring.kt, &self.tau, &self.ring.sigma_vec(v))
    }
}

fn same_ring<F: Field>(a: &BoldModule<F>, b: &BoldModule<F>) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::Mismatch("bold modules over different rings".into()));
    }
    Ok(())
}

/// Tensor product; the basis `e_i (x) f_k` has index `i * rank(n) + k`.
pub fn tensor<F: Field>(m: &BoldModule<F>, n: &BoldModule<F>) -> Result<BoldModule<F>> {
    same_ring(m, n)?;
    Ok(BoldModule { ring: m.ring.clone(), tau: kron(&m.ring.kt, &m.tau, &n.tau) })
}

/// Dual module in the dual basis: `tau` is the inverse transpose, so that
/// evaluation `dual(m) (x) m -> unit` commutes with `tau`.
pub fn dual<F: Field>(m: &BoldModule<F>) -> Result<BoldModule<F>> {
    if !m.is_restricted() {
        return Err(Error::NotRestricted);
    }
    let inv = inverse(&m.ring.kt, &m.tau).ok_or(Error::NotRestricted)?;
    Ok(BoldModule { ring: m.ring.clone(), tau: inv.transpose() })
}

/// Internal hom, `dual(m) (x) n`.
pub fn hom_module<F: Field>(m: &BoldModule<F>, n: &BoldModule<F>) -> Result<BoldModule<F>> {
    same_ring(m, n)?;
    if !n.is_restricted() {
        return Err(Error::NotRestricted);
    }
    tensor(&dual(m)?, n)
}

/// Whether the evaluation map `dual(m) (x) m -> unit` commutes with `tau`.
pub fn pairing_commutes<F: Field>(m: &BoldModule<F>) -> Result<bool> {
    let kt = &m.ring.kt;
    let d = dual(m)?;
    let x = tensor(&d, m)?;
    let r = m.rank();
    // Evaluation is the row vector with ones at (i, i).
    let ev = Matrix::from_fn(1, r * r, |_, j| if j / r == j % r { kt.one() } else { kt.zero() });
    // ev(tau(x)) = sigma(ev(x)) for all x iff ev * T = ev, since ev is
    // sigma-fixed.
    Ok(mat_mul(kt, &ev, &x.tau) == ev)
}

/// Basis over `F_q(t)` of the `tau`-invariants of a module over `K(t)`.
pub fn tau_invariants(m: &BoldModule<Gf>, cap: Option<usize>) -> Result<SemilinearKernel> {
    if !m.is_restricted() {
        return Err(Error::NotRestricted);
    }
    semilinear_kernel(&m.ring.kt, &m.tau, 1, cap)
}

/// Field `F_K(X)`: rational functions in `X` with coefficients in `K(t)`.
pub type RatFieldX = RatField<RatField<Gf>>;
/// Element of `F_K(X)`.
pub type RatFuncX = RatFunc<RatFunc<GfElem>>;

/// `sigma` on `F_K(X)`, acting on the `K`-coefficients and fixing `t`, `X`.
pub fn sigma_x(kx: &RatFieldX, f: &RatFuncX) -> RatFuncX {
    let kt = kx.base().clone();
    let k = kt.base().clone();
    kx.map_coeffs(f, |c| kt.map_coeffs(c, |a| k.frobenius(a)))
}

/// Monic denominator in `X`.
pub fn den(f: &RatFuncX) -> Poly<RatFunc<GfElem>> {
    f.den.clone()
}

pub fn lcm_den(kx: &RatFieldX, f: &RatFuncX, g: &RatFuncX) -> Poly<RatFunc<GfElem>> {
    kx.ring.lcm(&f.den, &g.den)
}

/// Denominator of a vector: lcm of the component denominators.
pub fn den_vec(kx: &RatFieldX, v: &[RatFuncX]) -> Poly<RatFunc<GfElem>> {
    v.iter().fold(kx.ring.one(), |acc, x| kx.ring.lcm(&acc, &x.den))
}

/// Membership of `f` in `F(X) (x)_F F_K`, `F = F_q(t)`: returns the
/// `sigma`-fixed multiple of `den(f)` built from its orbit, or `None`.
pub fn in_scalar_extension(kx: &RatFieldX, f: &RatFuncX) -> Option<Poly<RatFunc<GfElem>>> {
    let kt = kx.base().clone();
    let k = kt.base().clone();
    let s = k.degree();
    let ring = &kx.ring;
    let sig = |p: &Poly<RatFunc<GfElem>>| ring.map_coeffs(p, |c| kt.map_coeffs(c, |a| k.frobenius(a)));
    let mut cur = f.den.clone();
    let mut acc = cur.clone();
    for _ in 1..s {
        cur = sig(&cur);
        acc = ring.lcm(&acc, &cur);
    }
    (sig(&acc) == acc).then_some(acc)
}
