//! Fixed points of semilinear maps `v -> delta * sigma^e(v)` over `K(t)`.
//!
//! Solutions are found by flattening polynomial unknowns of bounded degree
//! to a linear system over the prime field; the coefficient Frobenius is
//! prime-field linear on every finite level.

use super::field::Ring;
use super::fp::{FpMat, Subspace};
use super::gf::{Gf, GfElem};
use super::matrix::{det_field, mat_vec, rank, Matrix};
use super::poly::{Poly, PolyRing};
use super::polymat::{clear_denominators, max_degree};
use super::ratfunc::{RatField, RatFunc};
use crate::error::{Error, Result};

type P = Poly<GfElem>;

/// Prime-field kernel of a prime-field-linear operator on tuples of
/// polynomials over `k` of degree at most `deg`.
pub fn poly_kernel<Op>(k: &Gf, count: usize, deg: usize, op: Op) -> Vec<Vec<P>>
where
    Op: Fn(&[P]) -> Vec<P>,
{
    let ring = PolyRing::new(k.clone());
    let s = k.degree();
    let nunk = count * (deg + 1) * s;
    let mut cols: Vec<Vec<P>> = Vec::with_capacity(nunk);
    let mut out_len = 0usize;
    let mut out_count = 0usize;
    for i in 0..count {
        for j in 0..=deg {
            for l in 0..s {
                let mut unk = vec![Poly::zero(); count];
                let mut b = k.zero();
                b[l] = 1;
                unk[i] = ring.monomial(b, j);
                let img = op(&unk);
                out_count = img.len();
                out_len = out_len.max(img.iter().map(|x| x.coeffs.len()).max().unwrap_or(0));
                cols.push(img);
            }
        }
    }
    let rows = out_count * out_len * s;
    let mut m = FpMat::zeros(k.p(), rows, nunk);
    for (c, img) in cols.iter().enumerate() {
        for (a, poly) in img.iter().enumerate() {
            for (j, coef) in poly.coeffs.iter().enumerate() {
                for (l, x) in coef.iter().enumerate() {
                    if *x != 0 {
                        m.set((a * out_len + j) * s + l, c, *x);
                    }
                }
            }
        }
    }
    m.kernel()
        .into_iter()
        .map(|v| {
            (0..count)
                .map(|i| {
                    let coeffs = (0..=deg)
                        .map(|j| {
                            let o = (i * (deg + 1) + j) * s;
                            v[o..o + s].to_vec()
                        })
                        .collect();
                    ring.from_coeffs(coeffs)
                })
                .collect()
        })
        .collect()
}

/// Output of [`semilinear_kernel`].
#[derive(Clone, Debug)]
pub struct SemilinearKernel {
    /// Basis over the fixed field of `sigma^e` in `K(t)`.
    pub basis: Vec<Vec<RatFunc<GfElem>>>,
    /// Degree cap at which the span was last computed.
    pub cap: usize,
    /// Whether two consecutive caps gave the same span.
    pub saturated: bool,
}

fn sigma_e(ring: &PolyRing<Gf>, f: &P, e: u32) -> P {
    ring.map_coeffs(f, |c| ring.base.frobenius_e(c, e))
}

/// Kernel at a fixed cap; returns vectors with entries in `K(t)`.
fn kernel_at_cap(kt: &RatField<Gf>, delta: &Matrix<RatFunc<GfElem>>, e: u32, cap: usize) -> Vec<Vec<RatFunc<GfElem>>> {
    let ring = &kt.ring;
    let k = ring.base.clone();
    let r = delta.rows;
    let (num, h) = clear_denominators(kt, delta);
    // Denominators of solutions divide the orbit product of h.
    let mut big_h = ring.one();
    if h.deg() > 0 {
        let steps = k.degree() * h.deg() as usize;
        let mut cur = h.clone();
        for _ in 0..steps {
            big_h = ring.mul(&big_h, &cur);
            cur = sigma_e(ring, &cur, e);
        }
    }
    let lhs = ring.mul(&h, &sigma_e(ring, &big_h, e));
    let deg = cap + big_h.deg().max(0) as usize;
    let sols = poly_kernel(&k, r, deg, |w| {
        let sw: Vec<P> = w.iter().map(|x| sigma_e(ring, x, e)).collect();
        let dsw = mat_vec(ring, &num, &sw);
        (0..r).map(|i| ring.sub(&ring.mul(&lhs, &w[i]), &ring.mul(&big_h, &dsw[i]))).collect()
    });
    // Keep a subset independent over K(t).
    let mut chosen: Vec<Vec<RatFunc<GfElem>>> = Vec::new();
    for w in sols {
        let v: Vec<RatFunc<GfElem>> = w.iter().map(|x| kt.frac(x.clone(), big_h.clone()).unwrap()).collect();
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let m = Matrix::from_rows(trial.clone());
        if rank(kt, &m) == trial.len() {
            chosen.push(v);
            if chosen.len() == r {
                break;
            }
        }
    }
    chosen
}

/// Fixed points `{v : delta * sigma^e(v) = v}` over `K(t)`, with the degree
/// cap doubled until the span is stable.
pub fn semilinear_kernel(
    kt: &RatField<Gf>,
    delta: &Matrix<RatFunc<GfElem>>,
    e: u32,
    cap: Option<usize>,
) -> Result<SemilinearKernel> {
    assert!(delta.is_square());
    assert!(e >= 1);
    if kt.is_zero(&det_field(kt, delta)) {
        return Err(Error::NotRestricted);
    }
    let (num, h) = clear_denominators(kt, delta);
    let start = cap.unwrap_or((max_degree(&num).max(h.deg()).max(0) as usize) + 8);
    let limit = start * 16;
    let mut c = start;
    let mut basis = kernel_at_cap(kt, delta, e, c);
    loop {
        if basis.len() == delta.rows {
            return Ok(SemilinearKernel { basis, cap: c, saturated: true });
        }
        let next = c * 2;
        if next > limit {
            return Err(Error::CapExhausted { cap: c });
        }
        let wider = kernel_at_cap(kt, delta, e, next);
        if wider.len() == basis.len() {
            return Ok(SemilinearKernel { basis, cap: next, saturated: true });
        }
        basis = wider;
        c = next;
    }
}

/// Whether `v` satisfies `delta * sigma^e(v) = v` exactly.
pub fn is_fixed(kt: &RatField<Gf>, delta: &Matrix<RatFunc<GfElem>>, e: u32, v: &[RatFunc<GfElem>]) -> bool {
    let k = kt.base().clone();
    let sv: Vec<RatFunc<GfElem>> = v.iter().map(|x| kt.map_coeffs(x, |c| k.frobenius_e(c, e))).collect();
    mat_vec(kt, delta, &sv) == v
}

/// Dimension over the prime field of a family of prime-field vectors.
pub fn prime_span_dim(p: u32, n: usize, vecs: &[Vec<u32>]) -> usize {
    Subspace::spanned_by(p, n, vecs).dim()
}
