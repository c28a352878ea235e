//! Matrices over `K[t]`: Smith normal form, characteristic ideals and
//! lattice spans.

use super::field::{Field, Ring};
use super::matrix::{adjugate, det, identity, mat_mul, Matrix};
use super::poly::{Poly, PolyRing};
use super::ratfunc::{RatField, RatFunc};
use crate::error::{Error, Result};

pub type PolyMatrix<E> = Matrix<Poly<E>>;

/// Result of [`smith_form`]: `u * m * v = d` with `u`, `v` unimodular and
/// `d` diagonal with monic divisibility chain (zeros last).
#[derive(Clone, Debug)]
pub struct Smith<E> {
    pub u: PolyMatrix<E>,
    pub d: PolyMatrix<E>,
    pub v: PolyMatrix<E>,
}

impl<E: Clone> Smith<E> {
    pub fn divisors(&self) -> Vec<Poly<E>> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn swap_rows<E: Clone>(m: &mut Matrix<E>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols<E: Clone>(m: &mut Matrix<E>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// row[dst] += c * row[src]
fn add_row<F: Field>(r: &PolyRing<F>, m: &mut PolyMatrix<F::Elem>, dst: usize, src: usize, c: &Poly<F::Elem>) {
    for j in 0..m.cols {
        let v = r.add(m.get(dst, j), &r.mul(c, m.get(src, j)));
        m.set(dst, j, v);
    }
}

/// col[dst] += c * col[src]
fn add_col<F: Field>(r: &PolyRing<F>, m: &mut PolyMatrix<F::Elem>, dst: usize, src: usize, c: &Poly<F::Elem>) {
    for i in 0..m.rows {
        let v = r.add(m.get(i, dst), &r.mul(c, m.get(i, src)));
        m.set(i, dst, v);
    }
}

pub fn smith_form<F: Field>(r: &PolyRing<F>, m: &PolyMatrix<F::Elem>) -> Smith<F::Elem> {
    let (nr, nc) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = identity(r, nr);
    let mut v = identity(r, nc);
    for k in 0..nr.min(nc) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..nr {
                for j in k..nc {
                    if let Some(dg) = d.get(i, j).degree() {
                        if best.is_none_or(|b| dg < b.2) {
                            best = Some((i, j, dg));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return finish(r, u, d, v);
            };
            swap_rows(&mut d, k, bi);
            swap_rows(&mut u, k, bi);
            swap_cols(&mut d, k, bj);
            swap_cols(&mut v, k, bj);
            let piv = d.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..nr {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let (q, rem) = r.divrem(d.get(i, k), &piv);
                let nq = r.neg(&q);
                add_row(r, &mut d, i, k, &nq);
                add_row(r, &mut u, i, k, &nq);
                dirty |= !rem.is_zero();
            }
            for j in k + 1..nc {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let (q, rem) = r.divrem(d.get(k, j), &piv);
                let nq = r.neg(&q);
                add_col(r, &mut d, j, k, &nq);
                add_col(r, &mut v, j, k, &nq);
                dirty |= !rem.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..nr).find(|&i| (k + 1..nc).any(|j| !r.divides(&piv, d.get(i, j))));
            if let Some(i) = bad {
                let one = r.one();
                add_row(r, &mut d, k, i, &one);
                add_row(r, &mut u, k, i, &one);
                continue;
            }
            break;
        }
        let lead = d.get(k, k).lead().unwrap().clone();
        let inv = r.constant(r.base.inv(&lead).unwrap());
        for j in 0..nc {
            let x = r.mul(d.get(k, j), &inv);
            d.set(k, j, x);
        }
        for j in 0..nr {
            let x = r.mul(u.get(k, j), &inv);
            u.set(k, j, x);
        }
    }
    finish(r, u, d, v)
}

fn finish<F: Field>(
    _r: &PolyRing<F>,
    u: PolyMatrix<F::Elem>,
    d: PolyMatrix<F::Elem>,
    v: PolyMatrix<F::Elem>,
) -> Smith<F::Elem> {
    Smith { u, d, v }
}

/// Monic generator of the characteristic ideal (product of divisors).
pub fn char_ideal<F: Field>(r: &PolyRing<F>, divisors: &[Poly<F::Elem>]) -> Result<Poly<F::Elem>> {
    let mut acc = r.one();
    for d in divisors {
        if d.is_zero() {
            return Err(Error::NotTorsion);
        }
        acc = r.mul(&acc, d);
    }
    Ok(r.monic(&acc))
}

/// Inverse of a unimodular matrix (determinant a nonzero constant).
pub fn inverse_unimodular<F: Field>(r: &PolyRing<F>, m: &PolyMatrix<F::Elem>) -> Option<PolyMatrix<F::Elem>> {
    let dt = det(r, m);
    if dt.degree() != Some(0) {
        return None;
    }
    let inv = r.constant(r.base.inv(&dt.coeffs[0]).unwrap());
    Some(adjugate(r, m).map(|x| r.mul(x, &inv)))
}

/// A basis (as columns of a square matrix) of the `K[t]`-span of the
/// columns of `gens`, which must have full row rank.
pub fn column_span_basis<F: Field>(r: &PolyRing<F>, gens: &PolyMatrix<F::Elem>) -> Result<PolyMatrix<F::Elem>> {
    let s = smith_form(r, gens);
    let n = gens.rows;
    if (0..n).any(|i| s.d.get(i, i).is_zero()) {
        return Err(Error::Invalid("generators do not have full rank".into()));
    }
    let uinv = inverse_unimodular(r, &s.u).ok_or_else(|| Error::Internal("non-unimodular transform".into()))?;
    let diag = Matrix::from_fn(n, n, |i, j| if i == j { s.d.get(i, i).clone() } else { r.zero() });
    Ok(mat_mul(r, &uinv, &diag))
}

/// Entrywise coefficient Frobenius (`sigma` fixing `t`).
pub fn sigma_matrix<F: Field>(r: &PolyRing<F>, m: &PolyMatrix<F::Elem>) -> PolyMatrix<F::Elem> {
    m.map(|x| r.frobenius_coeffs(x))
}

/// Embeds a polynomial matrix into matrices over `K(t)`.
pub fn to_rational<F: Field>(kt: &RatField<F>, m: &PolyMatrix<F::Elem>) -> Matrix<RatFunc<F::Elem>> {
    m.map(|x| kt.from_poly(x.clone()))
}

/// Common denominator form: `m = num / den` with `num` polynomial.
pub fn clear_denominators<F: Field>(
    kt: &RatField<F>,
    m: &Matrix<RatFunc<F::Elem>>,
) -> (PolyMatrix<F::Elem>, Poly<F::Elem>) {
    let r = &kt.ring;
    let mut den = r.one();
    for x in &m.data {
        den = r.lcm(&den, &x.den);
    }
    let num = m.map(|x| r.mul(&x.num, &r.exact_div(&den, &x.den).unwrap()));
    (num, den)
}

/// Maximum entry degree (`-1` for the zero matrix).
pub fn max_degree<E>(m: &PolyMatrix<E>) -> i64 {
    m.data.iter().map(|x| x.deg()).max().unwrap_or(-1)
}
