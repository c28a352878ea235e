//! Root finding and factorisation of polynomials over finite fields.

use super::field::Ring;
use super::gf::{Gf, GfElem};
use super::matrix::{kernel, Matrix};
use super::poly::{Poly, PolyRing};

type P = Poly<GfElem>;

/// `x^{|F|} mod f`.
fn x_to_q(ring: &PolyRing<Gf>, f: &P) -> P {
    let p = ring.base.p() as u64;
    let mut h = ring.rem(&ring.x(), f);
    for _ in 0..ring.base.degree() {
        h = ring.pow_mod(&h, p, f);
    }
    h
}

/// Trace `sum_{i<m} u^{p^i} mod f` of a residue `u`.
fn trace_mod(ring: &PolyRing<Gf>, u: &P, f: &P) -> P {
    let p = ring.base.p() as u64;
    let mut cur = ring.rem(u, f);
    let mut acc = cur.clone();
    for _ in 1..ring.base.degree() {
        cur = ring.pow_mod(&cur, p, f);
        acc = ring.add(&acc, &cur);
    }
    acc
}

/// Splits the squarefree monic `f` by gcds with `Tr(g*s) - c` for the given
/// separating residues `s`, until `done` holds for every piece.
fn split_with(ring: &PolyRing<Gf>, f: &P, seps: &[P], target: usize) -> Vec<P> {
    let field = &ring.base;
    let mut parts = vec![ring.monic(f)];
    let gammas: Vec<GfElem> = (0..field.degree()).map(|j| field.basis_elem(j)).collect();
    'outer: for s in seps {
        for g in &gammas {
            if parts.len() >= target {
                break 'outer;
            }
            let u = ring.scale(s, g);
            let mut next = Vec::new();
            for part in parts {
                if part.degree().unwrap_or(0) <= 1 {
                    next.push(part);
                    continue;
                }
                let t = trace_mod(ring, &u, &part);
                let mut rest = part.clone();
                for c in 0..field.p() {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let shifted = ring.sub(&t, &ring.constant(field.from_prime(c)));
                    let d = ring.gcd(&rest, &shifted);
                    if d.degree().unwrap_or(0) > 0 && d.degree() < rest.degree() {
                        rest = ring.exact_div(&rest, &d).unwrap();
                        next.push(d);
                    }
                }
                if rest.degree().unwrap_or(0) > 0 {
                    next.push(rest);
                }
            }
            parts = next;
        }
    }
    parts
}

/// Roots of `f` in `field`, sorted by element index, without multiplicity.
pub fn roots(field: &Gf, f: &P) -> Vec<GfElem> {
    let ring = PolyRing::new(field.clone());
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = ring.monic(f);
    let h = x_to_q(&ring, &f);
    let g = ring.gcd(&f, &ring.sub(&h, &ring.x()));
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let parts = split_with(&ring, &g, &[ring.x()], n);
    let mut out: Vec<GfElem> = parts
        .iter()
        .map(|l| {
            assert_eq!(l.degree(), Some(1), "root splitting did not finish");
            field.neg(&l.coeffs[0])
        })
        .collect();
    out.sort_by_key(|r| field.order_key(r));
    out
}

/// `f(x) = g(x^p)` gives `g^{1/p}` with coefficients' p-th roots taken.
fn pth_root(ring: &PolyRing<Gf>, f: &P) -> P {
    let p = ring.base.p() as usize;
    let coeffs = f.coeffs.iter().step_by(p).map(|c| ring.base.frobenius_inv(c)).collect();
    ring.from_coeffs(coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, k)` with the
/// `g` squarefree, pairwise coprime, and `f = prod g^k`.
pub fn squarefree_decomposition(field: &Gf, f: &P) -> Vec<(P, usize)> {
    let ring = PolyRing::new(field.clone());
    let f = ring.monic(f);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = ring.derivative(&f);
    let mut c = ring.gcd(&f, &df);
    let mut w = ring.exact_div(&f, &c).unwrap();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.exact_div(&w, &y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = ring.exact_div(&c, &y).unwrap();
    }
    if c.degree().unwrap_or(0) > 0 {
        let r = pth_root(&ring, &c);
        for (g, k) in squarefree_decomposition(field, &r) {
            out.push((g, k * field.p() as usize));
        }
    }
    out
}

/// Factorisation into monic irreducibles with multiplicity, sorted by degree
/// then coefficients.
pub fn factor(field: &Gf, f: &P) -> Vec<(P, usize)> {
    let ring = PolyRing::new(field.clone());
    let mut out = Vec::new();
    for (g, k) in squarefree_decomposition(field, f) {
        for h in factor_squarefree(&ring, &g) {
            out.push((h, k));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| {
            let ka: Vec<Vec<u32>> = a.0.coeffs.iter().map(|c| field.order_key(c)).collect();
            let kb: Vec<Vec<u32>> = b.0.coeffs.iter().map(|c| field.order_key(c)).collect();
            ka.cmp(&kb)
        })
    });
    out
}

/// Berlekamp factorisation of a squarefree monic polynomial.
fn factor_squarefree(ring: &PolyRing<Gf>, f: &P) -> Vec<P> {
    let field = &ring.base;
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }
    let h = x_to_q(ring, f);
    // Columns: x^{jQ} mod f minus x^j.
    let mut cols = Vec::with_capacity(n);
    let mut cur = ring.one();
    for j in 0..n {
        let mut col: Vec<GfElem> = (0..n).map(|i| ring.coeff(&cur, i)).collect();
        col[j] = field.sub(&col[j], &field.one());
        cols.push(col);
        cur = ring.mul_mod(&cur, &h, f);
    }
    let m = Matrix::from_cols(n, &cols);
    let ker = kernel(field, &m);
    let k = ker.len();
    if k == 1 {
        return vec![f.clone()];
    }
    let seps: Vec<P> = ker.into_iter().map(|v| ring.from_coeffs(v)).collect();
    let parts = split_with(ring, f, &seps, k);
    assert_eq!(parts.len(), k, "Berlekamp splitting incomplete");
    parts
}

/// Whether `f` is irreducible over `field`.
pub fn is_irreducible(field: &Gf, f: &P) -> bool {
    let fs = factor(field, f);
    fs.len() == 1 && fs[0].1 == 1
}
