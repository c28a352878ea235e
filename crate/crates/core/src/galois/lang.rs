//! Lang systems `v = B sigma(v)` over `L (x) F_p[t]/(m)`.
//!
//! `B` has entries in `K[t]` and is invertible modulo `m`. By Lang's
//! theorem the solutions over the algebraic closure form an `F_p`-space of
//! dimension `rank * deg m`. They are all rational over a level `L` that is
//! found up front: with `B_s = B sigma(B) ... sigma^{s-1}(B)` one has
//! `sigma^s(v) = B_s^{-1} v`, so every solution is fixed by `sigma^{s j}`
//! once `B_s^j = 1`.

use std::sync::Arc;

use crate::algebra::fp::Subspace;
use crate::algebra::matrix::{det, identity, mat_mul, mat_vec, Matrix};
use crate::algebra::{tower_for, FieldTower, FpMat, Gf, GfElem, KPoly, PolyRing, Ring};
use crate::error::{Error, Result};

/// `L[t]/(m)` for monic `m` with prime-field coefficients. Elements are
/// coefficient vectors of fixed length `deg m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotRing {
    pub field: Gf,
    modulus: Vec<u32>,
}

impl SlotRing {
    pub fn new(field: Gf, modulus: &[u32]) -> Self {
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1, "modulus must be monic of positive degree");
        SlotRing { field, modulus: modulus.to_vec() }
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn slots(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduction of a polynomial over `L`.
    pub fn from_poly(&self, f: &[GfElem]) -> Vec<GfElem> {
        let l = &self.field;
        let d = self.slots();
        let mut c: Vec<GfElem> = f.to_vec();
        let p = l.p();
        for top in (d..c.len()).rev() {
            let lead = c[top].clone();
            if l.is_zero(&lead) {
                continue;
            }
            for j in 0..d {
                let mj = self.modulus[j];
                if mj != 0 {
                    let term = l.mul(&lead, &l.from_prime(p - mj));
                    c[top - d + j] = l.add(&c[top - d + j], &term);
                }
            }
            c[top] = l.zero();
        }
        c.resize(d, l.zero());
        c
    }

    /// An element of `F_p[t]` (ascending coefficients).
    pub fn from_prime_poly(&self, a: &[u32]) -> Vec<GfElem> {
        let f: Vec<GfElem> = a.iter().map(|&c| self.field.from_prime(c)).collect();
        self.from_poly(&f)
    }

    /// `t^j`.
    pub fn t_pow(&self, j: usize) -> Vec<GfElem> {
        let mut a = vec![0u32; j + 1];
        a[j] = 1;
        self.from_prime_poly(&a)
    }

    /// Coefficientwise `x -> x^{p^e}`.
    pub fn frob(&self, a: &[GfElem], e: u32) -> Vec<GfElem> {
        a.iter().map(|x| self.field.frobenius_e(x, e)).collect()
    }

    pub fn is_unit(&self, a: &[GfElem]) -> bool {
        let r = PolyRing::new(self.field.clone());
        let f = r.from_coeffs(a.to_vec());
        let m = r.from_coeffs(self.modulus.iter().map(|&c| self.field.from_prime(c)).collect());
        r.gcd(&f, &m).degree() == Some(0)
    }

    pub fn inv(&self, a: &[GfElem]) -> Option<Vec<GfElem>> {
        let r = PolyRing::new(self.field.clone());
        let f = r.from_coeffs(a.to_vec());
        let m = r.from_coeffs(self.modulus.iter().map(|&c| self.field.from_prime(c)).collect());
        r.inv_mod(&f, &m).map(|g| self.from_poly(&g.coeffs))
    }

    /// The element with prime-field coefficients `a` (coefficients in the
    /// prime subfield), if it lies in `F_p[t]/(m)`.
    pub fn to_prime_poly(&self, a: &[GfElem]) -> Option<Vec<u32>> {
        let mut out: Vec<u32> = a.iter().map(|x| self.field.to_prime(x)).collect::<Option<_>>()?;
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    /// Same modulus over a larger level, through the tower.
    pub fn embed_into(&self, a: &[GfElem], tower: &FieldTower, target: &SlotRing) -> Vec<GfElem> {
        a.iter().map(|x| tower.embed(x, self.field.degree(), target.field.degree())).collect()
    }
}

impl Ring for SlotRing {
    type Elem = Vec<GfElem>;

    fn zero(&self) -> Vec<GfElem> {
        vec![self.field.zero(); self.slots()]
    }
    fn one(&self) -> Vec<GfElem> {
        self.from_prime_poly(&[1])
    }
    fn is_zero(&self, a: &Vec<GfElem>) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }
    fn add(&self, a: &Vec<GfElem>, b: &Vec<GfElem>) -> Vec<GfElem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<GfElem>, b: &Vec<GfElem>) -> Vec<GfElem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<GfElem>) -> Vec<GfElem> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<GfElem>, b: &Vec<GfElem>) -> Vec<GfElem> {
        let l = &self.field;
        let d = self.slots();
        let mut c = vec![l.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if l.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !l.is_zero(y) {
                    c[i + j] = l.add(&c[i + j], &l.mul(x, y));
                }
            }
        }
        self.from_poly(&c)
    }
    fn from_i64(&self, n: i64) -> Vec<GfElem> {
        let p = self.field.p() as i64;
        self.from_prime_poly(&[n.rem_euclid(p) as u32])
    }
}

/// Vector over a [`SlotRing`] flattened to prime-field coordinates:
/// component, then `t`-power, then field coordinate.
pub fn flatten(v: &[Vec<GfElem>]) -> Vec<u32> {
    v.iter().flat_map(|s| s.iter().flat_map(|x| x.iter().copied())).collect()
}

pub fn unflatten(ring: &SlotRing, rank: usize, x: &[u32]) -> Vec<Vec<GfElem>> {
    let m = ring.field.degree();
    let d = ring.slots();
    (0..rank).map(|i| (0..d).map(|l| x[(i * d + l) * m..(i * d + l + 1) * m].to_vec()).collect()).collect()
}

/// Solutions of a Lang system.
#[derive(Clone, Debug)]
pub struct LangSolution {
    pub tower: Arc<FieldTower>,
    /// Degree over `F_p` of the field `L` holding the solutions.
    pub level: usize,
    pub ring: SlotRing,
    pub rank: usize,
    /// `F_p`-basis of the solution space.
    pub basis: Vec<Vec<Vec<GfElem>>>,
}

impl LangSolution {
    /// Prime-field coordinates of a solution in [`Self::basis`].
    pub fn coords(&self, v: &[Vec<GfElem>]) -> Option<Vec<u32>> {
        let cols: Vec<Vec<u32>> = self.basis.iter().map(|b| flatten(b)).collect();
        let n = cols.first().map_or(0, |c| c.len());
        FpMat::from_cols(self.ring.field.p(), n, &cols).solve(&flatten(v))
    }
}

/// `B` reduced modulo `m` over `K`, as a matrix over a [`SlotRing`].
pub fn reduce_matrix(k: &Gf, b: &Matrix<KPoly>, modulus: &[u32]) -> Matrix<Vec<GfElem>> {
    let sr = SlotRing::new(k.clone(), modulus);
    b.map(|f| sr.from_poly(&f.coeffs))
}

/// Multiplicative order of `b` in `GL_r(ring)`, or `None` past `cap`.
fn matrix_order(ring: &SlotRing, b: &Matrix<Vec<GfElem>>, cap: usize) -> Option<usize> {
    let id = identity(ring, b.rows);
    let mut cur = b.clone();
    for j in 1..=cap {
        if cur == id {
            return Some(j);
        }
        cur = mat_mul(ring, &cur, b);
    }
    None
}

/// Solves `v = B sigma(v)` for `B` over `K[t]/(m)` given as a reduced
/// matrix over `SlotRing(K, m)`. The solution level is capped at
/// `max_level`.
pub fn lang_solve_reduced(k: &Gf, b: &Matrix<Vec<GfElem>>, modulus: &[u32], max_level: usize) -> Result<LangSolution> {
    let kr = SlotRing::new(k.clone(), modulus);
    let r = b.rows;
    let s = k.degree();
    let tower = tower_for(k);
    if !kr.is_unit(&det(&kr, b)) {
        return Err(Error::Hypothesis("tau is not bijective modulo the given ideal".into()));
    }
    let mut bs = identity(&kr, r);
    let mut cur = b.clone();
    for _ in 0..s {
        bs = mat_mul(&kr, &bs, &cur);
        cur = cur.map(|x| kr.frob(x, 1));
    }
    let j = matrix_order(&kr, &bs, max_level / s).ok_or(Error::EscalationCap { cap: max_level })?;
    let level = s * j;
    let lr = SlotRing::new(tower.level(level), modulus);
    let bl = b.map(|x| kr.embed_into(x, &tower, &lr));
    let d = lr.slots();
    let n = r * d * level;
    let p = k.p();
    let sys = FpMat::from_linear_map(p, n, |x| {
        let v = unflatten(&lr, r, x);
        let sv: Vec<Vec<GfElem>> = v.iter().map(|c| lr.frob(c, 1)).collect();
        let bv = mat_vec(&lr, &bl, &sv);
        let diff: Vec<Vec<GfElem>> = v.iter().zip(&bv).map(|(a, b)| lr.sub(a, b)).collect();
        flatten(&diff)
    });
    let ker = sys.kernel();
    if ker.len() != r * d {
        return Err(Error::Internal(format!("Lang system has {} solutions, expected dimension {}", ker.len(), r * d)));
    }
    let basis = ker.iter().map(|x| unflatten(&lr, r, x)).collect();
    Ok(LangSolution { tower, level, ring: lr, rank: r, basis })
}

pub fn lang_solve(k: &Gf, b: &Matrix<KPoly>, modulus: &[u32], max_level: usize) -> Result<LangSolution> {
    lang_solve_reduced(k, &reduce_matrix(k, b, modulus), modulus, max_level)
}

/// Free basis over `F_p[t]/(p^n)` of the solution module, chosen greedily
/// among the prime-field basis vectors.
pub fn free_basis(sol: &LangSolution, prime: &[u32]) -> Result<Vec<Vec<Vec<GfElem>>>> {
    let ring = &sol.ring;
    let d = ring.slots();
    let p = ring.field.p();
    let dim = flatten(&sol.basis[0]).len();
    let scale = |v: &[Vec<GfElem>], c: &Vec<GfElem>| -> Vec<Vec<GfElem>> { v.iter().map(|x| ring.mul(x, c)).collect() };
    let prime_degree = prime.len() - 1;
    let pe = ring.from_prime_poly(prime);
    let mut span = Subspace::new(p, dim);
    for b in &sol.basis {
        span.insert(&flatten(&scale(b, &pe)));
    }
    let mut chosen = Vec::new();
    for b in &sol.basis {
        if chosen.len() == sol.rank {
            break;
        }
        if span.contains(&flatten(b)) {
            continue;
        }
        for l in 0..prime_degree.min(d) {
            span.insert(&flatten(&scale(b, &ring.t_pow(l))));
        }
        chosen.push(b.clone());
    }
    if chosen.len() != sol.rank {
        return Err(Error::Internal("solution module is not free of full rank".into()));
    }
    Ok(chosen)
}

/// Matrix over `F_p[t]/(m)` (entries ascending in `t`) of `sigma^e` on a
/// free basis: column `i` holds the coordinates of `sigma^e(basis_i)`.
pub fn frobenius_on_basis(ring: &SlotRing, basis: &[Vec<Vec<GfElem>>], e: u32) -> Result<Matrix<Vec<u32>>> {
    let r = basis.len();
    let d = ring.slots();
    let p = ring.field.p();
    let mut cols = Vec::with_capacity(r * d);
    for b in basis {
        for l in 0..d {
            let tl = ring.t_pow(l);
            cols.push(flatten(&b.iter().map(|x| ring.mul(x, &tl)).collect::<Vec<_>>()));
        }
    }
    let n = cols.first().map_or(0, |c| c.len());
    let sys = FpMat::from_cols(p, n, &cols);
    let mut out = Matrix::from_fn(r, r, |_, _| Vec::new());
    for (i, b) in basis.iter().enumerate() {
        let img: Vec<Vec<GfElem>> = b.iter().map(|x| ring.frob(x, e)).collect();
        let c = sys
            .solve(&flatten(&img))
            .ok_or_else(|| Error::Internal("Frobenius image outside the solution span".into()))?;
        for j in 0..r {
            let mut coeffs = c[j * d..(j + 1) * d].to_vec();
            while coeffs.last() == Some(&0) {
                coeffs.pop();
            }
            out.set(j, i, coeffs);
        }
    }
    Ok(out)
}
