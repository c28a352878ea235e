//! Finite torsion modules with bijective `tau_lin` and finite
//! `F_q[t]`-modules with a Frobenius action: the functors `rq` (fixed
//! points of `tau` over a large enough finite field) and `dq` (Frobenius
//! invariants of `L (x) V`), with isomorphism searches in both categories.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lang::lang_solve_reduced;
use crate::algebra::matrix::{det_field, inverse, mat_mul, rank, Matrix};
use crate::algebra::polymat::smith_form;
use crate::algebra::{tower_for, Fp, FpMat, Gf, GfElem, Poly, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::motive::torsion::{sigma_mat, TorsionBoldModule};
use crate::motive::Base;

/// Finite `F_q[t]`-module `V` (an `F_q`-space with the matrix of `t`) with
/// the matrix of the Frobenius `x -> x^{|K|}` in the same basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionGaloisRep {
    pub q: u32,
    /// `[K : F_q]`.
    pub k_degree: usize,
    /// Degree over `F_q` of a field over which the representation is
    /// realised: `k_degree` times the order of the Frobenius.
    pub level: usize,
    pub t_action: FpMat,
    pub frobenius: FpMat,
    /// Nonunit elementary divisors of `V` over `F_q[t]`, monic ascending.
    pub divisors: Vec<Vec<u32>>,
}

/// Order of an invertible prime-field matrix, or `None` past `cap`.
fn fp_order(m: &FpMat, cap: usize) -> Option<usize> {
    let id = FpMat::identity(m.p, m.rows);
    let mut cur = m.clone();
    for j in 1..=cap {
        if cur == id {
            return Some(j);
        }
        cur = cur.mul(m);
    }
    None
}

fn fp_divisors(t: &FpMat) -> Vec<Vec<u32>> {
    let ring = PolyRing::new(Fp::new(t.p));
    let n = t.rows;
    let m = Matrix::from_fn(n, n, |i, j| {
        let c = ring.constant((t.p - t.get(i, j)) % t.p);
        if i == j {
            ring.add(&c, &ring.x())
        } else {
            c
        }
    });
    smith_form(&ring, &m)
        .divisors()
        .into_iter()
        .filter(|d| d.degree().unwrap_or(1) > 0)
        .map(|d| ring.monic(&d).coeffs)
        .collect()
}

impl TorsionGaloisRep {
    /// Validates that the Frobenius is invertible and `F_q[t]`-linear.
    pub fn new(q: u32, k_degree: usize, t_action: FpMat, frobenius: FpMat, cap: usize) -> Result<Self> {
        let n = t_action.rows;
        if t_action.cols != n || frobenius.rows != n || frobenius.cols != n {
            return Err(Error::Invalid("action matrices must be square of equal size".into()));
        }
        if n > 0 && frobenius.rank() != n {
            return Err(Error::Invalid("Frobenius matrix is not invertible".into()));
        }
        if t_action.mul(&frobenius) != frobenius.mul(&t_action) {
            return Err(Error::Invalid("Frobenius does not commute with t".into()));
        }
        let ord = fp_order(&frobenius, cap.max(1)).ok_or(Error::EscalationCap { cap })?;
        let divisors = fp_divisors(&t_action);
        Ok(TorsionGaloisRep { q, k_degree, level: k_degree * ord, t_action, frobenius, divisors })
    }

    pub fn dim(&self) -> usize {
        self.t_action.rows
    }
}

/// `tau`-fixed points of `t` over the level where they all live, as an
/// `F_q`-basis of vectors over that level, plus the representation.
pub struct RqSolution {
    pub rep: TorsionGaloisRep,
    pub field: Gf,
    pub basis: Vec<Vec<GfElem>>,
}

pub fn rq(t: &TorsionBoldModule<Gf>) -> Result<TorsionGaloisRep> {
    Ok(rq_solutions(t, super::DEFAULT_MAX_LEVEL)?.rep)
}

pub fn rq_solutions(t: &TorsionBoldModule<Gf>, cap: usize) -> Result<RqSolution> {
    let k = &t.base.k;
    let s = k.degree();
    let q = k.p();
    let n = t.dim();
    if n == 0 {
        let e = FpMat::zeros(q, 0, 0);
        let rep = TorsionGaloisRep { q, k_degree: s, level: s, t_action: e.clone(), frobenius: e, divisors: vec![] };
        return Ok(RqSolution { rep, field: k.clone(), basis: vec![] });
    }
    if !t.tau_lin_bijective() {
        return Err(Error::Hypothesis("tau_lin is not bijective".into()));
    }
    let b = t.b.map(|x| vec![x.clone()]);
    let sol = lang_solve_reduced(k, &b, &[0, 1], cap)?;
    let l = sol.ring.field.clone();
    let tower = tower_for(k);
    let basis: Vec<Vec<GfElem>> = sol.basis.iter().map(|v| v.iter().map(|c| c[0].clone()).collect()).collect();
    // The L-span of the fixed points is all of L (x) T.
    let wmat = Matrix::from_cols(n, &basis);
    if rank(&l, &wmat) != n {
        return Err(Error::Internal("fixed points do not span the module".into()));
    }
    let tl = t.t_action.map(|x| tower.embed(x, s, sol.level));
    let cols = Matrix::from_cols(n, &basis);
    let fp_basis = FpMat::from_cols(q, n * sol.level, &basis.iter().map(|v| flatten_vec(v)).collect::<Vec<_>>());
    let coords = |v: &[GfElem]| -> Result<Vec<u32>> {
        fp_basis.solve(&flatten_vec(v)).ok_or_else(|| Error::Internal("image is not a fixed point".into()))
    };
    let tv = mat_mul(&l, &tl, &cols);
    let mut tcols = Vec::with_capacity(n);
    let mut fcols = Vec::with_capacity(n);
    for (j, v) in basis.iter().enumerate() {
        tcols.push(coords(&tv.col(j))?);
        let fv: Vec<GfElem> = v.iter().map(|x| l.frobenius_e(x, s as u32)).collect();
        fcols.push(coords(&fv)?);
    }
    let rep = TorsionGaloisRep::new(q, s, FpMat::from_cols(q, n, &tcols), FpMat::from_cols(q, n, &fcols), cap)?;
    Ok(RqSolution { rep, field: l, basis })
}

fn flatten_vec(v: &[GfElem]) -> Vec<u32> {
    v.iter().flat_map(|x| x.iter().copied()).collect()
}

/// The torsion module `(L (x) V)^{Frobenius}` over `K`, with `tau` induced
/// by the coefficient Frobenius and `t` acting through `V`.
pub fn dq(base: &Base<Gf>, v: &TorsionGaloisRep) -> Result<TorsionBoldModule<Gf>> {
    let k = &base.k;
    let s = k.degree();
    if v.q != k.p() || v.k_degree != s {
        return Err(Error::Mismatch("representation defined over a different field".into()));
    }
    let n = v.dim();
    if n == 0 {
        return Ok(TorsionBoldModule::zero(base));
    }
    let level = v.level;
    let tower = tower_for(k);
    let l = tower.level(level);
    let q = k.p();
    let m = level;
    // w = R sigma^s(w) over L^n.
    let sys = FpMat::from_linear_map(q, n * m, |x| {
        let w: Vec<GfElem> = (0..n).map(|i| x[i * m..(i + 1) * m].to_vec()).collect();
        let fw: Vec<GfElem> = w.iter().map(|c| l.frobenius_e(c, s as u32)).collect();
        let mut out = Vec::with_capacity(n * m);
        for i in 0..n {
            let mut acc = w[i].clone();
            for j in 0..n {
                let c = v.frobenius.get(i, j);
                if c != 0 {
                    acc = l.sub(&acc, &l.mul(&l.from_prime(c), &fw[j]));
                }
            }
            out.extend(acc);
        }
        out
    });
    let ker = sys.kernel();
    if ker.len() != s * n {
        return Err(Error::Internal(format!(
            "invariant space has dimension {} over F_q, expected {}",
            ker.len(),
            s * n
        )));
    }
    let mut chosen: Vec<Vec<GfElem>> = Vec::with_capacity(n);
    for x in &ker {
        let w: Vec<GfElem> = (0..n).map(|i| x[i * m..(i + 1) * m].to_vec()).collect();
        let mut trial = chosen.clone();
        trial.push(w.clone());
        if rank(&l, &Matrix::from_cols(n, &trial)) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() != n {
        return Err(Error::Internal("invariants do not span over L".into()));
    }
    let w = Matrix::from_cols(n, &chosen);
    let winv = inverse(&l, &w).unwrap();
    let b = mat_mul(&l, &winv, &sigma_mat(&l, &w));
    let a = Matrix::from_fn(n, n, |i, j| l.from_prime(v.t_action.get(i, j)));
    let t = mat_mul(&l, &mat_mul(&l, &winv, &a), &w);
    let down = |mat: &Matrix<GfElem>| -> Result<Matrix<GfElem>> {
        let data: Option<Vec<GfElem>> = mat.data.iter().map(|y| tower.restrict(y, s, m)).collect();
        let data = data.ok_or_else(|| Error::Internal("descended matrix is not defined over K".into()))?;
        Ok(Matrix { rows: n, cols: n, data })
    };
    TorsionBoldModule::new(base, down(&t)?, down(&b)?)
}

fn combine<T: Clone>(basis: &[T], rng: &mut ChaCha8Rng, q: u32, zero: T, axpy: impl Fn(&T, u32, &T) -> T) -> T {
    let mut acc = zero;
    for b in basis {
        let c = rng.gen_range(0..q);
        if c != 0 {
            acc = axpy(&acc, c, b);
        }
    }
    acc
}

/// Some invertible `P` over `K` with `P T1 = T2 P` and `P B1 = B2 sigma(P)`:
/// an isomorphism of torsion modules in coordinates.
pub fn torsion_isomorphism(x: &TorsionBoldModule<Gf>, y: &TorsionBoldModule<Gf>, seed: u64) -> Option<Matrix<GfElem>> {
    let k = &x.base.k;
    let n = x.dim();
    if y.dim() != n {
        return None;
    }
    if n == 0 {
        return Some(Matrix { rows: 0, cols: 0, data: vec![] });
    }
    let s = k.degree();
    let unflat = |v: &[u32]| Matrix::from_fn(n, n, |i, j| v[(i * n + j) * s..(i * n + j + 1) * s].to_vec());
    let sys = FpMat::from_linear_map(k.p(), n * n * s, |v| {
        let p = unflat(v);
        let a = mat_mul(k, &p, &x.t_action);
        let b = mat_mul(k, &y.t_action, &p);
        let c = mat_mul(k, &p, &x.b);
        let d = mat_mul(k, &y.b, &sigma_mat(k, &p));
        let mut out = Vec::new();
        for (u, w) in a.data.iter().zip(&b.data).chain(c.data.iter().zip(&d.data)) {
            out.extend(k.sub(u, w));
        }
        out
    });
    let basis: Vec<Matrix<GfElem>> = sys.kernel().iter().map(|v| unflat(v)).collect();
    let invertible = |m: &Matrix<GfElem>| !k.is_zero(&det_field(k, m));
    if let Some(b) = basis.iter().find(|b| invertible(b)) {
        return Some(b.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = Matrix::from_fn(n, n, |_, _| k.zero());
    for _ in 0..256 {
        let m = combine(&basis, &mut rng, k.p(), zero.clone(), |acc, c, b| {
            let cc = k.from_prime(c);
            Matrix {
                rows: n,
                cols: n,
                data: acc.data.iter().zip(&b.data).map(|(u, w)| k.add(u, &k.mul(&cc, w))).collect(),
            }
        });
        if invertible(&m) {
            return Some(m);
        }
    }
    None
}

/// Some invertible `P` over `F_q` intertwining both the `t`-actions and the
/// Frobenius matrices.
pub fn galois_isomorphism(x: &TorsionGaloisRep, y: &TorsionGaloisRep, seed: u64) -> Option<FpMat> {
    let n = x.dim();
    if y.dim() != n || x.q != y.q {
        return None;
    }
    let q = x.q;
    let unflat = |v: &[u32]| FpMat::from_rows(q, &(0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>());
    let sys = FpMat::from_linear_map(q, n * n, |v| {
        let p = unflat(v);
        let a = p.mul(&x.t_action).sub(&y.t_action.mul(&p));
        let b = p.mul(&x.frobenius).sub(&y.frobenius.mul(&p));
        a.data.iter().chain(&b.data).copied().collect()
    });
    let basis: Vec<FpMat> = sys.kernel().iter().map(|v| unflat(v)).collect();
    if n == 0 {
        return Some(FpMat::zeros(q, 0, 0));
    }
    if let Some(b) = basis.iter().find(|b| b.rank() == n) {
        return Some(b.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let m = combine(&basis, &mut rng, q, FpMat::zeros(q, n, n), |acc, c, b| {
            let mut out = acc.clone();
            for (o, w) in out.data.iter_mut().zip(&b.data) {
                *o = ((*o as u64 + c as u64 * *w as u64) % q as u64) as u32;
            }
            out
        });
        if m.rank() == n {
            return Some(m);
        }
    }
    None
}

fn random_poly(k: &Gf, rng: &mut ChaCha8Rng, deg: usize, monic: bool) -> Poly<GfElem> {
    let r = PolyRing::new(k.clone());
    let mut c: Vec<GfElem> = (0..deg).map(|_| k.from_index(rng.gen_range(0..k.size().unwrap()))).collect();
    c.push(if monic { k.one() } else { k.from_index(rng.gen_range(0..k.size().unwrap())) });
    r.from_coeffs(c)
}

/// Random torsion module with bijective `tau_lin` and divisors of total
/// degree at most `max_degree`.
pub fn random_torsion_module(base: &Base<Gf>, rng: &mut ChaCha8Rng, max_degree: usize) -> TorsionBoldModule<Gf> {
    let k = &base.k;
    let r = base.ring();
    loop {
        let mut degs = Vec::new();
        let mut left = rng.gen_range(1..=max_degree.max(1));
        while left > 0 {
            let d = rng.gen_range(1..=left);
            degs.push(d);
            left -= d;
        }
        let divs: Vec<Poly<GfElem>> = degs.iter().map(|&d| random_poly(k, rng, d, true)).collect();
        let n = divs.len();
        let mut c = Matrix::from_fn(n, n, |_, _| r.zero());
        for i in 0..n {
            let sd = r.frobenius_coeffs(&divs[i]);
            for j in 0..n {
                let g = r.gcd(&divs[j], &sd);
                let unit = r.exact_div(&divs[j], &g).unwrap();
                let room = divs[j].degree().unwrap();
                let f = random_poly(k, rng, room.saturating_sub(1), false);
                c.set(j, i, r.rem(&r.mul(&f, &unit), &divs[j]));
            }
        }
        if let Ok(t) = TorsionBoldModule::from_presentation(base, &divs, &c) {
            if t.dim() > 0 && t.tau_lin_bijective() {
                return t;
            }
        }
    }
}

/// A representation read from `(t_action, frobenius)` rows.
pub fn rep_from_rows(
    q: u32,
    k_degree: usize,
    t_rows: &[Vec<u32>],
    f_rows: &[Vec<u32>],
    cap: usize,
) -> Result<TorsionGaloisRep> {
    TorsionGaloisRep::new(q, k_degree, FpMat::from_rows(q, t_rows), FpMat::from_rows(q, f_rows), cap)
}
