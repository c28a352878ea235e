//! Tate modules at a prime `p` of `A = F_q[t]`, truncated at `p^n`.
//!
//! The solutions of `v = delta sigma(v)` modulo `p^n` form a free
//! `A/p^n`-module of rank `rk M`; for a pair `(M, L)` the module is
//! `T(M) (x) T(L)^dual`, so its Frobenius is `F_M` divided by the scalar
//! Frobenius of `L`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::lang::{free_basis, frobenius_on_basis, lang_solve_reduced, LangSolution, SlotRing};
use super::quot::{show_prime_poly, QuotRing};
use super::DEFAULT_MAX_LEVEL;
use crate::algebra::encode::encode_prime_poly;
use crate::algebra::factor::roots;
use crate::algebra::fp::Subspace;
use crate::algebra::matrix::{charpoly, det, identity, mat_mul, mat_vec, Matrix};
use crate::algebra::{FpMat, Gf, GfElem, KPoly, PolyRing, Ring};
use crate::bold::BoldModule;
use crate::error::{Error, Result};
use crate::motive::format::emit_motive;
use crate::motive::{hom_motives, Base, Motive};

/// Matrix over `A/p^n`.
pub type QuotMat = Matrix<Vec<u32>>;

/// Scalar part of a twisted Tate module: the solution line of `L`.
#[derive(Clone, Debug)]
pub struct TwistLine {
    pub level: usize,
    pub ring: SlotRing,
    pub vector: Vec<GfElem>,
    /// Frobenius eigenvalue on the line, in `A/p^n`.
    pub eigenvalue: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct TateApproximation {
    pub motive: Motive<Gf>,
    pub quot: QuotRing,
    /// Degree over `F_p` of the field holding the basis.
    pub level: usize,
    pub ring: SlotRing,
    /// Free `A/p^n`-basis of the solutions for the effective part.
    pub basis: Vec<Vec<Vec<GfElem>>>,
    /// `None` when the twist is trivial.
    pub twist: Option<TwistLine>,
    /// Frobenius `x -> x^{|K|}` on the basis, over `A/p^n`.
    pub frobenius: QuotMat,
}

/// Monic form of `prime`; rejects the kernel of the characteristic map.
pub fn check_prime(base: &Base<Gf>, prime: &[u32]) -> Result<Vec<u32>> {
    let q = base.q();
    let ring = PolyRing::new(crate::algebra::Fp::new(q));
    let p = ring.monic(&ring.from_coeffs(prime.iter().map(|c| c % q).collect()));
    if base.kernel_iota.as_deref() == Some(&p.coeffs[..]) {
        return Err(Error::PrimeIsKernel);
    }
    Ok(p.coeffs)
}

struct EffectivePart {
    sol: LangSolution,
    basis: Vec<Vec<Vec<GfElem>>>,
    frobenius: QuotMat,
}

fn solve_part(k: &Gf, b: &Matrix<Vec<GfElem>>, quot: &QuotRing, cap: usize) -> Result<EffectivePart> {
    let sol = lang_solve_reduced(k, b, quot.modulus(), cap)?;
    let basis = free_basis(&sol, quot.prime())?;
    let frobenius = frobenius_on_basis(&sol.ring, &basis, k.degree() as u32)?;
    Ok(EffectivePart { sol, basis, frobenius })
}

fn reduce_kpoly(k: &Gf, m: &Matrix<KPoly>, modulus: &[u32]) -> Matrix<Vec<GfElem>> {
    super::lang::reduce_matrix(k, m, modulus)
}

pub fn tate_module(x: &Motive<Gf>, prime: &[u32], n: usize) -> Result<TateApproximation> {
    tate_module_capped(x, prime, n, DEFAULT_MAX_LEVEL)
}

pub fn tate_module_capped(x: &Motive<Gf>, prime: &[u32], n: usize, cap: usize) -> Result<TateApproximation> {
    let base = x.base();
    let prime = check_prime(base, prime)?;
    let quot = QuotRing::new(base.q(), &prime, n)?;
    let k = &base.k;
    let main = solve_part(k, &reduce_kpoly(k, &x.m.delta, quot.modulus()), &quot, cap)?;
    let mut frobenius = main.frobenius.clone();
    let twist = if x.twist_scalar() == base.ring().one() {
        None
    } else {
        let tp = solve_part(k, &reduce_kpoly(k, &x.l.delta, quot.modulus()), &quot, cap)?;
        let lam = tp.frobenius.get(0, 0).clone();
        let inv = quot.inv(&lam).ok_or_else(|| Error::Internal("twist Frobenius is not a unit".into()))?;
        frobenius = frobenius.map(|e| quot.mul(e, &inv));
        Some(TwistLine {
            level: tp.sol.level,
            ring: tp.sol.ring.clone(),
            vector: tp.basis[0][0].clone(),
            eigenvalue: lam,
        })
    };
    Ok(TateApproximation {
        motive: x.clone(),
        quot,
        level: main.sol.level,
        ring: main.sol.ring,
        basis: main.basis,
        twist,
        frobenius,
    })
}

/// Checks `v = delta sigma(v)` for every vector of `basis` over `ring`.
fn satisfies(k: &Gf, delta: &Matrix<KPoly>, ring: &SlotRing, basis: &[Vec<Vec<GfElem>>]) -> bool {
    let tower = crate::algebra::tower_for(k);
    let kr = SlotRing::new(k.clone(), ring.modulus());
    let b = reduce_kpoly(k, delta, ring.modulus()).map(|e| kr.embed_into(e, &tower, ring));
    basis.iter().all(|v| {
        let sv: Vec<Vec<GfElem>> = v.iter().map(|c| ring.frob(c, 1)).collect();
        mat_vec(ring, &b, &sv) == *v
    })
}

impl TateApproximation {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn precision(&self) -> usize {
        self.quot.level()
    }

    /// The same data modulo `p^k`, `1 <= k <= n`.
    pub fn reduce(&self, k: usize) -> Result<TateApproximation> {
        if k == 0 || k > self.precision() {
            return Err(Error::OutOfRange(format!("precision {k} outside 1..={}", self.precision())));
        }
        let quot = self.quot.at_level(k);
        let ring = SlotRing::new(self.ring.field.clone(), quot.modulus());
        let basis = self.basis.iter().map(|v| v.iter().map(|c| ring.from_poly(c)).collect()).collect();
        let twist = self.twist.as_ref().map(|t| {
            let r = SlotRing::new(t.ring.field.clone(), quot.modulus());
            TwistLine {
                level: t.level,
                vector: r.from_poly(&t.vector),
                ring: r,
                eigenvalue: quot.reduce(&t.eigenvalue),
            }
        });
        Ok(TateApproximation {
            motive: self.motive.clone(),
            frobenius: self.frobenius.map(|e| quot.reduce(e)),
            quot,
            level: self.level,
            ring,
            basis,
            twist,
        })
    }

    /// Recomputes everything from the stored basis: the vectors solve the
    /// system, form a free basis, and carry the stored Frobenius.
    pub fn verify(&self) -> Result<()> {
        let k = &self.motive.base().k;
        if !satisfies(k, &self.motive.m.delta, &self.ring, &self.basis) {
            return Err(Error::Internal("basis vector is not tau-invariant".into()));
        }
        let mut f = frobenius_on_basis(&self.ring, &self.basis, k.degree() as u32)?;
        if let Some(t) = &self.twist {
            let line = vec![vec![t.vector.clone()]];
            if !satisfies(k, &self.motive.l.delta, &t.ring, &line) {
                return Err(Error::Internal("twist vector is not tau-invariant".into()));
            }
            let lam = frobenius_on_basis(&t.ring, &line, k.degree() as u32)?.get(0, 0).clone();
            if lam != t.eigenvalue {
                return Err(Error::Internal("twist eigenvalue mismatch".into()));
            }
            let inv = self.quot.inv(&lam).ok_or_else(|| Error::Internal("twist eigenvalue not a unit".into()))?;
            f = f.map(|e| self.quot.mul(e, &inv));
        }
        if f != self.frobenius {
            return Err(Error::Internal("stored Frobenius does not match the basis".into()));
        }
        Ok(())
    }
}

/// Frobenius on the Tate module of a restricted bold module over `K(t)` or
/// a localisation, through its `tau` matrix reduced modulo `p^n`.
pub fn bold_frobenius(m: &BoldModule<Gf>, prime: &[u32], n: usize, cap: usize) -> Result<QuotMat> {
    let k = m.ring.kt.base().clone();
    let quot = QuotRing::new(k.p(), prime, n)?;
    let kr = SlotRing::new(k.clone(), quot.modulus());
    let mut data = Vec::with_capacity(m.tau.data.len());
    for e in &m.tau.data {
        let den = kr.inv(&kr.from_poly(&e.den.coeffs)).ok_or(Error::NotRestricted)?;
        data.push(kr.mul(&kr.from_poly(&e.num.coeffs), &den));
    }
    let b = Matrix { rows: m.tau.rows, cols: m.tau.cols, data };
    Ok(solve_part(&k, &b, &quot, cap)?.frobenius)
}

/// Prime-field coordinates of a matrix over `A/p^n`.
fn flat_mat(quot: &QuotRing, m: &QuotMat) -> Vec<u32> {
    m.data.iter().flat_map(|e| quot.coords(e)).collect()
}

fn unflat_mat(quot: &QuotRing, rows: usize, cols: usize, x: &[u32]) -> QuotMat {
    let d = quot.dim();
    Matrix::from_fn(rows, cols, |i, j| quot.from_coords(&x[(i * cols + j) * d..(i * cols + j + 1) * d]))
}

/// Prime-field basis of `{h : h fx = fy h}`, `h` of shape `rk fy x rk fx`.
pub fn commutant(quot: &QuotRing, fx: &QuotMat, fy: &QuotMat) -> Vec<QuotMat> {
    let (rows, cols) = (fy.rows, fx.rows);
    let n = rows * cols * quot.dim();
    let sys = FpMat::from_linear_map(quot.q(), n, |x| {
        let h = unflat_mat(quot, rows, cols, x);
        let a = mat_mul(quot, &h, fx);
        let b = mat_mul(quot, fy, &h);
        let d = Matrix { rows, cols, data: a.data.iter().zip(&b.data).map(|(u, v)| quot.sub(u, v)).collect() };
        flat_mat(quot, &d)
    });
    sys.kernel().iter().map(|x| unflat_mat(quot, rows, cols, x)).collect()
}

/// Rank over `A/p^n` of the submodule spanned by prime-field generators:
/// `dim_{F_p}(p^{n-1} S) / deg p`.
pub fn module_rank(quot: &QuotRing, gens: &[QuotMat]) -> usize {
    let Some(first) = gens.first() else { return 0 };
    let ring = PolyRing::new(crate::algebra::Fp::new(quot.q()));
    let pn1 = ring.pow(&ring.from_coeffs(quot.prime().to_vec()), (quot.level() - 1) as u64).coeffs;
    let dim = first.data.len() * quot.dim();
    let mut s = Subspace::new(quot.q(), dim);
    for g in gens {
        s.insert(&flat_mat(quot, &g.map(|e| quot.mul(e, &pn1))));
    }
    s.dim() / quot.prime_degree()
}

fn is_invertible(quot: &QuotRing, m: &QuotMat) -> bool {
    quot.is_unit(&det(quot, m))
}

/// Some invertible `P` with `P f1 = f2 P`, searched among the commutant
/// basis and seeded random combinations.
pub fn conjugating_matrix(quot: &QuotRing, f1: &QuotMat, f2: &QuotMat, seed: u64) -> Option<QuotMat> {
    if f1.rows != f2.rows {
        return None;
    }
    let basis = commutant(quot, f1, f2);
    if let Some(b) = basis.iter().find(|b| is_invertible(quot, b)) {
        return Some(b.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = quot.q();
    for _ in 0..256 {
        let mut acc = Matrix::from_fn(f1.rows, f1.rows, |_, _| quot.zero());
        for b in &basis {
            let c: u32 = rng.gen_range(0..q);
            if c != 0 {
                acc = Matrix {
                    rows: acc.rows,
                    cols: acc.cols,
                    data: acc.data.iter().zip(&b.data).map(|(u, v)| quot.add(u, &quot.mul(v, &vec![c]))).collect(),
                };
            }
        }
        if is_invertible(quot, &acc) {
            return Some(acc);
        }
    }
    None
}

/// Characteristic polynomial over `A/p^n`, ascending and monic.
pub fn charpoly_over(quot: &QuotRing, f: &QuotMat) -> Vec<Vec<u32>> {
    charpoly(quot, f)
}

/// Monic polynomial of least degree over `A/p^n` killing `f`, ascending.
pub fn minpoly_over(quot: &QuotRing, f: &QuotMat) -> Vec<Vec<u32>> {
    let r = f.rows;
    let d = quot.dim();
    let mut powers = vec![identity(quot, r)];
    for k in 1..=r {
        powers.push(mat_mul(quot, &powers[k - 1], f));
        let n = k * d;
        let sys = FpMat::from_linear_map(quot.q(), n, |x| {
            let mut acc = Matrix::from_fn(r, r, |_, _| quot.zero());
            for j in 0..k {
                let c = quot.from_coords(&x[j * d..(j + 1) * d]);
                acc = Matrix {
                    rows: r,
                    cols: r,
                    data: acc.data.iter().zip(&powers[j].data).map(|(u, v)| quot.add(u, &quot.mul(&c, v))).collect(),
                };
            }
            flat_mat(quot, &acc)
        });
        let target = flat_mat(quot, &powers[k].map(|e| quot.neg(e)));
        if let Some(x) = sys.solve(&target) {
            let mut out: Vec<Vec<u32>> = (0..k).map(|j| quot.from_coords(&x[j * d..(j + 1) * d])).collect();
            out.push(quot.one());
            return out;
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree")
}

pub fn frobenius_charpoly(x: &Motive<Gf>, prime: &[u32], n: usize) -> Result<Vec<Vec<u32>>> {
    let t = tate_module(x, prime, n)?;
    Ok(charpoly_over(&t.quot, &t.frobenius))
}

pub fn frobenius_minpoly(x: &Motive<Gf>, prime: &[u32], n: usize) -> Result<Vec<Vec<u32>>> {
    let t = tate_module(x, prime, n)?;
    Ok(minpoly_over(&t.quot, &t.frobenius))
}

/// Resultant of two polynomials over a commutative ring, as the
/// determinant of the Sylvester matrix.
pub fn resultant_over<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return r.one();
    }
    let mut s = Matrix::from_fn(size, size, |_, _| r.zero());
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s.set(n + i, i + j, c.clone());
        }
    }
    det(r, &s)
}

fn derivative_over(quot: &QuotRing, f: &[Vec<u32>]) -> Vec<Vec<u32>> {
    f.iter().enumerate().skip(1).map(|(i, c)| quot.mul(c, &quot.from_i64(i as i64))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semisimple,
    NonSemisimple,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Semisimple => "semisimple",
            Verdict::NonSemisimple => "non_semisimple",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SemisimplicityReport {
    pub verdict: Verdict,
    pub evidence: String,
    /// `n` of the precision `p^n` the verdict refers to.
    pub precision: usize,
    pub charpoly: Vec<Vec<u32>>,
    pub minpoly: Vec<Vec<u32>>,
}

/// Residue field `A/p` as a finite field in the basis `1, t, ...`.
fn residue_field(quot: &QuotRing) -> Gf {
    Gf::new(quot.q(), quot.prime().to_vec()).expect("prime is irreducible")
}

/// Whether every root of `f mod p` lies in `A/p` (with multiplicity).
fn splits_mod_p(quot: &QuotRing, f: &[Vec<u32>]) -> bool {
    let kp = residue_field(quot);
    let ring = PolyRing::new(kp.clone());
    let g = ring.from_coeffs(f.iter().map(|c| kp.from_coords(&quot.residue(c))).collect());
    let deg = g.degree().unwrap_or(0);
    let total: usize = roots(&kp, &g).iter().map(|z| ring.multiplicity(&g, &ring.linear(z))).sum();
    total == deg
}

/// Largest residue ring enumerated when looking for eigenvalues.
const EIGEN_SEARCH_LIMIT: u64 = 1 << 16;

/// `Some(true)` if `f` is diagonalisable over `A/p^n` (a free basis of
/// eigenvectors exists), `None` if `A/p^n` is too large to search.
pub fn diagonalizable_over(quot: &QuotRing, f: &QuotMat) -> Option<bool> {
    let size = quot.size().filter(|&s| s <= EIGEN_SEARCH_LIMIT)?;
    let r = f.rows;
    let cp = charpoly_over(quot, f);
    let d = quot.dim();
    let dp = quot.prime_degree();
    let mut reductions = Subspace::new(quot.q(), r * dp);
    for i in 0..size {
        let lam = quot.from_index(i);
        let val = cp.iter().rev().fold(quot.zero(), |acc, c| quot.add(&quot.mul(&acc, &lam), c));
        if !quot.is_zero(&val) {
            continue;
        }
        let sys = FpMat::from_linear_map(quot.q(), r * d, |x| {
            let v: Vec<Vec<u32>> = (0..r).map(|j| quot.from_coords(&x[j * d..(j + 1) * d])).collect();
            let fv = mat_vec(quot, f, &v);
            fv.iter().zip(&v).flat_map(|(a, b)| quot.coords(&quot.sub(a, &quot.mul(&lam, b)))).collect()
        });
        for x in sys.kernel() {
            let red: Vec<u32> = (0..r)
                .flat_map(|j| {
                    let mut c = quot.residue(&quot.from_coords(&x[j * d..(j + 1) * d]));
                    c.resize(dp, 0);
                    c
                })
                .collect();
            reductions.insert(&red);
        }
    }
    Some(reductions.dim() == r * dp)
}

pub fn semisimplicity_report(x: &Motive<Gf>, prime: &[u32], n: usize) -> Result<SemisimplicityReport> {
    let t = tate_module(x, prime, n)?;
    Ok(semisimplicity_of(&t))
}

/// Verdict from a Tate approximation.
///
/// A nonzero discriminant modulo `p^n` proves semisimplicity. Otherwise the
/// Frobenius is tested for diagonalisability at each precision up to `n`;
/// a Jordan block that survives from `p^{n-1}` to `p^n` counts as
/// non-semisimple. Both of these are finite-precision evidence only.
pub fn semisimplicity_of(t: &TateApproximation) -> SemisimplicityReport {
    let quot = &t.quot;
    let n = t.precision();
    let cp = charpoly_over(quot, &t.frobenius);
    let mp = minpoly_over(quot, &t.frobenius);
    let out = |verdict, evidence: String| SemisimplicityReport {
        verdict,
        evidence,
        precision: n,
        charpoly: cp.clone(),
        minpoly: mp.clone(),
    };
    if t.rank() <= 1 {
        return out(Verdict::Semisimple, "rank at most one".into());
    }
    let disc = resultant_over(quot, &cp, &derivative_over(quot, &cp));
    if !quot.is_zero(&disc) {
        return out(Verdict::Semisimple, format!("discriminant of the characteristic polynomial is nonzero mod p^{n}"));
    }
    let diag_at = |k: usize| {
        let tk = t.reduce(k).expect("level in range");
        diagonalizable_over(&tk.quot, &tk.frobenius)
    };
    let Some(top) = diag_at(n) else {
        return out(Verdict::Inconclusive, format!("residue ring too large to search for eigenvalues at p^{n}"));
    };
    if top {
        return out(Verdict::Semisimple, format!("repeated eigenvalues, diagonalisable mod p^{n}"));
    }
    if n >= 2 && diag_at(n - 1) == Some(false) && splits_mod_p(quot, &cp) {
        return out(Verdict::NonSemisimple, format!("not diagonalisable mod p^{} and mod p^{n}", n - 1));
    }
    out(Verdict::Inconclusive, format!("repeated eigenvalues not resolved at p^{n}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateCheck {
    pub hom_rank: usize,
    pub commutant_rank: usize,
    pub agree: bool,
    /// Whether the motive hom computation saturated below its cap.
    pub saturated: bool,
}

pub fn tate_conjecture_check(x: &Motive<Gf>, y: &Motive<Gf>, prime: &[u32], n: usize) -> Result<TateCheck> {
    let h = hom_motives(x, y, None)?;
    let tx = tate_module(x, prime, n)?;
    let ty = tate_module(y, prime, n)?;
    let s = commutant(&tx.quot, &tx.frobenius, &ty.frobenius);
    let commutant_rank = module_rank(&tx.quot, &s);
    Ok(TateCheck { hom_rank: h.rank, commutant_rank, agree: h.rank == commutant_rank, saturated: h.saturated })
}

/// `[a, b; c, d]` with entries in `t`-notation.
pub fn show_matrix(m: &QuotMat) -> String {
    let rows: Vec<String> =
        (0..m.rows).map(|i| (0..m.cols).map(|j| show_prime_poly(m.get(i, j))).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Nested-list form of a matrix over `A/p^n`.
pub fn encode_matrix(m: &QuotMat) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| format!("[{}]", (0..m.cols).map(|j| encode_prime_poly(m.get(i, j))).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Polynomial in `X` over `A/p^n`, descending, e.g. `X^2 + (2*t)*X + (1)`.
pub fn show_poly_over(f: &[Vec<u32>]) -> String {
    let mut parts = Vec::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{i}"),
        };
        let unit = c.len() == 1 && c[0] == 1;
        parts.push(match (unit, i) {
            (true, 0) => "1".into(),
            (true, _) => mono,
            (false, 0) => format!("({})", show_prime_poly(c)),
            (false, _) => format!("({})*{mono}", show_prime_poly(c)),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn encode_poly_over(f: &[Vec<u32>]) -> String {
    format!("[{}]", f.iter().map(|c| encode_prime_poly(c)).collect::<Vec<_>>().join(","))
}

/// First 16 hex digits of the SHA-256 of the canonical motive text.
pub fn motive_hash(x: &Motive<Gf>) -> String {
    let digest = Sha256::digest(emit_motive(x).as_bytes());
    hex::encode(digest)[..16].to_string()
}

/// Deterministic key-value report for one `(motive, p, n)`.
pub fn report(x: &Motive<Gf>, prime: &[u32], n: usize) -> Result<String> {
    let t = tate_module(x, prime, n)?;
    let s = semisimplicity_of(&t);
    let mut out = String::new();
    out.push_str(&format!("motive.hash = {}\n", motive_hash(x)));
    out.push_str(&format!("prime = {}\n", show_prime_poly(t.quot.prime())));
    out.push_str(&format!("precision = {n}\n"));
    out.push_str(&format!("rank = {}\n", t.rank()));
    out.push_str(&format!("solution.level = {}\n", t.level));
    out.push_str(&format!("frobenius = {}\n", show_matrix(&t.frobenius)));
    out.push_str(&format!("frobenius.encoded = {}\n", encode_matrix(&t.frobenius)));
    out.push_str(&format!("charpoly = {}\n", show_poly_over(&s.charpoly)));
    out.push_str(&format!("charpoly.encoded = {}\n", encode_poly_over(&s.charpoly)));
    out.push_str(&format!("minpoly = {}\n", show_poly_over(&s.minpoly)));
    out.push_str(&format!("minpoly.encoded = {}\n", encode_poly_over(&s.minpoly)));
    out.push_str(&format!("verdict = {}\n", s.verdict.as_str()));
    out.push_str(&format!("evidence = {}\n", s.evidence));
    Ok(out)
}
