//! Effective A-motives over `K[t]`, motive pairs `(M, L)` with `rk L = 1`,
//! their homomorphisms and standard constructions.
//!
//! An effective motive is stored by the matrix `delta` of `tau` in a fixed
//! basis: `tau(v) = delta * sigma(v)`. A homomorphism of pairs
//! `(M, L) -> (M', L')` is a homomorphism `M (x) L' -> M' (x) L`, stored by
//! its matrix over `K[t]`.

pub mod format;
pub mod isogeny;
pub mod torsion;

use crate::algebra::encode::Encode;
use crate::algebra::matrix::{compound, det, identity, is_zero_matrix, kron, mat_mul, Matrix};
use crate::algebra::polymat::{max_degree, sigma_matrix};
use crate::algebra::semilinear::poly_kernel;
use crate::algebra::{Field, Fp, Gf, GfElem, Poly, PolyRing, RatField, RatFunc, Ring};
use crate::bold::{BoldModule, BoldRing};
use crate::error::{Error, Result};

pub type PolyMat<F> = Matrix<Poly<<F as Ring>::Elem>>;

/// Coefficient field `K` with the characteristic map `t -> theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Base<F: Field> {
    pub k: F,
    pub theta: F::Elem,
    /// Minimal polynomial of `theta` over the prime field (ascending), or
    /// `None` in generic characteristic.
    pub kernel_iota: Option<Vec<u32>>,
}

impl<F: Field> Base<F> {
    pub fn new(k: F, theta: F::Elem) -> Self {
        let kernel_iota = k.prime_minpoly(&theta);
        Base { k, theta, kernel_iota }
    }

    pub fn q(&self) -> u32 {
        self.k.characteristic()
    }

    pub fn ring(&self) -> PolyRing<F> {
        PolyRing::new(self.k.clone())
    }

    pub fn frac(&self) -> RatField<F> {
        RatField::new(self.k.clone())
    }

    /// `t - theta`.
    pub fn char_linear(&self) -> Poly<F::Elem> {
        self.ring().linear(&self.theta)
    }

    pub fn is_generic(&self) -> bool {
        self.kernel_iota.is_none()
    }

    /// A polynomial of `F_q[t]` (ascending prime-field coefficients) as an
    /// element of `K[t]`.
    pub fn lift_prime_poly(&self, a: &[u32]) -> Poly<F::Elem> {
        self.ring().from_coeffs(a.iter().map(|&c| self.k.from_i64(c as i64)).collect())
    }
}

/// Effective motive: `delta` square over `K[t]` with
/// `det delta = c (t - theta)^e`, `c` a nonzero constant.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveMotive<F: Field> {
    pub base: Base<F>,
    pub delta: PolyMat<F>,
    pub e: usize,
}

impl<F: Field + Encode> EffectiveMotive<F> {
    pub fn new(base: &Base<F>, delta: PolyMat<F>) -> Result<Self> {
        if !delta.is_square() {
            return Err(Error::Invalid("delta must be square".into()));
        }
        let r = base.ring();
        let d = det(&r, &delta);
        if d.is_zero() {
            return Err(Error::CharacteristicViolation { factor: "0 (singular delta)".into() });
        }
        let lin = base.char_linear();
        let e = r.multiplicity(&d, &lin);
        let mut rest = d.clone();
        for _ in 0..e {
            rest = r.exact_div(&rest, &lin).unwrap();
        }
        if rest.degree() != Some(0) {
            let factor = base.k.encode_poly(&r.monic(&rest));
            return Err(Error::CharacteristicViolation { factor });
        }
        Ok(EffectiveMotive { base: base.clone(), delta, e })
    }

    pub fn rank(&self) -> usize {
        self.delta.rows
    }

    pub fn det_delta(&self) -> Poly<F::Elem> {
        det(&self.base.ring(), &self.delta)
    }

    /// Rank-one motive with `delta = [1]`.
    pub fn unit(base: &Base<F>) -> Self {
        let r = base.ring();
        EffectiveMotive { base: base.clone(), delta: identity(&r, 1), e: 0 }
    }

    /// Carlitz motive, `delta = [t - theta]`.
    pub fn carlitz(base: &Base<F>) -> Self {
        let delta = Matrix::from_rows(vec![vec![base.char_linear()]]);
        EffectiveMotive { base: base.clone(), delta, e: 1 }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let r = self.base.ring();
        EffectiveMotive {
            base: self.base.clone(),
            delta: kron(&r, &self.delta, &other.delta),
            e: self.e * other.rank() + other.e * self.rank(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        EffectiveMotive {
            base: self.base.clone(),
            delta: self.delta.block_diag(&other.delta, Poly::zero()),
            e: self.e + other.e,
        }
    }

    /// `d`-th exterior power (compound matrix of `delta`).
    pub fn exterior(&self, d: usize) -> Result<Self> {
        let r = self.rank();
        if d > r {
            return Err(Error::OutOfRange(format!("exterior power {d} of rank {r}")));
        }
        let ring = self.base.ring();
        let delta = if d == 0 { identity(&ring, 1) } else { compound(&ring, &self.delta, d) };
        // Each basis index lies in binom(r-1, d-1) of the d-subsets.
        let e = if d == 0 { 0 } else { self.e * binom(r - 1, d - 1) };
        Ok(EffectiveMotive { base: self.base.clone(), delta, e })
    }
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Motive pair `(M, L)` with `rk L = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Motive<F: Field> {
    pub m: EffectiveMotive<F>,
    pub l: EffectiveMotive<F>,
}

impl<F: Field + Encode> Motive<F> {
    pub fn new(m: EffectiveMotive<F>, l: EffectiveMotive<F>) -> Result<Self> {
        if l.rank() != 1 {
            return Err(Error::Invalid("twist must have rank one".into()));
        }
        if m.base != l.base {
            return Err(Error::Mismatch("motive and twist over different bases".into()));
        }
        Ok(Motive { m, l })
    }

    /// `(M, unit)`.
    pub fn effective(m: EffectiveMotive<F>) -> Self {
        let l = EffectiveMotive::unit(&m.base);
        Motive { m, l }
    }

    pub fn base(&self) -> &Base<F> {
        &self.m.base
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    /// The single entry of `delta_L`.
    pub fn twist_scalar(&self) -> Poly<F::Elem> {
        self.l.delta.get(0, 0).clone()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Motive { m: self.m.tensor(&other.m), l: self.l.tensor(&other.l) }
    }

    /// `(M (x) L' + M' (x) L, L (x) L')`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let a = self.m.tensor(&other.l);
        let b = other.m.tensor(&self.l);
        Motive { m: a.direct_sum(&b), l: self.l.tensor(&other.l) }
    }

    /// `(ext^d M, L^{(x) d})`.
    pub fn exterior(&self, d: usize) -> Result<Self> {
        let m = self.m.exterior(d)?;
        let mut l = EffectiveMotive::unit(self.base());
        for _ in 0..d {
            l = l.tensor(&self.l);
        }
        Ok(Motive { m, l })
    }

    pub fn det_motive(&self) -> Self {
        self.exterior(self.rank()).unwrap()
    }

    /// Effective part `ext^{r-1} M`.
    pub fn second_highest(&self) -> EffectiveMotive<F> {
        self.m.exterior(self.rank() - 1).unwrap()
    }

    /// `(ext^{r-1} M (x) L, det M)`.
    pub fn dual(&self) -> Self {
        let m = self.second_highest().tensor(&self.l);
        let l = self.m.exterior(self.rank()).unwrap();
        Motive { m, l }
    }

    /// `delta` of the source of hom matrices `self -> other`.
    pub fn hom_source_delta(&self, other: &Self) -> PolyMat<F> {
        kron(&self.base().ring(), &self.m.delta, &other.l.delta)
    }
}

/// Image in restricted modules over `K(t)`: `tau = delta_M * delta_L^{-1}`.
pub fn motive_to_bold<F: Field + Encode>(x: &Motive<F>) -> BoldModule<F> {
    let kt = x.base().frac();
    let linv = kt.inv(&kt.from_poly(x.twist_scalar())).unwrap();
    let tau = x.m.delta.map(|e| kt.mul(&kt.from_poly(e.clone()), &linv));
    BoldModule { ring: BoldRing::fractions(x.base().k.clone()), tau }
}

/// Homomorphism of motive pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct MotiveHom<F: Field> {
    pub src: Motive<F>,
    pub tgt: Motive<F>,
    /// `rk tgt x rk src` matrix over `K[t]`.
    pub mat: PolyMat<F>,
}

/// Whether `mat * src_delta = tgt_delta * sigma(mat)`.
fn intertwines<F: Field>(r: &PolyRing<F>, mat: &PolyMat<F>, src: &PolyMat<F>, tgt: &PolyMat<F>) -> bool {
    mat_mul(r, mat, src) == mat_mul(r, tgt, &sigma_matrix(r, mat))
}

impl<F: Field + Encode> MotiveHom<F> {
    pub fn new(src: &Motive<F>, tgt: &Motive<F>, mat: PolyMat<F>) -> Result<Self> {
        if mat.rows != tgt.rank() || mat.cols != src.rank() {
            return Err(Error::Mismatch("hom matrix has the wrong shape".into()));
        }
        if src.base() != tgt.base() {
            return Err(Error::Mismatch("motives over different bases".into()));
        }
        let r = src.base().ring();
        if !intertwines(&r, &mat, &src.hom_source_delta(tgt), &tgt.hom_source_delta(src)) {
            return Err(Error::Invalid("matrix does not commute with tau".into()));
        }
        Ok(MotiveHom { src: src.clone(), tgt: tgt.clone(), mat })
    }

    pub fn identity(x: &Motive<F>) -> Self {
        MotiveHom { src: x.clone(), tgt: x.clone(), mat: identity(&x.base().ring(), x.rank()) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_matrix(&self.src.base().ring(), &self.mat)
    }
}

/// `g . f`. Twists all have rank one, so the untwisted composite is the
/// matrix product.
pub fn compose_homs<F: Field + Encode>(f: &MotiveHom<F>, g: &MotiveHom<F>) -> Result<MotiveHom<F>> {
    if f.tgt != g.src {
        return Err(Error::Mismatch("target of f is not the source of g".into()));
    }
    let r = f.src.base().ring();
    Ok(MotiveHom { src: f.src.clone(), tgt: g.tgt.clone(), mat: mat_mul(&r, &g.mat, &f.mat) })
}

/// The scalar isogeny `[a]`, `a` given by prime-field coefficients.
pub fn scalar_isogeny<F: Field + Encode>(x: &Motive<F>, a: &[u32]) -> Result<MotiveHom<F>> {
    let base = x.base();
    let ap = base.lift_prime_poly(a);
    if ap.is_zero() {
        return Err(Error::Invalid("scalar isogeny by 0".into()));
    }
    let r = base.ring();
    let mat = Matrix::from_fn(x.rank(), x.rank(), |i, j| if i == j { ap.clone() } else { r.zero() });
    Ok(MotiveHom { src: x.clone(), tgt: x.clone(), mat })
}

/// `Hom(x, y)` as computed by [`hom_motives`].
#[derive(Clone, Debug)]
pub struct HomBasis {
    /// Basis of the free `F_q[t]`-module of homomorphisms.
    pub generators: Vec<PolyMat<Gf>>,
    /// Rank over `F_q(t)` of all solutions found.
    pub rank: usize,
    /// Degree cap of the final computation.
    pub cap: usize,
    /// Whether doubling the cap left the span unchanged.
    pub saturated: bool,
}

/// `F_q(t)`-rank of a family of matrices over `K[t]`.
fn prime_rank(k: &Gf, mats: &[PolyMat<Gf>]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let fq = Fp::new(k.p());
    let ft = RatField::new(fq);
    let s = k.degree();
    let rows: Vec<Vec<RatFunc<u32>>> = mats
        .iter()
        .map(|m| {
            let mut row = Vec::new();
            for e in &m.data {
                for l in 0..s {
                    let c: Vec<u32> = e.coeffs.iter().map(|x| x[l]).collect();
                    row.push(ft.from_poly(ft.ring.from_coeffs(c)));
                }
            }
            row
        })
        .collect();
    crate::algebra::matrix::rank(&ft, &Matrix::from_rows(rows))
}

/// Generators of the solution module with entries of degree `<= cap`,
/// chosen degree by degree.
fn graded_generators(
    k: &Gf,
    rows: usize,
    cols: usize,
    cap: usize,
    solve: &dyn Fn(usize) -> Vec<Vec<Poly<GfElem>>>,
) -> Vec<PolyMat<Gf>> {
    let r = PolyRing::new(k.clone());
    let s = k.degree();
    let n = rows * cols;
    let flat = |v: &[Poly<GfElem>], deg: usize| -> Vec<u32> {
        let mut out = Vec::with_capacity(n * (deg + 1) * s);
        for e in v {
            for j in 0..=deg {
                out.extend(r.coeff(e, j));
            }
        }
        out
    };
    let mut gens: Vec<Vec<Poly<GfElem>>> = Vec::new();
    for d in 0..=cap {
        let sols = solve(d);
        if sols.is_empty() {
            continue;
        }
        let dim = n * (d + 1) * s;
        let mut span = crate::algebra::fp::Subspace::new(k.p(), dim);
        // Span of t^j g over F_q, truncated at degree d.
        for g in &gens {
            let gd = g.iter().map(|x| x.deg()).max().unwrap_or(-1);
            for j in 0..=(d as i64 - gd).max(-1) {
                let shifted: Vec<Poly<GfElem>> = g.iter().map(|x| r.shift(x, j as usize)).collect();
                for l in 0..s {
                    let mut b = k.zero();
                    b[l] = 1;
                    let sc: Vec<Poly<GfElem>> = shifted.iter().map(|x| r.scale(x, &b)).collect();
                    span.insert(&flat(&sc, d));
                }
            }
        }
        for v in sols {
            if span.insert(&flat(&v, d)) {
                gens.push(v);
            }
        }
    }
    gens.into_iter().map(|v| Matrix { rows, cols, data: v }).collect()
}

/// Solutions of `F * src = tgt * sigma(F)`, `F` of size `tgt.rows x
/// src.rows` with entries of degree at most `deg`.
pub fn intertwiner_space(k: &Gf, src: &PolyMat<Gf>, tgt: &PolyMat<Gf>, deg: usize) -> Vec<Vec<Poly<GfElem>>> {
    let r = PolyRing::new(k.clone());
    let (rows, cols) = (tgt.rows, src.rows);
    poly_kernel(k, rows * cols, deg, |v| {
        let f = Matrix { rows, cols, data: v.to_vec() };
        let lhs = mat_mul(&r, &f, src);
        let rhs = mat_mul(&r, tgt, &sigma_matrix(&r, &f));
        lhs.data.iter().zip(&rhs.data).map(|(a, b)| r.sub(a, b)).collect()
    })
}

/// Basis of `Hom(x, y)` as an `F_q[t]`-module, found by solving the
/// intertwining equation at a degree cap that doubles until stable.
pub fn hom_motives(x: &Motive<Gf>, y: &Motive<Gf>, cap: Option<usize>) -> Result<HomBasis> {
    if x.base() != y.base() {
        return Err(Error::Mismatch("motives over different bases".into()));
    }
    let k = x.base().k.clone();
    let src = x.hom_source_delta(y);
    let tgt = y.hom_source_delta(x);
    let start = cap.unwrap_or(max_degree(&src).max(max_degree(&tgt)).max(0) as usize + 8);
    let limit = start * 8;
    let (rows, cols) = (y.rank(), x.rank());
    let run = |c: usize| {
        let solve = |d: usize| intertwiner_space(&k, &src, &tgt, d);
        let gens = graded_generators(&k, rows, cols, c, &solve);
        let rank = prime_rank(&k, &gens);
        (gens, rank)
    };
    let (mut gens, mut rank) = run(start);
    let mut c = start;
    loop {
        let next = c * 2;
        if next > limit {
            return Err(Error::CapExhausted { cap: c });
        }
        let (g2, r2) = run(next);
        if r2 == rank && g2.len() == gens.len() {
            return Ok(HomBasis { generators: gens, rank, cap: next, saturated: true });
        }
        gens = g2;
        rank = r2;
        c = next;
    }
}

/// Wraps hom generators as [`MotiveHom`]s.
pub fn hom_basis_maps(x: &Motive<Gf>, y: &Motive<Gf>, h: &HomBasis) -> Vec<MotiveHom<Gf>> {
    h.generators.iter().map(|m| MotiveHom { src: x.clone(), tgt: y.clone(), mat: m.clone() }).collect()
}

/// Evaluation `dual(x) (x) x -> unit`, the wedge pairing
/// `ext^{r-1} M (x) M -> det M`.
pub fn evaluation_pairing<F: Field + Encode>(x: &Motive<F>) -> Result<MotiveHom<F>> {
    let r = x.rank();
    let ring = x.base().ring();
    let src = x.dual().tensor(x);
    let unit = Motive::effective(EffectiveMotive::unit(x.base()));
    let subs = crate::algebra::matrix::subsets(r, r - 1);
    let mat = Matrix::from_fn(1, subs.len() * r, |_, j| {
        let (si, col) = (j / r, j % r);
        if subs[si].contains(&col) {
            return ring.zero();
        }
        // e_S ^ e_col with col the missing index.
        let sign = if (r - 1 - col).is_multiple_of(2) { 1 } else { -1 };
        ring.from_i64(sign)
    });
    MotiveHom::new(&src, &unit, mat)
}
