//! Torsion `K[t]`-modules with a `sigma`-semilinear `tau`, stored as a
//! finite-dimensional `K`-space with the matrices of `t` and of `tau`.

use super::{Base, PolyMat};
use crate::algebra::encode::Encode;
use crate::algebra::fp::FpMat;
use crate::algebra::matrix::{charpoly, identity, kernel, mat_mul, mat_pow, mat_sub, rank, rref, Matrix};
use crate::algebra::polymat::smith_form;
use crate::algebra::{Field, Poly, Ring};
use crate::error::{Error, Result};

/// `tau(v) = b * sigma(v)` on `K^n`, with `t` acting by `t_action`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionBoldModule<F: Field> {
    pub base: Base<F>,
    pub t_action: Matrix<F::Elem>,
    pub b: Matrix<F::Elem>,
}

pub fn sigma_mat<F: Field>(k: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    m.map(|x| k.frobenius(x))
}

/// Basis of the column space, as original columns at pivot positions.
pub fn column_space<F: Field>(k: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    let piv = rref(k, &mut w);
    piv.into_iter().map(|j| m.col(j)).collect()
}

fn cols_to_matrix<F: Field>(k: &F, n: usize, cols: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    if cols.is_empty() {
        return Matrix { rows: n, cols: 0, data: Vec::new() };
    }
    let _ = k;
    Matrix::from_cols(n, cols)
}

/// Whether every column of `a` lies in the span of `span`.
fn in_span<F: Field>(k: &F, span: &[Vec<F::Elem>], a: &[Vec<F::Elem>], n: usize) -> bool {
    let base = rank(k, &cols_to_matrix(k, n, span));
    let mut all = span.to_vec();
    all.extend_from_slice(a);
    rank(k, &cols_to_matrix(k, n, &all)) == base
}

impl<F: Field + Encode> TorsionBoldModule<F> {
    /// Validates `tau(t v) = t tau(v)`, i.e. `b sigma(t_action) = t_action b`.
    pub fn new(base: &Base<F>, t_action: Matrix<F::Elem>, b: Matrix<F::Elem>) -> Result<Self> {
        let k = &base.k;
        if !t_action.is_square() || !b.is_square() || t_action.rows != b.rows {
            return Err(Error::Invalid("action matrices must be square of equal size".into()));
        }
        if mat_mul(k, &b, &sigma_mat(k, &t_action)) != mat_mul(k, &t_action, &b) {
            return Err(Error::Invalid("tau is not K[t]-semilinear".into()));
        }
        Ok(TorsionBoldModule { base: base.clone(), t_action, b })
    }

    /// `K[t]/(d_1) + ... + K[t]/(d_n)` with `tau(e_i) = sum_j c_ji e_j`.
    /// Requires `d_j | sigma(d_i) c_ji`; unit divisors are dropped.
    pub fn from_presentation(base: &Base<F>, divisors: &[Poly<F::Elem>], c: &PolyMat<F>) -> Result<Self> {
        let r = base.ring();
        let k = &base.k;
        let n = divisors.len();
        if c.rows != n || c.cols != n {
            return Err(Error::Invalid("presentation matrix has the wrong shape".into()));
        }
        if divisors.iter().any(|d| d.is_zero()) {
            return Err(Error::NotTorsion);
        }
        let divs: Vec<Poly<F::Elem>> = divisors.iter().map(|d| r.monic(d)).collect();
        for i in 0..n {
            let sd = r.frobenius_coeffs(&divs[i]);
            for j in 0..n {
                if !r.divides(&divs[j], &r.mul(&sd, c.get(j, i))) {
                    return Err(Error::Invalid(format!("tau(e_{i}) is not well defined modulo divisor {j}")));
                }
            }
        }
        // Basis t^l e_i for l < deg d_i.
        let mut offs = Vec::with_capacity(n);
        let mut dim = 0;
        for d in &divs {
            offs.push(dim);
            dim += d.degree().unwrap();
        }
        let coords = |v: &[Poly<F::Elem>]| -> Vec<F::Elem> {
            let mut out = vec![k.zero(); dim];
            for (j, p) in v.iter().enumerate() {
                let red = r.rem(p, &divs[j]);
                for l in 0..divs[j].degree().unwrap() {
                    out[offs[j] + l] = r.coeff(&red, l);
                }
            }
            out
        };
        let mut tcols = Vec::with_capacity(dim);
        let mut bcols = Vec::with_capacity(dim);
        for i in 0..n {
            for l in 0..divs[i].degree().unwrap() {
                let mut e = vec![Poly::zero(); n];
                e[i] = r.monomial(k.one(), l + 1);
                tcols.push(coords(&e));
                let img: Vec<Poly<F::Elem>> = (0..n).map(|j| r.shift(c.get(j, i), l)).collect();
                bcols.push(coords(&img));
            }
        }
        let t_action =
            if dim == 0 { Matrix { rows: 0, cols: 0, data: vec![] } } else { Matrix::from_cols(dim, &tcols) };
        let b = if dim == 0 { Matrix { rows: 0, cols: 0, data: vec![] } } else { Matrix::from_cols(dim, &bcols) };
        Self::new(base, t_action, b)
    }

    pub fn zero(base: &Base<F>) -> Self {
        let e = Matrix { rows: 0, cols: 0, data: vec![] };
        TorsionBoldModule { base: base.clone(), t_action: e.clone(), b: e }
    }

    /// Dimension over `K`.
    pub fn dim(&self) -> usize {
        self.b.rows
    }

    pub fn apply_tau(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.base.k;
        let sv: Vec<F::Elem> = v.iter().map(|x| k.frobenius(x)).collect();
        crate::algebra::matrix::mat_vec(k, &self.b, &sv)
    }

    pub fn tau_lin_bijective(&self) -> bool {
        rank(&self.base.k, &self.b) == self.dim()
    }

    pub fn tau_nilpotent(&self) -> bool {
        self.tau_power(self.dim()).data.iter().all(|x| self.base.k.is_zero(x))
    }

    /// Matrix of `tau^m`: `b sigma(b) ... sigma^{m-1}(b)`.
    pub fn tau_power(&self, m: usize) -> Matrix<F::Elem> {
        let k = &self.base.k;
        let mut acc = identity(k, self.dim());
        let mut cur = self.b.clone();
        for _ in 0..m {
            acc = mat_mul(k, &acc, &cur);
            cur = sigma_mat(k, &cur);
        }
        acc
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let z = self.base.k.zero();
        TorsionBoldModule {
            base: self.base.clone(),
            t_action: self.t_action.block_diag(&other.t_action, z.clone()),
            b: self.b.block_diag(&other.b, z),
        }
    }

    /// Elementary divisors of the underlying `K[t]`-module (nonunits only).
    pub fn divisors(&self) -> Vec<Poly<F::Elem>> {
        let r = self.base.ring();
        let n = self.dim();
        let m = Matrix::from_fn(n, n, |i, j| {
            let c = r.constant(self.base.k.neg(self.t_action.get(i, j)));
            if i == j {
                r.add(&c, &r.x())
            } else {
                c
            }
        });
        smith_form(&r, &m).divisors().into_iter().filter(|d| d.degree().unwrap_or(1) > 0).collect()
    }

    /// Checks that kernel and cokernel of `tau_lin` are supported at
    /// `t - theta`.
    pub fn check_characteristic(&self) -> Result<()> {
        let k = &self.base.k;
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        let theta = Matrix::from_fn(n, n, |i, j| if i == j { self.base.theta.clone() } else { k.zero() });
        let image = column_space(k, &self.b);
        // Cokernel: (t - theta)^n T lies in the image.
        let nil = mat_pow(k, &mat_sub(k, &self.t_action, &theta), n as u64);
        let cols: Vec<Vec<F::Elem>> = (0..n).map(|j| nil.col(j)).collect();
        if !in_span(k, &image, &cols, n) {
            return Err(Error::CharacteristicViolation { factor: self.offending(&image) });
        }
        // Kernel: t acts on the twist by sigma(t_action).
        let st = sigma_mat(k, &self.t_action);
        let ker = kernel(k, &self.b);
        let nil = mat_pow(k, &mat_sub(k, &st, &theta), n as u64);
        for v in &ker {
            let w = crate::algebra::matrix::mat_vec(k, &nil, v);
            if w.iter().any(|x| !k.is_zero(x)) {
                return Err(Error::CharacteristicViolation { factor: "kernel of tau_lin off t - theta".into() });
            }
        }
        Ok(())
    }

    /// Characteristic polynomial of `t` on `T / im tau_lin` with the
    /// `t - theta` part removed.
    fn offending(&self, image: &[Vec<F::Elem>]) -> String {
        let k = &self.base.k;
        let n = self.dim();
        let mut basis = image.to_vec();
        for j in 0..n {
            let e: Vec<F::Elem> = (0..n).map(|i| if i == j { k.one() } else { k.zero() }).collect();
            let mut trial = basis.clone();
            trial.push(e.clone());
            if rank(k, &Matrix::from_cols(n, &trial)) == trial.len() {
                basis = trial;
            }
        }
        let p = Matrix::from_cols(n, &basis);
        let c = n - image.len();
        let tq = Matrix::from_fn(c, c, |i, j| {
            let v = crate::algebra::matrix::mat_vec(k, &self.t_action, &basis[image.len() + j]);
            let x = crate::algebra::matrix::solve(k, &p, &v).unwrap();
            x[image.len() + i].clone()
        });
        let r = self.base.ring();
        let mut f = r.from_coeffs(charpoly(k, &tq));
        let lin = self.base.char_linear();
        while let Some(q) = r.exact_div(&f, &lin) {
            f = q;
        }
        k.encode_poly(&f)
    }

    /// Minimal-degree monic `a` in `F_q[t]` with `a(t) T = 0`, ascending.
    pub fn annihilator(&self) -> Vec<u32> {
        let k = &self.base.k;
        let n = self.dim();
        let p = k.characteristic();
        if n == 0 {
            return vec![1];
        }
        let mut powers = vec![identity(k, n)];
        loop {
            let d = powers.len() - 1;
            let all: Vec<F::Elem> = powers.iter().flat_map(|m| m.data.iter().cloned()).collect();
            let flat = k.flatten(&all);
            let per = n * n;
            let vecs: Vec<Vec<u32>> =
                (0..=d).map(|i| flat[i * per..(i + 1) * per].iter().flatten().copied().collect()).collect();
            let len = vecs[0].len();
            let m = FpMat::from_cols(p, len, &vecs);
            let ker = m.kernel();
            if let Some(v) = ker.into_iter().find(|v| v[d] != 0) {
                let inv = crate::algebra::Fp::new(p).inv(&v[d]).unwrap();
                return v.iter().map(|x| (*x as u64 * inv as u64 % p as u64) as u32).collect();
            }
            let next = mat_mul(k, powers.last().unwrap(), &self.t_action);
            powers.push(next);
        }
    }
}

/// Result of [`torsion_filtration`].
#[derive(Clone, Debug)]
pub struct TorsionFiltration<E> {
    /// `K`-basis of the largest submodule on which `tau_lin` is bijective.
    pub bijective_part: Vec<Vec<E>>,
    /// `dim_K T - dim_K T'`.
    pub nilpotent_dim: usize,
    /// Bases of `T = G_0 > G_1 > ... > G_m = T'`, `G_k = im tau^k`; `tau`
    /// kills each `G_k / G_{k+1}`.
    pub flag: Vec<Vec<Vec<E>>>,
    /// Monic generator of the annihilator in `F_q[t]`, ascending.
    pub annihilator: Vec<u32>,
}

impl<E> TorsionFiltration<E> {
    /// Number of steps in the flag.
    pub fn flag_length(&self) -> usize {
        self.flag.len() - 1
    }
}

/// Canonical filtration, after validating the characteristic condition.
pub fn torsion_filtration<F: Field + Encode>(t: &TorsionBoldModule<F>) -> Result<TorsionFiltration<F::Elem>> {
    t.check_characteristic()?;
    Ok(filtration_unchecked(t))
}

/// Filtration without the characteristic check.
pub fn filtration_unchecked<F: Field + Encode>(t: &TorsionBoldModule<F>) -> TorsionFiltration<F::Elem> {
    let k = &t.base.k;
    let n = t.dim();
    let id = identity(k, n);
    let mut flag = vec![(0..n).map(|j| id.col(j)).collect::<Vec<_>>()];
    let mut m = 1;
    loop {
        let img = column_space(k, &t.tau_power(m));
        let prev = flag.last().unwrap().len();
        if img.len() == prev {
            break;
        }
        flag.push(img);
        m += 1;
    }
    let bijective_part = flag.last().unwrap().clone();
    TorsionFiltration { nilpotent_dim: n - bijective_part.len(), bijective_part, flag, annihilator: t.annihilator() }
}

/// Sub-module spanned by `cols` (a `t`- and `tau`-stable subspace), in the
/// basis `cols`.
pub fn restrict_to<F: Field + Encode>(t: &TorsionBoldModule<F>, cols: &[Vec<F::Elem>]) -> Result<TorsionBoldModule<F>> {
    let k = &t.base.k;
    let n = t.dim();
    let d = cols.len();
    if d == 0 {
        return Ok(TorsionBoldModule::zero(&t.base));
    }
    let p = Matrix::from_cols(n, cols);
    let express = |v: Vec<F::Elem>| -> Result<Vec<F::Elem>> {
        crate::algebra::matrix::solve(k, &p, &v).ok_or_else(|| Error::Invalid("subspace is not stable".into()))
    };
    let mut tc = Vec::with_capacity(d);
    let mut bc = Vec::with_capacity(d);
    for c in cols {
        tc.push(express(crate::algebra::matrix::mat_vec(k, &t.t_action, c))?);
        // tau(P x) = B sigma(P) sigma(x): column j of B sigma(P).
        let sc: Vec<F::Elem> = c.iter().map(|x| k.frobenius(x)).collect();
        bc.push(express(crate::algebra::matrix::mat_vec(k, &t.b, &sc))?);
    }
    TorsionBoldModule::new(&t.base, Matrix::from_cols(d, &tc), Matrix::from_cols(d, &bc))
}
