//! Isogenies: cokernels, inversion up to a scalar, and the
//! separable / purely inseparable factorisation.

use super::torsion::{filtration_unchecked, TorsionBoldModule};
use super::{EffectiveMotive, Motive, MotiveHom, PolyMat};
use crate::algebra::encode::Encode;
use crate::algebra::matrix::{adjugate, det, identity, mat_mul, Matrix};
use crate::algebra::polymat::{column_span_basis, inverse_unimodular, sigma_matrix, smith_form};
use crate::algebra::{Field, Poly, Ring};
use crate::error::{Error, Result};

/// Cokernel of an injective hom matrix, with the change of basis used.
#[derive(Clone, Debug)]
pub struct Cokernel<F: Field> {
    pub module: TorsionBoldModule<F>,
    /// `u` of the Smith form `u f v = diag(d)`.
    pub u: PolyMat<F>,
    /// All Smith divisors (units included), monic.
    pub divisors: Vec<Poly<F::Elem>>,
}

/// Cokernel of `f: S -> T` for `tau`-matrices `delta_t` on `T`, or `None`
/// if `f` is not injective.
fn cokernel<F: Field + Encode>(f: &MotiveHom<F>) -> Result<Option<Cokernel<F>>> {
    let base = f.src.base();
    let r = base.ring();
    if f.mat.rows != f.mat.cols {
        return Ok(None);
    }
    let s = smith_form(&r, &f.mat);
    let divisors = s.divisors();
    if divisors.iter().any(|d| d.is_zero()) {
        return Ok(None);
    }
    let delta_t = f.tgt.hom_source_delta(&f.src);
    let uinv = inverse_unimodular(&r, &s.u).ok_or_else(|| Error::Internal("Smith transform not unimodular".into()))?;
    let c = mat_mul(&r, &mat_mul(&r, &s.u, &delta_t), &sigma_matrix(&r, &uinv));
    let keep: Vec<usize> = (0..divisors.len()).filter(|&i| divisors[i].degree().unwrap() > 0).collect();
    let dk: Vec<Poly<F::Elem>> = keep.iter().map(|&i| divisors[i].clone()).collect();
    let ck = c.submatrix(&keep, &keep);
    let module = TorsionBoldModule::from_presentation(base, &dk, &ck)?;
    Ok(Some(Cokernel { module, u: s.u, divisors }))
}

/// `Some(cokernel)` iff `f` is an isogeny.
pub fn is_isogeny<F: Field + Encode>(f: &MotiveHom<F>) -> Result<Option<Cokernel<F>>> {
    cokernel(f)
}

/// `(a, g)` with `g . f = [a]` and `f . g = [a]`, `a` the annihilator of the
/// cokernel (ascending coefficients in `F_q`).
pub fn invert_isogeny<F: Field + Encode>(f: &MotiveHom<F>) -> Result<(Vec<u32>, MotiveHom<F>)> {
    let coker = cokernel(f)?.ok_or_else(|| Error::NotIsogeny("matrix is singular".into()))?;
    let a = coker.module.annihilator();
    let base = f.src.base();
    let r = base.ring();
    let ap = base.lift_prime_poly(&a);
    let d = det(&r, &f.mat);
    let adj = adjugate(&r, &f.mat);
    let mut data = Vec::with_capacity(adj.data.len());
    for x in &adj.data {
        let q = r.exact_div(&r.mul(&ap, x), &d).ok_or_else(|| Error::Internal("a * f^-1 is not integral".into()))?;
        data.push(q);
    }
    let g = MotiveHom { src: f.tgt.clone(), tgt: f.src.clone(), mat: Matrix { rows: adj.rows, cols: adj.cols, data } };
    Ok((a, g))
}

/// `(f1, f2)` with `f = f2 . f1`, `f1` separable and `f2` purely
/// inseparable.
pub fn factor_sep_insep<F: Field + Encode>(f: &MotiveHom<F>) -> Result<(MotiveHom<F>, MotiveHom<F>)> {
    let coker = cokernel(f)?.ok_or_else(|| Error::NotIsogeny("matrix is singular".into()))?;
    let base = f.src.base().clone();
    if base.is_generic() || coker.module.tau_lin_bijective() {
        return Ok((f.clone(), MotiveHom::identity(&f.tgt)));
    }
    let filt = filtration_unchecked(&coker.module);
    if filt.bijective_part.is_empty() {
        return Ok((MotiveHom::identity(&f.src), f.clone()));
    }
    let r = base.ring();
    let n = f.mat.rows;
    // Lift T' to the target lattice: (i, l) coordinate -> t^l in Smith
    // coordinate i, then back through u^{-1}.
    let uinv = inverse_unimodular(&r, &coker.u).unwrap();
    let nontrivial: Vec<usize> = (0..n).filter(|&i| coker.divisors[i].degree().unwrap() > 0).collect();
    let mut gens: Vec<Vec<Poly<F::Elem>>> = (0..f.mat.cols).map(|j| f.mat.col(j)).collect();
    for v in &filt.bijective_part {
        let mut w = vec![r.zero(); n];
        let mut pos = 0;
        for &i in &nontrivial {
            let deg = coker.divisors[i].degree().unwrap();
            w[i] = r.from_coeffs(v[pos..pos + deg].to_vec());
            pos += deg;
        }
        gens.push(crate::algebra::matrix::mat_vec(&r, &uinv, &w));
    }
    let gm = Matrix::from_cols(n, &gens);
    let p = column_span_basis(&r, &gm)?;
    // Delta of the intermediate lattice: p^{-1} delta_T sigma(p).
    let delta_t = f.tgt.hom_source_delta(&f.src);
    let dp = det(&r, &p);
    let adjp = adjugate(&r, &p);
    let num = mat_mul(&r, &mat_mul(&r, &adjp, &delta_t), &sigma_matrix(&r, &p));
    let exact = |m: &PolyMat<F>| -> Result<PolyMat<F>> {
        let data: Option<Vec<Poly<F::Elem>>> = m.data.iter().map(|x| r.exact_div(x, &dp)).collect();
        let data = data.ok_or_else(|| Error::Internal("intermediate lattice is not tau-stable".into()))?;
        Ok(Matrix { rows: m.rows, cols: m.cols, data })
    };
    let delta_n = exact(&num)?;
    let mid_m = EffectiveMotive::new(&base, delta_n)?;
    let mid = Motive { m: mid_m, l: f.src.l.tensor(&f.tgt.l) };
    let f1 = MotiveHom { src: f.src.clone(), tgt: mid.clone(), mat: exact(&mat_mul(&r, &adjp, &f.mat))? };
    let f2 = MotiveHom { src: mid, tgt: f.tgt.clone(), mat: p };
    Ok((f1, f2))
}

/// `true` iff the cokernel of `f` has bijective `tau_lin`.
pub fn is_separable<F: Field + Encode>(f: &MotiveHom<F>) -> Result<bool> {
    let c = cokernel(f)?.ok_or_else(|| Error::NotIsogeny("matrix is singular".into()))?;
    Ok(c.module.tau_lin_bijective())
}

/// `true` iff `tau` is nilpotent on the cokernel of `f`.
pub fn is_purely_inseparable<F: Field + Encode>(f: &MotiveHom<F>) -> Result<bool> {
    let c = cokernel(f)?.ok_or_else(|| Error::NotIsogeny("matrix is singular".into()))?;
    Ok(c.module.tau_nilpotent())
}

/// `[a]` as a plain matrix on `x`.
pub fn scalar_matrix<F: Field + Encode>(x: &Motive<F>, a: &[u32]) -> PolyMat<F> {
    let ap = x.base().lift_prime_poly(a);
    let r = x.base().ring();
    let id = identity(&r, x.rank());
    id.map(|e| r.mul(e, &ap))
}
