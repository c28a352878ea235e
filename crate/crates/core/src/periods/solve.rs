//! Solvers: `sigma(s) = f*s` by the coefficient recursion, and truncated
//! solutions of `sigma^m(F) = Delta*F` with the valuation bound on them.

use super::laurent::{LaurentApprox, TowerCoeffs};
use super::places::{vx_over, Place, PlaceKind, PlaceSet, RatLaurent, Val, Valuation};
use crate::algebra::additive::solve_additive;
use crate::algebra::factor::factor;
use crate::algebra::matrix::Matrix;
use crate::algebra::{Field, FpMat, Gf, GfElem, Poly, PolyRing, RatField, Ring};
use crate::error::{Error, Result};

/// Default cap on the constant-field level reached by the solvers.
pub const DEFAULT_PERIOD_LEVEL: usize = 256;

/// Output of [`sigma_quotient_solve`].
#[derive(Clone, Debug)]
pub struct SigmaQuotient {
    /// Level of the constant field holding the coefficients of `s`.
    pub level: usize,
    /// `s`, known through `t^precision`.
    pub s: LaurentApprox<Gf>,
    /// The input `f` embedded at `level`.
    pub f: LaurentApprox<Gf>,
    pub precision: i64,
}

impl SigmaQuotient {
    /// Whether `sigma(s) - f*s` vanishes through `t^precision`.
    pub fn verify(&self) -> Result<bool> {
        let lhs = self.s.sigma();
        let rhs = self.f.mul(&self.s)?;
        let diff = lhs.sub(&rhs)?.truncate(self.precision + 1);
        Ok(diff.end() > self.precision && diff.terms().next().is_none())
    }
}

/// Coefficients `(a_i, b_i)` with `s_{r,i} = a_i X^{q^i} + b_i` in terms of
/// `X = s_{r,0}`, from `s_{r,i} = (s_{r,i-1}^q - C_i) / f_{0,i}`.
fn chain(field: &Gf, f0: &[GfElem], c: &[GfElem]) -> Vec<(GfElem, GfElem)> {
    let mut out = vec![(field.one(), field.zero())];
    for i in 1..f0.len() {
        let (a, b) = &out[i - 1];
        let inv = field.inv(&f0[i]).unwrap();
        let na = field.mul(&field.frobenius(a), &inv);
        let nb = field.mul(&field.sub(&field.frobenius(b), &c[i]), &inv);
        out.push((na, nb));
    }
    out
}

/// Solves `sigma(s) = f*s` through `t^n` for a unit `f` of order zero.
///
/// Each coefficient `s_r` reduces to one additive equation
/// `X^{q^d} - phi X = c_r` for its first component; the remaining components
/// follow from the cyclic system. The first coefficient takes a nonzero root,
/// later ones the particular root returned by the additive solver. The
/// constant field grows whenever an equation has no root at the current
/// level.
pub fn sigma_quotient_solve(f: &LaurentApprox<Gf>, n: i64, max_level: Option<usize>) -> Result<SigmaQuotient> {
    if n < 0 {
        return Err(Error::Invalid("precision must be nonnegative".into()));
    }
    if !f.is_unit_of_order_zero() {
        return Err(Error::Hypothesis("f must have order 0 and a leading coefficient with nonzero components".into()));
    }
    if f.end() <= n {
        return Err(Error::Hypothesis(format!("f is known only below t^{}", f.end())));
    }
    let cap = max_level.unwrap_or(DEFAULT_PERIOD_LEVEL);
    let tower = f.tower.clone();
    let d = f.d;
    let mut level = f.field.level();
    let mut fl = f.clone();
    let mut s: Vec<Vec<GfElem>> = Vec::new();
    for r in 0..=n {
        let field = fl.field.clone();
        let fc: Vec<Vec<GfElem>> = (0..=r).map(|l| fl.coeff(l).unwrap()).collect();
        let c: Vec<GfElem> = (0..d)
            .map(|i| {
                let mut acc = field.zero();
                for l in 1..=r as usize {
                    acc = field.add(&acc, &field.mul(&fc[l][i], &s[r as usize - l][i]));
                }
                acc
            })
            .collect();
        let ab = chain(&field, &fc[0], &c);
        let (a_last, b_last) = &ab[d - 1];
        let a_q = field.frobenius(a_last);
        let a_q_inv = field.inv(&a_q).ok_or_else(|| Error::Internal("vanishing chain coefficient".into()))?;
        let phi = field.mul(&fc[0][0], &a_q_inv);
        let rhs = field.mul(&field.sub(&c[0], &field.frobenius(b_last)), &a_q_inv);
        let sol = solve_additive(&tower, level, d as u32, &phi, &rhs, Some(cap))?;
        if sol.level != level {
            let m = sol.level;
            fl = fl.embed(m)?;
            for t in s.iter_mut() {
                for x in t.iter_mut() {
                    *x = tower.embed(x, level, m);
                }
            }
            level = m;
        }
        let x0 = if r == 0 {
            sol.kernel.first().cloned().ok_or_else(|| Error::Internal("additive kernel is empty".into()))?
        } else {
            sol.particular.clone()
        };
        // Rebuild the chain at the (possibly larger) level.
        let field = fl.field.clone();
        let f0 = fl.coeff(0).unwrap();
        let c: Vec<GfElem> = (0..d)
            .map(|i| {
                let mut acc = field.zero();
                for l in 1..=r {
                    let fl_l = fl.coeff(l).unwrap();
                    acc = field.add(&acc, &field.mul(&fl_l[i], &s[(r - l) as usize][i]));
                }
                acc
            })
            .collect();
        let ab = chain(&field, &f0, &c);
        let tuple: Vec<GfElem> =
            (0..d).map(|i| field.add(&field.mul(&ab[i].0, &field.frobenius_pow(&x0, i as u32)), &ab[i].1)).collect();
        s.push(tuple);
    }
    let s = LaurentApprox::truncated(tower, fl.field.clone(), d, 0, s, n + 1)?;
    Ok(SigmaQuotient { level, s, f: fl, precision: n })
}

/// Output of [`fixpoint_bound_check`].
#[derive(Clone, Debug)]
pub struct FixpointCheck {
    /// Constant-field level of the solutions.
    pub level: usize,
    /// `q^m`.
    pub q_power: u64,
    /// Prime-field dimension of the truncated solution space found.
    pub dimension: usize,
    /// One solution, preferring a nonzero constant term.
    pub solution: Vec<RatLaurent>,
    /// `v_x` of `solution` (minimum over the places above `x`), a window
    /// minimum.
    pub solution_vx: Valuation,
    pub delta_vx: Val,
    /// Whether `(q^m - 1) v_x(F) >= v_x(Delta)` for every basis solution
    /// at every place above `x`.
    pub bound_holds: bool,
}

struct Ansatz {
    /// Common denominator of the coefficients of `Delta`.
    e: Poly<GfElem>,
    /// Denominator allowed in the solution.
    den: Poly<GfElem>,
    /// Numerator degree bound.
    deg: usize,
}

fn min_valuation(places: &PlaceSet, level: usize, delta: &Matrix<RatLaurent>, n: i64, x: &Place) -> Result<Val> {
    let mut best = Val::Inf;
    for i in 0..delta.rows {
        for j in 0..delta.cols {
            for (r, t) in delta.get(i, j).terms() {
                if r > n {
                    continue;
                }
                for c in t {
                    best = best.min(places.value(level, c, x)?);
                }
            }
        }
    }
    Ok(best)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Denominator and degree bounds for the search: pole orders allowed by
/// the valuation bound at every pole of `Delta`, plus one extra order at
/// the tested place and at infinity so that a violation would be visible.
fn ansatz(places: &PlaceSet, k: usize, delta: &Matrix<RatLaurent>, n: i64, x: &Place, q1: i64) -> Result<Ansatz> {
    let field = places.tower.level(k);
    let ring = PolyRing::new(field.clone());
    let mut e = ring.one();
    for i in 0..delta.rows {
        for j in 0..delta.cols {
            for (r, t) in delta.get(i, j).terms() {
                if r <= n {
                    for c in t {
                        e = ring.lcm(&e, &c.den);
                    }
                }
            }
        }
    }
    let mut pis: Vec<Poly<GfElem>> = factor(&field, &e).into_iter().map(|(g, _)| g).collect();
    let xk = places.below(x, k)?;
    if let PlaceKind::Finite(pi) = &xk.kind {
        if !pis.contains(pi) {
            pis.push(pi.clone());
        }
    }
    let mut den = ring.one();
    for pi in pis {
        let place = Place { level: k, kind: PlaceKind::Finite(pi.clone()) };
        let v = match min_valuation(places, k, delta, n, &place)? {
            Val::Fin(v) => v,
            Val::Inf => 0,
        };
        let b = ceil_div((-v).max(0), q1) + 1;
        den = ring.mul(&den, &ring.pow(&pi, b as u64));
    }
    let vinf = match min_valuation(places, k, delta, n, &Place::infinity(k))? {
        Val::Fin(v) => v,
        Val::Inf => 0,
    };
    let deg = den.deg() as usize + ((-vinf).max(0) / q1) as usize + 1;
    Ok(Ansatz { e, den, deg })
}

fn embed_poly(places: &PlaceSet, f: &Poly<GfElem>, a: usize, b: usize) -> Poly<GfElem> {
    Poly { coeffs: f.coeffs.iter().map(|c| places.tower.embed(c, a, b)).collect() }
}

/// Searches truncated solutions of `sigma^m(F) = Delta*F` through `t^n`
/// with coefficients in `F_{p^M}(u)` and checks `v_x(F) >= v_x(Delta)/(q^m-1)`
/// on them.
///
/// The recursion on `t`-coefficients is linear over the prime field once
/// the denominators of the unknowns are fixed, so all coefficients up to
/// `t^n` are solved in one system; a greedy coefficient-by-coefficient
/// choice could leave the rational functions even when a rational solution
/// exists. `M` runs through multiples of the level of `x` until a nonzero
/// solution appears.
pub fn fixpoint_bound_check(
    delta: &Matrix<RatLaurent>,
    m: u32,
    x: &Place,
    n: i64,
    max_level: Option<usize>,
) -> Result<FixpointCheck> {
    if !delta.is_square() || delta.rows == 0 {
        return Err(Error::Invalid("delta must be a nonempty square matrix".into()));
    }
    if m == 0 || n < 0 {
        return Err(Error::Invalid("need m >= 1 and a nonnegative precision".into()));
    }
    let first = delta.get(0, 0);
    let (tower, k, d) = (first.tower.clone(), first.field.level(), first.d);
    for i in 0..delta.rows {
        for j in 0..delta.cols {
            let e = delta.get(i, j);
            if e.field.level() != k || e.d != d {
                return Err(Error::Mismatch("delta entries over different coefficient rings".into()));
            }
            if e.order().is_some_and(|o| o < 0) {
                return Err(Error::Hypothesis("delta must have entries without negative powers of t".into()));
            }
            if e.end() <= n {
                return Err(Error::Hypothesis(format!("delta is known only below t^{}", e.end())));
            }
        }
    }
    if !x.level.is_multiple_of(k) {
        return Err(Error::UntrackedPlace(format!("place at level {} over coefficients at level {k}", x.level)));
    }
    let p = tower.p();
    let q_power = (p as u64).checked_pow(m).ok_or_else(|| Error::Invalid("q^m overflows".into()))?;
    let q1 = q_power as i64 - 1;
    let places = PlaceSet::new(tower.clone(), k);
    let delta_vx = min_valuation(&places, k, delta, n, &places.below(x, k)?)?;
    let an = ansatz(&places, k, delta, n, x, q1)?;
    let cap = max_level.unwrap_or(DEFAULT_PERIOD_LEVEL);
    let rank = delta.rows;
    let nn = n as usize + 1;
    let mut big = x.level;
    while big <= cap {
        let field = tower.level(big);
        let ring = PolyRing::new(field.clone());
        let e = embed_poly(&places, &an.e, k, big);
        let den = embed_poly(&places, &an.den, k, big);
        let den_pow = ring.pow(&den, q1 as u64);
        // D^{Q-1} * E * delta_{ijlc} as polynomials.
        let mut coef = vec![Poly::zero(); rank * rank * nn * d];
        let idx = |i: usize, j: usize, l: usize, c: usize| ((i * rank + j) * nn + l) * d + c;
        let rf = RatField::new(tower.level(k));
        let rk = PolyRing::new(tower.level(k));
        let mut max_deg = 0usize;
        for i in 0..rank {
            for j in 0..rank {
                for l in 0..nn {
                    let t = delta.get(i, j).coeff(l as i64).unwrap();
                    for c in 0..d {
                        if rf.is_zero(&t[c]) {
                            continue;
                        }
                        let q = rk.exact_div(&rk.mul(&an.e, &t[c].num), &t[c].den).unwrap();
                        let poly = ring.mul(&den_pow, &embed_poly(&places, &q, k, big));
                        max_deg = max_deg.max(poly.deg().max(0) as usize);
                        coef[idx(i, j, l, c)] = poly;
                    }
                }
            }
        }
        let b = an.deg;
        let g = (e.deg().max(0) as usize + q_power as usize * b).max(max_deg + b) + 1;
        let rows = rank * nn * d * g * big;
        let cols = rank * nn * d * (b + 1) * big;
        let row = |i: usize, r: usize, c: usize, deg: usize, a: usize| (((i * nn + r) * d + c) * g + deg) * big + a;
        let col =
            |j: usize, r: usize, c: usize, deg: usize, a: usize| (((j * nn + r) * d + c) * (b + 1) + deg) * big + a;
        let mut mat = FpMat::zeros(p, rows, cols);
        let basis: Vec<GfElem> = (0..big).map(|a| field.basis_elem(a)).collect();
        for (a, gen) in basis.iter().enumerate() {
            let gen_q = field.frobenius_pow(gen, m);
            let lhs = ring.scale(&e, &gen_q);
            for j in 0..rank {
                for r in 0..nn {
                    for c0 in 0..d {
                        for dg in 0..=b {
                            let cl = col(j, r, c0, dg, a);
                            // sigma^m moves component c0 to c0 + m and raises
                            // the monomial to the power q^m.
                            let ce = (c0 + m as usize) % d;
                            for (kk, v) in lhs.coeffs.iter().enumerate() {
                                let deg = kk + dg * q_power as usize;
                                for (aa, x) in v.iter().enumerate() {
                                    if *x != 0 {
                                        mat.add_at(row(j, r, ce, deg, aa), cl, *x);
                                    }
                                }
                            }
                            for i in 0..rank {
                                for l in 0..nn - r {
                                    let cf = &coef[idx(i, j, l, c0)];
                                    if cf.is_zero() {
                                        continue;
                                    }
                                    for (kk, v) in cf.coeffs.iter().enumerate() {
                                        let w = field.mul(v, gen);
                                        for (aa, x) in w.iter().enumerate() {
                                            if *x != 0 {
                                                mat.add_at(row(i, r + l, c0, kk + dg, aa), cl, (p - *x) % p);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let kernel = mat.kernel();
        if kernel.is_empty() {
            big += x.level;
            continue;
        }
        let rfield = RatField::new(field.clone());
        let to_solution = |v: &[u32]| -> Result<Vec<RatLaurent>> {
            (0..rank)
                .map(|j| {
                    let coeffs: Vec<Vec<_>> = (0..nn)
                        .map(|r| {
                            (0..d)
                                .map(|c| {
                                    let num: Vec<GfElem> = (0..=b)
                                        .map(|dg| field.from_coords(&v[col(j, r, c, dg, 0)..col(j, r, c, dg, 0) + big]))
                                        .collect();
                                    rfield.frac(ring.from_coeffs(num), den.clone()).unwrap()
                                })
                                .collect()
                        })
                        .collect();
                    LaurentApprox::truncated(tower.clone(), rfield.clone(), d, 0, coeffs, nn as i64)
                })
                .collect()
        };
        let constant_part = |v: &[u32]| {
            (0..rank).any(|j| {
                (0..d).any(|c| {
                    (0..=b).any(|dg| {
                        let s = col(j, 0, c, dg, 0);
                        v[s..s + big].iter().any(|&z| z != 0)
                    })
                })
            })
        };
        let holds = |val: Val| match (val, delta_vx) {
            (Val::Inf, _) => true,
            (Val::Fin(_), Val::Inf) => false,
            (Val::Fin(a), Val::Fin(dv)) => a * q1 >= dv,
        };
        let mut bound_holds = true;
        for v in &kernel {
            for comp in to_solution(v)? {
                for (_, val) in vx_over(&comp, x, big)? {
                    bound_holds &= holds(val.value);
                }
            }
        }
        let primary = kernel.iter().find(|v| constant_part(v)).unwrap_or(&kernel[0]);
        let solution = to_solution(primary)?;
        let mut value = Val::Inf;
        for comp in &solution {
            for (_, val) in vx_over(comp, x, big)? {
                value = value.min(val.value);
            }
        }
        return Ok(FixpointCheck {
            level: big,
            q_power,
            dimension: kernel.len(),
            solution,
            solution_vx: Valuation { value, exact: false },
            delta_vx,
            bound_holds,
        });
    }
    Err(Error::EscalationCap { cap })
}

/// `sigma^m(F) - Delta*F` through `t^n`, for checking solver output.
pub fn fixpoint_residual(delta: &Matrix<RatLaurent>, m: u32, f: &[RatLaurent], n: i64) -> Result<Vec<RatLaurent>> {
    let level = f[0].field.level();
    let mut out = Vec::new();
    for i in 0..delta.rows {
        let mut acc = f[i].sigma_pow(m);
        for (j, fj) in f.iter().enumerate() {
            let dij = delta.get(i, j).embed(level)?;
            acc = acc.sub(&dij.mul(fj)?)?;
        }
        out.push(acc.truncate(n + 1));
    }
    Ok(out)
}
