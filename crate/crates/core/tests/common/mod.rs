//! Random fixtures shared by the period tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use amotive::algebra::matrix::Matrix;
use amotive::algebra::*;
use amotive::periods::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn tower3() -> Arc<FieldTower> {
    tower_for(&Gf::with_degree(3, 1))
}

pub fn rat_field(tower: &FieldTower, level: usize) -> RatField<Gf> {
    RatField::new(tower.level(level))
}

pub fn u_poly(field: &Gf, coeffs: &[i64]) -> Poly<GfElem> {
    PolyRing::new(field.clone()).from_coeffs(coeffs.iter().map(|c| field.from_i64(*c)).collect())
}

/// Rational function from integer coefficient lists.
pub fn rat(rf: &RatField<Gf>, num: &[i64], den: &[i64]) -> RatFunc<GfElem> {
    let k = rf.base();
    rf.frac(u_poly(k, num), u_poly(k, den)).unwrap()
}

pub fn random_elem(rng: &mut ChaCha8Rng, k: &Gf) -> GfElem {
    k.from_index(rng.gen_range(0..k.size().unwrap()))
}

pub fn random_poly(rng: &mut ChaCha8Rng, k: &Gf, max_deg: usize) -> Poly<GfElem> {
    let deg = rng.gen_range(0..=max_deg);
    PolyRing::new(k.clone()).from_coeffs((0..=deg).map(|_| random_elem(rng, k)).collect())
}

/// Random rational function with monic denominator of degree at most
/// `den_deg`; zero with probability about one in `zero_odds`.
pub fn random_rat(rng: &mut ChaCha8Rng, rf: &RatField<Gf>, num_deg: usize, den_deg: usize) -> RatFunc<GfElem> {
    let k = rf.base().clone();
    let num = random_poly(rng, &k, num_deg);
    let dd = rng.gen_range(0..=den_deg);
    let mut den: Vec<GfElem> = (0..dd).map(|_| random_elem(rng, &k)).collect();
    den.push(k.one());
    rf.frac(num, PolyRing::new(k).from_coeffs(den)).unwrap()
}

pub fn random_nonzero_rat(rng: &mut ChaCha8Rng, rf: &RatField<Gf>, num_deg: usize, den_deg: usize) -> RatFunc<GfElem> {
    loop {
        let x = random_rat(rng, rf, num_deg, den_deg);
        if !rf.is_zero(&x) {
            return x;
        }
    }
}

/// Random finitely supported series with some zero coefficients.
pub fn random_series(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, level: usize, d: usize) -> RatLaurent {
    let rf = rat_field(tower, level);
    let start = rng.gen_range(-1..=1);
    let len = rng.gen_range(1..=3);
    let coeffs = (0..len)
        .map(|_| {
            (0..d).map(|_| if rng.gen_bool(0.25) { rf.zero() } else { random_nonzero_rat(rng, &rf, 3, 2) }).collect()
        })
        .collect();
    LaurentApprox::exact(tower.clone(), rf, d, start, coeffs).unwrap()
}

/// Places used by the randomized checks: level 1 places of small degree,
/// infinity, and the level 2 places above `u^2 + 1`.
pub fn test_places(tower: &Arc<FieldTower>) -> Vec<Place> {
    let ps = PlaceSet::new(tower.clone(), 1);
    let mut out: Vec<Place> = ps.base_places(2);
    let x = Place::finite(tower, 1, u_poly(&tower.level(1), &[1, 0, 1])).unwrap();
    out.extend(ps.lifts(&x, 2).unwrap());
    out.push(Place::infinity(2));
    out
}

/// Random series at a level dividing the level of `x`.
pub fn random_series_for(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, x: &Place, d: usize) -> RatLaurent {
    let level = if x.level.is_multiple_of(2) && rng.gen_bool(0.5) { 2 } else { 1 };
    random_series(rng, tower, level, d)
}

/// `sigma^m(G) G^{-1}` through `t^n` for a matrix of series `G` whose
/// constant term is invertible. `sigma^m(F) = Delta F` then has the
/// solutions `G c` with `c` constant.
pub fn conjugated_delta(g: &Matrix<RatLaurent>, m: u32, n: i64) -> Matrix<RatLaurent> {
    let r = g.rows;
    let sg = g.map(|e| e.sigma_pow(m));
    let inv = series_matrix_inverse(g, n);
    Matrix::from_fn(r, r, |i, j| {
        let mut acc = LaurentApprox::zero(g.get(0, 0).tower.clone(), g.get(0, 0).field.clone(), g.get(0, 0).d);
        for k in 0..r {
            acc = acc.add(&sg.get(i, k).mul(inv.get(k, j)).unwrap()).unwrap();
        }
        acc.truncate(n + 1)
    })
}

/// Inverse of a 1x1 or 2x2 matrix of series, through `t^n`.
pub fn series_matrix_inverse(g: &Matrix<RatLaurent>, n: i64) -> Matrix<RatLaurent> {
    match g.rows {
        1 => Matrix::from_rows(vec![vec![g.get(0, 0).inverse(n + 1).unwrap()]]),
        2 => {
            let det = g.get(0, 0).mul(g.get(1, 1)).unwrap().sub(&g.get(0, 1).mul(g.get(1, 0)).unwrap()).unwrap();
            let di = det.inverse(n + 1).unwrap();
            let neg = |e: &RatLaurent| LaurentApprox::zero(e.tower.clone(), e.field.clone(), e.d).sub(e).unwrap();
            let adj = [[g.get(1, 1).clone(), neg(g.get(0, 1))], [neg(g.get(1, 0)), g.get(0, 0).clone()]];
            Matrix::from_fn(2, 2, |i, j| adj[i][j].mul(&di).unwrap().truncate(n + 1))
        }
        _ => unimplemented!("fixtures use rank at most 2"),
    }
}

fn random_t_poly(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, d: usize, terms: usize, den_deg: usize) -> RatLaurent {
    let rf = rat_field(tower, 1);
    let coeffs = (0..terms).map(|_| (0..d).map(|_| random_rat(rng, &rf, 2, den_deg)).collect()).collect();
    LaurentApprox::exact(tower.clone(), rf, d, 0, coeffs).unwrap()
}

/// A solvable instance `(Delta, m, x, n)`.
pub struct FixpointInstance {
    pub delta: Matrix<RatLaurent>,
    pub m: u32,
    pub x: Place,
    pub n: i64,
    pub unit_triangular: bool,
}

/// Instances of three shapes: unit upper triangular with polynomial
/// entries, scalar with poles, and 2x2 with poles.
pub fn random_fixpoint_instance(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, kind: usize) -> FixpointInstance {
    let places = test_places(tower);
    let x = places[rng.gen_range(0..places.len())].clone();
    let m = if rng.gen_bool(0.7) { 1 } else { 2 };
    let n = rng.gen_range(1..=3);
    let rf = rat_field(tower, 1);
    let one = LaurentApprox::constant(tower.clone(), rf.clone(), 1, rf.one());
    let zero = LaurentApprox::zero(tower.clone(), rf.clone(), 1);
    match kind % 3 {
        0 => {
            let g12 = random_t_poly(rng, tower, 1, 2, 0);
            let g = Matrix::from_rows(vec![vec![one.clone(), g12], vec![zero, one]]);
            FixpointInstance { delta: conjugated_delta(&g, m, n), m, x, n, unit_triangular: true }
        }
        1 => {
            let d = if rng.gen_bool(0.3) { 2 } else { 1 };
            let g = loop {
                let g = random_t_poly(rng, tower, d, 2, 1);
                if g.is_unit_of_order_zero() {
                    break g;
                }
            };
            let g = Matrix::from_rows(vec![vec![g]]);
            FixpointInstance { delta: conjugated_delta(&g, m, n), m, x, n, unit_triangular: false }
        }
        _ => {
            let g = loop {
                let e: Vec<RatLaurent> = (0..4).map(|_| random_t_poly(rng, tower, 1, 2, 1)).collect();
                let g = Matrix::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]]);
                let det = e[0].mul(&e[3]).unwrap().sub(&e[1].mul(&e[2]).unwrap()).unwrap();
                if det.is_unit_of_order_zero() {
                    break g;
                }
            };
            FixpointInstance { delta: conjugated_delta(&g, m, n.min(2)), m, x, n: n.min(2), unit_triangular: false }
        }
    }
}

/// Random unit of order zero over `F_{3^level}` with `d`-tuple
/// coefficients, known through `t^n`.
pub fn random_unit_series(
    rng: &mut ChaCha8Rng,
    tower: &Arc<FieldTower>,
    level: usize,
    d: usize,
    n: i64,
) -> LaurentApprox<Gf> {
    let k = tower.level(level);
    let coeffs: Vec<Vec<GfElem>> = (0..=n)
        .map(|r| {
            (0..d)
                .map(|_| loop {
                    let x = random_elem(rng, &k);
                    if r > 0 || !k.is_zero(&x) {
                        break x;
                    }
                })
                .collect()
        })
        .collect();
    LaurentApprox::truncated(tower.clone(), k, d, 0, coeffs, n + 1).unwrap()
}

/// `sigma(g) g^{-1}` through `t^n` for a random unit `g` over `F_{3^level}`.
/// These have a solution with coefficients in the same field.
pub fn random_sigma_quotient(
    rng: &mut ChaCha8Rng,
    tower: &Arc<FieldTower>,
    level: usize,
    d: usize,
    n: i64,
) -> LaurentApprox<Gf> {
    let g = random_unit_series(rng, tower, level, d, n);
    g.sigma().mul(&g.inverse(n + 1).unwrap()).unwrap().truncate(n + 1)
}

/// `F_K(X)` with `K = F_9`.
pub fn rat_field_x() -> amotive::bold::RatFieldX {
    RatField::new(RatField::new(Gf::new(3, vec![1, 0, 1]).unwrap()))
}

/// Random element of `K(t)` with small numerator and denominator.
pub fn random_kt(rng: &mut ChaCha8Rng, kt: &RatField<Gf>) -> RatFunc<GfElem> {
    random_rat(rng, kt, 2, 1)
}

fn random_poly_x(
    rng: &mut ChaCha8Rng,
    kx: &amotive::bold::RatFieldX,
    deg: usize,
    monic: bool,
) -> Poly<RatFunc<GfElem>> {
    let kt = kx.base().clone();
    let mut c: Vec<RatFunc<GfElem>> = (0..deg).map(|_| random_kt(rng, &kt)).collect();
    c.push(if monic { kt.one() } else { random_kt(rng, &kt) });
    PolyRing::new(kt).from_coeffs(c)
}

/// Random element of `F_K(X)`; denominators are products of up to two
/// factors drawn from a small pool so that sums share factors.
pub fn random_x(
    rng: &mut ChaCha8Rng,
    kx: &amotive::bold::RatFieldX,
    pool: &[Poly<RatFunc<GfElem>>],
) -> amotive::bold::RatFuncX {
    let deg = rng.gen_range(0..=2);
    let num = random_poly_x(rng, kx, deg, false);
    let mut den = kx.ring.one();
    for _ in 0..rng.gen_range(0..=2) {
        den = kx.ring.mul(&den, &pool[rng.gen_range(0..pool.len())]);
    }
    kx.frac(num, den).unwrap()
}

/// Monic denominators in `X` of degree one or two.
pub fn denominator_pool(rng: &mut ChaCha8Rng, kx: &amotive::bold::RatFieldX) -> Vec<Poly<RatFunc<GfElem>>> {
    (0..4).map(|i| random_poly_x(rng, kx, 1 + i % 2, true)).collect()
}
