use amotive::algebra::additive::solve_additive;
use amotive::algebra::factor::{factor, roots};
use amotive::algebra::matrix::{det, mat_mul, Matrix};
use amotive::algebra::polymat::{char_ideal, smith_form};
use amotive::algebra::semilinear::{is_fixed, semilinear_kernel};
use amotive::algebra::*;
use amotive::Error;
use proptest::prelude::*;

fn f9() -> Gf {
    Gf::new(3, vec![1, 0, 1]).unwrap()
}

#[test]
fn frobenius_on_f9() {
    let k = f9();
    let a = k.gen();
    assert_eq!(k.frobenius_e(&a, 1), k.neg(&a));
    assert_eq!(k.frobenius_e(&k.one(), 5), k.one());
    assert_eq!(k.frobenius_e(&a, 2), a);
}

/// Brute-force roots of `x^{3^d} - phi x - c` over all elements of `field`.
fn brute_roots(field: &Gf, d: u32, phi: &GfElem, c: &GfElem) -> Vec<GfElem> {
    field
        .elements()
        .into_iter()
        .filter(|x| {
            let v = field.sub(&field.sub(&field.frobenius_e(x, d), &field.mul(phi, x)), c);
            field.is_zero(&v)
        })
        .collect()
}

#[test]
fn additive_examples() {
    let tower = FieldTower::new(3);
    let k1 = tower.level(1);
    let s = solve_additive(&tower, 1, 1, &k1.one(), &k1.zero(), None).unwrap();
    assert_eq!(s.level, 1);
    assert_eq!(s.roots(), vec![vec![0], vec![1], vec![2]]);

    let s = solve_additive(&tower, 1, 1, &k1.one(), &k1.one(), None).unwrap();
    assert_eq!(s.level, 3);
    assert!(brute_roots(&k1, 1, &k1.one(), &k1.one()).is_empty());
    let k3 = tower.level(3);
    let mut expect = brute_roots(&k3, 1, &k3.one(), &k3.one());
    expect.sort_by_key(|x| k3.index(x));
    assert_eq!(expect.len(), 3);
    assert_eq!(s.roots(), expect);

    let k = f9();
    let tower = FieldTower::with_level(&k);
    let a = k.gen();
    let s = solve_additive(&tower, 2, 1, &a, &k.zero(), None).unwrap();
    assert_eq!(s.level, 2);
    let rs = s.roots();
    assert_eq!(rs.len(), 3);
    for r in rs.iter().filter(|r| !k.is_zero(r)) {
        assert_eq!(k.mul(r, r), a);
    }
    assert_eq!(solve_additive(&tower, 2, 1, &k.zero(), &a, None).unwrap_err(), Error::DegenerateInseparable);
}

#[test]
fn tower_embeddings_compose() {
    let tower = FieldTower::new(3);
    for (a, b, c) in [(1, 2, 4), (2, 4, 8), (1, 3, 6), (2, 6, 12), (3, 6, 12)] {
        let la = tower.level(a);
        for x in la.elements().into_iter().take(30) {
            let direct = tower.embed(&x, a, c);
            let via = tower.embed(&tower.embed(&x, a, b), b, c);
            assert_eq!(direct, via, "{a}|{b}|{c}");
        }
        // embeddings are ring maps
        let x = la.gen();
        let lc = tower.level(c);
        let y = tower.embed(&x, a, c);
        assert_eq!(tower.embed(&la.mul(&x, &x), a, c), lc.mul(&y, &y));
    }
}

#[test]
fn smith_examples() {
    let k = f9();
    let r = PolyRing::new(k.clone());
    let t = r.x();
    let one = r.one();
    let zero = r.zero();
    let id = Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]);
    assert_eq!(smith_form(&r, &id).divisors(), vec![one.clone(), one.clone()]);
    let t2 = r.mul(&t, &t);
    let m = Matrix::from_rows(vec![vec![t.clone(), zero.clone()], vec![zero.clone(), t2.clone()]]);
    assert_eq!(smith_form(&r, &m).divisors(), vec![t.clone(), t2.clone()]);
    let m = Matrix::from_rows(vec![vec![t.clone(), one.clone()], vec![zero.clone(), t.clone()]]);
    let s = smith_form(&r, &m);
    assert_eq!(s.divisors(), vec![one.clone(), t2.clone()]);
    assert_eq!(mat_mul(&r, &mat_mul(&r, &s.u, &m), &s.v), s.d);
}

#[test]
fn char_ideal_examples() {
    let k = f9();
    let r = PolyRing::new(k.clone());
    let lin = r.linear(&k.gen());
    let lin2 = r.mul(&lin, &lin);
    assert_eq!(char_ideal(&r, &[lin.clone(), lin2.clone()]).unwrap(), r.mul(&lin, &lin2));
    assert_eq!(char_ideal(&r, &[]).unwrap(), r.one());
    let k3 = Gf::with_degree(3, 1);
    let r3 = PolyRing::new(k3.clone());
    let f = r3.from_coeffs(vec![k3.one(), k3.zero(), k3.one()]);
    assert_eq!(char_ideal(&r3, std::slice::from_ref(&f)).unwrap(), f);
    assert_eq!(char_ideal(&r, &[r.zero()]).unwrap_err(), Error::NotTorsion);
}

#[test]
fn factor_and_roots() {
    let k = Gf::with_degree(3, 1);
    let r = PolyRing::new(k.clone());
    // t^2 + 1 is irreducible over F_3, x^3 - x splits.
    let f = r.from_coeffs(vec![k.one(), k.zero(), k.one()]);
    assert_eq!(factor(&k, &f), vec![(f.clone(), 1)]);
    let g = r.from_coeffs(vec![k.zero(), k.neg(&k.one()), k.zero(), k.one()]);
    assert_eq!(roots(&k, &g).len(), 3);
    let f9 = f9();
    let r9 = PolyRing::new(f9.clone());
    let h = r9.from_coeffs(vec![f9.one(), f9.zero(), f9.one()]);
    assert_eq!(roots(&f9, &h).len(), 2);
}

#[test]
fn semilinear_examples() {
    let k = f9();
    let kt = RatField::new(k.clone());
    let one = Matrix::from_rows(vec![vec![kt.one()]]);
    let res = semilinear_kernel(&kt, &one, 1, None).unwrap();
    assert_eq!(res.basis.len(), 1);
    assert!(is_fixed(&kt, &one, 1, &res.basis[0]));

    let alpha = Matrix::from_rows(vec![vec![kt.from_base(k.gen())]]);
    let res = semilinear_kernel(&kt, &alpha, 1, None).unwrap();
    assert_eq!(res.basis.len(), 1);
    let v = &res.basis[0][0];
    assert!(is_fixed(&kt, &alpha, 1, &res.basis[0]));
    // v is a constant s0 with s0 = alpha * s0^3, so s0^2 = alpha^{-1}.
    let s0 = kt.as_constant(v).unwrap();
    assert_eq!(k.mul(&s0, &s0), k.inv(&k.gen()).unwrap());

    let tmat = Matrix::from_rows(vec![vec![kt.var()]]);
    for cap in [1, 2, 4, 8] {
        let res = semilinear_kernel(&kt, &tmat, 1, Some(cap)).unwrap();
        assert!(res.basis.is_empty());
    }
    let zero = Matrix::from_rows(vec![vec![kt.zero()]]);
    assert_eq!(semilinear_kernel(&kt, &zero, 1, None).unwrap_err(), Error::NotRestricted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_is_exact(entries in proptest::collection::vec(proptest::collection::vec(0u32..3, 0..4), 4)) {
        let k = Gf::with_degree(3, 1);
        let r = PolyRing::new(k.clone());
        let polys: Vec<_> = entries.iter().map(|c| r.from_coeffs(c.iter().map(|x| vec![*x]).collect())).collect();
        let m = Matrix::from_rows(vec![polys[0..2].to_vec(), polys[2..4].to_vec()]);
        let s = smith_form(&r, &m);
        prop_assert_eq!(mat_mul(&r, &mat_mul(&r, &s.u, &m), &s.v), s.d.clone());
        prop_assert_eq!(det(&r, &s.u).degree(), Some(0));
        prop_assert_eq!(det(&r, &s.v).degree(), Some(0));
        let d = s.divisors();
        if !d[1].is_zero() {
            prop_assert!(r.divides(&d[0], &d[1]));
        }
    }

    #[test]
    fn additive_root_count(phi in 1u128..9, c in 0u128..9) {
        let k = f9();
        let tower = FieldTower::with_level(&k);
        let phi = k.from_index(phi);
        let c = k.from_index(c);
        let s = solve_additive(&tower, 2, 1, &phi, &c, None).unwrap();
        let l = &s.field;
        let phi_l = tower.embed(&phi, 2, s.level);
        let c_l = tower.embed(&c, 2, s.level);
        let rs = s.roots();
        prop_assert_eq!(rs.len(), 3);
        for x in &rs {
            let v = l.sub(&l.sub(&l.frobenius_e(x, 1), &l.mul(&phi_l, x)), &c_l);
            prop_assert!(l.is_zero(&v));
        }
    }

    #[test]
    fn char_ideal_multiplicative(a in proptest::collection::vec(0u32..3, 1..4), b in proptest::collection::vec(0u32..3, 1..4)) {
        let k = Gf::with_degree(3, 1);
        let r = PolyRing::new(k.clone());
        let mk = |c: &Vec<u32>| {
            let mut c = c.clone();
            c.push(1);
            r.from_coeffs(c.iter().map(|x| vec![*x]).collect())
        };
        let (pa, pb) = (mk(&a), mk(&b));
        let both = char_ideal(&r, &[pa.clone(), pb.clone()]).unwrap();
        let prod = r.mul(&char_ideal(&r, &[pa]).unwrap(), &char_ideal(&r, &[pb]).unwrap());
        prop_assert_eq!(both, prod);
    }
}
