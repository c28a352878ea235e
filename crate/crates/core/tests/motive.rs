use amotive::algebra::matrix::{mat_mul, Matrix};
use amotive::algebra::*;
use amotive::bold::{pairing_commutes, tau_invariants};
use amotive::motive::format::{emit_motive, parse_motive};
use amotive::motive::isogeny::*;
use amotive::motive::torsion::*;
use amotive::motive::*;
use amotive::Error;

fn base9() -> Base<Gf> {
    let k = Gf::new(3, vec![1, 0, 1]).unwrap();
    let a = k.gen();
    Base::new(k, a)
}

fn poly(b: &Base<Gf>, c: &[&[u32]]) -> KPoly {
    b.ring().from_coeffs(c.iter().map(|x| b.k.from_coords(x)).collect())
}

fn carlitz(b: &Base<Gf>) -> Motive<Gf> {
    Motive::effective(EffectiveMotive::carlitz(b))
}

#[test]
fn effective_validation() {
    let b = base9();
    let c = EffectiveMotive::carlitz(&b);
    let again = EffectiveMotive::new(&b, c.delta.clone()).unwrap();
    assert_eq!(again.e, 1);
    let t = Matrix::from_rows(vec![vec![b.ring().x()]]);
    match EffectiveMotive::new(&b, t) {
        Err(Error::CharacteristicViolation { factor }) => assert_eq!(factor, "[[0],[1]]"),
        other => panic!("{other:?}"),
    }
    let lin = b.char_linear();
    let tri = Matrix::from_rows(vec![vec![lin.clone(), b.ring().one()], vec![Poly::zero(), lin.clone()]]);
    assert_eq!(EffectiveMotive::new(&b, tri).unwrap().e, 2);
}

#[test]
fn constructions() {
    let b = base9();
    let r = b.ring();
    let c = carlitz(&b);
    let cc = c.tensor(&c);
    assert_eq!(cc.rank(), 1);
    let lin = b.char_linear();
    assert_eq!(*cc.m.delta.get(0, 0), r.mul(&lin, &lin));
    let tri =
        EffectiveMotive::new(&b, Matrix::from_rows(vec![vec![lin.clone(), r.one()], vec![Poly::zero(), lin.clone()]]))
            .unwrap();
    let x = Motive::effective(tri);
    let top = x.exterior(2).unwrap();
    assert_eq!(top.rank(), 1);
    assert_eq!(*top.m.delta.get(0, 0), x.m.det_delta());
    assert!(x.exterior(3).is_err());
    // Dual of Carlitz maps to tau = (t - theta)^{-1}.
    let d = c.dual();
    let bm = motive_to_bold(&d);
    let kt = b.frac();
    assert_eq!(*bm.tau.get(0, 0), kt.inv(&kt.from_poly(lin.clone())).unwrap());
    evaluation_pairing(&c).unwrap();
    evaluation_pairing(&x).unwrap();
    assert!(pairing_commutes(&motive_to_bold(&x)).unwrap());
    // det of a tensor product.
    let y = c.direct_sum(&cc);
    let xy = x.tensor(&y);
    let lhs = xy.m.det_delta();
    let rhs = r.mul(&r.pow(&x.m.det_delta(), 2), &r.pow(&y.m.det_delta(), 2));
    assert_eq!(lhs, rhs);
}

#[test]
fn homs() {
    let b = base9();
    let c = carlitz(&b);
    let cc = c.tensor(&c);
    let h = hom_motives(&c, &c, None).unwrap();
    assert_eq!(h.rank, 1);
    assert_eq!(h.generators.len(), 1);
    let g = &h.generators[0];
    assert_eq!(g.get(0, 0).degree(), Some(0));
    let h = hom_motives(&c, &cc, None).unwrap();
    assert_eq!(h.rank, 0);
    let cs = c.direct_sum(&c);
    let h = hom_motives(&c, &cs, None).unwrap();
    assert_eq!(h.rank, 2);
    assert_eq!(h.generators.len(), 2);
    // the identity is always there
    let tri = Motive::effective(
        EffectiveMotive::new(
            &b,
            Matrix::from_rows(vec![vec![b.char_linear(), b.ring().one()], vec![Poly::zero(), b.char_linear()]]),
        )
        .unwrap(),
    );
    let h = hom_motives(&tri, &tri, None).unwrap();
    assert!(h.rank >= 1);
    for g in &h.generators {
        MotiveHom::new(&tri, &tri, g.clone()).unwrap();
    }
}

#[test]
fn composition_and_scalars() {
    let b = base9();
    let c = carlitz(&b);
    let t = scalar_isogeny(&c, &[0, 1]).unwrap();
    assert_eq!(t.mat.get(0, 0), &b.ring().x());
    let one = scalar_isogeny(&c, &[1]).unwrap();
    assert_eq!(one, MotiveHom::identity(&c));
    let s = scalar_isogeny(&c, &[1, 1]).unwrap();
    let ts = compose_homs(&t, &s).unwrap();
    assert_eq!(ts, scalar_isogeny(&c, &[0, 1, 1]).unwrap());
    assert_eq!(compose_homs(&MotiveHom::identity(&c), &t).unwrap(), t);
    assert!(scalar_isogeny(&c, &[0]).is_err());
}

#[test]
fn isogeny_examples() {
    let b = base9();
    let r = b.ring();
    let c = carlitz(&b);
    let t = scalar_isogeny(&c, &[0, 1]).unwrap();
    let coker = is_isogeny(&t).unwrap().unwrap();
    assert_eq!(coker.module.dim(), 1);
    assert_eq!(*coker.module.b.get(0, 0), b.k.neg(&b.theta));
    let zero = MotiveHom { src: c.clone(), tgt: c.clone(), mat: Matrix::from_rows(vec![vec![Poly::zero()]]) };
    assert!(is_isogeny(&zero).unwrap().is_none());

    let (a, g) = invert_isogeny(&t).unwrap();
    assert_eq!(a, vec![0, 1]);
    assert_eq!(g, MotiveHom::identity(&c));

    let cs = c.direct_sum(&c);
    let f = MotiveHom::new(&cs, &cs, Matrix::from_rows(vec![vec![r.one(), Poly::zero()], vec![Poly::zero(), r.x()]]))
        .unwrap();
    let coker = is_isogeny(&f).unwrap().unwrap();
    assert_eq!(coker.module.dim(), 1);
    assert_eq!(*coker.module.b.get(0, 0), b.k.neg(&b.theta));
    let (a, g) = invert_isogeny(&f).unwrap();
    assert_eq!(a, vec![0, 1]);
    assert_eq!(g.mat, Matrix::from_rows(vec![vec![r.x(), Poly::zero()], vec![Poly::zero(), r.one()]]));

    let s = scalar_isogeny(&c, &[1, 0, 1]).unwrap();
    let (a, _) = invert_isogeny(&s).unwrap();
    assert_eq!(a, vec![1, 0, 1]);
    assert!(is_purely_inseparable(&s).unwrap());
    assert!(is_separable(&t).unwrap());
    let (f1, f2) = factor_sep_insep(&t).unwrap();
    assert_eq!(f1, t);
    assert_eq!(f2, MotiveHom::identity(&c));
    let (f1, f2) = factor_sep_insep(&s).unwrap();
    assert_eq!(f1, MotiveHom::identity(&c));
    assert_eq!(f2, s);

    let mixed = MotiveHom::new(
        &cs,
        &cs,
        Matrix::from_rows(vec![vec![r.x(), Poly::zero()], vec![Poly::zero(), poly(&b, &[&[1], &[0], &[1]])]]),
    )
    .unwrap();
    let (f1, f2) = factor_sep_insep(&mixed).unwrap();
    assert_eq!(compose_homs(&f1, &f2).unwrap(), mixed);
    assert!(is_separable(&f1).unwrap());
    assert!(is_purely_inseparable(&f2).unwrap());
    assert!(!is_separable(&f2).unwrap());
    assert_eq!(mat_mul(&r, &f2.mat, &f1.mat), mixed.mat);
}

#[test]
fn torsion_examples() {
    let b = base9();
    let k = b.k.clone();
    let t = TorsionBoldModule::new(
        &b,
        Matrix::from_rows(vec![vec![b.theta.clone()]]),
        Matrix::from_rows(vec![vec![k.zero()]]),
    )
    .unwrap();
    assert!(matches!(torsion_filtration(&t), Err(Error::CharacteristicViolation { .. })));
    let f = filtration_unchecked(&t);
    assert!(f.bijective_part.is_empty());
    assert_eq!(f.flag_length(), 1);
    assert_eq!(f.annihilator, vec![1, 0, 1]);

    let inv = TorsionBoldModule::new(
        &b,
        Matrix::from_rows(vec![vec![k.zero()]]),
        Matrix::from_rows(vec![vec![k.neg(&b.theta)]]),
    )
    .unwrap();
    let f = torsion_filtration(&inv).unwrap();
    assert_eq!(f.bijective_part.len(), 1);
    assert_eq!(f.nilpotent_dim, 0);
    assert_eq!(f.flag_length(), 0);
    assert_eq!(f.annihilator, vec![0, 1]);
}

#[test]
fn generic_characteristic() {
    let f3 = Gf::with_degree(3, 1);
    let k = RatField::new(f3.clone());
    let u = k.var();
    let b = Base::new(k.clone(), u);
    assert!(b.is_generic());
    let c = Motive::effective(EffectiveMotive::carlitz(&b));
    let t = scalar_isogeny(&c, &[0, 1]).unwrap();
    let coker = is_isogeny(&t).unwrap().unwrap();
    let f = torsion_filtration(&coker.module).unwrap();
    assert_eq!(f.nilpotent_dim, 0);
    assert_eq!(f.annihilator, vec![0, 1]);
    let (a, g) = invert_isogeny(&scalar_isogeny(&c, &[1, 0, 1]).unwrap()).unwrap();
    assert_eq!(a, vec![1, 0, 1]);
    assert_eq!(g, MotiveHom::identity(&c));
}

#[test]
fn bold_invariants() {
    let b = base9();
    let c = carlitz(&b);
    let bm = motive_to_bold(&c);
    assert_eq!(tau_invariants(&bm, Some(4)).unwrap().basis.len(), 0);
}

#[test]
fn motive_file_roundtrip() {
    let text =
        "# Carlitz\nbase.q = 3\nbase.field_poly = [1, 0, 1]\nbase.theta = [0,1]\nrank = 1\ndelta 0 0 = [[0,2],[1]]\n";
    let x = parse_motive(text).unwrap();
    assert_eq!(x, carlitz(&base9()));
    let e = emit_motive(&x);
    assert_eq!(parse_motive(&e).unwrap(), x);
    assert_eq!(emit_motive(&parse_motive(&e).unwrap()), e);
    match parse_motive("base.q = 3\nrank = [1\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}
