//! Finite fields `F_{p^m}` as quotients of `F_p[x]`, and the tower of all of
//! them with compatible embeddings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use super::field::{Field, Ring};
use super::fp::{Fp, FpMat};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Element of a finite field level: coordinates in the power basis of the
/// level's generator, length equal to the level degree.
pub type GfElem = Vec<u32>;

#[derive(Debug)]
struct Level {
    p: u32,
    m: usize,
    /// Monic defining polynomial, ascending, length `m + 1`.
    modulus: Vec<u32>,
    /// Matrix of `y -> y^p` on coordinates.
    frob: FpMat,
}

/// Handle to a finite field `F_{p^m}` given by an irreducible polynomial.
#[derive(Clone)]
pub struct Gf(Arc<Level>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

fn fp_ring(p: u32) -> PolyRing<Fp> {
    PolyRing::new(Fp::new(p))
}

/// Rabin irreducibility test over `F_p`.
pub fn is_irreducible_fp(p: u32, f: &[u32]) -> bool {
    let ring = fp_ring(p);
    let f = ring.from_coeffs(f.to_vec());
    let Some(m) = f.degree() else { return false };
    if m == 0 {
        return false;
    }
    let f = ring.monic(&f);
    let x = ring.x();
    // x^{p^k} mod f for k = 0..=m
    let mut powers = vec![ring.rem(&x, &f)];
    for _ in 0..m {
        let last = powers.last().unwrap();
        powers.push(ring.pow_mod(last, p as u64, &f));
    }
    if ring.sub(&powers[m], &ring.rem(&x, &f)).coeffs.iter().any(|c| *c != 0) {
        return false;
    }
    for r in prime_divisors(m as u64) {
        let k = m / r as usize;
        let h = ring.sub(&powers[k], &x);
        if ring.gcd(&h, &f).degree() != Some(0) {
            return false;
        }
    }
    true
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First irreducible monic polynomial of degree `m` in the order of sparse
/// tails (the tail read as a base-`p` integer).
pub fn default_modulus(p: u32, m: usize) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut n: u64 = 1;
    loop {
        let mut tail = vec![0u32; m];
        let mut k = n;
        for c in tail.iter_mut() {
            *c = (k % p as u64) as u32;
            k /= p as u64;
        }
        if k == 0 && tail[0] != 0 {
            let mut f = tail;
            f.push(1);
            if is_irreducible_fp(p, &f) {
                return f;
            }
        }
        n += 1;
    }
}

impl Gf {
    /// Builds `F_p[x]/(modulus)`; the modulus must be irreducible.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Gf> {
        let ring = fp_ring(p);
        let f = ring.from_coeffs(modulus.iter().map(|c| c % p).collect());
        if !ring.is_monic(&f) || !is_irreducible_fp(p, &f.coeffs) {
            return Err(Error::Invalid(format!("modulus {modulus:?} is not monic irreducible over F_{p}")));
        }
        Ok(Self::build(p, f.coeffs))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Gf {
        let m = modulus.len() - 1;
        let mut level = Level { p, m, modulus, frob: FpMat::identity(p, m) };
        let tmp = Gf(Arc::new(Level { p, m, modulus: level.modulus.clone(), frob: FpMat::identity(p, m) }));
        let mut xp = tmp.zero();
        if m == 1 {
            xp[0] = 0;
        } else {
            xp[1] = 1;
            xp = tmp.pow(&xp, p as u64);
        }
        let mut col = tmp.one();
        let mut frob = FpMat::zeros(p, m, m);
        for j in 0..m {
            for i in 0..m {
                frob.set(i, j, col[i]);
            }
            if m > 1 {
                col = tmp.mul(&col, &xp);
            }
        }
        if m == 1 {
            frob = FpMat::identity(p, 1);
        }
        level.frob = frob;
        Gf(Arc::new(level))
    }

    /// The field with the default modulus of degree `m`.
    pub fn with_degree(p: u32, m: usize) -> Gf {
        Self::build(p, default_modulus(p, m))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn prime_field(&self) -> Fp {
        Fp::new(self.0.p)
    }

    /// Number of elements when it fits in `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.0.p as u128).checked_pow(self.0.m as u32)
    }

    /// The generator `x` of the power basis (for degree one, the element 0
    /// is the root of the modulus `x`).
    pub fn gen(&self) -> GfElem {
        let mut v = self.zero();
        if self.0.m > 1 {
            v[1] = 1;
        }
        v
    }

    pub fn from_coords(&self, c: &[u32]) -> GfElem {
        let mut v = vec![0u32; self.0.m];
        let ring = fp_ring(self.0.p);
        let r = ring
            .rem(&ring.from_coeffs(c.iter().map(|x| x % self.0.p).collect()), &Poly { coeffs: self.0.modulus.clone() });
        for (i, x) in r.coeffs.into_iter().enumerate() {
            v[i] = x;
        }
        v
    }

    /// `x^j` for `j` below the degree: the `j`-th power basis vector.
    pub fn basis_elem(&self, j: usize) -> GfElem {
        let mut v = vec![0u32; self.0.m];
        v[j] = 1;
        v
    }

    /// Element whose coordinates are the base-`p` digits of `n`.
    pub fn from_index(&self, mut n: u128) -> GfElem {
        let p = self.0.p as u128;
        let mut v = vec![0u32; self.0.m];
        for c in v.iter_mut() {
            *c = (n % p) as u32;
            n /= p;
        }
        v
    }

    /// Sort key ordering elements like [`Gf::index`], for any field size.
    pub fn order_key(&self, a: &GfElem) -> Vec<u32> {
        a.iter().rev().copied().collect()
    }

    pub fn index(&self, a: &GfElem) -> u128 {
        a.iter().rev().fold(0u128, |acc, c| acc * self.0.p as u128 + *c as u128)
    }

    /// All elements in index order; only for small fields.
    pub fn elements(&self) -> Vec<GfElem> {
        let n = self.size().expect("field too large to enumerate");
        assert!(n <= 1 << 22, "field too large to enumerate");
        (0..n).map(|i| self.from_index(i)).collect()
    }

    /// Matrix of `y -> a*y` on coordinates.
    pub fn mul_matrix(&self, a: &GfElem) -> FpMat {
        let m = self.0.m;
        let mut out = FpMat::zeros(self.0.p, m, m);
        let mut col = a.clone();
        let g = self.gen();
        for j in 0..m {
            for i in 0..m {
                out.set(i, j, col[i]);
            }
            if j + 1 < m {
                col = self.mul(&col, &g);
            }
        }
        out
    }

    /// Matrix of `y -> y^{p^e}` on coordinates.
    pub fn frobenius_matrix(&self, e: u32) -> FpMat {
        let mut acc = FpMat::identity(self.0.p, self.0.m);
        for _ in 0..(e as usize % self.0.m.max(1)) {
            acc = self.0.frob.mul(&acc);
        }
        acc
    }

    /// `a^{p^e}`.
    pub fn frobenius_e(&self, a: &GfElem, e: u32) -> GfElem {
        let mut x = a.clone();
        for _ in 0..(e as usize % self.0.m.max(1)) {
            x = self.0.frob.mul_vec(&x);
        }
        x
    }

    /// Inverse Frobenius `a -> a^{1/p}`.
    pub fn frobenius_inv(&self, a: &GfElem) -> GfElem {
        self.frobenius_e(a, self.0.m as u32 - 1)
    }

    /// Whether `a` lies in the subfield of degree `k` (`k | m`).
    pub fn in_subfield(&self, a: &GfElem, k: usize) -> bool {
        self.frobenius_e(a, k as u32) == *a
    }

    /// Prime-field value when `a` lies in the prime field.
    pub fn to_prime(&self, a: &GfElem) -> Option<u32> {
        a.iter().skip(1).all(|c| *c == 0).then(|| a[0])
    }

    pub fn from_prime(&self, c: u32) -> GfElem {
        let mut v = self.zero();
        v[0] = c % self.0.p;
        v
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &GfElem) -> u128 {
        let n = self.size().expect("field too large") - 1;
        let mut ord = n;
        let mut fs: Vec<u128> = prime_divisors(n as u64).into_iter().map(|x| x as u128).collect();
        fs.dedup();
        for r in fs {
            while ord.is_multiple_of(r) && self.is_one(&self.pow_u128(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    pub fn pow_u128(&self, a: &GfElem, mut e: u128) -> GfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates a prime-field polynomial at `a`.
    pub fn eval_prime_poly(&self, f: &[u32], a: &GfElem) -> GfElem {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.from_prime(*c));
        }
        acc
    }
}

impl Ring for Gf {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        vec![0; self.0.m]
    }
    fn one(&self) -> GfElem {
        let mut v = vec![0; self.0.m];
        v[0] = 1;
        v
    }
    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|c| *c == 0)
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    }
    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().map(|x| (p - x) % p).collect()
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let m = self.0.m;
        let p = self.0.p as u64;
        if m == 1 {
            return vec![((a[0] as u64 * b[0] as u64) % p) as u32];
        }
        let mut r = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] += *x as u64 * *y as u64;
            }
            if i % 8 == 7 {
                for v in r.iter_mut() {
                    *v %= p;
                }
            }
        }
        for v in r.iter_mut() {
            *v %= p;
        }
        let md = &self.0.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = r[k] % p;
            if c == 0 {
                continue;
            }
            r[k] = 0;
            for j in 0..m {
                let t = c * md[j] as u64 % p;
                r[k - m + j] = (r[k - m + j] + p - t) % p;
            }
        }
        r.truncate(m);
        r.into_iter().map(|v| (v % p) as u32).collect()
    }
    fn from_i64(&self, n: i64) -> GfElem {
        self.from_prime(n.rem_euclid(self.0.p as i64) as u32)
    }
}

impl Field for Gf {
    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if self.is_zero(a) {
            return None;
        }
        let ring = fp_ring(self.0.p);
        let f = Poly { coeffs: self.0.modulus.clone() };
        let s = ring.inv_mod(&ring.from_coeffs(a.clone()), &f)?;
        Some(self.from_coords(&s.coeffs))
    }
    fn characteristic(&self) -> u32 {
        self.0.p
    }
    fn frobenius(&self, a: &GfElem) -> GfElem {
        if self.0.m == 1 {
            return a.clone();
        }
        self.0.frob.mul_vec(a)
    }
    fn flatten(&self, xs: &[GfElem]) -> Vec<Vec<u32>> {
        xs.to_vec()
    }
    fn prime_minpoly(&self, a: &GfElem) -> Option<Vec<u32>> {
        let ring = PolyRing::new(self.clone());
        let mut acc = ring.one();
        let mut c = a.clone();
        loop {
            acc = ring.mul(&acc, &ring.linear(&c));
            c = self.frobenius(&c);
            if c == *a {
                break;
            }
        }
        Some(acc.coeffs.iter().map(|e| self.to_prime(e).expect("orbit product not prime-field")).collect())
    }
    fn is_finite(&self) -> bool {
        true
    }
}

/// All finite fields of characteristic `p`, one per degree, with embeddings
/// `F_{p^a} -> F_{p^b}` for `a | b` that compose exactly.
pub struct FieldTower {
    p: u32,
    levels: RwLock<BTreeMap<usize, Gf>>,
    embeddings: RwLock<HashMap<(usize, usize), Arc<FpMat>>>,
    targets_done: RwLock<std::collections::HashSet<usize>>,
    build_lock: Mutex<()>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(p = {}, levels = {:?})", self.p, self.levels.read().keys().collect::<Vec<_>>())
    }
}

impl FieldTower {
    pub fn new(p: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower {
            p,
            levels: RwLock::new(BTreeMap::new()),
            embeddings: RwLock::new(HashMap::new()),
            targets_done: RwLock::new(Default::default()),
            build_lock: Mutex::new(()),
        })
    }

    /// Tower whose level of degree `field.degree()` is the given field.
    pub fn with_level(field: &Gf) -> Arc<FieldTower> {
        let t = Self::new(field.p());
        t.levels.write().insert(field.degree(), field.clone());
        t
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self, m: usize) -> Gf {
        assert!(m >= 1);
        if let Some(g) = self.levels.read().get(&m) {
            return g.clone();
        }
        let g = Gf::with_degree(self.p, m);
        self.levels.write().entry(m).or_insert(g).clone()
    }

    /// Embedding matrix `F_{p^a} -> F_{p^b}` (`a | b`).
    pub fn embedding(&self, a: usize, b: usize) -> Arc<FpMat> {
        assert!(b.is_multiple_of(a), "level {a} does not divide {b}");
        if a == b {
            return Arc::new(FpMat::identity(self.p, a));
        }
        if let Some(e) = self.embeddings.read().get(&(a, b)) {
            return e.clone();
        }
        let _guard = self.build_lock.lock();
        self.fix_target(b);
        self.embeddings.read().get(&(a, b)).unwrap().clone()
    }

    pub fn embed(&self, x: &GfElem, a: usize, b: usize) -> GfElem {
        if a == b {
            return x.clone();
        }
        self.embedding(a, b).mul_vec(x)
    }

    /// Preimage of `y` (in level `b`) in level `a`, if `y` lies there.
    pub fn restrict(&self, y: &GfElem, a: usize, b: usize) -> Option<GfElem> {
        if a == b {
            return Some(y.clone());
        }
        self.embedding(a, b).solve(y)
    }

    fn fix_target(&self, b: usize) {
        if self.targets_done.read().contains(&b) {
            return;
        }
        let mut divs: Vec<usize> = (1..b).filter(|a| b.is_multiple_of(*a)).collect();
        divs.sort_unstable_by(|x, y| y.cmp(x));
        for &a in &divs {
            if a > 1 {
                self.fix_target(a);
            }
        }
        let lb = self.level(b);
        let mut chosen: Vec<(usize, GfElem)> = Vec::new();
        for &a in &divs {
            let mat = if a == 1 {
                let mut m = FpMat::zeros(self.p, b, 1);
                m.set(0, 0, 1);
                m
            } else {
                let la = self.level(a);
                let f = PolyRing::new(lb.clone()).from_coeffs(la.modulus().iter().map(|c| lb.from_prime(*c)).collect());
                let roots = super::factor::roots(&lb, &f);
                let root = roots
                    .into_iter()
                    .find(|r| {
                        chosen.iter().all(|(a2, r2)| {
                            let g = gcd(a, *a2);
                            if g == 1 {
                                return true;
                            }
                            let xg = self.level(g).gen();
                            let in_a = self.embed_inner(&xg, g, a);
                            let in_a2 = self.embed_inner(&xg, g, *a2);
                            eval_at(&lb, &in_a, r) == eval_at(&lb, &in_a2, r2)
                        })
                    })
                    .expect("no compatible embedding root");
                chosen.push((a, root.clone()));
                power_matrix(&lb, &root, a)
            };
            self.embeddings.write().insert((a, b), Arc::new(mat));
        }
        self.targets_done.write().insert(b);
    }

    fn embed_inner(&self, x: &GfElem, a: usize, b: usize) -> GfElem {
        if a == b {
            return x.clone();
        }
        self.embeddings.read().get(&(a, b)).expect("inner embedding missing").mul_vec(x)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn eval_at(field: &Gf, coords: &GfElem, r: &GfElem) -> GfElem {
    let mut acc = field.zero();
    for c in coords.iter().rev() {
        acc = field.add(&field.mul(&acc, r), &field.from_prime(*c));
    }
    acc
}

fn power_matrix(field: &Gf, r: &GfElem, a: usize) -> FpMat {
    let mut cols = Vec::with_capacity(a);
    let mut cur = field.one();
    for _ in 0..a {
        cols.push(cur.clone());
        cur = field.mul(&cur, r);
    }
    FpMat::from_cols(field.p(), field.degree(), &cols)
}

/// Shared tower whose level `k.degree()` is `k`, one per distinct field.
pub fn tower_for(k: &Gf) -> Arc<FieldTower> {
    static TOWERS: std::sync::OnceLock<Mutex<HashMap<(u32, Vec<u32>), Arc<FieldTower>>>> = std::sync::OnceLock::new();
    let map = TOWERS.get_or_init(|| Mutex::new(HashMap::new()));
    map.lock().entry((k.p(), k.modulus().to_vec())).or_insert_with(|| FieldTower::with_level(k)).clone()
}
