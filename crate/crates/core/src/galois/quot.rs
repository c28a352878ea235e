//! Truncations `A/p^n` of `A = F_q[t]`.

use crate::algebra::{Fp, Poly, PolyRing, Ring};
use crate::error::{Error, Result};

/// `F_q[t]/(p^n)` for a monic irreducible `p`; elements are reduced
/// coefficient vectors, ascending, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotRing {
    ring: PolyRing<Fp>,
    prime: Poly<u32>,
    modulus: Poly<u32>,
    n: usize,
}

impl QuotRing {
    pub fn new(q: u32, prime: &[u32], n: usize) -> Result<Self> {
        let ring = PolyRing::new(Fp::new(q));
        let p = ring.from_coeffs(prime.iter().map(|c| c % q).collect());
        if !ring.is_monic(&p) || p.deg() < 1 || !crate::algebra::gf::is_irreducible_fp(q, &p.coeffs) {
            return Err(Error::Invalid(format!("{prime:?} is not a monic irreducible of F_{q}[t]")));
        }
        if n == 0 {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        let modulus = ring.pow(&p, n as u64);
        Ok(QuotRing { ring, prime: p, modulus, n })
    }

    pub fn q(&self) -> u32 {
        self.ring.base.p()
    }

    pub fn prime(&self) -> &[u32] {
        &self.prime.coeffs
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus.coeffs
    }

    pub fn level(&self) -> usize {
        self.n
    }

    /// `deg p`.
    pub fn prime_degree(&self) -> usize {
        self.prime.deg() as usize
    }

    /// Dimension over `F_q`: `n deg p`.
    pub fn dim(&self) -> usize {
        self.modulus.deg() as usize
    }

    pub fn reduce(&self, a: &[u32]) -> Vec<u32> {
        let f = self.ring.from_coeffs(a.iter().map(|c| c % self.q()).collect());
        self.ring.rem(&f, &self.modulus).coeffs
    }

    /// The same prime at precision `k <= n`.
    pub fn at_level(&self, k: usize) -> QuotRing {
        QuotRing::new(self.q(), self.prime(), k).unwrap()
    }

    /// Fixed-length coordinates.
    pub fn coords(&self, a: &[u32]) -> Vec<u32> {
        let mut c = a.to_vec();
        c.resize(self.dim(), 0);
        c
    }

    pub fn from_coords(&self, c: &[u32]) -> Vec<u32> {
        self.reduce(c)
    }

    /// `t^j`.
    pub fn t_pow(&self, j: usize) -> Vec<u32> {
        let mut c = vec![0; j + 1];
        c[j] = 1;
        self.reduce(&c)
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        let f = self.ring.from_coeffs(a.to_vec());
        !self.ring.divides(&self.prime, &f)
    }

    pub fn inv(&self, a: &[u32]) -> Option<Vec<u32>> {
        let f = self.ring.from_coeffs(a.to_vec());
        self.ring.inv_mod(&f, &self.modulus).map(|g| g.coeffs)
    }

    /// Reduction modulo `p`, as an element of `A/p`.
    pub fn residue(&self, a: &[u32]) -> Vec<u32> {
        let f = self.ring.from_coeffs(a.to_vec());
        self.ring.rem(&f, &self.prime).coeffs
    }

    /// Number of elements, if it fits.
    pub fn size(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.dim() as u32)
    }

    pub fn from_index(&self, mut i: u64) -> Vec<u32> {
        let q = self.q() as u64;
        let mut c = Vec::with_capacity(self.dim());
        for _ in 0..self.dim() {
            c.push((i % q) as u32);
            i /= q;
        }
        self.reduce(&c)
    }
}

impl Ring for QuotRing {
    type Elem = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        Vec::new()
    }
    fn one(&self) -> Vec<u32> {
        self.reduce(&[1])
    }
    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = self.ring.add(&Poly { coeffs: a.clone() }, &Poly { coeffs: b.clone() });
        f.coeffs
    }
    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.ring.sub(&Poly { coeffs: a.clone() }, &Poly { coeffs: b.clone() }).coeffs
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        self.ring.neg(&Poly { coeffs: a.clone() }).coeffs
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = self.ring.mul(&Poly { coeffs: a.clone() }, &Poly { coeffs: b.clone() });
        self.ring.rem(&f, &self.modulus).coeffs
    }
    fn from_i64(&self, n: i64) -> Vec<u32> {
        self.reduce(&[self.ring.base.from_i64(n)])
    }
}

/// Human form of an element of `F_q[t]`, e.g. `t^2 + 2*t + 1`.
pub fn show_prime_poly(a: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Parses `t`, `t+1`, `2*t^2 + 1`, or a coefficient list `[1,1]`.
pub fn parse_prime_poly(s: &str, q: u32) -> Result<Vec<u32>> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse polynomial '{s}'"));
    if s.starts_with('[') {
        let v = crate::algebra::encode::parse_value(s, 1, 0)?;
        return crate::algebra::encode::value_to_prime_poly(q, &v).ok_or_else(bad);
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i64;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '-' { -1 } else { 1 };
        } else if ch == '-' && i == 0 {
            sign = -1;
        } else if ch != '+' {
            cur.push(ch);
        }
    }
    terms.push((sign, cur));
    for (sg, term) in terms {
        if term.is_empty() {
            return Err(bad());
        }
        let (c, mono) = match term.split_once('*') {
            Some((c, m)) => (c.parse::<i64>().map_err(|_| bad())?, m.to_string()),
            None if term.contains('t') => (1, term.clone()),
            None => (term.parse::<i64>().map_err(|_| bad())?, String::new()),
        };
        let e = if mono.is_empty() {
            0
        } else if mono == "t" {
            1
        } else if let Some(e) = mono.strip_prefix("t^") {
            e.parse::<usize>().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += sg * c;
    }
    let mut out: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(q as i64) as u32).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}
