//! Prime fields and dense linear algebra over them.

use super::field::{Field, Ring};

/// The prime field of order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && is_prime(p), "{p} is not prime");
        Fp { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for Fp {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce(n)
    }
}

impl Field for Fp {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn frobenius(&self, a: &u32) -> u32 {
        *a
    }
    fn flatten(&self, xs: &[u32]) -> Vec<Vec<u32>> {
        xs.iter().map(|x| vec![*x]).collect()
    }
    fn prime_minpoly(&self, a: &u32) -> Option<Vec<u32>> {
        Some(vec![self.neg(a), 1])
    }
    fn is_finite(&self) -> bool {
        true
    }
}

/// Dense matrix over a prime field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FpMat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    /// Matrix of a prime-field linear map on `F_p^n`, from the images of the
    /// unit vectors.
    pub fn from_linear_map(p: u32, n: usize, op: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        let mut cols = Vec::with_capacity(n);
        let mut e = vec![0u32; n];
        for i in 0..n {
            e[i] = 1;
            cols.push(op(&e));
            e[i] = 0;
        }
        let rows = cols.first().map_or(0, |c| c.len());
        Self::from_cols(p, rows, &cols)
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(p: u32, n: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = ((self.data[k] as u64 + v as u64) % self.p as u64) as u32;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (j, b) in row.iter().enumerate() {
                    acc[j] = (acc[j] + a * *b as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + self.p - b) % self.p).collect();
        FpMat { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let fp = Fp { p: self.p };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = fp.inv(&self.get(r, c)).unwrap() as u64;
            for j in c..self.cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.set(r, j, v as u32);
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let base = i * self.cols;
                for (off, pv) in pivot_row.iter().enumerate() {
                    if *pv == 0 {
                        continue;
                    }
                    let k = base + c + off;
                    let cur = self.data[k] as u64;
                    self.data[k] = ((cur + p * p - f * *pv as u64) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let a = m.get(r, free);
                v[pc] = (self.p - a) % self.p;
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMat::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMat::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMat::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// A subspace of `F_p^n` kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub p: u32,
    pub dim_ambient: usize,
    rows: FpMat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u32, n: usize) -> Self {
        Subspace { p, dim_ambient: n, rows: FpMat::zeros(p, 0, n), pivots: Vec::new() }
    }

    pub fn spanned_by(p: u32, n: usize, vecs: &[Vec<u32>]) -> Self {
        let mut s = Self::new(p, n);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        (0..self.rows.rows).map(|i| self.rows.row(i).to_vec()).collect()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut w: Vec<u32> = v.iter().map(|x| x % self.p).collect();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc] as u64;
            if f == 0 {
                continue;
            }
            for (j, b) in self.rows.row(r).iter().enumerate() {
                if *b != 0 {
                    w[j] = ((w[j] as u64 + p * p - f * *b as u64) % p) as u32;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|x| *x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let w = self.reduce(v);
        if w.iter().all(|x| *x == 0) {
            return false;
        }
        let mut rows = self.basis();
        rows.push(w);
        let mut m = FpMat::from_rows(self.p, &rows);
        let pivots = m.rref();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        self.rows = m;
        self.pivots = pivots;
        true
    }
}
