//! Dense matrices over a ring handle.

use super::field::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(nrows: usize, cols: &[Vec<E>]) -> Self {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G, F: Fn(&E) -> G>(&self, f: F) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self, zero: E) -> Self {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                zero.clone()
            }
        })
    }
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { r.one() } else { r.zero() })
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| r.zero())
}

pub fn scalar<R: Ring>(r: &R, n: usize, c: &R::Elem) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { r.zero() })
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix shape mismatch");
    Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = r.zero();
        for k in 0..a.cols {
            let x = a.get(i, k);
            if r.is_zero(x) {
                continue;
            }
            acc = r.add(&acc, &r.mul(x, b.get(k, j)));
        }
        acc
    })
}

pub fn mat_vec<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = r.zero();
            for (k, x) in v.iter().enumerate() {
                acc = r.add(&acc, &r.mul(a.get(i, k), x));
            }
            acc
        })
        .collect()
}

pub fn mat_add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| r.add(a.get(i, j), b.get(i, j)))
}

pub fn mat_sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| r.sub(a.get(i, j), b.get(i, j)))
}

pub fn mat_scale<R: Ring>(r: &R, a: &Matrix<R::Elem>, c: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| r.mul(x, c))
}

pub fn is_zero_matrix<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| r.is_zero(x))
}

/// Kronecker product; index `(i, k)` of the result is `i * b.rows + k`.
pub fn kron<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        r.mul(a.get(i / b.rows, j / b.cols), b.get(i % b.rows, j % b.cols))
    })
}

pub fn mat_pow<R: Ring>(r: &R, a: &Matrix<R::Elem>, mut e: u64) -> Matrix<R::Elem> {
    let mut acc = identity(r, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(r, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(r, &base, &base);
        }
    }
    acc
}

/// Coefficients `c_0..c_n` (ascending, monic) of `det(x I - a)` by the
/// division-free Berkowitz algorithm.
pub fn charpoly<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert!(a.is_square());
    let n = a.rows;
    // Descending coefficient vector, built up over leading principal blocks.
    let mut v: Vec<R::Elem> = vec![r.one()];
    for k in 0..n {
        // Block of size k+1: entries a[0..=k][0..=k]; split off row/col k.
        let akk = a.get(k, k).clone();
        let rrow: Vec<R::Elem> = (0..k).map(|j| a.get(k, j).clone()).collect();
        let ccol: Vec<R::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        // Toeplitz column: 1, -akk, -R C, -R A C, -R A^2 C, ...
        let mut t = vec![r.one(), r.neg(&akk)];
        let mut w = ccol.clone();
        for _ in 0..k {
            let s = r.sum(rrow.iter().zip(&w).map(|(x, y)| r.mul(x, y)).collect::<Vec<_>>().iter());
            t.push(r.neg(&s));
            w = (0..k)
                .map(|i| {
                    let mut acc = r.zero();
                    for j in 0..k {
                        acc = r.add(&acc, &r.mul(a.get(i, j), &w[j]));
                    }
                    acc
                })
                .collect();
        }
        // new v = T * v with T lower-triangular Toeplitz of size (k+2) x (k+1)
        let mut nv = Vec::with_capacity(k + 2);
        for i in 0..k + 2 {
            let mut acc = r.zero();
            for j in 0..=k.min(i) {
                if j < v.len() && i - j < t.len() {
                    acc = r.add(&acc, &r.mul(&t[i - j], &v[j]));
                }
            }
            nv.push(acc);
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Determinant over any commutative ring.
pub fn det<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.rows;
    if n == 0 {
        return r.one();
    }
    let c = charpoly(r, a);
    if n % 2 == 0 {
        c[0].clone()
    } else {
        r.neg(&c[0])
    }
}

/// All `d`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    rec(0, n, d, &mut cur, &mut out);
    out
}

/// The `d`-th compound matrix (minors indexed by lexicographic subsets).
pub fn compound<R: Ring>(r: &R, a: &Matrix<R::Elem>, d: usize) -> Matrix<R::Elem> {
    let rs = subsets(a.rows, d);
    let cs = subsets(a.cols, d);
    Matrix::from_fn(rs.len(), cs.len(), |i, j| det(r, &a.submatrix(&rs[i], &cs[j])))
}

/// Adjugate of a square matrix.
pub fn adjugate<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.rows;
    if n == 1 {
        return identity(r, 1);
    }
    Matrix::from_fn(n, n, |i, j| {
        let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        let m = det(r, &a.submatrix(&rows, &cols));
        if (i + j) % 2 == 0 {
            m
        } else {
            r.neg(&m)
        }
    })
}

/// Reduced row echelon form over a field; returns pivot columns.
pub fn rref<F: Field>(f: &F, a: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(piv) = (row..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if piv != row {
            for j in 0..a.cols {
                a.data.swap(piv * a.cols + j, row * a.cols + j);
            }
        }
        let inv = f.inv(a.get(row, c)).unwrap();
        for j in c..a.cols {
            let v = f.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, &mut a.clone()).len()
}

/// Basis of the right kernel over a field.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; a.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..a.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); a.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            v
        })
        .collect()
}

/// One solution of `a x = b` over a field.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut aug =
        Matrix::from_fn(a.rows, a.cols + 1, |i, j| if j < a.cols { a.get(i, j).clone() } else { b[i].clone() });
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols).clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(a.is_square());
    let n = a.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
}

/// Determinant over a field by elimination.
pub fn det_field<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
            return f.zero();
        };
        if piv != c {
            for j in 0..n {
                m.data.swap(piv * n + j, c * n + j);
            }
            acc = f.neg(&acc);
        }
        let pv = m.get(c, c).clone();
        acc = f.mul(&acc, &pv);
        let inv = f.inv(&pv).unwrap();
        for i in c + 1..n {
            if f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = f.mul(m.get(i, c), &inv);
            for j in c..n {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    acc
}
