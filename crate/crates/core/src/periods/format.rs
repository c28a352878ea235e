//! Text format for period jobs.
//!
//! Same `key = value` layout as motive files. The constant field of `K`
//! comes from `base.q` and `base.field_poly`. A series named `f` with
//! `d`-tuple coefficients is given by keys `f r c = value` for the
//! component `c` of the coefficient of `t^r`; over `F_q(u)` the value is a
//! numerator polynomial in `u` and `f.den r c` an optional denominator.
//! Matrices use `delta i j r c` and `delta.den i j r c`. A place is
//! `place = poly` (monic irreducible in `u`) or `place.infinity = 1`.
//!
//! ```text
//! base.q = 3
//! d = 1
//! f 0 0 = [0,1]
//! f.den 1 0 = [0,1]
//! place = [0,1]
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use super::laurent::LaurentApprox;
use super::places::{Place, RatCoeffs, RatLaurent};
use crate::algebra::encode::{encode_elem, encode_poly, value_to_elem, value_to_poly};
use crate::algebra::matrix::Matrix;
use crate::algebra::{tower_for, FieldTower, Gf, GfElem, Poly, PolyRing, RatField, RatFunc, Ring};
use crate::error::Result;
use crate::motive::format::{indexed, int_of, parse_entries, parse_field, perr, Entry};

/// A parsed period job: the constant field and the raw entries.
pub struct PeriodJob {
    pub field: Gf,
    pub tower: Arc<FieldTower>,
    entries: BTreeMap<String, Entry>,
}

impl PeriodJob {
    pub fn parse(text: &str) -> Result<PeriodJob> {
        let entries = parse_entries(text)?;
        let field = parse_field(&entries)?;
        let tower = tower_for(&field);
        Ok(PeriodJob { field, tower, entries })
    }

    pub fn level(&self) -> usize {
        self.field.degree()
    }

    /// Integer parameter, or `default` when absent.
    pub fn int(&self, key: &str, default: i64) -> Result<i64> {
        match self.entries.get(key) {
            None => Ok(default),
            Some(e) => int_of(e),
        }
    }

    /// Required integer parameter.
    pub fn int_required(&self, key: &str) -> Result<i64> {
        let e = self.entries.get(key).ok_or_else(|| perr(0, 0, format!("missing key '{key}'")))?;
        int_of(e)
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn place(&self) -> Result<Place> {
        if self.int("place.infinity", 0)? != 0 {
            return Ok(Place::infinity(self.level()));
        }
        let e = self.entries.get("place").ok_or_else(|| perr(0, 0, "missing key 'place'"))?;
        let pi = value_to_poly(&self.field, &e.value).ok_or_else(|| perr(e.line, e.col, "expected a polynomial"))?;
        Place::finite(&self.tower, self.level(), pi).map_err(|err| perr(e.line, e.col, err.to_string()))
    }

    fn tuples<T: Clone>(
        &self,
        name: &str,
        prefix: &[usize],
        d: usize,
        zero: T,
        read: impl Fn(&Entry) -> Result<T>,
    ) -> Result<BTreeMap<i64, Vec<T>>> {
        let mut out: BTreeMap<i64, Vec<T>> = BTreeMap::new();
        for (idx, e) in indexed(&self.entries, name)? {
            if idx.len() != prefix.len() + 2 || idx[..prefix.len()] != *prefix {
                if idx.len() != prefix.len() + 2 {
                    return Err(perr(e.line, 1, format!("'{name}' needs {} indices", prefix.len() + 2)));
                }
                continue;
            }
            let (r, c) = (idx[prefix.len()] as i64, idx[prefix.len() + 1]);
            if c >= d {
                return Err(perr(e.line, 1, format!("component {c} out of range for d = {d}")));
            }
            out.entry(r).or_insert_with(|| vec![zero.clone(); d])[c] = read(e)?;
        }
        Ok(out)
    }

    fn assemble<F: super::TowerCoeffs>(
        &self,
        field: F,
        d: usize,
        terms: BTreeMap<i64, Vec<F::Elem>>,
        known_until: Option<i64>,
    ) -> Result<LaurentApprox<F>> {
        let start = terms.keys().next().copied().unwrap_or(0).min(0);
        let last = terms.keys().last().copied().unwrap_or(-1);
        let mut coeffs = vec![vec![field.zero(); d]; (last - start + 1).max(0) as usize];
        for (r, t) in terms {
            coeffs[(r - start) as usize] = t;
        }
        match known_until {
            None => LaurentApprox::exact(self.tower.clone(), field, d, start, coeffs),
            Some(e) => LaurentApprox::truncated(self.tower.clone(), field, d, start, coeffs, e),
        }
    }

    /// Series with coefficients in the constant field (`K` finite).
    pub fn constant_series(&self, name: &str, d: usize) -> Result<LaurentApprox<Gf>> {
        let k = self.field.clone();
        let terms = self.tuples(name, &[], d, k.zero(), |e| {
            value_to_elem(&k, &e.value).ok_or_else(|| perr(e.line, e.col, "expected a field element"))
        })?;
        let known = self.entries.get(&format!("{name}.known_until")).map(int_of).transpose()?;
        self.assemble(k.clone(), d, terms, known)
    }

    fn rational_terms(&self, name: &str, prefix: &[usize], d: usize) -> Result<BTreeMap<i64, Vec<RatFunc<GfElem>>>> {
        let rf = RatField::new(self.field.clone());
        let read_poly = |e: &Entry| {
            value_to_poly(&self.field, &e.value).ok_or_else(|| perr(e.line, e.col, "expected a polynomial in u"))
        };
        let nums = self.tuples(name, prefix, d, Poly::zero(), read_poly)?;
        let dens =
            self.tuples(&format!("{name}.den"), prefix, d, PolyRing::new(self.field.clone()).one(), read_poly)?;
        let mut out = BTreeMap::new();
        for (r, num) in nums {
            let den = dens.get(&r).cloned().unwrap_or_else(|| vec![rf.ring.one(); d]);
            let mut t = Vec::with_capacity(d);
            for (a, b) in num.into_iter().zip(den) {
                t.push(rf.frac(a, b).ok_or_else(|| perr(0, 0, format!("zero denominator in '{name}'")))?);
            }
            out.insert(r, t);
        }
        Ok(out)
    }

    /// Series with coefficients in `F_q(u)`.
    pub fn rational_series(&self, name: &str, d: usize) -> Result<RatLaurent> {
        let terms = self.rational_terms(name, &[], d)?;
        let known = self.entries.get(&format!("{name}.known_until")).map(int_of).transpose()?;
        self.assemble(RatField::new(self.field.clone()), d, terms, known)
    }

    /// Square matrix of series with coefficients in `F_q(u)`, entries
    /// known through `t^{n}`.
    pub fn rational_matrix(&self, name: &str, rank: usize, d: usize, n: i64) -> Result<Matrix<RatLaurent>> {
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut row = Vec::with_capacity(rank);
            for j in 0..rank {
                let terms = self.rational_terms(name, &[i, j], d)?;
                let s = self.assemble(RatField::new(self.field.clone()), d, terms, None)?;
                row.push(s.truncate(n + 1));
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(rows))
    }
}

/// `num` or `num/den` in canonical list encoding.
pub fn encode_rat(f: &RatFunc<GfElem>) -> String {
    if f.den.degree() == Some(0) {
        encode_poly(&f.num)
    } else {
        format!("{}/{}", encode_poly(&f.num), encode_poly(&f.den))
    }
}

/// One line per nonzero coefficient component: `name r c = value`.
pub fn emit_rational_series(name: &str, f: &LaurentApprox<RatCoeffs>) -> String {
    let mut out = String::new();
    for (r, t) in f.terms() {
        for (c, x) in t.iter().enumerate() {
            if !x.num.is_zero() {
                out.push_str(&format!("{name} {r} {c} = {}\n", encode_rat(x)));
            }
        }
    }
    out
}

pub fn emit_constant_series(name: &str, f: &LaurentApprox<Gf>) -> String {
    let mut out = String::new();
    for (r, t) in f.terms() {
        for (c, x) in t.iter().enumerate() {
            if x.iter().any(|&v| v != 0) {
                out.push_str(&format!("{name} {r} {c} = {}\n", encode_elem(x)));
            }
        }
    }
    out
}
