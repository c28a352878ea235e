//! Text format for motives and torsion modules.
//!
//! One `key = value` per line, `#` starts a comment, blank lines ignored.
//! Values are nested integer lists (see [`crate::algebra::encode`]).
//!
//! ```text
//! base.q = 3
//! base.field_poly = [1,0,1]
//! base.theta = [0,1]
//! rank = 1
//! delta 0 0 = [[0,2],[1]]
//! twist = [[1]]
//! ```
//!
//! Torsion modules use `size = n`, `divisor i = poly` and `tau i j = poly`,
//! where `tau i j` is the coefficient of `e_i` in `tau(e_j)`.

use std::collections::BTreeMap;

use super::torsion::TorsionBoldModule;
use super::{Base, EffectiveMotive, Motive, PolyMat};
use crate::algebra::encode::{encode_elem, encode_poly, parse_value, value_to_elem, value_to_poly, Value};
use crate::algebra::fp::is_prime;
use crate::algebra::matrix::Matrix;
use crate::algebra::{Gf, Poly, Ring};
use crate::error::{Error, Result};

pub(crate) struct Entry {
    pub(crate) line: usize,
    pub(crate) col: usize,
    pub(crate) value: Value,
}

pub(crate) fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

pub(crate) fn parse_entries(text: &str) -> Result<BTreeMap<String, Entry>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(perr(line, 1, "expected 'key = value'"));
        };
        let key = body[..eq].split_whitespace().collect::<Vec<_>>().join(" ");
        if key.is_empty() {
            return Err(perr(line, 1, "missing key"));
        }
        let value = parse_value(&body[eq + 1..], line, eq + 1)?;
        if out.contains_key(&key) {
            return Err(perr(line, 1, format!("duplicate key '{key}'")));
        }
        out.insert(key, Entry { line, col: eq + 2, value });
    }
    Ok(out)
}

pub(crate) fn take<'a>(map: &'a BTreeMap<String, Entry>, key: &str) -> Result<&'a Entry> {
    map.get(key).ok_or_else(|| perr(0, 0, format!("missing key '{key}'")))
}

pub(crate) fn int_of(e: &Entry) -> Result<i64> {
    match &e.value {
        Value::Int(n) => Ok(*n),
        _ => Err(perr(e.line, e.col, "expected an integer")),
    }
}

pub(crate) fn parse_base(map: &BTreeMap<String, Entry>) -> Result<Base<Gf>> {
    let k = parse_field(map)?;
    let te = take(map, "base.theta")?;
    let theta = value_to_elem(&k, &te.value).ok_or_else(|| perr(te.line, te.col, "theta is not a field element"))?;
    Ok(Base::new(k, theta))
}

/// The constant field from `base.q` and the optional `base.field_poly`.
pub(crate) fn parse_field(map: &BTreeMap<String, Entry>) -> Result<Gf> {
    let qe = take(map, "base.q")?;
    let q = int_of(qe)?;
    if q < 2 || q > u32::MAX as i64 || !is_prime(q as u32) {
        return Err(perr(qe.line, qe.col, "base.q must be a prime"));
    }
    let q = q as u32;
    let k = match map.get("base.field_poly") {
        None => Gf::with_degree(q, 1),
        Some(e) => {
            let c = crate::algebra::encode::value_to_prime_poly(q, &e.value)
                .ok_or_else(|| perr(e.line, e.col, "expected a coefficient list"))?;
            Gf::new(q, c).map_err(|err| perr(e.line, e.col, err.to_string()))?
        }
    };
    Ok(k)
}

fn poly_of(k: &Gf, e: &Entry) -> Result<Poly<Vec<u32>>> {
    value_to_poly(k, &e.value).ok_or_else(|| perr(e.line, e.col, "expected a polynomial"))
}

/// Keys of the form `name i j` or `name i`.
pub(crate) fn indexed<'a>(map: &'a BTreeMap<String, Entry>, name: &str) -> Result<Vec<(Vec<usize>, &'a Entry)>> {
    let mut out = Vec::new();
    for (key, e) in map {
        let mut parts = key.split(' ');
        if parts.next() != Some(name) {
            continue;
        }
        let idx: std::result::Result<Vec<usize>, _> = parts.map(|s| s.parse::<usize>()).collect();
        let idx = idx.map_err(|_| perr(e.line, 1, format!("bad index in '{key}'")))?;
        out.push((idx, e));
    }
    Ok(out)
}

pub(crate) fn check_known(map: &BTreeMap<String, Entry>, allowed: &[&str]) -> Result<()> {
    for (key, e) in map {
        let head = key.split(' ').next().unwrap();
        if !allowed.contains(&head) {
            return Err(perr(e.line, 1, format!("unknown key '{key}'")));
        }
    }
    Ok(())
}

fn square_from(k: &Gf, n: usize, entries: Vec<(Vec<usize>, &Entry)>) -> Result<PolyMat<Gf>> {
    let mut m = Matrix::from_fn(n, n, |_, _| Poly::zero());
    for (idx, e) in entries {
        if idx.len() != 2 || idx[0] >= n || idx[1] >= n {
            return Err(perr(e.line, 1, "matrix index out of range"));
        }
        m.set(idx[0], idx[1], poly_of(k, e)?);
    }
    Ok(m)
}

pub fn parse_motive(text: &str) -> Result<Motive<Gf>> {
    let map = parse_entries(text)?;
    check_known(&map, &["base.q", "base.field_poly", "base.theta", "rank", "delta", "twist"])?;
    let base = parse_base(&map)?;
    let re = take(&map, "rank")?;
    let r = int_of(re)?;
    if !(1..=64).contains(&r) {
        return Err(perr(re.line, re.col, "rank must be between 1 and 64"));
    }
    let delta = square_from(&base.k, r as usize, indexed(&map, "delta")?)?;
    let m = EffectiveMotive::new(&base, delta)?;
    let l = match map.get("twist") {
        None => EffectiveMotive::unit(&base),
        Some(e) => EffectiveMotive::new(&base, Matrix::from_rows(vec![vec![poly_of(&base.k, e)?]]))?,
    };
    Motive::new(m, l)
}

fn emit_base(b: &Base<Gf>, out: &mut String) {
    out.push_str(&format!("base.q = {}\n", b.q()));
    out.push_str(&format!("base.field_poly = {}\n", crate::algebra::encode::encode_prime_poly(b.k.modulus())));
    out.push_str(&format!("base.theta = {}\n", encode_elem(&b.theta)));
}

/// Canonical form: fixed key order, zero entries omitted, trivial twist
/// omitted.
pub fn emit_motive(x: &Motive<Gf>) -> String {
    let mut out = String::new();
    emit_base(x.base(), &mut out);
    out.push_str(&format!("rank = {}\n", x.rank()));
    for i in 0..x.rank() {
        for j in 0..x.rank() {
            let e = x.m.delta.get(i, j);
            if !e.is_zero() {
                out.push_str(&format!("delta {i} {j} = {}\n", encode_poly(e)));
            }
        }
    }
    let tw = x.twist_scalar();
    if tw != x.base().ring().one() {
        out.push_str(&format!("twist = {}\n", encode_poly(&tw)));
    }
    out
}

pub fn parse_torsion(text: &str) -> Result<TorsionBoldModule<Gf>> {
    let map = parse_entries(text)?;
    check_known(&map, &["base.q", "base.field_poly", "base.theta", "size", "divisor", "tau"])?;
    let base = parse_base(&map)?;
    let se = take(&map, "size")?;
    let n = int_of(se)?;
    if !(0..=64).contains(&n) {
        return Err(perr(se.line, se.col, "size must be between 0 and 64"));
    }
    let n = n as usize;
    let mut divs = vec![base.ring().one(); n];
    for (idx, e) in indexed(&map, "divisor")? {
        if idx.len() != 1 || idx[0] >= n {
            return Err(perr(e.line, 1, "divisor index out of range"));
        }
        divs[idx[0]] = poly_of(&base.k, e)?;
    }
    let c = square_from(&base.k, n, indexed(&map, "tau")?)?;
    TorsionBoldModule::from_presentation(&base, &divs, &c)
}
