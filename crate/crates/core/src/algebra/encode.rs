//! Canonical text encodings: field elements and polynomials as nested
//! integer lists, ascending, trailing zeros trimmed.

use super::gf::{Gf, GfElem};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Nested integer list, the common shape of all encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    List(Vec<Value>),
}

fn trim(c: &[u32]) -> &[u32] {
    let n = c.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &c[..n]
}

pub fn encode_elem(a: &[u32]) -> String {
    let t = trim(a);
    if t.is_empty() {
        return "[0]".into();
    }
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn encode_poly(f: &Poly<GfElem>) -> String {
    let parts: Vec<String> = f.coeffs.iter().map(|c| encode_elem(c)).collect();
    format!("[{}]", parts.join(","))
}

/// Polynomial over the prime field, as a flat list.
pub fn encode_prime_poly(f: &[u32]) -> String {
    let parts: Vec<String> = trim(f).iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_ws();
        match self.s.get(self.pos) {
            Some(b'[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.s.get(self.pos) == Some(&b']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() || *c == b'-' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                txt.parse().map(Value::Int).map_err(|_| {
                    self.pos = start;
                    self.err("bad integer")
                })
            }
            _ => Err(self.err("expected '[' or integer")),
        }
    }
}

/// Parses one nested list; `line` and `col0` locate `text` for diagnostics.
pub fn parse_value(text: &str, line: usize, col0: usize) -> Result<Value> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, line, col0 };
    let v = p.value()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(v)
}

fn int_list(v: &Value, p: u32) -> Option<Vec<u32>> {
    match v {
        Value::List(xs) => xs
            .iter()
            .map(|x| match x {
                Value::Int(n) => Some(n.rem_euclid(p as i64) as u32),
                _ => None,
            })
            .collect(),
        Value::Int(n) => Some(vec![n.rem_euclid(p as i64) as u32]),
    }
}

/// Interprets a value as an element of `k` (a bare integer is a prime-field
/// element).
pub fn value_to_elem(k: &Gf, v: &Value) -> Option<GfElem> {
    let c = int_list(v, k.p())?;
    if c.len() > k.degree() && c[k.degree()..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(k.from_coords(&c))
}

pub fn value_to_poly(k: &Gf, v: &Value) -> Option<Poly<GfElem>> {
    let Value::List(xs) = v else { return None };
    let coeffs: Option<Vec<GfElem>> = xs.iter().map(|x| value_to_elem(k, x)).collect();
    Some(PolyRing::new(k.clone()).from_coeffs(coeffs?))
}

pub fn value_to_prime_poly(p: u32, v: &Value) -> Option<Vec<u32>> {
    let mut c = int_list(v, p)?;
    while c.last() == Some(&0) {
        c.pop();
    }
    Some(c)
}

pub fn decode_elem(k: &Gf, s: &str) -> Result<GfElem> {
    value_to_elem(k, &parse_value(s, 1, 0)?).ok_or_else(|| Error::Invalid(format!("not a field element: {s}")))
}

pub fn decode_poly(k: &Gf, s: &str) -> Result<Poly<GfElem>> {
    value_to_poly(k, &parse_value(s, 1, 0)?).ok_or_else(|| Error::Invalid(format!("not a polynomial: {s}")))
}

/// Canonical text for elements of a coefficient field.
pub trait Encode: super::field::Field {
    fn encode(&self, a: &Self::Elem) -> String;

    fn encode_poly(&self, f: &Poly<Self::Elem>) -> String {
        let parts: Vec<String> = f.coeffs.iter().map(|c| self.encode(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Encode for Gf {
    fn encode(&self, a: &GfElem) -> String {
        encode_elem(a)
    }
}

impl Encode for super::fp::Fp {
    fn encode(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Rational functions encode as `num/den`, each a polynomial encoding.
impl<F: Encode> Encode for super::ratfunc::RatField<F> {
    fn encode(&self, a: &super::ratfunc::RatFunc<F::Elem>) -> String {
        let n = self.base().encode_poly(&a.num);
        if a.den.degree() == Some(0) {
            n
        } else {
            format!("{}/{}", n, self.base().encode_poly(&a.den))
        }
    }
}
