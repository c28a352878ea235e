//! Roots of additive equations `X^{q^d} - phi X = c`.

use super::field::Ring;
use super::gf::{FieldTower, Gf, GfElem};
use crate::error::{Error, Result};

/// Default escalation cap as a multiple of the input level degree.
pub const DEFAULT_LEVEL_FACTOR: usize = 24;

#[derive(Clone, Debug)]
pub struct AdditiveSolution {
    /// Degree over the prime field of the level holding the roots.
    pub level: usize,
    pub field: Gf,
    /// One root.
    pub particular: GfElem,
    /// Prime-field basis of the kernel of `X -> X^{q^d} - phi X` at `level`.
    pub kernel: Vec<GfElem>,
}

impl AdditiveSolution {
    /// All roots, `particular + span(kernel)`, sorted by index.
    pub fn roots(&self) -> Vec<GfElem> {
        let p = self.field.p() as u128;
        let k = self.kernel.len() as u32;
        let mut out: Vec<GfElem> = (0..p.pow(k))
            .map(|mut n| {
                let mut x = self.particular.clone();
                for b in &self.kernel {
                    let a = (n % p) as i64;
                    n /= p;
                    x = self.field.add(&x, &self.field.mul(&self.field.from_i64(a), b));
                }
                x
            })
            .collect();
        out.sort_by_key(|x| self.field.order_key(x));
        out
    }
}

/// Solves `X^{q^d} - phi X = c` for `phi`, `c` in tower level `level`,
/// escalating through multiples of `level` until all `q^d` roots exist.
/// `max_level` defaults to `24 * level`.
pub fn solve_additive(
    tower: &FieldTower,
    level: usize,
    d: u32,
    phi: &GfElem,
    c: &GfElem,
    max_level: Option<usize>,
) -> Result<AdditiveSolution> {
    let base = tower.level(level);
    if base.is_zero(phi) {
        return Err(Error::DegenerateInseparable);
    }
    let cap = max_level.unwrap_or(DEFAULT_LEVEL_FACTOR * level);
    let mut k = 1;
    while level * k <= cap {
        let m = level * k;
        let field = tower.level(m);
        let phi_m = tower.embed(phi, level, m);
        let c_m = tower.embed(c, level, m);
        let op = field.frobenius_matrix(d).sub(&field.mul_matrix(&phi_m));
        let kernel = op.kernel();
        if kernel.len() == d as usize {
            if let Some(x) = op.solve(&c_m) {
                return Ok(AdditiveSolution { level: m, field, particular: x, kernel });
            }
        }
        k += 1;
    }
    Err(Error::EscalationCap { cap })
}
