//! Membership tests for the positive period ring and the multiplicative set
//! of `sigma`-eigenvectors, and the floor inequality for `sigma^N`-images.

use super::laurent::{LaurentApprox, TowerCoeffs};
use super::places::{place_key, poles, vx, Place, RatLaurent, Val};
use crate::error::{Error, Result};

/// Output of [`eps_floor_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsCheck {
    /// `v_x(sigma^N(a))`.
    pub lhs: Val,
    /// `floor(v_x(s * sigma^N(a)) / q^N) * q^N`.
    pub rhs: Val,
    pub holds: bool,
}

/// Checks `v_x(sigma^N(a)) >= floor(v_x(s sigma^N(a)) / q^N) q^N` for a unit
/// `s` of order zero with `v_x(s) >= 0` and `v_x(s(0)) < q^N`, and `a` with
/// coefficients in the coefficient field of `K` and finite support.
///
/// When `s` is truncated, its window must cover the support of
/// `sigma^N(a)`; the inequality is then decided on that window, where the
/// argument only involves known coefficients.
pub fn eps_floor_check(s: &RatLaurent, x: &Place, n: u32, a: &RatLaurent) -> Result<EpsCheck> {
    if !s.is_unit_of_order_zero() {
        return Err(Error::Hypothesis("s must be a unit of order 0".into()));
    }
    if !a.is_exact() {
        return Err(Error::Hypothesis("a must have finite support".into()));
    }
    let qn = (s.tower.p() as i64).checked_pow(n).ok_or_else(|| Error::Invalid("q^N overflows".into()))?;
    let vs = vx(s, x)?.value;
    if vs < Val::Fin(0) {
        return Err(Error::Hypothesis(format!("v_x(s) = {vs} is negative")));
    }
    let lead = s.truncate(1);
    let v0 = vx(&lead, x)?.value;
    if v0 >= Val::Fin(qn) {
        return Err(Error::Hypothesis(format!("v_x(s(0)) = {v0} is not below q^N = {qn}")));
    }
    let level = s.field.level();
    let b = a.embed(level)?.sigma_pow(n);
    if let (Some(first), Some(last)) = (b.order(), b.terms().last().map(|(i, _)| i)) {
        if s.end() <= last - first {
            return Err(Error::Hypothesis(format!(
                "s is known below t^{} but sigma^N(a) spans {} coefficients",
                s.end(),
                last - first + 1
            )));
        }
    }
    let lhs = vx(&b, x)?.value;
    let prod = s.mul(&b)?;
    let rhs = match vx(&prod, x)?.value {
        Val::Fin(v) => Val::Fin(v.div_euclid(qn) * qn),
        Val::Inf => Val::Inf,
    };
    Ok(EpsCheck { lhs, rhs, holds: lhs >= rhs })
}

/// Output of [`bplus_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPlus {
    /// Places where some coefficient has a pole, in a fixed order.
    pub poles: Vec<Place>,
    pub member: bool,
}

/// Finitely supported series lie in the positive period ring: no valuation
/// is `-inf`, and only the finitely many poles of the coefficients give
/// negative values.
pub fn bplus_membership(f: &RatLaurent) -> Result<BPlus> {
    if !f.is_exact() {
        return Err(Error::Hypothesis("membership is decided for finitely supported series only".into()));
    }
    let level = f.field.level();
    let mut out: Vec<Place> = Vec::new();
    for (_, t) in f.terms() {
        for c in t {
            for x in poles(&f.tower, level, c) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out.sort_by_key(|x| place_key(&f.tower, x));
    Ok(BPlus { poles: out, member: true })
}

/// Whether `s` is a unit of order zero with `sigma(s)/s` defined over level
/// `base_level` in every coefficient through `t^n`.
pub fn s_membership<F: TowerCoeffs>(s: &LaurentApprox<F>, base_level: usize, n: i64) -> Result<bool> {
    if !s.is_unit_of_order_zero() {
        return Ok(false);
    }
    if s.end() <= n {
        return Err(Error::Hypothesis(format!("s is known only below t^{}", s.end())));
    }
    let ratio = s.sigma().mul(&s.inverse(n + 1)?)?.truncate(n + 1);
    Ok(ratio.defined_over(base_level, n + 1))
}
