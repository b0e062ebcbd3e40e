//! Lifting a simple root of a residue polynomial to a truncated Hahn
//! solution of a univariate `f ∈ 𝕂[x]`.

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hahn::{fmt_valuation, Exponent, HahnPoly, HahnScalar, Valuation};
use crate::poly::{ComplexPoly, ValuedPoly};
use crate::valued::initial_poly;

/// Result of [`lift_hypersurface_root`].
#[derive(Clone, Debug)]
pub struct Lift {
    pub root: HahnScalar,
    /// `ν(f(z))` after each step, starting with `z = θ·t^α`.
    pub residuals: Vec<Valuation>,
    /// `ν_α(f)`.
    pub value: Exponent,
}

fn exponent_denominators(f: &ValuedPoly, alpha: &Exponent) -> BigInt {
    let mut n = alpha.denom().clone();
    for (_, c) in f.terms() {
        for (e, _) in c.num().terms().iter().chain(c.den().terms()) {
            n = n.lcm(e.denom());
        }
    }
    n
}

/// Hensel refinement `z ← z + lt(−f(z)/f'(z))` from `z = θ·t^α` until
/// `ν(f(z)) ≤ ν_α(f) − p`. Requires `f` univariate and `θ` a simple root of
/// `IN_α(f)`.
pub fn lift_hypersurface_root(f: &ValuedPoly, alpha: &Exponent, theta: &Coeff, p: u32) -> Result<Lift> {
    if f.nvars() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: f.nvars(),
        });
    }
    if theta.is_zero() {
        return Err(Error::Invalid("theta must be nonzero".into()));
    }
    if p == 0 {
        return Err(Error::Invalid("precision must be at least 1".into()));
    }
    let (value, rep) = initial_poly(f, alpha)?;
    if !rep.evaluate(std::slice::from_ref(theta))?.is_zero() {
        return Err(Error::NotARoot(theta.to_string()));
    }
    if rep.derivative(0).evaluate(std::slice::from_ref(theta))?.is_zero() {
        return Err(Error::Ramified(theta.to_string()));
    }
    let target = &value - Exponent::from_integer(p.into());
    let n = exponent_denominators(f, alpha);
    // each step drops the residual by at least 1/N
    let cap = (BigInt::from(p) * &n).try_into().unwrap_or(usize::MAX / 2).saturating_add(4);
    // D·f has Laurent-polynomial coefficients, so the loop needs no gcds
    let (cleared, shift) = clear_denominators(f);
    let deriv: Vec<HahnPoly> = cleared
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Coeff::from_int(k as i64)))
        .collect();
    let order = |r: &HahnPoly| r.order().map(|v| v - &shift);
    let mut z = HahnPoly::monomial(alpha.clone(), theta.clone());
    let mut r = horner(&cleared, &z);
    let mut residuals = vec![order(&r)];
    for _ in 0..cap {
        match order(&r) {
            None => break,
            Some(v) if v <= target => break,
            Some(_) => {}
        }
        let d = horner(&deriv, &z);
        let ((er, cr), (ed, cd)) = match (r.leading(), d.leading()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return Err(Error::DivisionByZero),
        };
        z = z.add(&HahnPoly::monomial(er - ed, -(cr / cd)));
        let next = horner(&cleared, &z);
        if next.order() >= r.order() {
            return Err(Error::Internal(format!(
                "residual did not drop: {} -> {}",
                fmt_valuation(&order(&r)),
                fmt_valuation(&order(&next))
            )));
        }
        r = next;
        residuals.push(order(&r));
    }
    match order(&r) {
        Some(v) if v > target => Err(Error::LiftStalled(cap)),
        _ => Ok(Lift {
            root: HahnScalar::from_poly(z),
            residuals,
            value,
        }),
    }
}

/// Coefficients of `D·f` by degree, with `ν(D)`, where `D` is the product of
/// the distinct coefficient denominators.
fn clear_denominators(f: &ValuedPoly) -> (Vec<HahnPoly>, Exponent) {
    let mut dens: Vec<&HahnPoly> = Vec::new();
    for (_, c) in f.terms() {
        if !c.den().is_one() && !dens.contains(&c.den()) {
            dens.push(c.den());
        }
    }
    let deg = f.total_degree().unwrap_or(0) as usize;
    let mut out = vec![HahnPoly::zero(); deg + 1];
    for (m, c) in f.terms() {
        let mut v = c.num().clone();
        for d in dens.iter().filter(|d| **d != c.den()) {
            v = v.mul(d);
        }
        out[m.0[0] as usize] = v;
    }
    let shift = dens.iter().map(|d| d.order().unwrap()).fold(Exponent::zero(), |a, b| a + b);
    (out, shift)
}

fn horner(coeffs: &[HahnPoly], z: &HahnPoly) -> HahnPoly {
    coeffs.iter().rev().fold(HahnPoly::zero(), |acc, c| acc.mul(z).add(c))
}

/// `ν(f(z)) ≤ bound` for every `f`; `bound = None` demands exact zeros.
pub fn verify_point(fs: &[ValuedPoly], z: &[HahnScalar], bound: &Valuation) -> Result<bool> {
    for f in fs {
        let v = f.evaluate(z)?.valuation();
        if v > *bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue polynomial evaluated at a phase: `IN_α(f)(B)`.
pub fn residue_at(f: &ValuedPoly, alpha: &Exponent, phase: &[Coeff]) -> Result<Coeff> {
    let (_, rep): (Exponent, ComplexPoly) = initial_poly(f, alpha)?;
    rep.evaluate(phase)
}
