//! Surfaces `X = V(det − 1, f) ⊂ SL2(𝕂)`: det-free reduction, the
//! simplifications `f̃`, `f̂`, the layer decomposition of `In_ν(X)` and the
//! realisation of prescribed layers.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::divide_exact;
use crate::hahn::{Exponent, HahnScalar};
use crate::ideal::{is_homogeneous, ComplexIdealRep, FiberDim};
use crate::poly::{ComplexPoly, Monomial, MonomialOrder, ValuedPoly};
use crate::valued::{initial_poly, tilde_reduce, tropical_roots};

const REDUCTION_CAP: usize = 64;

/// `x1·x4 − x2·x3`.
pub fn det_poly() -> ValuedPoly {
    let x = |i| ValuedPoly::var(4, i);
    x(0).mul(&x(3)).sub(&x(1).mul(&x(2)))
}

pub fn det_complex() -> ComplexPoly {
    let x = |i| ComplexPoly::var(4, i);
    x(0).mul(&x(3)).sub(&x(1).mul(&x(2)))
}

fn check_four(f: &ValuedPoly) -> Result<()> {
    if f.nvars() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            got: f.nvars(),
        });
    }
    Ok(())
}

/// Positive probe levels: the positive roots, midpoints between them, one
/// point below the first and one above the last.
fn positive_probes(f: &ValuedPoly) -> Result<Vec<Exponent>> {
    let roots: Vec<Exponent> = tropical_roots(f)?.into_iter().filter(|r| r > &Exponent::zero()).collect();
    let two = Exponent::from_integer(2.into());
    let mut out = Vec::new();
    match roots.first() {
        None => out.push(Exponent::one()),
        Some(r0) => out.push(r0 / &two),
    }
    for (k, r) in roots.iter().enumerate() {
        out.push(r.clone());
        match roots.get(k + 1) {
            Some(next) => out.push((r + next) / &two),
            None => out.push(r + Exponent::one()),
        }
    }
    Ok(out)
}

/// Replaces `f` by `f − g·(det − 1)` while some positive-level initial form
/// of `f` is a multiple of `det`.
pub fn det_free_reduce(f: &ValuedPoly) -> Result<ValuedPoly> {
    check_four(f)?;
    let det = det_complex();
    let det_minus_one = det_poly().sub(&ValuedPoly::one(4));
    let mut f = f.clone();
    for _ in 0..REDUCTION_CAP {
        if f.is_zero() {
            return Err(Error::Invalid("f lies in the ideal of det - 1".into()));
        }
        let mut step = None;
        for alpha in positive_probes(&f)? {
            let (v, rep) = initial_poly(&f, &alpha)?;
            if let Some(mu) = divide_exact(&rep, &det, MonomialOrder::GrLex) {
                step = Some((alpha, v, mu));
                break;
            }
        }
        let Some((alpha, v, mu)) = step else {
            return Ok(f);
        };
        let mut g = ValuedPoly::zero(4);
        for (w, c) in mu.terms() {
            let e = &v - &alpha * Exponent::from_integer((w.total() + 2).into());
            g.add_term(w.clone(), HahnScalar::monomial(e, c.clone()));
        }
        f = f.sub(&g.mul(&det_minus_one));
    }
    Err(Error::NonConvergence {
        iterations: REDUCTION_CAP,
    })
}

/// `f̂`: `f̃` with every coefficient cut to its leading monomial.
pub fn hat_simplify(f: &ValuedPoly) -> Result<ValuedPoly> {
    let tilde = tilde_reduce(f)?;
    Ok(tilde.map_coeffs(HahnScalar::truncate_leading))
}

#[derive(Clone, Debug)]
pub struct LevelLayer {
    pub level: Exponent,
    pub ideal: ComplexIdealRep,
    pub homogeneous: bool,
    pub dimension: FiberDim,
}

#[derive(Clone, Debug)]
pub struct CurveLayer {
    pub from: Exponent,
    pub to: Option<Exponent>,
    pub sample: Exponent,
    /// Degree of `IN_α(f)` on the interval.
    pub degree: u32,
    pub ideal: ComplexIdealRep,
    pub homogeneous: bool,
    pub dimension: FiberDim,
}

#[derive(Clone, Debug)]
pub struct LayerDecomposition {
    pub levels: Vec<Exponent>,
    pub at_level: Vec<LevelLayer>,
    pub intervals: Vec<CurveLayer>,
    pub degrees: Vec<u32>,
    /// Levels (or interval starts) whose fiber does not have dimension 2.
    pub non_generic: Vec<Exponent>,
    /// Levels whose fiber ideal is the unit ideal.
    pub empty_levels: Vec<Exponent>,
}

impl LayerDecomposition {
    pub fn is_generic(&self) -> bool {
        self.non_generic.is_empty()
    }
}

/// Layers of `In_ν(V(det − 1, f))` for det-free `f`: levels `{0}` and the
/// positive roots of `Trop(f̃)`, fibers `⟨det (− 1 at 0), IN_β(f)⟩`, curves
/// `⟨det, IN_α(f)⟩` on the open intervals.
pub fn layer_decomposition(f: &ValuedPoly) -> Result<LayerDecomposition> {
    check_four(f)?;
    let ft = tilde_reduce(f)?;
    let mut levels = vec![Exponent::zero()];
    levels.extend(tropical_roots(&ft)?.into_iter().filter(|r| r > &Exponent::zero()));
    let det = det_complex();
    let mut at_level = Vec::new();
    let mut intervals = Vec::new();
    let mut non_generic = Vec::new();
    let mut empty_levels = Vec::new();
    for (k, beta) in levels.iter().enumerate() {
        let (_, rep) = initial_poly(&ft, beta)?;
        let base = if beta.is_zero() {
            det.sub(&ComplexPoly::one(4))
        } else {
            det.clone()
        };
        let ideal = ComplexIdealRep::new(4, vec![base, rep])?;
        let dimension = ideal.punctured_dimension();
        if ideal.is_unit() {
            empty_levels.push(beta.clone());
        }
        if dimension != FiberDim::Dim(2) {
            non_generic.push(beta.clone());
        }
        at_level.push(LevelLayer {
            level: beta.clone(),
            homogeneous: is_homogeneous(&ideal),
            dimension,
            ideal,
        });
        let next = levels.get(k + 1).cloned();
        let sample = match &next {
            Some(n) => (beta + n) / Exponent::from_integer(2.into()),
            None => beta + Exponent::one(),
        };
        let (_, rep) = initial_poly(&ft, &sample)?;
        let degree = rep.total_degree().unwrap_or(0);
        let ideal = ComplexIdealRep::new(4, vec![det.clone(), rep])?;
        let dimension = ideal.punctured_dimension();
        if dimension != FiberDim::Dim(2) && !non_generic.contains(beta) {
            non_generic.push(beta.clone());
        }
        intervals.push(CurveLayer {
            from: beta.clone(),
            to: next,
            sample,
            degree,
            homogeneous: is_homogeneous(&ideal),
            dimension,
            ideal,
        });
    }
    let degrees = intervals.iter().map(|c| c.degree).collect();
    Ok(LayerDecomposition {
        levels,
        at_level,
        intervals,
        degrees,
        non_generic,
        empty_levels,
    })
}

/// `Σ t^{γ_i} f_i` with `γ_0 = 0`, `γ_i = γ_{i−1} − β_i (d_i − d_{i−1})`,
/// whose tropical roots are the prescribed `β_i`.
pub fn realize_from_layers(blocks: &[ValuedPoly], roots: &[Exponent]) -> Result<ValuedPoly> {
    if blocks.is_empty() {
        return Err(Error::Invalid("at least one block is required".into()));
    }
    if blocks.len() != roots.len() + 1 {
        return Err(Error::Invalid(format!(
            "{} blocks need {} roots, got {}",
            blocks.len(),
            blocks.len() - 1,
            roots.len()
        )));
    }
    if roots.iter().any(|r| r <= &Exponent::zero()) || roots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("roots must be positive and increasing".into()));
    }
    let n = blocks[0].nvars();
    let mut degrees = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_zero() {
            return Err(Error::ZeroPolynomial("layer block"));
        }
        if b.nvars() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: b.nvars(),
            });
        }
        if !b.is_homogeneous() {
            return Err(Error::NotHomogeneous(b.to_string()));
        }
        if b.terms().any(|(_, c)| c.valuation() != Some(Exponent::zero())) {
            return Err(Error::Invalid(format!("block {b} needs coefficients of valuation 0")));
        }
        degrees.push(b.total_degree().unwrap());
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("block degrees must increase strictly".into()));
    }
    let mut gamma = Exponent::zero();
    let mut out = blocks[0].clone();
    for i in 1..blocks.len() {
        gamma -= &roots[i - 1] * Exponent::from_integer((degrees[i] - degrees[i - 1]).into());
        let scale = HahnScalar::t_pow(gamma.clone());
        out = out.add(&blocks[i].mul_term(&Monomial::one(n), &scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::int_exponent;

    fn x(i: usize) -> ValuedPoly {
        ValuedPoly::var(4, i)
    }

    fn t(p: i64) -> HahnScalar {
        HahnScalar::t_pow(int_exponent(p))
    }

    fn k(c: HahnScalar) -> ValuedPoly {
        ValuedPoly::constant(4, c)
    }

    #[test]
    fn det_free_examples() {
        let one = ValuedPoly::one(4);
        assert_eq!(det_free_reduce(&det_poly().add(&x(0))).unwrap(), x(0).add(&one));
        assert_eq!(det_free_reduce(&x(0).sub(&one)).unwrap(), x(0).sub(&one));
        let f = k(t(1)).mul(&det_poly()).add(&x(0));
        assert_eq!(det_free_reduce(&f).unwrap(), x(0).add(&k(t(1))));
    }

    #[test]
    fn hat_examples() {
        let f = k(HahnScalar::one() + t(-1)).mul(&x(0));
        assert_eq!(hat_simplify(&f).unwrap(), x(0));
        let d = det_poly().sub(&ValuedPoly::one(4));
        assert_eq!(hat_simplify(&d).unwrap(), d);
        let g = ValuedPoly::one(4).add(&k(t(1) + t(-10)).mul(&x(0)));
        assert_eq!(hat_simplify(&g).unwrap(), ValuedPoly::one(4).add(&k(t(1)).mul(&x(0))));
    }

    #[test]
    fn linear_surface() {
        let f = x(0).sub(&ValuedPoly::one(4));
        let l = layer_decomposition(&f).unwrap();
        assert_eq!(l.levels, vec![int_exponent(0)]);
        assert_eq!(l.at_level[0].dimension, FiberDim::Dim(2));
        assert!(!l.at_level[0].homogeneous);
        assert_eq!(l.intervals[0].dimension, FiberDim::Dim(2));
        assert!(l.intervals[0].homogeneous);
        assert!(l.is_generic());
    }

    #[test]
    fn realize_single_root() {
        let f1 = x(0).pow(2).add(&x(1).mul(&x(2)));
        let r = realize_from_layers(&[ValuedPoly::one(4), f1.clone()], &[int_exponent(2)]).unwrap();
        assert_eq!(r, ValuedPoly::one(4).add(&k(t(-4)).mul(&f1)));
        let l = layer_decomposition(&r).unwrap();
        assert_eq!(l.levels, vec![int_exponent(0), int_exponent(2)]);
        assert_eq!(realize_from_layers(std::slice::from_ref(&f1), &[]).unwrap(), f1);
    }
}
