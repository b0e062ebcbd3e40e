//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasetrop::hahn::exponent;
use phasetrop::ideal::{ideal_equal, initial_ideal, ComplexIdealRep, ValuedIdeal};
use phasetrop::{Coeff, Exponent, HahnPoly, HahnScalar, Monomial, ValuedPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(r: &mut ChaCha8Rng) -> Coeff {
    loop {
        let re = r.gen_range(-5..=5);
        let im = if r.gen_bool(0.3) { r.gen_range(-3..=3) } else { 0 };
        if re != 0 || im != 0 {
            return Coeff::gaussian(re, im) * Coeff::from_ratio(1, r.gen_range(1..=4));
        }
    }
}

pub fn small_exponent(r: &mut ChaCha8Rng, span: i64, den: i64) -> Exponent {
    let q = r.gen_range(1..=den);
    exponent(r.gen_range(-span * q..=span * q), q)
}

pub fn hahn_poly(r: &mut ChaCha8Rng, terms: usize) -> HahnPoly {
    let n = r.gen_range(1..=terms);
    let p = HahnPoly::from_terms((0..n).map(|_| (small_exponent(r, 3, 3), coeff(r))));
    if p.is_zero() {
        HahnPoly::constant(Coeff::one())
    } else {
        p
    }
}

/// Nonzero scalar; a quarter of them are proper fractions.
pub fn scalar(r: &mut ChaCha8Rng) -> HahnScalar {
    let num = hahn_poly(r, 3);
    if r.gen_bool(0.25) {
        if let Ok(s) = HahnScalar::fraction(num.clone(), hahn_poly(r, 2)) {
            return s;
        }
    }
    HahnScalar::from_poly(num)
}

/// Polynomial in `n` variables, total degree at most `deg`, at least one term.
pub fn poly(r: &mut ChaCha8Rng, n: usize, deg: u32, max_terms: usize) -> ValuedPoly {
    let mut p = ValuedPoly::zero(n);
    while p.is_zero() {
        for _ in 0..r.gen_range(1..=max_terms) {
            let total = r.gen_range(0..=deg);
            let mut e = vec![0u32; n];
            for _ in 0..total {
                e[r.gen_range(0..n)] += 1;
            }
            p.add_term(Monomial(e), scalar(r));
        }
    }
    p
}

/// Polynomial with monomial coefficients `c·t^k`, integer `k ∈ [-span, span]`.
pub fn monomial_poly(r: &mut ChaCha8Rng, n: usize, deg: u32, max_terms: usize, span: i64) -> ValuedPoly {
    let mut p = ValuedPoly::zero(n);
    while p.is_zero() || p.is_constant() {
        p = ValuedPoly::zero(n);
        for _ in 0..r.gen_range(2..=max_terms) {
            let total = r.gen_range(0..=deg);
            let mut e = vec![0u32; n];
            for _ in 0..total {
                e[r.gen_range(0..n)] += 1;
            }
            let c = Coeff::from_int(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 });
            p.add_term(Monomial(e), HahnScalar::monomial(Exponent::from_integer(r.gen_range(-span..=span).into()), c));
        }
    }
    p
}

/// Independent `(ν_α(f), IN_α(f))`: straight from the definition, one term at
/// a time, using only exponent arithmetic on the coefficient supports.
pub fn oracle_initial(f: &ValuedPoly, alpha: &Exponent) -> (Exponent, Vec<(Monomial, Coeff)>) {
    let score = |m: &Monomial, c: &HahnScalar| -> (Exponent, Coeff) {
        // ν and leading coefficient of a fraction: top of numerator over top of denominator
        let (en, cn) = c.num().terms().iter().max_by(|a, b| a.0.cmp(&b.0)).unwrap().clone();
        let (ed, cd) = c.den().terms().iter().max_by(|a, b| a.0.cmp(&b.0)).unwrap().clone();
        let lc = cn * cd.inv().unwrap();
        (en - ed + alpha * Exponent::from_integer(m.total().into()), lc)
    };
    let scored: Vec<(Monomial, Exponent, Coeff)> =
        f.terms().map(|(m, c)| {
            let (v, lc) = score(m, c);
            (m.clone(), v, lc)
        }).collect();
    let top = scored.iter().map(|s| s.1.clone()).max().unwrap();
    let mut out: Vec<(Monomial, Coeff)> =
        scored.into_iter().filter(|s| s.1 == top).map(|s| (s.0, s.2)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    (top, out)
}

/// Farey points `p/q`, `q ≤ max_den`, in `[lo, hi]`, sorted.
pub fn farey(lo: i64, hi: i64, max_den: i64) -> Vec<Exponent> {
    let mut v: Vec<Exponent> = Vec::new();
    for q in 1..=max_den {
        for p in lo * q..=hi * q {
            v.push(exponent(p, q));
        }
    }
    v.sort();
    v.dedup();
    v
}

/// Dense-grid reconstruction of the critical levels: Farey points of
/// denominator at most `max_den` in `[lo, hi]`, each flanked by mediants.
/// A grid point is a level when its ideal differs from a neighbouring
/// mediant's.
pub struct GridOracle {
    pub levels: Vec<Exponent>,
    /// `(sample, ideal)` at every mediant, in order.
    pub gaps: Vec<(Exponent, ComplexIdealRep)>,
    pub at: Vec<(Exponent, ComplexIdealRep)>,
}

pub fn grid_oracle(ideal: &ValuedIdeal, lo: i64, hi: i64, max_den: i64) -> GridOracle {
    use rayon::prelude::*;
    let pts = farey(lo, hi, max_den);
    // mediants: the smallest-denominator point strictly between neighbours
    let mediant = |a: &Exponent, b: &Exponent| Exponent::new(a.numer() + b.numer(), a.denom() + b.denom());
    let mut mids: Vec<Exponent> = vec![&pts[0] - Exponent::one()];
    mids.extend(pts.windows(2).map(|w| mediant(&w[0], &w[1])));
    mids.push(pts.last().unwrap() + Exponent::one());
    let at: Vec<(Exponent, ComplexIdealRep)> = pts
        .par_iter()
        .map(|a| (a.clone(), initial_ideal(ideal, a).unwrap()))
        .collect();
    let gaps: Vec<(Exponent, ComplexIdealRep)> = mids
        .par_iter()
        .map(|a| (a.clone(), initial_ideal(ideal, a).unwrap()))
        .collect();
    let levels = (0..pts.len())
        .filter(|&k| !ideal_equal(&at[k].1, &gaps[k].1) || !ideal_equal(&at[k].1, &gaps[k + 1].1))
        .map(|k| pts[k].clone())
        .collect();
    GridOracle { levels, gaps, at }
}

pub fn det_minus_one() -> ValuedPoly {
    phasetrop::surface::det_poly().sub(&ValuedPoly::one(4))
}
