//! Seeded randomized self-checks: print/parse round trips and
//! multiplicativity of initial polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use phasetrop::hahn::exponent;
use phasetrop::parse::{parse_poly, parse_scalar};
use phasetrop::poly::default_names;
use phasetrop::valued::initial_poly;
use phasetrop::{Coeff, HahnPoly, HahnScalar, Monomial, ValuedPoly};

fn coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let re = rng.gen_range(-4..=4);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-3..=3) } else { 0 };
    let q = rng.gen_range(1..=3);
    let c = Coeff::gaussian(re, im) * Coeff::from_ratio(1, q);
    if c == Coeff::from_int(0) {
        Coeff::from_int(1)
    } else {
        c
    }
}

fn hahn_poly(rng: &mut ChaCha8Rng) -> HahnPoly {
    let n = rng.gen_range(1..=3);
    HahnPoly::from_terms((0..n).map(|_| (exponent(rng.gen_range(-6..=6), rng.gen_range(1..=3)), coeff(rng))))
}

pub fn scalar(rng: &mut ChaCha8Rng) -> HahnScalar {
    let num = hahn_poly(rng);
    if rng.gen_bool(0.25) {
        let den = hahn_poly(rng);
        if !den.is_zero() {
            if let Ok(s) = HahnScalar::fraction(num.clone(), den) {
                return s;
            }
        }
    }
    HahnScalar::from_poly(num)
}

pub fn poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32) -> ValuedPoly {
    let mut p = ValuedPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=4) {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg / nvars.max(1) as u32)).collect();
        let c = HahnScalar::from_poly(HahnPoly::from_terms([(
            exponent(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
            coeff(rng),
        )]));
        p.add_term(Monomial(exps), c);
    }
    if p.is_zero() {
        ValuedPoly::one(nvars)
    } else {
        p
    }
}

pub fn run(seed: u64, count: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scalar_failures = Vec::new();
    let mut poly_failures = Vec::new();
    let mut product_failures = Vec::new();
    for _ in 0..count {
        let a = scalar(&mut rng);
        if parse_scalar(&a.to_string()).ok().as_ref() != Some(&a) {
            scalar_failures.push(a.to_string());
        }
        let n = rng.gen_range(1..=3);
        let names = default_names(n, "x");
        let f = poly(&mut rng, n, 3);
        let text = f.display_with(&names).to_string();
        if parse_poly(&text, &names).ok().as_ref() != Some(&f) {
            poly_failures.push(text);
        }
        let g = poly(&mut rng, n, 3);
        let alpha = exponent(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        let ok = match (initial_poly(&f, &alpha), initial_poly(&g, &alpha), initial_poly(&f.mul(&g), &alpha)) {
            (Ok((vf, pf)), Ok((vg, pg)), Ok((vfg, pfg))) => vf + vg == vfg && pf.mul(&pg) == pfg,
            _ => false,
        };
        if !ok {
            product_failures.push(format!("{} | {} | {}", f, g, alpha));
        }
    }
    json!({
        "seed": seed,
        "count": count,
        "scalar_roundtrip_failures": scalar_failures,
        "poly_roundtrip_failures": poly_failures,
        "multiplicativity_failures": product_failures,
        "ok": scalar_failures.is_empty() && poly_failures.is_empty() && product_failures.is_empty(),
    })
}
