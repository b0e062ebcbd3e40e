mod common;

use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

use phasetrop::hahn::{exponent, int_exponent};
use phasetrop::phase::vector_initial_form;
use phasetrop::valued::{
    initial_poly, initial_poly_weighted, leading_part, monomial_valuation, tilde_reduce, tropical_poly, tropical_roots,
    WeightVector,
};
use phasetrop::{ComplexPoly, Exponent, HahnScalar, ValuedPoly};

fn oracle_matches(f: &ValuedPoly, alpha: &Exponent) -> bool {
    let (v, p) = initial_poly(f, alpha).unwrap();
    let (ov, terms) = common::oracle_initial(f, alpha);
    let mut q = ComplexPoly::zero(f.nvars());
    for (m, c) in terms {
        q.add_term(m, c);
    }
    v == ov && p == q
}

#[test]
fn initial_poly_matches_definition() {
    let mut r = common::rng(21);
    for _ in 0..400 {
        let n = r.gen_range(1..=4);
        let f = common::poly(&mut r, n, 4, 5);
        let alpha = common::small_exponent(&mut r, 4, 6);
        assert!(oracle_matches(&f, &alpha), "f = {f}, alpha = {alpha}");
    }
}

#[test]
fn sl2_generator_display() {
    let f = common::det_minus_one();
    let (v, p) = initial_poly(&f, &int_exponent(-1)).unwrap();
    assert_eq!((v, p.to_string()), (Exponent::zero(), "-1".to_string()));
    let (v, p) = initial_poly(&f, &int_exponent(0)).unwrap();
    assert_eq!((v, p.display_with(&upper()).to_string()), (Exponent::zero(), "X1*X4 - X2*X3 - 1".to_string()));
    let (v, p) = initial_poly(&f, &int_exponent(1)).unwrap();
    assert_eq!((v, p.display_with(&upper()).to_string()), (int_exponent(2), "X1*X4 - X2*X3".to_string()));

    let trop = tropical_poly(&f).unwrap();
    assert_eq!(trop.pieces, vec![(0, Exponent::zero()), (2, Exponent::zero())]);
    assert_eq!(trop.eval(&int_exponent(1)), Some(int_exponent(2)));
    assert_eq!(tropical_roots(&f).unwrap(), vec![Exponent::zero()]);
}

fn upper() -> Vec<String> {
    (1..=4).map(|i| format!("X{i}")).collect()
}

#[test]
fn tropical_poly_is_diagonal_valuation() {
    let mut r = common::rng(22);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let f = common::poly(&mut r, n, 4, 4);
        let trop = tropical_poly(&f).unwrap();
        let alpha = common::small_exponent(&mut r, 5, 5);
        assert_eq!(trop.eval(&alpha), monomial_valuation(&f, &WeightVector::diagonal(n, &alpha)));
    }
}

/// The initial form changes exactly at the tropical roots.
#[test]
fn roots_are_where_initial_form_jumps() {
    let mut r = common::rng(23);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let f = common::monomial_poly(&mut r, n, 3, 4, 3);
        let roots = tropical_roots(&f).unwrap();
        for b in &roots {
            let eps = exponent(1, 97);
            let at = initial_poly(&f, b).unwrap().1;
            let below = initial_poly(&f, &(b - &eps)).unwrap().1;
            let above = initial_poly(&f, &(b + &eps)).unwrap().1;
            assert!(at != below || at != above);
            assert!(at.terms().count() > below.terms().count().min(above.terms().count()));
        }
        let mut probes = vec![int_exponent(-20), int_exponent(20)];
        probes.extend(roots.windows(2).map(|w| (&w[0] + &w[1]) / int_exponent(2)));
        for a in probes {
            let (_, p) = initial_poly(&f, &a).unwrap();
            assert!(p.is_homogeneous(), "f = {f}, alpha = {a}");
        }
    }
}

#[test]
fn tilde_reduce_keeps_initial_forms() {
    let mut r = common::rng(24);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let f = common::poly(&mut r, n, 3, 4);
        let g = tilde_reduce(&f).unwrap();
        let roots = tropical_roots(&f).unwrap();
        assert_eq!(tropical_roots(&g).unwrap(), roots);
        let mut probes: Vec<Exponent> = roots.clone();
        probes.extend(roots.windows(2).map(|w| (&w[0] + &w[1]) / int_exponent(2)));
        probes.push(roots.first().cloned().unwrap_or_default() - int_exponent(1));
        probes.push(roots.last().cloned().unwrap_or_default() + int_exponent(1));
        for a in probes {
            assert_eq!(initial_poly(&f, &a).unwrap(), initial_poly(&g, &a).unwrap(), "f = {f}, alpha = {a}");
        }
    }
}

#[test]
fn vector_initial_form_is_dominant_part() {
    let z = vec![HahnScalar::t(), HahnScalar::zero(), HahnScalar::zero(), HahnScalar::t().inv().unwrap()];
    let p = vector_initial_form(&z).unwrap();
    assert_eq!(p.level, int_exponent(1));
    assert_eq!(p.phase.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "0", "0", "0"]);
    assert!(vector_initial_form(&[HahnScalar::zero()]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leading_part_has_same_initial_form(seed in any::<u64>(), n in 1usize..4) {
        let mut r = common::rng(seed);
        let f = common::poly(&mut r, n, 4, 5);
        let gamma = WeightVector((0..n).map(|_| common::small_exponent(&mut r, 3, 4)).collect());
        let lp = leading_part(&f, &gamma).unwrap();
        prop_assert_eq!(initial_poly_weighted(&lp, &gamma).unwrap(), initial_poly_weighted(&f, &gamma).unwrap());
        prop_assert_eq!(monomial_valuation(&lp, &gamma), monomial_valuation(&f, &gamma));
    }

    #[test]
    fn initial_form_ignores_scaling(seed in any::<u64>(), n in 1usize..4) {
        let mut r = common::rng(seed);
        let f = common::poly(&mut r, n, 3, 4);
        let c = common::scalar(&mut r);
        let alpha = common::small_exponent(&mut r, 3, 4);
        let (v, p) = initial_poly(&f, &alpha).unwrap();
        let (vc, pc) = initial_poly(&f.scale(&c), &alpha).unwrap();
        prop_assert_eq!(vc, v + c.valuation().unwrap());
        prop_assert_eq!(pc, p.scale(&c.leading_coeff()));
    }
}
