//! Buchberger's algorithm over an exact field, reduced bases, division and
//! ideal membership.

use std::cmp::Ordering;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Poly};

/// Full reduction of `f` modulo `basis`. Returns the remainder, no term of
/// which is divisible by a leading monomial of the basis.
pub fn reduce<F: Field>(f: &Poly<F>, basis: &[Poly<F>], order: MonomialOrder) -> Poly<F> {
    let leads: Vec<(Monomial, F)> = basis
        .iter()
        .filter_map(|g| g.leading(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars());
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let q = lm.quotient(&m);
                let factor = c / lc.clone();
                p = p.sub(&basis[k].mul_term(&q, &factor));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                p = p.sub(&Poly::term(m, c));
            }
        }
    }
    rem
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>, order: MonomialOrder) -> Poly<F> {
    let (mf, cf) = f.leading(order).expect("nonzero");
    let (mg, cg) = g.leading(order).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient(&l), &cf.inverse().expect("nonzero"));
    let b = g.mul_term(&mg.quotient(&l), &cg.inverse().expect("nonzero"));
    a.sub(&b)
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by descending leading
/// monomial. The zero ideal gives an empty basis.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>], order: MonomialOrder) -> Vec<Poly<F>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
        }
    }
    if basis.iter().any(Poly::is_constant) {
        return vec![Poly::one(basis[0].nvars())];
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = pair_lcm(&basis, pairs[a], order);
                let lb = pair_lcm(&basis, pairs[b], order);
                order.cmp(&la, &lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(pick);
        let mi = basis[i].leading_monomial(order).unwrap();
        let mj = basis[j].leading_monomial(order).unwrap();
        if mi.gcd(&mj).is_one() {
            continue;
        }
        if chain_redundant(&basis, i, j, &pairs, order) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(r.nvars())];
        }
        let k = basis.len();
        basis.push(r.monic(order));
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    interreduce(basis, order)
}

fn pair_lcm<F: Field>(basis: &[Poly<F>], (i, j): (usize, usize), order: MonomialOrder) -> Monomial {
    let mi = basis[i].leading_monomial(order).unwrap();
    let mj = basis[j].leading_monomial(order).unwrap();
    mi.lcm(&mj)
}

/// Buchberger's chain criterion: skip (i, j) if some k has LM(k) | lcm(i, j)
/// and the pairs (i, k), (j, k) were already treated.
fn chain_redundant<F: Field>(
    basis: &[Poly<F>],
    i: usize,
    j: usize,
    pending: &[(usize, usize)],
    order: MonomialOrder,
) -> bool {
    let l = pair_lcm(basis, (i, j), order);
    let is_pending = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.contains(&key)
    };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].leading_monomial(order).unwrap().divides(&l)
            && !is_pending(i, k)
            && !is_pending(j, k)
    })
}

fn interreduce<F: Field>(basis: Vec<Poly<F>>, order: MonomialOrder) -> Vec<Poly<F>> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial(order).unwrap()).collect();
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(l, m)| {
            l != k && m.divides(&leads[k]) && (m != &leads[k] || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = minimal[k].leading(order).unwrap();
        let tail = minimal[k].sub(&Poly::term(lm.clone(), lc.clone()));
        let r = reduce(&tail, &others, order);
        out.push(r.add(&Poly::term(lm.clone(), lc.clone())).monic(order));
    }
    sort_basis(&mut out, order);
    out
}

/// `f / g` when `g` divides `f` exactly, `None` otherwise.
pub fn divide_exact<F: Field>(f: &Poly<F>, g: &Poly<F>, order: MonomialOrder) -> Option<Poly<F>> {
    let (gm, gc) = g.leading(order)?;
    let mut p = f.clone();
    let mut q = Poly::zero(f.nvars());
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        if !gm.divides(&m) {
            return None;
        }
        let mono = gm.quotient(&m);
        let factor = c / gc.clone();
        p = p.sub(&g.mul_term(&mono, &factor));
        q.add_term(mono, factor);
    }
    Some(q)
}

pub fn sort_basis<F: Field>(basis: &mut [Poly<F>], order: MonomialOrder) {
    basis.sort_by(|a, b| {
        let la = a.leading_monomial(order);
        let lb = b.leading_monomial(order);
        match (la, lb) {
            (Some(x), Some(y)) => order.cmp(&y, &x),
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Greater,
            (_, None) => Ordering::Less,
        }
    });
}

/// Whether `f` lies in the ideal with Gröbner basis `basis`.
pub fn is_member<F: Field>(f: &Poly<F>, basis: &[Poly<F>], order: MonomialOrder) -> bool {
    reduce(f, basis, order).is_zero()
}

/// Gröbner basis of `A ∩ B` via elimination of an auxiliary variable `s`
/// from `s·A + (1 − s)·B`.
pub fn intersect<F: Field>(a: &[Poly<F>], b: &[Poly<F>], nvars: usize) -> Vec<Poly<F>> {
    let lift = |p: &Poly<F>| -> Poly<F> {
        Poly::from_terms(
            nvars + 1,
            p.terms().map(|(m, c)| {
                let mut e = vec![0];
                e.extend_from_slice(&m.0);
                (Monomial(e), c.clone())
            }),
        )
    };
    let s = Poly::var(nvars + 1, 0);
    let one_minus_s = Poly::one(nvars + 1).sub(&s);
    let mut gens: Vec<Poly<F>> = a.iter().map(|p| s.mul(&lift(p))).collect();
    gens.extend(b.iter().map(|p| one_minus_s.mul(&lift(p))));
    let gb = groebner_basis(&gens, MonomialOrder::Lex);
    let mut out: Vec<Poly<F>> = gb
        .into_iter()
        .filter(|g| g.terms().all(|(m, _)| m.0[0] == 0))
        .map(|g| {
            Poly::from_terms(nvars, g.terms().map(|(m, c)| (Monomial(m.0[1..].to_vec()), c.clone())))
        })
        .collect();
    out = groebner_basis(&out, MonomialOrder::GrLex);
    out
}
