//! Hilbert series numerators and Hilbert functions of monomial ideals.
//!
//! For a monomial ideal `M ⊂ k[x_1..x_n]` the Hilbert series of `k[x]/M`
//! is `N(s) / (1 − s)^n`; two ideals with one contained in the other are
//! equal iff their numerators agree.

use crate::poly::Monomial;

/// Coefficients of `N(s)`, index = degree, trailing zeros trimmed.
pub type HilbertNumerator = Vec<i64>;

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|m| m.total());
    for m in sorted {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(m.clone());
        }
    }
    out
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, v) in b.iter().enumerate() {
        a[k + shift] -= v;
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `N(s)` for `k[x]/⟨gens⟩`, via `N(M) = N(M') − s^{deg m}·N(M' : m)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> HilbertNumerator {
    trim(numerator_rec(minimalize(gens)))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // pure powers of distinct variables: closed form ∏(1 − s^{d_i})
    if gens.iter().all(|m| m.0.iter().filter(|&&e| e > 0).count() == 1) {
        let mut acc = vec![1i64];
        for m in &gens {
            let d = m.total() as usize;
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, d);
            acc = next;
        }
        return acc;
    }
    let mut rest = gens;
    let last = rest.pop().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| last.quotient(&g.lcm(&last))).collect();
    let mut n = numerator_rec(rest);
    let c = numerator_rec(minimalize(&colon));
    poly_sub_shifted(&mut n, &c, last.total() as usize);
    n
}

/// Number of degree-`d` monomials in `nvars` variables outside `⟨gens⟩`.
pub fn hilbert_function(gens: &[Monomial], nvars: usize, d: u32) -> usize {
    Monomial::of_degree(nvars, d)
        .into_iter()
        .filter(|m| !gens.iter().any(|g| g.divides(m)))
        .count()
}
