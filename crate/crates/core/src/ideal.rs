//! Ideals over 𝕂, their initial ideals `IN_α(I)` and critical levels.
//!
//! `IN_α(I)` is computed on the homogenization `J = I^hom`, with weight
//! `α` on the original variables and `0` on the homogenizing variable
//! `x_0` (stored last). In each degree `D` the rows `x^m·G_j` spanning `J_D`
//! are rescaled column-wise by `t^{w(m)}` and eliminated with valuation
//! pivoting; residues of the eliminated rows span `IN_w(J)_D`. The loop
//! stops once the collected initial forms have the Hilbert series of `J`,
//! which `IN_w(J)` shares for homogeneous `J`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, is_member, reduce};
use crate::hahn::{Exponent, HahnScalar};
use crate::hilbert::{hilbert_function, hilbert_numerator, HilbertNumerator};
use crate::poly::{ComplexPoly, Monomial, MonomialOrder, Poly, ValuedPoly};
use crate::valued::tropical_roots;

/// Fixed order for reduced bases of residue ideals.
pub const COMPARISON_ORDER: MonomialOrder = MonomialOrder::GrLex;

const DEGREE_CAP: u32 = 40;

/// Iteration cap of the critical-level refinement.
pub const REFINEMENT_CAP: usize = 64;

#[derive(Debug)]
struct HomData {
    gens: Vec<ValuedPoly>,
    leads: Vec<Monomial>,
    numerator: HilbertNumerator,
    /// Breakpoints of the 𝕂-Gröbner generators.
    roots: Vec<Exponent>,
}

/// Ideal of `𝕂[x_1, …, x_n]`.
#[derive(Debug)]
pub struct ValuedIdeal {
    nvars: usize,
    gens: Vec<ValuedPoly>,
    hom: OnceLock<HomData>,
}

impl Clone for ValuedIdeal {
    fn clone(&self) -> Self {
        ValuedIdeal {
            nvars: self.nvars,
            gens: self.gens.clone(),
            hom: OnceLock::new(),
        }
    }
}

impl ValuedIdeal {
    /// Zero generators are dropped; at least one nonzero one must remain.
    pub fn new(gens: Vec<ValuedPoly>) -> Result<Self> {
        let nvars = gens.first().map(Poly::nvars).ok_or(Error::Invalid("ideal needs a generator".into()))?;
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: g.nvars(),
            });
        }
        let gens: Vec<ValuedPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroPolynomial("ideal generator"));
        }
        Ok(ValuedIdeal {
            nvars,
            gens,
            hom: OnceLock::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[ValuedPoly] {
        &self.gens
    }

    fn hom(&self) -> &HomData {
        self.hom.get_or_init(|| {
            let gb = groebner_basis(&self.gens, MonomialOrder::GRevLex);
            let gens: Vec<ValuedPoly> = gb.iter().map(Poly::homogenize).collect();
            let leads: Vec<Monomial> = gens
                .iter()
                .map(|g| g.leading_monomial(MonomialOrder::GRevLex).unwrap())
                .collect();
            let numerator = hilbert_numerator(&leads);
            let mut roots = BTreeSet::new();
            for g in gb.iter().chain(&self.gens) {
                roots.extend(tropical_roots(g).unwrap_or_default());
            }
            HomData {
                gens,
                leads,
                numerator,
                roots: roots.into_iter().collect(),
            }
        })
    }

    /// Reduced 𝕂-Gröbner basis in graded reverse lex.
    pub fn groebner(&self) -> Vec<ValuedPoly> {
        self.hom().gens.iter().map(Poly::dehomogenize).collect()
    }
}

/// An ideal of `ℂ[X_1, …, X_n]` with its reduced basis in [`COMPARISON_ORDER`].
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexIdealRep {
    nvars: usize,
    gens: Vec<ComplexPoly>,
    basis: Vec<ComplexPoly>,
}

impl ComplexIdealRep {
    pub fn new(nvars: usize, gens: Vec<ComplexPoly>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: g.nvars(),
            });
        }
        let basis = groebner_basis(&gens, COMPARISON_ORDER);
        Ok(ComplexIdealRep { nvars, gens, basis })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[ComplexPoly] {
        &self.gens
    }

    pub fn basis(&self) -> &[ComplexPoly] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn contains(&self, f: &ComplexPoly) -> bool {
        is_member(f, &self.basis, COMPARISON_ORDER)
    }

    pub fn reduce(&self, f: &ComplexPoly) -> ComplexPoly {
        reduce(f, &self.basis, COMPARISON_ORDER)
    }

    /// Containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &ComplexIdealRep) -> bool {
        self.basis.iter().all(|g| other.contains(g))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial(COMPARISON_ORDER).unwrap())
            .collect()
    }

    /// Krull dimension of `ℂ[X]/J`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let leads = self.leading_monomials();
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = leads
                .iter()
                .all(|m| m.0.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
            if independent {
                best = size;
            }
        }
        Some(best)
    }

    /// Dimension of `V(J) ∖ {0}`.
    pub fn punctured_dimension(&self) -> FiberDim {
        let Some(d) = self.krull_dimension() else {
            return FiberDim::Empty;
        };
        if d > 0 {
            return FiberDim::Dim(d);
        }
        // zero-dimensional: V ⊆ {0} iff every X_i is nilpotent modulo J
        let leads = self.leading_monomials();
        let standard = count_standard_monomials(&leads, self.nvars);
        let only_origin = (0..self.nvars).all(|i| {
            let p = ComplexPoly::term(
                {
                    let mut e = vec![0; self.nvars];
                    e[i] = standard as u32;
                    Monomial(e)
                },
                Coeff::one(),
            );
            self.contains(&p)
        });
        if only_origin {
            FiberDim::Empty
        } else {
            FiberDim::Dim(0)
        }
    }
}

fn count_standard_monomials(leads: &[Monomial], nvars: usize) -> usize {
    let mut total = 0;
    let mut d = 0;
    loop {
        let k = hilbert_function(leads, nvars, d);
        if k == 0 {
            return total;
        }
        total += k;
        d += 1;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiberDim {
    Empty,
    Dim(usize),
}

impl std::fmt::Display for FiberDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberDim::Empty => write!(f, "empty"),
            FiberDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Equality of ideals via reduced bases.
pub fn ideal_equal(a: &ComplexIdealRep, b: &ComplexIdealRep) -> bool {
    a.nvars == b.nvars && a.basis == b.basis
}

pub fn is_homogeneous(a: &ComplexIdealRep) -> bool {
    a.basis.iter().all(Poly::is_homogeneous)
}

/// Rows of `J_D` with valuation pivoting. Every stored row has a pivot entry
/// equal to 1, zeros in the other pivot columns and only entries of
/// valuation `≤ 0`.
struct Echelon {
    rows: Vec<(usize, BTreeMap<usize, HahnScalar>)>,
    pivot_cols: BTreeMap<usize, usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_cols: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut r: BTreeMap<usize, HahnScalar>) {
        let hits: Vec<usize> = r.keys().filter(|c| self.pivot_cols.contains_key(c)).copied().collect();
        for c in hits {
            let Some(f) = r.get(&c).cloned() else { continue };
            let (_, row) = &self.rows[self.pivot_cols[&c]];
            for (k, v) in row {
                let cur = r.remove(k).unwrap_or_else(HahnScalar::zero);
                let next = cur - f.clone() * v.clone();
                if !next.is_zero() {
                    r.insert(*k, next);
                }
            }
        }
        if r.is_empty() {
            return;
        }
        // max valuation; ties go to the highest monomial (lowest column)
        let (pc, _) = r
            .iter()
            .map(|(c, v)| (*c, v.valuation().unwrap()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        let inv = r[&pc].inv().expect("nonzero pivot");
        for v in r.values_mut() {
            *v = v.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            let Some(f) = row.get(&pc).cloned() else { continue };
            for (k, v) in &r {
                let cur = row.remove(k).unwrap_or_else(HahnScalar::zero);
                let next = cur - f.clone() * v.clone();
                if !next.is_zero() {
                    row.insert(*k, next);
                }
            }
        }
        self.pivot_cols.insert(pc, self.rows.len());
        self.rows.push((pc, r));
    }
}

/// Output of [`weight_basis`]: elements of `J` and their initial forms,
/// which generate `IN_w(J)`.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub rows: Vec<ValuedPoly>,
    pub initial: Vec<ComplexPoly>,
}

/// Weight of the monomial `m` of degree `D` with `α` on all but the last
/// variable.
fn column_weight(m: &Monomial, alpha: &Exponent) -> Exponent {
    let x_degree: u32 = m.0[..m.0.len() - 1].iter().sum();
    alpha * Exponent::from_integer(x_degree.into())
}

fn weight_basis_inner(
    gens: &[ValuedPoly],
    leads: &[Monomial],
    numerator: &HilbertNumerator,
    alpha: &Exponent,
) -> Result<WeightBasis> {
    let nv = gens[0].nvars();
    let dmin = gens.iter().filter_map(Poly::total_degree).min().unwrap_or(0);
    let mut collected: Vec<ComplexPoly> = Vec::new();
    let mut rows_out: Vec<ValuedPoly> = Vec::new();
    let mut cgb: Vec<ComplexPoly> = Vec::new();
    for d in dmin..=DEGREE_CAP {
        let cleads: Vec<Monomial> = cgb
            .iter()
            .map(|g| g.leading_monomial(MonomialOrder::GRevLex).unwrap())
            .collect();
        if hilbert_numerator(&cleads) == *numerator && !cgb.is_empty() {
            return Ok(WeightBasis {
                rows: rows_out,
                initial: collected,
            });
        }
        let target_rank = Monomial::of_degree(nv, d).len() - hilbert_function(leads, nv, d);
        let have_rank = Monomial::of_degree(nv, d).len() - hilbert_function(&cleads, nv, d);
        if have_rank == target_rank {
            continue;
        }
        let cols = Monomial::of_degree(nv, d);
        let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let scales: Vec<HahnScalar> = cols.iter().map(|m| HahnScalar::t_pow(column_weight(m, alpha))).collect();
        let mut ech = Echelon::new();
        'fill: for g in gens {
            let gd = g.total_degree().unwrap();
            if gd > d {
                continue;
            }
            for m in Monomial::of_degree(nv, d - gd) {
                let mut row = BTreeMap::new();
                for (u, c) in g.terms() {
                    let col = index[&u.mul(&m)];
                    row.insert(col, c.clone() * scales[col].clone());
                }
                ech.insert(row);
                if ech.rank() == target_rank {
                    break 'fill;
                }
            }
        }
        if ech.rank() != target_rank {
            return Err(Error::Internal(format!(
                "rank {} of degree-{d} part differs from Hilbert function {}",
                ech.rank(),
                target_rank
            )));
        }
        for (_, row) in &ech.rows {
            let mut form = ComplexPoly::zero(nv);
            let mut poly = ValuedPoly::zero(nv);
            for (c, v) in row {
                if v.valuation() == Some(Exponent::zero()) {
                    form.add_term(cols[*c].clone(), v.leading_coeff());
                }
                poly.add_term(cols[*c].clone(), v.clone() * scales[*c].inv()?);
            }
            if reduce(&form, &cgb, MonomialOrder::GRevLex).is_zero() {
                continue;
            }
            cgb.push(form.clone());
            cgb = groebner_basis(&cgb, MonomialOrder::GRevLex);
            collected.push(form);
            rows_out.push(poly.monic(MonomialOrder::GrLex));
        }
    }
    Err(Error::DegreeCap(DEGREE_CAP))
}

/// Weight basis of a homogeneous ideal (the last variable plays `x_0` and
/// carries weight 0, the others carry `α`): elements whose initial forms
/// generate `IN_{(α,…,α,0)}(I)`. Selection is by largest `ν_α`, ties by
/// graded lex.
pub fn weight_groebner(ideal: &ValuedIdeal, alpha: &Exponent) -> Result<Vec<ValuedPoly>> {
    if let Some(g) = ideal.gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let gb = groebner_basis(&ideal.gens, MonomialOrder::GRevLex);
    let leads: Vec<Monomial> = gb.iter().map(|g| g.leading_monomial(MonomialOrder::GRevLex).unwrap()).collect();
    let numerator = hilbert_numerator(&leads);
    Ok(weight_basis_inner(&gb, &leads, &numerator, alpha)?.rows)
}

/// `IN_α(I)` together with the dehomogenized weight rows used to obtain it.
#[derive(Clone, Debug)]
pub struct InitialData {
    pub ideal: ComplexIdealRep,
    pub rows: Vec<ValuedPoly>,
}

pub fn initial_data(ideal: &ValuedIdeal, alpha: &Exponent) -> Result<InitialData> {
    let hom = ideal.hom();
    let wb = weight_basis_inner(&hom.gens, &hom.leads, &hom.numerator, alpha)?;
    let gens: Vec<ComplexPoly> = wb.initial.iter().map(Poly::dehomogenize).collect();
    Ok(InitialData {
        ideal: ComplexIdealRep::new(ideal.nvars, gens)?,
        rows: wb.rows.iter().map(Poly::dehomogenize).collect(),
    })
}

/// `IN_α(I) ⊂ ℂ[X_1, …, X_n]`.
pub fn initial_ideal(ideal: &ValuedIdeal, alpha: &Exponent) -> Result<ComplexIdealRep> {
    Ok(initial_data(ideal, alpha)?.ideal)
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub alpha: Exponent,
    pub ideal: ComplexIdealRep,
    pub homogeneous: bool,
    pub dimension: FiberDim,
}

pub fn fiber_report(ideal: &ValuedIdeal, alpha: &Exponent) -> Result<FiberReport> {
    let j = initial_ideal(ideal, alpha)?;
    Ok(fiber_of(alpha.clone(), j))
}

fn fiber_of(alpha: Exponent, ideal: ComplexIdealRep) -> FiberReport {
    FiberReport {
        alpha,
        homogeneous: is_homogeneous(&ideal),
        dimension: ideal.punctured_dimension(),
        ideal,
    }
}

/// An open interval `(from, to)` of constant initial ideal; `None` ends are
/// infinite.
#[derive(Clone, Debug)]
pub struct IntervalReport {
    pub from: Option<Exponent>,
    pub to: Option<Exponent>,
    pub sample: Exponent,
    pub ideal: ComplexIdealRep,
    pub homogeneous: bool,
    pub dimension: FiberDim,
}

#[derive(Clone, Debug)]
pub struct CriticalLevelReport {
    pub levels: Vec<Exponent>,
    pub intervals: Vec<IntervalReport>,
    pub at_level: Vec<FiberReport>,
}

fn midpoint(a: &Exponent, b: &Exponent) -> Exponent {
    (a + b) / Exponent::from_integer(2.into())
}

struct Sample {
    ideal: ComplexIdealRep,
    roots: Vec<Exponent>,
}

fn sample(ideal: &ValuedIdeal, alpha: &Exponent) -> Result<Sample> {
    let data = initial_data(ideal, alpha)?;
    let mut roots = BTreeSet::new();
    for r in &data.rows {
        roots.extend(tropical_roots(r)?);
    }
    Ok(Sample {
        ideal: data.ideal,
        roots: roots.into_iter().collect(),
    })
}

/// Critical levels of `I` by fixpoint refinement: sample every candidate
/// and every gap between candidates; breakpoints of a gap sample's weight
/// rows that fall inside its gap become new candidates. At the fixpoint the
/// rows of each gap sample keep their initial forms on the whole gap, so
/// the initial ideal is constant there.
pub fn critical_levels(ideal: &ValuedIdeal) -> Result<CriticalLevelReport> {
    critical_levels_with_cap(ideal, REFINEMENT_CAP)
}

pub fn critical_levels_with_cap(ideal: &ValuedIdeal, cap: usize) -> Result<CriticalLevelReport> {
    let mut cands: BTreeSet<Exponent> = ideal.hom().roots.iter().cloned().collect();
    let mut cache: BTreeMap<Exponent, Sample> = BTreeMap::new();
    let one = Exponent::one();
    for _ in 0..cap {
        let points: Vec<Exponent> = cands.iter().cloned().collect();
        let gaps = gap_samples(&points, &one);
        let todo: Vec<Exponent> = points
            .iter()
            .chain(gaps.iter().map(|g| &g.0))
            .filter(|a| !cache.contains_key(*a))
            .cloned()
            .collect();
        let fresh: Vec<(Exponent, Result<Sample>)> =
            todo.into_par_iter().map(|a| { let s = sample(ideal, &a); (a, s) }).collect();
        for (a, s) in fresh {
            cache.insert(a, s?);
        }
        let mut added = false;
        for (mid, lo, hi) in &gaps {
            for r in &cache[mid].roots {
                let inside = lo.as_ref().is_none_or(|l| r > l) && hi.as_ref().is_none_or(|h| r < h);
                if inside && cands.insert(r.clone()) {
                    added = true;
                }
            }
        }
        if !added {
            return Ok(assemble(&points, &gaps, &cache));
        }
    }
    Err(Error::NonConvergence { iterations: cap })
}

/// `(sample, lower end, upper end)` per gap.
type Gap = (Exponent, Option<Exponent>, Option<Exponent>);

fn gap_samples(points: &[Exponent], one: &Exponent) -> Vec<Gap> {
    if points.is_empty() {
        return vec![(Exponent::zero(), None, None)];
    }
    let mut gaps = vec![(&points[0] - one, None, Some(points[0].clone()))];
    for w in points.windows(2) {
        gaps.push((midpoint(&w[0], &w[1]), Some(w[0].clone()), Some(w[1].clone())));
    }
    let last = points.last().unwrap();
    gaps.push((last + one, Some(last.clone()), None));
    gaps
}

fn assemble(points: &[Exponent], gaps: &[Gap], cache: &BTreeMap<Exponent, Sample>) -> CriticalLevelReport {
    let mut levels = Vec::new();
    let mut at_level = Vec::new();
    let mut intervals: Vec<IntervalReport> = Vec::new();
    let mut open: Option<(Option<Exponent>, Exponent)> = Some((None, gaps[0].0.clone()));
    for (k, p) in points.iter().enumerate() {
        let here = &cache[p].ideal;
        let left = &cache[&gaps[k].0].ideal;
        let right = &cache[&gaps[k + 1].0].ideal;
        if ideal_equal(here, left) && ideal_equal(here, right) {
            continue;
        }
        let (from, sample) = open.take().unwrap();
        let fr = fiber_of(sample.clone(), cache[&sample].ideal.clone());
        intervals.push(IntervalReport {
            from,
            to: Some(p.clone()),
            sample,
            ideal: fr.ideal,
            homogeneous: fr.homogeneous,
            dimension: fr.dimension,
        });
        levels.push(p.clone());
        at_level.push(fiber_of(p.clone(), here.clone()));
        open = Some((Some(p.clone()), gaps[k + 1].0.clone()));
    }
    let (from, sample) = open.unwrap();
    let fr = fiber_of(sample.clone(), cache[&sample].ideal.clone());
    intervals.push(IntervalReport {
        from,
        to: None,
        sample,
        ideal: fr.ideal,
        homogeneous: fr.homogeneous,
        dimension: fr.dimension,
    });
    CriticalLevelReport {
        levels,
        intervals,
        at_level,
    }
}
