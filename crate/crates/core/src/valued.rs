//! Valuation calculus for polynomials over 𝕂: monomial valuations `ν_γ`,
//! leading parts `[f]_γ`, initial polynomials `IN_α(f)`, tropical
//! polynomials and valuation-preserving linear substitutions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::fmt_rational;
use crate::error::{Error, Result};
use crate::hahn::{Exponent, HahnScalar, Valuation};
use crate::poly::{ComplexPoly, Monomial, ValuedPoly};

/// Weight vector `γ ∈ Γ^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVector(pub Vec<Exponent>);

impl WeightVector {
    pub fn diagonal(nvars: usize, alpha: &Exponent) -> Self {
        WeightVector(vec![alpha.clone(); nvars])
    }

    /// `u·γ`.
    pub fn dot(&self, m: &Monomial) -> Exponent {
        self.0
            .iter()
            .zip(&m.0)
            .fold(Exponent::zero(), |acc, (g, &e)| acc + g * Exponent::from_integer(e.into()))
    }
}

/// `ν_γ(c_u x^u) = ν(c_u) + u·γ`.
fn term_value(c: &HahnScalar, m: &Monomial, gamma: &WeightVector) -> Exponent {
    c.valuation().expect("stored coefficients are nonzero") + gamma.dot(m)
}

/// `ν_γ(f) = max_u ν(c_u) + u·γ`; −∞ for `f = 0`.
pub fn monomial_valuation(f: &ValuedPoly, gamma: &WeightVector) -> Valuation {
    f.terms().map(|(m, c)| term_value(c, m, gamma)).max()
}

/// `[f]_γ`: the terms of `f` realising `ν_γ(f)`.
pub fn leading_part(f: &ValuedPoly, gamma: &WeightVector) -> Result<ValuedPoly> {
    let v = monomial_valuation(f, gamma).ok_or(Error::ZeroPolynomial("leading part"))?;
    Ok(f.filter_terms(|m, c| term_value(c, m, gamma) == v))
}

/// `(ν_γ(f), IN_γ(f))` with `IN_γ(f) = Σ λ_u X^u` over the argmax terms,
/// `λ_u` the leading coefficient of `c_u`.
pub fn initial_poly_weighted(f: &ValuedPoly, gamma: &WeightVector) -> Result<(Exponent, ComplexPoly)> {
    let v = monomial_valuation(f, gamma).ok_or(Error::ZeroPolynomial("initial polynomial"))?;
    let mut rep = ComplexPoly::zero(f.nvars());
    for (m, c) in f.terms() {
        if term_value(c, m, gamma) == v {
            rep.add_term(m.clone(), c.leading_coeff());
        }
    }
    Ok((v, rep))
}

/// Initial polynomial for the diagonal weight `(α, …, α)`.
pub fn initial_poly(f: &ValuedPoly, alpha: &Exponent) -> Result<(Exponent, ComplexPoly)> {
    initial_poly_weighted(f, &WeightVector::diagonal(f.nvars(), alpha))
}

/// Upper envelope `α ↦ max(intercept + slope·α)` of `Trop(f)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropicalPoly {
    /// `(slope |u|, intercept ν(c_u))`, ascending slope, one per slope.
    pub pieces: Vec<(u32, Exponent)>,
}

impl TropicalPoly {
    pub fn eval(&self, alpha: &Exponent) -> Valuation {
        self.pieces
            .iter()
            .map(|(s, b)| b + alpha * Exponent::from_integer((*s).into()))
            .max()
    }

    /// Pieces on the upper hull, each with at least one point where it is
    /// the unique maximum.
    fn hull(&self) -> Vec<&(u32, Exponent)> {
        let cross = |a: &(u32, Exponent), b: &(u32, Exponent)| -> Exponent {
            (&a.1 - &b.1) / Exponent::from_integer((b.0 as i64 - a.0 as i64).into())
        };
        let mut stack: Vec<&(u32, Exponent)> = Vec::new();
        for p in &self.pieces {
            while stack.len() >= 2 {
                let a = stack[stack.len() - 2];
                let b = stack[stack.len() - 1];
                if cross(a, p) <= cross(a, b) {
                    stack.pop();
                } else {
                    break;
                }
            }
            stack.push(p);
        }
        stack
    }

    /// Bend points, strictly increasing.
    pub fn roots(&self) -> Vec<Exponent> {
        let hull = self.hull();
        hull.windows(2)
            .map(|w| (&w[0].1 - &w[1].1) / Exponent::from_integer((w[1].0 as i64 - w[0].0 as i64).into()))
            .collect()
    }
}

impl fmt::Display for TropicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|(s, b)| format!("{}+{}a", fmt_rational(b), s))
            .collect();
        write!(f, "max({})", parts.join(", "))
    }
}

pub fn tropical_poly(f: &ValuedPoly) -> Result<TropicalPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("tropical polynomial"));
    }
    let mut best: BTreeMap<u32, Exponent> = BTreeMap::new();
    for (m, c) in f.terms() {
        let v = c.valuation().expect("nonzero");
        best.entry(m.total())
            .and_modify(|b| {
                if v > *b {
                    *b = v.clone();
                }
            })
            .or_insert(v);
    }
    Ok(TropicalPoly {
        pieces: best.into_iter().collect(),
    })
}

pub fn tropical_roots(f: &ValuedPoly) -> Result<Vec<Exponent>> {
    Ok(tropical_poly(f)?.roots())
}

/// `f̃`: drops every term whose line never attains `Trop(f)`.
pub fn tilde_reduce(f: &ValuedPoly) -> Result<ValuedPoly> {
    let trop = tropical_poly(f)?;
    let roots = trop.roots();
    let probes: Vec<Exponent> = if roots.is_empty() {
        vec![Exponent::zero()]
    } else {
        roots
    };
    let envelope: Vec<Exponent> = probes.iter().map(|a| trop.eval(a).unwrap()).collect();
    let hull_slopes: Vec<u32> = trop.hull().iter().map(|p| p.0).collect();
    let keep = |m: &Monomial, c: &HahnScalar| -> bool {
        let s = m.total();
        let v = c.valuation().unwrap();
        let max_for_slope = trop.pieces.iter().find(|p| p.0 == s).map(|p| &p.1).unwrap();
        if &v != max_for_slope {
            return false;
        }
        if hull_slopes.contains(&s) {
            return true;
        }
        probes
            .iter()
            .zip(&envelope)
            .any(|(a, e)| &(&v + a * Exponent::from_integer(s.into())) == e)
    };
    Ok(f.filter_terms(keep))
}

/// `x_i ↦ Σ_j a_{ij} y_{perm[j]}`.
#[derive(Clone, Debug)]
pub struct LinearSubstitution {
    pub matrix: Vec<Vec<HahnScalar>>,
    pub perm: Vec<usize>,
}

impl LinearSubstitution {
    pub fn new(matrix: Vec<Vec<HahnScalar>>, perm: Vec<usize>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || perm.len() != n {
            return Err(Error::Invalid("substitution matrix must be square".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid("perm is not a permutation".into()));
            }
            seen[p] = true;
        }
        let s = LinearSubstitution { matrix, perm };
        s.inverse_matrix()?;
        Ok(s)
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { HahnScalar::one() } else { HahnScalar::zero() })
                    .collect()
            })
            .collect();
        LinearSubstitution {
            matrix,
            perm: (0..n).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    /// Effective matrix `M` with `x_i ↦ Σ_k M_{ik} y_k`.
    fn effective(&self) -> Vec<Vec<HahnScalar>> {
        let n = self.nvars();
        let mut m = vec![vec![HahnScalar::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][self.perm[j]] = self.matrix[i][j].clone();
            }
        }
        m
    }

    fn inverse_matrix(&self) -> Result<Vec<Vec<HahnScalar>>> {
        invert(self.effective())
    }

    /// Images `Φ(x_i)` as polynomials in `y`.
    pub fn images(&self) -> Vec<ValuedPoly> {
        rows_to_linear_forms(&self.effective())
    }

    /// Images `Φ^{-1}(y_k)` as polynomials in `x`.
    pub fn inverse_images(&self) -> Result<Vec<ValuedPoly>> {
        Ok(rows_to_linear_forms(&self.inverse_matrix()?))
    }
}

fn rows_to_linear_forms(m: &[Vec<HahnScalar>]) -> Vec<ValuedPoly> {
    let n = m.len();
    m.iter()
        .map(|row| {
            ValuedPoly::from_terms(
                n,
                row.iter().enumerate().map(|(k, a)| (Monomial::var(n, k), a.clone())),
            )
        })
        .collect()
}

/// Gauss–Jordan inverse over 𝕂.
pub fn invert(mut a: Vec<Vec<HahnScalar>>) -> Result<Vec<Vec<HahnScalar>>> {
    let n = a.len();
    let mut inv: Vec<Vec<HahnScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { HahnScalar::one() } else { HahnScalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].clone() * p.clone();
            inv[col][j] = inv[col][j].clone() * p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    Ok(inv)
}

/// `f ∘ Φ`.
pub fn linear_substitute(f: &ValuedPoly, phi: &LinearSubstitution) -> Result<ValuedPoly> {
    if f.nvars() != phi.nvars() {
        return Err(Error::ArityMismatch {
            expected: phi.nvars(),
            got: f.nvars(),
        });
    }
    f.compose(&phi.images())
}

fn check_preserves(images: &[ValuedPoly], alpha: &Exponent, names: &str) -> Result<Vec<ComplexPoly>> {
    let mut out = Vec::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        let (v, rep) = initial_poly(img, alpha)?;
        if &v != alpha {
            return Err(Error::InvalidSubstitution {
                variable: format!("{names}{}", i + 1),
                detail: format!(
                    "image has value {} at level {}, expected {}",
                    fmt_rational(&v),
                    fmt_rational(alpha),
                    fmt_rational(alpha)
                ),
            });
        }
        out.push(rep);
    }
    Ok(out)
}

/// `gr(Φ)(F)` at the diagonal level `α`: each `X_i` is replaced by
/// `IN_α(Φ(x_i))`. Both `Φ` and `Φ^{-1}` must preserve `ν_α` on the
/// variables.
pub fn graded_substitute(big_f: &ComplexPoly, alpha: &Exponent, phi: &LinearSubstitution) -> Result<ComplexPoly> {
    if big_f.nvars() != phi.nvars() {
        return Err(Error::ArityMismatch {
            expected: phi.nvars(),
            got: big_f.nvars(),
        });
    }
    let images = check_preserves(&phi.images(), alpha, "x")?;
    check_preserves(&phi.inverse_images()?, alpha, "y")?;
    big_f.compose(&images)
}

/// Maps residue-field coefficients into 𝕂 as constants.
pub fn lift_complex(p: &ComplexPoly) -> ValuedPoly {
    p.map_coeffs(|c| HahnScalar::from_coeff(c.clone()))
}
