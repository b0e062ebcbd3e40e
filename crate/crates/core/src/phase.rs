//! Phase space `Gr_ν(𝕂^n) ≅ ℚ × (ℂ^n ∖ 0)`: the sup-valuation `V_ν` and
//! vector initial forms `In_ν(z) = (α, B)`.

use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hahn::{Exponent, GradedMonomial, HahnScalar, Valuation};
use crate::valued::LinearSubstitution;

/// `(α, B)` with `B ≠ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhasePoint {
    pub level: Exponent,
    pub phase: Vec<Coeff>,
}

impl PhasePoint {
    pub fn new(level: Exponent, phase: Vec<Coeff>) -> Result<Self> {
        if phase.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(PhasePoint { level, phase })
    }
}

/// `V_ν(z) = max_i ν(z_i)`.
pub fn sup_norm(z: &[HahnScalar]) -> Valuation {
    z.iter().map(HahnScalar::valuation).max().flatten()
}

/// `In_ν(z)`: level `V_ν(z)`, phase the leading coefficients of the entries
/// attaining it.
pub fn vector_initial_form(z: &[HahnScalar]) -> Result<PhasePoint> {
    let level = sup_norm(z).ok_or(Error::ZeroVector)?;
    let phase = z
        .iter()
        .map(|zi| match zi.valuation() {
            Some(v) if v == level => zi.leading_coeff(),
            _ => Coeff::zero(),
        })
        .collect();
    Ok(PhasePoint { level, phase })
}

/// `in(b)·(α, B) = (α + δ, c·B)` for `in(b) = c·t^δ`.
pub fn graded_scalar_action(m: &GradedMonomial, p: &PhasePoint) -> PhasePoint {
    PhasePoint {
        level: &p.level + &m.degree,
        phase: p.phase.iter().map(|b| &m.coeff * b).collect(),
    }
}

/// Unipotent upper-triangular map `z_i ↦ z_i + Σ_{j>i} a_{ij} z_j` with
/// `a_{ij} ∈ 𝒪_ν = {ν ≤ 0}`.
#[derive(Clone, Debug)]
pub struct TriangularMap {
    upper: Vec<Vec<HahnScalar>>,
}

impl TriangularMap {
    /// `upper[i][j]` is read for `j > i` only.
    pub fn new(upper: Vec<Vec<HahnScalar>>) -> Result<Self> {
        let n = upper.len();
        for (i, row) in upper.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid("triangular map must be square".into()));
            }
            for a in &row[i + 1..] {
                if a.valuation().is_some_and(|v| v > Exponent::zero()) {
                    return Err(Error::Invalid(format!("entry {a} lies outside the valuation ring")));
                }
            }
        }
        Ok(TriangularMap { upper })
    }

    pub fn dim(&self) -> usize {
        self.upper.len()
    }

    pub fn apply(&self, z: &[HahnScalar]) -> Vec<HahnScalar> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = z[i].clone();
                for j in i + 1..n {
                    if !self.upper[i][j].is_zero() {
                        acc = acc + self.upper[i][j].clone() * z[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// `Gr(φ)` on phase points: only coefficients of valuation 0 survive.
    pub fn apply_graded(&self, p: &PhasePoint) -> PhasePoint {
        let n = self.dim();
        let phase = (0..n)
            .map(|i| {
                let mut acc = p.phase[i].clone();
                for j in i + 1..n {
                    if let Ok(r) = self.upper[i][j].residue() {
                        acc = acc + &r * &p.phase[j];
                    }
                }
                acc
            })
            .collect();
        PhasePoint {
            level: p.level.clone(),
            phase,
        }
    }

    /// The same map as a variable substitution `x_i ↦ x_i + Σ a_{ij} x_j`.
    pub fn as_substitution(&self) -> LinearSubstitution {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j.cmp(&i) {
                        std::cmp::Ordering::Less => HahnScalar::zero(),
                        std::cmp::Ordering::Equal => num_traits::One::one(),
                        std::cmp::Ordering::Greater => self.upper[i][j].clone(),
                    })
                    .collect()
            })
            .collect();
        LinearSubstitution::new(matrix, (0..n).collect()).expect("unipotent maps are invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::int_exponent;
    use num_traits::One;

    fn t(p: i64) -> HahnScalar {
        HahnScalar::t_pow(int_exponent(p))
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(sup_norm(&[t(2), HahnScalar::one(), t(-1)]), Some(int_exponent(2)));
        assert_eq!(sup_norm(&[HahnScalar::zero(), HahnScalar::zero()]), None);
    }

    #[test]
    fn initial_form_examples() {
        let z = [t(2) + HahnScalar::one(), HahnScalar::from_int(3) * t(2), t(1)];
        let p = vector_initial_form(&z).unwrap();
        assert_eq!(p.level, int_exponent(2));
        assert_eq!(p.phase, vec![Coeff::from_int(1), Coeff::from_int(3), Coeff::zero()]);
        let a = [t(1), HahnScalar::zero(), HahnScalar::zero(), t(-1)];
        let p = vector_initial_form(&a).unwrap();
        assert_eq!(p.level, int_exponent(1));
        assert_eq!(p.phase[0], Coeff::one());
        assert!(vector_initial_form(&[HahnScalar::zero()]).is_err());
    }

    #[test]
    fn scalar_action() {
        let p = PhasePoint::new(int_exponent(1), vec![Coeff::one(), Coeff::zero()]).unwrap();
        let m = GradedMonomial::new(int_exponent(3), Coeff::from_int(2)).unwrap();
        let q = graded_scalar_action(&m, &p);
        assert_eq!(q.level, int_exponent(4));
        assert_eq!(q.phase, vec![Coeff::from_int(2), Coeff::zero()]);
        assert_eq!(graded_scalar_action(&GradedMonomial::identity(), &p), p);
    }

    #[test]
    fn triangular_rejects_entries_outside_ring() {
        let bad = vec![vec![HahnScalar::one(), t(1)], vec![HahnScalar::zero(), HahnScalar::one()]];
        assert!(TriangularMap::new(bad).is_err());
    }
}
