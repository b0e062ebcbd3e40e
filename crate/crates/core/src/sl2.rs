//! Numeric SL2(ℂ) geometry: polar decomposition, the stretch `R_h`, the
//! limit map `Ψ(α, B) = [[e^α B + e^{−α}(B*)^adj]]`, its inverse, and a
//! harness comparing `R_{1/s}(A(e^s))` with `Ψ` of the valuative
//! tropicalization.
//!
//! For unimodular `C = PU` the eigenvalues of `P` are `σ, 1/σ` with
//! `σ² + σ^{−2} = ‖C‖_F²`, and `C + (C*)^adj = (σ + 1/σ)U`. Both identities
//! avoid computing `det` or `P^{−1}`, which keeps the harness stable for
//! entries of size `e^{80}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hahn::{Exponent, HahnScalar};
use crate::phase::vector_initial_form;

const DET_TOL: f64 = 1e-9;

/// Below this level `psi_inverse` returns the unitary branch.
pub const UNITARY_THRESHOLD: f64 = 1e-7;

type C64 = Complex64;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CMat2 {
    pub m: [[C64; 2]; 2],
}

impl CMat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        CMat2 { m: [[a, b], [c, d]] }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0))
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// `[[d, −b], [−c, a]]`.
    pub fn adj(&self) -> Self {
        Self::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.m[0][0] * k, self.m[0][1] * k, self.m[1][0] * k, self.m[1][1] * k)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().sqrt()
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).frobenius()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `[[C]] = det(C)^{−1/2}·C`, defined for `det(C) ∈ ℝ_{>0}`.
    pub fn normalize(&self) -> Result<Self> {
        let d = self.det();
        if !(d.re > 0.0 && d.im.abs() <= DET_TOL * d.re.max(1.0)) {
            return Err(Error::NonPositiveDeterminant(format!("{d}")));
        }
        Ok(self.scale_re(1.0 / d.re.sqrt()))
    }

    fn outer(u: [C64; 2], v: [C64; 2]) -> Self {
        Self::new(u[0] * v[0].conj(), u[0] * v[1].conj(), u[1] * v[0].conj(), u[1] * v[1].conj())
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, o: CMat2) -> CMat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, o: CMat2) -> CMat2 {
        self + o.scale_re(-1.0)
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, o: CMat2) -> CMat2 {
        let mut r = CMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        r
    }
}

fn fmt_c(z: &C64) -> String {
    format!("{:.17e}{:+.17e}i", z.re, z.im)
}

impl fmt::Display for CMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_c(&self.m[0][0]),
            fmt_c(&self.m[0][1]),
            fmt_c(&self.m[1][0]),
            fmt_c(&self.m[1][1])
        )
    }
}

/// Spectral data of `CC*` for unimodular `C`: `σ ≥ 1` and orthonormal
/// eigenvectors for `σ²` and `σ^{−2}`.
struct Spectrum {
    sigma: f64,
    top: [C64; 2],
    bottom: [C64; 2],
}

fn unit(v: [C64; 2]) -> [C64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Eigenvector of the Hermitian `H` for eigenvalue `lambda`.
fn eigenvector(h: &CMat2, lambda: f64) -> [C64; 2] {
    let a = h.m[0][0].re;
    let d = h.m[1][1].re;
    let b = h.m[0][1];
    let u = [b, C64::new(lambda - a, 0.0)];
    let w = [C64::new(lambda - d, 0.0), b.conj()];
    let nu = u[0].norm_sqr() + u[1].norm_sqr();
    let nw = w[0].norm_sqr() + w[1].norm_sqr();
    if nu.max(nw) == 0.0 {
        return [C64::new(1.0, 0.0), C64::zero()];
    }
    unit(if nu >= nw { u } else { w })
}

fn unimodular_spectrum(c: &CMat2) -> Spectrum {
    let f = c.frobenius_sqr();
    // σ² + σ^{−2} = f, written to avoid squaring f
    let q = 2.0 / f;
    let disc = f * (1.0 - q * q).max(0.0).sqrt();
    let sigma_sq = ((f + disc) / 2.0).max(1.0);
    let h = (*c * c.star()).scale_re(1.0 / sigma_sq);
    let top = eigenvector(&h, 1.0);
    let bottom = [-top[1].conj(), top[0].conj()];
    Spectrum {
        sigma: sigma_sq.sqrt(),
        top,
        bottom,
    }
}

fn unimodular_unitary(c: &CMat2) -> CMat2 {
    let f = c.frobenius_sqr();
    (*c + c.star().adj()).scale_re(1.0 / (f + 2.0).sqrt())
}

/// `sqrt(det C)`, with an error for singular input.
fn det_root(c: &CMat2) -> Result<C64> {
    let d = c.det();
    if d.norm() <= f64::MIN_POSITIVE {
        return Err(Error::Singular);
    }
    Ok(d.sqrt())
}

/// `C = P·U`, `P` Hermitian positive definite, `U` unitary.
pub fn polar_decompose(c: &CMat2) -> Result<(CMat2, CMat2)> {
    let r = det_root(c)?;
    let c1 = c.scale(r.inv());
    let sp = unimodular_spectrum(&c1);
    let u1 = unimodular_unitary(&c1);
    let p1 = CMat2::outer(sp.top, sp.top).scale_re(sp.sigma) + CMat2::outer(sp.bottom, sp.bottom).scale_re(1.0 / sp.sigma);
    let phase = r / r.norm();
    Ok((p1.scale_re(r.norm()), u1.scale(phase)))
}

/// `R_h(C) = P^h U`.
pub fn stretch(c: &CMat2, h: f64) -> Result<CMat2> {
    if h <= 0.0 {
        return Err(Error::Invalid(format!("stretch exponent must be positive, got {h}")));
    }
    let r = det_root(c)?;
    let c1 = c.scale(r.inv());
    let inner = stretch_unimodular(&c1, h);
    let phase = r / r.norm();
    Ok(inner.scale(phase).scale_re(r.norm().powf(h)))
}

/// `R_h` for a matrix known to have determinant exactly 1.
pub fn stretch_unimodular(c: &CMat2, h: f64) -> CMat2 {
    let sp = unimodular_spectrum(c);
    let u = unimodular_unitary(c);
    let ph = CMat2::outer(sp.top, sp.top).scale_re(sp.sigma.powf(h))
        + CMat2::outer(sp.bottom, sp.bottom).scale_re(sp.sigma.powf(-h));
    ph * u
}

/// A point `(α, B)` of the tropicalized group: `α = 0` with `det B = 1`, or
/// `α > 0` with `det B = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2TropPoint {
    pub level: f64,
    pub phase: CMat2,
}

impl SL2TropPoint {
    pub fn new(level: f64, phase: CMat2) -> Result<Self> {
        if level.is_nan() || level < 0.0 {
            return Err(Error::Invalid(format!("level must be nonnegative, got {level}")));
        }
        let n = phase.frobenius_sqr();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        let d = phase.det();
        if level == 0.0 {
            if (d - C64::new(1.0, 0.0)).norm() > DET_TOL {
                return Err(Error::NotSl2(format!("level 0 needs det(B) = 1, got {d}")));
            }
        } else if d.norm() > DET_TOL * n {
            return Err(Error::Invalid(format!("positive level needs det(B) = 0, got {d}")));
        }
        Ok(SL2TropPoint { level, phase })
    }

    pub fn is_unitary_branch(&self) -> bool {
        self.level == 0.0
    }

    pub fn branch(&self) -> &'static str {
        if self.is_unitary_branch() {
            "unitary"
        } else {
            "rank-one"
        }
    }
}

/// `Ψ(α, B) = [[e^α B + e^{−α}(B*)^adj]]`.
pub fn psi_limit(p: &SL2TropPoint) -> Result<CMat2> {
    let b = p.phase;
    let m = b.scale_re(p.level.exp()) + b.star().adj().scale_re((-p.level).exp());
    m.normalize()
}

/// Inverse of [`psi_limit`] through the spectral projector of `CC*`.
pub fn psi_inverse(c: &CMat2) -> Result<SL2TropPoint> {
    let d = c.det();
    if (d - C64::new(1.0, 0.0)).norm() > DET_TOL {
        return Err(Error::NotSl2(format!("det = {d}")));
    }
    let sp = unimodular_spectrum(c);
    let alpha = sp.sigma.ln();
    if alpha < UNITARY_THRESHOLD {
        return Ok(SL2TropPoint {
            level: 0.0,
            phase: *c,
        });
    }
    let pc = CMat2::outer(sp.top, sp.top) * *c;
    let phase = pc.scale_re(1.0 / pc.frobenius());
    Ok(SL2TropPoint { level: alpha, phase })
}

/// `κ°(C) = [[C + (C*)^{−1}]]`, the unitary polar factor.
pub fn coamoeba(c: &CMat2) -> Result<CMat2> {
    let d = c.det();
    if (d - C64::new(1.0, 0.0)).norm() > DET_TOL {
        return Err(Error::NotSl2(format!("det = {d}")));
    }
    (*c + c.star().adj()).normalize()
}

#[derive(Clone, Debug)]
pub struct HermitianProjections {
    pub kappa: CMat2,
    pub kappa_star: CMat2,
    /// `|ln λ_max|` of `sqrt(CC*)`.
    pub dist_o: f64,
    /// The same distance for `sqrt(C*C)`.
    pub dist_o_star: f64,
}

/// Top eigenvalue of a Hermitian 2×2 matrix.
fn hermitian_top(h: &CMat2) -> f64 {
    let a = h.m[0][0].re;
    let d = h.m[1][1].re;
    let b = h.m[0][1].norm();
    (a + d) / 2.0 + (((a - d) / 2.0).powi(2) + b * b).sqrt()
}

pub fn hermitian_projections(c: &CMat2) -> Result<HermitianProjections> {
    let d = c.det();
    if (d - C64::new(1.0, 0.0)).norm() > DET_TOL {
        return Err(Error::NotSl2(format!("det = {d}")));
    }
    let kappa = *c * c.star();
    let kappa_star = c.star() * *c;
    Ok(HermitianProjections {
        kappa,
        kappa_star,
        dist_o: (hermitian_top(&kappa).sqrt().ln()).abs(),
        dist_o_star: (hermitian_top(&kappa_star).sqrt().ln()).abs(),
    })
}

/// Matrix over 𝕂.
#[derive(Clone, Debug, PartialEq)]
pub struct HahnMat2 {
    pub entries: [HahnScalar; 4],
    sl2: bool,
}

impl HahnMat2 {
    pub fn new(a: HahnScalar, b: HahnScalar, c: HahnScalar, d: HahnScalar) -> Self {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        let sl2 = num_traits::One::is_one(&det);
        HahnMat2 {
            entries: [a, b, c, d],
            sl2,
        }
    }

    pub fn det(&self) -> HahnScalar {
        let [a, b, c, d] = &self.entries;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn is_sl2(&self) -> bool {
        self.sl2
    }

    pub fn mul(&self, o: &HahnMat2) -> HahnMat2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        HahnMat2::new(
            a.clone() * e.clone() + b.clone() * g.clone(),
            a.clone() * f.clone() + b.clone() * h.clone(),
            c.clone() * e.clone() + d.clone() * g.clone(),
            c.clone() * f.clone() + d.clone() * h.clone(),
        )
    }

    /// Numeric value at `t = e^s`.
    pub fn evaluate(&self, s: f64) -> Result<CMat2> {
        let v: Vec<C64> = self
            .entries
            .iter()
            .map(|e| e.evaluate_numeric(s))
            .collect::<Result<_>>()?;
        Ok(CMat2::new(v[0], v[1], v[2], v[3]))
    }
}

impl fmt::Display for HahnMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Exact valuative tropicalization data `(α, B)` of an SL2 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTropPoint {
    pub level: Exponent,
    pub phase: [Coeff; 4],
}

pub fn valuative_trop_exact(a: &HahnMat2) -> Result<ExactTropPoint> {
    if !a.is_sl2() {
        return Err(Error::NotSl2(format!("det = {}", a.det())));
    }
    let p = vector_initial_form(&a.entries)?;
    if p.level < Exponent::zero() {
        return Err(Error::Internal(format!("negative level {} for an SL2 matrix", p.level)));
    }
    let [b0, b1, b2, b3] = [&p.phase[0], &p.phase[1], &p.phase[2], &p.phase[3]];
    let det = b0 * b3 - b1 * b2;
    let ok = if p.level.is_zero() {
        num_traits::One::is_one(&det)
    } else {
        det.is_zero()
    };
    if !ok {
        return Err(Error::Internal(format!("phase determinant {det} violates the level dichotomy")));
    }
    Ok(ExactTropPoint {
        level: p.level,
        phase: [b0.clone(), b1.clone(), b2.clone(), b3.clone()],
    })
}

pub fn valuative_trop_sl2(a: &HahnMat2) -> Result<SL2TropPoint> {
    let e = valuative_trop_exact(a)?;
    let level = num_traits::ToPrimitive::to_f64(&e.level).unwrap_or(f64::NAN);
    let [p, q, r, s] = e.phase.each_ref().map(Coeff::to_complex64);
    SL2TropPoint::new(level, CMat2::new(p, q, r, s))
}

/// `π_ℝ`: ray `B/‖B‖_F` for `α > 0`, unitary factor for `α = 0`.
pub fn project_pi_r(p: &SL2TropPoint) -> Result<SL2TropPoint> {
    if p.is_unitary_branch() {
        let (_, u) = polar_decompose(&p.phase)?;
        return SL2TropPoint::new(0.0, u);
    }
    Ok(SL2TropPoint {
        level: p.level,
        phase: p.phase.scale_re(1.0 / p.phase.frobenius()),
    })
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub matrix: String,
    pub limit: CMat2,
    /// `(s, ε(s))`, increasing `s`.
    pub errors: Vec<(f64, f64)>,
    pub rate_ok: bool,
}

/// Exact inputs must stay below this error at every `s`.
pub const EXACT_TOL: f64 = 1e-12;

/// `ε(s) = ‖R_{1/s}(A(e^s)) − Ψ(trop A)‖_F` for each `s`.
pub fn limit_verify(a: &HahnMat2, s_values: &[f64]) -> Result<LimitReport> {
    if s_values.windows(2).any(|w| w[0] >= w[1]) || s_values.iter().any(|&s| s <= 0.0) {
        return Err(Error::Invalid("s values must be positive and increasing".into()));
    }
    let limit = psi_limit(&valuative_trop_sl2(a)?)?;
    let errors: Vec<(f64, f64)> = s_values
        .par_iter()
        .map(|&s| {
            let c = a.evaluate(s)?;
            if !c.is_finite() {
                return Err(Error::Numeric(format!("entries overflow at s = {s}")));
            }
            Ok((s, stretch_unimodular(&c, 1.0 / s).dist(&limit)))
        })
        .collect::<Result<_>>()?;
    Ok(LimitReport {
        matrix: a.to_string(),
        limit,
        rate_ok: rate_ok(&errors),
        errors,
    })
}

/// Exact agreement, or strict decrease with the last ratio in `[0.3, 0.7]`
/// (the `1/s` rate).
pub fn rate_ok(errors: &[(f64, f64)]) -> bool {
    if errors.iter().all(|e| e.1 < EXACT_TOL) {
        return true;
    }
    let decreasing = errors.windows(2).all(|w| w[1].1 < w[0].1);
    let ratio_ok = match errors {
        [.., a, b] => (0.3..=0.7).contains(&(b.1 / a.1)),
        _ => false,
    };
    decreasing && ratio_ok
}
