//! The valued field 𝕂: fractions of finite Hahn polynomials `Σ c_γ t^γ`
//! with rational exponents and Gaussian-rational coefficients.
//!
//! The valuation follows the max convention: `ν(x) = max supp(x)`, so
//! `ν(t) = 1` and the valuation ring is `{ν ≤ 0}`. Large values mean large
//! magnitude as `t → ∞`. This is the opposite of most textbooks and every
//! comparison in the crate is written against it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::{fmt_rational, Coeff};
use crate::error::{Error, Result};
use crate::field::Field;

/// Element of the value group Γ = ℚ.
pub type Exponent = BigRational;

/// A valuation value; `None` stands for −∞ and sorts below every exponent.
pub type Valuation = Option<Exponent>;

pub fn exponent(p: i64, q: i64) -> Exponent {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int_exponent(p: i64) -> Exponent {
    BigRational::from_integer(BigInt::from(p))
}

pub fn fmt_valuation(v: &Valuation) -> String {
    match v {
        None => "-inf".to_string(),
        Some(q) => fmt_rational(q),
    }
}

/// Finite Hahn polynomial. Terms are kept sorted by strictly descending
/// exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HahnPoly {
    terms: Vec<(Exponent, Coeff)>,
}

impl HahnPoly {
    pub fn zero() -> Self {
        HahnPoly { terms: Vec::new() }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(Exponent::zero(), c)
    }

    pub fn monomial(e: Exponent, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnPoly {
            terms: vec![(e, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging equal exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, Coeff)>) -> Self {
        let mut v: Vec<(Exponent, Coeff)> = terms.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exponent, Coeff)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => {
                    let sum = std::mem::take(&mut last.1) + c;
                    last.1 = sum;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        HahnPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exponent, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && Field::is_one(&self.terms[0].1)
    }

    pub fn leading(&self) -> Option<&(Exponent, Coeff)> {
        self.terms.first()
    }

    /// `max supp`, or −∞ for zero.
    pub fn order(&self) -> Valuation {
        self.terms.first().map(|(e, _)| e.clone())
    }

    fn lowest_exponent(&self) -> Option<&Exponent> {
        self.terms.last().map(|(e, _)| e)
    }

    pub fn neg(&self) -> Self {
        HahnPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + b[j].1.clone();
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        HahnPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_monomial(e, c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_monomial(e, c);
        }
        let mut acc = std::collections::BTreeMap::<Exponent, Coeff>::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let prod = ca * cb;
                let slot = acc.entry(e).or_insert_with(Coeff::zero);
                *slot = std::mem::take(slot) + prod;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        HahnPoly { terms }
    }

    pub fn mul_monomial(&self, e: &Exponent, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnPoly {
            terms: self.terms.iter().map(|(ee, cc)| (ee + e, cc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.mul_monomial(&Exponent::zero(), c)
    }

    /// Least common denominator of all exponents.
    fn exponent_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (e, _)| acc.lcm(e.denom()))
    }

    /// Dense coefficients in `u = t^(1/n)` after factoring out the lowest
    /// power: returns `(shift, coeffs)` with `self = u^shift · Σ coeffs[k] u^k`.
    fn to_dense(&self, n: &BigInt) -> (BigInt, Vec<Coeff>) {
        let low = self.lowest_exponent().expect("dense form of zero");
        let lattice = |e: &Exponent| -> BigInt {
            let scaled = e * BigRational::from_integer(n.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        };
        let shift = lattice(low);
        let top = lattice(&self.terms[0].0);
        let len = (&top - &shift).to_usize().expect("exponent span too large") + 1;
        let mut coeffs = vec![Coeff::zero(); len];
        for (e, c) in &self.terms {
            let k = (lattice(e) - &shift).to_usize().unwrap();
            coeffs[k] = c.clone();
        }
        (shift, coeffs)
    }

    fn from_dense(shift: &BigInt, coeffs: &[Coeff], n: &BigInt) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                let e = BigRational::new(shift + BigInt::from(k), n.clone());
                terms.push((e, c.clone()));
            }
        }
        HahnPoly { terms }
    }

    /// `Σ c_γ e^{sγ}`, computed relative to the top exponent to avoid overflow.
    /// Returns the mantissa and the exponent `s·γ_max` separately.
    fn eval_scaled(&self, s: f64) -> (Complex64, f64) {
        let top = match self.terms.first() {
            None => return (Complex64::new(0.0, 0.0), 0.0),
            Some((e, _)) => e.to_f64().unwrap_or(f64::NAN),
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let ef = e.to_f64().unwrap_or(f64::NAN);
            acc += c.to_complex64() * (s * (ef - top)).exp();
        }
        (acc, s * top)
    }
}

// Dense univariate helpers over the Gaussian rationals (ascending powers).

fn trim(p: &mut Vec<Coeff>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn dense_divmod(a: &[Coeff], b: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "dense division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![Coeff::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * &lead_inv;
        for (k, bc) in b.iter().enumerate() {
            let sub = &factor * bc;
            r[shift + k] = std::mem::take(&mut r[shift + k]) - sub;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn make_monic(p: &mut [Coeff]) {
    if let Some(l) = p.last().cloned() {
        let inv = l.inv().unwrap();
        for c in p.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

/// `p ≡ 1 mod 4`, so `i` has an image in `F_p`.
const MODULUS: u64 = 1_000_000_009;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= MODULUS;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

fn sqrt_minus_one() -> u64 {
    static ROOT: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    *ROOT.get_or_init(|| {
        (2..)
            .map(|g| pow_mod(g, (MODULUS - 1) / 4))
            .find(|r| r * r % MODULUS == MODULUS - 1)
            .unwrap()
    })
}

fn rational_mod(q: &BigRational) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let d = q.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&p).to_u64()?;
    Some(n * pow_mod(d, MODULUS - 2) % MODULUS)
}

fn image_mod(a: &[Coeff], iota: u64) -> Option<Vec<u64>> {
    a.iter()
        .map(|c| Some((rational_mod(&c.re)? + rational_mod(&c.im)? * iota) % MODULUS))
        .collect()
}

/// Sufficient test for `gcd(a, b) = 1`: the images modulo a prime above
/// `MODULUS` keep their degrees and are coprime there.
fn coprime_mod_p(a: &[Coeff], b: &[Coeff]) -> bool {
    let iota = sqrt_minus_one();
    let (Some(mut x), Some(mut y)) = (image_mod(a, iota), image_mod(b, iota)) else {
        return false;
    };
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    let trim_mod = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    while !y.is_empty() {
        let inv = pow_mod(*y.last().unwrap(), MODULUS - 2);
        while x.len() >= y.len() && !x.is_empty() {
            let shift = x.len() - y.len();
            let f = x.last().unwrap() * inv % MODULUS;
            for (k, yc) in y.iter().enumerate() {
                x[shift + k] = (x[shift + k] + MODULUS - f * yc % MODULUS) % MODULUS;
            }
            x.pop();
            trim_mod(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn dense_gcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    if !x.is_empty() && !y.is_empty() && coprime_mod_p(&x, &y) {
        return vec![Coeff::one()];
    }
    make_monic(&mut y);
    while !y.is_empty() {
        let (_, mut r) = dense_divmod(&x, &y);
        make_monic(&mut r);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        let inv = l.inv().unwrap();
        for c in x.iter_mut() {
            *c = &*c * &inv;
        }
    }
    x
}

/// Element of 𝕂 in normal form: `num / den` with `den` a polynomial in
/// `t^(1/N)` whose lowest exponent is 0 and whose leading coefficient is 1,
/// and `gcd(num, den) = 1`. Equality is structural on this form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HahnScalar {
    num: HahnPoly,
    den: HahnPoly,
}

impl Default for HahnScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl HahnScalar {
    pub fn from_poly(p: HahnPoly) -> Self {
        HahnScalar {
            num: p,
            den: HahnPoly::constant(Coeff::one()),
        }
    }

    pub fn from_coeff(c: Coeff) -> Self {
        Self::from_poly(HahnPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(Coeff::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_coeff(Coeff::from_ratio(p, q))
    }

    /// `c·t^e`.
    pub fn monomial(e: Exponent, c: Coeff) -> Self {
        Self::from_poly(HahnPoly::monomial(e, c))
    }

    /// `t^e`.
    pub fn t_pow(e: Exponent) -> Self {
        Self::monomial(e, Coeff::one())
    }

    pub fn t() -> Self {
        Self::t_pow(int_exponent(1))
    }

    /// Builds `num / den` and brings it to normal form.
    pub fn fraction(num: HahnPoly, den: HahnPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn num(&self) -> &HahnPoly {
        &self.num
    }

    pub fn den(&self) -> &HahnPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.is_polynomial() && self.num.is_monomial()
    }

    fn normalize(num: HahnPoly, den: HahnPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let (e, c) = &den.terms[0];
            let num = num.mul_monomial(&-e.clone(), &c.inv().unwrap());
            return HahnScalar {
                num,
                den: HahnPoly::constant(Coeff::one()),
            };
        }
        let n = num.exponent_lcm().lcm(&den.exponent_lcm());
        let (shift_n, dn) = num.to_dense(&n);
        let (shift_d, dd) = den.to_dense(&n);
        let g = dense_gcd(&dn, &dd);
        let (mut qn, rn) = dense_divmod(&dn, &g);
        let (mut qd, rd) = dense_divmod(&dd, &g);
        debug_assert!(rn.is_empty() && rd.is_empty());
        trim(&mut qn);
        trim(&mut qd);
        let lead_inv = qd.last().unwrap().inv().unwrap();
        for c in qn.iter_mut().chain(qd.iter_mut()) {
            *c = &*c * &lead_inv;
        }
        let num = HahnPoly::from_dense(&(shift_n - shift_d), &qn, &n);
        let den = HahnPoly::from_dense(&BigInt::zero(), &qd, &n);
        HahnScalar { num, den }
    }

    /// `ν(a) = ν(num) − ν(den)`; −∞ for zero.
    pub fn valuation(&self) -> Valuation {
        let vn = self.num.order()?;
        let vd = self.den.order().expect("denominator is nonzero");
        Some(vn - vd)
    }

    /// The homogeneous class `in(a)` as `(ν(a), leading coefficient)`.
    pub fn initial_form(&self) -> Result<GradedMonomial> {
        let (en, cn) = self.num.leading().ok_or(Error::ZeroInitialForm)?;
        let (ed, cd) = self.den.leading().expect("denominator is nonzero");
        Ok(GradedMonomial {
            degree: en - ed,
            coeff: cn.clone() / cd.clone(),
        })
    }

    /// Leading coefficient, i.e. the phase of `a` under the splitting `t^γ`.
    /// Zero for `a = 0`.
    pub fn leading_coeff(&self) -> Coeff {
        self.initial_form().map(|m| m.coeff).unwrap_or_default()
    }

    /// Image in the residue field `{ν ≤ 0}/{ν < 0}`; requires `ν(a) = 0`.
    pub fn residue(&self) -> Result<Coeff> {
        match self.valuation() {
            Some(v) if v.is_zero() => Ok(self.leading_coeff()),
            other => Err(Error::NotUnit(fmt_valuation(&other))),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() * other.inv()?)
    }

    /// Evaluates at `t = e^s`. Working in `s = log t` keeps moderate
    /// exponents from overflowing.
    pub fn evaluate_numeric(&self, s: f64) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (mn, en) = self.num.eval_scaled(s);
        let (md, ed) = self.den.eval_scaled(s);
        if md.norm() < 1e-300 {
            return Err(Error::Numeric(format!("denominator vanishes at s = {s}")));
        }
        let value = mn / md * (en - ed).exp();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Numeric(format!("value overflows at s = {s}")));
        }
        Ok(value)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }

    /// Keeps only the leading monomial `lc·t^ν`.
    pub fn truncate_leading(&self) -> Self {
        match self.initial_form() {
            Ok(m) => m.to_scalar(),
            Err(_) => Self::zero(),
        }
    }
}

impl Zero for HahnScalar {
    fn zero() -> Self {
        HahnScalar {
            num: HahnPoly::zero(),
            den: HahnPoly::constant(Coeff::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for HahnScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for HahnScalar {
    type Output = HahnScalar;
    fn add(self, o: HahnScalar) -> HahnScalar {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den);
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&o.den))
    }
}

impl Sub for HahnScalar {
    type Output = HahnScalar;
    fn sub(self, o: HahnScalar) -> HahnScalar {
        self + (-o)
    }
}

impl Neg for HahnScalar {
    type Output = HahnScalar;
    fn neg(self) -> HahnScalar {
        HahnScalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for HahnScalar {
    type Output = HahnScalar;
    fn mul(self, o: HahnScalar) -> HahnScalar {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && o.is_polynomial() {
            return HahnScalar {
                num: self.num.mul(&o.num),
                den: self.den,
            };
        }
        Self::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for HahnScalar {
    type Output = HahnScalar;
    fn div(self, o: HahnScalar) -> HahnScalar {
        self.checked_div(&o).expect("division of Hahn scalars by zero")
    }
}

impl Field for HahnScalar {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn needs_parens(&self) -> bool {
        !self.is_polynomial()
            || self.num.terms.len() > 1
            || self.num.terms.first().is_some_and(|(e, c)| !e.is_zero() && c.is_compound())
    }
    fn is_negative_unit(&self) -> bool {
        self.is_polynomial()
            && self.num.terms.len() == 1
            && self.num.terms[0].0.is_zero()
            && self.num.terms[0].1.is_negative_unit()
    }
    fn leading_sign_negative(&self) -> bool {
        self.is_polynomial()
            && self.num.terms.len() == 1
            && self.num.terms[0].1.leading_sign_negative()
    }
}

/// A nonzero homogeneous element `c·t^γ` of the graded algebra of 𝕂.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedMonomial {
    pub degree: Exponent,
    pub coeff: Coeff,
}

impl GradedMonomial {
    pub fn new(degree: Exponent, coeff: Coeff) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::ZeroInitialForm);
        }
        Ok(GradedMonomial { degree, coeff })
    }

    pub fn identity() -> Self {
        GradedMonomial {
            degree: Exponent::zero(),
            coeff: Coeff::one(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GradedMonomial {
            degree: &self.degree + &other.degree,
            coeff: &self.coeff * &other.coeff,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        GradedMonomial {
            degree: &self.degree - &other.degree,
            coeff: self.coeff.clone() / other.coeff.clone(),
        }
    }

    /// The splitting lift `c·t^γ ∈ 𝕂`.
    pub fn to_scalar(&self) -> HahnScalar {
        HahnScalar::monomial(self.degree.clone(), self.coeff.clone())
    }
}

impl fmt::Display for HahnPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let t_part = if e.is_zero() {
                None
            } else if e.is_one() {
                Some("t".to_string())
            } else {
                Some(format!("t^({})", fmt_rational(e)))
            };
            let negative = c.leading_sign_negative();
            let shown = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match t_part {
                None => write!(f, "{shown}")?,
                Some(tp) if Field::is_one(&shown) => write!(f, "{tp}")?,
                Some(tp) => write!(f, "{shown}*{tp}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for HahnScalar {
    /// Canonical text accepted back by the scalar parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.terms.len() > 1 || self.num.terms[0].1.leading_sign_negative() {
                format!("({})", self.num)
            } else {
                self.num.to_string()
            };
            write!(f, "{}/({})", num, self.den)
        }
    }
}

impl fmt::Display for GradedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}
