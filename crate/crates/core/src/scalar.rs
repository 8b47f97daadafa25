//! Exact coefficients: Gaussian rationals and Laurent polynomials in κ over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Minimal commutative ring interface used by the polynomial containers.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// `re + i·im` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussianRational { re, im: Zero::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        GaussianRational { re: Zero::zero(), im: One::one() }
    }

    /// `i^n` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => Self::i().neg(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if Zero::is_zero(&n) {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Zero::zero(), im: Zero::zero() }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = KScalar::from_gauss(self.clone());
        write!(f, "{}", k)
    }
}

/// Laurent polynomial in κ with Gaussian-rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct KScalar {
    terms: BTreeMap<i32, GaussianRational>,
}

impl KScalar {
    pub fn zero() -> Self {
        KScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_gauss(GaussianRational::from_ratio(n, d))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_gauss(GaussianRational::real(r))
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussianRational, kappa_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Ring::is_zero(&c) {
            terms.insert(kappa_exp, c);
        }
        KScalar { terms }
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussianRational::i())
    }

    pub fn kappa_pow(n: i32) -> Self {
        Self::monomial(GaussianRational::from_int(1), n)
    }

    /// The ubiquitous `i/κ`.
    pub fn i_over_kappa() -> Self {
        Self::monomial(GaussianRational::i(), -1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, kappa_exp: i32) -> GaussianRational {
        self.terms.get(&kappa_exp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&GaussianRational::one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, kappa_exp: i32, c: &GaussianRational) {
        if Ring::is_zero(c) {
            return;
        }
        match self.terms.get_mut(&kappa_exp) {
            Some(v) => {
                *v = Ring::add(v, c);
                if Ring::is_zero(v) {
                    self.terms.remove(&kappa_exp);
                }
            }
            None => {
                self.terms.insert(kappa_exp, c.clone());
            }
        }
    }

    /// Complex conjugation with κ held real.
    pub fn star(&self) -> Self {
        KScalar { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if Zero::is_zero(r) {
            return Self::zero();
        }
        KScalar { terms: self.terms.iter().map(|(k, v)| (*k, v.scale(r))).collect() }
    }

    pub fn scale_gauss(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &Ring::mul(v, c));
        }
        out
    }

    pub fn shift_kappa(&self, n: i32) -> Self {
        KScalar { terms: self.terms.iter().map(|(k, v)| (k + n, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division; only monomial divisors are accepted.
    pub fn checked_div(&self, d: &KScalar) -> Result<KScalar> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_monomial() {
            return Err(Error::NonMonomialDivisor(d.to_string()));
        }
        let (k, c) = d.terms.iter().next().unwrap();
        let inv = c.inv()?;
        Ok(self.scale_gauss(&inv).shift_kappa(-k))
    }

    /// Specialize κ = i (used together with the weight grading, where `i/κ`
    /// becomes 1).
    pub fn at_kappa_i(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (k, v) in &self.terms {
            acc = Ring::add(&acc, &Ring::mul(v, &GaussianRational::i_pow(*k as i64)));
        }
        acc
    }

    /// Inverse of `at_kappa_i` for a piece of known weight offset `n`:
    /// returns `c·(i/κ)^n`.
    pub fn from_h_power(c: &GaussianRational, n: i32) -> Self {
        Self::monomial(Ring::mul(c, &GaussianRational::i_pow(n as i64)), -n)
    }

    pub fn max_abs_exp(&self) -> i32 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// Parenthesized unless it is an integer literal.
    pub fn to_factor_string(&self) -> String {
        let s = self.to_string();
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                if c.is_real() && c.re.is_integer() && !c.re.is_negative() {
                    return s;
                }
            }
        }
        format!("({})", s)
    }
}

impl Ring for KScalar {
    fn zero() -> Self {
        KScalar::zero()
    }
    fn one() -> Self {
        KScalar::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl<'a> Add<&'a KScalar> for &'a KScalar {
    type Output = KScalar;
    fn add(self, o: &KScalar) -> KScalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for KScalar {
    type Output = KScalar;
    fn add(mut self, o: KScalar) -> KScalar {
        self += &o;
        self
    }
}

impl<'a> AddAssign<&'a KScalar> for KScalar {
    fn add_assign(&mut self, o: &KScalar) {
        for (k, v) in &o.terms {
            self.add_term(*k, v);
        }
    }
}

impl<'a> SubAssign<&'a KScalar> for KScalar {
    fn sub_assign(&mut self, o: &KScalar) {
        for (k, v) in &o.terms {
            self.add_term(*k, &Ring::neg(v));
        }
    }
}

impl<'a> Sub<&'a KScalar> for &'a KScalar {
    type Output = KScalar;
    fn sub(self, o: &KScalar) -> KScalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for KScalar {
    type Output = KScalar;
    fn sub(mut self, o: KScalar) -> KScalar {
        self -= &o;
        self
    }
}

impl<'a> Mul<&'a KScalar> for &'a KScalar {
    type Output = KScalar;
    fn mul(self, o: &KScalar) -> KScalar {
        let mut out = KScalar::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                out.add_term(k1 + k2, &Ring::mul(v1, v2));
            }
        }
        out
    }
}

impl Mul for KScalar {
    type Output = KScalar;
    fn mul(self, o: KScalar) -> KScalar {
        &self * &o
    }
}

impl Neg for &KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar { terms: self.terms.iter().map(|(k, v)| (*k, Ring::neg(v))).collect() }
    }
}

impl Neg for KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        -&self
    }
}

impl From<i64> for KScalar {
    fn from(n: i64) -> Self {
        KScalar::from_int(n)
    }
}

fn fmt_term(c: &GaussianRational, k: i32) -> (bool, String) {
    // returns (negative, magnitude string)
    let (neg, numer, denom): (bool, String, Option<String>) = if c.is_real() || Zero::is_zero(&c.re) {
        let (r, imag) = if c.is_real() { (c.re.clone(), false) } else { (c.im.clone(), true) };
        let neg = r.is_negative();
        let a = r.abs();
        let n = a.numer().to_string();
        let d = if a.denom().is_one() { None } else { Some(a.denom().to_string()) };
        let numer = match (imag, n.as_str()) {
            (true, "1") => "I".to_string(),
            (true, _) => format!("{}*I", n),
            (false, _) => n,
        };
        (neg, numer, d)
    } else {
        let im = &c.im;
        let sign = if im.is_negative() { "-" } else { "+" };
        let imabs = im.abs();
        let ims = if imabs.is_one() { "I".to_string() } else { format!("{}*I", fmt_rat(&imabs)) };
        (false, format!("({} {} {})", fmt_rat(&c.re), sign, ims), None)
    };
    let mut s = String::new();
    if k > 0 {
        if numer == "1" {
            s.push('k');
        } else {
            s.push_str(&numer);
            s.push_str("*k");
        }
        if k > 1 {
            s.push_str(&format!("^{}", k));
        }
    } else {
        s.push_str(&numer);
    }
    let kden = if k < 0 {
        Some(if k == -1 { "k".to_string() } else { format!("k^{}", -k) })
    } else {
        None
    };
    match (denom, kden) {
        (None, None) => {}
        (Some(d), None) => s.push_str(&format!("/{}", d)),
        (None, Some(kd)) => s.push_str(&format!("/{}", kd)),
        (Some(d), Some(kd)) => s.push_str(&format!("/({}*{})", d, kd)),
    }
    (neg, s)
}

impl fmt::Display for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest power of κ first
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let (neg, s) = fmt_term(c, *k);
            match (idx, neg) {
                (0, true) => write!(f, "-{}", s)?,
                (0, false) => write!(f, "{}", s)?,
                (_, true) => write!(f, " - {}", s)?,
                (_, false) => write!(f, " + {}", s)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_over_kappa_squared() {
        let h = KScalar::i_over_kappa();
        assert_eq!(&h * &h, -KScalar::kappa_pow(-2));
    }

    #[test]
    fn star_flips_imaginary_part_only() {
        assert_eq!(KScalar::i_over_kappa().star(), -KScalar::i_over_kappa());
        let a = KScalar::kappa_pow(3) + KScalar::i();
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn canonical_zero() {
        let z = &KScalar::kappa_pow(1).scale_rat(&rat(1, 2)) * &(KScalar::one() - KScalar::one());
        assert!(z.is_zero());
        assert_eq!(z.terms().count(), 0);
        let w = KScalar::kappa_pow(2) - KScalar::kappa_pow(2);
        assert_eq!(w, KScalar::zero());
    }

    #[test]
    fn division_by_monomials_only() {
        let a = KScalar::from_int(3);
        let d = KScalar::kappa_pow(2);
        assert_eq!(a.checked_div(&d).unwrap().to_string(), "3/k^2");
        assert!(a.checked_div(&KScalar::zero()).is_err());
        assert!(a.checked_div(&(KScalar::one() + KScalar::kappa_pow(1))).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(KScalar::i_over_kappa().to_string(), "I/k");
        assert_eq!((-KScalar::i_over_kappa()).to_string(), "-I/k");
        assert_eq!(KScalar::kappa_pow(1).scale_rat(&rat(1, 2)).to_string(), "k/2");
        assert_eq!(KScalar::monomial(GaussianRational::from_ratio(1, 6), -1).to_string(), "1/(6*k)");
        assert_eq!((KScalar::one() + KScalar::i_over_kappa()).to_string(), "1 + I/k");
    }

    #[test]
    fn kappa_i_round_trip() {
        let c = GaussianRational::from_ratio(3, 2);
        let s = KScalar::from_h_power(&c, 2);
        // (i/κ)^2 = -1/κ²
        assert_eq!(s, KScalar::kappa_pow(-2).scale_rat(&rat(-3, 2)));
        assert_eq!(s.at_kappa_i(), c);
    }
}
