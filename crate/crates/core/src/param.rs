//! Polynomials and rational functions in the three Lorentz-group parameters
//! `(t1, t2, s)`, used as an exact zero-testing vehicle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, KScalar, Rat, Ring};

pub type Exp3 = [u16; 3];

pub trait RatScale {
    fn scale_by(&self, r: &Rat) -> Self;
}

impl RatScale for Rat {
    fn scale_by(&self, r: &Rat) -> Self {
        self * r
    }
}

impl RatScale for GaussianRational {
    fn scale_by(&self, r: &Rat) -> Self {
        self.scale(r)
    }
}

impl RatScale for KScalar {
    fn scale_by(&self, r: &Rat) -> Self {
        self.scale_rat(r)
    }
}

/// Sparse polynomial in `t1, t2, s`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C: Ring> {
    terms: BTreeMap<Exp3, C>,
}

impl<C: Ring> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(e: Exp3, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// The variable with index `v` (0 = t1, 1 = t2, 2 = s).
    pub fn var(v: usize) -> Self {
        let mut e = [0; 3];
        e[v] = 1;
        Self::monomial(e, C::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exp3, c: &C) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                v.is_zero()
            }
            None => {
                self.terms.insert(e, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, &v.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient-wise lift into another ring.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    fn min_exponents(&self) -> Exp3 {
        let mut m = [u16::MAX; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                m[v] = m[v].min(e[v]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            m
        }
    }

    fn shift_down(&self, by: Exp3) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] - by[0], e[1] - by[1], e[2] - by[2]], c.clone()))
                .collect(),
        }
    }
}

impl<C: Ring + RatScale> MPoly<C> {
    pub fn eval(&self, pt: &[Rat; 3]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut w = Rat::from_integer(1.into());
            for v in 0..3 {
                for _ in 0..e[v] {
                    w *= &pt[v];
                }
            }
            acc = acc.add(&c.scale_by(&w));
        }
        acc
    }
}

/// Rational function `num/den` in `(t1, t2, s)` over [`KScalar`].
///
/// Common monomial factors are cancelled; equality is decided by
/// cross-multiplication so no multivariate gcd is required.
#[derive(Clone, Debug)]
pub struct ParamRational {
    num: MPoly<KScalar>,
    den: MPoly<KScalar>,
}

impl ParamRational {
    pub fn new(num: MPoly<KScalar>, den: MPoly<KScalar>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly<KScalar>) -> Self {
        ParamRational { num: p, den: MPoly::one() }
    }

    pub fn constant(c: KScalar) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    fn normalized(num: MPoly<KScalar>, den: MPoly<KScalar>) -> Self {
        if num.is_zero() {
            return ParamRational { num, den: MPoly::one() };
        }
        let a = num.min_exponents();
        let b = den.min_exponents();
        let m = [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])];
        let (mut num, mut den) = (num.shift_down(m), den.shift_down(m));
        // constant monomial denominators are folded into the numerator
        if den.len() == 1 {
            let (e, c) = den.terms().next().map(|(e, c)| (*e, c.clone())).unwrap();
            if e == [0, 0, 0] && c.is_monomial() {
                if let Ok(inv) = KScalar::one().checked_div(&c) {
                    num = num.scale(&inv);
                    den = MPoly::one();
                }
            }
        }
        ParamRational { num, den }
    }

    pub fn numerator(&self) -> &MPoly<KScalar> {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly<KScalar> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        ParamRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul(&o.den).sub(&o.num.mul(&self.den)).is_zero()
    }

    /// Value at a rational point; `None` if the denominator vanishes there.
    pub fn eval(&self, pt: &[Rat; 3]) -> Option<KScalar> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(pt);
        if d.is_monomial() {
            return n.checked_div(&d).ok();
        }
        // The denominators built by this crate are κ-free; anything else is
        // outside what evaluation can represent in the Laurent ring.
        if d.max_abs_exp() == 0 {
            let c = d.coeff(0).inv().ok()?;
            return Some(n.scale_gauss(&c));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};

    fn c(n: i64) -> ParamRational {
        ParamRational::constant(KScalar::from_int(n))
    }

    #[test]
    fn circle_identity() {
        let t = ParamRational::var(0);
        let t2 = t.mul(&t);
        let den = c(1).add(&t2);
        let cos = c(1).sub(&t2).div(&den).unwrap();
        let sin = c(2).mul(&t).div(&den).unwrap();
        let sum = cos.mul(&cos).add(&sin.mul(&sin));
        assert!(sum.sub(&c(1)).is_zero());
    }

    #[test]
    fn hyperbola_identity() {
        let t = ParamRational::var(1);
        let t2 = t.mul(&t);
        let den = c(1).sub(&t2);
        let ch = c(1).add(&t2).div(&den).unwrap();
        let sh = c(2).mul(&t).div(&den).unwrap();
        assert!(ch.mul(&ch).sub(&sh.mul(&sh)).sub(&c(1)).is_zero());
    }

    #[test]
    fn self_difference_and_division_by_zero() {
        let a = ParamRational::var(2).add(&c(3)).div(&ParamRational::var(0).add(&c(1))).unwrap();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.div(&c(0)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn zero_test_agrees_with_random_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = ParamRational::var(0);
        let s = ParamRational::var(2);
        let exprs = vec![
            t.mul(&s).sub(&s.mul(&t)),
            t.add(&c(1)).mul(&t.sub(&c(1))).sub(&t.mul(&t)).add(&c(1)),
            t.add(&s),
            t.mul(&t).div(&s.add(&c(2))).unwrap().sub(&t),
        ];
        for e in exprs {
            let mut all_zero = true;
            for _ in 0..20 {
                let pt = [
                    rat(rng.gen_range(-20..20), rng.gen_range(1..9)),
                    rat(rng.gen_range(-20..20), rng.gen_range(1..9)),
                    rat(rng.gen_range(-20..20), rng.gen_range(1..9)),
                ];
                if let Some(v) = e.eval(&pt) {
                    all_zero &= v.is_zero();
                }
            }
            assert_eq!(all_zero, e.is_zero());
        }
    }
}
