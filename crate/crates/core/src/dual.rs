//! The κ-Poincaré algebra in PBW normal form with `E = e^{−P₀/κ}` as a
//! group-like generator, its Hopf maps, and the pairing with the group.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::galg::{fmt_linear, metric, GMonomial, GroupElement};
use crate::scalar::KScalar;

/// Generators of the dual algebra. `E` stands for `e^{−P₀/κ}`; its inverse
/// is `E^-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DGen {
    E,
    EInv,
    P(u8),
    M,
    N(u8),
}

impl DGen {
    pub fn all() -> Vec<DGen> {
        vec![DGen::E, DGen::EInv, DGen::P(0), DGen::P(1), DGen::P(2), DGen::M, DGen::N(1), DGen::N(2)]
    }

    pub fn is_lorentz(&self) -> bool {
        matches!(self, DGen::M | DGen::N(_))
    }

    /// Position in the Lorentz PBW order `M < N1 < N2`.
    fn lorentz_slot(&self) -> usize {
        match self {
            DGen::M => 0,
            DGen::N(i) => *i as usize,
            _ => unreachable!("translation generator"),
        }
    }

    fn from_lorentz_slot(s: usize) -> DGen {
        if s == 0 {
            DGen::M
        } else {
            DGen::N(s as u8)
        }
    }
}

impl fmt::Display for DGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DGen::E => write!(f, "E"),
            DGen::EInv => write!(f, "E^-1"),
            DGen::P(m) => write!(f, "P{}", m),
            DGen::M => write!(f, "M"),
            DGen::N(i) => write!(f, "N{}", i),
        }
    }
}

/// `E^k P0^a P1^b P2^c M^m N1^n1 N2^n2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DualMonomial {
    pub k: i32,
    pub p: [u16; 3],
    /// Powers of `M`, `N1`, `N2`.
    pub l: [u16; 3],
}

impl DualMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn gen(g: DGen) -> Self {
        let mut m = Self::default();
        match g {
            DGen::E => m.k = 1,
            DGen::EInv => m.k = -1,
            DGen::P(i) => m.p[i as usize] = 1,
            DGen::M => m.l[0] = 1,
            DGen::N(i) => m.l[i as usize] = 1,
        }
        m
    }

    pub fn translation_part(&self) -> DualMonomial {
        DualMonomial { k: self.k, p: self.p, l: [0; 3] }
    }

    pub fn lorentz_part(&self) -> DualMonomial {
        DualMonomial { k: 0, p: [0; 3], l: self.l }
    }

    pub fn is_translation(&self) -> bool {
        self.l == [0; 3]
    }

    pub fn is_one(&self) -> bool {
        *self == Self::default()
    }

    /// Degree counting `P`, `M`, `N` (E does not count).
    pub fn degree(&self) -> usize {
        self.p.iter().chain(self.l.iter()).map(|&a| a as usize).sum()
    }

    /// Lorentz generators in normal order.
    pub fn lorentz_word(&self) -> Vec<DGen> {
        let mut w = Vec::new();
        for s in 0..3 {
            for _ in 0..self.l[s] {
                w.push(DGen::from_lorentz_slot(s));
            }
        }
        w
    }

    /// Generators in normal order, with `E^k` spelled as `|k|` factors.
    pub fn word(&self) -> Vec<DGen> {
        let e = if self.k >= 0 { DGen::E } else { DGen::EInv };
        let mut w = vec![e; self.k.unsigned_abs() as usize];
        for mu in 0..3 {
            for _ in 0..self.p[mu] {
                w.push(DGen::P(mu as u8));
            }
        }
        w.extend(self.lorentz_word());
        w
    }

    fn times_translation(&self, t: &DualMonomial) -> DualMonomial {
        debug_assert!(self.is_translation());
        DualMonomial {
            k: self.k + t.k,
            p: [self.p[0] + t.p[0], self.p[1] + t.p[1], self.p[2] + t.p[2]],
            l: t.l,
        }
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        match self.k {
            0 => {}
            1 => parts.push("E".to_string()),
            k => parts.push(format!("E^{}", k)),
        }
        let names = ["P0", "P1", "P2", "M", "N1", "N2"];
        for (i, &e) in self.p.iter().chain(self.l.iter()).enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].to_string()),
                n => parts.push(format!("{}^{}", names[i], n)),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the dual algebra in PBW normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DualElement {
    terms: BTreeMap<DualMonomial, KScalar>,
}

fn ks(n: i64) -> KScalar {
    KScalar::from_int(n)
}

fn ki(n: i64) -> KScalar {
    KScalar::i().scale_rat(&crate::scalar::rat_int(n))
}

impl DualElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(DualMonomial::one())
    }

    pub fn scalar(c: KScalar) -> Self {
        Self::term(c, DualMonomial::one())
    }

    pub fn term(c: KScalar, m: DualMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn mono(m: DualMonomial) -> Self {
        Self::term(KScalar::one(), m)
    }

    pub fn gen(g: DGen) -> Self {
        Self::mono(DualMonomial::gen(g))
    }

    pub fn e_pow(k: i32) -> Self {
        Self::mono(DualMonomial { k, ..Default::default() })
    }

    pub fn p(mu: usize) -> Self {
        Self::gen(DGen::P(mu as u8))
    }

    pub fn m() -> Self {
        Self::gen(DGen::M)
    }

    pub fn n(i: usize) -> Self {
        Self::gen(DGen::N(i as u8))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DualMonomial, &KScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &DualMonomial) -> KScalar {
        self.terms.get(m).cloned().unwrap_or_else(KScalar::zero)
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

    pub fn add_term(&mut self, m: DualMonomial, c: &KScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(KScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, o: &DualElement, c: &KScalar) {
        for (m, v) in &o.terms {
            self.add_term(*m, &(v * c));
        }
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Normal form of a sum of generator words.
    pub fn normal_form(words: &[(KScalar, Vec<DGen>)]) -> Self {
        let mut out = Self::zero();
        for (c, w) in words {
            let mut e = Self::scalar(c.clone());
            for g in w {
                e = &e * &Self::gen(*g);
            }
            out = &out + &e;
        }
        out
    }

    pub fn counit(&self) -> KScalar {
        let mut out = KScalar::zero();
        for (m, c) in &self.terms {
            if m.degree() == 0 {
                out += c;
            }
        }
        out
    }

    pub fn antipode(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&mono_antipode(m), c);
        }
        out
    }

    pub fn coproduct(&self) -> DualTensor {
        let mut out = DualTensor::zero(2);
        for (m, c) in &self.terms {
            out.add_scaled(&mono_coproduct(m), c);
        }
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, o: &DualElement) -> Self {
        &(self * o) - &(o * self)
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        fmt_linear(f, v.into_iter().map(|(m, c)| (c, if m.is_one() { String::new() } else { m.to_string() })))
    }
}

impl<'a> Add<&'a DualElement> for &'a DualElement {
    type Output = DualElement;
    fn add(self, o: &DualElement) -> DualElement {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::one());
        out
    }
}

impl<'a> Sub<&'a DualElement> for &'a DualElement {
    type Output = DualElement;
    fn sub(self, o: &DualElement) -> DualElement {
        let mut out = self.clone();
        out.add_scaled(o, &ks(-1));
        out
    }
}

impl Neg for &DualElement {
    type Output = DualElement;
    fn neg(self) -> DualElement {
        self.scale(&ks(-1))
    }
}

impl<'a> Mul<&'a DualElement> for &'a DualElement {
    type Output = DualElement;
    fn mul(self, o: &DualElement) -> DualElement {
        let mut out = DualElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_scaled(&mono_mul(a, b), &(ca * cb));
            }
        }
        out
    }
}

impl Add for DualElement {
    type Output = DualElement;
    fn add(self, o: DualElement) -> DualElement {
        &self + &o
    }
}

impl Sub for DualElement {
    type Output = DualElement;
    fn sub(self, o: DualElement) -> DualElement {
        &self - &o
    }
}

impl Mul for DualElement {
    type Output = DualElement;
    fn mul(self, o: DualElement) -> DualElement {
        &self * &o
    }
}

// ---------------------------------------------------------------------------
// Commutation rules

/// `P⃗² = P1² + P2²`.
pub fn p_vec_sq() -> DualElement {
    &DualElement::p(1).pow(2) + &DualElement::p(2).pow(2)
}

/// `ε_ij` for `i, j ∈ {1, 2}` with `ε_12 = 1`.
pub fn eps2(i: usize, j: usize) -> i64 {
    match (i, j) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// `[Y, t]` for a Lorentz generator `Y` and a translation generator `t`.
fn lorentz_translation_commutator(y: DGen, t: DGen) -> DualElement {
    let h = KScalar::i_over_kappa();
    match (y, t) {
        (DGen::M, DGen::E) | (DGen::M, DGen::EInv) | (DGen::M, DGen::P(0)) => DualElement::zero(),
        (DGen::M, DGen::P(k)) => {
            let l = 3 - k as usize;
            DualElement::p(l).scale(&ki(eps2(k as usize, l)))
        }
        (DGen::N(i), DGen::P(0)) => DualElement::p(i as usize).scale(&ki(1)),
        (DGen::N(i), DGen::E) => (&DualElement::p(i as usize) * &DualElement::e_pow(1)).scale(&-&h),
        (DGen::N(i), DGen::EInv) => (&DualElement::p(i as usize) * &DualElement::e_pow(-1)).scale(&h),
        (DGen::N(i), DGen::P(j)) => {
            let (i, j) = (i as usize, j as usize);
            let mut out = (&DualElement::p(i) * &DualElement::p(j)).scale(&-&h);
            if i == j {
                let half_kappa = KScalar::kappa_pow(1).scale_rat(&crate::scalar::rat(1, 2));
                let a = (&DualElement::one() - &DualElement::e_pow(2)).scale(&half_kappa);
                let b = p_vec_sq().scale(&KScalar::kappa_pow(-1).scale_rat(&crate::scalar::rat(1, 2)));
                out = &out + &(&a + &b).scale(&ki(1));
            }
            out
        }
        _ => unreachable!("not a Lorentz/translation pair"),
    }
}

/// `[Y, Z]` for Lorentz generators.
fn lorentz_commutator(y: DGen, z: DGen) -> DualElement {
    match (y, z) {
        (a, b) if a == b => DualElement::zero(),
        (DGen::M, DGen::N(k)) => {
            let l = 3 - k as usize;
            DualElement::n(l).scale(&ki(eps2(k as usize, l)))
        }
        (DGen::N(_), DGen::M) => -&lorentz_commutator(z, y),
        (DGen::N(1), DGen::N(2)) => DualElement::m().scale(&ki(-1)),
        (DGen::N(2), DGen::N(1)) => DualElement::m().scale(&ki(1)),
        _ => unreachable!("not a Lorentz pair"),
    }
}

/// `[Y, T]` for a Lorentz generator and a translation monomial.
fn commutator_with_translation(y: DGen, t: &DualMonomial) -> DualElement {
    let mut out = DualElement::zero();
    let mut factors: Vec<(DGen, i64)> = Vec::new();
    if t.k != 0 {
        factors.push((if t.k > 0 { DGen::E } else { DGen::EInv }, t.k.unsigned_abs() as i64));
    }
    for mu in 0..3 {
        if t.p[mu] > 0 {
            factors.push((DGen::P(mu as u8), t.p[mu] as i64));
        }
    }
    for (g, n) in factors {
        let mut rest = *t;
        match g {
            DGen::E => rest.k -= 1,
            DGen::EInv => rest.k += 1,
            DGen::P(mu) => rest.p[mu as usize] -= 1,
            _ => unreachable!(),
        }
        let c = lorentz_translation_commutator(y, g);
        out.add_scaled(&(&c * &DualElement::mono(rest)), &ks(n));
    }
    out
}

thread_local! {
    static LGEN_CACHE: RefCell<HashMap<(DGen, [u16; 3]), DualElement>> = RefCell::new(HashMap::new());
    static DMUL_CACHE: RefCell<HashMap<(DualMonomial, DualMonomial), DualElement>> = RefCell::new(HashMap::new());
    static DS_CACHE: RefCell<HashMap<DualMonomial, DualElement>> = RefCell::new(HashMap::new());
    static DDELTA_CACHE: RefCell<HashMap<DualMonomial, DualTensor>> = RefCell::new(HashMap::new());
}

/// `Y · L` for a Lorentz generator and a Lorentz PBW monomial.
fn lorentz_gen_mul(y: DGen, l: [u16; 3]) -> DualElement {
    let s = y.lorentz_slot();
    let first = (0..3).find(|&j| l[j] > 0);
    match first {
        None => return DualElement::gen(y),
        Some(f) if s <= f => {
            let mut out = l;
            out[s] += 1;
            return DualElement::mono(DualMonomial { k: 0, p: [0; 3], l: out });
        }
        _ => {}
    }
    if let Some(v) = LGEN_CACHE.with(|c| c.borrow().get(&(y, l)).cloned()) {
        return v;
    }
    let f = first.unwrap();
    let g1 = DGen::from_lorentz_slot(f);
    let mut rest = l;
    rest[f] -= 1;
    let mut out = DualElement::zero();
    // g1 · (Y · rest)
    for (m, c) in lorentz_gen_mul(y, rest).terms() {
        out.add_scaled(&lorentz_gen_mul(g1, m.l), c);
    }
    // [Y, g1] · rest
    for (m, c) in lorentz_commutator(y, g1).terms() {
        let z = DGen::from_lorentz_slot((0..3).find(|&j| m.l[j] > 0).unwrap());
        out.add_scaled(&lorentz_gen_mul(z, rest), c);
    }
    LGEN_CACHE.with(|c| c.borrow_mut().insert((y, l), out.clone()));
    out
}

/// `Y · (T L)` for a Lorentz generator.
fn gen_mul(y: DGen, m: &DualMonomial) -> DualElement {
    let t = m.translation_part();
    let mut out = DualElement::zero();
    for (lm, c) in lorentz_gen_mul(y, m.l).terms() {
        out.add_term(t.times_translation(lm), c);
    }
    for (tm, c) in commutator_with_translation(y, &t).terms() {
        out.add_term(DualMonomial { l: m.l, ..*tm }, c);
    }
    out
}

pub fn mono_mul(a: &DualMonomial, b: &DualMonomial) -> DualElement {
    if a.is_translation() {
        return DualElement::mono(a.times_translation(b));
    }
    if let Some(v) = DMUL_CACHE.with(|c| c.borrow().get(&(*a, *b)).cloned()) {
        return v;
    }
    let mut cur = DualElement::mono(*b);
    for y in a.lorentz_word().into_iter().rev() {
        let mut next = DualElement::zero();
        for (m, c) in cur.terms() {
            next.add_scaled(&gen_mul(y, m), c);
        }
        cur = next;
    }
    let t = a.translation_part();
    let mut out = DualElement::zero();
    for (m, c) in cur.terms() {
        out.add_term(t.times_translation(m), c);
    }
    DMUL_CACHE.with(|c| c.borrow_mut().insert((*a, *b), out.clone()));
    out
}

// ---------------------------------------------------------------------------
// Hopf structure

pub fn gen_antipode(g: DGen) -> DualElement {
    let ik = KScalar::kappa_pow(-1);
    match g {
        DGen::E => DualElement::e_pow(-1),
        DGen::EInv => DualElement::e_pow(1),
        DGen::P(0) => -&DualElement::p(0),
        DGen::P(i) => -&(&DualElement::e_pow(-1) * &DualElement::p(i as usize)),
        DGen::M => -&DualElement::m(),
        DGen::N(i) => {
            let i = i as usize;
            let j = 3 - i;
            let a = -&(&DualElement::n(i) * &DualElement::e_pow(-1));
            let b = &(&DualElement::m() * &DualElement::p(j)) * &DualElement::e_pow(-1);
            &a + &b.scale(&(&ik * &ks(eps2(i, j))))
        }
    }
}

fn mono_antipode(m: &DualMonomial) -> DualElement {
    if let Some(v) = DS_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return v;
    }
    let mut out = DualElement::one();
    for g in m.word() {
        out = &gen_antipode(g) * &out;
    }
    DS_CACHE.with(|c| c.borrow_mut().insert(*m, out.clone()));
    out
}

pub fn gen_coproduct(g: DGen) -> DualTensor {
    let one = DualElement::one();
    let t = |a: &DualElement, b: &DualElement| DualTensor::product_of(&[a.clone(), b.clone()]);
    match g {
        DGen::E | DGen::EInv => {
            let e = DualElement::gen(g);
            t(&e, &e)
        }
        DGen::P(0) | DGen::M => {
            let x = DualElement::gen(g);
            t(&x, &one).add(&t(&one, &x))
        }
        DGen::P(i) => {
            let x = DualElement::p(i as usize);
            t(&x, &DualElement::e_pow(1)).add(&t(&one, &x))
        }
        DGen::N(i) => {
            let i = i as usize;
            let j = 3 - i;
            let n = DualElement::n(i);
            let c = KScalar::kappa_pow(-1).scale_rat(&crate::scalar::rat_int(eps2(i, j)));
            t(&one, &n).add(&t(&n, &DualElement::e_pow(1))).add(&t(&DualElement::m(), &DualElement::p(j)).scale(&c))
        }
    }
}

fn mono_coproduct(m: &DualMonomial) -> DualTensor {
    if let Some(v) = DDELTA_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return v;
    }
    let mut out = DualTensor::one(2);
    for g in m.word() {
        out = out.mul(&gen_coproduct(g));
    }
    DDELTA_CACHE.with(|c| c.borrow_mut().insert(*m, out.clone()));
    out
}

/// Element of a tensor power of the dual algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualTensor {
    rank: usize,
    terms: BTreeMap<Vec<DualMonomial>, KScalar>,
}

impl DualTensor {
    pub fn zero(rank: usize) -> Self {
        DualTensor { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        let mut t = Self::zero(rank);
        t.add_term(vec![DualMonomial::one(); rank], &KScalar::one());
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<DualMonomial>, &KScalar)> {
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

    pub fn add_term(&mut self, legs: Vec<DualMonomial>, c: &KScalar) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(legs.clone()).or_insert_with(KScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&legs);
        }
    }

    pub fn add_scaled(&mut self, o: &DualTensor, c: &KScalar) {
        assert_eq!(self.rank, o.rank);
        for (k, v) in &o.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        let mut out = Self::zero(self.rank);
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, o: &DualTensor) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::one());
        out
    }

    pub fn sub(&self, o: &DualTensor) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &ks(-1));
        out
    }

    pub fn product_of(legs: &[DualElement]) -> Self {
        let mut out = DualTensor::one(0);
        for leg in legs {
            let mut next = DualTensor::zero(out.rank + 1);
            for (k, c) in &out.terms {
                for (m, v) in leg.terms() {
                    let mut key = k.clone();
                    key.push(*m);
                    next.add_term(key, &(c * v));
                }
            }
            out = next;
        }
        out
    }

    /// Leg-wise product.
    pub fn mul(&self, o: &DualTensor) -> Self {
        assert_eq!(self.rank, o.rank);
        let mut out = DualTensor::zero(self.rank);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let mut partial = DualTensor::one(0);
                for (a, b) in ka.iter().zip(kb) {
                    let leg = mono_mul(a, b);
                    let mut next = DualTensor::zero(partial.rank + 1);
                    for (k, c) in &partial.terms {
                        for (m, v) in leg.terms() {
                            let mut key = k.clone();
                            key.push(*m);
                            next.add_term(key, &(c * v));
                        }
                    }
                    partial = next;
                }
                out.add_scaled(&partial, &(ca * cb));
            }
        }
        out
    }

    /// Applies a linear map to one leg, splicing in `out_rank` legs.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&DualMonomial) -> DualTensor) -> Self {
        let mut out: Option<DualTensor> = None;
        for (k, c) in &self.terms {
            let img = f(&k[leg]);
            let acc = out.get_or_insert_with(|| DualTensor::zero(self.rank - 1 + img.rank));
            for (ik, iv) in &img.terms {
                let mut key = k[..leg].to_vec();
                key.extend_from_slice(ik);
                key.extend_from_slice(&k[leg + 1..]);
                acc.add_term(key, &(c * iv));
            }
        }
        out.unwrap_or_else(|| DualTensor::zero(self.rank))
    }

    /// Contracts a rank-1 or rank-0 result back to an element.
    pub fn flatten(&self) -> DualElement {
        assert!(self.rank <= 1);
        let mut out = DualElement::zero();
        for (k, c) in &self.terms {
            out.add_term(k.first().copied().unwrap_or_default(), c);
        }
        out
    }

    /// Multiplies legs `leg` and `leg + 1`.
    pub fn multiply_legs(&self, leg: usize) -> Self {
        let mut out = DualTensor::zero(self.rank - 1);
        for (k, c) in &self.terms {
            for (m, v) in mono_mul(&k[leg], &k[leg + 1]).terms() {
                let mut key = k[..leg].to_vec();
                key.push(*m);
                key.extend_from_slice(&k[leg + 2..]);
                out.add_term(key, &(c * v));
            }
        }
        out
    }
}

impl DualTensor {
    fn from_element(a: &DualElement) -> Self {
        DualTensor::product_of(std::slice::from_ref(a))
    }
}

impl fmt::Display for DualTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.terms.iter().map(|(k, c)| (c, k.iter().map(|m| format!("({})", m)).collect::<Vec<_>>().join("⊗"))),
        )
    }
}

/// `(Δ⊗I)Δ` and `(I⊗Δ)Δ` of an element.
pub fn coassociativity_sides(a: &DualElement) -> (DualTensor, DualTensor) {
    let d = a.coproduct();
    (d.map_leg(0, mono_coproduct), d.map_leg(1, mono_coproduct))
}

/// `m(S⊗I)Δ(a)` and `m(I⊗S)Δ(a)`.
pub fn antipode_contractions(a: &DualElement) -> (DualElement, DualElement) {
    let d = a.coproduct();
    let s = |m: &DualMonomial| DualTensor::from_element(&mono_antipode(m));
    (d.map_leg(0, s).multiply_legs(0).flatten(), d.map_leg(1, s).multiply_legs(0).flatten())
}

/// `(ε⊗I)Δ(a)` and `(I⊗ε)Δ(a)`.
pub fn counit_contractions(a: &DualElement) -> (DualElement, DualElement) {
    let d = a.coproduct();
    let e = |m: &DualMonomial| DualTensor::from_element(&DualElement::scalar(DualElement::mono(*m).counit()));
    (d.map_leg(0, e).multiply_legs(0).flatten(), d.map_leg(1, e).multiply_legs(0).flatten())
}

// ---------------------------------------------------------------------------
// Pairing

/// Identification of `M`, `N_i` with `M_{αβ}`: `Standard` takes `M = M₁₂`,
/// `N_i = M_{i0}`; `Opposite` takes `M = M₂₁`, `N_i = M_{0i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum LorentzConvention {
    #[default]
    Standard,
    Opposite,
}

/// `ρ(X)^μ_ν = ⟨Λ^μ_ν, X⟩` for a Lorentz generator.
pub fn lorentz_rep(g: DGen, conv: LorentzConvention) -> [[KScalar; 3]; 3] {
    let (a, b) = match g {
        DGen::M => (1, 2),
        DGen::N(i) => (i as usize, 0),
        _ => panic!("not a Lorentz generator"),
    };
    let (a, b) = match conv {
        LorentzConvention::Standard => (a, b),
        LorentzConvention::Opposite => (b, a),
    };
    let mut r: [[KScalar; 3]; 3] = Default::default();
    for mu in 0..3 {
        for nu in 0..3 {
            let mut v = 0;
            if mu == a && nu == b {
                v += metric(nu);
            }
            if mu == b && nu == a {
                v -= metric(nu);
            }
            r[mu][nu] = ki(v);
        }
    }
    r
}

fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |a, b| a * b)
}

/// `⟨x0^a x1^b x2^c, E^k P0^p P1^q P2^r⟩`.
pub fn translation_pairing(x: [u8; 3], t: &DualMonomial) -> KScalar {
    let (a, b, c) = (x[0] as u64, x[1] as u64, x[2] as u64);
    let (p, q, r) = (t.p[0] as u64, t.p[1] as u64, t.p[2] as u64);
    if q != b || r != c || p > a {
        return KScalar::zero();
    }
    let rest = (a - p) as u32;
    if t.k == 0 && rest > 0 {
        return KScalar::zero();
    }
    let num = factorial(b) * factorial(c) * factorial(a) / factorial(a - p);
    let base = KScalar::from_rat(crate::scalar::Rat::from_integer(num))
        .scale_gauss(&crate::scalar::GaussianRational::i_pow((p + b + c) as i64));
    let shift = KScalar::i_over_kappa().scale_rat(&crate::scalar::rat_int(-(t.k as i64)));
    &base * &shift.pow(rest)
}

fn lorentz_pairing_word(factors: &mut Vec<(usize, usize)>, word: &[DGen], conv: LorentzConvention) -> KScalar {
    let Some((&x, rest)) = word.split_first() else {
        return if factors.iter().all(|(m, n)| m == n) { KScalar::one() } else { KScalar::zero() };
    };
    let rho = lorentz_rep(x, conv);
    let mut out = KScalar::zero();
    for k in 0..factors.len() {
        let (mu, nu) = factors[k];
        for r in 0..3 {
            if rho[mu][r].is_zero() {
                continue;
            }
            factors[k] = (r, nu);
            let v = lorentz_pairing_word(factors, rest, conv);
            factors[k] = (mu, nu);
            if !v.is_zero() {
                out += &(&rho[mu][r] * &v);
            }
        }
    }
    out
}

/// `⟨Λ-monomial, Lorentz monomial⟩`.
pub fn lorentz_pairing(l: &[u8; 9], lm: &[u16; 3], conv: LorentzConvention) -> KScalar {
    let mut factors = Vec::new();
    for (idx, &e) in l.iter().enumerate() {
        for _ in 0..e {
            factors.push((idx / 3, idx % 3));
        }
    }
    let word = DualMonomial { k: 0, p: [0; 3], l: *lm }.lorentz_word();
    lorentz_pairing_word(&mut factors, &word, conv)
}

thread_local! {
    static PAIR_CACHE: RefCell<HashMap<(GMonomial, DualMonomial, LorentzConvention), KScalar>> = RefCell::new(HashMap::new());
}

pub fn pair_mono(a: &GMonomial, f: &DualMonomial, conv: LorentzConvention) -> KScalar {
    if let Some(v) = PAIR_CACHE.with(|c| c.borrow().get(&(*a, *f, conv)).cloned()) {
        return v;
    }
    let t = translation_pairing(a.x, &f.translation_part());
    let v = if t.is_zero() { t } else { &t * &lorentz_pairing(&a.l, &f.l, conv) };
    PAIR_CACHE.with(|c| c.borrow_mut().insert((*a, *f, conv), v.clone()));
    v
}

/// `⟨a, f⟩` with the standard Lorentz convention.
pub fn pair(a: &GroupElement, f: &DualElement) -> KScalar {
    pair_with(a, f, LorentzConvention::Standard)
}

pub fn pair_with(a: &GroupElement, f: &DualElement, conv: LorentzConvention) -> KScalar {
    let mut out = KScalar::zero();
    for (m, c) in a.terms() {
        for (n, d) in f.terms() {
            let v = pair_mono(m, n, conv);
            if !v.is_zero() {
                out += &(&(c * d) * &v);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Named elements

/// The dual-algebra expressions for the left-invariant vector fields.
#[derive(Clone, Debug)]
pub struct ChiDefs {
    pub chi0: DualElement,
    pub chi1: DualElement,
    pub chi2: DualElement,
    pub chi: DualElement,
    pub lambda: DualElement,
    pub m: DualElement,
    pub l1: DualElement,
    pub l2: DualElement,
}

impl ChiDefs {
    pub fn named(&self) -> Vec<(&'static str, &DualElement)> {
        vec![
            ("chi0", &self.chi0),
            ("chi1", &self.chi1),
            ("chi2", &self.chi2),
            ("chi", &self.chi),
            ("lambda", &self.lambda),
            ("m", &self.m),
            ("l1", &self.l1),
            ("l2", &self.l2),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&DualElement> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, e)| e)
    }
}

/// `κ sh(P₀/κ) + (P⃗²/2κ) e^{P₀/κ}` with `sh(P₀/κ) = (E⁻¹ − E)/2`.
pub fn energy_like() -> DualElement {
    let half = crate::scalar::rat(1, 2);
    let sh = (&DualElement::e_pow(-1) - &DualElement::e_pow(1)).scale(&KScalar::kappa_pow(1).scale_rat(&half));
    let kub = (&p_vec_sq() * &DualElement::e_pow(-1)).scale(&KScalar::kappa_pow(-1).scale_rat(&half));
    &sh + &kub
}

pub fn chi_defs() -> ChiDefs {
    let mi = ki(-1);
    let einv = DualElement::e_pow(-1);
    let chi0 = energy_like().scale(&mi);
    let chi_i = |i: usize| (&einv * &DualElement::p(i)).scale(&mi);
    let k2 = KScalar::kappa_pow(2);
    let four_sh2 = &(&einv + &DualElement::e_pow(1)) - &DualElement::scalar(ks(2));
    let chi = (&four_sh2.scale(&k2) - &(&p_vec_sq() * &einv)).scale(&KScalar::from_ratio(-1, 6));
    let pn = &(&DualElement::p(1) * &DualElement::n(2)) - &(&DualElement::p(2) * &DualElement::n(1));
    let lambda = (&(&energy_like() * &DualElement::m()) + &(&pn * &einv)).scale(&KScalar::from_ratio(-1, 6));
    let m = &(&einv * &DualElement::m()).scale(&mi) - &lambda.scale(&(&ki(6) * &KScalar::kappa_pow(-1)));
    let l = |i: usize| (&einv * &DualElement::n(i)).scale(&mi);
    ChiDefs { chi0, chi1: chi_i(1), chi2: chi_i(2), chi, lambda, m, l1: l(1), l2: l(2) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::GroupElement;

    fn k(n: i32) -> KScalar {
        KScalar::kappa_pow(n)
    }

    #[test]
    fn p1_n1_reorders() {
        let lhs = &DualElement::p(1) * &DualElement::n(1);
        let half = crate::scalar::rat(1, 2);
        let bracket = &(&DualElement::one() - &DualElement::e_pow(2)).scale(&k(1).scale_rat(&half))
            + &p_vec_sq().scale(&k(-1).scale_rat(&half));
        let expect = &(&(&DualElement::n(1) * &DualElement::p(1)) - &bracket.scale(&ki(1)))
            + &DualElement::p(1).pow(2).scale(&KScalar::i_over_kappa());
        assert_eq!(lhs, expect);
        assert_eq!(lhs.to_string().matches("N1").count(), 1);
    }

    #[test]
    fn printed_commutators() {
        assert_eq!(&DualElement::m() * &DualElement::p(0), &DualElement::p(0) * &DualElement::m());
        assert_eq!(DualElement::n(1).commutator(&DualElement::n(2)), DualElement::m().scale(&ki(-1)));
        assert_eq!(DualElement::m().commutator(&DualElement::p(1)), DualElement::p(2).scale(&ki(1)));
        assert_eq!(DualElement::m().commutator(&DualElement::n(2)), DualElement::n(1).scale(&ki(-1)));
        let e = DualElement::e_pow(1);
        assert_eq!(DualElement::n(2).commutator(&e), (&DualElement::p(2) * &e).scale(&-&KScalar::i_over_kappa()));
        assert_eq!(&DualElement::e_pow(1) * &DualElement::e_pow(-1), DualElement::one());
    }

    #[test]
    fn jacobi_on_generators() {
        let gens: Vec<DualElement> = DGen::all().into_iter().map(DualElement::gen).collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let j = &(&a.commutator(&b.commutator(c)) + &b.commutator(&c.commutator(a)))
                        + &c.commutator(&a.commutator(b));
                    assert!(j.is_zero(), "{} {} {}", a, b, c);
                }
            }
        }
    }

    #[test]
    fn hopf_maps_on_generators() {
        let d = DualElement::p(1).coproduct();
        let expect = DualTensor::product_of(&[DualElement::p(1), DualElement::e_pow(1)])
            .add(&DualTensor::product_of(&[DualElement::one(), DualElement::p(1)]));
        assert_eq!(d, expect);
        assert_eq!(DualElement::p(1).antipode(), -&(&DualElement::e_pow(-1) * &DualElement::p(1)));
        assert!(DualElement::n(1).counit().is_zero());
        assert_eq!(DualElement::e_pow(3).counit(), KScalar::one());
        for g in DGen::all() {
            let a = DualElement::gen(g);
            let (l, r) = coassociativity_sides(&a);
            assert_eq!(l, r, "{}", g);
            let (s1, s2) = antipode_contractions(&a);
            assert_eq!(s1, DualElement::scalar(a.counit()), "{}", g);
            assert_eq!(s2, DualElement::scalar(a.counit()), "{}", g);
            let (e1, e2) = counit_contractions(&a);
            assert_eq!(e1, a);
            assert_eq!(e2, a);
        }
    }

    #[test]
    fn coproduct_respects_commutators() {
        for (a, b) in [(DGen::N(1), DGen::P(1)), (DGen::N(1), DGen::N(2)), (DGen::N(2), DGen::P(0)), (DGen::M, DGen::N(1))] {
            let (a, b) = (DualElement::gen(a), DualElement::gen(b));
            let lhs = a.commutator(&b).coproduct();
            let (da, db) = (a.coproduct(), b.coproduct());
            let rhs = da.mul(&db).sub(&db.mul(&da));
            assert_eq!(lhs, rhs, "{} {}", a, b);
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&GroupElement::x(0), &DualElement::p(0)), KScalar::i());
        assert_eq!(pair(&GroupElement::x(0).pow(2), &DualElement::e_pow(1)), KScalar::kappa_pow(-2).scale_rat(&crate::scalar::rat_int(-1)));
        assert_eq!(pair(&GroupElement::one(), &DualElement::e_pow(1)), KScalar::one());
        assert!(pair(&GroupElement::l(0, 1), &DualElement::m()).is_zero());
        // ⟨Λ^0_1, M_{01}⟩ = −i and M_{01} = −N_1.
        assert_eq!(pair(&GroupElement::l(0, 1), &DualElement::n(1)), ki(1));
        assert_eq!(pair(&GroupElement::l(1, 2), &DualElement::m()), ki(-1));
    }

    #[test]
    fn chi_definitions() {
        let c = chi_defs();
        assert_eq!(c.chi1, (&DualElement::e_pow(-1) * &DualElement::p(1)).scale(&ki(-1)));
        for (_, e) in c.named() {
            assert!(e.counit().is_zero());
        }
        let phi = crate::ideal::phi();
        assert_eq!(pair(&phi, &c.chi), KScalar::one());
    }
}
