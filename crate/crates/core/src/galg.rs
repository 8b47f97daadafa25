//! The κ-Poincaré group algebra: normal-ordered elements in the
//! translations `x^μ` and the Lorentz matrix entries `Λ^μ_ν`.
//!
//! Normal order puts every `x` to the left of every `Λ`, with `x^0`
//! leftmost, then `x^1`, then `x^2`. The `Λ` entries commute among
//! themselves and are stored as an exponent vector.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{rat_int, KScalar};

/// Diagonal metric `diag(+, -, -)`.
pub fn metric(mu: usize) -> i64 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

pub fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// Totally antisymmetric symbol with `ε_{012} = ε^{012} = 1`.
pub fn levi(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GGen {
    X(u8),
    L(u8, u8),
}

impl GGen {
    pub fn x(mu: usize) -> Self {
        assert!(mu < 3);
        GGen::X(mu as u8)
    }

    pub fn l(mu: usize, nu: usize) -> Self {
        assert!(mu < 3 && nu < 3);
        GGen::L(mu as u8, nu as u8)
    }

    pub fn all() -> Vec<GGen> {
        let mut v: Vec<GGen> = (0..3).map(GGen::x).collect();
        for mu in 0..3 {
            for nu in 0..3 {
                v.push(GGen::l(mu, nu));
            }
        }
        v
    }
}

impl fmt::Display for GGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GGen::X(m) => write!(f, "x{}", m),
            GGen::L(m, n) => write!(f, "L[{},{}]", m, n),
        }
    }
}

/// `(x^0)^a0 (x^1)^a1 (x^2)^a2 · Π (Λ^μ_ν)^{l[3μ+ν]}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct GMonomial {
    pub x: [u8; 3],
    pub l: [u8; 9],
}

impl GMonomial {
    pub fn one() -> Self {
        GMonomial::default()
    }

    pub fn gen(g: GGen) -> Self {
        let mut m = GMonomial::default();
        match g {
            GGen::X(mu) => m.x[mu as usize] = 1,
            GGen::L(mu, nu) => m.l[3 * mu as usize + nu as usize] = 1,
        }
        m
    }

    pub fn x_part(&self) -> GMonomial {
        GMonomial { x: self.x, l: [0; 9] }
    }

    pub fn l_part(&self) -> GMonomial {
        GMonomial { x: [0; 3], l: self.l }
    }

    pub fn x_degree(&self) -> usize {
        self.x.iter().map(|&a| a as usize).sum()
    }

    pub fn l_degree(&self) -> usize {
        self.l.iter().map(|&a| a as usize).sum()
    }

    pub fn degree(&self) -> usize {
        self.x_degree() + self.l_degree()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    /// Generators in normal order.
    pub fn word(&self) -> Vec<GGen> {
        let mut w = Vec::with_capacity(self.degree());
        for mu in 0..3 {
            for _ in 0..self.x[mu] {
                w.push(GGen::x(mu));
            }
        }
        for k in 0..9 {
            for _ in 0..self.l[k] {
                w.push(GGen::l(k / 3, k % 3));
            }
        }
        w
    }

    fn mul_l(&self, o: &GMonomial) -> GMonomial {
        let mut out = *self;
        for k in 0..9 {
            out.l[k] += o.l[k];
        }
        out
    }
}

impl fmt::Display for GMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for mu in 0..3 {
            match self.x[mu] {
                0 => {}
                1 => parts.push(format!("x{}", mu)),
                n => parts.push(format!("x{}^{}", mu, n)),
            }
        }
        for k in 0..9 {
            match self.l[k] {
                0 => {}
                1 => parts.push(format!("L[{},{}]", k / 3, k % 3)),
                n => parts.push(format!("L[{},{}]^{}", k / 3, k % 3, n)),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the group algebra in normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupElement {
    terms: BTreeMap<GMonomial, KScalar>,
}

impl GroupElement {
    pub fn zero() -> Self {
        GroupElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(KScalar::one())
    }

    pub fn scalar(c: KScalar) -> Self {
        Self::term(c, GMonomial::one())
    }

    pub fn term(c: KScalar, m: GMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GroupElement { terms }
    }

    pub fn mono(m: GMonomial) -> Self {
        Self::term(KScalar::one(), m)
    }

    pub fn gen(g: GGen) -> Self {
        Self::mono(GMonomial::gen(g))
    }

    pub fn x(mu: usize) -> Self {
        Self::gen(GGen::x(mu))
    }

    pub fn l(mu: usize, nu: usize) -> Self {
        Self::gen(GGen::l(mu, nu))
    }

    /// `Λ_ν{}^μ = g_{νν} g^{μμ} Λ^ν_μ`, the entries of the inverse matrix.
    pub fn l_inv(nu: usize, mu: usize) -> Self {
        Self::l(nu, mu).scale(&KScalar::from_int(metric(nu) * metric(mu)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GMonomial, &KScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &GMonomial) -> KScalar {
        self.terms.get(m).cloned().unwrap_or_else(KScalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term is stored (no orthogonality reduction applied).
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero modulo Lorentz orthogonality.
    pub fn is_zero(&self) -> bool {
        crate::lorentz::vanishes(self)
    }

    /// Equality as elements of the group algebra.
    pub fn equals(&self, o: &GroupElement) -> bool {
        (self - o).is_zero()
    }

    pub fn add_term(&mut self, m: GMonomial, c: &KScalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(m, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, o: &GroupElement, c: &KScalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(*m, &(v * c));
        }
    }

    pub fn scale(&self, c: &KScalar) -> GroupElement {
        let mut out = GroupElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> usize {
        self.terms.keys().map(|m| m.x_degree()).max().unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> GroupElement {
        let mut out = GroupElement::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Product of a word of generators, each word with a scalar prefactor.
    pub fn normal_form(words: &[(KScalar, Vec<GGen>)]) -> GroupElement {
        let mut out = GroupElement::zero();
        for (c, w) in words {
            let mut p = GroupElement::scalar(c.clone());
            for g in w {
                p = &p * &GroupElement::gen(*g);
            }
            out = &out + &p;
        }
        out
    }

    pub fn counit(&self) -> KScalar {
        let mut acc = KScalar::zero();
        for (m, c) in &self.terms {
            acc += &(c * &mono_counit(m));
        }
        acc
    }

    pub fn antipode(&self) -> GroupElement {
        let mut out = GroupElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&mono_antipode(m), c);
        }
        out
    }

    /// Antilinear anti-automorphism fixing every generator.
    pub fn star(&self) -> GroupElement {
        let mut out = GroupElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&mono_star(m), &c.star());
        }
        out
    }

    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (m, c) in &self.terms {
            out.add_scaled(&mono_coproduct(m), c);
        }
        out
    }

    /// Splits into pieces of constant weight `x-degree − κ-exponent`.
    pub fn weight_components(&self) -> BTreeMap<i32, GroupElement> {
        let mut out: BTreeMap<i32, GroupElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (k, v) in c.terms() {
                let w = m.x_degree() as i32 - k;
                out.entry(w)
                    .or_default()
                    .add_term(*m, &KScalar::monomial(v.clone(), k));
            }
        }
        out
    }

    /// Display order: higher degree first.
    fn display_terms(&self) -> Vec<(&GMonomial, &KScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| display_key(b.0).cmp(&display_key(a.0))));
        v
    }
}

fn display_key(m: &GMonomial) -> ([u8; 3], [u8; 9]) {
    (m.x, m.l)
}

/// Formats `Σ c·m` in the expression syntax.
pub fn fmt_linear<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a KScalar, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, m) in terms {
        let (neg, mag) = split_sign(c);
        let body = if m.is_empty() || m == "1" {
            mag.to_factor_string_bare()
        } else if mag.is_one() {
            m
        } else {
            format!("{}*{}", mag.to_factor_string(), m)
        };
        match (first, neg) {
            (true, true) => write!(f, "-{}", body)?,
            (true, false) => write!(f, "{}", body)?,
            (false, true) => write!(f, " - {}", body)?,
            (false, false) => write!(f, " + {}", body)?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Pulls a leading minus sign out of single-term scalars.
pub fn split_sign(c: &KScalar) -> (bool, KScalar) {
    if c.is_monomial() {
        let (_, v) = c.terms().next().unwrap();
        use num_traits::Signed;
        let neg = if v.is_real() { v.re.is_negative() } else if num_traits::Zero::is_zero(&v.re) { v.im.is_negative() } else { false };
        if neg {
            return (true, -c);
        }
    }
    (false, c.clone())
}

trait BareFactor {
    fn to_factor_string_bare(&self) -> String;
}

impl BareFactor for KScalar {
    fn to_factor_string_bare(&self) -> String {
        if self.terms().count() <= 1 {
            self.to_string()
        } else {
            format!("({})", self)
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms();
        fmt_linear(f, terms.into_iter().map(|(m, c)| (c, if m.is_one() { String::new() } else { m.to_string() })))
    }
}

impl<'a> Add<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn add(self, o: &GroupElement) -> GroupElement {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::one());
        out
    }
}

impl<'a> Sub<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn sub(self, o: &GroupElement) -> GroupElement {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::from_int(-1));
        out
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.scale(&KScalar::from_int(-1))
    }
}

impl<'a> Mul<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn mul(self, o: &GroupElement) -> GroupElement {
        let mut out = GroupElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1 * c2;
                for (m, v) in mono_mul(m1, m2).terms() {
                    out.add_term(*m, &(v * &c));
                }
            }
        }
        out
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, o: GroupElement) -> GroupElement {
        &self + &o
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, o: GroupElement) -> GroupElement {
        &self - &o
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: GroupElement) -> GroupElement {
        &self * &o
    }
}

// ---------------------------------------------------------------------------
// rewriting kernels

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for j in 0..k {
        r = r * (n - j) as i64 / (j + 1) as i64;
    }
    r
}

/// Product of two pure x-monomials:
/// `x^a · x^b = x0^a0 (x0 − (a1+a2)·i/κ)^b0 x1^{a1+b1} x2^{a2+b2}`.
fn x_mul(a: [u8; 3], b: [u8; 3]) -> Vec<([u8; 3], KScalar)> {
    let shift = (a[1] + a[2]) as i64;
    let b0 = b[0] as u32;
    let mut out = Vec::new();
    for j in 0..=b0 {
        if shift == 0 && j > 0 {
            break;
        }
        let coef = KScalar::i_over_kappa().pow(j).scale_rat(&rat_int(binom(b0, j) * (-shift).pow(j)));
        out.push(([a[0] + (b0 - j) as u8, a[1] + b[1], a[2] + b[2]], coef));
    }
    out
}

/// `[Λ^μ_ν, x^ρ] = −(i/κ)((Λ^μ_0 − δ^μ_0)Λ^ρ_ν + (Λ^0_ν − δ^0_ν) g^{μρ})`.
pub fn lx_commutator(mu: usize, nu: usize, rho: usize) -> GroupElement {
    let h = KScalar::i_over_kappa();
    let one = GroupElement::one();
    let a = &GroupElement::l(mu, 0) - &one.scale(&KScalar::from_int(delta(mu, 0)));
    let mut t = &a * &GroupElement::l(rho, nu);
    if mu == rho {
        let b = &GroupElement::l(0, nu) - &one.scale(&KScalar::from_int(delta(0, nu)));
        t = &t + &b.scale(&KScalar::from_int(metric(mu)));
    }
    t.scale(&-h)
}

/// `D_ρ(L) = [L, x^ρ]` for a commutative Λ-word; the commutator acts as a
/// derivation whose values are Λ-polynomials.
fn lword_commutator(l: &[u8; 9], rho: usize) -> GroupElement {
    let mut out = GroupElement::zero();
    for k in 0..9 {
        if l[k] == 0 {
            continue;
        }
        let mut rest = *l;
        rest[k] -= 1;
        let c = lx_commutator(k / 3, k % 3, rho);
        let mult = KScalar::from_int(l[k] as i64);
        for (m, v) in c.terms() {
            let mut lm = *m;
            for j in 0..9 {
                lm.l[j] += rest[j];
            }
            out.add_term(lm, &(v * &mult));
        }
    }
    out
}

thread_local! {
    static LX_CACHE: RefCell<HashMap<([u8; 9], [u8; 3]), GroupElement>> = RefCell::new(HashMap::new());
    static S_CACHE: RefCell<HashMap<GMonomial, GroupElement>> = RefCell::new(HashMap::new());
    static STAR_CACHE: RefCell<HashMap<GMonomial, GroupElement>> = RefCell::new(HashMap::new());
    static DELTA_CACHE: RefCell<HashMap<GMonomial, TensorElement>> = RefCell::new(HashMap::new());
}

/// Drops the rewriting caches of the current thread.
pub fn clear_caches() {
    LX_CACHE.with(|c| c.borrow_mut().clear());
    S_CACHE.with(|c| c.borrow_mut().clear());
    STAR_CACHE.with(|c| c.borrow_mut().clear());
    DELTA_CACHE.with(|c| c.borrow_mut().clear());
}

/// Moves a Λ-word to the right of an x-monomial: `L · X = Σ c X' L'`.
fn lword_times_x(l: [u8; 9], x: [u8; 3]) -> GroupElement {
    if x == [0, 0, 0] || l == [0; 9] {
        return GroupElement::mono(GMonomial { x, l });
    }
    if let Some(v) = LX_CACHE.with(|c| c.borrow().get(&(l, x)).cloned()) {
        return v;
    }
    let rho = (0..3).find(|&r| x[r] > 0).unwrap();
    let mut rest = x;
    rest[rho] -= 1;
    let mut first = [0u8; 3];
    first[rho] = 1;
    let mut out = GroupElement::zero();
    // x^ρ · (L · rest)
    for (m, c) in lword_times_x(l, rest).terms() {
        for (xm, v) in x_mul(first, m.x) {
            out.add_term(GMonomial { x: xm, l: m.l }, &(c * &v));
        }
    }
    // D_ρ(L) · rest
    for (m, c) in lword_commutator(&l, rho).terms() {
        for (m2, v) in lword_times_x(m.l, rest).terms() {
            out.add_term(*m2, &(c * v));
        }
    }
    LX_CACHE.with(|c| c.borrow_mut().insert((l, x), out.clone()));
    out
}

pub fn mono_mul(a: &GMonomial, b: &GMonomial) -> GroupElement {
    if a.l == [0; 9] && b.x == [0, 0, 0] {
        return GroupElement::mono(GMonomial { x: a.x, l: b.l });
    }
    let mut out = GroupElement::zero();
    for (m, c) in lword_times_x(a.l, b.x).terms() {
        for (xm, v) in x_mul(a.x, m.x) {
            let mono = GMonomial { x: xm, l: m.l }.mul_l(&b.l_part());
            out.add_term(mono, &(c * &v));
        }
    }
    out
}

pub fn mono_counit(m: &GMonomial) -> KScalar {
    if m.x_degree() > 0 {
        return KScalar::zero();
    }
    for k in 0..9 {
        if m.l[k] > 0 && k / 3 != k % 3 {
            return KScalar::zero();
        }
    }
    KScalar::one()
}

pub fn gen_antipode(g: GGen) -> GroupElement {
    match g {
        GGen::L(mu, nu) => GroupElement::l_inv(nu as usize, mu as usize),
        GGen::X(mu) => {
            let mut out = GroupElement::zero();
            for nu in 0..3 {
                let t = &GroupElement::l_inv(nu, mu as usize) * &GroupElement::x(nu);
                out = &out - &t;
            }
            out
        }
    }
}

fn mono_antipode(m: &GMonomial) -> GroupElement {
    if let Some(v) = S_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return v;
    }
    let mut out = GroupElement::one();
    for g in m.word().into_iter().rev() {
        out = &out * &gen_antipode(g);
    }
    S_CACHE.with(|c| c.borrow_mut().insert(*m, out.clone()));
    out
}

fn mono_star(m: &GMonomial) -> GroupElement {
    if let Some(v) = STAR_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return v;
    }
    let mut out = GroupElement::one();
    for g in m.word().into_iter().rev() {
        out = &out * &GroupElement::gen(g);
    }
    STAR_CACHE.with(|c| c.borrow_mut().insert(*m, out.clone()));
    out
}

pub fn gen_coproduct(g: GGen) -> TensorElement {
    let mut t = TensorElement::zero(2);
    match g {
        GGen::L(mu, nu) => {
            for rho in 0..3 {
                t.add_term(
                    vec![GMonomial::gen(GGen::l(mu as usize, rho)), GMonomial::gen(GGen::l(rho, nu as usize))],
                    &KScalar::one(),
                );
            }
        }
        GGen::X(mu) => {
            for nu in 0..3 {
                t.add_term(vec![GMonomial::gen(GGen::l(mu as usize, nu)), GMonomial::gen(GGen::x(nu))], &KScalar::one());
            }
            t.add_term(vec![GMonomial::gen(GGen::X(mu)), GMonomial::one()], &KScalar::one());
        }
    }
    t
}

fn mono_coproduct(m: &GMonomial) -> TensorElement {
    if let Some(v) = DELTA_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return v;
    }
    let mut out = TensorElement::one(2);
    for g in m.word() {
        out = out.mul(&gen_coproduct(g));
    }
    DELTA_CACHE.with(|c| c.borrow_mut().insert(*m, out.clone()));
    out
}

// ---------------------------------------------------------------------------

/// Element of the n-fold tensor power, each leg in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<Vec<GMonomial>, KScalar>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1);
        TensorElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        let mut t = Self::zero(rank);
        t.add_term(vec![GMonomial::one(); rank], &KScalar::one());
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GMonomial>, &KScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, legs: Vec<GMonomial>, c: &KScalar) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&legs) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(legs.clone(), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&legs);
        }
    }

    pub fn add_scaled(&mut self, o: &TensorElement, c: &KScalar) {
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

    pub fn sub(&self, o: &TensorElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::from_int(-1));
        out
    }

    pub fn add(&self, o: &TensorElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &KScalar::one());
        out
    }

    /// `a_1 ⊗ … ⊗ a_n`.
    pub fn product_of(legs: &[GroupElement]) -> Self {
        let mut out = Self::one(legs.len());
        let mut acc: BTreeMap<Vec<GMonomial>, KScalar> = BTreeMap::new();
        acc.insert(Vec::new(), KScalar::one());
        for leg in legs {
            let mut next = BTreeMap::new();
            for (k, c) in &acc {
                for (m, v) in leg.terms() {
                    let mut k2 = k.clone();
                    k2.push(*m);
                    next.insert(k2, c * v);
                }
            }
            acc = next;
        }
        out.terms.clear();
        for (k, v) in acc {
            out.add_term(k, &v);
        }
        out
    }

    pub fn from_element(a: &GroupElement) -> Self {
        Self::product_of(std::slice::from_ref(a))
    }

    /// Rank-1 tensor back to an element.
    pub fn flatten(&self) -> GroupElement {
        assert_eq!(self.rank, 1);
        let mut out = GroupElement::zero();
        for (k, v) in &self.terms {
            out.add_term(k[0], v);
        }
        out
    }

    /// Leg-wise product in the tensor-power algebra.
    pub fn mul(&self, o: &TensorElement) -> Self {
        assert_eq!(self.rank, o.rank);
        let mut out = Self::zero(self.rank);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let legs: Vec<GroupElement> = k1.iter().zip(k2).map(|(a, b)| mono_mul(a, b)).collect();
                let prod = Self::product_of(&legs);
                out.add_scaled(&prod, &(c1 * c2));
            }
        }
        out
    }

    /// Applies a linear map on monomials to leg `leg`, replacing it with
    /// `out_rank` legs (0 contracts the leg into the scalar, e.g. a counit).
    pub fn map_leg(&self, leg: usize, out_rank: usize, f: impl Fn(&GMonomial) -> TensorLegImage) -> Self {
        let new_rank = self.rank - 1 + out_rank;
        let mut out = Self::zero(new_rank.max(1));
        let mut cache: HashMap<GMonomial, TensorLegImage> = HashMap::new();
        for (k, c) in &self.terms {
            let img = cache.entry(k[leg]).or_insert_with(|| f(&k[leg]));
            for (legs, v) in img.terms() {
                let mut nk = Vec::with_capacity(new_rank);
                nk.extend_from_slice(&k[..leg]);
                nk.extend_from_slice(legs);
                nk.extend_from_slice(&k[leg + 1..]);
                if nk.is_empty() {
                    nk.push(GMonomial::one());
                }
                out.add_term(nk, &(c * v));
            }
        }
        out
    }

    /// Applies an element-valued linear map to one leg.
    pub fn map_leg_element(&self, leg: usize, f: impl Fn(&GMonomial) -> GroupElement) -> Self {
        self.map_leg(leg, 1, |m| TensorLegImage::from_element(&f(m)))
    }

    /// Multiplies legs `leg` and `leg+1` together.
    pub fn multiply_legs(&self, leg: usize) -> Self {
        let mut out = Self::zero((self.rank - 1).max(1));
        for (k, c) in &self.terms {
            let p = mono_mul(&k[leg], &k[leg + 1]);
            for (m, v) in p.terms() {
                let mut nk = Vec::with_capacity(self.rank - 1);
                nk.extend_from_slice(&k[..leg]);
                nk.push(*m);
                nk.extend_from_slice(&k[leg + 2..]);
                out.add_term(nk, &(c * v));
            }
        }
        out
    }

    /// Zero modulo Lorentz orthogonality in every leg.
    pub fn is_zero(&self) -> bool {
        crate::lorentz::tensor_vanishes(self)
    }

    pub fn equals(&self, o: &TensorElement) -> bool {
        self.sub(o).is_zero()
    }

    pub fn star_legs(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, c) in &self.terms {
            let legs: Vec<GroupElement> = k.iter().map(|m| GroupElement::mono(*m).star()).collect();
            out.add_scaled(&Self::product_of(&legs), &c.star());
        }
        out
    }
}

/// Image of one leg under a leg map: a small tensor of arbitrary rank.
#[derive(Clone, Debug)]
pub struct TensorLegImage {
    terms: Vec<(Vec<GMonomial>, KScalar)>,
}

impl TensorLegImage {
    pub fn from_element(a: &GroupElement) -> Self {
        TensorLegImage { terms: a.terms().map(|(m, c)| (vec![*m], c.clone())).collect() }
    }

    pub fn from_tensor(t: &TensorElement) -> Self {
        TensorLegImage { terms: t.terms().map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn scalar(c: KScalar) -> Self {
        TensorLegImage { terms: vec![(Vec::new(), c)] }
    }

    fn terms(&self) -> impl Iterator<Item = (&Vec<GMonomial>, &KScalar)> {
        self.terms.iter().map(|(k, c)| (k, c))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self
            .terms
            .keys()
            .map(|k| k.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" (x) "))
            .collect();
        fmt_linear(f, self.terms.values().zip(strs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> KScalar {
        KScalar::i_over_kappa()
    }

    #[test]
    fn x1_x0_rewrites_once() {
        let p = &GroupElement::x(1) * &GroupElement::x(0);
        let expect = &(&GroupElement::x(0) * &GroupElement::x(1)) - &GroupElement::x(1).scale(&h());
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "x0*x1 - (I/k)*x1");
    }

    #[test]
    fn x1_x2_commute() {
        let p = &GroupElement::x(1) * &GroupElement::x(2);
        assert_eq!(p.len(), 1);
        let q = &GroupElement::x(2) * &GroupElement::x(1);
        assert_eq!(p, q);
    }

    #[test]
    fn lambda00_past_x0() {
        let p = &GroupElement::l(0, 0) * &GroupElement::x(0);
        let l00 = GroupElement::l(0, 0);
        let m1 = &l00 - &GroupElement::one();
        let corr = &(&m1 * &l00) + &m1;
        let expect = &(&GroupElement::x(0) * &l00) - &corr.scale(&h());
        assert_eq!(p, expect);
    }

    #[test]
    fn unit_and_associativity_instance() {
        let a = &GroupElement::x(0) * &GroupElement::x(1);
        assert_eq!(&GroupElement::one() * &a, a);
        let lhs = &a * &GroupElement::x(0);
        let rhs = &GroupElement::x(0) * &(&GroupElement::x(1) * &GroupElement::x(0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_examples() {
        assert!(GroupElement::x(0).counit().is_zero());
        assert!(GroupElement::l(0, 0).counit().is_one());
        let a = &(&GroupElement::x(0) * &GroupElement::x(1)) + &GroupElement::l(1, 1).scale(&KScalar::from_int(5));
        assert_eq!(a.counit(), KScalar::from_int(5));
    }

    #[test]
    fn antipode_of_x0() {
        let s = GroupElement::x(0).antipode();
        let mut expect = GroupElement::zero();
        expect = &expect - &(&GroupElement::l(0, 0) * &GroupElement::x(0));
        expect = &expect + &(&GroupElement::l(1, 0) * &GroupElement::x(1));
        expect = &expect + &(&GroupElement::l(2, 0) * &GroupElement::x(2));
        assert_eq!(s, expect);
        assert_eq!(GroupElement::one().antipode(), GroupElement::one());
        assert_eq!(GroupElement::l(0, 1).antipode(), -&GroupElement::l(1, 0));
    }

    #[test]
    fn star_examples() {
        assert_eq!(GroupElement::x(0).star(), GroupElement::x(0));
        assert_eq!(GroupElement::x(1).scale(&h()).star(), GroupElement::x(1).scale(&-h()));
        let p = &GroupElement::x(1) * &GroupElement::x(0);
        assert_eq!(p.star(), &GroupElement::x(0) * &GroupElement::x(1));
    }

    #[test]
    fn coproduct_of_x1() {
        let d = GroupElement::x(1).coproduct();
        assert_eq!(d.len(), 4);
        assert_eq!(GroupElement::one().coproduct(), TensorElement::one(2));
        let lhs = (&GroupElement::x(1) * &GroupElement::x(2)).coproduct();
        let rhs = GroupElement::x(1).coproduct().mul(&GroupElement::x(2).coproduct());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rewriting_never_raises_x_degree() {
        for a in GGen::all() {
            for b in GGen::all() {
                let p = &GroupElement::gen(a) * &GroupElement::gen(b);
                let xd = GMonomial::gen(a).x_degree() + GMonomial::gen(b).x_degree();
                assert!(p.x_degree() <= xd);
                assert!(p.degree() <= 2);
            }
        }
    }

    #[test]
    fn weight_components_are_homogeneous() {
        let p = &(&GroupElement::l(0, 1) * &GroupElement::x(0)) * &GroupElement::x(2);
        let comps = p.weight_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(*comps.keys().next().unwrap(), 2);
    }
}
