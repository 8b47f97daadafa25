//! The right ideal defining the calculus, the eight-dimensional quotient
//! `ker ε / R`, and reduction onto it.
//!
//! Reduction works on graded slices: elements of degree ≤ D are mapped to
//! evaluation coordinates (the Λ-coefficient of each x-monomial evaluated at
//! certified SO(2,1) points), which quotients out Lorentz orthogonality, and
//! the truncated ideal is the row space of all `generator · monomial`
//! products of degree ≤ D. All generators are homogeneous for the weight
//! `deg_x + deg_{i/κ}`, so the linear algebra runs over Q at `i/κ = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galg::{delta, levi, metric, GMonomial, GroupElement};
use crate::linalg::{Combiner, Echelon};
use crate::lorentz::{certified_points, lambda_monomials, lambda_value, Mat3};
use crate::scalar::{GaussianRational, KScalar, Rat, Ring};

/// Labels of the quotient basis and of the left-invariant 1-forms, in the
/// fixed global order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QLabel {
    W(u8, u8),
    WX(u8),
    WPhi,
    WOm,
}

pub const NLABELS: usize = 8;

impl QLabel {
    pub const ALL: [QLabel; NLABELS] = [
        QLabel::W(0, 1),
        QLabel::W(0, 2),
        QLabel::W(1, 2),
        QLabel::WX(0),
        QLabel::WX(1),
        QLabel::WX(2),
        QLabel::WPhi,
        QLabel::WOm,
    ];

    pub fn index(&self) -> usize {
        match self {
            QLabel::W(0, 1) => 0,
            QLabel::W(0, 2) => 1,
            QLabel::W(1, 2) => 2,
            QLabel::WX(m) => 3 + *m as usize,
            QLabel::WPhi => 6,
            QLabel::WOm => 7,
            QLabel::W(a, b) => panic!("non-canonical label W({},{})", a, b),
        }
    }

    pub fn from_index(i: usize) -> QLabel {
        Self::ALL[i]
    }

    /// Weight `deg_x + deg_{i/κ}` of the corresponding quotient element.
    pub fn weight(&self) -> i32 {
        match self {
            QLabel::W(..) => 0,
            QLabel::WX(_) => 1,
            QLabel::WPhi => 2,
            QLabel::WOm => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            QLabel::W(a, b) => format!("w[{},{}]", a, b),
            QLabel::WX(m) => format!("w{}", m),
            QLabel::WPhi => "w".to_string(),
            QLabel::WOm => "Om".to_string(),
        }
    }
}

impl fmt::Display for QLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Index conventions for the ideal generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct IdealVariant {
    /// Use the printed `δ^μ_ν` (instead of `δ^α_ν`) in the last term of
    /// `Δ^μ_ν{}^α`.
    pub printed_delta: bool,
}

fn k(n: i64) -> KScalar {
    KScalar::from_int(n)
}

fn h() -> KScalar {
    KScalar::i_over_kappa()
}

fn one() -> GroupElement {
    GroupElement::one()
}

/// `Λ^{μν} = Λ^μ_ρ g^{ρν}`.
pub fn l_upper(mu: usize, nu: usize) -> GroupElement {
    GroupElement::l(mu, nu).scale(&k(metric(nu)))
}

/// `Δ^μ_ν = Λ^μ_ν − δ^μ_ν`.
pub fn delta2(mu: usize, nu: usize) -> GroupElement {
    &GroupElement::l(mu, nu) - &one().scale(&k(delta(mu, nu)))
}

/// `Δ^μ_ν{}^α`.
pub fn delta3_mixed(mu: usize, nu: usize, al: usize, v: IdealVariant) -> GroupElement {
    let lead = &GroupElement::x(al) * &delta2(mu, nu);
    let gma = if mu == al { metric(mu) } else { 0 };
    let a = (&l_upper(mu, al) - &one().scale(&k(gma))).scale(&k(delta(0, nu)));
    let last_delta = if v.printed_delta { delta(mu, nu) } else { delta(al, nu) };
    let b = &GroupElement::l(mu, 0) * &(&GroupElement::l(al, nu) - &one().scale(&k(last_delta)));
    &lead - &(&a + &b).scale(&h())
}

/// `Δ^{μνα} = g^{νν} Δ^μ_ν{}^α`.
pub fn delta3(mu: usize, nu: usize, al: usize, v: IdealVariant) -> GroupElement {
    delta3_mixed(mu, nu, al, v).scale(&k(metric(nu)))
}

/// `Δ = ε_{μνα} Δ^{μνα}`.
pub fn delta_scalar(v: IdealVariant) -> GroupElement {
    let mut out = GroupElement::zero();
    for (a, b, c) in perms() {
        out = &out + &delta3(a, b, c, v).scale(&k(levi(a, b, c)));
    }
    out
}

fn perms() -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if levi(a, b, c) != 0 {
                    v.push((a, b, c));
                }
            }
        }
    }
    v
}

/// `Δ̃^{μνα} = Δ^{μνα} − (1/6) ε^{μνα} Δ`.
pub fn delta3_tilde(mu: usize, nu: usize, al: usize, v: IdealVariant) -> GroupElement {
    let e = levi(mu, nu, al);
    let base = delta3(mu, nu, al, v);
    if e == 0 {
        return base;
    }
    &base - &delta_scalar(v).scale(&KScalar::from_ratio(e, 6))
}

/// `x^{μν} = x^μ x^ν + (i/κ)(g^{μν} x^0 − g^{0μ} x^ν)`.
pub fn xx(mu: usize, nu: usize) -> GroupElement {
    let gmn = if mu == nu { metric(mu) } else { 0 };
    let corr = &GroupElement::x(0).scale(&k(gmn)) - &GroupElement::x(nu).scale(&k(delta(0, mu)));
    &(&GroupElement::x(mu) * &GroupElement::x(nu)) + &corr.scale(&h())
}

/// `φ = x^α{}_α = x² + (2i/κ) x^0`.
pub fn phi() -> GroupElement {
    let mut out = GroupElement::zero();
    for a in 0..3 {
        out = &out + &xx(a, a).scale(&k(metric(a)));
    }
    out
}

/// `x̃^{μν} = x^{μν} − (1/3) g^{μν} φ`.
pub fn xx_tilde(mu: usize, nu: usize) -> GroupElement {
    if mu != nu {
        return xx(mu, nu);
    }
    &xx(mu, nu) - &phi().scale(&KScalar::from_ratio(metric(mu), 3))
}

/// The quotient basis element for a label.
pub fn basis_element(l: QLabel, v: IdealVariant) -> GroupElement {
    match l {
        QLabel::W(a, b) => delta2(a as usize, b as usize),
        QLabel::WX(m) => GroupElement::x(m as usize),
        QLabel::WPhi => phi(),
        QLabel::WOm => delta_scalar(v),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    Quad(u8, u8, u8, u8),
    TTilde(u8, u8, u8),
    XTilde(u8, u8),
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::Quad(a, b, m, n) => write!(f, "D[{},{}]*D[{},{}]", a, b, m, n),
            GenKind::TTilde(m, n, a) => write!(f, "Dt[{},{},{}]", m, n, a),
            GenKind::XTilde(m, n) => write!(f, "xt[{},{}]", m, n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdealGenerator {
    pub kind: GenKind,
    pub element: GroupElement,
}

/// Every tensor component of the three generator families.
pub fn all_components(v: IdealVariant) -> Vec<IdealGenerator> {
    let mut out = Vec::new();
    for p in 0..9 {
        for q in p..9 {
            let (a, b, m, n) = (p / 3, p % 3, q / 3, q % 3);
            out.push(IdealGenerator {
                kind: GenKind::Quad(a as u8, b as u8, m as u8, n as u8),
                element: &delta2(a, b) * &delta2(m, n),
            });
        }
    }
    for m in 0..3 {
        for n in 0..3 {
            for a in 0..3 {
                out.push(IdealGenerator {
                    kind: GenKind::TTilde(m as u8, n as u8, a as u8),
                    element: delta3_tilde(m, n, a, v),
                });
            }
        }
    }
    for m in 0..3 {
        for n in m..3 {
            out.push(IdealGenerator { kind: GenKind::XTilde(m as u8, n as u8), element: xx_tilde(m, n) });
        }
    }
    out
}

/// A maximal linearly independent (modulo orthogonality) subfamily of
/// [`all_components`], in order.
pub fn generators(v: IdealVariant) -> Vec<IdealGenerator> {
    let layout = Layout::new(2);
    let mut ech = Echelon::<Rat>::new(layout.width);
    let mut out = Vec::new();
    for g in all_components(v) {
        let (re, im) = layout.coords(&g.element).expect("generator of degree ≤ 2");
        let mut fresh = ech.insert(&re);
        if im.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            fresh |= ech.insert(&im);
        }
        if fresh {
            out.push(g);
        }
    }
    out
}

/// Evaluation coordinates for elements of total degree ≤ D at `i/κ = 1`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub degree: usize,
    blocks: BTreeMap<[u8; 3], (usize, usize, Vec<Mat3>)>,
    pub width: usize,
}

pub fn x_monomials(d: usize) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for tot in 0..=d {
        for a in (0..=tot).rev() {
            for b in (0..=tot - a).rev() {
                out.push([a as u8, b as u8, (tot - a - b) as u8]);
            }
        }
    }
    out
}

impl Layout {
    pub fn new(degree: usize) -> Self {
        let mut blocks = BTreeMap::new();
        let mut off = 0;
        for x in x_monomials(degree) {
            let xd = x.iter().map(|&a| a as usize).sum::<usize>();
            let ld = degree - xd;
            let pts = certified_points(ld).points.clone();
            let n = pts.len();
            blocks.insert(x, (off, ld, pts));
            off += n;
        }
        Layout { degree, blocks, width: off }
    }

    /// Real and imaginary coordinate vectors of `e` specialised at κ = i.
    pub fn coords(&self, e: &GroupElement) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let zero = Rat::from_integer(0.into());
        let mut re = vec![zero.clone(); self.width];
        let mut im = vec![zero; self.width];
        for (m, c) in e.terms() {
            let (off, ld, pts) = self.blocks.get(&m.x).ok_or(Error::DegreeOutOfRange(m.degree()))?;
            if m.l_degree() > *ld {
                return Err(Error::DegreeOutOfRange(m.degree()));
            }
            let g = c.at_kappa_i();
            for (j, p) in pts.iter().enumerate() {
                let v = Rat::from_integer(lambda_value(p, &m.l));
                re[off + j] += &g.re * &v;
                im[off + j] += &g.im * &v;
            }
        }
        Ok((re, im))
    }
}

/// Coordinates of an element of `ker ε / R` on the eight basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoords(pub Vec<KScalar>);

impl QuotientCoords {
    pub fn zero() -> Self {
        QuotientCoords(vec![KScalar::zero(); NLABELS])
    }

    pub fn get(&self, l: QLabel) -> &KScalar {
        &self.0[l.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for QuotientCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            QLabel::ALL.iter().zip(&self.0).map(|(l, c)| format!("{}: {}", l.name(), c)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Truncated quotient `(ker ε ∩ V_≤D) / (R_≤D + orthogonality)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub degree: usize,
    pub variant: IdealVariant,
    layout: Layout,
    relations: Echelon<Rat>,
    basis: Option<Combiner<Rat>>,
    pub relation_rows: usize,
}

/// All normal-ordered monomials of total degree ≤ d.
pub fn monomials_upto(d: usize) -> Vec<GMonomial> {
    let mut out = Vec::new();
    for x in x_monomials(d) {
        let xd = x.iter().map(|&a| a as usize).sum::<usize>();
        for l in lambda_monomials(d - xd) {
            out.push(GMonomial { x, l });
        }
    }
    out
}

impl Quotient {
    pub fn build(degree: usize, variant: IdealVariant) -> Self {
        Self::build_from(degree, variant, &generators(variant).into_iter().map(|g| g.element).collect::<Vec<_>>())
    }

    /// Builds the truncated quotient for an arbitrary generating set.
    pub fn build_from(degree: usize, variant: IdealVariant, gens: &[GroupElement]) -> Self {
        let layout = Layout::new(degree);
        let mut relations = Echelon::new(layout.width);
        let mut rows = 0;
        for g in gens {
            let gd = g.degree();
            if gd > degree {
                continue;
            }
            for m in monomials_upto(degree - gd) {
                let e = g * &GroupElement::mono(m);
                let (re, im) = layout.coords(&e).expect("degree bounded");
                relations.insert(&re);
                if im.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    relations.insert(&im);
                }
                rows += 1;
            }
        }
        let mut q = Quotient { degree, variant, layout, relations, basis: None, relation_rows: rows };
        let fam: Vec<Vec<Rat>> = QLabel::ALL
            .iter()
            .filter(|l| (Self::label_degree(**l)) <= degree)
            .map(|l| {
                let (re, _) = q.layout.coords(&basis_element(*l, variant)).unwrap();
                q.relations.reduce(&re)
            })
            .collect();
        q.basis = Combiner::new(&fam);
        q
    }

    fn label_degree(l: QLabel) -> usize {
        match l {
            QLabel::W(..) | QLabel::WX(_) => 1,
            QLabel::WPhi | QLabel::WOm => 2,
        }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn rank(&self) -> usize {
        self.relations.rank()
    }

    /// `dim(ker ε ∩ V_≤D) − rank(relations)`.
    pub fn dim(&self) -> usize {
        self.layout.width - 1 - self.relations.rank()
    }

    /// True iff `e` lies in the truncated ideal (modulo orthogonality).
    pub fn contains(&self, e: &GroupElement) -> Result<bool> {
        for (_, comp) in e.weight_components() {
            let (re, im) = self.layout.coords(&comp)?;
            if !self.relations.contains(&re) || !self.relations.contains(&im) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `a − ε(a)` on the quotient basis.
    pub fn reduce(&self, a: &GroupElement) -> Result<QuotientCoords> {
        let basis = self.basis.as_ref().ok_or(Error::NotReducible(self.degree))?;
        let eps = a.counit();
        let a = a - &GroupElement::scalar(eps);
        let mut out = QuotientCoords::zero();
        for (w, comp) in a.weight_components() {
            let (re, im) = self.layout.coords(&comp)?;
            let cr = basis.express(&self.relations.reduce(&re)).ok_or(Error::NotReducible(self.degree))?;
            let ci = basis.express(&self.relations.reduce(&im)).ok_or(Error::NotReducible(self.degree))?;
            for (j, l) in QLabel::ALL.iter().enumerate() {
                let g = GaussianRational::new(cr[j].clone(), ci[j].clone());
                if !Ring::is_zero(&g) {
                    out.0[j] += &KScalar::from_h_power(&g, w - l.weight());
                }
            }
        }
        Ok(out)
    }
}

/// Commutative product (the classical limit of the group algebra).
pub fn commutative_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut out = GroupElement::zero();
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            let mut m = *m1;
            for i in 0..3 {
                m.x[i] += m2.x[i];
            }
            for i in 0..9 {
                m.l[i] += m2.l[i];
            }
            out.add_term(m, &(c1 * c2));
        }
    }
    out
}

/// `dim (ker ε ∩ V_≤D) / ((ker ε)² + orthogonality)` in the commutative
/// algebra of functions on the classical Poincaré group.
pub fn classical_quotient_dim(degree: usize) -> usize {
    let layout = Layout::new(degree);
    let mut lin: Vec<GroupElement> = (0..3).map(GroupElement::x).collect();
    for a in 0..3 {
        for b in 0..3 {
            lin.push(delta2(a, b));
        }
    }
    let mut ech = Echelon::<Rat>::new(layout.width);
    for (i, p) in lin.iter().enumerate() {
        for q in &lin[i..] {
            let g = commutative_mul(p, q);
            for m in monomials_upto(degree.saturating_sub(2)) {
                let e = commutative_mul(&g, &GroupElement::mono(m));
                let (re, _) = layout.coords(&e).unwrap();
                ech.insert(&re);
            }
        }
    }
    layout.width - 1 - ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv() -> IdealVariant {
        IdealVariant::default()
    }

    #[test]
    fn every_component_is_in_ker_eps() {
        for g in all_components(cv()) {
            assert!(g.element.counit().is_zero(), "{}", g.kind);
        }
    }

    #[test]
    fn printed_delta_leaves_ker_eps() {
        let v = IdealVariant { printed_delta: true };
        assert!(all_components(v).iter().any(|g| !g.element.counit().is_zero()));
    }

    #[test]
    fn xt12_is_x1x2() {
        assert_eq!(xx_tilde(1, 2), &GroupElement::x(1) * &GroupElement::x(2));
    }

    #[test]
    fn phi_expansion() {
        let x = GroupElement::x;
        let mut e = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        e = &e - &(&x(2) * &x(2));
        e = &e + &x(0).scale(&KScalar::i_over_kappa().scale_rat(&crate::scalar::rat_int(2)));
        assert_eq!(phi(), e);
    }

    #[test]
    fn delta3_tilde_is_traceless_in_the_antisymmetric_part() {
        let mut s = GroupElement::zero();
        for (a, b, c) in perms() {
            s = &s + &delta3_tilde(a, b, c, cv()).scale(&k(levi(a, b, c)));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn quotient_dim_two() {
        let q = Quotient::build(2, cv());
        assert_eq!(q.dim(), 8);
    }

    #[test]
    fn reduce_examples_at_degree_two() {
        let q = Quotient::build(2, cv());
        let x = GroupElement::x;
        assert!(q.reduce(&(&x(1) * &x(2))).unwrap().is_zero());
        let c = q.reduce(&phi()).unwrap();
        for l in QLabel::ALL {
            let want = if l == QLabel::WPhi { KScalar::one() } else { KScalar::zero() };
            assert_eq!(*c.get(l), want);
        }
        let c = q.reduce(&(&x(0) * &x(0))).unwrap();
        assert_eq!(*c.get(QLabel::WPhi), KScalar::from_ratio(1, 3));
        for l in QLabel::ALL {
            if l != QLabel::WPhi {
                assert!(c.get(l).is_zero(), "{} {}", l, c);
            }
        }
    }

    #[test]
    fn basis_elements_reduce_to_unit_vectors() {
        let q = Quotient::build(2, cv());
        for (i, l) in QLabel::ALL.iter().enumerate() {
            let c = q.reduce(&basis_element(*l, cv())).unwrap();
            for j in 0..NLABELS {
                assert_eq!(c.0[j], if i == j { KScalar::one() } else { KScalar::zero() });
            }
        }
    }

    #[test]
    fn classical_count() {
        assert_eq!(classical_quotient_dim(2), 6);
    }
}
