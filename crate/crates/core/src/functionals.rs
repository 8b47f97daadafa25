//! Linear functionals on the group algebra: the left-invariant vector
//! fields read off from `d` (CALC), the same fields as elements of the dual
//! algebra paired with the group (DUAL), and formal combinations of them
//! under the convolution product `(φψ)(a) = (φ⊗ψ)Δ(a)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::calculus::{Calculus, N};
use crate::dual::{chi_defs, pair, pair_with, DualElement, LorentzConvention};
use crate::galg::{clear_caches, mono_counit, GMonomial, GroupElement};
use crate::ideal::QLabel;
use crate::lorentz::lambda_monomials;
use crate::scalar::KScalar;

pub type Table = HashMap<GMonomial, KScalar>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Backend {
    #[default]
    Calc,
    Dual,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Calc => "CALC",
            Backend::Dual => "DUAL",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Functional {
    Counit,
    /// `Σ c_l ε(coefficient of ω_l in da)`.
    Calc(Vec<(usize, KScalar)>),
    /// `ε(coefficient of ω_i in ω_j·a)`.
    Fji(usize, usize),
    /// `a ↦ ⟨a, X⟩`.
    Dual(DualElement, LorentzConvention),
    Sum(Vec<(KScalar, Functional)>),
    Conv(Box<Functional>, Box<Functional>),
    /// `φ*(a) = conj(φ(S(a)*))`.
    Star(Box<Functional>),
}

impl Functional {
    pub fn dual(x: DualElement) -> Self {
        Functional::Dual(x, LorentzConvention::Standard)
    }

    pub fn label(l: QLabel) -> Self {
        Functional::Calc(vec![(l.index(), KScalar::one())])
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        Functional::Sum(vec![(c.clone(), self.clone())])
    }

    pub fn add(&self, o: &Functional) -> Self {
        Functional::Sum(vec![(KScalar::one(), self.clone()), (KScalar::one(), o.clone())])
    }

    pub fn sub(&self, o: &Functional) -> Self {
        Functional::Sum(vec![(KScalar::one(), self.clone()), (KScalar::from_int(-1), o.clone())])
    }

    pub fn conv(&self, o: &Functional) -> Self {
        Functional::Conv(Box::new(self.clone()), Box::new(o.clone()))
    }

    /// Plain convolution commutator `φψ − ψφ`.
    pub fn bracket(&self, o: &Functional) -> Self {
        self.conv(o).sub(&o.conv(self))
    }

    pub fn star(&self) -> Self {
        Functional::Star(Box::new(self.clone()))
    }

    /// Values on every monomial of `monos`.
    pub fn table(&self, monos: &[GMonomial]) -> Table {
        match self {
            Functional::Counit => monos.iter().map(|m| (*m, mono_counit(m))).collect(),
            Functional::Calc(ls) => monos
                .par_iter()
                .map(|m| {
                    let row = calc_row(m);
                    let mut v = KScalar::zero();
                    for (l, c) in ls {
                        v += &(c * &row[*l]);
                    }
                    (*m, v)
                })
                .collect(),
            Functional::Fji(j, i) => monos.par_iter().map(|m| (*m, fji_row(m)[N * j + i].clone())).collect(),
            Functional::Dual(x, conv) => monos
                .par_iter()
                .map(|m| (*m, pair_with(&GroupElement::mono(*m), x, *conv)))
                .collect(),
            Functional::Sum(parts) => {
                let mut out: Table = monos.iter().map(|m| (*m, KScalar::zero())).collect();
                for (c, f) in parts {
                    let t = f.table(monos);
                    for (m, v) in out.iter_mut() {
                        *v += &(c * &t[m]);
                    }
                }
                out
            }
            Functional::Conv(a, b) => {
                let cops: Vec<Arc<Coproduct>> = monos.iter().map(coproduct).collect();
                let mut left = HashSet::new();
                let mut right = HashSet::new();
                for cp in &cops {
                    for (l, r, _) in cp.iter() {
                        left.insert(*l);
                        right.insert(*r);
                    }
                }
                let ta = a.table(&left.into_iter().collect::<Vec<_>>());
                let tb = b.table(&right.into_iter().collect::<Vec<_>>());
                monos
                    .iter()
                    .zip(&cops)
                    .map(|(m, cp)| {
                        let mut v = KScalar::zero();
                        for (l, r, c) in cp.iter() {
                            let x = &ta[l];
                            if !x.is_zero() {
                                v += &(&(c * x) * &tb[r]);
                            }
                        }
                        (*m, v)
                    })
                    .collect()
            }
            Functional::Star(a) => {
                let images: Vec<Arc<GroupElement>> = star_images(monos);
                let mut all = HashSet::new();
                for e in &images {
                    all.extend(e.terms().map(|(n, _)| *n));
                }
                let ta = a.table(&all.into_iter().collect::<Vec<_>>());
                monos
                    .iter()
                    .zip(&images)
                    .map(|(m, e)| {
                        let mut v = KScalar::zero();
                        for (n, c) in e.terms() {
                            v += &(c * &ta[n]);
                        }
                        (*m, v.star())
                    })
                    .collect()
            }
        }
    }

    /// `φ(a)`, linear in `a`.
    pub fn eval(&self, a: &GroupElement) -> KScalar {
        let monos: Vec<GMonomial> = a.terms().map(|(m, _)| *m).collect();
        let t = self.table(&monos);
        let mut v = KScalar::zero();
        for (m, c) in a.terms() {
            v += &(c * &t[m]);
        }
        v
    }
}

type Coproduct = Vec<(GMonomial, GMonomial, KScalar)>;

fn coproduct(m: &GMonomial) -> Arc<Coproduct> {
    static CACHE: OnceLock<RwLock<HashMap<GMonomial, Arc<Coproduct>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(m) {
        return c.clone();
    }
    let t = GroupElement::mono(*m).coproduct();
    let v: Arc<Coproduct> = Arc::new(t.terms().map(|(legs, c)| (legs[0], legs[1], c.clone())).collect());
    cache.write().unwrap().entry(*m).or_insert(v).clone()
}

/// `S(m)*` for every monomial. The rewriting caches grow quickly on these
/// images, so they are computed in chunks and the caches dropped in between.
fn star_images(monos: &[GMonomial]) -> Vec<Arc<GroupElement>> {
    static CACHE: OnceLock<RwLock<HashMap<GMonomial, Arc<GroupElement>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let missing: Vec<GMonomial> = {
        let c = cache.read().unwrap();
        monos.iter().filter(|m| !c.contains_key(*m)).copied().collect()
    };
    for chunk in missing.chunks(64) {
        let imgs: Vec<(GMonomial, Arc<GroupElement>)> =
            chunk.iter().map(|m| (*m, Arc::new(GroupElement::mono(*m).antipode().star()))).collect();
        clear_caches();
        cache.write().unwrap().extend(imgs);
    }
    let c = cache.read().unwrap();
    monos.iter().map(|m| c[m].clone()).collect()
}

/// `ε` of every coefficient of `d(m)`.
fn calc_row(m: &GMonomial) -> Arc<Vec<KScalar>> {
    static CACHE: OnceLock<RwLock<HashMap<GMonomial, Arc<Vec<KScalar>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(m) {
        return c.clone();
    }
    let d = Calculus::global().d(&GroupElement::mono(*m));
    let v = Arc::new(d.coeffs.iter().map(|c| c.counit()).collect());
    cache.write().unwrap().entry(*m).or_insert(v).clone()
}

/// `ε` of the coefficient of `ω_i` in `ω_j·m`, stored at `N*j + i`.
fn fji_row(m: &GMonomial) -> Arc<Vec<KScalar>> {
    static CACHE: OnceLock<RwLock<HashMap<GMonomial, Arc<Vec<KScalar>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(m) {
        return c.clone();
    }
    let c = Calculus::global();
    let e = GroupElement::mono(*m);
    let mut v = Vec::with_capacity(N * N);
    for j in 0..N {
        let f = c.rmul_basis(j, &e);
        v.extend(f.coeffs.iter().map(|x| x.counit()));
    }
    let v = Arc::new(v);
    cache.write().unwrap().entry(*m).or_insert(v).clone()
}

// ---------------------------------------------------------------------------
// Named functionals

/// Names of the left-invariant vector fields, in a fixed order.
pub const NAMES: [&str; 8] = ["chi0", "chi1", "chi2", "chi", "lambda", "m", "l1", "l2"];

/// The label whose coefficient in `da` a named functional reads, and the
/// sign relating them: `m = χ_12 = −c_{ω^1_2}`, `l_i = χ_{i0} = c_{ω^0_i}`.
pub fn calc_label(name: &str) -> Option<(QLabel, i64)> {
    Some(match name {
        "chi0" => (QLabel::WX(0), 1),
        "chi1" => (QLabel::WX(1), 1),
        "chi2" => (QLabel::WX(2), 1),
        "chi" => (QLabel::WPhi, 1),
        "lambda" => (QLabel::WOm, 1),
        "m" => (QLabel::W(1, 2), -1),
        "l1" => (QLabel::W(0, 1), 1),
        "l2" => (QLabel::W(0, 2), 1),
        _ => return None,
    })
}

pub fn dual_element(name: &str) -> Option<DualElement> {
    chi_defs().get(name).cloned()
}

pub fn named(name: &str, backend: Backend) -> Option<Functional> {
    match backend {
        Backend::Calc => calc_label(name).map(|(l, s)| Functional::Calc(vec![(l.index(), KScalar::from_int(s))])),
        Backend::Dual => dual_element(name).map(Functional::dual),
    }
}

/// All named functionals for one backend, in `NAMES` order.
pub struct Named {
    pub chi0: Functional,
    pub chi_i: [Functional; 2],
    pub chi: Functional,
    pub lambda: Functional,
    pub m: Functional,
    pub l: [Functional; 2],
}

impl Named {
    pub fn new(backend: Backend) -> Self {
        let f = |n: &str| named(n, backend).unwrap();
        Named {
            chi0: f("chi0"),
            chi_i: [f("chi1"), f("chi2")],
            chi: f("chi"),
            lambda: f("lambda"),
            m: f("m"),
            l: [f("l1"), f("l2")],
        }
    }

    /// `χ_μ` for `μ = 0, 1, 2`.
    pub fn chi_mu(&self, mu: usize) -> &Functional {
        if mu == 0 {
            &self.chi0
        } else {
            &self.chi_i[mu - 1]
        }
    }

    /// `χ_{μν}`, antisymmetric, with `χ_12 = m` and `χ_{i0} = l_i`.
    pub fn chi_lower(&self, mu: usize, nu: usize) -> Functional {
        match (mu, nu) {
            (1, 2) => self.m.clone(),
            (2, 1) => self.m.scale(&KScalar::from_int(-1)),
            (i, 0) if i > 0 => self.l[i - 1].clone(),
            (0, i) if i > 0 => self.l[i - 1].scale(&KScalar::from_int(-1)),
            _ => Functional::Sum(vec![]),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Functional> {
        Some(match name {
            "chi0" => &self.chi0,
            "chi1" => &self.chi_i[0],
            "chi2" => &self.chi_i[1],
            "chi" => &self.chi,
            "lambda" => &self.lambda,
            "m" => &self.m,
            "l1" => &self.l[0],
            "l2" => &self.l[1],
            _ => return None,
        })
    }
}

// ---------------------------------------------------------------------------
// Test basis

/// Normal-ordered monomials with x-degree ≤ `xd` and Λ-degree ≤ `ld`.
pub fn test_basis(xd: usize, ld: usize) -> Vec<GMonomial> {
    let mut xs = Vec::new();
    for a in 0..=xd {
        for b in 0..=xd - a {
            for c in 0..=xd - a - b {
                xs.push([a as u8, b as u8, c as u8]);
            }
        }
    }
    xs.sort_by_key(|x| (x.iter().map(|&v| v as usize).sum::<usize>(), std::cmp::Reverse(*x)));
    let mut out = Vec::new();
    for l in lambda_monomials(ld) {
        for x in &xs {
            out.push(GMonomial { x: *x, l });
        }
    }
    out.sort_by_key(|m| (m.x.iter().chain(&m.l).map(|&v| v as usize).sum::<usize>(), std::cmp::Reverse(*m)));
    out
}

/// First monomial on which the two tables differ.
pub fn first_difference(monos: &[GMonomial], a: &Table, b: &Table) -> Option<(GMonomial, KScalar, KScalar)> {
    monos.iter().find(|m| a[*m] != b[*m]).map(|m| (*m, a[m].clone(), b[m].clone()))
}

/// First monomial on which `t` is nonzero.
pub fn first_nonzero(monos: &[GMonomial], t: &Table) -> Option<(GMonomial, KScalar)> {
    monos.iter().find(|m| !t[*m].is_zero()).map(|m| (*m, t[m].clone()))
}

/// `φ(a)` for a named functional through one backend.
pub fn eval_named(name: &str, backend: Backend, a: &GroupElement) -> Option<KScalar> {
    named(name, backend).map(|f| f.eval(a))
}

/// `⟨a, X⟩` for a dual element with the standard convention.
pub fn pair_dual(a: &GroupElement, x: &DualElement) -> KScalar {
    pair(a, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::phi;

    #[test]
    fn chi0_on_x0_both_backends() {
        let x0 = GroupElement::x(0);
        assert_eq!(eval_named("chi0", Backend::Calc, &x0).unwrap(), KScalar::one());
        assert_eq!(eval_named("chi0", Backend::Dual, &x0).unwrap(), KScalar::one());
        assert!(eval_named("chi1", Backend::Calc, &x0).unwrap().is_zero());
    }

    #[test]
    fn chi_on_phi_both_backends() {
        assert_eq!(eval_named("chi", Backend::Calc, &phi()).unwrap(), KScalar::one());
        assert_eq!(eval_named("chi", Backend::Dual, &phi()).unwrap(), KScalar::one());
    }

    #[test]
    fn named_functionals_annihilate_one() {
        for n in NAMES {
            for b in [Backend::Calc, Backend::Dual] {
                assert!(eval_named(n, b, &GroupElement::one()).unwrap().is_zero(), "{} {}", n, b);
            }
        }
    }

    #[test]
    fn counit_is_convolution_unit() {
        let f = named("chi0", Backend::Calc).unwrap();
        let basis = test_basis(2, 1);
        let a = Functional::Counit.conv(&f).table(&basis);
        let b = f.conv(&Functional::Counit).table(&basis);
        let c = f.table(&basis);
        assert!(first_difference(&basis, &a, &c).is_none());
        assert!(first_difference(&basis, &b, &c).is_none());
    }

    #[test]
    fn test_basis_size() {
        assert_eq!(test_basis(3, 2).len(), 20 * 55);
        assert_eq!(test_basis(0, 0), vec![GMonomial::one()]);
    }
}
