//! The reduction map extended multiplicatively to the whole group algebra.
//!
//! Writing `c(b)` for the quotient coordinates of `b − ε(b)` and
//! `F(b)_{ik} = c_k(a_i b)` for the basis elements `a_i`, the right-ideal
//! property gives
//!
//! `c(bb') = c(b) F(b') + ε(b) c(b')`, `F(bb') = F(b) F(b')`,
//!
//! so both maps are fixed by their values on the twelve generators, which
//! only need the degree-3 quotient.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::Result;
use crate::galg::{mono_counit, GGen, GMonomial, GroupElement};
use crate::ideal::{basis_element, IdealVariant, QLabel, Quotient, QuotientCoords, NLABELS};
use crate::scalar::KScalar;

pub type KVec = Vec<KScalar>;
pub type KMat = Vec<Vec<KScalar>>;

pub fn kvec_zero() -> KVec {
    vec![KScalar::zero(); NLABELS]
}

pub fn kmat_identity() -> KMat {
    (0..NLABELS)
        .map(|i| (0..NLABELS).map(|j| if i == j { KScalar::one() } else { KScalar::zero() }).collect())
        .collect()
}

pub fn kmat_zero() -> KMat {
    vec![kvec_zero(); NLABELS]
}

pub fn kmat_mul(a: &KMat, b: &KMat) -> KMat {
    let mut out = kmat_zero();
    for i in 0..NLABELS {
        for k in 0..NLABELS {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..NLABELS {
                if !b[k][j].is_zero() {
                    out[i][j] += &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn kvec_mat(v: &KVec, m: &KMat) -> KVec {
    let mut out = kvec_zero();
    for k in 0..NLABELS {
        if v[k].is_zero() {
            continue;
        }
        for j in 0..NLABELS {
            if !m[k][j].is_zero() {
                out[j] += &(&v[k] * &m[k][j]);
            }
        }
    }
    out
}

fn kvec_axpy(out: &mut KVec, c: &KScalar, v: &KVec) {
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            *o += &(c * x);
        }
    }
}

fn kmat_axpy(out: &mut KMat, c: &KScalar, m: &KMat) {
    for (o, r) in out.iter_mut().zip(m) {
        kvec_axpy(o, c, r);
    }
}

type Entry = Arc<(KVec, KMat)>;

/// Multiplicative extension of the quotient map.
pub struct QuotientMap {
    variant: IdealVariant,
    quotient: Quotient,
    gens: HashMap<GGen, Entry>,
    cache: RwLock<HashMap<GMonomial, Entry>>,
}

impl QuotientMap {
    pub fn new(variant: IdealVariant) -> Result<Self> {
        let quotient = Quotient::build(3, variant);
        let basis: Vec<GroupElement> = QLabel::ALL.iter().map(|l| basis_element(*l, variant)).collect();
        let gens = GGen::all()
            .into_par_iter()
            .map(|g| -> Result<(GGen, Entry)> {
                let ge = GroupElement::gen(g);
                let c = quotient.reduce(&ge)?.0;
                let f = basis
                    .iter()
                    .map(|a| quotient.reduce(&(a * &ge)).map(|q| q.0))
                    .collect::<Result<KMat>>()?;
                Ok((g, Arc::new((c, f))))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(QuotientMap { variant, quotient, gens, cache: RwLock::new(HashMap::new()) })
    }

    /// Shared instance for the default ideal.
    pub fn global() -> &'static QuotientMap {
        static MAP: OnceLock<QuotientMap> = OnceLock::new();
        MAP.get_or_init(|| QuotientMap::new(IdealVariant::default()).expect("degree-3 quotient reduces generators"))
    }

    pub fn variant(&self) -> IdealVariant {
        self.variant
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    fn entry(&self, m: &GMonomial) -> Entry {
        if m.is_one() {
            return Arc::new((kvec_zero(), kmat_identity()));
        }
        if let Some(e) = self.cache.read().unwrap().get(m) {
            return e.clone();
        }
        let word = m.word();
        let last = *word.last().unwrap();
        let mut prefix = *m;
        match last {
            GGen::X(mu) => prefix.x[mu as usize] -= 1,
            GGen::L(a, b) => prefix.l[3 * a as usize + b as usize] -= 1,
        }
        let head = self.entry(&prefix);
        let tail = &self.gens[&last];
        let mut c = kvec_mat(&head.0, &tail.1);
        kvec_axpy(&mut c, &mono_counit(&prefix), &tail.0);
        let f = kmat_mul(&head.1, &tail.1);
        let e = Arc::new((c, f));
        self.cache.write().unwrap().insert(*m, e.clone());
        e
    }

    /// Quotient coordinates of `a − ε(a)`.
    pub fn coords(&self, a: &GroupElement) -> QuotientCoords {
        let mut out = kvec_zero();
        for (m, c) in a.terms() {
            kvec_axpy(&mut out, c, &self.entry(m).0);
        }
        QuotientCoords(out)
    }

    /// The right action matrix `F(a)`.
    pub fn matrix(&self, a: &GroupElement) -> KMat {
        let mut out = kmat_zero();
        for (m, c) in a.terms() {
            kmat_axpy(&mut out, c, &self.entry(m).1);
        }
        out
    }

    /// True iff `a ∈ R`, i.e. `ε(a) = 0` and all quotient coordinates vanish.
    pub fn in_ideal(&self, a: &GroupElement) -> bool {
        a.counit().is_zero() && self.coords(a).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::metric;
    use crate::ideal::{phi, xx};

    fn ortho(mu: usize, nu: usize) -> GroupElement {
        let mut e = GroupElement::scalar(KScalar::from_int(-metric(mu) * (mu == nu) as i64));
        for rho in 0..3 {
            e = &e + &(&GroupElement::l(mu, rho) * &GroupElement::l(nu, rho)).scale(&KScalar::from_int(metric(rho)));
        }
        e
    }

    #[test]
    fn agrees_with_direct_reduction_on_degree_two() {
        let q = QuotientMap::global();
        for a in GGen::all() {
            for b in GGen::all() {
                let e = &GroupElement::gen(a) * &GroupElement::gen(b);
                assert_eq!(q.coords(&e), q.quotient().reduce(&e).unwrap(), "{} {}", a, b);
            }
        }
    }

    #[test]
    fn orthogonality_relations_map_to_zero() {
        let q = QuotientMap::global();
        for mu in 0..3 {
            for nu in 0..3 {
                let r = ortho(mu, nu);
                assert!(r.is_zero());
                assert!(q.coords(&r).is_zero());
                let f = q.matrix(&r);
                assert!(f.iter().flatten().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn basis_maps_to_unit_vectors() {
        let q = QuotientMap::global();
        for (i, l) in QLabel::ALL.iter().enumerate() {
            let c = q.coords(&basis_element(*l, q.variant()));
            for j in 0..NLABELS {
                let expect = if i == j { KScalar::one() } else { KScalar::zero() };
                assert_eq!(c.0[j], expect);
            }
        }
    }

    #[test]
    fn agrees_with_direct_reduction_on_degree_three() {
        let q = QuotientMap::global();
        let cases = [
            &xx(0, 1) * &GroupElement::x(2),
            &phi() * &GroupElement::l(1, 2),
            &(&GroupElement::l(2, 0) * &GroupElement::x(1)) * &GroupElement::l(0, 0),
            &GroupElement::x(2).pow(2) * &GroupElement::x(0),
        ];
        for e in cases {
            assert_eq!(q.coords(&e), q.quotient().reduce(&e).unwrap());
        }
    }
}
