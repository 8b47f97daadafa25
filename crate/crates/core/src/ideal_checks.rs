//! Ad-invariance, the printed adjoint-action formulas and star-antipode
//! closure of the ideal.

use rayon::prelude::*;

use crate::cocycle::QuotientMap;
use crate::galg::{GroupElement, TensorElement};
use crate::hopftools::ad;
use crate::ideal::{all_components, delta2, delta3, generators, l_upper, xx, IdealVariant};
use crate::report::CheckResult;
use crate::scalar::KScalar;

/// First legs of `ad(g)` contracted with the quotient coordinates and the
/// counit; `None` iff every contraction vanishes.
pub fn ad_witness(q: &QuotientMap, g: &GroupElement) -> Option<String> {
    let t = ad(g);
    let mut parts = vec![GroupElement::zero(); 9];
    for (legs, c) in t.terms() {
        let first = GroupElement::mono(legs[0]);
        let second = GroupElement::mono(legs[1]);
        let coords = q.coords(&first);
        for (k, x) in coords.0.iter().enumerate() {
            if !x.is_zero() {
                parts[k].add_scaled(&second, &(c * x));
            }
        }
        let e = first.counit();
        if !e.is_zero() {
            parts[8].add_scaled(&second, &(c * &e));
        }
    }
    parts
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(k, p)| if k == 8 { format!("(ε⊗id)ad = {}", p) } else { format!("(c_{}⊗id)ad = {}", k, p) })
}

/// `ad(R) ⊂ R ⊗ A`, checked on each independent generator.
pub fn ad_invariance_checks(v: IdealVariant) -> Vec<CheckResult> {
    let q = QuotientMap::global();
    generators(v)
        .par_iter()
        .map(|g| {
            CheckResult::from_witness(
                format!("ideal.ad.{}", g.kind),
                format!("ad({}) ∈ R⊗A", g.kind),
                ad_witness(q, &g.element),
            )
        })
        .collect()
}

fn li(nu: usize, mu: usize) -> GroupElement {
    GroupElement::l_inv(nu, mu)
}

fn tensor(a: &GroupElement, b: &GroupElement) -> TensorElement {
    TensorElement::product_of(&[a.clone(), b.clone()])
}

fn metric_k(mu: usize) -> KScalar {
    KScalar::from_int(crate::galg::metric(mu))
}

/// Printed right-hand side for `ad(Δ^α_β Δ^μ_ν)`.
pub fn printed_ad_quad(al: usize, be: usize, mu: usize, nu: usize) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for rho in 0..3 {
        for si in 0..3 {
            for ga in 0..3 {
                for de in 0..3 {
                    let first = &delta2(rho, si) * &delta2(ga, de);
                    let second = &(&(&li(rho, mu) * &GroupElement::l(si, nu)) * &li(ga, al)) * &GroupElement::l(de, be);
                    out = out.add(&tensor(&first, &second));
                }
            }
        }
    }
    out
}

/// Printed right-hand side for `ad(Δ^{μνα})`.
pub fn printed_ad_delta3(mu: usize, nu: usize, al: usize, v: IdealVariant) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for rho in 0..3 {
        for be in 0..3 {
            let outer = &li(rho, mu) * &li(be, al);
            for si in 0..3 {
                for ga in 0..3 {
                    let first = &delta2(rho, si) * &delta2(be, ga);
                    let second = &(&outer * &l_upper(si, nu)) * &GroupElement::x(ga);
                    out = out.add(&tensor(&first, &second));
                }
                out = out.add(&tensor(&delta3(rho, si, be, v), &(&outer * &li(si, nu))));
            }
        }
    }
    out
}

/// Printed right-hand side for `ad(x^{αβ})`.
pub fn printed_ad_xx(al: usize, be: usize, v: IdealVariant) -> TensorElement {
    let h = KScalar::i_over_kappa();
    let mut out = TensorElement::zero(2);
    for mu in 0..3 {
        for nu in 0..3 {
            let ll = &li(mu, al) * &li(nu, be);
            out = out.add(&tensor(&xx(mu, nu), &ll));
            for rho in 0..3 {
                let first = &delta3(mu, rho, nu, v) + &delta3(nu, rho, mu, v);
                let x_low = GroupElement::x(rho).scale(&metric_k(rho));
                out = out.add(&tensor(&first, &(&ll * &x_low)));
                for si in 0..3 {
                    let first = &delta2(mu, rho) * &delta2(nu, si);
                    let mut inner = &GroupElement::x(rho) * &GroupElement::x(si);
                    if rho == si {
                        inner = &inner - &GroupElement::x(0).scale(&(&h * &metric_k(rho)));
                    }
                    if si == 0 {
                        inner = &inner + &GroupElement::x(rho).scale(&(&h * &metric_k(0)));
                    }
                    out = out.add(&tensor(&first, &(&ll * &inner)));
                }
            }
        }
    }
    out
}

fn compare(id: String, statement: String, lhs: TensorElement, rhs: TensorElement) -> CheckResult {
    let diff = lhs.sub(&rhs);
    let w = if diff.is_zero() { None } else { Some(format!("{} terms in ad − printed", diff.len())) };
    CheckResult::from_witness(id, statement, w)
}

/// Compares `ad` of each generator family component with the printed
/// adjoint-action formulas.
pub fn printed_ad_checks(v: IdealVariant) -> Vec<CheckResult> {
    let mut jobs: Vec<Box<dyn Fn() -> CheckResult + Send + Sync>> = Vec::new();
    for p in 0..9 {
        for q in p..9 {
            let (a, b, m, n) = (p / 3, p % 3, q / 3, q % 3);
            jobs.push(Box::new(move || {
                compare(
                    format!("ideal.ad_formula.quad.{}{}{}{}", a, b, m, n),
                    format!("ad(D[{},{}]*D[{},{}]) = printed", a, b, m, n),
                    ad(&(&delta2(a, b) * &delta2(m, n))),
                    printed_ad_quad(a, b, m, n),
                )
            }));
        }
    }
    for m in 0..3 {
        for n in 0..3 {
            for a in 0..3 {
                jobs.push(Box::new(move || {
                    compare(
                        format!("ideal.ad_formula.delta3.{}{}{}", m, n, a),
                        format!("ad(D[{},{},{}]) = printed", m, n, a),
                        ad(&delta3(m, n, a, v)),
                        printed_ad_delta3(m, n, a, v),
                    )
                }));
            }
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            jobs.push(Box::new(move || {
                compare(
                    format!("ideal.ad_formula.xx.{}{}", a, b),
                    format!("ad(x[{},{}]) = printed", a, b),
                    ad(&xx(a, b)),
                    printed_ad_xx(a, b, v),
                )
            }));
        }
    }
    jobs.par_iter().map(|j| j()).collect()
}

/// `S(g)* ∈ R` for every generator component.
pub fn star_closure_checks(v: IdealVariant) -> Vec<CheckResult> {
    let q = QuotientMap::global();
    all_components(v)
        .par_iter()
        .map(|g| {
            let s = g.element.antipode().star();
            let w = if q.in_ideal(&s) {
                None
            } else {
                Some(format!("ε = {}, coords = {}", s.counit(), q.coords(&s)))
            };
            CheckResult::from_witness(format!("ideal.star.{}", g.kind), format!("S({})* ∈ R", g.kind), w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::xx_tilde;

    #[test]
    fn xtilde_is_ad_invariant() {
        let q = QuotientMap::global();
        assert_eq!(ad_witness(q, &xx_tilde(1, 2)), None);
        assert_eq!(ad_witness(q, &xx_tilde(0, 0)), None);
    }

    #[test]
    fn basis_element_is_not_ad_invariant() {
        let q = QuotientMap::global();
        assert!(ad_witness(q, &GroupElement::x(0)).is_some());
    }

    #[test]
    fn printed_quad_formula_holds() {
        assert!(ad(&(&delta2(0, 1) * &delta2(2, 2))).equals(&printed_ad_quad(0, 1, 2, 2)));
    }

    #[test]
    fn star_closure_examples() {
        let q = QuotientMap::global();
        assert!(q.in_ideal(&xx_tilde(1, 2).antipode().star()));
        let d = &delta2(0, 1) * &delta2(0, 1);
        assert!(q.in_ideal(&d.antipode().star()));
        assert!(q.in_ideal(&GroupElement::zero()));
    }
}
