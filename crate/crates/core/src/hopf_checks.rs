//! Hopf-algebra axioms of the group algebra and of its dual, compatibility
//! of the structure maps with the defining relations, and the duality
//! between the two.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::dual::{
    antipode_contractions, coassociativity_sides, counit_contractions, eps2, pair_mono, p_vec_sq, DGen, DualElement,
    DualMonomial, DualTensor, LorentzConvention,
};
use crate::galg::{lx_commutator, mono_mul, GGen, GMonomial, GroupElement, TensorElement};
use crate::hopftools::{antipode_left_contraction, antipode_right_contraction, counit_contraction, delta_n, delta_n_left};
use crate::ideal::monomials_upto;
use crate::lorentz::{orthogonality_relation, tensor_vanishes, vanishes};
use crate::report::CheckResult;
use crate::scalar::{rat, KScalar};

fn ki(n: i64) -> KScalar {
    KScalar::i().scale_rat(&crate::scalar::rat_int(n))
}

/// Generators followed by every normal-ordered monomial of degree two.
pub fn hopf_sample(degree: usize) -> Vec<GMonomial> {
    monomials_upto(degree).into_iter().filter(|m| !m.is_one()).collect()
}

pub fn group_hopf_checks(degree: usize) -> Vec<CheckResult> {
    let sample = hopf_sample(degree);
    let find = |f: &(dyn Fn(&GroupElement) -> bool + Sync)| {
        sample.par_iter().find_map_first(|m| {
            let a = GroupElement::mono(*m);
            (!f(&a)).then(|| m.to_string())
        })
    };
    let coassoc = find(&|a| delta_n(a, 2).equals(&delta_n_left(a, 2)));
    let counit = find(&|a| counit_contraction(a, 0).equals(a) && counit_contraction(a, 1).equals(a));
    let antipode = find(&|a| {
        let e = GroupElement::scalar(a.counit());
        vanishes(&(&antipode_left_contraction(a) - &e)) && vanishes(&(&antipode_right_contraction(a) - &e))
    });
    let bound = format!("on generators and monomials of degree ≤ {}", degree);
    vec![
        CheckResult::from_witness("hopf.coassoc", format!("(Δ⊗id)Δ = (id⊗Δ)Δ {}", bound), coassoc),
        CheckResult::from_witness("hopf.counit", format!("(ε⊗id)Δ = (id⊗ε)Δ = id {}", bound), counit),
        CheckResult::from_witness("hopf.antipode", format!("m(S⊗id)Δ = m(id⊗S)Δ = ε {}", bound), antipode),
    ]
}

/// Printed right-hand side of `[a, b]` for group generators.
fn printed_group_commutator(a: GGen, b: GGen) -> GroupElement {
    let h = KScalar::i_over_kappa();
    match (a, b) {
        (GGen::X(m), GGen::X(n)) => {
            let (m, n) = (m as usize, n as usize);
            match (m, n) {
                (0, i) if i > 0 => GroupElement::x(i).scale(&h),
                (i, 0) if i > 0 => GroupElement::x(i).scale(&-&h),
                _ => GroupElement::zero(),
            }
        }
        (GGen::L(m, n), GGen::X(r)) => lx_commutator(m as usize, n as usize, r as usize),
        (GGen::X(r), GGen::L(m, n)) => -&lx_commutator(m as usize, n as usize, r as usize),
        (GGen::L(..), GGen::L(..)) => GroupElement::zero(),
    }
}

fn gen_pairs() -> Vec<(GGen, GGen)> {
    let g = GGen::all();
    let mut out = Vec::new();
    for (i, a) in g.iter().enumerate() {
        for b in &g[i + 1..] {
            out.push((*a, *b));
        }
    }
    out
}

fn orthogonality_relations() -> Vec<(String, GroupElement)> {
    let mut out = Vec::new();
    for columns in [false, true] {
        for mu in 0..3 {
            for nu in mu..3 {
                let tag = if columns { "col" } else { "row" };
                out.push((format!("{}({},{})", tag, mu, nu), orthogonality_relation(mu, nu, columns)));
            }
        }
    }
    out
}

/// `Δ`, `ε`, `S` and `*` applied to every commutation relation between
/// generators and to every orthogonality relation.
pub fn relation_checks() -> Vec<CheckResult> {
    let pairs = gen_pairs();
    let orth = orthogonality_relations();
    let comm = |a: GGen, b: GGen| {
        let (x, y) = (GroupElement::gen(a), GroupElement::gen(b));
        (x.clone(), y.clone(), &(&x * &y) - &(&y * &x))
    };
    let printed = pairs.par_iter().find_map_first(|&(a, b)| {
        let (_, _, c) = comm(a, b);
        (!c.equals(&printed_group_commutator(a, b))).then(|| format!("[{}, {}] = {}", a, b, c))
    });
    let coproduct = pairs
        .par_iter()
        .find_map_first(|&(a, b)| {
            let (x, y, c) = comm(a, b);
            let (dx, dy) = (x.coproduct(), y.coproduct());
            let diff = dx.mul(&dy).sub(&dy.mul(&dx)).sub(&c.coproduct());
            (!tensor_vanishes(&diff)).then(|| format!("[{}, {}]", a, b))
        })
        .or_else(|| orth.par_iter().find_map_first(|(n, r)| (!tensor_vanishes(&r.coproduct())).then(|| n.clone())));
    let counit = pairs
        .iter()
        .find_map(|&(a, b)| (!comm(a, b).2.counit().is_zero()).then(|| format!("[{}, {}]", a, b)))
        .or_else(|| orth.iter().find_map(|(n, r)| (!r.counit().is_zero()).then(|| n.clone())));
    let antipode = pairs
        .par_iter()
        .find_map_first(|&(a, b)| {
            let (x, y, c) = comm(a, b);
            let (sx, sy) = (x.antipode(), y.antipode());
            let diff = &(&(&sy * &sx) - &(&sx * &sy)) - &c.antipode();
            (!vanishes(&diff)).then(|| format!("[{}, {}]", a, b))
        })
        .or_else(|| orth.par_iter().find_map_first(|(n, r)| (!vanishes(&r.antipode())).then(|| n.clone())));
    let star = pairs
        .par_iter()
        .find_map_first(|&(a, b)| {
            let (x, y, c) = comm(a, b);
            let (sx, sy) = (x.star(), y.star());
            let diff = &(&(&sy * &sx) - &(&sx * &sy)) - &c.star();
            (!vanishes(&diff)).then(|| format!("[{}, {}]", a, b))
        })
        .or_else(|| orth.par_iter().find_map_first(|(n, r)| (!vanishes(&r.star())).then(|| n.clone())));
    vec![
        CheckResult::from_witness(
            "relations.printed",
            "[x^0, x^i] = (i/k) x^i, [x^1, x^2] = 0, [L, x] as printed, [L, L] = 0",
            printed,
        ),
        CheckResult::from_witness(
            "relations.coproduct",
            "Δ is a homomorphism on every generator commutator and orthogonality relation",
            coproduct,
        ),
        CheckResult::from_witness("relations.counit", "ε vanishes on every relation", counit),
        CheckResult::from_witness("relations.antipode", "S is an anti-homomorphism on every relation", antipode),
        CheckResult::from_witness("relations.star", "* is an antilinear anti-homomorphism on every relation", star),
    ]
}

fn dgen(g: DGen) -> DualElement {
    DualElement::gen(g)
}

/// Printed right-hand side of `[a, b]` for dual generators other than `E⁻¹`.
fn printed_dual_commutator(a: DGen, b: DGen) -> DualElement {
    let h = KScalar::i_over_kappa();
    let lorentz = |g: DGen| matches!(g, DGen::M | DGen::N(_));
    if !lorentz(a) && lorentz(b) {
        return -&printed_dual_commutator(b, a);
    }
    match (a, b) {
        _ if a == b => DualElement::zero(),
        (DGen::M, DGen::P(0)) | (DGen::M, DGen::E) => DualElement::zero(),
        (DGen::M, DGen::P(k)) => {
            let l = 3 - k as usize;
            DualElement::p(l).scale(&ki(eps2(k as usize, l)))
        }
        (DGen::M, DGen::N(k)) => {
            let l = 3 - k as usize;
            DualElement::n(l).scale(&ki(eps2(k as usize, l)))
        }
        (DGen::N(_), DGen::M) => -&printed_dual_commutator(b, a),
        (DGen::N(1), DGen::N(2)) => DualElement::m().scale(&ki(-1)),
        (DGen::N(2), DGen::N(1)) => DualElement::m().scale(&ki(1)),
        (DGen::N(i), DGen::P(0)) => DualElement::p(i as usize).scale(&ki(1)),
        (DGen::N(i), DGen::E) => (&DualElement::p(i as usize) * &DualElement::e_pow(1)).scale(&-&h),
        (DGen::N(i), DGen::P(j)) => {
            let (i, j) = (i as usize, j as usize);
            let mut out = (&DualElement::p(i) * &DualElement::p(j)).scale(&-&h);
            if i == j {
                let a = (&DualElement::one() - &DualElement::e_pow(2)).scale(&KScalar::kappa_pow(1).scale_rat(&rat(1, 2)));
                let b = p_vec_sq().scale(&KScalar::kappa_pow(-1).scale_rat(&rat(1, 2)));
                out = &out + &(&a + &b).scale(&ki(1));
            }
            out
        }
        _ => DualElement::zero(),
    }
}

/// Normal-ordered dual monomials of degree ≤ 2 reachable from products of
/// at most two generators, in a fixed order.
pub fn dual_sample() -> Vec<DualMonomial> {
    let gens: Vec<DualElement> = DGen::all().into_iter().map(dgen).collect();
    let mut set = BTreeSet::new();
    set.insert(DualMonomial::one());
    for a in &gens {
        set.extend(a.terms().map(|(m, _)| *m));
        for b in &gens {
            set.extend((a * b).terms().map(|(m, _)| *m).filter(|m| m.degree() <= 2));
        }
    }
    set.into_iter().collect()
}

pub fn dual_hopf_checks() -> Vec<CheckResult> {
    let gens: Vec<DGen> = DGen::all().into_iter().filter(|g| *g != DGen::EInv).collect();
    let mut pairs = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            pairs.push((*a, *b));
        }
    }
    let relations = pairs
        .iter()
        .find_map(|&(a, b)| {
            let c = dgen(a).commutator(&dgen(b));
            (c != printed_dual_commutator(a, b)).then(|| format!("[{}, {}] = {}", a, b, c))
        })
        .or_else(|| {
            let e = &DualElement::e_pow(1) * &DualElement::e_pow(-1);
            (e != DualElement::one()).then(|| format!("E Einv = {}", e))
        });
    let all: Vec<DualElement> = DGen::all().into_iter().map(dgen).collect();
    let jacobi = all.iter().enumerate().find_map(|(i, a)| {
        all.iter().enumerate().find_map(|(j, b)| {
            all.iter().enumerate().find_map(|(k, c)| {
                let s = &(&a.commutator(&b.commutator(c)) + &b.commutator(&c.commutator(a))) + &c.commutator(&a.commutator(b));
                (!s.is_zero()).then(|| format!("({}, {}, {})", i, j, k))
            })
        })
    });
    let sample = dual_sample();
    let axioms = |f: &(dyn Fn(&DualElement) -> bool + Sync)| {
        sample.par_iter().find_map_first(|m| {
            let a = DualElement::mono(*m);
            (!f(&a)).then(|| m.to_string())
        })
    };
    let coassoc = axioms(&|a| {
        let (l, r) = coassociativity_sides(a);
        l == r
    });
    let counit = axioms(&|a| {
        let (l, r) = counit_contractions(a);
        &l == a && &r == a
    });
    let antipode = axioms(&|a| {
        let (l, r) = antipode_contractions(a);
        let e = DualElement::scalar(a.counit());
        l == e && r == e
    });
    let homs = all.par_iter().enumerate().find_map_first(|(i, a)| {
        all.iter().enumerate().find_map(|(j, b)| {
            let ab = a * b;
            let delta = ab.coproduct() == a.coproduct().mul(&b.coproduct());
            let eps = ab.counit() == &a.counit() * &b.counit();
            let s = ab.antipode() == &b.antipode() * &a.antipode();
            (!(delta && eps && s)).then(|| format!("({}, {}) Δ:{} ε:{} S:{}", i, j, delta, eps, s))
        })
    });
    let e = DualElement::e_pow(1);
    let grouplike = (e.coproduct() != DualTensor::product_of(&[e.clone(), e.clone()])
        || !e.counit().is_one()
        || e.antipode() != DualElement::e_pow(-1))
    .then(|| format!("Δ(E) = {}", e.coproduct()));
    vec![
        CheckResult::from_witness("dual.relations", "commutation relations of M, N_i, P_mu, E as printed", relations),
        CheckResult::from_witness("dual.jacobi", "Jacobi identity on all generator triples", jacobi),
        CheckResult::from_witness("dual.coassoc", "(Δ⊗id)Δ = (id⊗Δ)Δ on monomials of degree ≤ 2", coassoc),
        CheckResult::from_witness("dual.counit", "(ε⊗id)Δ = (id⊗ε)Δ = id on monomials of degree ≤ 2", counit),
        CheckResult::from_witness("dual.antipode", "m(S⊗id)Δ = m(id⊗S)Δ = ε on monomials of degree ≤ 2", antipode),
        CheckResult::from_witness(
            "dual.homomorphisms",
            "Δ and ε multiplicative, S anti-multiplicative on generator products",
            homs,
        ),
        CheckResult::from_witness("dual.e_grouplike", "Δ(E) = E⊗E, ε(E) = 1, S(E) = Einv", grouplike),
    ]
}

fn pair_tensor(t: &TensorElement, u: &DualTensor, conv: LorentzConvention) -> KScalar {
    let mut out = KScalar::zero();
    for (legs, c) in t.terms() {
        for (dlegs, d) in u.terms() {
            let mut v = c * d;
            for (m, f) in legs.iter().zip(dlegs) {
                if v.is_zero() {
                    break;
                }
                v = &v * &pair_mono(m, f, conv);
            }
            out += &v;
        }
    }
    out
}

fn pair_el(a: &GroupElement, f: &DualElement, conv: LorentzConvention) -> KScalar {
    crate::dual::pair_with(a, f, conv)
}

/// Duality between the group algebra and the dual algebra on monomials of
/// total degree ≤ `degree`.
pub fn pairing_checks(degree: usize, conv: LorentzConvention) -> Vec<CheckResult> {
    let group = monomials_upto(degree);
    let dual = dual_sample();
    let mut gpairs = Vec::new();
    for a in &group {
        for b in &group {
            if a.degree() + b.degree() <= degree {
                gpairs.push((*a, *b));
            }
        }
    }
    let product = gpairs.par_iter().find_map_first(|(a, b)| {
        let ab = mono_mul(a, b);
        let t = TensorElement::product_of(&[GroupElement::mono(*a), GroupElement::mono(*b)]);
        dual.iter().find_map(|f| {
            let fe = DualElement::mono(*f);
            (pair_el(&ab, &fe, conv) != pair_tensor(&t, &fe.coproduct(), conv)).then(|| format!("<{}·{}, {}>", a, b, f))
        })
    });
    let products: Vec<Vec<DualElement>> = dual
        .iter()
        .map(|f| dual.iter().map(|g| &DualElement::mono(*f) * &DualElement::mono(*g)).collect())
        .collect();
    let coproduct = group.par_iter().find_map_first(|a| {
        let da = GroupElement::mono(*a).coproduct();
        let legs: BTreeSet<GMonomial> = da.terms().flat_map(|(k, _)| k.iter().copied()).collect();
        let table: std::collections::HashMap<GMonomial, Vec<KScalar>> =
            legs.iter().map(|m| (*m, dual.iter().map(|f| pair_mono(m, f, conv)).collect())).collect();
        let ae = GroupElement::mono(*a);
        (0..dual.len()).find_map(|i| {
            (0..dual.len()).find_map(|j| {
                let mut rhs = KScalar::zero();
                for (k, c) in da.terms() {
                    let (u, v) = (&table[&k[0]][i], &table[&k[1]][j]);
                    if !u.is_zero() && !v.is_zero() {
                        rhs += &(&(c * u) * v);
                    }
                }
                (pair_el(&ae, &products[i][j], conv) != rhs).then(|| format!("<{}, {}·{}>", a, dual[i], dual[j]))
            })
        })
    });
    let antipode = group.par_iter().find_map_first(|a| {
        let ae = GroupElement::mono(*a);
        let sa = ae.antipode();
        dual.iter().find_map(|f| {
            let fe = DualElement::mono(*f);
            (pair_el(&sa, &fe, conv) != pair_el(&ae, &fe.antipode(), conv)).then(|| format!("<S({}), {}>", a, f))
        })
    });
    let unit = dual
        .iter()
        .find_map(|f| {
            let fe = DualElement::mono(*f);
            (pair_el(&GroupElement::one(), &fe, conv) != fe.counit()).then(|| format!("<1, {}>", f))
        })
        .or_else(|| {
            group.iter().find_map(|a| {
                let ae = GroupElement::mono(*a);
                (pair_el(&ae, &DualElement::one(), conv) != ae.counit()).then(|| format!("<{}, 1>", a))
            })
        });
    let x0 = GroupElement::x(0);
    let spot = [
        ("<x0, P0>", pair_el(&x0, &DualElement::p(0), conv), KScalar::i()),
        ("<x0^2, E>", pair_el(&x0.pow(2), &DualElement::e_pow(1), conv), -&KScalar::kappa_pow(-2)),
    ]
    .into_iter()
    .find_map(|(n, got, want)| (got != want).then(|| format!("{} = {}, expected {}", n, got, want)));
    vec![
        CheckResult::from_witness(
            "pairing.product",
            format!("<ab, f> = <a⊗b, Δf> for deg a + deg b ≤ {} and dual monomials f of degree ≤ 2", degree),
            product,
        ),
        CheckResult::from_witness(
            "pairing.coproduct",
            format!("<a, fg> = <Δa, f⊗g> for deg a ≤ {} and dual monomials f, g of degree ≤ 2", degree),
            coproduct,
        ),
        CheckResult::from_witness("pairing.antipode", "<S(a), f> = <a, S(f)>", antipode),
        CheckResult::from_witness("pairing.unit", "<1, f> = ε(f) and <a, 1> = ε(a)", unit),
        CheckResult::from_witness("pairing.spot_values", "<x0, P0> = i and <x0^2, E> = -1/k^2", spot),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_group_commutators_on_x() {
        let c = &(&GroupElement::x(0) * &GroupElement::x(1)) - &(&GroupElement::x(1) * &GroupElement::x(0));
        assert_eq!(c, printed_group_commutator(GGen::X(0), GGen::X(1)));
    }

    #[test]
    fn dual_sample_contains_generators_and_unit() {
        let s = dual_sample();
        assert!(s.contains(&DualMonomial::one()));
        for g in DGen::all() {
            assert!(s.contains(&DualMonomial::gen(g)), "{}", g);
        }
        assert!(s.iter().all(|m| m.degree() <= 2));
    }

    #[test]
    fn pair_tensor_of_unit() {
        let one = TensorElement::one(2);
        let t = DualElement::p(0).coproduct();
        assert!(pair_tensor(&one, &t, LorentzConvention::Standard).is_zero());
    }
}
