//! Structural checks of the first-order calculus: bimodule consistency,
//! Leibniz rule, coaction matrix, braiding flip, d² = 0, star compatibility
//! and the size of the space of two-forms.

use rayon::prelude::*;

use crate::calculus::{monomials_of_degree, Calculus, Form1, NPAIRS};
use crate::galg::{GGen, GroupElement, TensorElement};
use crate::ideal::{phi, QLabel};
use crate::lorentz::orthogonality_relation;
use crate::report::CheckResult;
use crate::scalar::KScalar;

fn gens() -> Vec<(String, GroupElement)> {
    GGen::all().into_iter().map(|g| (g.to_string(), GroupElement::gen(g))).collect()
}

fn gen_pairs() -> Vec<(String, GroupElement, GroupElement)> {
    let g = gens();
    let mut out = Vec::new();
    for (na, a) in &g {
        for (nb, b) in &g {
            out.push((format!("{}*{}", na, nb), a.clone(), b.clone()));
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

fn label(i: usize) -> String {
    QLabel::ALL[i].name()
}

/// Generators, φ and all degree-two monomials.
fn d2_sample() -> Vec<(String, GroupElement)> {
    let mut out = gens();
    out.push(("phi".into(), phi()));
    for m in monomials_of_degree(2) {
        let e = GroupElement::mono(m);
        out.push((e.to_string(), e));
    }
    out
}

pub fn bimodule_checks() -> Vec<CheckResult> {
    let c = Calculus::global();
    let pairs = gen_pairs();
    let assoc = (0..8)
        .into_par_iter()
        .flat_map_iter(|i| pairs.iter().map(move |p| (i, p)))
        .find_map_first(|(i, (name, a, b))| {
            let lhs = c.rmul(&c.rmul(&Form1::basis(i), a), b);
            let rhs = c.rmul_basis(i, &(a * b));
            (!lhs.equals(&rhs)).then(|| format!("({}·{})", label(i), name))
        });
    let rels = orthogonality_relations();
    let orth = (0..8)
        .into_par_iter()
        .flat_map_iter(|i| rels.iter().map(move |r| (i, r)))
        .find_map_first(|(i, (name, r))| (!c.rmul_basis(i, r).is_zero()).then(|| format!("{}·{}", label(i), name)));
    vec![
        CheckResult::from_witness(
            "forms.bimodule.right_action",
            "(ω_i·a)·b = ω_i·(ab) for all basis forms and generators a, b",
            assoc,
        ),
        CheckResult::from_witness(
            "forms.bimodule.orthogonality",
            "ω_i·r = 0 for every Lorentz orthogonality relation r",
            orth,
        ),
    ]
}

pub fn derivative_checks() -> Vec<CheckResult> {
    let c = Calculus::global();
    let leibniz = gen_pairs().par_iter().find_map_first(|(name, a, b)| {
        let lhs = c.d(&(a * b));
        let rhs = c.rmul(&c.d(a), b).add(&c.d(b).left_mul(a));
        (!lhs.equals(&rhs)).then(|| name.clone())
    });
    let orth = orthogonality_relations()
        .par_iter()
        .find_map_first(|(name, r)| (!c.d(r).is_zero()).then(|| name.clone()));
    let unit = (!c.d(&GroupElement::one()).is_zero()).then(|| "d(1)".to_string());
    vec![
        CheckResult::from_witness("forms.d.unit", "d(1) = 0", unit),
        CheckResult::from_witness("forms.d.leibniz", "d(ab) = d(a)b + a d(b) on generator pairs", leibniz),
        CheckResult::from_witness("forms.d.orthogonality", "d(r) = 0 for every orthogonality relation r", orth),
    ]
}

pub fn flip_check() -> CheckResult {
    let c = Calculus::global();
    let eta = c.eta();
    let witness = (0..64).into_par_iter().find_map_first(|p| {
        let (i, j) = (p / 8, p % 8);
        let lhs = c.sigma(&c.tensor(&Form1::basis(i), &eta[j]));
        let rhs = c.tensor(&eta[j], &Form1::basis(i));
        (!lhs.equals(&rhs)).then(|| format!("{} ⊗ eta[{}]", label(i), label(j)))
    });
    CheckResult::from_witness(
        "forms.sigma.flip",
        "σ(ω ⊗ η) = η ⊗ ω for left-invariant ω and right-invariant η",
        witness,
    )
}

/// The coaction matrix is a corepresentation with `M·S(M) = 1`, which makes
/// every `η_a = Σ_b ω_b S(M_ba)` right-invariant.
pub fn coaction_matrix_checks() -> Vec<CheckResult> {
    let c = Calculus::global();
    let m = c.coaction_matrix();
    let n = m.len();
    let corep = (0..n * n).into_par_iter().find_map_first(|p| {
        let (a, b) = (p / n, p % n);
        let mut rhs = TensorElement::zero(2);
        for k in 0..n {
            if !m[a][k].is_structurally_zero() && !m[k][b].is_structurally_zero() {
                rhs = rhs.add(&TensorElement::product_of(&[m[a][k].clone(), m[k][b].clone()]));
            }
        }
        (!m[a][b].coproduct().sub(&rhs).is_zero()).then(|| format!("M[{}][{}]", label(a), label(b)))
    });
    let inverse = (0..n * n).into_par_iter().find_map_first(|p| {
        let (a, b) = (p / n, p % n);
        let mut e = GroupElement::scalar(KScalar::from_int(-((a == b) as i64)));
        for k in 0..n {
            e = &e + &(&m[a][k] * &m[k][b].antipode());
        }
        (!e.is_zero()).then(|| format!("(M S(M))[{}][{}]", label(a), label(b)))
    });
    vec![
        CheckResult::from_witness("forms.coaction.corep", "Δ(M_ab) = Σ_c M_ac ⊗ M_cb", corep),
        CheckResult::from_witness("forms.coaction.inverse", "Σ_c M_ac S(M_cb) = δ_ab", inverse),
    ]
}

pub fn d_squared_checks() -> Vec<CheckResult> {
    let c = Calculus::global();
    let sample = d2_sample();
    let dd = |e: &GroupElement| c.d_form(&c.d(e)).is_zero();
    let gens_w = sample[..12].iter().find(|(_, e)| !dd(e)).map(|(n, _)| n.clone());
    let phi_w = (!dd(&sample[12].1)).then(|| "phi".to_string());
    let deg2_w = sample[13..].par_iter().find_map_first(|(n, e)| (!dd(e)).then(|| n.clone()));
    vec![
        CheckResult::from_witness("forms.d2.generators", "d(d x^μ) = d(d Λ^μ_ν) = 0", gens_w),
        CheckResult::from_witness("forms.d2.phi", "d(dφ) = 0", phi_w),
        CheckResult::from_witness("forms.d2.degree2", "d(d m) = 0 for every degree-two monomial m", deg2_w),
    ]
}

/// `(da)* = d(a*)` on generators and φ, and `(ω_i·a)* = a*·ω_i*`. With
/// Leibniz these give `(da)* = d(a*)` on every product and `(f*)* = f`.
pub fn star_compat_checks() -> Vec<CheckResult> {
    let c = Calculus::global();
    let mut sample = gens();
    sample.push(("phi".into(), phi()));
    let compat = sample
        .par_iter()
        .find_map_first(|(n, e)| (!c.star_form(&c.d(e)).equals(&c.d(&e.star()))).then(|| n.clone()));
    let g = gens();
    let bimodule = (0..8)
        .into_par_iter()
        .flat_map_iter(|i| g.iter().map(move |p| (i, p)))
        .find_map_first(|(i, (n, a))| {
            let lhs = c.star_form(&c.rmul_basis(i, a));
            let rhs = c.star_basis()[i].left_mul(&a.star());
            (!lhs.equals(&rhs)).then(|| format!("{}·{}", label(i), n))
        });
    vec![
        CheckResult::from_witness("forms.star.compat", "(da)* = d(a*) on generators and φ", compat),
        CheckResult::from_witness("forms.star.bimodule", "(ω_i·a)* = a*·ω_i* on generators", bimodule),
    ]
}

pub fn wedge_dimension_check() -> CheckResult {
    let c = Calculus::global();
    let r = c.antisymmetrizer_rank();
    let w = (r != NPAIRS).then(|| format!("rank(I − σ) = {}", r));
    CheckResult::from_witness("forms.wedge.dim", "dim of left-invariant two-forms is 28", w)
}

/// All structural checks of the calculus, in a fixed order.
pub fn structural_checks() -> Vec<CheckResult> {
    let mut out = bimodule_checks();
    out.extend(derivative_checks());
    out.extend(coaction_matrix_checks());
    out.push(flip_check());
    out.extend(d_squared_checks());
    out.extend(star_compat_checks());
    out.push(wedge_dimension_check());
    out
}
