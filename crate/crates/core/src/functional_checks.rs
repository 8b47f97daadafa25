//! Checks on the functionals: backend agreement, the bracket relations of
//! the quantum Lie algebra, involutions, the pairing with forms, coproducts
//! and the Pauli–Lubanski-type identity.

use rayon::prelude::*;

use crate::dual::{DualElement, DualTensor};
use crate::functionals::{dual_element, first_difference, first_nonzero, named, Backend, Functional, Named, NAMES};
use crate::galg::GMonomial;
use crate::report::CheckResult;
use crate::scalar::KScalar;

fn ks(n: i64) -> KScalar {
    KScalar::from_int(n)
}

/// `c·κ^{-n}`.
fn over_kappa(c: KScalar, n: i32) -> KScalar {
    &c * &KScalar::kappa_pow(-n)
}

fn zero() -> Functional {
    Functional::Sum(vec![])
}

fn lin(parts: Vec<(KScalar, &Functional)>) -> Functional {
    Functional::Sum(parts.into_iter().map(|(c, f)| (c, f.clone())).collect())
}

/// `ε_ik` for `i, k ∈ {1, 2}` with `ε_12 = 1`.
fn eps2(i: usize, k: usize) -> i64 {
    crate::dual::eps2(i, k)
}

pub fn fmt_mono(m: &GMonomial) -> String {
    crate::galg::GroupElement::mono(*m).to_string()
}

/// Compares two functionals on `basis`; the witness is the first monomial
/// where they differ.
pub fn compare(id: &str, statement: &str, basis: &[GMonomial], lhs: &Functional, rhs: &Functional) -> CheckResult {
    let d = lhs.sub(rhs).table(basis);
    let w = first_nonzero(basis, &d).map(|(m, v)| format!("on {}: lhs − rhs = {}", fmt_mono(&m), v));
    CheckResult::from_witness(id, statement, w)
}

// ---------------------------------------------------------------------------
// Backend agreement

pub fn cross_validate(basis: &[GMonomial]) -> Vec<CheckResult> {
    NAMES
        .par_iter()
        .map(|n| {
            let c = named(n, Backend::Calc).unwrap().table(basis);
            let d = named(n, Backend::Dual).unwrap().table(basis);
            let w = first_difference(basis, &c, &d)
                .map(|(m, x, y)| format!("on {}: CALC = {}, DUAL = {}", fmt_mono(&m), x, y));
            CheckResult::from_witness(
                format!("crossval.{}", n),
                format!("CALC and DUAL {} agree on the test basis", n),
                w,
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Quantum Lie algebra

/// One bracket relation `[a, b] = rhs`.
pub struct Bracket {
    pub id: String,
    pub statement: String,
    pub lhs: Functional,
    pub rhs: Functional,
}

/// `1 + (c i/κ)χ₀ − (3/κ²)χ`.
fn factor(n: &Named, c: i64) -> Functional {
    lin(vec![
        (ks(1), &Functional::Counit),
        (over_kappa(&KScalar::i() * &ks(c), 1), &n.chi0),
        (over_kappa(ks(-3), 2), &n.chi),
    ])
}

pub fn brackets(n: &Named) -> Vec<Bracket> {
    let mut out = Vec::new();
    let a = factor(n, 1);
    let i_k = over_kappa(KScalar::i(), 1);
    let six_k2 = over_kappa(ks(6), 2);
    let mut push = |id: String, statement: String, lhs: Functional, rhs: Functional| {
        out.push(Bracket { id, statement, lhs, rhs });
    };
    for i in 1..3 {
        let mut rhs = lin(vec![
            (-&i_k, &n.chi_i[i - 1].conv(&n.m)),
            (six_k2.clone(), &n.lambda.conv(&n.chi_i[i - 1])),
        ]);
        for k in 1..3 {
            if eps2(i, k) != 0 {
                rhs = rhs.add(&a.conv(&n.l[k - 1]).scale(&ks(eps2(i, k))));
            }
        }
        push(
            format!("qlie.m_l{}", i),
            format!("[m, l_{i}] = (1 + (i/k)chi_0 − (3/k²)chi) eps_{i}k l_k − (i/k) chi_{i} m + (6/k²) lambda chi_{i}"),
            n.m.bracket(&n.l[i - 1]),
            rhs,
        );
    }
    let rhs = lin(vec![
        (ks(-1), &factor(n, 2).conv(&n.m)),
        (six_k2.clone(), &n.lambda.conv(&n.chi0)),
    ]);
    push(
        "qlie.l1_l2".into(),
        "[l_1, l_2] = −(1 + (2i/k)chi_0 − (3/k²)chi) m + (6/k²) lambda chi_0".into(),
        n.l[0].bracket(&n.l[1]),
        rhs,
    );
    push("qlie.m_chi0".into(), "[m, chi_0] = 0".into(), n.m.bracket(&n.chi0), zero());
    for i in 1..3 {
        let k = 3 - i;
        push(
            format!("qlie.m_chi{}", i),
            format!("[m, chi_{i}] = (1 + (i/k)chi_0 − (3/k²)chi) eps_{i}k chi_k"),
            n.m.bracket(&n.chi_i[i - 1]),
            a.conv(&n.chi_i[k - 1]).scale(&ks(eps2(i, k))),
        );
    }
    for i in 1..3 {
        push(
            format!("qlie.l{}_chi0", i),
            format!("[l_{i}, chi_0] = (1 + (i/k)chi_0 − (3/k²)chi) chi_{i}"),
            n.l[i - 1].bracket(&n.chi0),
            a.conv(&n.chi_i[i - 1]),
        );
    }
    for i in 1..3 {
        for k in 1..3 {
            let rhs = if i == k { a.conv(&n.chi0) } else { zero() };
            push(
                format!("qlie.l{}_chi{}", i, k),
                format!("[l_{i}, chi_{k}] = delta_{i}{k} (1 + (i/k)chi_0 − (3/k²)chi) chi_0"),
                n.l[i - 1].bracket(&n.chi_i[k - 1]),
                rhs,
            );
        }
    }
    for mu in 0..3 {
        for nu in mu + 1..3 {
            push(
                format!("qlie.chi{}_chi{}", mu, nu),
                format!("[chi_{mu}, chi_{nu}] = 0"),
                n.chi_mu(mu).bracket(n.chi_mu(nu)),
                zero(),
            );
        }
    }
    let gens: Vec<(&str, &Functional)> = vec![
        ("chi0", &n.chi0),
        ("chi1", &n.chi_i[0]),
        ("chi2", &n.chi_i[1]),
        ("m", &n.m),
        ("l1", &n.l[0]),
        ("l2", &n.l[1]),
    ];
    for (central, f) in [("lambda", &n.lambda), ("chi", &n.chi)] {
        for (g, x) in &gens {
            push(format!("qlie.{}_{}", central, g), format!("[{}, {}] = 0", central, g), f.bracket(x), zero());
        }
    }
    push("qlie.lambda_chi".into(), "[lambda, chi] = 0".into(), n.lambda.bracket(&n.chi), zero());
    out
}

pub fn check_qlie(basis: &[GMonomial], backend: Backend) -> Vec<CheckResult> {
    let n = Named::new(backend);
    let prefix = format!("qlie.{}.", backend.to_string().to_lowercase());
    brackets(&n)
        .par_iter()
        .map(|b| compare(&b.id.replacen("qlie.", &prefix, 1), &b.statement, basis, &b.lhs, &b.rhs))
        .collect()
}

// ---------------------------------------------------------------------------
// Pauli–Lubanski-type identity

/// `(1/12) ε^{μνα} χ_μ χ_{να}`.
pub fn pauli_lubanski_rhs(n: &Named) -> Functional {
    let mut parts = Vec::new();
    for mu in 0..3 {
        for nu in 0..3 {
            for al in 0..3 {
                let e = crate::galg::levi(mu, nu, al);
                if e != 0 {
                    parts.push((KScalar::from_ratio(e, 12), n.chi_mu(mu).conv(&n.chi_lower(nu, al))));
                }
            }
        }
    }
    Functional::Sum(parts)
}

/// Printed form `λ = (1/12) ε^{μνα} χ_μ χ_{να}`; only the reading
/// `(1 − (3/κ²)χ)λ = (1/12) ε^{μνα} χ_μ χ_{να}` holds.
pub fn pauli_lubanski_check(basis: &[GMonomial]) -> Vec<CheckResult> {
    [Backend::Calc, Backend::Dual]
        .par_iter()
        .map(|&b| {
            let n = Named::new(b);
            let id = format!("qlie.pauli_lubanski.{}", b.to_string().to_lowercase());
            let statement = format!("lambda = (1/12) eps^{{mna}} chi_m chi_na ({})", b);
            let rhs = pauli_lubanski_rhs(&n);
            let printed = compare(&id, &statement, basis, &n.lambda, &rhs);
            if !printed.is_fail() {
                return printed;
            }
            let lhs = lin(vec![(ks(1), &Functional::Counit), (over_kappa(ks(-3), 2), &n.chi)]).conv(&n.lambda);
            let corrected = compare(&id, &statement, basis, &lhs, &rhs);
            if corrected.is_fail() {
                return printed;
            }
            let mut r = CheckResult::reconciled(
                id,
                statement,
                "holds as (1 − (3/k²)chi) lambda = (1/12) eps^{mna} chi_m chi_na; the printed form drops the chi factor",
            );
            r.witness = printed.witness;
            r
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Involutions and the pairing of forms with functionals

/// `φ* = rhs` for every named functional, with `φ*(a) = conj(φ(S(a)*))`.
pub fn involution_check(basis: &[GMonomial], backend: Backend) -> Vec<CheckResult> {
    let n = Named::new(backend);
    let i_k = over_kappa(KScalar::i(), 1);
    let mut rels: Vec<(String, String, Functional, Functional)> = Vec::new();
    for mu in 0..3 {
        rels.push((
            format!("involution.chi{}", mu),
            format!("chi_{mu}* = −chi_{mu}"),
            n.chi_mu(mu).star(),
            n.chi_mu(mu).scale(&ks(-1)),
        ));
    }
    rels.push(("involution.m".into(), "m* = −m".into(), n.m.star(), n.m.scale(&ks(-1))));
    for i in 1..3 {
        rels.push((
            format!("involution.l{}", i),
            format!("l_{i}* = −l_{i} − (i/k) chi_{i}"),
            n.l[i - 1].star(),
            lin(vec![(ks(-1), &n.l[i - 1]), (-&i_k, &n.chi_i[i - 1])]),
        ));
    }
    rels.push(("involution.chi".into(), "chi* = chi".into(), n.chi.star(), n.chi.clone()));
    rels.push(("involution.lambda".into(), "lambda* = lambda".into(), n.lambda.star(), n.lambda.clone()));
    let tag = backend.to_string().to_lowercase();
    rels.par_iter()
        .map(|(id, st, l, r)| compare(&format!("{}.{}", id, tag), &format!("{} ({})", st, backend), basis, l, r))
        .collect()
}

/// Index structure of a named functional.
#[derive(Clone, Copy)]
enum Slot {
    Lorentz(usize, usize),
    Trans(usize),
    Chi,
    Lambda,
}

fn slot(name: &str) -> Slot {
    match name {
        "chi0" => Slot::Trans(0),
        "chi1" => Slot::Trans(1),
        "chi2" => Slot::Trans(2),
        "chi" => Slot::Chi,
        "lambda" => Slot::Lambda,
        "m" => Slot::Lorentz(1, 2),
        "l1" => Slot::Lorentz(1, 0),
        "l2" => Slot::Lorentz(2, 0),
        _ => unreachable!("unknown functional {name}"),
    }
}

/// `⟨ω_L, φ⟩` from the duality table, where `ω^μ_ν = g_νν ω^{μν}`.
fn expected_pairing(l: crate::ideal::QLabel, s: Slot) -> KScalar {
    use crate::galg::{delta, metric};
    use crate::ideal::QLabel;
    let v = match (l, s) {
        (QLabel::W(mu, nu), Slot::Lorentz(a, b)) => {
            let (mu, nu) = (mu as usize, nu as usize);
            metric(nu) * (delta(mu, a) * delta(nu, b) - delta(mu, b) * delta(nu, a))
        }
        (QLabel::WX(nu), Slot::Trans(mu)) => delta(nu as usize, mu),
        (QLabel::WPhi, Slot::Chi) | (QLabel::WOm, Slot::Lambda) => 1,
        _ => 0,
    };
    ks(v)
}

/// `⟨ω_L, φ⟩ = φ(b_L)` for the quotient basis element `b_L` of each label,
/// against the duality table.
pub fn form_pairing_check(backend: Backend) -> CheckResult {
    use crate::ideal::{basis_element, QLabel};
    let variant = crate::calculus::Calculus::global().quotient_map().variant();
    let mut witness = None;
    'outer: for l in QLabel::ALL {
        let b = basis_element(l, variant);
        for name in NAMES {
            let got = named(name, backend).unwrap().eval(&b);
            let want = expected_pairing(l, slot(name));
            if got != want {
                witness = Some(format!("<{}, {}> = {}, expected {}", l.name(), name, got, want));
                break 'outer;
            }
        }
    }
    CheckResult::from_witness(
        format!("involution.pairing.{}", backend.to_string().to_lowercase()),
        format!("<w^mn, chi_ab> = d^m_a d^n_b − d^m_b d^n_a, <w^n, chi_m> = d^n_m, <w, chi> = <Om, lambda> = 1, others 0 ({})", backend),
        witness,
    )
}

// ---------------------------------------------------------------------------
// Convolution algebra

/// Unit and associativity of convolution on sampled named triples, and
/// agreement of DUAL convolutions with products in the dual algebra.
pub fn convolution_checks(basis: &[GMonomial], seed: u64) -> Vec<CheckResult> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let calc = Named::new(Backend::Calc);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| NAMES[rng.gen_range(0..NAMES.len())];
    let unit = NAMES.iter().find_map(|name| {
        let f = calc.get(name).unwrap();
        let e = Functional::Counit;
        let w1 = first_nonzero(basis, &e.conv(f).sub(f).table(basis));
        let w2 = first_nonzero(basis, &f.conv(&e).sub(f).table(basis));
        w1.or(w2).map(|(m, _)| format!("{} on {}", name, fmt_mono(&m)))
    });
    let triples: Vec<[&str; 3]> = (0..8).map(|_| [pick(&mut rng), pick(&mut rng), pick(&mut rng)]).collect();
    let assoc = triples.par_iter().find_map_first(|t| {
        let [a, b, c] = t.map(|n| calc.get(n).unwrap().clone());
        let d = a.conv(&b).conv(&c).sub(&a.conv(&b.conv(&c))).table(basis);
        first_nonzero(basis, &d).map(|(m, _)| format!("({} {} {}) on {}", t[0], t[1], t[2], fmt_mono(&m)))
    });
    let cases: Vec<(&str, &str, GMonomial)> =
        (0..50).map(|_| (pick(&mut rng), pick(&mut rng), basis[rng.gen_range(0..basis.len())])).collect();
    let products = cases.par_iter().find_map_first(|(x, y, m)| {
        let (dx, dy) = (crate::functionals::dual_element(x).unwrap(), crate::functionals::dual_element(y).unwrap());
        let a = crate::galg::GroupElement::mono(*m);
        let lhs = Functional::dual(dx.clone()).conv(&Functional::dual(dy.clone())).eval(&a);
        let rhs = crate::dual::pair(&a, &(&dx * &dy));
        (lhs != rhs).then(|| format!("{} {} on {}: {} vs {}", x, y, fmt_mono(m), lhs, rhs))
    });
    vec![
        CheckResult::from_witness("convolution.unit", "eps phi = phi eps = phi for every named phi", unit),
        CheckResult::from_witness("convolution.assoc", "(phi psi) rho = phi (psi rho) on sampled triples", assoc),
        CheckResult::from_witness(
            "convolution.dual_products",
            "(phi psi)(a) = <a, X_phi X_psi> on 50 sampled cases",
            products,
        ),
    ]
}

// ---------------------------------------------------------------------------
// Coproducts of the functionals

/// `Δφ = Σ_j φ_j ⊗ Y_j + I ⊗ φ`, one `(φ_j, Y_j)` per term; the `I ⊗ φ`
/// term is implicit.
pub struct CoproductLine {
    pub name: &'static str,
    pub terms: Vec<(&'static str, DualElement)>,
}

mod dsl {
    use crate::dual::{p_vec_sq, DualElement};
    use crate::scalar::KScalar;

    pub fn c(x: KScalar) -> DualElement {
        DualElement::scalar(x)
    }
    /// `e^{P₀/κ}`.
    pub fn ep() -> DualElement {
        DualElement::e_pow(-1)
    }
    pub fn sh() -> DualElement {
        (&ep() - &DualElement::e_pow(1)).scale(&KScalar::from_ratio(1, 2))
    }
    pub fn ch() -> DualElement {
        (&ep() + &DualElement::e_pow(1)).scale(&KScalar::from_ratio(1, 2))
    }
    /// `P⃗²/(2κ^n)`.
    pub fn kub(n: i32) -> DualElement {
        p_vec_sq().scale(&(&KScalar::from_ratio(1, 2) * &KScalar::kappa_pow(-n)))
    }
    pub fn p(i: usize) -> DualElement {
        DualElement::p(i)
    }
    pub fn n(i: usize) -> DualElement {
        DualElement::n(i)
    }
    pub fn m() -> DualElement {
        DualElement::m()
    }
    pub fn k(n: i32) -> DualElement {
        c(KScalar::kappa_pow(n))
    }
    /// `(a + bi)/d · κ^{-n}` as a scalar.
    pub fn q(a: i64, b: i64, d: i64, n: i32) -> KScalar {
        let re = KScalar::from_ratio(a, d);
        let im = &KScalar::from_ratio(b, d) * &KScalar::i();
        &(&re + &im) * &KScalar::kappa_pow(-n)
    }
    /// `ε_jk P_j N_k`.
    pub fn pn() -> DualElement {
        &(&p(1) * &n(2)) - &(&p(2) * &n(1))
    }
}

/// The printed coproduct formulas.
pub fn printed_coproducts() -> Vec<CoproductLine> {
    use dsl::*;
    let chi_i = |i: usize| if i == 1 { "chi1" } else { "chi2" };
    let l_i = |i: usize| if i == 1 { "l1" } else { "l2" };
    let eps = |j: usize, k: usize| KScalar::from_int(eps2(j, k));
    let mut out = Vec::new();

    let mut t = vec![("chi0", &ch() + &(&kub(1) * &ep()))];
    for i in 1..3 {
        t.push((chi_i(i), p(i).scale(&q(1, 0, 1, 1))));
    }
    t.push(("chi", (&sh() + &(&kub(1) * &ep())).scale(&q(0, 3, 1, 1))));
    out.push(CoproductLine { name: "chi0", terms: t });

    for i in 1..3 {
        out.push(CoproductLine {
            name: chi_i(i),
            terms: vec![
                (chi_i(i), DualElement::one()),
                ("chi0", (&p(i) * &ep()).scale(&q(1, 0, 1, 1))),
                ("chi", (&p(i) * &ep()).scale(&q(0, 3, 1, 2))),
            ],
        });
    }

    let mut t = vec![("chi0", (&(&k(1) * &sh()) + &(&kub(1) * &ep())).scale(&q(0, -1, 3, 0)))];
    for i in 1..3 {
        t.push((chi_i(i), p(i).scale(&q(0, -1, 3, 0))));
    }
    t.push(("chi", &ch() + &(&kub(1) * &ep())));
    out.push(CoproductLine { name: "chi", terms: t });

    let mut t = vec![("lambda", &ch() - &(&kub(1) * &ep()))];
    for j in 1..3 {
        let mut y = (&p(j) * &m()).scale(&q(0, -1, 6, 1));
        for kk in 1..3 {
            if eps2(j, kk) != 0 {
                y = &y + &n(kk).scale(&(&q(0, -1, 6, 0) * &eps(j, kk)));
            }
        }
        t.push((chi_i(j), y));
    }
    t.push((
        "chi0",
        &(&(&(&k(1) * &ch()) + &(&kub(1) * &ep())) * &m()).scale(&q(0, -1, 6, 0))
            + &(&pn() * &ep()).scale(&q(0, -1, 6, 1)),
    ));
    t.push((
        "chi",
        (&(&(&(&k(1) * &sh()) + &(&kub(1) * &ep())) * &m()) + &(&pn() * &ep())).scale(&q(1, 0, 2, 2)),
    ));
    for kk in 1..3 {
        let mut y = DualElement::zero();
        for j in 1..3 {
            if eps2(j, kk) != 0 {
                y = &y + &p(j).scale(&(&q(0, -1, 6, 0) * &eps(j, kk)));
            }
        }
        t.push((l_i(kk), y));
    }
    t.push(("m", (&(&k(1) * &sh()) - &(&kub(1) * &ep())).scale(&q(0, -1, 6, 0))));
    out.push(CoproductLine { name: "lambda", terms: t });

    for i in 1..3 {
        let kk = 3 - i;
        out.push(CoproductLine {
            name: l_i(i),
            terms: vec![
                (l_i(i), DualElement::one()),
                ("chi0", (&ep() * &n(i)).scale(&q(1, 0, 1, 1))),
                ("chi", (&ep() * &n(i)).scale(&q(0, 3, 1, 2))),
                ("m", (&ep() * &p(kk)).scale(&(&q(1, 0, 1, 1) * &eps(i, kk)))),
                ("lambda", (&ep() * &p(kk)).scale(&(&q(0, 6, 1, 2) * &eps(i, kk)))),
            ],
        });
    }

    let mut t = vec![("m", &ch() + &(&kub(2) * &ep()))];
    t.push((
        "chi0",
        &(&(&ch() - &(&kub(1) * &ep())) * &m()).scale(&q(1, 0, 1, 1)) - &(&pn() * &ep()).scale(&q(1, 0, 1, 2)),
    ));
    t.push((
        "chi",
        (&(&(&(&k(1) * &ch()) - &(&kub(1) * &ep())) * &m()) - &(&pn() * &ep())).scale(&q(0, 3, 1, 3)),
    ));
    t.push(("lambda", (&sh() + &(&kub(2) * &ep())).scale(&q(0, 6, 1, 1))));
    for j in 1..3 {
        let mut y = (&p(j) * &m()).scale(&q(-1, 0, 1, 2));
        for kk in 1..3 {
            if eps2(j, kk) != 0 {
                y = &y + &n(kk).scale(&(&q(-1, 0, 1, 1) * &eps(j, kk)));
            }
        }
        t.push((chi_i(j), y));
    }
    for kk in 1..3 {
        let mut y = DualElement::zero();
        for j in 1..3 {
            if eps2(j, kk) != 0 {
                y = &y + &p(j).scale(&(&q(-1, 0, 1, 1) * &eps(j, kk)));
            }
        }
        t.push((l_i(kk), y));
    }
    out.push(CoproductLine { name: "m", terms: t });
    out
}

/// `Δφ − Σ_j φ_j ⊗ Y_j − I ⊗ φ` in the dual algebra.
pub fn coproduct_residual(line: &CoproductLine) -> DualTensor {
    let x = dual_element(line.name).unwrap();
    let mut rhs = DualTensor::product_of(&[DualElement::one(), x.clone()]);
    for (j, y) in &line.terms {
        rhs = rhs.add(&DualTensor::product_of(&[dual_element(j).unwrap(), y.clone()]));
    }
    x.coproduct().sub(&rhs)
}

/// Corrected readings of the printed lines that fail, with a note on each.
pub fn corrected_coproduct(name: &str) -> Option<(CoproductLine, &'static str)> {
    use dsl::*;
    let mut lines = printed_coproducts();
    let idx = lines.iter().position(|l| l.name == name)?;
    let mut line = lines.swap_remove(idx);
    let set = |line: &mut CoproductLine, j: &'static str, y: DualElement| {
        line.terms.retain(|(n, _)| *n != j);
        line.terms.push((j, y));
    };
    let note = match name {
        "chi0" => {
            set(&mut line, "chi0", &ch() + &(&kub(2) * &ep()));
            set(&mut line, "chi", (&sh() + &(&kub(2) * &ep())).scale(&q(0, 3, 1, 1)));
            "the chi_0 and chi columns carry P^2/(2k^2) e^{P0/k} (printed P^2/(2k) e^{P0/k})"
        }
        "chi" => {
            set(&mut line, "chi0", (&(&k(1) * &sh()) - &(&kub(1) * &ep())).scale(&q(0, -1, 3, 0)));
            for i in 1..3 {
                set(&mut line, if i == 1 { "chi1" } else { "chi2" }, p(i).scale(&q(0, 1, 3, 0)));
            }
            set(&mut line, "chi", &ch() - &(&kub(2) * &ep()));
            "chi_0 (x) (-i/3)(k sh(P0/k) - P^2/(2k) e^{P0/k}), chi_i (x) (i/3) P_i and chi (x) (ch(P0/k) - P^2/(2k^2) e^{P0/k})"
        }
        "lambda" => {
            set(&mut line, "lambda", &ch() - &(&kub(2) * &ep()));
            set(
                &mut line,
                "chi0",
                &(&(&ch() + &(&kub(2) * &ep())) * &m()).scale(&q(0, -1, 6, 0)) + &(&pn() * &ep()).scale(&q(0, -1, 6, 1)),
            );
            "lambda (x) (ch(P0/k) - P^2/(2k^2) e^{P0/k}) and chi_0 (x) [-(i/6)(ch(P0/k) + P^2/(2k^2) e^{P0/k}) M - (i/6k) eps_jk P_j N_k e^{P0/k}]"
        }
        "m" => {
            set(
                &mut line,
                "chi0",
                &(&(&sh() - &(&kub(2) * &ep())) * &m()).scale(&q(1, 0, 1, 1)) - &(&pn() * &ep()).scale(&q(1, 0, 1, 2)),
            );
            "chi_0 (x) [(1/k)(sh(P0/k) - P^2/(2k^2) e^{P0/k}) M - (1/k^2) eps_jk P_j N_k e^{P0/k}] (printed ch and P^2/(2k))"
        }
        _ => return None,
    };
    Some((line, note))
}

/// First `(a, b)` in `set × set` with `φ(ab) ≠ Σ_j φ_j(a) Y_j(b) + ε(a) φ(b)`.
pub fn coproduct_witness(line: &CoproductLine, set: &[GMonomial]) -> Option<String> {
    use crate::galg::{mono_counit, mono_mul};
    let x = Functional::dual(dual_element(line.name).unwrap());
    let products: Vec<(usize, usize, crate::galg::GroupElement)> = (0..set.len())
        .flat_map(|i| (0..set.len()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, mono_mul(&set[i], &set[j])))
        .collect();
    let mut monos = std::collections::HashSet::new();
    for (_, _, e) in &products {
        monos.extend(e.terms().map(|(m, _)| *m));
    }
    let tx_prod = x.table(&monos.into_iter().collect::<Vec<_>>());
    let tx = x.table(set);
    let cols: Vec<(crate::functionals::Table, crate::functionals::Table)> = line
        .terms
        .iter()
        .map(|(j, y)| (Functional::dual(dual_element(j).unwrap()).table(set), Functional::dual(y.clone()).table(set)))
        .collect();
    products.iter().find_map(|(i, j, e)| {
        let (a, b) = (&set[*i], &set[*j]);
        let mut lhs = KScalar::zero();
        for (m, c) in e.terms() {
            lhs += &(c * &tx_prod[m]);
        }
        let mut rhs = &mono_counit(a) * &tx[b];
        for (ta, tb) in &cols {
            rhs += &(&ta[a] * &tb[b]);
        }
        (lhs != rhs).then(|| format!("a = {}, b = {}: lhs = {}, rhs = {}", fmt_mono(a), fmt_mono(b), lhs, rhs))
    })
}

/// Each printed coproduct line checked through the pairing on `set × set`.
pub fn coproduct_checks(set: &[GMonomial]) -> Vec<CheckResult> {
    printed_coproducts()
        .par_iter()
        .map(|line| {
            let id = format!("coproducts.{}", line.name);
            let statement = format!("Delta {} = sum_j phi_j (x) f_j + I (x) {} as printed", line.name, line.name);
            let Some(w) = coproduct_witness(line, set) else {
                return CheckResult::pass(id, statement);
            };
            match corrected_coproduct(line.name) {
                Some((fixed, note)) if coproduct_witness(&fixed, set).is_none() => {
                    let mut r = CheckResult::reconciled(id, statement, note);
                    r.witness = Some(w);
                    r
                }
                _ => CheckResult::fail(id, statement, w),
            }
        })
        .collect()
}

/// The coproduct lines that hold: printed where it holds, corrected otherwise.
pub fn valid_coproducts() -> Vec<CoproductLine> {
    printed_coproducts()
        .into_iter()
        .map(|l| if coproduct_residual(&l).is_zero() { l } else { corrected_coproduct(l.name).map(|(c, _)| c).unwrap_or(l) })
        .collect()
}

/// `f_ji` read off from `ω_j a = Σ_i (f_ji ∗ a) ω_i` against the coproduct
/// coefficients, `f_{L(j)L(i)} = s_j s_i Y_ji`, and the coassociativity
/// relation `Δf_ji = Σ_k f_jk ⊗ f_ki`.
pub fn fji_checks(set: &[GMonomial]) -> Vec<CheckResult> {
    use crate::calculus::N;
    use crate::functionals::calc_label;
    use crate::galg::mono_mul;
    let lines = valid_coproducts();
    let mut pairs = Vec::new();
    for line in &lines {
        let (li, si) = calc_label(line.name).unwrap();
        for jn in NAMES {
            let (lj, sj) = calc_label(jn).unwrap();
            let y = line.terms.iter().filter(|(n, _)| *n == jn).fold(DualElement::zero(), |a, (_, e)| &a + e);
            pairs.push((jn, line.name, lj.index(), li.index(), y.scale(&ks(si * sj))));
        }
    }
    let matched = pairs.par_iter().find_map_first(|(jn, iname, j, i, y)| {
        let calc = Functional::Fji(*j, *i).table(set);
        let dual = Functional::dual(y.clone()).table(set);
        first_difference(set, &calc, &dual)
            .map(|(m, a, b)| format!("f[{}][{}] on {}: CALC = {}, DUAL = {}", jn, iname, fmt_mono(&m), a, b))
    });
    let coassoc = (0..N * N).into_par_iter().find_map_first(|p| {
        let (j, i) = (p / N, p % N);
        set.iter().flat_map(|a| set.iter().map(move |b| (a, b))).find_map(|(a, b)| {
            let ab = mono_mul(a, b);
            let lhs = Functional::Fji(j, i).eval(&ab);
            let mut rhs = KScalar::zero();
            for k in 0..N {
                let fa = Functional::Fji(j, k).eval(&crate::galg::GroupElement::mono(*a));
                if !fa.is_zero() {
                    rhs += &(&fa * &Functional::Fji(k, i).eval(&crate::galg::GroupElement::mono(*b)));
                }
            }
            (lhs != rhs).then(|| format!("f[{}][{}] on {}·{}", j, i, fmt_mono(a), fmt_mono(b)))
        })
    });
    vec![
        CheckResult::from_witness(
            "coproducts.fji_match",
            "f_ji from the commutation rules equals the coproduct coefficients on the test set",
            matched,
        ),
        CheckResult::from_witness("coproducts.fji_coassoc", "f_ji(ab) = sum_k f_jk(a) f_ki(b) on the test set", coassoc),
    ]
}
