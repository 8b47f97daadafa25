//! Randomized algebraic properties of the engine.

use kappa3_core::dual::{pair, DGen, DualElement};
use kappa3_core::galg::{GGen, GroupElement, TensorElement};
use kappa3_core::hopftools::{r_inv, r_map};
use kappa3_core::ideal::{basis_element, IdealVariant, Quotient, QLabel};
use kappa3_core::lorentz::{tensor_vanishes, vanishes};
use kappa3_core::param::ParamRational;
use kappa3_core::report::{CheckResult, Report, Status};
use kappa3_core::scalar::{rat, GaussianRational, KScalar};
use proptest::prelude::*;

fn kscalar() -> impl Strategy<Value = KScalar> {
    prop::collection::vec((-2i32..3, -4i64..5, 1i64..4, -4i64..5), 0..4).prop_map(|terms| {
        let mut s = KScalar::zero();
        for (e, re, d, im) in terms {
            s += &KScalar::monomial(GaussianRational::new(rat(re, d), rat(im, d)), e);
        }
        s
    })
}

fn small_scalar() -> impl Strategy<Value = KScalar> {
    (-3i64..4, -3i64..4).prop_map(|(re, im)| KScalar::monomial(GaussianRational::new(rat(re, 1), rat(im, 1)), 0))
}

fn gword(max: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(0usize..12, 0..=max).prop_map(|w| {
        let gens = GGen::all();
        w.into_iter().fold(GroupElement::one(), |acc, i| &acc * &GroupElement::gen(gens[i]))
    })
}

fn gelem(max: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec((small_scalar(), gword(max)), 1..3).prop_map(|v| {
        v.into_iter().fold(GroupElement::zero(), |acc, (c, w)| &acc + &w.scale(&c))
    })
}

fn dword(max: usize) -> impl Strategy<Value = DualElement> {
    prop::collection::vec(0usize..8, 0..=max).prop_map(|w| {
        let gens = DGen::all();
        w.into_iter().fold(DualElement::one(), |acc, i| &acc * &DualElement::gen(gens[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_ring_laws(a in kscalar(), b in kscalar(), c in kscalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).is_zero(), a.is_zero() || b.is_zero());
        prop_assert_eq!((&a * &b).star(), &a.star() * &b.star());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn group_associativity(a in gword(3), b in gword(3), c in gword(3)) {
        prop_assert!((&(&a * &b) * &c).equals(&(&a * &(&b * &c))));
    }

    #[test]
    fn dual_associativity(f in dword(3), g in dword(3), h in dword(3)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rewriting_never_raises_x_degree(a in gword(2), b in gword(2)) {
        prop_assert!((&a * &b).x_degree() <= a.x_degree() + b.x_degree());
    }

    #[test]
    fn coproduct_and_counit_are_multiplicative(a in gword(2), b in gword(2)) {
        let ab = &a * &b;
        prop_assert!(tensor_vanishes(&ab.coproduct().sub(&a.coproduct().mul(&b.coproduct()))));
        prop_assert_eq!(ab.counit(), &a.counit() * &b.counit());
        prop_assert!(vanishes(&(&ab.antipode() - &(&b.antipode() * &a.antipode()))));
    }

    #[test]
    fn star_compatibility(a in gelem(2)) {
        let s = a.star();
        prop_assert!(tensor_vanishes(&s.coproduct().sub(&a.coproduct().star_legs())));
        prop_assert_eq!(s.counit(), a.counit().star());
        prop_assert!(vanishes(&(&s.antipode().star().antipode() - &a)));
        prop_assert!(s.star().equals(&a));
    }

    #[test]
    fn r_and_r_inverse(a in gelem(1), b in gelem(1), c in gword(1)) {
        let q = TensorElement::product_of(&[a.clone(), b.clone()]);
        prop_assert!(tensor_vanishes(&r_inv(&r_map(&q)).sub(&q)));
        prop_assert!(tensor_vanishes(&r_map(&r_inv(&q)).sub(&q)));
        let left = TensorElement::product_of(&[c.clone(), GroupElement::one()]);
        prop_assert!(tensor_vanishes(&r_map(&left.mul(&q)).sub(&left.mul(&r_map(&q)))));
        let right = TensorElement::product_of(&[GroupElement::one(), c.clone()]);
        prop_assert!(tensor_vanishes(&r_map(&q.mul(&right)).sub(&r_map(&q).mul(&c.coproduct()))));
    }

    #[test]
    fn pairing_intertwines_antipodes(a in gword(2), f in dword(2)) {
        prop_assert_eq!(pair(&a.antipode(), &f), pair(&a, &f.antipode()));
    }

    #[test]
    fn quotient_reduction_is_linear(a in gelem(2), b in gelem(2), l in small_scalar()) {
        static Q: std::sync::OnceLock<Quotient> = std::sync::OnceLock::new();
        let q = Q.get_or_init(|| Quotient::build(2, IdealVariant::default()));
        let lhs = q.reduce(&(&a + &b.scale(&l))).unwrap();
        let (ra, rb) = (q.reduce(&a).unwrap(), q.reduce(&b).unwrap());
        for k in 0..8 {
            prop_assert_eq!(lhs.0[k].clone(), &ra.0[k] + &(&rb.0[k] * &l));
        }
    }

    #[test]
    fn param_zero_test_agrees_with_evaluation(
        coeffs in prop::collection::vec(-3i64..4, 4),
        points in prop::collection::vec((-5i64..6, 1i64..4), 60),
    ) {
        let c = |n: i64| ParamRational::constant(KScalar::from_int(n));
        let (x, y, z) = (ParamRational::var(0), ParamRational::var(1), ParamRational::var(2));
        let p = c(coeffs[0]).add(&x.mul(&c(coeffs[1]))).add(&y.mul(&z).mul(&c(coeffs[2]))).add(&x.mul(&x).mul(&c(coeffs[3])));
        let q = p.mul(&x.add(&c(1))).sub(&x.mul(&p)).sub(&p);
        let eval_zero = |e: &ParamRational| {
            points.chunks(3).all(|pt| {
                let pt = [rat(pt[0].0, pt[0].1), rat(pt[1].0, pt[1].1), rat(pt[2].0, pt[2].1)];
                e.eval(&pt).map(|v| v.is_zero()).unwrap_or(true)
            })
        };
        prop_assert!(q.is_zero());
        prop_assert!(eval_zero(&q));
        prop_assert_eq!(p.is_zero(), eval_zero(&p));
    }

    #[test]
    fn summary_counts_statuses(statuses in prop::collection::vec(0u8..3, 0..20)) {
        let checks: Vec<CheckResult> = statuses
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                0 => CheckResult::pass(format!("c{:02}", i), "p"),
                1 => CheckResult::fail(format!("c{:02}", i), "f", "w"),
                _ => CheckResult::reconciled(format!("c{:02}", i), "r", "n"),
            })
            .collect();
        let r = Report::new("s", serde_json::json!({}), checks);
        let count = |k: u8| statuses.iter().filter(|&&s| s == k).count();
        prop_assert_eq!(r.summary.pass, count(0));
        prop_assert_eq!(r.summary.fail, count(1));
        prop_assert_eq!(r.summary.reconciled, count(2));
        prop_assert!(r.checks.iter().all(|c| c.status != Status::Fail || c.witness.is_some()));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), r.to_json());
    }
}

#[test]
fn basis_elements_reduce_to_unit_vectors() {
    let v = IdealVariant::default();
    let q = Quotient::build(2, v);
    for (i, l) in QLabel::ALL.iter().enumerate() {
        let r = q.reduce(&basis_element(*l, v)).unwrap();
        for k in 0..8 {
            assert_eq!(r.0[k], if k == i { KScalar::one() } else { KScalar::zero() }, "{} coord {}", l, k);
        }
    }
}

#[test]
fn quotient_dim_is_non_increasing() {
    let dims: Vec<usize> = (1..=3).map(|d| Quotient::build(d, IdealVariant::default()).dim()).collect();
    assert!(dims.windows(2).all(|w| w[0] >= w[1]), "{:?}", dims);
    assert_eq!(&dims[1..], &[8, 8]);
}
