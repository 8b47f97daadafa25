//! Iterated coproducts, the adjoint coaction and the maps `r`, `r⁻¹`.

use crate::galg::{GMonomial, GroupElement, TensorElement, TensorLegImage};

/// Rank-(n+1) iterated coproduct, expanding the last leg each time.
pub fn delta_n(a: &GroupElement, n: usize) -> TensorElement {
    assert!(n >= 1);
    let mut t = a.coproduct();
    for _ in 1..n {
        let leg = t.rank() - 1;
        t = t.map_leg(leg, 2, |m| TensorLegImage::from_tensor(&GroupElement::mono(*m).coproduct()));
    }
    t
}

/// Same as [`delta_n`] but expanding the first leg each time.
pub fn delta_n_left(a: &GroupElement, n: usize) -> TensorElement {
    assert!(n >= 1);
    let mut t = a.coproduct();
    for _ in 1..n {
        t = t.map_leg(0, 2, |m| TensorLegImage::from_tensor(&GroupElement::mono(*m).coproduct()));
    }
    t
}

/// `ad(a) = Σ a_(2) ⊗ S(a_(1)) a_(3)`.
pub fn ad(a: &GroupElement) -> TensorElement {
    let t = delta_n(a, 2);
    let mut out = TensorElement::zero(2);
    for (k, c) in t.terms() {
        let second = &GroupElement::mono(k[0]).antipode() * &GroupElement::mono(k[2]);
        out.add_scaled(&TensorElement::product_of(&[GroupElement::mono(k[1]), second]), c);
    }
    out
}

fn right_map(t: &TensorElement, f: impl Fn(&GMonomial) -> TensorElement) -> TensorElement {
    assert_eq!(t.rank(), 2);
    let mut out = TensorElement::zero(2);
    for (k, c) in t.terms() {
        let left = TensorElement::product_of(&[GroupElement::mono(k[0]), GroupElement::one()]);
        out.add_scaled(&left.mul(&f(&k[1])), c);
    }
    out
}

/// `r(a⊗b) = (a⊗1)Δ(b)`.
pub fn r_map(t: &TensorElement) -> TensorElement {
    right_map(t, |m| GroupElement::mono(*m).coproduct())
}

/// `r⁻¹(a⊗b) = (a⊗1)(S⊗I)Δ(b)`.
pub fn r_inv(t: &TensorElement) -> TensorElement {
    right_map(t, |m| {
        GroupElement::mono(*m).coproduct().map_leg_element(0, |x| GroupElement::mono(*x).antipode())
    })
}

/// `m(S⊗I)Δ(a)`.
pub fn antipode_left_contraction(a: &GroupElement) -> GroupElement {
    a.coproduct().map_leg_element(0, |x| GroupElement::mono(*x).antipode()).multiply_legs(0).flatten()
}

/// `m(I⊗S)Δ(a)`.
pub fn antipode_right_contraction(a: &GroupElement) -> GroupElement {
    a.coproduct().map_leg_element(1, |x| GroupElement::mono(*x).antipode()).multiply_legs(0).flatten()
}

/// `(ε⊗I)Δ(a)` or `(I⊗ε)Δ(a)`.
pub fn counit_contraction(a: &GroupElement, leg: usize) -> GroupElement {
    a.coproduct()
        .map_leg(leg, 0, |m| TensorLegImage::scalar(GroupElement::mono(*m).counit()))
        .flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::GGen;
    use crate::scalar::KScalar;

    #[test]
    fn delta_n_of_x0_twice() {
        let t = delta_n(&GroupElement::x(0), 2);
        let mut expect = TensorElement::zero(3);
        for rho in 0..3 {
            for nu in 0..3 {
                expect.add_scaled(
                    &TensorElement::product_of(&[GroupElement::l(0, rho), GroupElement::l(rho, nu), GroupElement::x(nu)]),
                    &KScalar::one(),
                );
            }
            expect.add_scaled(
                &TensorElement::product_of(&[GroupElement::l(0, rho), GroupElement::x(rho), GroupElement::one()]),
                &KScalar::one(),
            );
        }
        expect.add_scaled(
            &TensorElement::product_of(&[GroupElement::x(0), GroupElement::one(), GroupElement::one()]),
            &KScalar::one(),
        );
        assert_eq!(t, expect);
        assert_eq!(delta_n(&GroupElement::one(), 3), TensorElement::one(4));
    }

    #[test]
    fn coassociativity_on_generators() {
        for g in GGen::all() {
            let a = GroupElement::gen(g);
            assert_eq!(delta_n(&a, 2), delta_n_left(&a, 2));
        }
    }

    #[test]
    fn ad_of_unit() {
        assert_eq!(ad(&GroupElement::one()), TensorElement::one(2));
    }

    #[test]
    fn r_inverse_examples() {
        let t = TensorElement::product_of(&[GroupElement::one(), GroupElement::x(1)]);
        assert_eq!(r_map(&t), GroupElement::x(1).coproduct());
        let u = TensorElement::product_of(&[GroupElement::x(0), GroupElement::x(1)]);
        assert!(r_inv(&r_map(&u)).equals(&u));
        let v = TensorElement::product_of(&[GroupElement::one(), GroupElement::l(0, 1)]);
        let mut expect = TensorElement::zero(2);
        for rho in 0..3 {
            expect = expect.add(&TensorElement::product_of(&[GroupElement::l(0, rho).antipode(), GroupElement::l(rho, 1)]));
        }
        assert_eq!(r_inv(&v), expect);
    }

    #[test]
    fn antipode_axiom_on_x() {
        for mu in 0..3 {
            assert!(antipode_left_contraction(&GroupElement::x(mu)).is_zero());
            assert!(antipode_right_contraction(&GroupElement::x(mu)).is_zero());
            assert_eq!(counit_contraction(&GroupElement::x(mu), 0), GroupElement::x(mu));
        }
    }
}
