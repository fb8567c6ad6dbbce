//! Property tests: ring axioms for the scalar field, substitution as a
//! homomorphism, and the structural laws of the superalgebra.

use proptest::prelude::*;

use rpq_virasoro::deformation::preset;
use rpq_virasoro::poly::{Ctx, LaurentPoly, Mono, SubstTarget};
use rpq_virasoro::scalar::{rat, Scalar};
use rpq_virasoro::superspace::{sigma, SuperElement};

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(
        (
            -4i64..=4,
            -2i32..=2,
            -2i32..=2,
            0i32..=1,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut acc = LaurentPoly::zero(Ctx::Pqc);
        for (c, ep, eq, ec) in terms {
            let mono = Mono([ep, eq, ec, 0]);
            acc = acc.add(&LaurentPoly::monomial(Ctx::Pqc, rat(c, 1), mono));
        }
        acc
    })
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (arb_poly(), arb_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn arb_super() -> impl Strategy<Value = SuperElement> {
    proptest::collection::vec((-3i64..=3, -3i64..=3, arb_scalar()), 0..4).prop_map(|terms| {
        let mut e = SuperElement::zero();
        for (n, m, c) in terms {
            e.add_even(n, c.clone());
            e.add_odd(m, c);
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        let assoc_add = (&(&a + &b) + &c) == (&a + &(&b + &c));
        prop_assert!(assoc_add);
        let assoc_mul = (&(&a * &b) * &c) == (&a * &(&b * &c));
        prop_assert!(assoc_mul);
        let distrib = (&a * &(&b + &c)) == (&(&a * &b) + &(&a * &c));
        prop_assert!(distrib);
        prop_assert!((&a * &b) == (&b * &a));
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn cross_multiplication_equality_is_an_equivalence(a in arb_scalar(), k in arb_poly()) {
        prop_assert!(a == a);
        // scaling numerator and denominator by one nonzero polynomial
        // gives an equal scalar
        prop_assume!(!k.is_zero());
        let scaled = Scalar::new(a.num().mul(&k), a.den().mul(&k)).unwrap();
        prop_assert!(a == scaled);
        prop_assert!(scaled == a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_scalar(), b in arb_scalar()) {
        let map = [
            SubstTarget::Power("p", 2),
            SubstTarget::Power("q", 3),
            SubstTarget::Power("c", 1),
        ];
        let lhs = (&a * &b).substitute(Ctx::Pqc, &map).unwrap();
        let rhs = &a.substitute(Ctx::Pqc, &map).unwrap() * &b.substitute(Ctx::Pqc, &map).unwrap();
        prop_assert!(lhs == rhs);
        let lhs = (&a + &b).substitute(Ctx::Pqc, &map).unwrap();
        let rhs = &a.substitute(Ctx::Pqc, &map).unwrap() + &b.substitute(Ctx::Pqc, &map).unwrap();
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn super_product_laws(a in arb_super(), b in arb_super(), c in arb_super()) {
        // associativity
        prop_assert_eq!(a.super_mul(&b).super_mul(&c), a.super_mul(&b.super_mul(&c)));
        // super-commutativity: no odd-odd products survive, so ab = ba
        prop_assert_eq!(a.super_mul(&b), b.super_mul(&a));
    }

    #[test]
    fn odd_odd_products_vanish(n in -4i64..=4, m in -4i64..=4) {
        let a = SuperElement::theta_t_pow(n);
        let b = SuperElement::theta_t_pow(m);
        prop_assert!(a.super_mul(&b).is_zero());
    }

    #[test]
    fn sigma_is_multiplicative(a in arb_super(), b in arb_super()) {
        let d = preset("jagannathan-srinivasa").unwrap();
        prop_assert_eq!(
            sigma(&d, &a.super_mul(&b)),
            sigma(&d, &a).super_mul(&sigma(&d, &b))
        );
    }
}
