//! Property suite for the cyclotomic field layer: field axioms on random
//! values, homomorphy of the embeddings, parser round trips, and agreement
//! with double-precision evaluation.

use num::ToPrimitive;
use omk_core::exactnum::{
    format_cyclotomic, parse_cyclotomic, rat, to_common_order, Cyclotomic, QPoly, Rational,
};
use proptest::prelude::*;

fn rational_strategy(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// A random element of `Q(zeta_order)`, built from an unreduced polynomial so
/// canonicalization is exercised too.
fn cyclotomic_strategy(order: u64, bound: i64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(rational_strategy(bound), 0..=(order as usize + 2))
        .prop_map(move |coeffs| Cyclotomic::make(order, &QPoly::from_coeffs(coeffs)))
}

fn order_strategy() -> impl Strategy<Value = u64> {
    1u64..=12
}

fn same_order_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    order_strategy().prop_flat_map(|order| {
        (
            cyclotomic_strategy(order, 6),
            cyclotomic_strategy(order, 6),
            cyclotomic_strategy(order, 6),
        )
    })
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in same_order_triple()) {
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}

proptest! {
    #[test]
    fn multiplicative_inverses(order in order_strategy(), coeffs in prop::collection::vec(-6i64..=6, 1..8)) {
        let poly = QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c, 1)).collect());
        let a = Cyclotomic::make(order, &poly);
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
    }
}

proptest! {
    #[test]
    fn embedding_is_a_ring_homomorphism(
        order in 1u64..=8,
        k in 1u64..=4,
        ca in prop::collection::vec(-5i64..=5, 0..6),
        cb in prop::collection::vec(-5i64..=5, 0..6),
    ) {
        let target = order * k;
        let a = Cyclotomic::make(order, &QPoly::from_coeffs(ca.iter().map(|&c| rat(c, 1)).collect()));
        let b = Cyclotomic::make(order, &QPoly::from_coeffs(cb.iter().map(|&c| rat(c, 1)).collect()));
        let lhs_mul = a.mul(&b).embed(target).unwrap();
        let rhs_mul = a.embed(target).unwrap().mul(&b.embed(target).unwrap());
        prop_assert_eq!(lhs_mul, rhs_mul);
        let lhs_add = a.add(&b).embed(target).unwrap();
        let rhs_add = a.embed(target).unwrap().add(&b.embed(target).unwrap());
        prop_assert_eq!(lhs_add, rhs_add);
    }
}

proptest! {
    #[test]
    fn parse_format_round_trip(order in order_strategy(), coeffs in prop::collection::vec((-30i64..=30, 1i64..=9), 0..8)) {
        let poly = QPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
        let a = Cyclotomic::make(order, &poly);
        let text = format_cyclotomic(&a);
        let reparsed = parse_cyclotomic(&text, order).unwrap();
        prop_assert_eq!(&reparsed, &a);
        // formatting the reparse is a fixed point
        prop_assert_eq!(format_cyclotomic(&reparsed), text);
    }
}

proptest! {
    #[test]
    fn numeric_product_consistency(order in order_strategy(), a in coeff_bounded_value(), b in coeff_bounded_value()) {
        // coefficients bounded by 10^3 keep f64 evaluation well-conditioned,
        // so the absolute discrepancy stays below 1e-6
        let a = Cyclotomic::make(order, &a);
        let b = Cyclotomic::make(order, &b);
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (pr, pi) = a.mul(&b).to_complex();
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
    }
}

/// Polynomials whose coefficients are bounded by 10^3 in numerator and
/// denominator.
fn coeff_bounded_value() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-1000i64..=1000, 1i64..=1000), 0..8)
        .prop_map(|coeffs| QPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect()))
}

#[test]
fn common_order_promotion() {
    let a = Cyclotomic::zeta(4);
    let b = Cyclotomic::zeta(6);
    let (a12, b12) = to_common_order(&a, &b);
    assert_eq!(a12.order(), 12);
    assert_eq!(b12.order(), 12);
    let product = a12.mul(&b12);
    // zeta_4 * zeta_6 = zeta_12^5
    assert_eq!(product, Cyclotomic::zeta_pow(12, 5));
    let (re, im) = product.to_complex();
    let theta = 2.0 * std::f64::consts::PI * 5.0 / 12.0;
    assert!((re - theta.cos()).abs() < 1e-9);
    assert!((im - theta.sin()).abs() < 1e-9);
}

#[test]
fn rationals_survive_complex_evaluation() {
    let q = rat(-22, 7);
    let a = Cyclotomic::from_rational(9, q.clone());
    let (re, im) = a.to_complex();
    assert!((re - q.to_f64().unwrap()).abs() < 1e-12);
    assert!(im.abs() < 1e-12);
}
