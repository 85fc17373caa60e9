//! Monomial algebra checks against factor sets read off a materialized prefix.

use std::collections::HashSet;
use std::sync::Arc;

use growth_forge::algebra::{AlgebraElement, AlgebraError, Frame, Monomial, MonomialAlgebra};
use growth_forge::field::{Field, Scalar};
use growth_forge::word::{letters_from_str, InfiniteWord, Letter, RunSequence};
use num_bigint::BigInt;
use proptest::prelude::*;

fn geo2() -> MonomialAlgebra {
    MonomialAlgebra::of_word(Arc::new(InfiniteWord::new(RunSequence::Geometric { base: 2 })), Field::Rationals)
}

fn mono(s: &str) -> Monomial {
    Monomial::from_letters(&letters_from_str(s).unwrap())
}

fn elem(s: &str) -> AlgebraElement {
    AlgebraElement::monomial(mono(s))
}

fn prefix_letters(k: u32) -> Vec<Letter> {
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    w.build_prefix(k).unwrap().to_letters(1 << 22).unwrap()
}

fn windows(text: &[Letter], max_len: usize) -> HashSet<Vec<Letter>> {
    (1..=max_len).flat_map(|l| text.windows(l).map(<[Letter]>::to_vec)).collect()
}

#[test]
fn monomial_products() {
    let a = geo2();
    let f = a.field();
    assert_eq!(a.mul(&elem("x"), &elem("y")).unwrap(), elem("xy"));
    assert!(a.mul(&elem("x"), &elem("x")).unwrap().is_zero());
    let x_plus_y = elem("x").add(&elem("y"), f);
    assert_eq!(a.mul(&x_plus_y, &elem("x")).unwrap(), elem("yx"));
}

#[test]
fn growth_matches_window_counts() {
    let a = geo2();
    let text = prefix_letters(12);
    let factors = windows(&text, 40);
    let dims = a.growth_values(&Frame::standard(), 40).unwrap();
    for (n, &d) in dims.iter().enumerate() {
        let expected = 1 + factors.iter().filter(|w| w.len() <= n).count() as u64;
        assert_eq!(d, expected, "n={n}");
    }
    assert_eq!(dims[0], 1);
    assert_eq!(dims[1], 3);
    assert_eq!(dims[2], 6);
}

#[test]
fn identity_frame_is_constant() {
    let a = geo2();
    let r = a.growth_report(20, &Frame::identity_only()).unwrap();
    assert!(r.dims().iter().all(|&d| d == 1));
    assert!(!r.quadratic);
    assert!(!a.bergman_bound_check(2, &Frame::identity_only()).unwrap());
    assert!(a.bergman_bound_check(2, &Frame::standard()).unwrap());
    assert!(a.bergman_bound_check(1, &Frame::standard()).unwrap());
}

#[test]
fn free_algebra_is_exponential() {
    let a = MonomialAlgebra::free(Field::Rationals);
    let r = a.growth_report(10, &Frame::standard()).unwrap();
    for (n, d) in r.dims().iter().enumerate() {
        assert_eq!(*d, (1u64 << (n + 1)) - 1);
    }
    assert!(!r.quadratic);
}

#[test]
fn annihilator_of_x() {
    let a = geo2();
    let out = a.annihilator_search(&elem("x"), 1, 2, &Frame::standard()).unwrap();
    assert_eq!(out.element, Some(elem("x")));
    let none = a.annihilator_search(&a.one(), 0, 3, &Frame::standard()).unwrap();
    assert_eq!(none.element, None);
}

#[test]
fn two_sided_growth_examples() {
    let a = geo2();
    let frame = Frame::standard();
    assert_eq!(a.two_sided_growth(&elem("y"), 1, &frame).unwrap(), 7);
    assert_eq!(a.two_sided_growth(&a.one(), 0, &frame).unwrap(), 1);
    assert_eq!(a.ideal_power_growth(&elem("y"), 1, 1, &frame).unwrap(), 7);
    assert!(matches!(
        a.ideal_power_growth(&elem("x"), 2, 3, &frame),
        Err(AlgebraError::NilpotentInput { power: 2 })
    ));
}

#[test]
fn reduction_relations() {
    let frame = Frame::standard();
    let control = MonomialAlgebra::control(Field::Rationals);
    let rel = control.reduction_search(&elem("x"), 3, &frame).unwrap().unwrap();
    assert_eq!((rel.m, rel.p), (0, 1));
    assert!(rel.verify(&control, &elem("x"), &frame).unwrap());

    let a = geo2();
    assert!(a.reduction_search(&elem("x"), 4, &frame).unwrap().is_none());
    // V^m 1 V^p = V^{m+p} depends only on m + p, so V 1 ⊆ 1 V already at (1, 0)
    let free = MonomialAlgebra::free(Field::Rationals);
    let rel = free.reduction_search(&free.one(), 4, &frame).unwrap().unwrap();
    assert_eq!((rel.m, rel.p), (1, 0));
    assert!(rel.verify(&free, &free.one(), &frame).unwrap());
    assert!(free.reduction_search(&elem("x"), 4, &frame).unwrap().is_none());
}

#[test]
fn nilpotency_examples() {
    let a = geo2();
    let frame = Frame::standard();
    assert_eq!(a.nilpotency_index(&elem("x"), 1, 16, &frame).unwrap(), Some(2));
    assert_eq!(a.nilpotency_index(&elem("y"), 1, 16, &frame).unwrap(), None);
    assert!(a.nilpotency_index(&elem("x"), 3, 64, &frame).unwrap().is_some());
}

#[test]
fn bridges() {
    let a = geo2();
    assert_eq!(a.prime_witness(&mono("x"), &mono("x"), 64).unwrap(), Some(mono("yy")));
    assert_eq!(a.prime_witness(&mono("y"), &mono("y"), 64).unwrap(), Some(Monomial::one()));
    let tower = MonomialAlgebra::of_word(Arc::new(InfiniteWord::new(RunSequence::Tower)), Field::Rationals);
    let w = tower.prime_witness(&mono("x"), &mono("x"), 70_000).unwrap().unwrap();
    assert_eq!(w.len(), 65536);
    assert_eq!(w.count(Letter::Y), 65536);
}

#[test]
fn prime_field_arithmetic() {
    let f = Field::prime(5).unwrap();
    let a = MonomialAlgebra::of_word(Arc::new(InfiniteWord::new(RunSequence::Geometric { base: 2 })), f);
    let three_x = AlgebraElement::from_terms(f, [(mono("x"), Scalar::from_integer(BigInt::from(3)))]);
    let two_x = AlgebraElement::from_terms(f, [(mono("x"), Scalar::from_integer(BigInt::from(2)))]);
    assert!(a.add(&three_x, &two_x).is_zero());
}

fn arb_element() -> impl Strategy<Value = AlgebraElement> {
    let word = proptest::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..5);
    proptest::collection::vec((word, -3i64..=3), 1..4).prop_map(|terms| {
        AlgebraElement::from_terms(
            Field::Rationals,
            terms
                .into_iter()
                .map(|(w, c)| (Monomial::from_letters(&w), Scalar::from_integer(BigInt::from(c)))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_element(), q in arb_element(), r in arb_element()) {
        let a = geo2();
        let (p, _) = a.reduce(&p).unwrap();
        let (q, _) = a.reduce(&q).unwrap();
        let (r, _) = a.reduce(&r).unwrap();
        let left = a.mul(&a.mul(&p, &q).unwrap(), &r).unwrap();
        let right = a.mul(&p, &a.mul(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let dist = a.mul(&p, &a.add(&q, &r)).unwrap();
        let split = a.add(&a.mul(&p, &q).unwrap(), &a.mul(&p, &r).unwrap());
        prop_assert_eq!(dist, split);
        prop_assert_eq!(a.mul(&a.one(), &p).unwrap(), p.clone());
        prop_assert_eq!(a.mul(&p, &a.one()).unwrap(), p);
    }

    #[test]
    fn products_vanish_exactly_off_factors(u in "[xy]{1,6}", v in "[xy]{1,6}") {
        let a = geo2();
        let text = prefix_letters(10);
        let factors = windows(&text, 12);
        let (mu, mv) = (mono(&u), mono(&v));
        if factors.contains(mu.letters()) && factors.contains(mv.letters()) {
            let product = a.mul(&AlgebraElement::monomial(mu.clone()), &AlgebraElement::monomial(mv.clone())).unwrap();
            prop_assert_eq!(!product.is_zero(), factors.contains(mu.concat(&mv).letters()));
        }
    }
}
