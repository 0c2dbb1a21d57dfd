mod common;

use common::{build, r, regulator_holds, tree, Tree};
use duplex::{Apartness, ApartnessWitness, ContractingIntervals, Duplex, Located, Rational};
use proptest::prelude::*;

fn eps(n: u32) -> Rational {
    Rational::pow2(-(n as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regulators_are_sound(t in tree(), n in 0u32..=40) {
        let x = build(&t);
        prop_assert_eq!(regulator_holds(&x, n), Ok(()));
    }

    #[test]
    fn approximations_are_coherent(t in tree(), n in 0u32..30, m in 0u32..30) {
        let x = build(&t);
        let gap = (x.approx(n) - x.approx(m)).abs();
        prop_assert!(gap <= eps(n) + eps(m));
    }

    #[test]
    fn ring_laws_hold_up_to_nullity(a in tree(), b in tree(), c in tree()) {
        let (x, y, z) = (build(&a), build(&b), build(&c));
        for n in [8u32, 32] {
            let bound = eps(n) + eps(n);
            let comm_add = (&x + &y) - (&y + &x);
            let comm_mul = (&x * &y) - (&y * &x);
            let assoc = ((&x + &y) + &z) - (&x + &(&y + &z));
            let distrib = (&x * &(&y + &z)) - ((&x * &y) + (&x * &z));
            for d in [comm_add, comm_mul, assoc, distrib] {
                prop_assert!(d.approx(n).abs() < bound);
            }
        }
    }

    #[test]
    fn inverse_law(t in tree(), n in 0u32..40) {
        let x = build(&t);
        if let Apartness::Apart(w) = x.apartness_search(32) {
            prop_assert!(w.certifies(&x));
            let prod = &x * &x.inverse(&w).unwrap();
            let err = (prod.approx(n) - Rational::one()).abs();
            prop_assert!(err <= eps(n) * Rational::from(3));
        }
    }

    #[test]
    fn locate_claims_survive(t in tree(), a in -200i64..200, w in 1i64..100, den in 1i64..16) {
        let x = build(&t);
        let (a, b) = (r(a, den), r(a + w, den));
        let tol = (&b - &a) * r(1, 8);
        let level = (tol.recip().unwrap().ceil_log2().unwrap() + 1).max(0) as u32;
        let v = x.approx(level);
        let e = eps(level);
        match x.locate(&a, &b).unwrap() {
            Located::Above(lo) => prop_assert!(&v + &e > lo),
            Located::Below(hi) => prop_assert!(&v - &e < hi),
        }
    }

    #[test]
    fn decimals_are_within_their_bound(t in tree(), digits in 1usize..30) {
        let x = build(&t);
        let text = x.to_decimal(digits).text;
        let shown: Rational = text.parse().unwrap();
        let truth = x.approx(4 * digits as u32 + 20);
        let bound = Rational::from(10).pow(-(digits as i32)).unwrap();
        prop_assert!((shown - truth).abs() < bound);
    }

    #[test]
    fn contracting_intervals_nest_and_contain(t in tree(), k in 0u64..20) {
        let x = build(&t);
        let ci = x.to_contracting();
        ci.validate(k + 1).unwrap();
        let (lo, hi) = ci.interval(k).unwrap();
        let v = x.approx(60);
        prop_assert!(&lo - &eps(60) < v && v < &hi + &eps(60));
    }
}

#[test]
fn fixed_locations() {
    let pi = build(&Tree::Pi);
    assert_eq!(pi.locate(&r(3, 1), &r(4, 1)).unwrap(), Located::Below(r(4, 1)));
    let two = Duplex::from_rational(r(2, 1));
    assert_eq!(two.locate(&r(0, 1), &r(1, 1)).unwrap(), Located::Above(r(0, 1)));
    assert!(two.locate(&r(1, 1), &r(1, 1)).is_err());
}

#[test]
fn zero_is_never_certified_apart() {
    let e = build(&Tree::E);
    let zero = &e - &e;
    assert_eq!(zero.apartness_search(64), Apartness::Unknown(64));
    assert!(ApartnessWitness::certify(&zero, 1_000_000u32, 64).is_none());
}

#[test]
fn forged_witness_is_rejected() {
    let x = Duplex::from_rational(r(1, 1000));
    let forged = ApartnessWitness {
        m: 10u32.into(),
        level: 3,
        index: x.regulator(3),
    };
    assert!(x.inverse(&forged).is_err());
}

#[test]
fn interval_round_trip_keeps_the_value() {
    let pi = build(&Tree::Pi);
    let back = Duplex::from_contracting(&pi.to_contracting()).unwrap();
    let d = (back.approx(100) - pi.approx(100)).abs();
    assert!(d <= eps(99));

    let shrinking = ContractingIntervals::new(|n| {
        let w = Rational::pow2(-(n as i64));
        (-w.clone(), w)
    })
    .with_nullity(|n| u64::from(n) + 1);
    let zero = Duplex::from_contracting(&shrinking).unwrap();
    assert!(zero.has_nullity());
}
