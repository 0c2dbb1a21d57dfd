#![allow(dead_code)]

use duplex::{const_e, const_pi, const_sqrt, const_zeta3, Apartness, Duplex, Rational};
use proptest::prelude::*;

/// A recipe for a duplex, kept so failures print something readable.
#[derive(Clone, Debug)]
pub enum Tree {
    Rat(i64, i64),
    /// `q + (-1)^(k + s) 2^-k / 3`, a genuinely non-constant sequence.
    Noisy(i64, i64, u8),
    Sqrt(u32, u32),
    Pi,
    E,
    Zeta3,
    Neg(Box<Tree>),
    Abs(Box<Tree>),
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Max(Box<Tree>, Box<Tree>),
    Min(Box<Tree>, Box<Tree>),
    /// Inverse when apartness certifies within 24 levels, else the operand.
    Inv(Box<Tree>),
    /// Round trip through contracting intervals.
    Contract(Box<Tree>),
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn noisy(q: Rational, seed: u8) -> Duplex {
    Duplex::from_fns(
        move |k| {
            let sign = if (k + u64::from(seed)) % 2 == 0 { 1 } else { -1 };
            &q + &(Rational::pow2(-(k.min(4000) as i64)) * r(sign, 3))
        },
        |n| u64::from(n) + 2,
        None,
    )
}

pub fn build(t: &Tree) -> Duplex {
    match t {
        Tree::Rat(n, d) => Duplex::from_rational(r(*n, *d)),
        Tree::Noisy(n, d, s) => noisy(r(*n, *d), *s),
        Tree::Sqrt(a, b) => const_sqrt(&r(i64::from(*a), i64::from(*b))).unwrap(),
        Tree::Pi => const_pi(),
        Tree::E => const_e(),
        Tree::Zeta3 => const_zeta3(),
        Tree::Neg(a) => -build(a),
        Tree::Abs(a) => build(a).abs(),
        Tree::Add(a, b) => build(a) + build(b),
        Tree::Sub(a, b) => build(a) - build(b),
        Tree::Mul(a, b) => build(a) * build(b),
        Tree::Max(a, b) => build(a).max(&build(b)),
        Tree::Min(a, b) => build(a).min(&build(b)),
        Tree::Inv(a) => {
            let x = build(a);
            match x.apartness_search(24) {
                Apartness::Apart(w) => x.inverse(&w).unwrap(),
                Apartness::Unknown(_) => x,
            }
        }
        Tree::Contract(a) => Duplex::from_contracting(&build(a).to_contracting()).unwrap(),
    }
}

pub fn leaf() -> impl Strategy<Value = Tree> {
    prop_oneof![
        (-60i64..60, 1i64..12).prop_map(|(n, d)| Tree::Rat(n, d)),
        (-60i64..60, 1i64..12, any::<u8>()).prop_map(|(n, d, s)| Tree::Noisy(n, d, s)),
        (1u32..200, 1u32..20).prop_map(|(a, b)| Tree::Sqrt(a, b)),
        Just(Tree::Pi),
        Just(Tree::E),
        Just(Tree::Zeta3),
    ]
}

pub fn tree() -> impl Strategy<Value = Tree> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Tree::Neg(Box::new(a))),
            inner.clone().prop_map(|a| Tree::Abs(Box::new(a))),
            inner.clone().prop_map(|a| Tree::Inv(Box::new(a))),
            inner.clone().prop_map(|a| Tree::Contract(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Max(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Tree::Min(Box::new(a), Box::new(b))),
        ]
    })
}

/// Checks `|u(m) - u(m')| < 2^-n` for all `m, m'` in `[c(n), c(n) + 8]`.
pub fn regulator_holds(x: &Duplex, n: u32) -> Result<(), String> {
    let c = x.regulator(n);
    let eps = Rational::pow2(-(n as i64));
    let terms: Vec<Rational> = (c..=c + 8).map(|k| x.term(k)).collect();
    let lo = terms.iter().min().unwrap();
    let hi = terms.iter().max().unwrap();
    if hi - lo < eps {
        Ok(())
    } else {
        Err(format!("level {n}: spread {} at c(n) = {c}", (hi - lo).to_f64()))
    }
}
