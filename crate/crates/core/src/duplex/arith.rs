//! Field and lattice operations with explicitly derived regulators.
//!
//! Notation in the proofs: `a = u_x(m)`, `a' = u_x(m')`, likewise `b` for
//! `y`, and "m is past c(n)" means `m >= c(n)`.

use std::ops::{Add, Mul, Neg, Sub};

use super::{Duplex, IndexFn};
use crate::rational::Rational;

fn log2_bound(bound: &Rational) -> u32 {
    // bound >= 1, so the logarithm is nonnegative.
    bound.ceil_log2().expect("canonical bound is positive") as u32
}

impl Duplex {
    /// Sum.
    ///
    /// `u(k) = u_x(k) + u_y(k)`, `c(n) = max(c_x(n+1), c_y(n+1))`.
    /// Past `c(n)`: `|(a+b) - (a'+b')| <= |a-a'| + |b-b'| < 2^-(n+1) + 2^-(n+1)`.
    /// The nullity certificate propagates the same way when both sides
    /// carry one.
    pub fn add(&self, other: &Duplex) -> Duplex {
        if let (Some(p), Some(q)) = (self.as_rational(), other.as_rational()) {
            return Duplex::from_rational(p + q);
        }
        let (x, y) = (self.clone(), other.clone());
        let terms = move |k| x.term(k) + y.term(k);
        let (x, y) = (self.clone(), other.clone());
        let regulator = move |n: u32, _| x.regulator(n + 1).max(y.regulator(n + 1));
        let nullity = both_null(self, other).map(|(x, y)| {
            Box::new(move |n: u32, _| x.nullity(n + 1).unwrap_or(0).max(y.nullity(n + 1).unwrap_or(0)))
                as Box<IndexFn>
        });
        Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity)
    }

    /// Negation keeps the regulator and any nullity certificate.
    pub fn neg(&self) -> Duplex {
        if let Some(p) = self.as_rational() {
            return Duplex::from_rational(-p);
        }
        let x = self.clone();
        let terms = move |k| -x.term(k);
        let x = self.clone();
        let regulator = move |n, _| x.regulator(n);
        let nullity = self.has_nullity().then(|| {
            let x = self.clone();
            Box::new(move |n, _| x.nullity(n).unwrap_or(0)) as Box<IndexFn>
        });
        Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity)
    }

    pub fn sub(&self, other: &Duplex) -> Duplex {
        self.add(&other.neg())
    }

    /// Product.
    ///
    /// Let `B_x`, `B_y` be the canonical bounds, so `|a| < B_x` once `m` is
    /// past `c_x(0)`. Term `k` reads index `j = max(k, c_x(0), c_y(0))` and
    /// ```text
    /// c(n) = max(c_x(n + 1 + lg B_y), c_y(n + 1 + lg B_x), c_x(0), c_y(0))
    /// ```
    /// with `lg = ceil_log2`. Past `c(n)`:
    /// `|ab - a'b'| <= |a| |b - b'| + |b'| |a - a'|
    ///              < B_x 2^-(n+1+lg B_x) + B_y 2^-(n+1+lg B_y) <= 2^-n`.
    ///
    /// A nullity certificate on either factor yields one on the product:
    /// `d(n) = max(d_x(n + lg B_y), c_x(0), c_y(0))`, since then
    /// `|ab| < 2^-(n + lg B_y) B_y <= 2^-n`.
    pub fn mul(&self, other: &Duplex) -> Duplex {
        if let (Some(p), Some(q)) = (self.as_rational(), other.as_rational()) {
            return Duplex::from_rational(p * q);
        }
        let lg_x = log2_bound(&self.canonical_bound());
        let lg_y = log2_bound(&other.canonical_bound());
        let start = self.regulator(0).max(other.regulator(0));

        let (x, y) = (self.clone(), other.clone());
        let terms = move |k: u64| {
            let j = k.max(start);
            x.term(j) * y.term(j)
        };
        let (x, y) = (self.clone(), other.clone());
        let regulator = move |n: u32, _| {
            x.regulator(n + 1 + lg_y)
                .max(y.regulator(n + 1 + lg_x))
                .max(start)
        };
        let nullity: Option<Box<IndexFn>> = match (self.has_nullity(), other.has_nullity()) {
            (false, false) => None,
            (x_null, y_null) => {
                let (x, y) = (self.clone(), other.clone());
                Some(Box::new(move |n: u32, _| {
                    let via_x = x_null.then(|| x.nullity(n + lg_y).unwrap_or(0));
                    let via_y = y_null.then(|| y.nullity(n + lg_x).unwrap_or(0));
                    let d = match (via_x, via_y) {
                        (Some(a), Some(b)) => a.min(b),
                        (Some(a), None) | (None, Some(a)) => a,
                        (None, None) => unreachable!(),
                    };
                    d.max(start)
                }))
            }
        };
        Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity)
    }

    /// Absolute value: `||a| - |a'|| <= |a - a'|`, so the regulator is kept.
    pub fn abs(&self) -> Duplex {
        if let Some(p) = self.as_rational() {
            return Duplex::from_rational(p.abs());
        }
        let x = self.clone();
        let terms = move |k| x.term(k).abs();
        let x = self.clone();
        let regulator = move |n, _| x.regulator(n);
        let nullity = self.has_nullity().then(|| {
            let x = self.clone();
            Box::new(move |n, _| x.nullity(n).unwrap_or(0)) as Box<IndexFn>
        });
        Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity)
    }

    /// Pointwise maximum; `|max(a,b) - max(a',b')| <= max(|a-a'|, |b-b'|)`
    /// gives `c(n) = max(c_x(n), c_y(n))`.
    pub fn max(&self, other: &Duplex) -> Duplex {
        self.lattice(other, |a, b| a.max(b))
    }

    /// Pointwise minimum, same regulator as [`Duplex::max`].
    pub fn min(&self, other: &Duplex) -> Duplex {
        self.lattice(other, |a, b| a.min(b))
    }

    fn lattice(&self, other: &Duplex, pick: fn(Rational, Rational) -> Rational) -> Duplex {
        if let (Some(p), Some(q)) = (self.as_rational(), other.as_rational()) {
            return Duplex::from_rational(pick(p.clone(), q.clone()));
        }
        let (x, y) = (self.clone(), other.clone());
        let terms = move |k| pick(x.term(k), y.term(k));
        let (x, y) = (self.clone(), other.clone());
        let regulator = move |n, _| x.regulator(n).max(y.regulator(n));
        // |max(a, b)| and |min(a, b)| are both <= max(|a|, |b|).
        let nullity = both_null(self, other).map(|(x, y)| {
            Box::new(move |n, _| x.nullity(n).unwrap_or(0).max(y.nullity(n).unwrap_or(0))) as Box<IndexFn>
        });
        Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity)
    }
}

fn both_null(x: &Duplex, y: &Duplex) -> Option<(Duplex, Duplex)> {
    (x.has_nullity() && y.has_nullity()).then(|| (x.clone(), y.clone()))
}

macro_rules! duplex_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Duplex> for &Duplex {
            type Output = Duplex;
            fn $method(self, rhs: &Duplex) -> Duplex {
                Duplex::$method(self, rhs)
            }
        }
        impl $trait<Duplex> for Duplex {
            type Output = Duplex;
            fn $method(self, rhs: Duplex) -> Duplex {
                Duplex::$method(&self, &rhs)
            }
        }
        impl $trait<&Duplex> for Duplex {
            type Output = Duplex;
            fn $method(self, rhs: &Duplex) -> Duplex {
                Duplex::$method(&self, rhs)
            }
        }
        impl $trait<Duplex> for &Duplex {
            type Output = Duplex;
            fn $method(self, rhs: Duplex) -> Duplex {
                Duplex::$method(self, &rhs)
            }
        }
    };
}

duplex_binop!(Add, add);
duplex_binop!(Sub, sub);
duplex_binop!(Mul, mul);

impl Neg for &Duplex {
    type Output = Duplex;
    fn neg(self) -> Duplex {
        Duplex::neg(self)
    }
}

impl Neg for Duplex {
    type Output = Duplex;
    fn neg(self) -> Duplex {
        Duplex::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn dx(n: i64, d: i64) -> Duplex {
        Duplex::from_rational(r(n, d))
    }

    /// 1/3 as the non-constant sequence of truncated binary expansions.
    fn third_binary() -> Duplex {
        Duplex::from_fns(
            |k| {
                let scale = Rational::pow2(k as i64);
                Rational::from_integer((r(1, 3) * &scale).floor()) / scale
            },
            |n| n as u64 + 1,
            None,
        )
    }

    fn within(x: &Rational, target: &Rational, level: i64) -> bool {
        (x - target).abs() <= Rational::pow2(-level)
    }

    #[test]
    fn sums_of_constants() {
        let s = dx(1, 3) + dx(1, 6);
        assert!(within(&s.approx(20), &r(1, 2), 20));
        let t = &third_binary() + &dx(1, 6);
        assert!(within(&t.approx(20), &r(1, 2), 20));
    }

    #[test]
    fn sum_regulator_shifts_by_one() {
        let x = third_binary();
        let y = third_binary();
        let s = &x + &y;
        assert_eq!(s.regulator(5), x.regulator(6));
    }

    #[test]
    fn product_examples() {
        assert_eq!((dx(3, 2) * dx(4, 3)).approx(5), Rational::from(2));
        let z = &dx(0, 1) * &third_binary();
        assert!(z.has_nullity());
        for n in [0, 5, 17] {
            assert!(z.approx(n).is_zero());
            let d = z.nullity(n).unwrap();
            assert!(z.term(d + 3).abs() < Rational::pow2(-(n as i64)));
        }
    }

    #[test]
    fn nullity_propagates_through_sum_only_when_both_null() {
        let a = third_binary() - third_binary();
        assert!(!a.has_nullity());
        let b = dx(0, 1) + dx(0, 1);
        assert!(b.has_nullity());
        let c = (dx(0, 1) * third_binary()) + (third_binary() * dx(0, 1));
        assert!(c.has_nullity());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(dx(-3, 1).abs().approx(0), Rational::from(3));
        assert_eq!(dx(1, 2).max(&dx(1, 3)).approx(10), r(1, 2));
        assert_eq!(dx(1, 2).min(&dx(1, 3)).approx(10), r(1, 3));
        let m = third_binary().max(&dx(1, 4));
        assert!(within(&m.approx(12), &r(1, 3), 12));
    }
}
