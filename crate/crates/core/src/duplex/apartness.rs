//! Positive evidence about the position of a duplex: apartness from zero,
//! inverses gated by that evidence, and the decidable "x > a or x < b".

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{Duplex, IndexFn};
use crate::error::DuplexError;
use crate::rational::Rational;

/// Evidence that `|x| > 1/m`: at precision level `level`, the approximation
/// `r = u(index)` satisfies `|r| - 2^-level > 1/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartnessWitness {
    pub m: BigUint,
    pub level: u32,
    pub index: u64,
}

impl ApartnessWitness {
    /// Tries levels `0..=max_level` until one certifies `|x| > 1/m`.
    pub fn certify(x: &Duplex, m: impl Into<BigUint>, max_level: u32) -> Option<Self> {
        let m = m.into();
        (0..=max_level).find_map(|level| {
            let w = ApartnessWitness {
                m: m.clone(),
                level,
                index: x.regulator(level),
            };
            w.certifies(x).then_some(w)
        })
    }

    /// Re-checks the witness against `x`.
    pub fn certifies(&self, x: &Duplex) -> bool {
        if self.m == BigUint::from(0u32) || x.regulator(self.level) != self.index {
            return false;
        }
        let r = x.term(self.index);
        let slack = r.abs() - Rational::pow2(-(self.level as i64));
        let bound = Rational::new(BigInt::one(), BigInt::from(self.m.clone())).expect("m > 0");
        slack > bound
    }

    pub fn reciprocal_bound(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.m.clone())).expect("m > 0")
    }
}

/// Result of a budgeted apartness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Apartness {
    Apart(ApartnessWitness),
    /// No level up to the budget separated the value from zero. This is a
    /// state of knowledge, not a claim that the value is zero.
    Unknown(u32),
}

/// The claim returned by [`Duplex::locate`]; always true of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Located {
    Above(Rational),
    Below(Rational),
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Located::Above(a) => write!(f, "x > {a}"),
            Located::Below(b) => write!(f, "x < {b}"),
        }
    }
}

impl Duplex {
    /// Looks for `m` with `|x| > 1/m` at levels `1..=budget`.
    ///
    /// At level `n` with `r = approx(x, n)`, `|x| >= |r| - 2^-n`. Once
    /// `|r| > 2 * 2^-n` that lower bound is positive and any `m` with
    /// `1/m < |r| - 2^-n` is a genuine witness. A returned witness always
    /// re-certifies; an apart value is found once the budget is large
    /// enough.
    pub fn apartness_search(&self, budget: u32) -> Apartness {
        for level in 1..=budget {
            let r = self.approx(level);
            let eps = Rational::pow2(-(level as i64));
            if r.abs() > &eps + &eps {
                let gap = r.abs() - eps;
                let m = (gap.recip().expect("gap > 0").floor() + BigInt::one())
                    .to_biguint()
                    .expect("positive");
                return Apartness::Apart(ApartnessWitness {
                    m,
                    level,
                    index: self.regulator(level),
                });
            }
        }
        Apartness::Unknown(budget)
    }

    /// `1/x`, given evidence that `|x| > 1/m`.
    ///
    /// Let `s = ceil_log2(2m)`, so `2^-s <= 1/(2m)`, and `N = c_x(s)`. For
    /// `k >= N`, `|u_x(k) - x| <= 2^-s`, hence `|u_x(k)| > 1/m - 1/(2m) =
    /// 1/(2m)`. Term `k` is `1/u_x(max(k, N))` and
    /// ```text
    /// c(n) = max(N, c_x(n + ceil_log2(4 m^2)))
    /// ```
    /// because past `N`, `|1/a - 1/a'| = |a - a'| / |a a'| < 4 m^2 |a - a'|`.
    pub fn inverse(&self, witness: &ApartnessWitness) -> Result<Duplex, DuplexError> {
        if !witness.certifies(self) {
            return Err(DuplexError::InvalidWitness {
                m: witness.m.to_string(),
                level: witness.level,
            });
        }
        if let Some(q) = self.as_rational() {
            return Ok(Duplex::from_rational(q.recip()?));
        }
        let m = Rational::from_integer(BigInt::from(witness.m.clone()));
        let s = (&m + &m).ceil_log2()? as u32;
        let shift = (Rational::from(4) * &m * &m).ceil_log2()? as u32;
        let start = self.regulator(s);

        let x = self.clone();
        let terms = move |k: u64| x.term(k.max(start)).recip().expect("bounded away from zero");
        let x = self.clone();
        let regulator = move |n: u32, _| x.regulator(n + shift).max(start);
        Ok(Duplex::from_hinted(
            Box::new(terms),
            Box::new(regulator) as Box<IndexFn>,
            None,
        ))
    }

    /// Decides `x > a` or `x < b` for `a < b`.
    ///
    /// Takes the least level `n` with `2^-n < (b - a)/4`. With
    /// `r = approx(x, n)`, `r > (a + b)/2` gives `x > a`; otherwise
    /// `x < b`. Either way `|x - r| <= 2^-n` keeps the claim at least
    /// `(b - a)/4` clear of the wrong side. A tie at the midpoint goes to
    /// `x < b`.
    pub fn locate(&self, a: &Rational, b: &Rational) -> Result<Located, DuplexError> {
        if a >= b {
            return Err(DuplexError::EmptyInterval {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let quarter = (b - a) * Rational::new(1, 4)?;
        let level = strict_level_below(&quarter);
        let r = self.approx(level);
        let mid = (a + b) * Rational::new(1, 2)?;
        Ok(if r > mid {
            Located::Above(a.clone())
        } else {
            Located::Below(b.clone())
        })
    }
}

/// Least natural `n` with `2^-n < t`, for positive `t`.
pub(crate) fn strict_level_below(t: &Rational) -> u32 {
    let inv = t.recip().expect("positive");
    let k = inv.ceil_log2().expect("positive");
    // 2^k >= 1/t; strictness needs 2^k > 1/t.
    let k = if Rational::pow2(k) == inv { k + 1 } else { k };
    k.max(0) as u32
}
