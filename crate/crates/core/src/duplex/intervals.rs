//! Contracting sequences of open rational intervals `]u_n, v_n[` with
//! `u_n < u_{n+1} < v_{n+1} < v_n` and widths eventually below every `2^-n`.
//! They are interchangeable with duplexes.

use std::sync::{Arc, Mutex};

use super::{Duplex, IndexFn};
use crate::error::DuplexError;
use crate::rational::Rational;

type IntervalFn = dyn Fn(u64) -> (Rational, Rational) + Send + Sync;
type LevelFn = dyn Fn(u32) -> u64 + Send + Sync;

/// Upper limit on how far the width search walks before declaring that the
/// intervals do not contract.
const WIDTH_SEARCH_LIMIT: u64 = 1 << 20;

struct Inner {
    generator: Box<IntervalFn>,
    checked: Mutex<Vec<(Rational, Rational)>>,
    nullity: Option<Box<LevelFn>>,
}

#[derive(Clone)]
pub struct ContractingIntervals(Arc<Inner>);

impl ContractingIntervals {
    pub fn new<F>(generator: F) -> Self
    where
        F: Fn(u64) -> (Rational, Rational) + Send + Sync + 'static,
    {
        ContractingIntervals(Arc::new(Inner {
            generator: Box::new(generator),
            checked: Mutex::new(Vec::new()),
            nullity: None,
        }))
    }

    /// Attaches a zero certificate: interval `d(n)` must lie inside
    /// `]-2^-n, 2^-n[`. Checked whenever it is consulted.
    pub fn with_nullity<F>(self, d: F) -> Self
    where
        F: Fn(u32) -> u64 + Send + Sync + 'static,
    {
        let inner = Arc::try_unwrap(self.0).unwrap_or_else(|_| panic!("with_nullity on a shared sequence"));
        ContractingIntervals(Arc::new(Inner {
            nullity: Some(Box::new(d)),
            ..inner
        }))
    }

    pub fn has_nullity(&self) -> bool {
        self.0.nullity.is_some()
    }

    /// Interval `n`, after checking the nesting of every interval up to it.
    pub fn interval(&self, n: u64) -> Result<(Rational, Rational), DuplexError> {
        let mut checked = self.0.checked.lock().expect("interval cache poisoned");
        while checked.len() as u64 <= n {
            let index = checked.len() as u64;
            let (lo, hi) = (self.0.generator)(index);
            if lo >= hi {
                return Err(DuplexError::EmptyContractingInterval { index });
            }
            if let Some((plo, phi)) = checked.last() {
                if !(plo < &lo && hi < *phi) {
                    return Err(DuplexError::NotNested { index });
                }
            }
            checked.push((lo, hi));
        }
        Ok(checked[n as usize].clone())
    }

    /// Checks intervals `0..=upto`.
    pub fn validate(&self, upto: u64) -> Result<(), DuplexError> {
        self.interval(upto).map(|_| ())
    }

    /// Smallest index `m >= from` whose interval is narrower than `2^-n`.
    fn width_index(&self, n: u32, from: u64) -> Result<u64, DuplexError> {
        let eps = Rational::pow2(-(n as i64));
        for m in from..from + WIDTH_SEARCH_LIMIT {
            let (lo, hi) = self.interval(m)?;
            if hi - lo < eps {
                return Ok(m);
            }
        }
        Err(DuplexError::NotNested { index: from + WIDTH_SEARCH_LIMIT })
    }

    fn nullity_index(&self, n: u32) -> Result<Option<u64>, DuplexError> {
        let Some(d) = &self.0.nullity else {
            return Ok(None);
        };
        let m = d(n);
        let (lo, hi) = self.interval(m)?;
        let eps = Rational::pow2(-(n as i64));
        if -&eps <= lo && hi <= eps {
            Ok(Some(m))
        } else {
            Err(DuplexError::InvalidNullity { level: n })
        }
    }
}

impl Duplex {
    /// Interval `n` is centred on `r = approx(x, n + 3)` with half-width
    /// `w_n = 2^-(n+1) + 2^-(n+3)`.
    ///
    /// `|r_n - x| <= 2^-(n+3) < w_n`, so every interval contains `x`.
    /// Consecutive centres differ by at most `3 * 2^-(n+4)` while
    /// `w_n - w_{n+1} = 5 * 2^-(n+4)`, which gives strict nesting. The
    /// width `2 w_n` drops below `2^-n` at index `n + 1`.
    ///
    /// A nullity certificate transfers as `d(n) = n`: with `x = 0`,
    /// `|r_n| + w_n <= 6 * 2^-(n+3) < 2^-n`.
    pub fn to_contracting(&self) -> ContractingIntervals {
        let x = self.clone();
        let ci = ContractingIntervals::new(move |n| {
            let level = n as i64;
            let centre = x.approx(n as u32 + 3);
            let half = Rational::pow2(-(level + 1)) + Rational::pow2(-(level + 3));
            (&centre - &half, centre + half)
        });
        if self.has_nullity() {
            ci.with_nullity(|n| n as u64)
        } else {
            ci
        }
    }

    /// Midpoints of a contracting sequence, with `c(n)` the first index whose
    /// interval is narrower than `2^-n`: every later midpoint lies inside that
    /// interval. A zero certificate on the intervals becomes a nullity
    /// certificate on the duplex.
    ///
    /// Intervals `0` and `1` (and the first certificate levels) are checked
    /// here. Later intervals are checked as they are produced; a violation
    /// discovered then is a broken caller contract and panics.
    pub fn from_contracting(ci: &ContractingIntervals) -> Result<Duplex, DuplexError> {
        ci.validate(1)?;
        for level in 0..4 {
            ci.nullity_index(level)?;
        }
        let source = ci.clone();
        let terms = move |k: u64| {
            let (lo, hi) = source
                .interval(k)
                .unwrap_or_else(|e| panic!("contracting interval invariant: {e}"));
            (lo + hi) * Rational::new(1, 2).expect("nonzero")
        };
        let source = ci.clone();
        let regulator = move |n: u32, hint: u64| {
            source
                .width_index(n, hint)
                .unwrap_or_else(|e| panic!("contracting interval invariant: {e}"))
        };
        let nullity = ci.has_nullity().then(|| {
            let source = ci.clone();
            Box::new(move |n: u32, _| {
                source
                    .nullity_index(n)
                    .unwrap_or_else(|e| panic!("contracting interval invariant: {e}"))
                    .expect("certificate present")
            }) as Box<IndexFn>
        });
        Ok(Duplex::from_hinted(Box::new(terms), Box::new(regulator), nullity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn round_trip_on_a_third() {
        let x = Duplex::from_rational(r(1, 3));
        let back = Duplex::from_contracting(&x.to_contracting()).unwrap();
        assert!((back.approx(20) - r(1, 3)).abs() <= Rational::pow2(-20));
    }

    #[test]
    fn shrinking_zero_intervals_carry_nullity() {
        let ci = ContractingIntervals::new(|n| {
            let h = Rational::pow2(-(n as i64) - 1);
            (-&h, h)
        })
        .with_nullity(|n| n as u64);
        let z = Duplex::from_contracting(&ci).unwrap();
        assert!(z.has_nullity());
        assert!(z.approx(30).is_zero());
        let d = z.nullity(12).unwrap();
        assert!(z.term(d).abs() < Rational::pow2(-12));
    }

    #[test]
    fn non_nested_input_is_rejected() {
        let ci = ContractingIntervals::new(|n| (r(0, 1), r(n as i64 + 1, 1)));
        assert_eq!(
            Duplex::from_contracting(&ci).unwrap_err(),
            DuplexError::NotNested { index: 1 }
        );
        let empty = ContractingIntervals::new(|_| (r(1, 1), r(1, 1)));
        assert!(matches!(
            empty.validate(0),
            Err(DuplexError::EmptyContractingInterval { index: 0 })
        ));
        // Shares an endpoint with its predecessor: nested, but not strictly.
        let touching = ContractingIntervals::new(|n| (r(0, 1), Rational::pow2(-(n as i64))));
        assert!(touching.validate(3).is_err());
    }

    #[test]
    fn bogus_nullity_is_rejected() {
        let ci = ContractingIntervals::new(|n| {
            let h = Rational::pow2(-(n as i64) - 1);
            (Rational::one() - &h, Rational::one() + h)
        })
        .with_nullity(|n| n as u64);
        assert!(matches!(
            Duplex::from_contracting(&ci),
            Err(DuplexError::InvalidNullity { .. })
        ));
    }
}
