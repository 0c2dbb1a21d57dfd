//! Constructive reals ("duplexes"): a rational sequence `u(k)` paired with a
//! convergence regulator `c(n)` such that
//!
//! ```text
//! m, m' >= c(n)  =>  |u(m) - u(m')| < 2^-n
//! ```
//!
//! A duplex may also carry a nullity certificate `d(n)`: evidence that the
//! value is zero, i.e. `|u(m)| < 2^-n` for every `m >= d(n)`.
//!
//! Nothing here decides equality. Two usable relatives of "x is not zero"
//! are represented: the nullity certificate (x = 0) and the apartness
//! witness (an integer `m` with `|x| > 1/m`). Mere non-nullity, the
//! negative statement "x cannot be 0", has no representation since no
//! operation can consume it.
//!
//! Sequences, regulators and certificates are memoized behind mutexes; a
//! `Duplex` is a cheap `Arc` handle and is `Send + Sync`.

mod apartness;
mod arith;
mod intervals;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::rational::Rational;

pub use apartness::{Apartness, ApartnessWitness, Located};
pub use intervals::ContractingIntervals;

pub(crate) type TermFn = dyn Fn(u64) -> Rational + Send + Sync;

/// Raw index function. The second argument is the value already stored for
/// the previous level, a valid lower bound for the answer once the function
/// is wrapped in [`Monotone`].
pub(crate) type IndexFn = dyn Fn(u32, u64) -> u64 + Send + Sync;

/// A level-to-index function stored as its running maximum, so the
/// effective function is nondecreasing whatever the raw one does.
struct Monotone {
    raw: Box<IndexFn>,
    cache: Mutex<Vec<u64>>,
}

impl Monotone {
    fn new(raw: Box<IndexFn>) -> Self {
        Monotone {
            raw,
            cache: Mutex::new(Vec::new()),
        }
    }

    fn at(&self, n: u32) -> u64 {
        let target = n as usize;
        loop {
            let (len, prev) = {
                let cache = self.cache.lock().expect("regulator cache poisoned");
                if let Some(&v) = cache.get(target) {
                    return v;
                }
                (cache.len(), cache.last().copied().unwrap_or(0))
            };
            // Evaluate without holding the lock; the raw function may
            // consult other duplexes.
            let value = (self.raw)(len as u32, prev).max(prev);
            let mut cache = self.cache.lock().expect("regulator cache poisoned");
            if cache.len() == len {
                cache.push(value);
            }
        }
    }
}

struct Inner {
    terms: Box<TermFn>,
    term_cache: Mutex<HashMap<u64, Rational>>,
    regulator: Monotone,
    nullity: Option<Monotone>,
    constant: Option<Rational>,
}

/// A constructive real number.
#[derive(Clone)]
pub struct Duplex(Arc<Inner>);

impl Duplex {
    /// The constant sequence `q` with regulator `0`. Zero gets the nullity
    /// certificate `d(n) = 0`.
    pub fn from_rational(q: Rational) -> Self {
        let nullity: Option<Box<IndexFn>> = if q.is_zero() {
            Some(Box::new(|_, _| 0))
        } else {
            None
        };
        let value = q.clone();
        Duplex(Arc::new(Inner {
            terms: Box::new(move |_| value.clone()),
            term_cache: Mutex::new(HashMap::new()),
            regulator: Monotone::new(Box::new(|_, _| 0)),
            nullity: nullity.map(Monotone::new),
            constant: Some(q),
        }))
    }

    pub fn zero() -> Self {
        Duplex::from_rational(Rational::zero())
    }

    /// Builds a duplex from caller-supplied sequence and regulator.
    ///
    /// Nothing is checked: the regulator must satisfy the Cauchy condition
    /// and `nullity`, if given, must really certify zero. The sampled
    /// checks in the test suites are the only safety net.
    pub fn from_fns<U, C>(terms: U, regulator: C, nullity: Option<Box<dyn Fn(u32) -> u64 + Send + Sync>>) -> Self
    where
        U: Fn(u64) -> Rational + Send + Sync + 'static,
        C: Fn(u32) -> u64 + Send + Sync + 'static,
    {
        let nullity: Option<Box<IndexFn>> = nullity.map(|d| Box::new(move |n, _| d(n)) as Box<IndexFn>);
        Duplex::from_hinted(Box::new(terms), Box::new(move |n, _| regulator(n)), nullity)
    }

    pub(crate) fn from_hinted(terms: Box<TermFn>, regulator: Box<IndexFn>, nullity: Option<Box<IndexFn>>) -> Self {
        Duplex(Arc::new(Inner {
            terms,
            term_cache: Mutex::new(HashMap::new()),
            regulator: Monotone::new(regulator),
            nullity: nullity.map(Monotone::new),
            constant: None,
        }))
    }

    /// `u(k)`.
    pub fn term(&self, k: u64) -> Rational {
        if let Some(q) = &self.0.constant {
            return q.clone();
        }
        if let Some(v) = self.0.term_cache.lock().expect("term cache poisoned").get(&k) {
            return v.clone();
        }
        let v = (self.0.terms)(k);
        self.0
            .term_cache
            .lock()
            .expect("term cache poisoned")
            .entry(k)
            .or_insert(v)
            .clone()
    }

    /// `c(n)`, nondecreasing in `n`.
    pub fn regulator(&self, n: u32) -> u64 {
        self.0.regulator.at(n)
    }

    /// `d(n)` when the duplex carries a nullity certificate.
    pub fn nullity(&self, n: u32) -> Option<u64> {
        self.0.nullity.as_ref().map(|d| d.at(n))
    }

    pub fn has_nullity(&self) -> bool {
        self.0.nullity.is_some()
    }

    /// The rational value, when this duplex was built as a constant.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.0.constant.as_ref()
    }

    /// `u(c(n))`, within `2^-n` of the limit.
    pub fn approx(&self, n: u32) -> Rational {
        self.term(self.regulator(n))
    }

    /// `|u(c(0))| + 1`, which strictly bounds `|u(m)|` for all `m >= c(0)`.
    pub fn canonical_bound(&self) -> Rational {
        self.approx(0).abs() + Rational::one()
    }

    /// Renders `digits` fractional decimals, within `10^-digits` of the
    /// true value. The last digit is not claimed to be the exact decimal
    /// digit; deciding it may require deciding an equality.
    pub fn to_decimal(&self, digits: usize) -> DecimalApprox {
        let level = decimal_level(digits);
        DecimalApprox {
            text: self.approx(level).to_decimal_string(digits),
            digits,
        }
    }
}

/// Smallest level `n` with `2^-n <= 10^-(digits + 2)`.
pub(crate) fn decimal_level(digits: usize) -> u32 {
    let ten = Rational::from(10);
    let scale = ten.pow(digits as i32 + 2).expect("positive power");
    scale.ceil_log2().expect("positive") as u32
}

impl fmt::Debug for Duplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Duplex")
            .field("approx_0", &self.approx(0).to_string())
            .field("nullity", &self.has_nullity())
            .finish()
    }
}

impl From<Rational> for Duplex {
    fn from(q: Rational) -> Self {
        Duplex::from_rational(q)
    }
}

/// A decimal rendering together with its error guarantee: the true value
/// lies within `10^-digits` of `text`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalApprox {
    pub text: String,
    pub digits: usize,
}

impl DecimalApprox {
    pub fn error_bound(&self) -> String {
        format!("1e-{}", self.digits)
    }
}

impl fmt::Display for DecimalApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.text, self.error_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn constants_embed_exactly() {
        let third = Duplex::from_rational(r(1, 3));
        assert_eq!(third.approx(10), r(1, 3));
        assert_eq!(third.regulator(40), 0);
        assert!(!third.has_nullity());

        let zero = Duplex::from_rational(Rational::zero());
        assert_eq!(zero.nullity(7), Some(0));

        let x = Duplex::from_rational(r(-7, 2));
        assert_eq!(x.term(1000), r(-7, 2));
        assert_eq!(x.regulator(3), 0);
    }

    #[test]
    fn canonical_bound_examples() {
        assert_eq!(Duplex::from_rational(5.into()).canonical_bound(), Rational::from(6));
        assert_eq!(Duplex::from_rational(r(-1, 2)).canonical_bound(), r(3, 2));
    }

    #[test]
    fn regulator_is_stored_monotone() {
        // A raw regulator that dips at odd levels.
        let x = Duplex::from_fns(
            |k| Rational::pow2(-(k as i64)),
            |n| if n % 2 == 1 { 0 } else { n as u64 + 1 },
            None,
        );
        let levels: Vec<u64> = (0..8).map(|n| x.regulator(n)).collect();
        assert_eq!(levels, vec![1, 1, 3, 3, 5, 5, 7, 7]);
    }

    #[test]
    fn decimal_rendering() {
        let quarter = Duplex::from_rational(r(1, 4));
        let d = quarter.to_decimal(2);
        assert_eq!(d.text, "0.25");
        assert_eq!(d.to_string(), "0.25 ± 1e-2");
        assert_eq!(decimal_level(1), 10); // 2^-10 <= 10^-3 < 2^-9
    }

    #[test]
    fn memoized_terms_are_stable_across_threads() {
        let x = Duplex::from_fns(|k| r(1, k as i64 + 1), |n| 1u64 << n.min(20), None);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let x = x.clone();
                std::thread::spawn(move || (0..12).map(|n| x.approx(n)).collect::<Vec<_>>())
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
