//! Fugacious sequences: every computed term is zero, yet nobody knows
//! whether all of them are. Equality of integer sequences reduces to the
//! nullity of `|u(n) - v(n)|`, which can be probed but not decided.
//!
//! Also here: star discrepancy of the fractional parts of `alpha^n` for
//! rational `alpha`. Almost every real `alpha > 1` gives equidistributed
//! powers, yet no explicit such `alpha` is known; the demo only shows the
//! measured spread for rational inputs (exactly computable) and says
//! nothing about the open problem.

use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::error::SequenceError;
use crate::rational::Rational;

/// Default cap on the bit size of `alpha^n` in [`power_fraction_discrepancy`].
pub const DEFAULT_BIT_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeStatus {
    /// Indices `0..=n` are all zero.
    AllZeroSoFar(u64),
    /// The first nonzero term. Permanent.
    NonzeroFound { index: u64, value: u128 },
}

impl fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeStatus::AllZeroSoFar(n) => write!(f, "AllZeroSoFar({n})"),
            ProbeStatus::NonzeroFound { index, value } => write!(f, "NonzeroFound({index}, {value})"),
        }
    }
}

#[derive(Default)]
struct Frontier {
    /// Number of indices probed so far (all zero unless `nonzero` is set).
    probed: u64,
    nonzero: Option<(u64, u128)>,
}

/// A decidable natural-valued sequence with a memoized probe frontier.
/// Only the frontier and the first nonzero term are stored.
pub struct FugaciousSequence {
    pred: Box<dyn Fn(u64) -> u128 + Send + Sync>,
    frontier: Mutex<Frontier>,
}

impl FugaciousSequence {
    pub fn new(pred: impl Fn(u64) -> u128 + Send + Sync + 'static) -> Self {
        FugaciousSequence {
            pred: Box::new(pred),
            frontier: Mutex::new(Frontier::default()),
        }
    }

    pub fn value(&self, n: u64) -> u128 {
        (self.pred)(n)
    }

    /// Evaluates every unprobed index up to `upto`, stopping at the first
    /// nonzero term, and returns the overall status. Probing below the
    /// frontier reports the frontier.
    pub fn probe(&self, upto: u64) -> ProbeStatus {
        let mut state = self.frontier.lock().expect("probe state poisoned");
        if state.nonzero.is_none() {
            while state.probed <= upto {
                let n = state.probed;
                let v = (self.pred)(n);
                state.probed += 1;
                if v != 0 {
                    state.nonzero = Some((n, v));
                    break;
                }
            }
        }
        Self::status_of(&state).expect("at least one index probed")
    }

    /// Status without probing; `None` before the first probe.
    pub fn status(&self) -> Option<ProbeStatus> {
        Self::status_of(&self.frontier.lock().expect("probe state poisoned"))
    }

    fn status_of(state: &Frontier) -> Option<ProbeStatus> {
        match state.nonzero {
            Some((index, value)) => Some(ProbeStatus::NonzeroFound { index, value }),
            None if state.probed == 0 => None,
            None => Some(ProbeStatus::AllZeroSoFar(state.probed - 1)),
        }
    }
}

/// Trial-division primality, adequate for the small arguments here.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `0` when `2n + 4` is a sum of two primes, else `1`. Nullity of this
/// sequence is Goldbach's conjecture.
pub fn goldbach_term(n: u64) -> u128 {
    let even = 2 * n + 4;
    let split = (2..=n + 2).any(|p| is_prime(p) && is_prime(even - p));
    u128::from(!split)
}

pub fn goldbach_indicator() -> FugaciousSequence {
    FugaciousSequence::new(goldbach_term)
}

/// The fugacious sequence `n -> |u(n) - v(n)|`; `u = v` exactly when it is
/// null.
pub fn seq_compare(
    u: impl Fn(u64) -> i64 + Send + Sync + 'static,
    v: impl Fn(u64) -> i64 + Send + Sync + 'static,
) -> FugaciousSequence {
    FugaciousSequence::new(move |n| (i128::from(u(n)) - i128::from(v(n))).unsigned_abs())
}

/// Star discrepancy of `frac(alpha^n)` for `n = 1..=count`:
/// `max_k max(k/N - x_(k), x_(k) - (k-1)/N)` over the sorted points.
pub fn power_fraction_discrepancy(alpha: &Rational, count: u64, bit_cap: u64) -> Result<Rational, SequenceError> {
    if alpha <= &Rational::one() {
        return Err(SequenceError::AlphaTooSmall(alpha.to_string()));
    }
    if count == 0 {
        return Err(SequenceError::NoPoints);
    }
    let mut points = Vec::with_capacity(count as usize);
    let mut power = Rational::one();
    for n in 1..=count {
        power = &power * alpha;
        let bits = power.bit_size();
        if bits > bit_cap {
            return Err(SequenceError::TooLarge { power: n, bits, cap: bit_cap });
        }
        points.push(power.fract_part());
    }
    Ok(star_discrepancy(points))
}

/// Star discrepancy of a finite point set in `[0, 1)`.
pub fn star_discrepancy(mut points: Vec<Rational>) -> Rational {
    points.sort();
    let total = BigInt::from(points.len());
    points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let k = BigInt::from(i + 1);
            let above = Rational::new(k.clone(), total.clone()).expect("nonzero") - x;
            let below = x - Rational::new(k - 1, total.clone()).expect("nonzero");
            above.max(below)
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `D*` rendered as `p/q` plus a decimal with `digits` places.
pub fn render_discrepancy(d: &Rational, digits: usize) -> (String, String) {
    (d.to_string(), d.to_decimal_string(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn probe_examples() {
        let zeros = FugaciousSequence::new(|_| 0);
        assert_eq!(zeros.status(), None);
        assert_eq!(zeros.probe(1000), ProbeStatus::AllZeroSoFar(1000));
        assert_eq!(zeros.probe(10), ProbeStatus::AllZeroSoFar(1000));

        let late = FugaciousSequence::new(|n| u128::from(n >= 7));
        assert_eq!(late.probe(100), ProbeStatus::NonzeroFound { index: 7, value: 1 });
        assert_eq!(late.probe(3), ProbeStatus::NonzeroFound { index: 7, value: 1 });
    }

    #[test]
    fn goldbach_small_cases() {
        assert_eq!(goldbach_term(0), 0);
        assert_eq!(goldbach_term(3), 0);
        assert_eq!(goldbach_indicator().probe(500), ProbeStatus::AllZeroSoFar(500));
    }

    #[test]
    fn comparison_of_sequences() {
        let same = seq_compare(|n| n as i64, |n| n as i64);
        assert_eq!(same.probe(200), ProbeStatus::AllZeroSoFar(200));
        let differ = seq_compare(|n| n as i64, |n| if n == 5 { 6 } else { n as i64 });
        assert_eq!(differ.probe(100), ProbeStatus::NonzeroFound { index: 5, value: 1 });
        let extreme = seq_compare(|_| i64::MIN, |_| i64::MAX);
        assert_eq!(extreme.value(0), u128::from(u64::MAX));
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(
            power_fraction_discrepancy(&Rational::from(2), 50, DEFAULT_BIT_CAP).unwrap(),
            Rational::one()
        );
        assert_eq!(power_fraction_discrepancy(&r(3, 2), 1, DEFAULT_BIT_CAP).unwrap(), r(1, 2));
        assert!(power_fraction_discrepancy(&Rational::one(), 5, DEFAULT_BIT_CAP).is_err());
        assert!(power_fraction_discrepancy(&r(3, 2), 0, DEFAULT_BIT_CAP).is_err());
        assert!(matches!(
            power_fraction_discrepancy(&r(3, 2), 200, 64),
            Err(SequenceError::TooLarge { .. })
        ));
    }

    #[test]
    fn discrepancy_lower_bound_is_half_over_n() {
        // The evenly spaced midpoints (2k-1)/(2N) achieve 1/(2N) exactly.
        let pts = (1..=4).map(|k| r(2 * k - 1, 8)).collect();
        assert_eq!(star_discrepancy(pts), r(1, 8));
        // 5/4 gives fractional parts 1/4 and 9/16: D* = 7/16 < 1/2 = 1/N.
        assert_eq!(power_fraction_discrepancy(&r(5, 4), 2, DEFAULT_BIT_CAP).unwrap(), r(7, 16));
    }
}
