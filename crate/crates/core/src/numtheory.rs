//! Continued-fraction convergents of duplexes and a certified check of the
//! irrationality measure `|pi - p/q| > q^-42`.
//!
//! Convergents are computed from a rational approximation, not lazily
//! from the duplex: the partial quotients of a general real are not
//! computable (each one needs a floor, i.e. an exact comparison). Every
//! convergent is therefore re-certified against the duplex.
//!
//! A related measure, `|e^pi - p/q| > q^(-c log log q)`, has an
//! unspecified constant `c` and is not checked.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::constants::const_pi;
use crate::duplex::Duplex;
use crate::error::NumTheoryError;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    /// Position in the continued fraction (0 for the integer part).
    pub index: usize,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q > 0")
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Convergents of a rational, in order, while `q <= q_max`. When two
/// consecutive convergents share a denominator (`[a0; 1, ...]`), only the
/// later one is kept, so denominators strictly increase.
fn rational_convergents(x: &Rational, q_max: &BigInt) -> Vec<Convergent> {
    let mut out: Vec<Convergent> = Vec::new();
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for index in 0.. {
        let a = rest.floor();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if &q_next > q_max {
            break;
        }
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        let c = Convergent {
            p: p.clone(),
            q: q.clone(),
            index,
        };
        match out.last_mut() {
            Some(last) if last.q == c.q => *last = c,
            _ => out.push(c),
        }
        let frac = &rest - &Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip().expect("nonzero");
    }
    out
}

/// Convergents `p/q` of `x` with `q <= q_max`, each certified to satisfy
/// `|x - p/q| < 1/q^2`.
///
/// Works on `r = approx(x, B)` with `B = 2 ceil_log2(q_max) + 16`. A
/// convergent passes when `|r - p/q| + 2^-B < 1/q^2`, which bounds the true
/// distance. On failure the precision is doubled once before giving up.
pub fn cf_convergents(x: &Duplex, q_max: u64) -> Result<Vec<Convergent>, NumTheoryError> {
    if q_max == 0 {
        return Err(NumTheoryError::EmptyRange);
    }
    let qm = Rational::from(q_max as i64);
    let bits = 2 * qm.ceil_log2().expect("q_max >= 1") as u32 + 16;
    match certified_convergents(x, q_max, bits) {
        Ok(list) => Ok(list),
        Err(_) => certified_convergents(x, q_max, 2 * bits),
    }
}

fn certified_convergents(x: &Duplex, q_max: u64, bits: u32) -> Result<Vec<Convergent>, NumTheoryError> {
    let r = x.approx(bits);
    let eps = Rational::pow2(-(bits as i64));
    let list = rational_convergents(&r, &BigInt::from(q_max));
    for c in &list {
        let q2 = Rational::from_integer(&c.q * &c.q);
        let bound = q2.recip().expect("q > 0");
        if (&r - &c.value()).abs() + &eps >= bound {
            return Err(NumTheoryError::Precision {
                p: c.p.to_string(),
                q: c.q.to_string(),
                bits,
            });
        }
    }
    Ok(list)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// One checked convergent.
///
/// `margin` bounds `|pi - p/q| - q^-exponent`: a certified lower bound
/// (positive) for `Pass`, a certified upper bound (negative) for `Fail`,
/// and the lower bound for `Unknown`. It is truncated toward zero to
/// [`MARGIN_BITS`] significant bits, which preserves the direction of the
/// bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureEntry {
    pub convergent: Convergent,
    pub margin: Rational,
    pub verdict: Verdict,
    /// Precision level `n` of the `2^-n` approximation of pi used.
    pub level: u32,
}

pub const MARGIN_BITS: u32 = 64;

/// How many times the precision is raised before an entry is `Unknown`.
pub const PRECISION_RETRIES: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub exponent: u32,
    pub q_max: u64,
    pub entries: Vec<MeasureEntry>,
}

impl MeasureReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == v).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "summary: {} convergents, {} PASS, {} FAIL, {} UNKNOWN (exponent {}, max q {})",
            self.entries.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Unknown),
            self.exponent,
            self.q_max
        )
    }
}

/// Lines `p/q  margin  VERDICT`, then the summary line.
impl fmt::Display for MeasureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}  {}  {}", e.convergent, e.margin, e.verdict)?;
        }
        write!(f, "{}", self.summary())
    }
}

/// Checks `|pi - p/q| > q^-exponent` for every convergent of pi with
/// `q <= q_max`. Convergents suffice: a rational violating the bound with
/// the smallest `q` would be a best approximation, hence a convergent.
/// The bound is only meaningful for `q >= 2`: at `q = 1` it reads
/// `|pi - p| > 1`, which `3/1` violates, and the report says so.
///
/// Each check approximates pi at a level `n` with `2^-n <= q^-exponent / 4`
/// and compares exactly: `|r - p/q| - 2^-n > q^-exponent` passes,
/// `|r - p/q| + 2^-n < q^-exponent` fails, anything else retries with
/// 64 more bits.
pub fn irrationality_check_pi(exponent: u32, q_max: u64) -> Result<MeasureReport, NumTheoryError> {
    let pi = const_pi();
    let entries = cf_convergents(&pi, q_max)?
        .into_iter()
        .map(|c| check_convergent(&pi, c, exponent))
        .collect();
    Ok(MeasureReport {
        exponent,
        q_max,
        entries,
    })
}

fn check_convergent(x: &Duplex, convergent: Convergent, exponent: u32) -> MeasureEntry {
    let target = Rational::from_integer(convergent.q.clone())
        .pow(-(exponent as i32))
        .expect("q > 0");
    let base = 2 - target.floor_log2().expect("positive");
    let value = convergent.value();
    let mut last_lower = Rational::zero();
    let mut level = base.max(0) as u32;
    for attempt in 0..=PRECISION_RETRIES {
        level = base.max(0) as u32 + 64 * attempt;
        let eps = Rational::pow2(-(level as i64));
        let distance = (x.approx(level) - &value).abs();
        let lower = &distance - &eps - &target;
        let upper = &distance + &eps - &target;
        if lower.is_positive() {
            return entry(convergent, lower, Verdict::Pass, level);
        }
        if upper.is_negative() {
            return entry(convergent, upper, Verdict::Fail, level);
        }
        last_lower = lower;
    }
    entry(convergent, last_lower, Verdict::Unknown, level)
}

fn entry(convergent: Convergent, margin: Rational, verdict: Verdict, level: u32) -> MeasureEntry {
    MeasureEntry {
        convergent,
        margin: margin.truncate_significant_bits(MARGIN_BITS),
        verdict,
        level,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::const_sqrt;

    fn pq(list: &[Convergent]) -> Vec<(i64, i64)> {
        list.iter()
            .map(|c| (c.p.clone().try_into().unwrap(), c.q.clone().try_into().unwrap()))
            .collect()
    }

    #[test]
    fn rational_input_terminates() {
        let x = Duplex::from_rational(Rational::new(22, 7).unwrap());
        assert_eq!(pq(&cf_convergents(&x, 10).unwrap()), vec![(3, 1), (22, 7)]);
    }

    #[test]
    fn sqrt2_convergents() {
        let x = const_sqrt(&Rational::from(2)).unwrap();
        assert_eq!(
            pq(&cf_convergents(&x, 100).unwrap()),
            vec![(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]
        );
    }

    #[test]
    fn equal_denominators_keep_the_later_convergent() {
        // 3/5 = [0; 1, 1, 2] has convergents 0/1, 1/1, 1/2, 3/5.
        let x = Duplex::from_rational(Rational::new(3, 5).unwrap());
        assert_eq!(pq(&cf_convergents(&x, 10).unwrap()), vec![(1, 1), (1, 2), (3, 5)]);
    }

    #[test]
    fn negative_input() {
        let x = Duplex::from_rational(Rational::new(-22, 7).unwrap());
        assert_eq!(pq(&cf_convergents(&x, 10).unwrap()), vec![(-3, 1), (-22, 7)]);
    }

    #[test]
    fn zero_range_is_an_error() {
        assert_eq!(
            cf_convergents(&Duplex::zero(), 0),
            Err(NumTheoryError::EmptyRange)
        );
    }

    #[test]
    fn pi_small_measure_report() {
        let report = irrationality_check_pi(42, 113).unwrap();
        // q = 1 makes the bound 1, and |pi - 3| < 1.
        assert_eq!(report.entries[0].verdict, Verdict::Fail);
        assert_eq!(report.count(Verdict::Pass), 3);
        let last = report.entries.last().unwrap();
        assert_eq!(last.convergent.to_string(), "355/113");
        // |pi - 355/113| = 2.667e-7, and 113^-42 is negligible.
        let m = last.margin.to_f64();
        assert!((m - 2.667_641_890_624_223e-7).abs() < 1e-15, "{m}");
    }

    #[test]
    fn exponent_one_catches_a_false_measure() {
        let report = irrationality_check_pi(1, 7).unwrap();
        let seven = report
            .entries
            .iter()
            .find(|e| e.convergent.to_string() == "22/7")
            .unwrap();
        assert_eq!(seven.verdict, Verdict::Fail);
        assert!(seven.margin.is_negative());
    }
}
