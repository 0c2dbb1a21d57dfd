//! Named constants as duplexes built from rational series and iterations,
//! each with a regulator read off an explicit error bound.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::duplex::Duplex;
use crate::error::DuplexError;
use crate::rational::Rational;

/// A rational sequence defined by a first-order recurrence, memoized in
/// order. `next(k, prev)` produces element `k` from element `k - 1`.
struct Recurrence<F> {
    next: F,
    values: Mutex<Vec<Rational>>,
}

impl<F> Recurrence<F>
where
    F: Fn(u64, Option<&Rational>) -> Rational,
{
    fn new(next: F) -> Self {
        Recurrence {
            next,
            values: Mutex::new(Vec::new()),
        }
    }

    fn get(&self, k: u64) -> Rational {
        let mut values = self.values.lock().expect("recurrence cache poisoned");
        while values.len() as u64 <= k {
            let i = values.len() as u64;
            let v = (self.next)(i, values.last());
            values.push(v);
        }
        values[k as usize].clone()
    }
}

/// Partial sums `s(k) = a_0 + ... + a_k` of a series given term by term.
struct Series<F> {
    terms: Recurrence<F>,
    sums: Mutex<Vec<Rational>>,
}

impl<F> Series<F>
where
    F: Fn(u64, Option<&Rational>) -> Rational,
{
    fn new(next_term: F) -> Self {
        Series {
            terms: Recurrence::new(next_term),
            sums: Mutex::new(Vec::new()),
        }
    }

    fn term(&self, k: u64) -> Rational {
        self.terms.get(k)
    }

    fn partial_sum(&self, k: u64) -> Rational {
        let mut sums = self.sums.lock().expect("series cache poisoned");
        while sums.len() as u64 <= k {
            let i = sums.len() as u64;
            let s = match sums.last() {
                Some(prev) => prev + self.terms.get(i),
                None => self.terms.get(0),
            };
            sums.push(s);
        }
        sums[k as usize].clone()
    }
}

/// Duplex from a series whose partial sums past index `N` differ by at most
/// `tail(series, N)`; `c(n)` is the least `N` with `tail < 2^-n`.
fn series_duplex<F, T>(series: Series<F>, tail: T) -> Duplex
where
    F: Fn(u64, Option<&Rational>) -> Rational + Send + Sync + 'static,
    T: Fn(&Series<F>, u64) -> Rational + Send + Sync + 'static,
{
    let series = Arc::new(series);
    let s = Arc::clone(&series);
    let terms = move |k| s.partial_sum(k);
    let regulator = move |n: u32, hint: u64| {
        let eps = Rational::pow2(-(n as i64));
        // The tail bound decreases in N, so the previous level's answer is
        // a valid starting point.
        (hint..)
            .find(|&big_n| tail(&series, big_n) < eps)
            .expect("tail bound tends to zero")
    };
    Duplex::from_hinted(Box::new(terms), Box::new(regulator), None)
}

/// `e = sum 1/j!`.
///
/// For `m' > m >= N`, `u(m') - u(m) < sum_{j > N} 1/j! <= 2/(N+1)!`, so
/// `c(n)` is the least `N` with `2/(N+1)! < 2^-n`.
pub fn const_e() -> Duplex {
    let series = Series::new(|k, prev: Option<&Rational>| match prev {
        None => Rational::one(),
        Some(p) => p / &Rational::from(k as i64),
    });
    series_duplex(series, |s, big_n| s.term(big_n + 1) * Rational::from(2))
}

/// `arctan(r) = sum (-1)^j r^(2j+1) / (2j+1)` for `0 < r < 1`.
///
/// The series alternates with decreasing terms, so `|u(m) - u(m')|` is at
/// most the first omitted term: `c(n)` is the least `N` with
/// `|a_(N+1)| < 2^-n`.
pub(crate) fn arctan_inverse(k: i64) -> Duplex {
    let r = Rational::new(1, k).expect("k > 0");
    let r2 = &r * &r;
    let series = Series::new(move |j, prev: Option<&Rational>| match prev {
        None => r.clone(),
        Some(p) => {
            let j = j as i64;
            -(p * &r2) * Rational::new(2 * j - 1, 2 * j + 1).expect("nonzero")
        }
    });
    series_duplex(series, |s, big_n| s.term(big_n + 1).abs())
}

/// `pi = 16 arctan(1/5) - 4 arctan(1/239)`, assembled with duplex product
/// and difference so the regulator comes from those rules.
pub fn const_pi() -> Duplex {
    let sixteen = Duplex::from_rational(Rational::from(16));
    let four = Duplex::from_rational(Rational::from(4));
    &(&sixteen * &arctan_inverse(5)) - &(&four * &arctan_inverse(239))
}

/// `zeta(3) = (5/2) sum_{k >= 1} (-1)^(k+1) / (k^3 C(2k, k))`.
///
/// Terms alternate and shrink by more than a factor 4, so the regulator is
/// the least `N` with `|a_(N+1)| < 2^-n`, as for arctan. Term `j` (0-based,
/// `k = j + 1`) follows from term `j - 1` by the ratio
/// `-j^3 / (2 (2j + 1) (j + 1)^2)`.
pub fn const_zeta3() -> Duplex {
    let series = Series::new(|j, prev: Option<&Rational>| match prev {
        None => Rational::new(5, 4).expect("nonzero"),
        Some(p) => {
            let j = j as i64;
            let ratio = Rational::new(-(j * j * j), 2 * (2 * j + 1) * (j + 1) * (j + 1)).expect("nonzero");
            p * &ratio
        }
    });
    series_duplex(series, |s, big_n| s.term(big_n + 1).abs())
}

/// `zeta(3)` as the plain partial sums `u(k) = sum_{j=1..k} 1/j^3`.
///
/// The tail after `N` is below `integral_N^inf t^-3 dt = 1/(2N^2)`, so
/// `c(n)` is the least `N >= 1` with `1/(2N^2) < 2^-n`, i.e. `N^2 > 2^(n-1)`.
/// Convergence is only quadratic in `N`: levels past about 40 are out of
/// reach. [`const_zeta3`] is the practical constructor.
pub fn const_zeta3_direct() -> Duplex {
    let series = Arc::new(Series::new(|j, _: Option<&Rational>| {
        if j == 0 {
            Rational::zero()
        } else {
            let j = j as i64;
            Rational::new(1, j * j * j).expect("nonzero")
        }
    }));
    let s = Arc::clone(&series);
    let terms = move |k| s.partial_sum(k);
    let regulator = |n: u32, _| zeta3_direct_regulator(n);
    Duplex::from_hinted(Box::new(terms), Box::new(regulator), None)
}

/// Least `N >= 1` with `1/(2N^2) < 2^-n`, saturating at `u64::MAX`.
pub fn zeta3_direct_regulator(n: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    let threshold = BigInt::from(1) << (n - 1) as usize;
    // Least N with N^2 > threshold.
    let root = threshold.sqrt();
    let big_n = root + 1u32;
    u64::try_from(big_n).unwrap_or(u64::MAX)
}

/// `sqrt(q)` by Newton's iteration `x <- (x + q/x)/2` on rationals, each
/// step rounded up to a dyadic so term sizes track the precision reached.
///
/// With `q = a/b`, `s = isqrt(ab)` and `L = s/b <= sqrt(q)`, let
/// `2^-l <= L`. The seed `(isqrt(ab 4^t) + 1) / (b 2^t)` exceeds `sqrt(q)`
/// by at most `2^g_0` with `g_0 = ceil_log2(1/b) - t`, and `t` is chosen
/// so that `g_0 <= -l - 2`. A Newton step from `x >= sqrt(q)` stays above
/// `sqrt(q)` with error `e^2 / (2x) <= 2^(2g + l - 1)`; rounding up to a
/// multiple of `2^(2g + l - 1)` at most doubles that, so
/// ```text
/// g_(k+1) = 2 g_k + l <= g_k - 2
/// ```
/// Term `k` is the first iterate `x_j` with `g_j < -k`, so it lies in
/// `[sqrt(q), sqrt(q) + 2^-k[` and `c(n) = n`. Indexing by precision rather
/// than by step keeps term `k` at `O(k)` bits; indexing by step would make
/// sums with slower sequences evaluate iterates of doubly exponential size.
pub fn const_sqrt(q: &Rational) -> Result<Duplex, DuplexError> {
    if q.is_negative() {
        return Err(DuplexError::NegativeSqrt(q.to_string()));
    }
    if q.is_zero() {
        return Ok(Duplex::zero());
    }
    let (a, b) = (q.numer().clone(), q.denom().clone());
    let product = &a * &b;
    let root = product.sqrt();
    let lower = Rational::new(root.clone(), b.clone())?;
    if &root * &root == product {
        return Ok(exact_sqrt_iteration(lower));
    }
    let l = lower.recip()?.ceil_log2()?;
    let inv_b = Rational::new(1, b.clone())?.ceil_log2()?;
    let t = (inv_b + l + 2).max(0);
    let seed_num = (&product << (2 * t as usize)).sqrt() + 1u32;
    let seed = Rational::new(seed_num, &b << t as usize)?;
    let g0 = inv_b - t;

    let exponents = Arc::new(Recurrence::new(move |_, prev: Option<&Rational>| match prev {
        None => Rational::from(g0),
        Some(g) => Rational::from_integer(g.numer() * 2u32 + l),
    }));
    let ex = Arc::clone(&exponents);
    let iterates = Arc::new(Recurrence::new(move |k, prev: Option<&Rational>| match prev {
        None => seed.clone(),
        Some(x) => {
            let g: BigInt = ex.get(k - 1).numer().clone();
            let step: i64 = (BigInt::from(1 - l) - g * 2u32).try_into().expect("precision fits in i64");
            newton_step_up(x, &a, &b, step.max(0) as usize)
        }
    }));
    let terms = move |k: u64| {
        let target = Rational::from(-i64::try_from(k).expect("index fits in i64"));
        let j = (0..)
            .find(|&j| exponents.get(j) < target)
            .expect("error exponent decreases");
        iterates.get(j)
    };
    let regulator = |n: u32, _| u64::from(n);
    Ok(Duplex::from_hinted(Box::new(terms), Box::new(regulator), None))
}

/// `ceil(2^p (x + a/(b x)) / 2) / 2^p`, computed on integers.
fn newton_step_up(x: &Rational, a: &BigInt, b: &BigInt, p: usize) -> Rational {
    let (xn, xd) = (x.numer(), x.denom());
    // (x + a/(bx))/2 = (b xn^2 + a xd^2) / (2 b xn xd)
    let num = (b * xn * xn + a * xd * xd) << p;
    let den = BigInt::from(2u32) * b * xn * xd;
    let up = num.div_ceil(&den);
    Rational::new(up, BigInt::from(1u32) << p).expect("nonzero")
}

/// A perfect square: the seed is already exact and Newton stays put.
fn exact_sqrt_iteration(root: Rational) -> Duplex {
    Duplex::from_hinted(
        Box::new(move |_| root.clone()),
        Box::new(|_, _| 0),
        None,
    )
}
