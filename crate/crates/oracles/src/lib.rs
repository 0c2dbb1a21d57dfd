//! Reference values computed without the `duplex` crate: plain integer
//! fixed-point series, integer square roots, a sieve and exact integer
//! discrepancy. Test code only.
//!
//! A fixed-point value `v` at `bits` stands for `v / 2^bits` and is within
//! two units of the true value.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const GUARD: u32 = 32;

fn finish(v: BigInt) -> BigInt {
    v >> GUARD
}

/// `atan(1/k) * 2^w` by the alternating Gregory series, truncating each term.
fn atan_inv(k: u64, w: u32) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << w) / k;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        j += 1;
    }
    sum
}

/// pi by Gauss' identity `48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239)`.
pub fn pi_fixed(bits: u32) -> BigInt {
    let w = bits + GUARD;
    finish(48 * atan_inv(18, w) + 32 * atan_inv(57, w) - 20 * atan_inv(239, w))
}

/// pi by Stormer's identity `24 atan(1/8) + 8 atan(1/57) + 4 atan(1/239)`.
pub fn pi_fixed_stormer(bits: u32) -> BigInt {
    let w = bits + GUARD;
    finish(24 * atan_inv(8, w) + 8 * atan_inv(57, w) + 4 * atan_inv(239, w))
}

/// e as the factorial series.
pub fn e_fixed(bits: u32) -> BigInt {
    let w = bits + GUARD;
    let mut term = BigInt::one() << w;
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term;
        term /= k;
        k += 1;
    }
    finish(sum)
}

/// `floor(sqrt(a/b) * 2^bits)`, exact.
pub fn sqrt_fixed(a: u64, b: u64, bits: u32) -> BigInt {
    let scaled = (BigUint::from(a) << (2 * bits)) / BigUint::from(b);
    BigInt::from(scaled.sqrt())
}

/// zeta(3) by the Amdeberhan-Zeilberger series
/// `(1/64) sum (-1)^k (205k^2 + 250k + 77) (k!)^10 / ((2k+1)!)^5`.
pub fn zeta3_fixed(bits: u32) -> BigInt {
    let w = bits + GUARD;
    let one = BigInt::one() << w;
    let mut fact_k = BigInt::one();
    let mut fact_2k1 = BigInt::one();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        if k > 0 {
            fact_k *= k;
            fact_2k1 *= (2 * k) * (2 * k + 1);
        }
        let poly = BigInt::from(205 * k * k + 250 * k + 77);
        let num = &one * poly * fact_k.pow(10);
        let den = fact_2k1.pow(5) * 64u32;
        let term = num / den;
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    finish(sum)
}

/// Rounds `v / 2^bits` to an integer multiple of `10^-digits`, half away
/// from zero, returning the scaled integer.
pub fn scaled_decimal(v: &BigInt, bits: u32, digits: u32) -> BigInt {
    let num = v * BigInt::from(10u32).pow(digits);
    let den = BigInt::one() << bits;
    let (q, r) = num.abs().div_rem(&den);
    let q = if r * 2 >= den { q + 1 } else { q };
    if v.is_negative() {
        -q
    } else {
        q
    }
}

/// Parses a decimal string like `-3.14` into the integer `-314` scaled by
/// `10^digits`, where `digits` is the number of fraction digits present.
pub fn parse_scaled(text: &str) -> (BigInt, u32) {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let v: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    (if neg { -v } else { v }, frac.len() as u32)
}

/// `is_prime[n]` for `n <= limit`.
pub fn sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2;
    while p * p <= limit {
        if is_prime[p] {
            for m in (p * p..=limit).step_by(p) {
                is_prime[m] = false;
            }
        }
        p += 1;
    }
    is_prime
}

/// Whether every even number `4 <= 2k <= limit` is a sum of two primes.
pub fn goldbach_up_to(limit: usize) -> bool {
    let is_prime = sieve(limit);
    (4..=limit)
        .step_by(2)
        .all(|even| (2..=even / 2).any(|p| is_prime[p] && is_prime[even - p]))
}

/// Star discrepancy of `frac((3/2)^n)`, `n = 1..=count`, as a reduced
/// fraction. The points are `(3^n mod 2^n) / 2^n`, put on the common
/// denominator `2^count`.
pub fn three_halves_discrepancy(count: u32) -> (BigInt, BigInt) {
    let big_n = BigInt::from(count);
    let scale = BigInt::one() << count;
    let mut points: Vec<BigInt> = (1..=count)
        .map(|n| {
            let modulus = BigInt::one() << n;
            let residue = BigInt::from(3u32).pow(n).mod_floor(&modulus);
            residue << (count - n)
        })
        .collect();
    points.sort();
    // D* * N * 2^count as an integer maximum.
    let best = points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let k = BigInt::from(i as u64 + 1);
            let above = &k * &scale - &big_n * x;
            let below = &big_n * x - (k - 1) * &scale;
            above.max(below)
        })
        .max()
        .expect("count >= 1");
    let den = big_n * scale;
    let g = best.gcd(&den);
    (best / &g, den / g)
}

/// Convergents `p/q` of sqrt(2) with `q <= q_max`, from the Pell recurrence.
pub fn sqrt2_convergents(q_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut p, mut q) = (1u64, 1u64);
    while q <= q_max {
        out.push((p, q));
        (p, q) = (p + 2 * q, p + q);
    }
    out
}

/// Convergents of pi with `q <= q_max`, read off a 512-bit fixed-point value.
/// Valid while `q_max^2` is far below `2^512`.
pub fn pi_convergents(q_max: u64) -> Vec<(BigInt, BigInt)> {
    let bits = 512;
    let (mut num, mut den) = (pi_fixed(bits), BigInt::one() << bits);
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, r) = num.div_rem(&den);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(q_max) {
            break;
        }
        out.push((p2.clone(), q2.clone()));
        (p0, p1, q0, q1) = (p1, p2, q1, q2);
        (num, den) = (den, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits_of(v: &BigInt, bits: u32, d: u32) -> String {
        scaled_decimal(v, bits, d).to_string()
    }

    #[test]
    fn known_prefixes() {
        assert_eq!(digits_of(&pi_fixed(100), 100, 20), "314159265358979323846");
        assert_eq!(digits_of(&e_fixed(100), 100, 20), "271828182845904523536");
        assert_eq!(digits_of(&sqrt_fixed(2, 1, 100), 100, 20), "141421356237309504880");
        assert_eq!(digits_of(&zeta3_fixed(100), 100, 20), "120205690315959428540");
    }

    #[test]
    fn two_pi_identities_agree() {
        let d = pi_fixed(400) - pi_fixed_stormer(400);
        assert!(d.abs() <= BigInt::from(4));
    }

    #[test]
    fn small_tables() {
        let (p, q) = three_halves_discrepancy(1);
        assert_eq!((p, q), (BigInt::one(), BigInt::from(2)));
        assert!(goldbach_up_to(1000));
        assert_eq!(sqrt2_convergents(12), vec![(1, 1), (3, 2), (7, 5), (17, 12)]);
        let pi: Vec<_> = pi_convergents(113).into_iter().map(|(p, q)| format!("{p}/{q}")).collect();
        assert_eq!(pi, ["3/1", "22/7", "333/106", "355/113"]);
        assert_eq!(parse_scaled("-3.14"), (BigInt::from(-314), 2));
    }
}
