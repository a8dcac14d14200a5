//! Word-sized modular arithmetic and primality helpers shared by the
//! polynomial, table and elimination code.

use crate::error::{Error, Result};

/// `a * b mod m` for `m < 2^64`.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` (any modulus, not only primes), if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

/// Checks that `n` is an odd prime; `what` names the argument in the error.
pub fn require_odd_prime(n: u64, what: &str) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) || !is_prime(n) {
        return Err(Error::param(format!("{what} = {n} is not an odd prime")));
    }
    Ok(())
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&n| n % 2 == 1 && is_prime(n))
        .collect()
}

/// Distinct prime factors of `n`, ascending, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Precomputed multiplier for repeated `w * x mod m` with a fixed `w`
/// (Shoup's trick). Requires `m < 2^63`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ShoupMul {
    w: u64,
    w_quot: u64,
    m: u64,
}

impl ShoupMul {
    pub fn new(w: u64, m: u64) -> Self {
        debug_assert!(m < 1 << 63 && w < m);
        let w_quot = (((w as u128) << 64) / m as u128) as u64;
        ShoupMul { w, w_quot, m }
    }

    #[inline(always)]
    pub fn mul(&self, x: u64) -> u64 {
        let q = ((self.w_quot as u128 * x as u128) >> 64) as u64;
        let r = self.w.wrapping_mul(x).wrapping_sub(q.wrapping_mul(self.m));
        if r >= self.m {
            r - self.m
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
    }

    #[test]
    fn factors_of_group_orders() {
        assert_eq!(prime_factors(330), vec![2, 3, 5, 11]);
        assert_eq!(prime_factors(4026), vec![2, 3, 11, 61]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn shoup_matches_u128() {
        let m = (1u64 << 62) + 135;
        for &w in &[0u64, 1, 12345678901, m - 1] {
            let s = ShoupMul::new(w, m);
            for &x in &[0u64, 1, 999, m - 1, m / 3] {
                assert_eq!(s.mul(x), ((w as u128 * x as u128) % m as u128) as u64);
            }
        }
    }

    #[test]
    fn odd_prime_checks() {
        assert!(require_odd_prime(3, "h").is_ok());
        assert!(require_odd_prime(2, "h").is_err());
        assert!(require_odd_prime(9, "h").is_err());
        assert_eq!(odd_primes_in(1, 20), vec![3, 5, 7, 11, 13, 17, 19]);
    }
}
