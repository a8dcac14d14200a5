//! `h`-adic valuation of the Maillet determinant by elimination over
//! `Z / h^W`, for primes `h ≠ p`.
//!
//! Entries are residues modulo `h^W`. A pivot is chosen in each column with
//! minimal `h`-adic valuation `e` (ties: smallest row), so every multiplier
//! below it is integral. Each such pivot costs `e` digits of absolute
//! precision. If a column has no entry of valuation below the remaining
//! precision, `W` is doubled and the elimination restarts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::maillet::MailletMatrix;
use crate::arith::{inv_mod, mul_mod, require_odd_prime, sub_mod, ShoupMul};
use crate::error::{Error, Result};

/// Hard cap on the working precision `W`.
pub const DEFAULT_PRECISION_CAP: u32 = 256;
/// Requested starting precision; lowered when `h^8` does not fit a word.
pub const INITIAL_PRECISION: u32 = 8;

const WORD_LIMIT: u128 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationResult {
    pub p: u64,
    pub h: u64,
    pub valuation: u32,
    /// The `W` of the run that succeeded.
    pub precision_used: u32,
}

/// Arithmetic modulo `h^W` as needed by the eliminator.
trait Residues {
    type Elem: Clone + Send + Sync;
    fn embed(&self, x: u64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `min(v_h(x), cap)`, treating the residue as an integer in `[0, h^W)`.
    fn valuation(&self, x: &Self::Elem, cap: u32) -> u32;
    /// `x / h^e`, exact on the integer representative.
    fn div_h_pow(&self, x: &Self::Elem, e: u32) -> Self::Elem;
    fn inv(&self, unit: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `target[j] -= m · pivot[j]` for all `j`.
    fn sub_mul_row(&self, target: &mut [Self::Elem], pivot: &[Self::Elem], m: &Self::Elem);
}

struct WordResidues {
    h: u64,
    modulus: u64,
}

impl Residues for WordResidues {
    type Elem = u64;

    fn embed(&self, x: u64) -> u64 {
        x % self.modulus
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn valuation(&self, x: &u64, cap: u32) -> u32 {
        let mut x = *x;
        if x == 0 {
            return cap;
        }
        let mut k = 0;
        while k < cap && x.is_multiple_of(self.h) {
            x /= self.h;
            k += 1;
        }
        k
    }

    fn div_h_pow(&self, x: &u64, e: u32) -> u64 {
        x / self.h.pow(e)
    }

    fn inv(&self, unit: &u64) -> u64 {
        inv_mod(*unit, self.modulus).expect("pivot unit is invertible")
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }

    fn sub_mul_row(&self, target: &mut [u64], pivot: &[u64], m: &u64) {
        let s = ShoupMul::new(*m, self.modulus);
        let md = self.modulus;
        for (t, &x) in target.iter_mut().zip(pivot) {
            *t = sub_mod(*t, s.mul(x), md);
        }
    }
}

struct BigResidues {
    h: BigUint,
    modulus: BigUint,
}

impl Residues for BigResidues {
    type Elem = BigUint;

    fn embed(&self, x: u64) -> BigUint {
        BigUint::from(x) % &self.modulus
    }

    fn is_zero(&self, x: &BigUint) -> bool {
        x.is_zero()
    }

    fn valuation(&self, x: &BigUint, cap: u32) -> u32 {
        if x.is_zero() {
            return cap;
        }
        let mut x = x.clone();
        let mut k = 0;
        while k < cap && (&x % &self.h).is_zero() {
            x /= &self.h;
            k += 1;
        }
        k
    }

    fn div_h_pow(&self, x: &BigUint, e: u32) -> BigUint {
        x / self.h.pow(e)
    }

    fn inv(&self, unit: &BigUint) -> BigUint {
        let a = BigInt::from(unit.clone());
        let m = BigInt::from(self.modulus.clone());
        let g = num_integer::Integer::extended_gcd(&a, &m);
        debug_assert!(g.gcd.is_one());
        let x = ((g.x % &m) + &m) % &m;
        x.to_biguint().expect("nonnegative")
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    fn sub_mul_row(&self, target: &mut [BigUint], pivot: &[BigUint], m: &BigUint) {
        for (t, x) in target.iter_mut().zip(pivot) {
            let prod = (m * x) % &self.modulus;
            if *t >= prod {
                *t -= prod;
            } else {
                *t = &*t + &self.modulus - prod;
            }
        }
    }
}

/// Sum of pivot valuations, or `None` when precision `w` ran out.
fn eliminate<R: Residues>(ring: &R, n: usize, entries: &[u64], w: u32) -> Option<u32> {
    let mut rows: Vec<Vec<R::Elem>> = entries
        .chunks(n)
        .map(|r| r.iter().map(|&x| ring.embed(x)).collect())
        .collect();
    let mut precision = w;
    let mut total = 0;
    for k in 0..n {
        let mut best: Option<(usize, u32)> = None;
        for (i, row) in rows.iter().enumerate().skip(k) {
            let e = ring.valuation(&row[k], precision);
            if e < precision && best.is_none_or(|(_, be)| e < be) {
                best = Some((i, e));
                if e == 0 {
                    break;
                }
            }
        }
        let (pi, e) = best?;
        rows.swap(k, pi);
        total += e;
        if k + 1 == n {
            break;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let unit_inv = ring.inv(&ring.div_h_pow(&pivot_row[k], e));
        for row in tail.iter_mut() {
            if ring.is_zero(&row[k]) {
                continue;
            }
            let m = ring.mul(&ring.div_h_pow(&row[k], e), &unit_inv);
            ring.sub_mul_row(&mut row[k + 1..], &pivot_row[k + 1..], &m);
        }
        precision -= e;
    }
    Some(total)
}

fn initial_precision(h: u64) -> u32 {
    let mut w = 1;
    while w < INITIAL_PRECISION && (h as u128).pow(w + 1) < WORD_LIMIT {
        w += 1;
    }
    w
}

fn run_at_precision(h: u64, m: &MailletMatrix, w: u32) -> Option<u32> {
    let modulus = (h as u128).checked_pow(w).filter(|&x| x < WORD_LIMIT);
    match modulus {
        Some(md) => eliminate(
            &WordResidues {
                h,
                modulus: md as u64,
            },
            m.size(),
            m.entries(),
            w,
        ),
        None => eliminate(
            &BigResidues {
                h: BigUint::from(h),
                modulus: BigUint::from(h).pow(w),
            },
            m.size(),
            m.entries(),
            w,
        ),
    }
}

/// `v_h(h⁻)` for `p`, with the default precision cap.
pub fn hminus_valuation(p: u64, h: u64) -> Result<ValuationResult> {
    hminus_valuation_capped(p, h, DEFAULT_PRECISION_CAP)
}

pub fn hminus_valuation_capped(p: u64, h: u64, cap: u32) -> Result<ValuationResult> {
    require_odd_prime(h, "h")?;
    let matrix = MailletMatrix::new(p)?;
    hminus_valuation_of(&matrix, h, cap)
}

/// Same as [`hminus_valuation_capped`] with a prebuilt matrix.
pub fn hminus_valuation_of(matrix: &MailletMatrix, h: u64, cap: u32) -> Result<ValuationResult> {
    let p = matrix.p();
    require_odd_prime(h, "h")?;
    if h == p {
        return Err(Error::param("h-adic valuation requires h ≠ p"));
    }
    let mut w = initial_precision(h).min(cap.max(1));
    loop {
        if let Some(valuation) = run_at_precision(h, matrix, w) {
            return Ok(ValuationResult {
                p,
                h,
                valuation,
                precision_used: w,
            });
        }
        if w >= cap {
            return Err(Error::ValuationTooLarge { p, h, cap });
        }
        w = (w * 2).min(cap);
    }
}
