use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::require_odd_prime;
use crate::error::{Error, Result};

/// Largest `p` accepted by [`irregular_index`].
pub const IRREGULAR_BOUND: u64 = 600;

/// Exact Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
}

impl BernoulliTable {
    /// Uses `Σ_{k=0}^{m} C(m+1, k) B_k = 0` for `m ≥ 1`.
    pub fn up_to(n: usize) -> Self {
        let mut numbers = vec![BigRational::one()];
        if n >= 1 {
            numbers.push(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        }
        for m in 2..=n {
            if m % 2 == 1 {
                numbers.push(BigRational::zero());
                continue;
            }
            // binom holds C(m+1, k) as k advances.
            let mut binom = BigInt::one();
            let mut sum = BigRational::zero();
            for (k, b) in numbers.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * &binom;
                }
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            numbers.push(-sum / BigInt::from(m + 1));
        }
        BernoulliTable { numbers }
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.numbers.get(k)
    }

    /// Number of even `k` in `[2, p-3]` with `p | numer(B_k)`.
    pub fn irregular_index(&self, p: u64) -> Result<u32> {
        require_odd_prime(p, "p")?;
        if p < 5 {
            return Ok(0);
        }
        let top = (p - 3) as usize;
        if top >= self.numbers.len() {
            return Err(Error::param(format!(
                "Bernoulli table holds B_0..B_{}, p = {p} needs B_{top}",
                self.numbers.len().saturating_sub(1)
            )));
        }
        let pb = BigInt::from(p);
        Ok((2..=top)
            .step_by(2)
            .filter(|&k| self.numbers[k].numer().mod_floor(&pb).is_zero())
            .count() as u32)
    }
}

/// Irregularity index of `p` (zero iff `p` is regular), for `p ≤ 600`.
pub fn irregular_index(p: u64) -> Result<u32> {
    require_odd_prime(p, "p")?;
    if p > IRREGULAR_BOUND {
        return Err(Error::param(format!(
            "p = {p} exceeds the Bernoulli bound {IRREGULAR_BOUND}"
        )));
    }
    BernoulliTable::up_to(p.saturating_sub(3) as usize).irregular_index(p)
}
