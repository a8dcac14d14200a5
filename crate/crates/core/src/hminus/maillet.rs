use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod, require_odd_prime};
use crate::error::{Error, Result};

/// Default bound on `p` for [`exact_hminus`].
pub const DEFAULT_EXACT_BOUND: u64 = 300;

/// Square matrix of size `(p-1)/2` with entry `(a, b)` the least positive
/// residue of `a · b^{-1} mod p`, for `1 ≤ a, b ≤ (p-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MailletMatrix {
    p: u64,
    size: usize,
    entries: Vec<u64>,
}

impl MailletMatrix {
    pub fn new(p: u64) -> Result<Self> {
        require_odd_prime(p, "p")?;
        let size = ((p - 1) / 2) as usize;
        let inverses: Vec<u64> = (1..=size as u64)
            .map(|b| inv_mod(b, p).expect("p prime"))
            .collect();
        let mut entries = Vec::with_capacity(size * size);
        for a in 1..=size as u64 {
            entries.extend(inverses.iter().map(|&bi| mul_mod(a, bi, p)));
        }
        Ok(MailletMatrix { p, size, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Entry for `1 ≤ a, b ≤ (p-1)/2`.
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.entries[(a - 1) * self.size + (b - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.size)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.size, &self.entries)
    }
}

pub fn maillet_matrix(p: u64) -> Result<MailletMatrix> {
    MailletMatrix::new(p)
}

/// Fraction-free Gaussian elimination; every division is exact.
pub(crate) fn bareiss_determinant(n: usize, entries: &[u64]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = entries
        .chunks(n)
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let t = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMinusResult {
    pub p: u64,
    /// `h⁻` of the `p`-th cyclotomic field.
    pub value: BigInt,
    /// Signed Maillet determinant.
    pub det: BigInt,
    /// Whether `p^{(p-3)/2}` divides the determinant.
    pub exponent_check: bool,
}

/// Exact `h⁻` for `p` up to [`DEFAULT_EXACT_BOUND`].
pub fn exact_hminus(p: u64) -> Result<HMinusResult> {
    exact_hminus_bounded(p, DEFAULT_EXACT_BOUND)
}

/// `|det(Maillet)| / p^{(p-3)/2}`.
pub fn exact_hminus_bounded(p: u64, bound: u64) -> Result<HMinusResult> {
    require_odd_prime(p, "p")?;
    if p > bound {
        return Err(Error::param(format!(
            "p = {p} exceeds the exact determinant bound {bound}"
        )));
    }
    let det = MailletMatrix::new(p)?.determinant();
    let scale = BigInt::from(p).pow(((p - 3) / 2) as u32);
    let (value, rem) = det.abs().div_rem(&scale);
    if !rem.is_zero() || value.is_zero() {
        return Err(Error::consistency(format!(
            "Maillet determinant for p={p} is not a nonzero multiple of p^{}",
            (p - 3) / 2
        )));
    }
    Ok(HMinusResult {
        p,
        value,
        det,
        exponent_check: true,
    })
}

/// Exponent of the largest power of `h` dividing a nonzero integer.
pub fn big_valuation(n: &BigInt, h: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let h = BigInt::from(h);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&h);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}
