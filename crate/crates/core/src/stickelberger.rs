//! Power tables of a primitive root, the integer polynomials `P` and `Q`
//! attached to them, and the predictor polynomial `D`.
//!
//! For an odd prime `p` and primitive root `v`, write `v_n = v^n mod p`
//! (taken in `[1, p-1]`). Then
//!
//! ```text
//! P(X) = Σ_{i=0}^{p-2} v_{-i} X^i
//! Q(X) = Σ_{i=1}^{p-2} (v_{-(i-1)} - v·v_{-i}) / p · X^i
//! P(X)(X - v) = p·Q(X) + v(X^{p-1} - 1)
//! ```
//!
//! and `D = gcd(P, X^{(p-1)/2} + 1)` over `F_h` when `h ≠ p`, with `Q` in
//! place of `P` when `h = p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{mul_mod, pow_mod, prime_factors, require_odd_prime};
use crate::error::{Error, Result};
use crate::ffpoly::{factorize_with_seed, poly_gcd, Factorization, ModPoly};
use crate::intpoly::IntPoly;

/// Default upper bound on `p` for [`all_primitive_roots`].
pub const DEFAULT_ROOT_LIST_BOUND: u64 = 1000;

fn has_full_order(v: u64, p: u64, factors: &[u64]) -> bool {
    !v.is_multiple_of(p) && factors.iter().all(|&q| pow_mod(v, (p - 1) / q, p) != 1)
}

pub fn is_primitive_root(v: u64, p: u64) -> Result<bool> {
    require_odd_prime(p, "p")?;
    Ok(has_full_order(v, p, &prime_factors(p - 1)))
}

/// Least `v ≥ 2` of multiplicative order `p - 1`.
pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p, "p")?;
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&v| has_full_order(v, p, &factors))
        .ok_or_else(|| Error::consistency(format!("no primitive root found for p={p}")))
}

/// All primitive roots mod `p`, ascending, for `p` up to
/// [`DEFAULT_ROOT_LIST_BOUND`].
pub fn all_primitive_roots(p: u64) -> Result<Vec<u64>> {
    all_primitive_roots_bounded(p, DEFAULT_ROOT_LIST_BOUND)
}

pub fn all_primitive_roots_bounded(p: u64, bound: u64) -> Result<Vec<u64>> {
    require_odd_prime(p, "p")?;
    if p > bound {
        return Err(Error::param(format!(
            "p = {p} exceeds the primitive-root listing bound {bound}"
        )));
    }
    let factors = prime_factors(p - 1);
    Ok((2..p).filter(|&v| has_full_order(v, p, &factors)).collect())
}

/// `v^n mod p` and `v^{-n} mod p` for `n = 0..p-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTable {
    p: u64,
    v: u64,
    forward: Vec<u64>,
    inverse: Vec<u64>,
}

impl PowerTable {
    pub fn new(p: u64, v: u64) -> Result<Self> {
        if !is_primitive_root(v, p)? {
            return Err(Error::param(format!(
                "v = {v} is not a primitive root mod {p}"
            )));
        }
        let order = (p - 1) as usize;
        let mut forward = Vec::with_capacity(order);
        let mut x = 1u64;
        for _ in 0..order {
            forward.push(x);
            x = mul_mod(x, v, p);
        }
        let inverse = (0..order).map(|n| forward[(order - n) % order]).collect();
        Ok(PowerTable {
            p,
            v,
            forward,
            inverse,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// `v_n` for `n = 0..p-2`.
    pub fn forward(&self) -> &[u64] {
        &self.forward
    }

    /// `v_{-n}` for `n = 0..p-2`.
    pub fn inverse(&self) -> &[u64] {
        &self.inverse
    }

    /// `v_n` for any integer `n`.
    pub fn power(&self, n: i64) -> u64 {
        self.forward[n.rem_euclid(self.p as i64 - 1) as usize]
    }
}

pub fn build_power_table(p: u64, v: u64) -> Result<PowerTable> {
    PowerTable::new(p, v)
}

/// `P(X) = Σ v_{-i} X^i`, degree `p - 2`.
pub fn build_p(table: &PowerTable) -> IntPoly {
    IntPoly::new(table.inverse.iter().map(|&c| BigInt::from(c)).collect())
}

/// `Q(X)` with coefficients `(v_{-(i-1)} - v·v_{-i}) / p` for `i = 1..p-2`.
pub fn build_q(table: &PowerTable) -> Result<IntPoly> {
    let p = BigInt::from(table.p);
    let v = BigInt::from(table.v);
    let n = table.inverse.len();
    let mut coeffs = vec![BigInt::zero(); n];
    for (i, w) in table
        .inverse
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 1, w))
    {
        let num = BigInt::from(w[0]) - &v * BigInt::from(w[1]);
        let (q, r) = num.div_rem(&p);
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "Q coefficient {i} not integral for p={}, v={}",
                table.p, table.v
            )));
        }
        coeffs[i] = q;
    }
    Ok(IntPoly::new(coeffs))
}

/// Checks `P(X)(X - v) = p·Q(X) + v(X^{p-1} - 1)` exactly.
pub fn verify_identity(table: &PowerTable) -> bool {
    let Ok(q) = build_q(table) else {
        return false;
    };
    let p_poly = build_p(table);
    let v = BigInt::from(table.v);
    let lhs = &p_poly * &IntPoly::new(vec![-v.clone(), BigInt::from(1)]);
    let mut tail = vec![BigInt::zero(); table.p as usize];
    tail[0] = -v.clone();
    tail[table.p as usize - 1] = v;
    let rhs = &q.scale(&BigInt::from(table.p)) + &IntPoly::new(tail);
    lhs == rhs
}

/// Which integer polynomial the gcd was taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    /// `h ≠ p`
    P,
    /// `h = p`
    Q,
}

impl Operand {
    pub fn as_str(self) -> &'static str {
        match self {
            Operand::P => "P",
            Operand::Q => "Q",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DxResult {
    pub p: u64,
    pub h: u64,
    pub v: u64,
    pub operand: Operand,
    /// Monic `D(X)` over `F_h`.
    pub dee: ModPoly,
    pub degree: usize,
    pub factorization: Factorization,
}

/// `P` and `Q` for one `(p, v)`, reusable across many `h`.
#[derive(Debug, Clone)]
pub struct Predictor {
    table: PowerTable,
    p_coeffs: Vec<i64>,
    q_coeffs: Vec<i64>,
}

impl Predictor {
    pub fn new(p: u64, v: u64) -> Result<Self> {
        let table = PowerTable::new(p, v)?;
        let q = build_q(&table)?;
        let p_coeffs = table.inverse.iter().map(|&c| c as i64).collect();
        let q_coeffs = q
            .to_i64_vec()
            .ok_or_else(|| Error::consistency("Q coefficient overflow"))?;
        Ok(Predictor {
            table,
            p_coeffs,
            q_coeffs,
        })
    }

    pub fn with_smallest_root(p: u64) -> Result<Self> {
        Self::new(p, smallest_primitive_root(p)?)
    }

    pub fn table(&self) -> &PowerTable {
        &self.table
    }

    /// The operand polynomial for `h`, reduced into `F_h[X]`.
    pub fn reduced_operand(&self, h: u64) -> Result<(Operand, ModPoly)> {
        require_odd_prime(h, "h")?;
        if h == self.table.p {
            Ok((Operand::Q, ModPoly::from_signed(h, &self.q_coeffs)?))
        } else {
            Ok((Operand::P, ModPoly::from_signed(h, &self.p_coeffs)?))
        }
    }

    /// `D(X)` without factoring it.
    pub fn dee_poly(&self, h: u64) -> Result<(Operand, ModPoly)> {
        let (operand, f) = self.reduced_operand(h)?;
        let half = ((self.table.p - 1) / 2) as usize;
        let target = ModPoly::x_pow_plus_one(h, half)?;
        Ok((operand, poly_gcd(&target, &f)?))
    }

    pub fn dee(&self, h: u64, seed: u64) -> Result<DxResult> {
        let (operand, dee) = self.dee_poly(h)?;
        let factorization = factorize_with_seed(&dee, seed)?;
        Ok(DxResult {
            p: self.table.p,
            h,
            v: self.table.v,
            operand,
            degree: dee.degree().unwrap_or(0),
            dee,
            factorization,
        })
    }
}

/// `D(X)` with its degree and factorization over `F_h`.
pub fn compute_d(p: u64, h: u64, v: u64) -> Result<DxResult> {
    require_odd_prime(p, "p")?;
    require_odd_prime(h, "h")?;
    Predictor::new(p, v)?.dee(h, 0)
}
