//! Dense univariate polynomials over the prime field `F_h`.
//!
//! Coefficients are stored in ascending degree order, each reduced into
//! `[0, h)`, with no trailing zeros. The zero polynomial is the empty vector
//! and has no numeric degree: [`ModPoly::degree`] returns `None` for it.

mod factor;

pub use factor::{factorize, factorize_with_seed, is_squarefree, Factorization};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::arith::{add_mod, inv_mod, mul_mod, require_odd_prime, sub_mod};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Builds a polynomial from ascending coefficients, reducing each into
    /// `[0, h)`. Fails unless `h` is an odd prime.
    pub fn new(modulus: u64, coeffs: &[u64]) -> Result<Self> {
        require_odd_prime(modulus, "modulus h")?;
        Ok(Self::from_raw(
            modulus,
            coeffs.iter().map(|&c| c % modulus).collect(),
        ))
    }

    /// Like [`ModPoly::new`] but accepting signed coefficients.
    pub fn from_signed(modulus: u64, coeffs: &[i64]) -> Result<Self> {
        require_odd_prime(modulus, "modulus h")?;
        let m = modulus as i128;
        Ok(Self::from_raw(
            modulus,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(m) as u64)
                .collect(),
        ))
    }

    /// Coefficients must already be reduced; trailing zeros are stripped.
    pub(crate) fn from_raw(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    pub(crate) fn zero(modulus: u64) -> Self {
        ModPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub(crate) fn one(modulus: u64) -> Self {
        ModPoly {
            modulus,
            coeffs: vec![1],
        }
    }

    /// `c · X^n`.
    pub(crate) fn monomial(modulus: u64, n: usize, c: u64) -> Self {
        let c = c % modulus;
        if c == 0 {
            return Self::zero(modulus);
        }
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        ModPoly { modulus, coeffs }
    }

    /// `X^n + 1` over `F_h`.
    pub fn x_pow_plus_one(modulus: u64, n: usize) -> Result<Self> {
        require_odd_prime(modulus, "modulus h")?;
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = add_mod(coeffs[0], 1, modulus);
        Ok(Self::from_raw(modulus, coeffs))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = c % m;
        Self::from_raw(m, self.coeffs.iter().map(|&a| mul_mod(a, c, m)).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.modulus).expect("nonzero residue mod prime")),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = x % m;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        Self::from_raw(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % m, m))
                .collect(),
        )
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::param(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    /// Euclidean division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same_field(divisor)?;
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::param("division by the zero polynomial"))?;
        let m = self.modulus;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(m), Self::zero(m)));
        };
        if nd < dd {
            return Ok((Self::zero(m), self.clone()));
        }
        let lc_inv = inv_mod(divisor.coeffs[dd], m).expect("nonzero residue mod prime");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd];
            if c == 0 {
                continue;
            }
            let q = mul_mod(c, lc_inv, m);
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[k + j] = sub_mod(rem[k + j], mul_mod(q, d, m), m);
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(m, quot), Self::from_raw(m, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::consistency("polynomial division left a remainder"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// `self^exp mod modulus_poly`.
    pub fn pow_mod(&self, exp: &BigUint, modulus_poly: &Self) -> Result<Self> {
        let base = self.rem(modulus_poly)?;
        let mut acc = Self::one(self.modulus).rem(modulus_poly)?;
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(modulus_poly)?;
            if exp.bit(i) {
                acc = (&acc * &base).rem(modulus_poly)?;
            }
        }
        Ok(acc)
    }

    /// If `self = g(X^h)`, returns `g`; this is the `h`-th root in `F_h[X]`.
    pub(crate) fn frobenius_root(&self) -> Option<Self> {
        let h = self.modulus as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, &c)| c != 0 && i % h != 0)
        {
            return None;
        }
        Some(Self::from_raw(
            self.modulus,
            self.coeffs.iter().step_by(h).copied().collect(),
        ))
    }
}

/// Monic greatest common divisor. At least one argument must be nonzero.
pub fn poly_gcd(a: &ModPoly, b: &ModPoly) -> Result<ModPoly> {
    a.check_same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::param("gcd of two zero polynomials"));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Coefficient-wise reduction of an integer polynomial into `F_h[X]`.
pub fn reduce(f: &IntPoly, h: u64) -> Result<ModPoly> {
    require_odd_prime(h, "h")?;
    let m = BigInt::from(h);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &m) + &m) % &m;
            r.to_u64().expect("residue fits a word")
        })
        .collect();
    Ok(ModPoly::from_raw(h, coeffs))
}

fn assert_same_field(a: &ModPoly, b: &ModPoly) {
    assert_eq!(a.modulus, b.modulus, "polynomials over different fields");
}

impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        assert_same_field(self, rhs);
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::from_raw(
            m,
            (0..n)
                .map(|i| add_mod(self.coeff(i), rhs.coeff(i), m))
                .collect(),
        )
    }
}

impl Sub for &ModPoly {
    type Output = ModPoly;
    fn sub(self, rhs: &ModPoly) -> ModPoly {
        assert_same_field(self, rhs);
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::from_raw(
            m,
            (0..n)
                .map(|i| sub_mod(self.coeff(i), rhs.coeff(i), m))
                .collect(),
        )
    }
}

impl Neg for &ModPoly {
    type Output = ModPoly;
    fn neg(self) -> ModPoly {
        let m = self.modulus;
        ModPoly::from_raw(m, self.coeffs.iter().map(|&c| sub_mod(0, c, m)).collect())
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        assert_same_field(self, rhs);
        let m = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
            }
        }
        ModPoly::from_raw(m, out)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly(mod {}: {:?})", self.modulus, self.coeffs)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// `X^(h^k) mod f`, by repeated `h`-th powering.
pub(crate) fn frobenius_power_of_x(f: &ModPoly, prev: &ModPoly) -> Result<ModPoly> {
    prev.pow_mod(&BigUint::from(f.modulus), f)
}

pub(crate) fn x_poly(modulus: u64) -> ModPoly {
    ModPoly::monomial(modulus, 1, 1)
}
