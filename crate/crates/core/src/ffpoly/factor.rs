//! Factorization over `F_h`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{frobenius_power_of_x, poly_gcd, x_poly, ModPoly};
use crate::error::{Error, Result};

/// `unit · Π factor^multiplicity`, factors monic irreducible and sorted by
/// degree then by ascending coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl Factorization {
    pub fn modulus(&self) -> Option<u64> {
        self.factors.first().map(|(f, _)| f.modulus())
    }

    /// Multiplies everything back together.
    pub fn reconstruct(&self, modulus: u64) -> ModPoly {
        let mut acc = ModPoly::monomial(modulus, 0, self.unit);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * f;
            }
        }
        acc
    }

    /// `(degree, multiplicity)` per factor, in factor order.
    pub fn summary(&self) -> Vec<(usize, u32)> {
        self.factors
            .iter()
            .map(|(f, e)| (f.degree().unwrap_or(0), *e))
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factorization with the default seed `0`.
pub fn factorize(f: &ModPoly) -> Result<Factorization> {
    factorize_with_seed(f, 0)
}

/// Complete factorization. The seed drives the random splitting polynomials;
/// the returned factorization does not depend on it.
pub fn factorize_with_seed(f: &ModPoly, seed: u64) -> Result<Factorization> {
    let unit = f
        .leading()
        .ok_or_else(|| Error::param("cannot factor the zero polynomial"))?;
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization { unit, factors })
}

/// True iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &ModPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::param("squarefree test on the zero polynomial"));
    }
    Ok(poly_gcd(f, &f.derivative())?.degree() == Some(0))
}

/// Pairwise coprime squarefree parts with their multiplicities, for a monic
/// nonconstant-or-constant input. Constant parts are omitted.
fn squarefree_decomposition(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    let h = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let fd = f.derivative();
    let mut c = if fd.is_zero() {
        f.clone()
    } else {
        let c = poly_gcd(f, &fd)?;
        let mut w = f.div_exact(&c)?;
        let mut c = c;
        let mut i = 1u32;
        while !w.is_one() {
            let y = poly_gcd(&w, &c)?;
            let fac = w.div_exact(&y)?;
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = c.div_exact(&y)?;
            w = y;
            i += 1;
        }
        c
    };
    if !c.is_one() {
        c = c
            .frobenius_root()
            .ok_or_else(|| Error::consistency("residual part is not an h-th power"))?;
        let h = u32::try_from(h).map_err(|_| Error::param("modulus too large to factor"))?;
        for (g, m) in squarefree_decomposition(&c)? {
            out.push((g, m * h));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: `(block, d)` with every factor of `block` of degree `d`.
fn distinct_degree(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    let h = f.modulus();
    let x = x_poly(h);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut xq = x.rem(&g)?;
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        xq = frobenius_power_of_x(&g, &xq)?;
        let block = poly_gcd(&g, &(&xq - &x))?;
        if !block.is_one() {
            g = g.div_exact(&block)?;
            xq = xq.rem(&g)?;
            out.push((block, d));
        }
        d += 1;
    }
    if let Some(deg) = g.degree().filter(|&k| k > 0) {
        out.push((g, deg));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a squarefree monic product of degree-`d`
/// irreducibles.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ModPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let h = f.modulus();
    let exp = (BigUint::from(h).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..h)).collect();
        let t = ModPoly::from_raw(h, coeffs);
        if t.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = &t.pow_mod(&exp, f)? - &ModPoly::one(h);
        if s.is_zero() {
            continue;
        }
        let g = poly_gcd(f, &s)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let rest = f.div_exact(&g)?;
            let mut parts = equal_degree(&g, d, rng)?;
            parts.extend(equal_degree(&rest, d, rng)?);
            return Ok(parts);
        }
    }
}
