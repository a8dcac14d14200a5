//! Factorizations over F_7 checked against trial division by an
//! exhaustively enumerated list of monic irreducibles. The oracle uses its
//! own naive arithmetic on coefficient vectors, not the library's.

use cyclorank::ffpoly::{factorize_with_seed, ModPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: u64 = 7;

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Remainder of `f` by a monic `g`, or `None` if `g` does not divide it.
fn naive_quotient(f: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return None;
    }
    let mut q = vec![0; r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg];
        q[i] = c;
        for (j, &gj) in g.iter().enumerate() {
            r[i + j] = (r[i + j] + H * H - c * gj % H) % H;
        }
    }
    if trim(r).is_empty() {
        Some(q)
    } else {
        None
    }
}

/// All monic polynomials of degree `d`, as ascending coefficient vectors.
fn monic_of_degree(d: usize) -> Vec<Vec<u64>> {
    let count = H.pow(d as u32);
    (0..count)
        .map(|mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(n % H);
                n /= H;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Monic irreducibles of degree ≤ `max`, found by trial division.
fn irreducibles(max: usize) -> Vec<Vec<u64>> {
    let mut found: Vec<Vec<u64>> = Vec::new();
    for d in 1..=max {
        for f in monic_of_degree(d) {
            let reducible = found
                .iter()
                .take_while(|g| 2 * (g.len() - 1) <= d)
                .any(|g| naive_quotient(&f, g).is_some());
            if !reducible {
                found.push(f);
            }
        }
    }
    found
}

/// Sorted `(factor, multiplicity)` list of a monic polynomial of degree ≤ 9.
fn oracle_factor(f: &[u64], irr: &[Vec<u64>]) -> Vec<(Vec<u64>, u32)> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    for g in irr {
        let mut e = 0;
        while let Some(q) = naive_quotient(&rest, g) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((g.clone(), e));
        }
    }
    // What remains has no factor of degree ≤ 4, so it is irreducible or 1.
    if rest.len() > 1 {
        assert!(rest.len() - 1 > 4);
        out.push((rest, 1));
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

fn random_monic(rng: &mut ChaCha8Rng, d: usize) -> Vec<u64> {
    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..H)).collect();
    c.push(1);
    c
}

fn naive_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % H;
        }
    }
    out
}

fn check(f: &[u64], irr: &[Vec<u64>], seed: u64) {
    let expected = oracle_factor(f, irr);
    let got = factorize_with_seed(&ModPoly::new(H, f).unwrap(), seed).unwrap();
    assert_eq!(got.unit, 1);
    let got: Vec<(Vec<u64>, u32)> = got
        .factors
        .iter()
        .map(|(g, e)| (g.coeffs().to_vec(), *e))
        .collect();
    assert_eq!(got, expected, "f = {f:?}");
}

#[test]
fn enumeration_counts_match_necklace_formula() {
    // Number of monic irreducibles of degree d over F_7: 7, 21, 112, 588.
    let irr = irreducibles(4);
    let by_degree: Vec<usize> = (1..=4)
        .map(|d| irr.iter().filter(|g| g.len() - 1 == d).count())
        .collect();
    assert_eq!(by_degree, vec![7, 21, 112, 588]);
}

#[test]
fn random_degree_eight_against_oracle() {
    let irr = irreducibles(4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..400 {
        let f = random_monic(&mut rng, 8);
        check(&f, &irr, i);
    }
}

#[test]
fn structured_degree_eight_against_oracle() {
    let irr = irreducibles(4);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..300 {
        // g² · k with deg g ≤ 3 and total degree 8, so repeated factors occur.
        let dg = rng.gen_range(1..=3);
        let g = random_monic(&mut rng, dg);
        let k = random_monic(&mut rng, 8 - 2 * dg);
        let f = naive_mul(&naive_mul(&g, &g), &k);
        check(&f, &irr, i);
    }
}
