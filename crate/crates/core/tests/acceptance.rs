//! Acceptance suite. Runs every criterion and prints one PASS/FAIL line each.
//! Exits nonzero if any criterion fails, except a failure tagged `[known]`,
//! whose exact failure pattern is itself checked (see criterion 7).
//! Pass criterion numbers as arguments to run a subset.

use std::time::Instant;

use cyclorank::arith::odd_primes_in;
use cyclorank::cli::record::{OutputRecord, Value};
use cyclorank::cli::run;
use cyclorank::ffpoly::{factorize_with_seed, is_squarefree, poly_gcd, ModPoly};
use cyclorank::hminus::{
    analytic_hminus, big_valuation, exact_hminus, hminus_valuation_of, BernoulliTable,
    MailletMatrix, DEFAULT_PRECISION_CAP,
};
use cyclorank::stickelberger::{
    all_primitive_roots, smallest_primitive_root, verify_identity, PowerTable, Predictor,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cyclorank").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8 stdout"),
        String::from_utf8(err).expect("utf8 stderr"),
    )
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, out, err) = cli(&["dee", "--p", "331", "--h", "3", "--v", "3"]);
    let elapsed = start.elapsed();
    check(code == 0, || format!("exit {code}: {err}"))?;
    let r = OutputRecord::from_json_line(out.trim()).map_err(|e| e.to_string())?;
    check(r.get("degree") == Some(&Value::int(6)), || out.clone())?;
    // (X+1)^2 · (X^4 + 2X^3 + X^2 + 2X + 1), ascending coefficients.
    let expected = Value::List(vec![
        Value::List(vec![Value::ints(&[1, 1]), Value::int(2)]),
        Value::List(vec![Value::ints(&[1, 2, 1, 2, 1]), Value::int(1)]),
    ]);
    check(r.get("factors") == Some(&expected), || {
        format!("factors: {out}")
    })?;
    check(r.get("unit") == Some(&Value::int(1)), || {
        format!("unit: {out}")
    })?;
    check(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "degree 6, (X+1)^2 (X^4+2X^3+X^2+2X+1), {elapsed:.1?}"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut tables = 0;
    for p in odd_primes_in(3, 499) {
        let roots = if p <= 97 {
            all_primitive_roots(p).map_err(|e| e.to_string())?
        } else {
            vec![smallest_primitive_root(p).map_err(|e| e.to_string())?]
        };
        for v in roots {
            let t = PowerTable::new(p, v).map_err(|e| e.to_string())?;
            check(verify_identity(&t), || {
                format!("identity fails p={p} v={v}")
            })?;
            tables += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed.as_secs() < 30, || format!("took {elapsed:?}"))?;
    Ok(format!("{tables} power tables, {elapsed:.1?}"))
}

fn criterion_3() -> Outcome {
    let hs = odd_primes_in(3, 1000);
    let mut pairs = 0;
    let mut positive = 0;
    for p in odd_primes_in(3, 163) {
        let hminus = exact_hminus(p).map_err(|e| e.to_string())?.value;
        let pred = Predictor::with_smallest_root(p).map_err(|e| e.to_string())?;
        for &h in hs.iter().filter(|&&h| h != p) {
            let (_, d) = pred.dee_poly(h).map_err(|e| e.to_string())?;
            let deg = d.degree().unwrap_or(0);
            let divides = big_valuation(&hminus, h) > 0;
            check((deg != 0) == divides, || {
                format!("violation p={p} h={h}: deg D = {deg}, h | h⁻ = {divides}")
            })?;
            pairs += 1;
            if divides {
                positive += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {positive} with h | h⁻, zero violations"
    ))
}

fn criterion_4() -> Outcome {
    let primes = odd_primes_in(3, 499);
    let table = BernoulliTable::up_to(*primes.last().unwrap() as usize);
    let mut irregular = 0;
    let mut mismatches = Vec::new();
    for &p in &primes {
        let index = table.irregular_index(p).map_err(|e| e.to_string())?;
        let pred = Predictor::with_smallest_root(p).map_err(|e| e.to_string())?;
        let (_, d) = pred.dee_poly(p).map_err(|e| e.to_string())?;
        let deg = d.degree().unwrap_or(0);
        check((deg == 0) == (index == 0), || {
            format!("violation p={p}: deg D = {deg}, irregular index {index}")
        })?;
        if index > 0 {
            irregular += 1;
        }
        if deg as u32 != index {
            mismatches.push(format!("p={p} deg={deg} index={index}"));
        }
    }
    let findings = if mismatches.is_empty() {
        "degree = index for every p".to_string()
    } else {
        format!("degree/index mismatches: {}", mismatches.join("; "))
    };
    Ok(format!(
        "{} primes, {irregular} irregular, biconditional holds; {findings}",
        primes.len()
    ))
}

fn criterion_5() -> Outcome {
    let primes = odd_primes_in(3, 163);
    for &p in &primes {
        let r = exact_hminus(p).map_err(|e| e.to_string())?;
        check(r.exponent_check, || format!("p^((p-3)/2) ∤ det for p={p}"))?;
    }
    let mut worst = 0.0f64;
    for p in odd_primes_in(3, 67) {
        let exact = exact_hminus(p).map_err(|e| e.to_string())?.value;
        let exact = exact.to_f64().ok_or("h⁻ out of f64 range")?;
        let approx = analytic_hminus(p).map_err(|e| e.to_string())?;
        let rel = ((approx - exact) / exact).abs();
        worst = worst.max(rel);
        check(rel < 1e-6, || {
            format!("p={p}: exact {exact}, analytic {approx}, rel {rel:e}")
        })?;
    }
    let hs = odd_primes_in(3, 1000);
    let mut pairs = 0;
    for &p in &primes {
        let m = MailletMatrix::new(p).map_err(|e| e.to_string())?;
        let hminus: BigInt = exact_hminus(p).map_err(|e| e.to_string())?.value;
        for &h in hs.iter().filter(|&&h| h != p) {
            let r = hminus_valuation_of(&m, h, DEFAULT_PRECISION_CAP).map_err(|e| e.to_string())?;
            let direct = big_valuation(&hminus, h);
            check(r.valuation == direct, || {
                format!("p={p} h={h}: eliminator {} vs direct {direct}", r.valuation)
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "divisibility for {} primes; analytic max rel err {worst:.1e}; {pairs} valuations agree",
        primes.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut nontrivial = 0;
    let primes = odd_primes_in(3, 499);
    for &p in &primes {
        let pred = Predictor::with_smallest_root(p).map_err(|e| e.to_string())?;
        let (_, d) = pred.dee_poly(p).map_err(|e| e.to_string())?;
        check(is_squarefree(&d).map_err(|e| e.to_string())?, || {
            format!("D not squarefree for p={p}: {d}")
        })?;
        if d.degree().unwrap_or(0) > 0 {
            nontrivial += 1;
        }
    }
    Ok(format!(
        "{} primes squarefree at h = p ({nontrivial} with deg D > 0)",
        primes.len()
    ))
}

/// Root invariance fails exactly when h = p and the root satisfies
/// `v^{p-1} ≡ 1 (mod p²)`: Q then depends on `v` modulo `p²` and picks up the
/// extra linear factor belonging to the first odd character. Returns the
/// violations; the caller checks them against that prediction.
/// `(p, h, v, degree at the smallest root, degree at v)`.
type Violation = (u64, u64, u64, usize, usize);

fn root_invariance_violations() -> Result<Vec<Violation>, String> {
    let hs = odd_primes_in(3, 100);
    let mut violations = Vec::new();
    for p in odd_primes_in(3, 97) {
        let roots = all_primitive_roots(p).map_err(|e| e.to_string())?;
        let base = Predictor::new(p, roots[0]).map_err(|e| e.to_string())?;
        for &h in &hs {
            let (_, d0) = base.dee_poly(h).map_err(|e| e.to_string())?;
            let d0 = d0.degree().unwrap_or(0);
            for &v in &roots[1..] {
                let pred = Predictor::new(p, v).map_err(|e| e.to_string())?;
                let (_, d) = pred.dee_poly(h).map_err(|e| e.to_string())?;
                let d = d.degree().unwrap_or(0);
                if d != d0 {
                    violations.push((p, h, v, d0, d));
                }
            }
        }
    }
    Ok(violations)
}

fn wieferich_root(p: u64, v: u64) -> bool {
    let p2 = BigInt::from(p * p);
    BigInt::from(v).modpow(&BigInt::from(p - 1), &p2) == BigInt::from(1)
}

/// Failing criterion whose failure pattern matches the documented analysis.
const KNOWN_FAILURE: &str = "known";

fn criterion_7() -> Outcome {
    let violations = root_invariance_violations()?;
    if violations.is_empty() {
        return Ok("degree identical across all roots for every pair".into());
    }
    let explained = violations
        .iter()
        .all(|&(p, h, v, d0, d)| h == p && wieferich_root(p, v) && d == d0 + 1);
    let predicted: usize = odd_primes_in(3, 97)
        .into_iter()
        .map(|p| {
            all_primitive_roots(p)
                .unwrap()
                .into_iter()
                .filter(|&v| wieferich_root(p, v))
                .count()
        })
        .sum();
    let list: Vec<String> = violations
        .iter()
        .map(|(p, h, v, d0, d)| format!("p={p} h={h} v={v}: {d} vs {d0}"))
        .collect();
    let tag = if explained && predicted == violations.len() {
        KNOWN_FAILURE
    } else {
        "unexpected"
    };
    Err(format!(
        "[{tag}] {} violations, all h = p with v^(p-1) ≡ 1 mod p²: {}",
        violations.len(),
        list.join("; ")
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, h: u64, max_deg: usize) -> ModPoly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..h)).collect();
    c[deg] = rng.gen_range(1..h);
    ModPoly::new(h, &c).expect("valid modulus")
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut repeated = 0;
    for h in [3u64, 5, 7, 31] {
        for i in 0..1000 {
            // Products of random pieces, some squared, to exercise multiplicities.
            let mut f = random_poly(&mut rng, h, 8);
            if rng.gen_bool(0.5) {
                let g = random_poly(&mut rng, h, 4);
                f = &f * &(&g * &g);
            }
            let fac = factorize_with_seed(&f, i).map_err(|e| e.to_string())?;
            check(fac.reconstruct(h) == f, || {
                format!("h={h}: round trip failed for {f}")
            })?;
            for (g, _) in &fac.factors {
                check(g.is_monic() && g.degree().unwrap_or(0) > 0, || {
                    format!("h={h}: bad factor {g} of {f}")
                })?;
            }
            if !fac.is_squarefree() {
                repeated += 1;
            }

            let common = random_poly(&mut rng, h, 3);
            let a = &random_poly(&mut rng, h, 6) * &common;
            let b = &random_poly(&mut rng, h, 6) * &common;
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let g = poly_gcd(&a, &b).map_err(|e| e.to_string())?;
            let divides_both = g.divides(&a).map_err(|e| e.to_string())?
                && g.divides(&b).map_err(|e| e.to_string())?;
            check(divides_both, || {
                format!("h={h}: gcd {g} does not divide {a}, {b}")
            })?;
            if !common.is_zero() {
                check(common.divides(&g).map_err(|e| e.to_string())?, || {
                    format!("h={h}: common factor {common} missing from gcd {g}")
                })?;
            }
        }
    }
    Ok(format!(
        "4000 round trips ({repeated} with repeated factors), 4000 gcd checks"
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let (code, out, err) = cli(&[
        "hunt",
        "--p-min",
        "4027",
        "--p-max",
        "4027",
        "--h-max",
        "3",
        "--oracle",
        "valuation",
    ]);
    let elapsed = start.elapsed();
    check(code == 0, || format!("exit {code}: {err}"))?;
    let lines: Vec<&str> = out.lines().collect();
    check(lines.len() == 2, || format!("unexpected output: {out}"))?;
    let r = OutputRecord::from_json_line(lines[0]).map_err(|e| e.to_string())?;
    let degree = r.get("degree").cloned();
    let valuation = r.get("valuation").cloned();
    let (Some(Value::Int(degree)), Some(Value::Int(valuation))) = (degree, valuation) else {
        return Err(format!("missing degree or valuation: {}", lines[0]));
    };
    check(r.get("consistent") == Some(&Value::Bool(true)), || {
        format!("biconditional fails: {}", lines[0])
    })?;
    Ok(format!(
        "(4027, 3): deg D = {degree}, v_3(h⁻) = {valuation}, biconditional holds, {elapsed:.1?}; rank not decided"
    ))
}

fn criterion_10() -> Outcome {
    let runs: &[&[&str]] = &[
        &[
            "scan", "--p-min", "3", "--p-max", "113", "--h-max", "60", "--roots", "all",
        ],
        &[
            "scan",
            "--p-min",
            "3",
            "--p-max",
            "30",
            "--h-mode",
            "p-squared",
            "--format",
            "csv",
        ],
        &[
            "hunt", "--p-min", "150", "--p-max", "350", "--h-max", "13", "--format", "csv",
        ],
    ];
    let mut bytes = 0;
    for base in runs {
        let mut outs = Vec::new();
        for threads in ["1", "8"] {
            let mut args = base.to_vec();
            args.extend(["--threads", threads]);
            let (code, out, err) = cli(&args);
            check(code == 0, || format!("{args:?}: exit {code}: {err}"))?;
            outs.push(out);
        }
        check(outs[0] == outs[1], || format!("{base:?}: output differs"))?;
        bytes += outs[0].len();
    }
    Ok(format!(
        "{} runs byte-identical at 1 and 8 threads ({bytes} bytes)",
        runs.len()
    ))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {n:>2}: PASS  {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                if !why.starts_with(&format!("[{KNOWN_FAILURE}]")) {
                    failed += 1;
                }
                println!("criterion {n:>2}: FAIL  {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed unexpectedly");
        std::process::exit(1);
    }
}
