//! Sweeps over `(p, h)` ranges comparing `deg D` against the `h⁻` oracles.
//!
//! Two verdicts are kept apart. `consistent` is the internally checkable
//! biconditional `deg D ≠ 0 ⇔ h | h⁻`. `rank_match` compares `deg D` with an
//! externally supplied `h`-rank and is only present when such data exists.

mod ranks;

pub use ranks::{ingest_reference_ranks, RankTable, RANK_HEADER};

use rayon::prelude::*;

use crate::arith::odd_primes_in;
use crate::error::{Error, Result};
use crate::hminus::{
    big_valuation, exact_hminus_bounded, hminus_valuation_of, BernoulliTable, MailletMatrix,
    DEFAULT_EXACT_BOUND, DEFAULT_PRECISION_CAP, IRREGULAR_BOUND,
};
use crate::stickelberger::{all_primitive_roots, smallest_primitive_root, Operand, Predictor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HRange {
    /// Odd primes `h ≤ max`.
    Max(u64),
    /// Odd primes `h < p²`.
    PSquared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Exact Maillet determinant up to the exact bound, `Valuation` beyond.
    Exact,
    /// `h`-adic elimination for `h ≠ p`; Kummer's criterion for `h = p`.
    Valuation,
    /// Degrees only.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMode {
    Smallest,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub h_range: HRange,
    pub oracle: OracleMode,
    pub roots: RootMode,
    pub threads: usize,
    pub seed: u64,
    pub exact_bound: u64,
    pub precision_cap: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            p_min: 3,
            p_max: 3,
            h_range: HRange::Max(3),
            oracle: OracleMode::Exact,
            roots: RootMode::Smallest,
            threads: 1,
            seed: 0,
            exact_bound: DEFAULT_EXACT_BOUND,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p_min < 3 {
            return Err(Error::param("p_min must be at least 3"));
        }
        if self.p_min > self.p_max {
            return Err(Error::param(format!(
                "empty p range [{}, {}]",
                self.p_min, self.p_max
            )));
        }
        if let HRange::Max(h) = self.h_range {
            if h < 3 {
                return Err(Error::param("h_max must be at least 3"));
            }
        }
        if self.threads == 0 {
            return Err(Error::param("thread count must be positive"));
        }
        Ok(())
    }

    fn primes(&self) -> Vec<u64> {
        odd_primes_in(self.p_min, self.p_max)
    }

    fn h_values(&self, p: u64) -> Vec<u64> {
        match self.h_range {
            HRange::Max(h) => odd_primes_in(3, h),
            HRange::PSquared => odd_primes_in(3, p * p - 1),
        }
    }
}

/// Which oracle decided `h_divides_hminus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Exact,
    Valuation,
    /// `h = p`, decided by the Bernoulli irregularity index.
    Kummer,
    /// Oracle mode `none`.
    Disabled,
    Skipped(String),
}

impl OracleVerdict {
    pub fn label(&self) -> String {
        match self {
            OracleVerdict::Exact => "exact".into(),
            OracleVerdict::Valuation => "valuation".into(),
            OracleVerdict::Kummer => "kummer".into(),
            OracleVerdict::Disabled => "none".into(),
            OracleVerdict::Skipped(why) => format!("skipped: {why}"),
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "exact" => OracleVerdict::Exact,
            "valuation" => OracleVerdict::Valuation,
            "kummer" => OracleVerdict::Kummer,
            "none" => OracleVerdict::Disabled,
            _ => OracleVerdict::Skipped(s.strip_prefix("skipped: ")?.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub p: u64,
    pub h: u64,
    pub v: u64,
    pub operand: Operand,
    pub degree: usize,
    /// `(degree, multiplicity)` of each irreducible factor of `D`.
    pub factor_summary: Vec<(usize, u32)>,
    pub oracle: OracleVerdict,
    pub h_divides_hminus: Option<bool>,
    pub valuation: Option<u32>,
    /// `deg D ≠ 0 ⇔ h | h⁻`; absent when no oracle ran.
    pub consistent: Option<bool>,
    pub reference_rank: Option<u32>,
    pub rank_match: Option<bool>,
}

impl ScanRecord {
    pub fn has_repeated_factor(&self) -> bool {
        self.factor_summary.iter().any(|&(_, m)| m > 1)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanTotals {
    pub records: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub skipped: usize,
}

impl ScanTotals {
    pub fn add(&mut self, r: &ScanRecord) {
        self.records += 1;
        match r.consistent {
            Some(true) => self.consistent += 1,
            Some(false) => self.inconsistent += 1,
            None => self.skipped += 1,
        }
    }
}

/// Per-`p` oracle state shared by every `h` for that `p`.
enum PrimeOracle {
    Exact(num_bigint::BigInt),
    Valuation(MailletMatrix),
    Disabled,
}

struct Context<'a> {
    config: &'a ScanConfig,
    ranks: &'a RankTable,
    bernoulli: Option<BernoulliTable>,
}

impl Context<'_> {
    fn kummer(&self, p: u64) -> std::result::Result<bool, String> {
        match &self.bernoulli {
            Some(t) if p <= IRREGULAR_BOUND => t
                .irregular_index(p)
                .map(|k| k > 0)
                .map_err(|e| e.to_string()),
            _ => Err(format!(
                "p = {p} exceeds the Bernoulli bound {IRREGULAR_BOUND}"
            )),
        }
    }

    fn prime_oracle(&self, p: u64) -> Result<PrimeOracle> {
        Ok(match self.config.oracle {
            OracleMode::None => PrimeOracle::Disabled,
            OracleMode::Exact if p <= self.config.exact_bound => {
                PrimeOracle::Exact(exact_hminus_bounded(p, self.config.exact_bound)?.value)
            }
            OracleMode::Exact | OracleMode::Valuation => {
                PrimeOracle::Valuation(MailletMatrix::new(p)?)
            }
        })
    }

    /// `(verdict, h | h⁻, v_h(h⁻))` for one pair.
    fn divisibility(
        &self,
        p: u64,
        h: u64,
        oracle: &PrimeOracle,
    ) -> Result<(OracleVerdict, Option<bool>, Option<u32>)> {
        Ok(match oracle {
            PrimeOracle::Disabled => (OracleVerdict::Disabled, None, None),
            PrimeOracle::Exact(value) => {
                let v = big_valuation(value, h);
                (OracleVerdict::Exact, Some(v > 0), Some(v))
            }
            PrimeOracle::Valuation(_) if h == p => match self.kummer(p) {
                Ok(divides) => (OracleVerdict::Kummer, Some(divides), None),
                Err(why) => (OracleVerdict::Skipped(why), None, None),
            },
            PrimeOracle::Valuation(matrix) => {
                match hminus_valuation_of(matrix, h, self.config.precision_cap) {
                    Ok(r) => (
                        OracleVerdict::Valuation,
                        Some(r.valuation > 0),
                        Some(r.valuation),
                    ),
                    Err(e @ Error::ValuationTooLarge { .. }) => {
                        (OracleVerdict::Skipped(e.to_string()), None, None)
                    }
                    Err(e) => return Err(e),
                }
            }
        })
    }

    fn scan_prime(&self, p: u64) -> Result<Vec<ScanRecord>> {
        let roots = match self.config.roots {
            RootMode::Smallest => vec![smallest_primitive_root(p)?],
            RootMode::All => all_primitive_roots(p)?,
        };
        let predictors = roots
            .iter()
            .map(|&v| Predictor::new(p, v))
            .collect::<Result<Vec<_>>>()?;
        let oracle = self.prime_oracle(p)?;
        let mut out = Vec::new();
        for h in self.config.h_values(p) {
            let (verdict, divides, valuation) = self.divisibility(p, h, &oracle)?;
            for pred in &predictors {
                let d = pred.dee(h, self.config.seed)?;
                let reference_rank = self.ranks.get(p, h);
                out.push(ScanRecord {
                    p,
                    h,
                    v: d.v,
                    operand: d.operand,
                    degree: d.degree,
                    factor_summary: d.factorization.summary(),
                    oracle: verdict.clone(),
                    h_divides_hminus: divides,
                    valuation,
                    consistent: divides.map(|div| (d.degree != 0) == div),
                    reference_rank,
                    rank_match: reference_rank.map(|r| r as usize == d.degree),
                });
            }
        }
        Ok(out)
    }
}

/// Runs the scan, handing records to `sink` in `(p, h, v)` order. Primes are
/// processed in parallel batches; output order never depends on the thread
/// count.
pub fn scan_each<F>(config: &ScanConfig, ranks: &RankTable, mut sink: F) -> Result<ScanTotals>
where
    F: FnMut(&ScanRecord) -> Result<()>,
{
    config.validate()?;
    let primes = config.primes();
    let uses_kummer = |p: u64| match config.oracle {
        OracleMode::None => false,
        OracleMode::Exact => p > config.exact_bound,
        OracleMode::Valuation => true,
    };
    let bernoulli = primes
        .iter()
        .copied()
        .filter(|&p| p <= IRREGULAR_BOUND && uses_kummer(p) && config.h_values(p).contains(&p))
        .max()
        .map(|top| BernoulliTable::up_to(top.saturating_sub(3) as usize));
    let ctx = Context {
        config,
        ranks,
        bernoulli,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))?;
    let mut totals = ScanTotals::default();
    for batch in primes.chunks(config.threads * 2) {
        let results: Vec<Result<Vec<ScanRecord>>> =
            pool.install(|| batch.par_iter().map(|&p| ctx.scan_prime(p)).collect());
        for records in results {
            for r in records? {
                totals.add(&r);
                sink(&r)?;
            }
        }
    }
    Ok(totals)
}

/// Collects the whole scan.
pub fn scan(config: &ScanConfig, ranks: &RankTable) -> Result<Vec<ScanRecord>> {
    let mut out = Vec::new();
    scan_each(config, ranks, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// A pair with `deg D` and the reference rank disagreeing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMismatch {
    pub p: u64,
    pub h: u64,
    pub v: u64,
    pub degree: usize,
    pub reference_rank: u32,
}

/// A pair whose `D` has a repeated irreducible factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityFlag {
    pub p: u64,
    pub h: u64,
    pub v: u64,
    pub profile: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HuntReport {
    pub totals: ScanTotals,
    /// `(p, h, v)` where the divisibility biconditional fails.
    pub violations: Vec<(u64, u64, u64)>,
    pub rank_mismatches: Vec<RankMismatch>,
    pub multiplicity_flags: Vec<MultiplicityFlag>,
}

impl HuntReport {
    pub fn observe(&mut self, r: &ScanRecord) {
        self.totals.add(r);
        if r.consistent == Some(false) {
            self.violations.push((r.p, r.h, r.v));
        }
        if let (Some(rank), Some(false)) = (r.reference_rank, r.rank_match) {
            self.rank_mismatches.push(RankMismatch {
                p: r.p,
                h: r.h,
                v: r.v,
                degree: r.degree,
                reference_rank: rank,
            });
        }
        if r.has_repeated_factor() {
            self.multiplicity_flags.push(MultiplicityFlag {
                p: r.p,
                h: r.h,
                v: r.v,
                profile: r.factor_summary.clone(),
            });
        }
    }
}

/// Scan plus counterexample bookkeeping; `sink` still sees every record.
pub fn hunt_each<F>(config: &ScanConfig, ranks: &RankTable, mut sink: F) -> Result<HuntReport>
where
    F: FnMut(&ScanRecord) -> Result<()>,
{
    let mut report = HuntReport::default();
    scan_each(config, ranks, |r| {
        report.observe(r);
        sink(r)
    })?;
    Ok(report)
}

pub fn hunt_counterexamples(config: &ScanConfig, ranks: &RankTable) -> Result<HuntReport> {
    hunt_each(config, ranks, |_| Ok(()))
}
