//! Benchmark sweeps over sizes, trials and algorithms.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::flops::{FlopCounter, NoCount};
use crate::invert::{invert_with, AlgorithmId};
use crate::matrix::QuatMatrix;
use crate::model::{mean_residuals, mean_wall_times, residual, BenchmarkRecord};
use crate::rng::gen_trial;

/// Upper bound on the number of sizes a list may expand to.
pub const MAX_SIZES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: u64,
    pub algorithms: Vec<AlgorithmId>,
    pub seed: u64,
    /// Adds a second, instrumented pass per inversion so timings stay clean.
    pub count_flops: bool,
    /// Runs every algorithm once on a small matrix before timing.
    pub warmup: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: (1..=10).map(|m| 100 * m).collect(),
            trials: 10,
            algorithms: AlgorithmId::ALL.to_vec(),
            seed: 1,
            count_flops: false,
            warmup: true,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::Format("sizes must be a non-empty list of positive integers".into()));
        }
        if self.trials == 0 {
            return Err(Error::Format("trials must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Format("algorithm set must not be empty".into()));
        }
        if self.algorithms.contains(&AlgorithmId::Phi2Oracle) {
            return Err(Error::Format("the oracle is not a benchmark algorithm".into()));
        }
        Ok(())
    }

    /// Rows a sweep produces: sizes x trials x algorithms.
    pub fn row_count(&self) -> u64 {
        self.sizes.len() as u64 * self.trials * self.algorithms.len() as u64
    }
}

/// Parses a comma-separated size list. Items are `N`, `START..END`
/// (inclusive, step 1) or `START..END:STEP`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let bad = |msg: String| Error::Format(format!("size list `{s}`: {msg}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(bad("empty item".into()));
        }
        let num = |t: &str| -> Result<usize> {
            let v: usize = t.trim().parse().map_err(|_| bad(format!("`{t}` is not a size")))?;
            if v == 0 {
                return Err(bad("sizes must be positive".into()));
            }
            Ok(v)
        };
        match item.split_once("..") {
            None => out.push(num(item)?),
            Some((start, rest)) => {
                let (end, step) = match rest.split_once(':') {
                    Some((end, step)) => (end, num(step)?),
                    None => (rest, 1),
                };
                let (start, end) = (num(start)?, num(end)?);
                if start > end {
                    return Err(bad(format!("range {start}..{end} is empty")));
                }
                let count = (end - start) / step + 1;
                if out.len() + count > MAX_SIZES {
                    return Err(bad(format!("more than {MAX_SIZES} sizes")));
                }
                out.extend((start..=end).step_by(step));
            }
        }
        if out.len() > MAX_SIZES {
            return Err(bad(format!("more than {MAX_SIZES} sizes")));
        }
    }
    Ok(out)
}

/// Parses a comma-separated algorithm list of codes (`1`-`6`) or names;
/// `all` selects all six. Duplicates are dropped, first occurrence wins.
pub fn parse_algorithms(s: &str) -> Result<Vec<AlgorithmId>> {
    let mut out: Vec<AlgorithmId> = Vec::new();
    for item in s.split(',').map(str::trim) {
        let algs = if item.eq_ignore_ascii_case("all") {
            AlgorithmId::ALL.to_vec()
        } else {
            let alg: AlgorithmId = item.parse()?;
            if alg == AlgorithmId::Phi2Oracle {
                return Err(Error::Format("the oracle is not a benchmark algorithm".into()));
            }
            vec![alg]
        };
        for a in algs {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Times one inversion of the seeded draw for `(n, trial)`.
pub fn measure(alg: AlgorithmId, n: usize, trial: u64, seed: u64, count_flops: bool) -> BenchmarkRecord {
    measure_on(alg, &gen_trial(n, seed, trial), trial, seed, count_flops)
}

/// Times one inversion of `z` and, if asked, repeats it with counting on.
pub fn measure_on(alg: AlgorithmId, z: &QuatMatrix, trial: u64, seed: u64, count_flops: bool) -> BenchmarkRecord {
    let n = z.rows();
    let start = Instant::now();
    let outcome = invert_with(alg, z, &mut NoCount);
    let wall_time = start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE);

    let mut flops = FlopCounter::new();
    if count_flops {
        // Counts are a function of the input alone, so a failing draw fails
        // the same way here and the partial tally is still deterministic.
        let _ = invert_with(alg, z, &mut flops);
    }
    let (residual, failure) = match outcome {
        Ok(r) => match residual(z, &r.inverse) {
            Ok(res) => (res, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        },
        Err(e) => (f64::NAN, Some(e.to_string())),
    };
    BenchmarkRecord { algorithm: alg, n, trial, seed, wall_time, residual, flops, failure }
}

/// Runs the sweep serially, handing each record to `sink` as it completes.
/// Numerical failures become rows; only a sink error stops the sweep.
pub fn run_bench<F>(config: &BenchConfig, mut sink: F) -> Result<Vec<BenchmarkRecord>>
where
    F: FnMut(&BenchmarkRecord) -> Result<()>,
{
    config.validate()?;
    if config.warmup {
        let z = gen_trial(16, config.seed ^ 0x5eed, 0);
        for &alg in &config.algorithms {
            let _ = invert_with(alg, &z, &mut NoCount);
        }
    }
    let mut records = Vec::with_capacity(config.row_count() as usize);
    for &n in &config.sizes {
        for trial in 0..config.trials {
            for &alg in &config.algorithms {
                let record = measure(alg, n, trial, config.seed, config.count_flops);
                sink(&record)?;
                records.push(record);
            }
        }
    }
    Ok(records)
}

/// Plain-text table of mean times, ratios to the skew real method and mean
/// residuals per size and algorithm.
pub fn summarize(records: &[BenchmarkRecord]) -> String {
    let times = mean_wall_times(records);
    let residuals = mean_residuals(records);
    let mut failures = std::collections::BTreeMap::new();
    for r in records.iter().filter(|r| r.is_failure()) {
        *failures.entry((r.n, r.algorithm)).or_insert(0u64) += 1;
    }
    let mut keys: Vec<_> = records.iter().map(|r| (r.n, r.algorithm)).collect();
    keys.sort();
    keys.dedup();

    let mut out = String::new();
    let _ = writeln!(out, "{:>6}  {:<20} {:>12}  {:>8}  {:>10}  {:>8}", "n", "algorithm", "mean time s", "r_n,s", "residual", "failures");
    for key @ (n, alg) in keys {
        let fmt_opt = |v: Option<&f64>, p: usize| v.map_or_else(|| "-".to_owned(), |x| format!("{x:.p$e}"));
        let ratio = if alg == AlgorithmId::SkewReal {
            "1".to_owned()
        } else {
            // Per size, so a size without a baseline does not hide the others.
            times
                .get(&(n, AlgorithmId::SkewReal))
                .zip(times.get(&key))
                .map_or_else(|| "-".to_owned(), |(base, t)| format!("{:.3}", base / t))
        };
        let _ = writeln!(
            out,
            "{:>6}  {:<20} {:>12}  {:>8}  {:>10}  {:>8}",
            n,
            format!("{} {}", alg.code(), alg.name()),
            fmt_opt(times.get(&key), 3),
            ratio,
            fmt_opt(residuals.get(&key), 2),
            failures.get(&key).copied().unwrap_or(0),
        );
    }
    out
}
