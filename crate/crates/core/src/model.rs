//! Complexity model, residual metric and timing ratios.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flops::FlopCounter;
use crate::invert::AlgorithmId;
use crate::matrix::QuatMatrix;

/// Leading `n^3` coefficient of total real flops for each algorithm, as
/// published.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityModel {
    coefficients: [f64; 6],
}

impl ComplexityModel {
    pub fn published() -> Self {
        Self { coefficients: [136.0 / 3.0, 110.0 / 3.0, 256.0 / 3.0, 512.0 / 3.0, 128.0 / 3.0, 128.0] }
    }

    pub fn with_coefficients(coefficients: [f64; 6]) -> Self {
        Self { coefficients }
    }

    pub fn coefficient(&self, alg: AlgorithmId) -> Result<f64> {
        match alg.code() {
            c @ 1..=6 => Ok(self.coefficients[c as usize - 1]),
            c => Err(Error::UnknownAlgorithm(c)),
        }
    }

    /// `coefficient * n^3`; lower-order terms are ignored.
    pub fn predict_flops(&self, alg: AlgorithmId, n: usize) -> Result<f64> {
        Ok(self.coefficient(alg)? * (n as f64).powi(3))
    }

    /// Algorithms sorted by increasing coefficient.
    pub fn ranking(&self) -> Vec<AlgorithmId> {
        let mut algs = AlgorithmId::ALL.to_vec();
        algs.sort_by(|x, y| self.coefficients[x.code() as usize - 1].total_cmp(&self.coefficients[y.code() as usize - 1]));
        algs
    }
}

impl Default for ComplexityModel {
    fn default() -> Self {
        Self::published()
    }
}

/// [`ComplexityModel::predict_flops`] on the published coefficients.
pub fn predict_flops(alg: AlgorithmId, n: usize) -> Result<f64> {
    ComplexityModel::published().predict_flops(alg, n)
}

/// Mean right residual `||Z Zhat - I||_F / n^2`.
pub fn residual(z: &QuatMatrix, zhat: &QuatMatrix) -> Result<f64> {
    if !z.is_square() {
        return Err(Error::NotSquare { op: "residual", rows: z.rows(), cols: z.cols() });
    }
    if z.shape() != zhat.shape() {
        return Err(Error::Dimension { op: "residual", left: z.shape(), right: zhat.shape() });
    }
    let n = z.rows();
    if n == 0 {
        return Ok(0.0);
    }
    let r = z.mul(zhat)?.sub(&QuatMatrix::identity(n))?;
    Ok(r.frobenius_norm() / (n * n) as f64)
}

/// Left-sided counterpart, `||Zhat Z - I||_F / n^2`.
pub fn left_residual(z: &QuatMatrix, zhat: &QuatMatrix) -> Result<f64> {
    residual(zhat, z)
}

/// One (algorithm, size, trial) measurement.
///
/// A failed inversion keeps its row: `residual` is NaN and `failure` holds
/// the error text. In CSV form only the NaN survives.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub algorithm: AlgorithmId,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub wall_time: f64,
    pub residual: f64,
    pub flops: FlopCounter,
    pub failure: Option<String>,
}

impl BenchmarkRecord {
    pub fn is_failure(&self) -> bool {
        self.failure.is_some() || self.residual.is_nan()
    }
}

/// `|measured - predicted| / predicted` for a record produced with counting
/// enabled.
pub fn verify_counts(record: &BenchmarkRecord, model: &ComplexityModel) -> Result<f64> {
    let predicted = model.predict_flops(record.algorithm, record.n)?;
    Ok((record.flops.total() as f64 - predicted).abs() / predicted)
}

/// Mean of a per-record quantity over successful records, keyed by
/// `(n, algorithm)`.
fn mean_by<F: Fn(&BenchmarkRecord) -> f64>(records: &[BenchmarkRecord], f: F) -> BTreeMap<(usize, AlgorithmId), f64> {
    let mut acc: BTreeMap<(usize, AlgorithmId), (f64, usize)> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.is_failure()) {
        let e = acc.entry((r.n, r.algorithm)).or_default();
        e.0 += f(r);
        e.1 += 1;
    }
    acc.into_iter().map(|(k, (sum, count))| (k, sum / count as f64)).collect()
}

pub fn mean_wall_times(records: &[BenchmarkRecord]) -> BTreeMap<(usize, AlgorithmId), f64> {
    mean_by(records, |r| r.wall_time)
}

pub fn mean_residuals(records: &[BenchmarkRecord]) -> BTreeMap<(usize, AlgorithmId), f64> {
    mean_by(records, |r| r.residual)
}

/// `r_{n,s} = t_{n,5} / t_{n,s}` for every size and every algorithm other
/// than the skew real baseline. Larger means `s` is faster.
pub fn timing_ratio(records: &[BenchmarkRecord]) -> Result<BTreeMap<(usize, AlgorithmId), f64>> {
    let means = mean_wall_times(records);
    let mut out = BTreeMap::new();
    for (&(n, alg), &t) in &means {
        if alg == AlgorithmId::SkewReal {
            continue;
        }
        let base = means.get(&(n, AlgorithmId::SkewReal)).ok_or(Error::MissingBaseline { n })?;
        out.insert((n, alg), base / t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invert::{invert, invert_phi2_oracle};
    use crate::rng::gen_random;

    fn record(alg: AlgorithmId, n: usize, wall_time: f64) -> BenchmarkRecord {
        BenchmarkRecord {
            algorithm: alg,
            n,
            trial: 0,
            seed: 0,
            wall_time,
            residual: 0.0,
            flops: FlopCounter::new(),
            failure: None,
        }
    }

    #[test]
    fn published_predictions() {
        assert_eq!(predict_flops(AlgorithmId::RealFrobenius, 3).unwrap(), 110.0 / 3.0 * 27.0);
        assert_eq!(predict_flops(AlgorithmId::RealEmbed, 10).unwrap(), 512.0 / 3.0 * 1000.0);
        for n in [1, 7, 100] {
            let ratio = predict_flops(AlgorithmId::RealEmbed, n).unwrap() / predict_flops(AlgorithmId::RealFrobenius, n).unwrap();
            assert!((ratio - 512.0 / 110.0).abs() < 1e-12);
        }
        assert!(matches!(predict_flops(AlgorithmId::Phi2Oracle, 4), Err(Error::UnknownAlgorithm(0))));
    }

    #[test]
    fn published_ranking() {
        use AlgorithmId::*;
        // 128 < 512/3, so the recursive method sits below the real embedding.
        assert_eq!(
            ComplexityModel::published().ranking(),
            vec![RealFrobenius, SkewReal, ComplexFrobenius, ComplexEmbed, QtfmRecursive, RealEmbed]
        );
    }

    #[test]
    fn residual_values() {
        let z = gen_random(5, 3);
        let zi = invert_phi2_oracle(&z).unwrap();
        assert!(residual(&z, &zi).unwrap() < 1e-14);
        assert_eq!(residual(&QuatMatrix::identity(4), &QuatMatrix::identity(4)).unwrap(), 0.0);
        for n in [1usize, 4, 9] {
            let r = residual(&QuatMatrix::identity(n), &QuatMatrix::zeros(n, n)).unwrap();
            assert!((r - (n as f64).powf(-1.5)).abs() < 1e-15);
        }
        assert!(residual(&QuatMatrix::zeros(2, 3), &QuatMatrix::zeros(2, 3)).is_err());
        assert!(residual(&QuatMatrix::zeros(2, 2), &QuatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn residual_is_invariant_under_matched_permutations() {
        let n = 6;
        let z = gen_random(n, 8);
        let zi = invert_phi2_oracle(&z).unwrap();
        let perm = [3usize, 0, 5, 1, 4, 2];
        // P Z and Zhat P^T: the product becomes P (Z Zhat) P^T.
        let pz = QuatMatrix::from_fn(n, n, |i, j| z.get(perm[i], j));
        let zip = QuatMatrix::from_fn(n, n, |i, j| zi.get(i, perm[j]));
        let a = residual(&z, &zi).unwrap();
        let b = residual(&pz, &zip).unwrap();
        assert!((a - b).abs() <= 1e-15 * a.max(1e-300) + 1e-30);
    }

    #[test]
    fn ratios() {
        use AlgorithmId::*;
        let same: Vec<_> = AlgorithmId::ALL.iter().map(|&a| record(a, 8, 0.3)).collect();
        let r = timing_ratio(&same).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.values().all(|&v| v == 1.0));

        let recs = vec![record(SkewReal, 4, 2.0), record(RealFrobenius, 4, 0.5), record(RealFrobenius, 4, 0.5)];
        assert_eq!(timing_ratio(&recs).unwrap()[&(4, RealFrobenius)], 4.0);

        let missing = vec![record(RealFrobenius, 4, 0.5)];
        assert!(matches!(timing_ratio(&missing), Err(Error::MissingBaseline { n: 4 })));
    }

    #[test]
    fn failures_are_excluded_from_means() {
        let mut bad = record(AlgorithmId::RealFrobenius, 4, 100.0);
        bad.residual = f64::NAN;
        let recs = vec![record(AlgorithmId::RealFrobenius, 4, 1.0), bad];
        assert_eq!(mean_wall_times(&recs)[&(4, AlgorithmId::RealFrobenius)], 1.0);
    }

    #[test]
    fn counted_totals_track_the_model_at_moderate_size() {
        let n = 64;
        let z = gen_random(n, 1);
        let model = ComplexityModel::published();
        for alg in [AlgorithmId::RealFrobenius, AlgorithmId::RealEmbed] {
            let mut rec = record(alg, n, 1.0);
            rec.flops = invert(alg, &z).unwrap().flops;
            let dev = verify_counts(&rec, &model).unwrap();
            assert!(dev <= 0.05, "{alg}: {dev}");
        }
    }
}
