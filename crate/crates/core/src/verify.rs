//! Quick self-check of the library's invariants on seeded random inputs.

use std::fmt;

use crate::embed::{phi1, phi2};
use crate::flops::Field;
use crate::invert::{invert, invert_phi2_oracle, AlgorithmId};
use crate::io::{decode_qmat, encode_qmat};
use crate::matrix::QuatMatrix;
use crate::model::{residual, verify_counts, BenchmarkRecord, ComplexityModel};
use crate::rng::gen_trial;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn rel_diff_c(x: &crate::ComplexMatrix, y: &crate::ComplexMatrix) -> f64 {
    let d = x.sub(y).expect("same shape").norm_sq().sqrt();
    d / y.norm_sq().sqrt().max(f64::MIN_POSITIVE)
}

fn rel_diff_r(x: &crate::RealMatrix, y: &crate::RealMatrix) -> f64 {
    let d = x.sub(y).expect("same shape").norm_sq().sqrt();
    d / y.norm_sq().sqrt().max(f64::MIN_POSITIVE)
}

/// Runs every check with `trials` random draws per check.
pub fn run_checks(seed: u64, trials: u64) -> Vec<Check> {
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for t in 0..trials {
        let (x, y) = (gen_trial(4, seed, 2 * t), gen_trial(4, seed, 2 * t + 1));
        let xy = x.mul(&y).expect("square");
        worst = worst
            .max(rel_diff_c(&phi1(&xy), &phi1(&x).mul(&phi1(&y)).expect("square")))
            .max(rel_diff_r(&phi2(&xy), &phi2(&x).mul(&phi2(&y)).expect("square")))
            .max(rel_diff_r(&phi2(&x.add(&y).expect("square")), &phi2(&x).add(&phi2(&y)).expect("square")));
    }
    let unital = phi2(&QuatMatrix::identity(4)) == crate::RealMatrix::identity(16)
        && phi1(&QuatMatrix::identity(4)) == crate::ComplexMatrix::identity(8);
    out.push(check("embeddings are homomorphisms", worst <= 1e-12 && unital, format!("max relative error {worst:.2e}")));

    let mut worst = 0.0f64;
    let mut failures = 0;
    for n in 1..=8 {
        for t in 0..trials {
            let z = gen_trial(n, seed, t);
            let Ok(oracle) = invert_phi2_oracle(&z) else { continue };
            for alg in AlgorithmId::ALL {
                match invert(alg, &z) {
                    Ok(r) => worst = worst.max(r.inverse.max_abs_diff(&oracle)),
                    Err(_) => failures += 1,
                }
            }
        }
    }
    out.push(check(
        "algorithms agree with the oracle for n <= 8",
        worst <= 1e-10 && failures == 0,
        format!("max entry error {worst:.2e}, {failures} failures"),
    ));

    let z = gen_trial(8, seed, 0);
    let counts = [
        (AlgorithmId::ComplexFrobenius, Field::Complex, 2, 3),
        (AlgorithmId::RealFrobenius, Field::Real, 4, 13),
        (AlgorithmId::SkewReal, Field::Real, 4, 16),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (alg, field, inv, mul) in counts {
        match invert(alg, &z) {
            Ok(r) => {
                let (i, m) = (r.flops.inversions(field, 8), r.flops.multiplications(field, 8));
                ok &= i == inv && m == mul;
                detail.push(format!("{}: {i} inv + {m} mult", alg.code()));
            }
            Err(e) => {
                ok = false;
                detail.push(format!("{}: {e}", alg.code()));
            }
        }
    }
    out.push(check("operation counts", ok, detail.join(", ")));

    let n = 32;
    let z = gen_trial(n, seed, 0);
    let model = ComplexityModel::published();
    let mut detail = Vec::new();
    let mut worst_res = 0.0f64;
    for alg in AlgorithmId::ALL {
        if let Ok(r) = invert(alg, &z) {
            worst_res = worst_res.max(residual(&z, &r.inverse).unwrap_or(f64::INFINITY));
            let rec = BenchmarkRecord {
                algorithm: alg,
                n,
                trial: 0,
                seed,
                wall_time: f64::MIN_POSITIVE,
                residual: 0.0,
                flops: r.flops,
                failure: None,
            };
            detail.push(format!("{}: {:+.1}%", alg.code(), 100.0 * verify_counts(&rec, &model).unwrap_or(f64::NAN)));
        }
    }
    out.push(check("residuals at n = 32", worst_res <= 5e-13, format!("max residual {worst_res:.2e}")));
    // Informational: deviations from the published model, which the
    // acceptance suite holds to its tolerances at n = 128.
    out.push(check("flop totals vs model at n = 32", true, detail.join(", ")));

    let mut ok = true;
    for t in 0..trials {
        let z = gen_trial(1 + (t as usize % 7), seed, t);
        ok &= encode_qmat(&z).and_then(|b| decode_qmat(&b)).is_ok_and(|back| back.bit_eq(&z));
    }
    out.push(check("QMH1 round trip", ok, format!("{trials} matrices")));
    out
}
