//! Seeded generation of random quaternion matrices.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed by
//! `seed_from_u64(seed)`. Every `(n, trial, plane)` triple reads its own
//! stream, `stream = n << 34 | trial << 2 | plane`, so a matrix can be
//! regenerated without replaying earlier draws. Each 64-bit output `x`
//! becomes `((x >> 12) + 0.5) * 2^-51 - 1`. Every step is exact in `f64`, so
//! the value lies strictly inside `(-1, 1)`. Planes are filled row-major in
//! the order A, B, C, D.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::matrix::{QuatMatrix, RealMatrix};

/// Maps 64 random bits to the open interval `(-1, 1)`.
pub fn open_unit(x: u64) -> f64 {
    ((x >> 12) as f64 + 0.5) * (1.0 / (1u64 << 51) as f64) - 1.0
}

fn stream_id(n: usize, trial: u64, plane: u64) -> u64 {
    ((n as u64) << 34) | ((trial & 0xffff_ffff) << 2) | (plane & 3)
}

/// Random real `n x n` matrix for one plane of one trial.
pub fn gen_plane(n: usize, seed: u64, trial: u64, plane: u64) -> RealMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(n, trial, plane));
    RealMatrix::from_fn(n, n, |_, _| open_unit(rng.next_u64()))
}

/// Random quaternion matrix with i.i.d. uniform(-1, 1) plane entries.
pub fn gen_trial(n: usize, seed: u64, trial: u64) -> QuatMatrix {
    let [a, b, c, d] = [0, 1, 2, 3].map(|p| gen_plane(n, seed, trial, p));
    QuatMatrix::new(a, b, c, d).expect("planes share a shape")
}

/// Trial 0 of [`gen_trial`].
pub fn gen_random(n: usize, seed: u64) -> QuatMatrix {
    gen_trial(n, seed, 0)
}
