//! Quaternion matrix inversion algorithms.
//!
//! | id | algorithm | base-field work |
//! |----|-----------|-----------------|
//! | 1 | complex Frobenius inversion | 2 complex inversions, 3 complex products |
//! | 2 | real Frobenius inversion | 4 real inversions, 13 real products |
//! | 3 | complex embedding | 1 complex inversion of size 2n |
//! | 4 | real embedding | 1 real inversion of size 4n |
//! | 5 | skew real method | 4 real inversions, 16 real products |
//! | 6 | block-recursive Schur complement | n quaternion scalar inversions |
//!
//! Products of the form `X^-1 Y` inside algorithms 2 and 5 are computed as
//! one LU solve and count as one inversion.

mod embedding;
mod frobenius;
mod recursive;
mod skew;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, FailedStep, GenericityFailure, Result};
use crate::flops::{FlopCounter, FlopSink, NoCount};
use crate::matrix::{ComplexMatrix, QuatMatrix, RealMatrix};

pub use embedding::{invert_phi2_oracle, invert_phi2_oracle_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmId {
    ComplexFrobenius = 1,
    RealFrobenius = 2,
    ComplexEmbed = 3,
    RealEmbed = 4,
    SkewReal = 5,
    QtfmRecursive = 6,
    /// The real-embedding pipeline held as the reference for cross-checks.
    Phi2Oracle = 0,
}

impl AlgorithmId {
    /// The six benchmarked algorithms, in numbering order.
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::ComplexFrobenius,
        AlgorithmId::RealFrobenius,
        AlgorithmId::ComplexEmbed,
        AlgorithmId::RealEmbed,
        AlgorithmId::SkewReal,
        AlgorithmId::QtfmRecursive,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Ok(match code {
            1 => Self::ComplexFrobenius,
            2 => Self::RealFrobenius,
            3 => Self::ComplexEmbed,
            4 => Self::RealEmbed,
            5 => Self::SkewReal,
            6 => Self::QtfmRecursive,
            other => return Err(Error::UnknownAlgorithm(other)),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::ComplexFrobenius => "complex-frobenius",
            Self::RealFrobenius => "real-frobenius",
            Self::ComplexEmbed => "complex-embed",
            Self::RealEmbed => "real-embed",
            Self::SkewReal => "skew-real",
            Self::QtfmRecursive => "block-recursive",
            Self::Phi2Oracle => "phi2-oracle",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.code(), self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(code) = s.parse::<u8>() {
            return Self::from_code(code);
        }
        Self::ALL
            .into_iter()
            .chain([Self::Phi2Oracle])
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown algorithm `{s}`")))
    }
}

/// Which path of a branching algorithm produced the inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The algorithm has a single path.
    Direct,
    /// `A + iB` invertible.
    E1,
    /// `C + iD` invertible.
    E2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Direct => "direct",
            Branch::E1 => "E1",
            Branch::E2 => "E2",
        })
    }
}

/// Inverse plus diagnostics, without an operation tally.
#[derive(Debug, Clone)]
pub struct Inverted {
    pub inverse: QuatMatrix,
    pub branch: Branch,
    /// Smallest pivot magnitude over every factorization performed; for the
    /// recursive method, the smallest scalar modulus inverted.
    pub min_pivot: f64,
}

#[derive(Debug, Clone)]
pub struct InversionReport {
    pub inverse: QuatMatrix,
    pub branch: Branch,
    pub flops: FlopCounter,
    pub min_pivot: f64,
}

/// Runs `alg` on `z`, reporting arithmetic to `sink`.
pub fn invert_with<S: FlopSink>(alg: AlgorithmId, z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    if !z.is_square() {
        return Err(Error::NotSquare { op: "quaternion inversion", rows: z.rows(), cols: z.cols() });
    }
    if z.rows() == 0 {
        return Ok(Inverted { inverse: z.clone(), branch: Branch::Direct, min_pivot: f64::INFINITY });
    }
    match alg {
        AlgorithmId::ComplexFrobenius => frobenius::complex_frobenius(z, sink),
        AlgorithmId::RealFrobenius => frobenius::real_frobenius(z, sink),
        AlgorithmId::ComplexEmbed => embedding::complex_embed(z, sink),
        AlgorithmId::RealEmbed => embedding::real_embed(z, sink),
        AlgorithmId::SkewReal => skew::skew_real(z, sink),
        AlgorithmId::QtfmRecursive => recursive::block_recursive(z, sink),
        AlgorithmId::Phi2Oracle => embedding::real_embed(z, sink),
    }
}

/// Runs `alg` with a fresh [`FlopCounter`].
pub fn invert(alg: AlgorithmId, z: &QuatMatrix) -> Result<InversionReport> {
    let mut flops = FlopCounter::new();
    let Inverted { inverse, branch, min_pivot } = invert_with(alg, z, &mut flops)?;
    Ok(InversionReport { inverse, branch, flops, min_pivot })
}

/// Inverse only, no accounting.
pub fn inverse(alg: AlgorithmId, z: &QuatMatrix) -> Result<QuatMatrix> {
    invert_with(alg, z, &mut NoCount).map(|r| r.inverse)
}

pub fn invert_complex_frobenius(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::ComplexFrobenius, z)
}

pub fn invert_real_frobenius(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::RealFrobenius, z)
}

pub fn invert_complex_embed(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::ComplexEmbed, z)
}

pub fn invert_real_embed(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::RealEmbed, z)
}

pub fn invert_skew_real(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::SkewReal, z)
}

pub fn invert_qtfm_recursive(z: &QuatMatrix) -> Result<InversionReport> {
    invert(AlgorithmId::QtfmRecursive, z)
}

/// Threads the sink through an algorithm, tracks the smallest pivot, and
/// turns singular pivots into genericity failures naming the step.
pub(crate) struct Tracker<'s, S: FlopSink> {
    pub sink: &'s mut S,
    pub min_pivot: f64,
}

impl<'s, S: FlopSink> Tracker<'s, S> {
    pub fn new(sink: &'s mut S) -> Self {
        Self { sink, min_pivot: f64::INFINITY }
    }

    fn failed(step: &str, err: Error) -> FailedStep {
        match err {
            Error::Singular { index, magnitude } => FailedStep {
                step: step.to_owned(),
                location: format!("pivot {index}"),
                magnitude,
            },
            other => FailedStep { step: step.to_owned(), location: other.to_string(), magnitude: f64::NAN },
        }
    }

    pub fn inv_real(&mut self, x: &RealMatrix, step: &str) -> std::result::Result<RealMatrix, FailedStep> {
        let lu = x.lu_counted(self.sink).map_err(|e| Self::failed(step, e))?;
        self.min_pivot = self.min_pivot.min(lu.min_pivot());
        Ok(lu.inverse_matrix(self.sink))
    }

    pub fn solve_real(
        &mut self,
        x: &RealMatrix,
        rhs: &RealMatrix,
        step: &str,
    ) -> std::result::Result<RealMatrix, FailedStep> {
        let lu = x.lu_counted(self.sink).map_err(|e| Self::failed(step, e))?;
        self.min_pivot = self.min_pivot.min(lu.min_pivot());
        lu.solve_matrix(rhs, self.sink).map_err(|e| Self::failed(step, e))
    }

    pub fn inv_complex(&mut self, x: &ComplexMatrix, step: &str) -> std::result::Result<ComplexMatrix, FailedStep> {
        let lu = x.lu_counted(self.sink).map_err(|e| Self::failed(step, e))?;
        self.min_pivot = self.min_pivot.min(lu.min_pivot());
        Ok(lu.inverse_matrix(self.sink))
    }
}

pub(crate) fn not_generic(alg: AlgorithmId, steps: Vec<FailedStep>) -> Error {
    Error::NotGeneric { algorithm: alg.code(), failure: GenericityFailure { steps } }
}
