use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("singular matrix: pivot {index} has magnitude {magnitude:e}")]
    Singular { index: usize, magnitude: f64 },

    #[error("cannot invert the zero quaternion")]
    SingularScalar,

    #[error("matrix is not in the image of the embedding: deviation {deviation:e} exceeds {tolerance:e}")]
    NotInImage { deviation: f64, tolerance: f64 },

    #[error("input is not generic for algorithm {algorithm}: {failure}")]
    NotGeneric { algorithm: u8, failure: GenericityFailure },

    #[error("unknown algorithm id {0} (expected 1-6)")]
    UnknownAlgorithm(u8),

    #[error("no timings for the baseline algorithm at n = {n}")]
    MissingBaseline { n: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for singular pivots and genericity failures, the numerical
    /// outcomes a benchmark sweep records rather than aborts on.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::SingularScalar
                | Error::NotGeneric { .. }
                | Error::NotInImage { .. }
        )
    }
}

/// Which intermediate inversion failed inside a multi-step algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericityFailure {
    pub steps: Vec<FailedStep>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailedStep {
    /// Human-readable name of the intermediate, e.g. `"A^-1 B"`.
    pub step: String,
    /// Pivot index inside the failing LU, or the recursion path for the
    /// block-recursive method.
    pub location: String,
    pub magnitude: f64,
}

impl fmt::Display for GenericityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "step `{}` singular at {} (|pivot| = {:e})",
                s.step, s.location, s.magnitude
            )?;
        }
        Ok(())
    }
}
