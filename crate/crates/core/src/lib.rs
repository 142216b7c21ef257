//! Dense quaternion matrix inversion.
//!
//! Six inversion algorithms over `M_n(H)`: the complex and real Frobenius
//! inversions, the complex and real embedding methods, the skew real
//! method, and block-recursive Schur complement inversion. Every kernel can
//! report its real arithmetic to a [`flops::FlopSink`], so operation counts
//! can be checked against the closed-form complexity model in [`model`].

pub mod bench;
pub mod embed;
pub mod error;
pub mod flops;
pub mod invert;
pub mod io;
pub mod matrix;
pub mod model;
pub mod plot;
pub mod rng;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use flops::{Field, FlopCounter, FlopSink, NoCount, OpKind};
pub use invert::{AlgorithmId, Branch, InversionReport};
pub use matrix::{ComplexMatrix, LuFactors, QuatMatrix, RealMatrix};
pub use scalar::{Complex, Quaternion};
