//! Inversion through the complex and real matrix representations.

use super::{Branch, Inverted};
use crate::embed::{phi1, phi1_inv, phi2, phi2_inv};
use crate::error::Result;
use crate::flops::{FlopSink, NoCount};
use crate::matrix::QuatMatrix;

/// One complex inversion of size `2n`.
pub(super) fn complex_embed<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let lu = phi1(z).lu_counted(sink)?;
    let inverse = phi1_inv(&lu.inverse_matrix(sink))?.matrix;
    Ok(Inverted { inverse, branch: Branch::Direct, min_pivot: lu.min_pivot() })
}

/// One real inversion of size `4n`.
pub(super) fn real_embed<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let lu = phi2(z).lu_counted(sink)?;
    let inverse = phi2_inv(&lu.inverse_matrix(sink))?.matrix;
    Ok(Inverted { inverse, branch: Branch::Direct, min_pivot: lu.min_pivot() })
}

/// Reference inverse used to cross-check every other algorithm.
pub fn invert_phi2_oracle(z: &QuatMatrix) -> Result<QuatMatrix> {
    invert_phi2_oracle_with(z, &mut NoCount)
}

pub fn invert_phi2_oracle_with<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<QuatMatrix> {
    super::invert_with(super::AlgorithmId::Phi2Oracle, z, sink).map(|r| r.inverse)
}
