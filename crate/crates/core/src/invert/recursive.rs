//! Block-recursive Schur complement inversion with all arithmetic over the
//! quaternions.

use super::{not_generic, AlgorithmId, Branch, Inverted};
use crate::error::{FailedStep, Result};
use crate::flops::{Field, FlopSink, OpKind};
use crate::matrix::QuatMatrix;

pub(super) fn block_recursive<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let mut min_pivot = f64::INFINITY;
    let mut path = String::from("Z");
    let inverse = recurse(z, sink, &mut min_pivot, &mut path)
        .map_err(|f| not_generic(AlgorithmId::QtfmRecursive, vec![f]))?;
    Ok(Inverted { inverse, branch: Branch::Direct, min_pivot })
}

/// `path` names the block being inverted, e.g. `Z.11.S.11` for the leading
/// block of the Schur complement of the leading block.
fn recurse<S: FlopSink>(
    z: &QuatMatrix,
    sink: &mut S,
    min_pivot: &mut f64,
    path: &mut String,
) -> std::result::Result<QuatMatrix, FailedStep> {
    let n = z.rows();
    if n == 1 {
        let q = z.get(0, 0);
        let inv = q.inv_counted(sink).map_err(|_| FailedStep {
            step: "scalar inverse".to_owned(),
            location: path.clone(),
            magnitude: q.norm(),
        })?;
        sink.op(OpKind::Inverse, Field::Quaternion, 1);
        *min_pivot = min_pivot.min(q.norm());
        return Ok(QuatMatrix::scalar_identity(1, inv));
    }

    let h = n / 2;
    let m = n - h;
    let z11 = z.block(0, 0, h, h);
    let z12 = z.block(0, h, h, m);
    let z21 = z.block(h, 0, m, h);
    let z22 = z.block(h, h, m, m);
    let mul = |x: &QuatMatrix, y: &QuatMatrix, sink: &mut S| x.mul_counted(y, sink).expect("conforming blocks");

    let mark = path.len();
    path.push_str(".11");
    let u1 = recurse(&z11, sink, min_pivot, path)?;
    path.truncate(mark);

    let u2 = mul(&u1, &z12, sink);
    let u3 = mul(&z21, &u1, sink);
    let schur = z22.sub_counted(&mul(&u3, &z12, sink), sink).expect("conforming blocks");

    path.push_str(".S");
    let u4 = recurse(&schur, sink, min_pivot, path)?;
    path.truncate(mark);

    let u5 = mul(&u4, &u3, sink);
    let r11 = u1.add_counted(&mul(&u2, &u5, sink), sink).expect("conforming blocks");
    let r12 = mul(&u2, &u4, sink).neg_counted(sink);
    let r21 = u5.neg_counted(sink);
    Ok(QuatMatrix::from_blocks(&r11, &r12, &r21, &u4).expect("conforming blocks"))
}
