//! Skew real method: exploits the block structure of the real representation.
//!
//! The published step list has two sign slips. `V2` must be `U4 C - U3 D`
//! and the last two planes must be `-V1 X + V2 Y` and `V1 Y + V2 X`; with the
//! signs as printed the result is not an inverse. The corrected form follows
//! from writing `Z = (A + iB) + j(C - iD)` and eliminating the `j` part, and
//! has the same operation count (4 inversions, 16 products).

use super::{not_generic, AlgorithmId, Branch, Inverted, Tracker};
use crate::error::{FailedStep, Result};
use crate::flops::FlopSink;
use crate::matrix::QuatMatrix;

pub(super) fn skew_real<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let mut t = Tracker::new(sink);
    let inverse =
        skew_real_steps(&mut t, z, false).map_err(|f| not_generic(AlgorithmId::SkewReal, vec![f]))?;
    Ok(Inverted { inverse, branch: Branch::Direct, min_pivot: t.min_pivot })
}

/// `as_printed` reproduces the published signs; kept so a test can show
/// that form fails.
pub(super) fn skew_real_steps<S: FlopSink>(
    t: &mut Tracker<'_, S>,
    z: &QuatMatrix,
    as_printed: bool,
) -> std::result::Result<QuatMatrix, FailedStep> {
    let [a, b, c, d] = z.planes();
    macro_rules! mul {
        ($x:expr, $y:expr) => {
            $x.mul_counted($y, t.sink).expect("square blocks")
        };
    }
    macro_rules! add {
        ($x:expr, $y:expr) => {
            $x.add_counted($y, t.sink).expect("square blocks")
        };
    }
    macro_rules! sub {
        ($x:expr, $y:expr) => {
            $x.sub_counted($y, t.sink).expect("square blocks")
        };
    }

    let u1 = t.solve_real(a, b, "A^-1 B")?;
    let u2 = add!(a, &mul!(b, &u1));
    let u3 = t.inv_real(&u2, "(A + B U1)^-1")?;
    let u4 = mul!(u1, &u3);

    let v1 = add!(mul!(u3, c), &mul!(u4, d));
    let v2 = if as_printed {
        sub!(mul!(u3, d), &mul!(u4, c))
    } else {
        sub!(mul!(u4, c), &mul!(u3, d))
    };

    let w1 = sub!(add!(a, &mul!(c, &v1)), &mul!(d, &v2));
    let w2 = add!(add!(b, &mul!(d, &v1)), &mul!(c, &v2));
    let w3 = t.solve_real(&w1, &w2, "W1^-1 W2")?;

    let s = add!(w1, &mul!(w2, &w3));
    let x = t.inv_real(&s, "(W1 + W2 W3)^-1")?;
    let y = mul!(w3, &x).neg_counted(t.sink);
    let (zp, wp) = if as_printed {
        let zp = sub!(mul!(v1, &x).neg_counted(t.sink), &mul!(v2, &y));
        let wp = sub!(mul!(v2, &x), &mul!(v1, &y));
        (zp, wp)
    } else {
        let zp = sub!(mul!(v2, &y), &mul!(v1, &x));
        let wp = add!(mul!(v1, &y), &mul!(v2, &x));
        (zp, wp)
    };

    Ok(QuatMatrix::new(x, y, zp, wp).expect("square blocks"))
}
