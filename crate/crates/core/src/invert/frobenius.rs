//! Frobenius-type inversion over the complex and the real base field.

use super::{not_generic, AlgorithmId, Branch, Inverted, Tracker};
use crate::embed::{compose_left_j, complex_split};
use crate::error::{FailedStep, Result};
use crate::flops::FlopSink;
use crate::matrix::{ComplexMatrix, QuatMatrix};

type Step<T> = std::result::Result<T, FailedStep>;

/// Two complex inversions and three complex products.
///
/// Tries the `A + iB` branch first and falls back to `C + iD`.
pub(super) fn complex_frobenius<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let split = complex_split(z);
    let (z1, z2) = (split.z1(), split.z2());
    let mut t = Tracker::new(sink);

    let first = branch_e1(&mut t, z1, z2);
    let e1_failure = match first {
        Ok(inverse) => return Ok(Inverted { inverse, branch: Branch::E1, min_pivot: t.min_pivot }),
        Err(f) => f,
    };
    match branch_e2(&mut t, z1, z2) {
        Ok(inverse) => Ok(Inverted { inverse, branch: Branch::E2, min_pivot: t.min_pivot }),
        Err(e2_failure) => Err(not_generic(AlgorithmId::ComplexFrobenius, vec![e1_failure, e2_failure])),
    }
}

fn branch_e1<S: FlopSink>(t: &mut Tracker<'_, S>, z1: &ComplexMatrix, z2: &ComplexMatrix) -> Step<QuatMatrix> {
    let x1 = t.inv_complex(&z1.conj(), "E1: (A - iB)^-1")?;
    let x2 = x1.mul_counted(&z2.conj(), t.sink).expect("square blocks");
    let x3 = z2.mul_counted(&x2, t.sink).expect("square blocks");
    let s = z1.add_counted(&x3, t.sink).expect("square blocks");
    let x4 = t.inv_complex(&s, "E1: (A + iB + X3)^-1")?;
    let x5 = x2.mul_counted(&x4, t.sink).expect("square blocks").neg_counted(t.sink);
    Ok(compose_left_j(&x4, &x5).expect("square blocks"))
}

fn branch_e2<S: FlopSink>(t: &mut Tracker<'_, S>, z1: &ComplexMatrix, z2: &ComplexMatrix) -> Step<QuatMatrix> {
    let x1 = t.inv_complex(&z2.conj(), "E2: (C - iD)^-1")?;
    let x2 = x1.mul_counted(&z1.conj(), t.sink).expect("square blocks");
    let x3 = z1.mul_counted(&x2, t.sink).expect("square blocks");
    let s = x3.add_counted(z2, t.sink).expect("square blocks");
    let x4 = t.inv_complex(&s, "E2: (X3 + C + iD)^-1")?;
    let x5 = x2.mul_counted(&x4, t.sink).expect("square blocks");
    Ok(compose_left_j(&x5, &x4.neg_counted(t.sink)).expect("square blocks"))
}

/// Four real inversions and thirteen real products. `A^-1 B` and
/// `W1^-1 W2` are LU solves.
pub(super) fn real_frobenius<S: FlopSink>(z: &QuatMatrix, sink: &mut S) -> Result<Inverted> {
    let mut t = Tracker::new(sink);
    let inverse = real_frobenius_steps(&mut t, z)
        .map_err(|f| not_generic(AlgorithmId::RealFrobenius, vec![f]))?;
    Ok(Inverted { inverse, branch: Branch::Direct, min_pivot: t.min_pivot })
}

fn real_frobenius_steps<S: FlopSink>(t: &mut Tracker<'_, S>, z: &QuatMatrix) -> Step<QuatMatrix> {
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

    let k = add!(c, d);

    let u1 = t.solve_real(a, b, "A^-1 B")?;
    let s = add!(a, &mul!(b, &u1));
    let u2 = t.inv_real(&s, "(A + B U1)^-1")?;
    let u3 = mul!(u1, &u2);
    let u4 = mul!(u3, c);
    let u5 = mul!(u2, d);

    let v1 = sub!(sub!(mul!(add!(u2, &u3), &k), &u4), &u5);
    let v2 = sub!(u4, &u5);
    let v3 = sub!(v1, &v2);
    let v4 = mul!(c, &v2);
    let v5 = mul!(d, &v1);

    let w1 = sub!(add!(add!(mul!(k, &v3), a), &v4), &v5);
    let w2 = add!(add!(b, &v4), &v5);
    let w3 = t.solve_real(&w1, &w2, "W1^-1 W2")?;

    let s = add!(w1, &mul!(w2, &w3));
    let e = t.inv_real(&s, "(W1 + W2 W3)^-1")?;
    let e1 = mul!(v2, &e);
    let f = mul!(w3, &e).neg_counted(t.sink);
    let f1 = mul!(v1, &f);
    let g = sub!(sub!(f1, &e1), &mul!(v3, &add!(e, &f)));
    let h = add!(f1, &e1);

    Ok(QuatMatrix::new(e, f, g, h).expect("square blocks"))
}
