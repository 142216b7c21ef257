//! Structure-preserving maps from quaternion matrices into complex and real
//! matrices, and the complex split `Z = (A + iB) + j(C - iD)`.
//!
//! `phi1` sends `A + iB + jC + kD` to the `2n x 2n` complex block matrix
//!
//! ```text
//! [  A + iB   C + iD ]
//! [ -C + iD   A - iB ]
//! ```
//!
//! and `phi2` sends it to the `4n x 4n` real block matrix
//!
//! ```text
//! [  A   B   C   D ]
//! [ -B   A  -D   C ]
//! [ -C   D   A  -B ]
//! [ -D  -C   B   A ]
//! ```
//!
//! Both are injective unital algebra homomorphisms. The inverse maps read
//! the defining blocks only and report how far the input is from the image.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, QuatMatrix, RealMatrix};

/// Relative deviation from the image above which the inverse maps refuse
/// the input.
pub const IMAGE_TOLERANCE: f64 = 1e-8;

/// Result of pulling a matrix back through an embedding.
#[derive(Debug, Clone)]
pub struct Unembedded {
    pub matrix: QuatMatrix,
    /// `||Y - phi(matrix)||_F`.
    pub deviation: f64,
}

pub fn phi1(z: &QuatMatrix) -> ComplexMatrix {
    let (n, m) = z.shape();
    let mut re = RealMatrix::zeros(2 * n, 2 * m);
    let mut im = RealMatrix::zeros(2 * n, 2 * m);
    re.set_block(0, 0, z.a());
    re.set_block(0, m, z.c());
    re.set_block(n, 0, &z.c().neg());
    re.set_block(n, m, z.a());
    im.set_block(0, 0, z.b());
    im.set_block(0, m, z.d());
    im.set_block(n, 0, z.d());
    im.set_block(n, m, &z.b().neg());
    ComplexMatrix::new(re, im).expect("planes share a shape")
}

fn halve(op: &'static str, shape: (usize, usize), parts: usize) -> Result<(usize, usize)> {
    let (r, c) = shape;
    if r % parts != 0 || c % parts != 0 {
        return Err(Error::Dimension { op, left: shape, right: (parts, parts) });
    }
    Ok((r / parts, c / parts))
}

pub fn phi1_inv(y: &ComplexMatrix) -> Result<Unembedded> {
    let (n, m) = halve("phi1_inv", y.shape(), 2)?;
    let a = y.re().block(0, 0, n, m);
    let b = y.im().block(0, 0, n, m);
    let c = y.re().block(0, m, n, m);
    let d = y.im().block(0, m, n, m);
    let matrix = QuatMatrix::new(a, b, c, d)?;
    let back = phi1(&matrix);
    let deviation = (y.re().sub(back.re())?.norm_sq() + y.im().sub(back.im())?.norm_sq()).sqrt();
    check_image(deviation, y.norm_sq().sqrt())?;
    Ok(Unembedded { matrix, deviation })
}

/// Sign pattern of `phi2`: entry `[r][c]` is `(plane, negated)`, planes
/// numbered `A = 0, B = 1, C = 2, D = 3`.
const PHI2_PATTERN: [[(usize, bool); 4]; 4] = [
    [(0, false), (1, false), (2, false), (3, false)],
    [(1, true), (0, false), (3, true), (2, false)],
    [(2, true), (3, false), (0, false), (1, true)],
    [(3, true), (2, true), (1, false), (0, false)],
];

pub fn phi2(z: &QuatMatrix) -> RealMatrix {
    let (n, m) = z.shape();
    let planes = z.planes();
    let negated: Vec<RealMatrix> = planes.iter().map(|p| p.neg()).collect();
    let mut out = RealMatrix::zeros(4 * n, 4 * m);
    for (br, row) in PHI2_PATTERN.iter().enumerate() {
        for (bc, &(plane, neg)) in row.iter().enumerate() {
            let src = if neg { &negated[plane] } else { planes[plane] };
            out.set_block(br * n, bc * m, src);
        }
    }
    out
}

pub fn phi2_inv(y: &RealMatrix) -> Result<Unembedded> {
    let (n, m) = halve("phi2_inv", y.shape(), 4)?;
    let a = y.block(0, 0, n, m);
    let b = y.block(0, m, n, m);
    let c = y.block(0, 2 * m, n, m);
    let d = y.block(0, 3 * m, n, m);
    let matrix = QuatMatrix::new(a, b, c, d)?;
    let deviation = y.sub(&phi2(&matrix))?.norm_sq().sqrt();
    check_image(deviation, y.norm_sq().sqrt())?;
    Ok(Unembedded { matrix, deviation })
}

fn check_image(deviation: f64, scale: f64) -> Result<()> {
    let tolerance = IMAGE_TOLERANCE * scale;
    if !(deviation <= tolerance) {
        return Err(Error::NotInImage { deviation, tolerance });
    }
    Ok(())
}

/// `Z = Z1 + j conj(Z2)` with `Z1 = A + iB` and `Z2 = C + iD`.
///
/// Note the conjugate: `j (C - iD) = jC + kD`, whereas `j (C + iD)` would be
/// `jC - kD`. Callers pick [`ComplexSplit::z2`] or
/// [`ComplexSplit::z2_conj`] explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSplit {
    z1: ComplexMatrix,
    z2: ComplexMatrix,
}

impl ComplexSplit {
    pub fn new(z: &QuatMatrix) -> Self {
        let z1 = ComplexMatrix::new(z.a().clone(), z.b().clone()).expect("same shape");
        let z2 = ComplexMatrix::new(z.c().clone(), z.d().clone()).expect("same shape");
        Self { z1, z2 }
    }

    /// `A + iB`.
    pub fn z1(&self) -> &ComplexMatrix {
        &self.z1
    }

    /// `C + iD`.
    pub fn z2(&self) -> &ComplexMatrix {
        &self.z2
    }

    /// `A - iB`.
    pub fn z1_conj(&self) -> ComplexMatrix {
        self.z1.conj()
    }

    /// `C - iD`, the complex matrix multiplying `j` on the left.
    pub fn z2_conj(&self) -> ComplexMatrix {
        self.z2.conj()
    }

    pub fn merge(&self) -> QuatMatrix {
        let (a, b) = self.z1.clone().into_planes();
        let (c, d) = self.z2.clone().into_planes();
        QuatMatrix::new(a, b, c, d).expect("same shape")
    }
}

pub fn complex_split(z: &QuatMatrix) -> ComplexSplit {
    ComplexSplit::new(z)
}

/// `W = w1 + j w2` for complex `w1 = E + iF` and `w2 = G' + iH'`. Since
/// `j (G' + iH') = jG' - kH'`, the result has planes `(E, F, G', -H')`.
pub fn compose_left_j(w1: &ComplexMatrix, w2: &ComplexMatrix) -> Result<QuatMatrix> {
    let (e, f) = w1.clone().into_planes();
    let (g, h) = w2.clone().into_planes();
    QuatMatrix::new(e, f, g, h.neg())
}
