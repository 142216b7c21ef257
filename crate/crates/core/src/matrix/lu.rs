//! LU factorization with partial pivoting over the reals and complexes.
//!
//! The inverse is formed by forward and back substitution against the
//! identity without exploiting its sparsity, which gives the classical
//! `4n^3/3` multiplications and `4n^3/3` additions.

use std::ops::{Mul, Sub};

use super::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::flops::{Field, FlopSink, OpKind};
use crate::scalar::Complex;

/// Pivots smaller than this multiple of machine epsilon times the largest
/// entry of their original row are treated as zero.
pub const SINGULARITY_FACTOR: f64 = 1e2;

/// Scalar arithmetic the factorization needs, with its real cost.
pub trait LuScalar: Copy + Mul<Output = Self> + Sub<Output = Self> {
    const FIELD: Field;
    const ZERO: Self;
    const ONE: Self;
    /// (mults, adds) for one product.
    const MUL_COST: (u64, u64);
    /// Adds for one subtraction.
    const SUB_COST: u64;
    /// (mults, adds) to compute `magnitude`.
    const MAG_COST: (u64, u64);
    /// (mults, adds, divs) for one reciprocal.
    const RECIP_COST: (u64, u64, u64);

    fn magnitude(self) -> f64;
    fn recip(self) -> Self;
}

impl LuScalar for f64 {
    const FIELD: Field = Field::Real;
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const MUL_COST: (u64, u64) = (1, 0);
    const SUB_COST: u64 = 1;
    const MAG_COST: (u64, u64) = (0, 0);
    const RECIP_COST: (u64, u64, u64) = (0, 0, 1);

    #[inline(always)]
    fn magnitude(self) -> f64 {
        self.abs()
    }

    #[inline(always)]
    fn recip(self) -> Self {
        1.0 / self
    }
}

impl LuScalar for Complex {
    const FIELD: Field = Field::Complex;
    const ZERO: Self = Complex::ZERO;
    const ONE: Self = Complex::ONE;
    const MUL_COST: (u64, u64) = (4, 2);
    const SUB_COST: u64 = 2;
    const MAG_COST: (u64, u64) = (2, 1);
    const RECIP_COST: (u64, u64, u64) = (4, 1, 1);

    #[inline(always)]
    fn magnitude(self) -> f64 {
        self.abs()
    }

    #[inline(always)]
    fn recip(self) -> Self {
        Complex::recip(self)
    }
}

/// Packed `L\U` factors of `P X = L U` with unit-diagonal `L`.
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    n: usize,
    lu: Vec<T>,
    /// `perm[i]` is the row of the input that ended up in row `i`.
    perm: Vec<usize>,
    sign: f64,
    inv_pivots: Vec<T>,
    min_pivot: f64,
}

impl<T: LuScalar> LuFactors<T> {
    /// Factors the row-major `n x n` matrix `data`.
    pub fn factor<S: FlopSink>(n: usize, mut lu: Vec<T>, sink: &mut S) -> Result<Self> {
        assert_eq!(lu.len(), n * n);
        let (mm, ma) = T::MAG_COST;
        let (pm, pa) = T::MUL_COST;

        let row_scale: Vec<f64> = lu
            .chunks_exact(n.max(1))
            .map(|row| row.iter().fold(0.0f64, |m, x| m.max(x.magnitude())))
            .collect();
        sink.flops(mm * (n * n) as u64, ma * (n * n) as u64, 0);

        let threshold = SINGULARITY_FACTOR * f64::EPSILON;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut inv_pivots = Vec::with_capacity(n);
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].magnitude();
            for i in k + 1..n {
                let m = lu[i * n + k].magnitude();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            sink.flops(mm * (n - k) as u64, ma * (n - k) as u64, 0);
            if p != k {
                let (top, bottom) = lu.split_at_mut(p * n);
                top[k * n..k * n + n].swap_with_slice(&mut bottom[..n]);
                perm.swap(k, p);
                sign = -sign;
            }
            let limit = threshold * row_scale[perm[k]];
            if !(best > limit) || row_scale[perm[k]] == 0.0 {
                return Err(Error::Singular { index: k, magnitude: best });
            }
            min_pivot = min_pivot.min(best);

            let rp = lu[k * n + k].recip();
            let (rm, ra, rd) = T::RECIP_COST;
            sink.flops(rm, ra, rd);
            inv_pivots.push(rp);

            let rest = (n - k - 1) as u64;
            sink.flops(pm * rest, pa * rest, 0);
            sink.flops(pm * rest * rest, (pa + T::SUB_COST) * rest * rest, 0);

            let (head, tail) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n + k + 1..k * n + n];
            for row in tail.chunks_exact_mut(n) {
                let l = row[k] * rp;
                row[k] = l;
                for (x, &u) in row[k + 1..].iter_mut().zip(pivot_row) {
                    *x = *x - l * u;
                }
            }
        }

        Ok(Self { n, lu, perm, sign, inv_pivots, min_pivot })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Smallest pivot magnitude met during elimination.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// `+1` or `-1`.
    pub fn permutation_sign(&self) -> f64 {
        self.sign
    }

    pub fn packed(&self) -> &[T] {
        &self.lu
    }

    /// Unit lower factor, row-major.
    pub fn lower(&self) -> Vec<T> {
        let n = self.n;
        let mut l = vec![T::ZERO; n * n];
        for i in 0..n {
            for j in 0..i {
                l[i * n + j] = self.lu[i * n + j];
            }
            l[i * n + i] = T::ONE;
        }
        l
    }

    /// Upper factor, row-major.
    pub fn upper(&self) -> Vec<T> {
        let n = self.n;
        let mut u = vec![T::ZERO; n * n];
        for i in 0..n {
            for j in i..n {
                u[i * n + j] = self.lu[i * n + j];
            }
        }
        u
    }

    /// `X^-1 B` for a row-major `n x cols` right-hand side.
    pub fn solve_entries<S: FlopSink>(&self, rhs: &[T], cols: usize, sink: &mut S) -> Vec<T> {
        let n = self.n;
        assert_eq!(rhs.len(), n * cols);
        let mut x = Vec::with_capacity(n * cols);
        for &src in &self.perm {
            x.extend_from_slice(&rhs[src * cols..(src + 1) * cols]);
        }
        if cols == 0 {
            return x;
        }
        let (pm, pa) = T::MUL_COST;
        let axpy_m = pm;
        let axpy_a = pa + T::SUB_COST;
        let tri = (n * n.saturating_sub(1) / 2 * cols) as u64;

        // Forward: L y = P b.
        sink.flops(axpy_m * tri, axpy_a * tri, 0);
        for i in 1..n {
            let (done, cur) = x.split_at_mut(i * cols);
            let row_i = &mut cur[..cols];
            for k in 0..i {
                let l = self.lu[i * n + k];
                let row_k = &done[k * cols..(k + 1) * cols];
                for (xi, &xk) in row_i.iter_mut().zip(row_k) {
                    *xi = *xi - l * xk;
                }
            }
        }

        // Back: U x = y.
        sink.flops(axpy_m * tri, axpy_a * tri, 0);
        sink.flops(pm * (n * cols) as u64, pa * (n * cols) as u64, 0);
        for i in (0..n).rev() {
            let (cur, done) = x.split_at_mut((i + 1) * cols);
            let row_i = &mut cur[i * cols..];
            for k in i + 1..n {
                let u = self.lu[i * n + k];
                let row_k = &done[(k - i - 1) * cols..(k - i) * cols];
                for (xi, &xk) in row_i.iter_mut().zip(row_k) {
                    *xi = *xi - u * xk;
                }
            }
            let r = self.inv_pivots[i];
            for xi in row_i.iter_mut() {
                *xi = *xi * r;
            }
        }
        x
    }

    /// Explicit inverse entries.
    pub fn inverse_entries<S: FlopSink>(&self, sink: &mut S) -> Vec<T> {
        let n = self.n;
        let mut eye = vec![T::ZERO; n * n];
        for i in 0..n {
            eye[i * n + i] = T::ONE;
        }
        self.solve_entries(&eye, n, sink)
    }
}

/// Matrix types that can round-trip through row-major scalar entries.
pub trait LuMatrix: Sized {
    type Scalar: LuScalar;
    fn lu_entries(&self) -> Vec<Self::Scalar>;
    fn from_lu_entries(rows: usize, cols: usize, entries: Vec<Self::Scalar>) -> Self;
    fn lu_shape(&self) -> (usize, usize);
}

impl LuMatrix for RealMatrix {
    type Scalar = f64;

    fn lu_entries(&self) -> Vec<f64> {
        self.data().to_vec()
    }

    fn from_lu_entries(rows: usize, cols: usize, entries: Vec<f64>) -> Self {
        RealMatrix::new(rows, cols, entries).expect("entry count matches shape")
    }

    fn lu_shape(&self) -> (usize, usize) {
        self.shape()
    }
}

impl LuMatrix for ComplexMatrix {
    type Scalar = Complex;

    fn lu_entries(&self) -> Vec<Complex> {
        self.entries()
    }

    fn from_lu_entries(rows: usize, cols: usize, entries: Vec<Complex>) -> Self {
        ComplexMatrix::from_entries(rows, cols, &entries).expect("entry count matches shape")
    }

    fn lu_shape(&self) -> (usize, usize) {
        self.shape()
    }
}

impl<T: LuScalar> LuFactors<T> {
    /// Explicit inverse, recorded as one inversion.
    pub fn inverse_matrix<M, S>(&self, sink: &mut S) -> M
    where
        M: LuMatrix<Scalar = T>,
        S: FlopSink,
    {
        sink.op(OpKind::Inverse, T::FIELD, self.n);
        M::from_lu_entries(self.n, self.n, self.inverse_entries(sink))
    }

    /// `X^-1 rhs`, recorded as one solve.
    pub fn solve_matrix<M, S>(&self, rhs: &M, sink: &mut S) -> Result<M>
    where
        M: LuMatrix<Scalar = T>,
        S: FlopSink,
    {
        let (rows, cols) = rhs.lu_shape();
        if rows != self.n {
            return Err(Error::Dimension { op: "lu solve", left: (self.n, self.n), right: (rows, cols) });
        }
        sink.op(OpKind::Solve, T::FIELD, self.n);
        Ok(M::from_lu_entries(rows, cols, self.solve_entries(&rhs.lu_entries(), cols, sink)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flops::{FlopCounter, NoCount};

    fn lcg(seed: u64) -> impl FnMut() -> f64 {
        let mut s = seed;
        move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        }
    }

    fn random(n: usize, seed: u64) -> RealMatrix {
        let mut r = lcg(seed);
        RealMatrix::from_fn(n, n, |_, _| r())
    }

    fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
        let mut c = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum();
            }
        }
        c
    }

    fn reconstruction_error(x: &RealMatrix, f: &LuFactors<f64>) -> f64 {
        let n = x.rows();
        let lu = matmul(&f.lower(), &f.upper(), n);
        let mut err: f64 = 0.0;
        for (i, &src) in f.permutation().iter().enumerate() {
            for j in 0..n {
                err = err.max((lu[i * n + j] - x.get(src, j)).abs());
            }
        }
        err
    }

    #[test]
    fn identity_factors_trivially() {
        let f = RealMatrix::identity(4).lu().unwrap();
        assert_eq!(f.lower(), RealMatrix::identity(4).into_data());
        assert_eq!(f.upper(), RealMatrix::identity(4).into_data());
        assert_eq!(f.permutation(), &[0, 1, 2, 3]);
        assert_eq!(f.permutation_sign(), 1.0);
        assert_eq!(f.min_pivot(), 1.0);
    }

    #[test]
    fn swap_matrix_needs_one_row_exchange() {
        let x = RealMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let f = x.lu().unwrap();
        assert_eq!(f.permutation(), &[1, 0]);
        assert_eq!(f.permutation_sign(), -1.0);
        assert_eq!(f.upper(), vec![1.0, 0.0, 0.0, 1.0]);
        assert_eq!(f.min_pivot(), 1.0);
    }

    #[test]
    fn reconstructs_random_matrices() {
        let x = random(8, 3);
        let f = x.lu().unwrap();
        assert!(reconstruction_error(&x, &f) <= 1e-10 * x.max_abs());

        // Diagonally dominant 6x6.
        let mut x = random(6, 11);
        for i in 0..6 {
            x.set(i, i, x.get(i, i) + 8.0);
        }
        let f = x.lu().unwrap();
        assert!(reconstruction_error(&x, &f) <= 1e-12);
    }

    #[test]
    fn singular_inputs_are_rejected() {
        let x = RealMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(x.lu(), Err(Error::Singular { index: 1, .. })));
        let x = RealMatrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert!(matches!(x.lu(), Err(Error::Singular { index: 2, .. })));
        let x = RealMatrix::zeros(3, 3);
        assert!(matches!(x.lu(), Err(Error::Singular { index: 0, .. })));
        assert!(matches!(RealMatrix::zeros(2, 3).lu(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn tiny_but_well_scaled_matrices_are_not_singular() {
        let x = RealMatrix::from_rows(&[[1e-200, 0.0], [0.0, 1e-200]]);
        let inv = x.inverse().unwrap();
        assert_eq!(inv.get(0, 0), 1e200);
    }

    #[test]
    fn diagonal_inverse() {
        let inv = RealMatrix::from_diag(&[2.0, 4.0]).inverse().unwrap();
        assert_eq!(inv, RealMatrix::from_diag(&[0.5, 0.25]));
        assert_eq!(RealMatrix::identity(5).inverse().unwrap(), RealMatrix::identity(5));
    }

    #[test]
    fn inverse_matches_adjugate_formula() {
        let x = random(3, 5);
        let m = |i: usize, j: usize| x.get(i, j);
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let c: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            let minor = m(r[0], c[0]) * m(r[1], c[1]) - m(r[0], c[1]) * m(r[1], c[0]);
            if (i + j) % 2 == 0 { minor } else { -minor }
        };
        let det: f64 = (0..3).map(|j| m(0, j) * cof(0, j)).sum();
        let inv = x.inverse().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = cof(j, i) / det;
                assert!((inv.get(i, j) - expected).abs() <= 1e-12 * expected.abs().max(1.0));
            }
        }
    }

    #[test]
    fn solve_matches_inverse_times_rhs() {
        let x = random(7, 21);
        let b = RealMatrix::from_fn(7, 3, |i, j| (i * 3 + j) as f64 - 4.0);
        let direct = x.solve(&b).unwrap();
        let via_inverse = x.inverse().unwrap().mul(&b).unwrap();
        for (p, q) in direct.data().iter().zip(via_inverse.data()) {
            assert!((p - q).abs() <= 1e-10);
        }
    }

    #[test]
    fn complex_inverse_is_two_sided() {
        let re = random(5, 31);
        let im = random(5, 32);
        let z = ComplexMatrix::new(re, im).unwrap();
        let inv = z.inverse().unwrap();
        let eye = ComplexMatrix::identity(5);
        for prod in [z.mul(&inv).unwrap(), inv.mul(&z).unwrap()] {
            let err = prod.sub(&eye).unwrap().norm_sq().sqrt();
            assert!(err <= 1e-11, "{err}");
        }
    }

    #[test]
    fn inverse_is_two_sided_on_64x64() {
        let x = random(64, 99);
        let inv = x.inverse().unwrap();
        let eye = RealMatrix::identity(64);
        // Scale the tolerance by a cheap condition estimate.
        let kappa = x.norm_sq().sqrt() * inv.norm_sq().sqrt();
        for prod in [x.mul(&inv).unwrap(), inv.mul(&x).unwrap()] {
            let err = prod.sub(&eye).unwrap().max_abs();
            assert!(err <= 1e-11 * kappa.max(1.0) / 64.0, "{err} kappa {kappa}");
        }
    }

    #[test]
    fn inverse_costs_four_thirds_n_cubed() {
        for n in [32usize, 64, 96] {
            let x = random(n, n as u64);
            let mut c = FlopCounter::new();
            let _ = x.inverse_counted(&mut c).unwrap();
            let expected = 4.0 / 3.0 * (n as f64).powi(3);
            let dev = (c.real_mults as f64 - expected).abs() / expected;
            assert!(dev <= 0.10, "n={n} mults={} dev={dev}", c.real_mults);
            assert_eq!(c.inversions(Field::Real, n), 1);
        }
    }

    #[test]
    fn counting_does_not_change_results() {
        let x = random(9, 4);
        let a = x.inverse_counted(&mut FlopCounter::new()).unwrap();
        let b = x.inverse_counted(&mut NoCount).unwrap();
        assert_eq!(a, b);
    }
}
