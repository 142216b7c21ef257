//! Dense row-major matrices over the reals, complexes and quaternions.
//!
//! Complex and quaternion matrices are stored as real planes. A complex
//! product is four real products plus two plane additions; a quaternion
//! product is sixteen real products accumulated into four planes.

mod kernel;
pub mod lu;

use crate::error::{Error, Result};
use crate::flops::{Field, FlopSink, NoCount, OpKind};
use crate::scalar::{Complex, Quaternion};

pub use lu::LuFactors;

fn check_same(op: &'static str, l: (usize, usize), r: (usize, usize)) -> Result<()> {
    if l != r {
        return Err(Error::Dimension { op, left: l, right: r });
    }
    Ok(())
}

fn check_inner(op: &'static str, l: (usize, usize), r: (usize, usize)) -> Result<()> {
    if l.1 != r.0 {
        return Err(Error::Dimension { op, left: l, right: r });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Format(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Copy of the `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c0 + cols]);
        }
        Self { rows, cols, data }
    }

    /// Overwrites the block at `(r0, c0)` with `src`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &RealMatrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols, "block out of range");
        for i in 0..src.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + src.cols].copy_from_slice(src.row(i));
        }
    }

    pub fn mul_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_inner("real mat_mul", self.shape(), rhs.shape())?;
        sink.op(OpKind::Mul, Field::Real, self.rows);
        let data = kernel::gemm(self.rows, self.cols, rhs.cols, &self.data, &rhs.data, sink);
        Ok(Self { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn add_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("real mat_add", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Real, self.rows);
        Ok(Self { rows: self.rows, cols: self.cols, data: kernel::add(&self.data, &rhs.data, sink) })
    }

    pub fn sub_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("real mat_sub", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Real, self.rows);
        Ok(Self { rows: self.rows, cols: self.cols, data: kernel::sub(&self.data, &rhs.data, sink) })
    }

    /// Sign flip; tallied as one addition per entry but not as a matrix
    /// operation.
    pub fn neg_counted<S: FlopSink>(&self, sink: &mut S) -> Self {
        Self { rows: self.rows, cols: self.cols, data: kernel::neg(&self.data, sink) }
    }

    pub fn scale_counted<S: FlopSink>(&self, s: f64, sink: &mut S) -> Self {
        Self { rows: self.rows, cols: self.cols, data: kernel::scale(&self.data, s, sink) }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_counted(rhs, &mut NoCount)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.add_counted(rhs, &mut NoCount)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.sub_counted(rhs, &mut NoCount)
    }

    pub fn neg(&self) -> Self {
        self.neg_counted(&mut NoCount)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_counted(s, &mut NoCount)
    }

    pub fn lu(&self) -> Result<LuFactors<f64>> {
        self.lu_counted(&mut NoCount)
    }

    pub fn lu_counted<S: FlopSink>(&self, sink: &mut S) -> Result<LuFactors<f64>> {
        if !self.is_square() {
            return Err(Error::NotSquare { op: "lu_factor", rows: self.rows, cols: self.cols });
        }
        LuFactors::factor(self.rows, self.data.clone(), sink)
    }

    /// Explicit inverse through LU with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_counted(&mut NoCount)
    }

    pub fn inverse_counted<S: FlopSink>(&self, sink: &mut S) -> Result<Self> {
        let lu = self.lu_counted(sink)?;
        Ok(lu.inverse_matrix(sink))
    }

    /// `self^-1 * rhs` through one LU factorization.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.solve_counted(rhs, &mut NoCount)
    }

    pub fn solve_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_inner("real solve", self.shape(), rhs.shape())?;
        let lu = self.lu_counted(sink)?;
        lu.solve_matrix(rhs, sink)
    }
}

/// Complex matrix as a pair of real planes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    re: RealMatrix,
    im: RealMatrix,
}

impl ComplexMatrix {
    pub fn new(re: RealMatrix, im: RealMatrix) -> Result<Self> {
        check_same("complex planes", re.shape(), im.shape())?;
        Ok(Self { re, im })
    }

    pub fn from_real(re: RealMatrix) -> Self {
        let im = RealMatrix::zeros(re.rows, re.cols);
        Self { re, im }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { re: RealMatrix::zeros(rows, cols), im: RealMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real(RealMatrix::identity(n))
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[Complex]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Format(format!(
                "{rows}x{cols} complex matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let re = entries.iter().map(|z| z.re).collect();
        let im = entries.iter().map(|z| z.im).collect();
        Ok(Self { re: RealMatrix { rows, cols, data: re }, im: RealMatrix { rows, cols, data: im } })
    }

    pub fn entries(&self) -> Vec<Complex> {
        self.re.data.iter().zip(&self.im.data).map(|(&r, &i)| Complex::new(r, i)).collect()
    }

    pub fn re(&self) -> &RealMatrix {
        &self.re
    }

    pub fn im(&self) -> &RealMatrix {
        &self.im
    }

    pub fn into_planes(self) -> (RealMatrix, RealMatrix) {
        (self.re, self.im)
    }

    pub fn rows(&self) -> usize {
        self.re.rows
    }

    pub fn cols(&self) -> usize {
        self.re.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        self.re.shape()
    }

    pub fn is_square(&self) -> bool {
        self.re.is_square()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        Complex::new(self.re.get(i, j), self.im.get(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex) {
        self.re.set(i, j, z.re);
        self.im.set(i, j, z.im);
    }

    /// Entrywise complex conjugate. Structural, not tallied.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg_counted(&mut NoCount) }
    }

    pub fn norm_sq(&self) -> f64 {
        self.re.norm_sq() + self.im.norm_sq()
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self { re: self.re.block(r0, c0, rows, cols), im: self.im.block(r0, c0, rows, cols) }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &ComplexMatrix) {
        self.re.set_block(r0, c0, &src.re);
        self.im.set_block(r0, c0, &src.im);
    }

    /// `(re1 re2 - im1 im2) + i (re1 im2 + im1 re2)`: four real products
    /// and two plane additions.
    pub fn mul_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_inner("complex mat_mul", self.shape(), rhs.shape())?;
        sink.op(OpKind::Mul, Field::Complex, self.rows());
        let (m, k, n) = (self.rows(), self.cols(), rhs.cols());
        let rr = kernel::gemm(m, k, n, &self.re.data, &rhs.re.data, sink);
        let ii = kernel::gemm(m, k, n, &self.im.data, &rhs.im.data, sink);
        let ri = kernel::gemm(m, k, n, &self.re.data, &rhs.im.data, sink);
        let ir = kernel::gemm(m, k, n, &self.im.data, &rhs.re.data, sink);
        let re = kernel::sub(&rr, &ii, sink);
        let im = kernel::add(&ri, &ir, sink);
        Ok(Self { re: RealMatrix { rows: m, cols: n, data: re }, im: RealMatrix { rows: m, cols: n, data: im } })
    }

    pub fn add_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("complex mat_add", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Complex, self.rows());
        Ok(Self {
            re: RealMatrix { data: kernel::add(&self.re.data, &rhs.re.data, sink), ..self.re.clone_shape() },
            im: RealMatrix { data: kernel::add(&self.im.data, &rhs.im.data, sink), ..self.im.clone_shape() },
        })
    }

    pub fn sub_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("complex mat_sub", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Complex, self.rows());
        Ok(Self {
            re: RealMatrix { data: kernel::sub(&self.re.data, &rhs.re.data, sink), ..self.re.clone_shape() },
            im: RealMatrix { data: kernel::sub(&self.im.data, &rhs.im.data, sink), ..self.im.clone_shape() },
        })
    }

    pub fn neg_counted<S: FlopSink>(&self, sink: &mut S) -> Self {
        Self { re: self.re.neg_counted(sink), im: self.im.neg_counted(sink) }
    }

    /// Multiplication by a real scalar.
    pub fn scale_counted<S: FlopSink>(&self, s: f64, sink: &mut S) -> Self {
        Self { re: self.re.scale_counted(s, sink), im: self.im.scale_counted(s, sink) }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_counted(rhs, &mut NoCount)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.add_counted(rhs, &mut NoCount)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.sub_counted(rhs, &mut NoCount)
    }

    pub fn neg(&self) -> Self {
        self.neg_counted(&mut NoCount)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_counted(s, &mut NoCount)
    }

    pub fn lu(&self) -> Result<LuFactors<Complex>> {
        self.lu_counted(&mut NoCount)
    }

    pub fn lu_counted<S: FlopSink>(&self, sink: &mut S) -> Result<LuFactors<Complex>> {
        if !self.is_square() {
            return Err(Error::NotSquare { op: "lu_factor", rows: self.rows(), cols: self.cols() });
        }
        LuFactors::factor(self.rows(), self.entries(), sink)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_counted(&mut NoCount)
    }

    pub fn inverse_counted<S: FlopSink>(&self, sink: &mut S) -> Result<Self> {
        let lu = self.lu_counted(sink)?;
        Ok(lu.inverse_matrix(sink))
    }

    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.solve_counted(rhs, &mut NoCount)
    }

    pub fn solve_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_inner("complex solve", self.shape(), rhs.shape())?;
        let lu = self.lu_counted(sink)?;
        lu.solve_matrix(rhs, sink)
    }
}

impl RealMatrix {
    fn clone_shape(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: Vec::new() }
    }
}

/// `a + i b + j c + k d` with real planes `a, b, c, d`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatMatrix {
    a: RealMatrix,
    b: RealMatrix,
    c: RealMatrix,
    d: RealMatrix,
}

impl QuatMatrix {
    pub fn new(a: RealMatrix, b: RealMatrix, c: RealMatrix, d: RealMatrix) -> Result<Self> {
        check_same("quaternion planes", a.shape(), b.shape())?;
        check_same("quaternion planes", a.shape(), c.shape())?;
        check_same("quaternion planes", a.shape(), d.shape())?;
        Ok(Self { a, b, c, d })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let z = RealMatrix::zeros(rows, cols);
        Self { a: z.clone(), b: z.clone(), c: z.clone(), d: z }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_identity(n, Quaternion::ONE)
    }

    /// `q * I_n`.
    pub fn scalar_identity(n: usize, q: Quaternion) -> Self {
        let diag = |v: f64| RealMatrix::from_diag(&vec![v; n]);
        Self { a: diag(q.w), b: diag(q.x), c: diag(q.y), d: diag(q.z) }
    }

    /// Real matrix embedded with zero imaginary planes.
    pub fn from_real(a: RealMatrix) -> Self {
        let z = RealMatrix::zeros(a.rows, a.cols);
        Self { a, b: z.clone(), c: z.clone(), d: z }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn planes(&self) -> [&RealMatrix; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn into_planes(self) -> [RealMatrix; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> &RealMatrix {
        &self.a
    }

    pub fn b(&self) -> &RealMatrix {
        &self.b
    }

    pub fn c(&self) -> &RealMatrix {
        &self.c
    }

    pub fn d(&self) -> &RealMatrix {
        &self.d
    }

    pub fn rows(&self) -> usize {
        self.a.rows
    }

    pub fn cols(&self) -> usize {
        self.a.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    pub fn is_square(&self) -> bool {
        self.a.is_square()
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        Quaternion::new(self.a.get(i, j), self.b.get(i, j), self.c.get(i, j), self.d.get(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.a.set(i, j, q.w);
        self.b.set(i, j, q.x);
        self.c.set(i, j, q.y);
        self.d.set(i, j, q.z);
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self {
            a: self.a.block(r0, c0, rows, cols),
            b: self.b.block(r0, c0, rows, cols),
            c: self.c.block(r0, c0, rows, cols),
            d: self.d.block(r0, c0, rows, cols),
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &QuatMatrix) {
        self.a.set_block(r0, c0, &src.a);
        self.b.set_block(r0, c0, &src.b);
        self.c.set_block(r0, c0, &src.c);
        self.d.set_block(r0, c0, &src.d);
    }

    /// Assembles `[[z11, z12], [z21, z22]]`.
    pub fn from_blocks(z11: &Self, z12: &Self, z21: &Self, z22: &Self) -> Result<Self> {
        check_same("block rows", (z11.rows(), 0), (z12.rows(), 0))?;
        check_same("block rows", (z21.rows(), 0), (z22.rows(), 0))?;
        check_same("block cols", (0, z11.cols()), (0, z21.cols()))?;
        check_same("block cols", (0, z12.cols()), (0, z22.cols()))?;
        let (r1, c1) = z11.shape();
        let mut out = Self::zeros(r1 + z21.rows(), c1 + z12.cols());
        out.set_block(0, 0, z11);
        out.set_block(0, c1, z12);
        out.set_block(r1, 0, z21);
        out.set_block(r1, c1, z22);
        Ok(out)
    }

    /// Hamilton product of matrices: sixteen real products accumulated into
    /// the four result planes.
    pub fn mul_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_inner("quaternion mat_mul", self.shape(), rhs.shape())?;
        sink.op(OpKind::Mul, Field::Quaternion, self.rows());
        let (m, k, n) = (self.rows(), self.cols(), rhs.cols());
        let l = [&self.a.data, &self.b.data, &self.c.data, &self.d.data];
        let r = [&rhs.a.data, &rhs.b.data, &rhs.c.data, &rhs.d.data];
        // (left plane, right plane, negate) per result plane, from the unit
        // products i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
        const TERMS: [[(usize, usize, bool); 4]; 4] = [
            [(0, 0, false), (1, 1, true), (2, 2, true), (3, 3, true)],
            [(0, 1, false), (1, 0, false), (2, 3, false), (3, 2, true)],
            [(0, 2, false), (1, 3, true), (2, 0, false), (3, 1, false)],
            [(0, 3, false), (1, 2, false), (2, 1, true), (3, 0, false)],
        ];
        let mut planes: [Vec<f64>; 4] = Default::default();
        for (plane, terms) in planes.iter_mut().zip(TERMS.iter()) {
            let mut acc = vec![0.0; m * n];
            for &(li, ri, negate) in terms {
                kernel::gemm_acc(m, k, n, l[li], r[ri], &mut acc, negate, sink);
            }
            *plane = acc;
        }
        let [a, b, c, d] = planes;
        let mk = |data| RealMatrix { rows: m, cols: n, data };
        Ok(Self { a: mk(a), b: mk(b), c: mk(c), d: mk(d) })
    }

    fn zip_planes<S: FlopSink>(
        &self,
        rhs: &Self,
        sink: &mut S,
        f: fn(&[f64], &[f64], &mut S) -> Vec<f64>,
    ) -> Self {
        let mk = |data| RealMatrix { rows: self.rows(), cols: self.cols(), data };
        let a = mk(f(&self.a.data, &rhs.a.data, sink));
        let b = mk(f(&self.b.data, &rhs.b.data, sink));
        let c = mk(f(&self.c.data, &rhs.c.data, sink));
        let d = mk(f(&self.d.data, &rhs.d.data, sink));
        Self { a, b, c, d }
    }

    pub fn add_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("quaternion mat_add", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Quaternion, self.rows());
        Ok(self.zip_planes(rhs, sink, kernel::add))
    }

    pub fn sub_counted<S: FlopSink>(&self, rhs: &Self, sink: &mut S) -> Result<Self> {
        check_same("quaternion mat_sub", self.shape(), rhs.shape())?;
        sink.op(OpKind::Add, Field::Quaternion, self.rows());
        Ok(self.zip_planes(rhs, sink, kernel::sub))
    }

    pub fn neg_counted<S: FlopSink>(&self, sink: &mut S) -> Self {
        Self {
            a: self.a.neg_counted(sink),
            b: self.b.neg_counted(sink),
            c: self.c.neg_counted(sink),
            d: self.d.neg_counted(sink),
        }
    }

    /// Multiplication by a real scalar.
    pub fn scale_counted<S: FlopSink>(&self, s: f64, sink: &mut S) -> Self {
        Self {
            a: self.a.scale_counted(s, sink),
            b: self.b.scale_counted(s, sink),
            c: self.c.scale_counted(s, sink),
            d: self.d.scale_counted(s, sink),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_counted(rhs, &mut NoCount)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.add_counted(rhs, &mut NoCount)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.sub_counted(rhs, &mut NoCount)
    }

    pub fn neg(&self) -> Self {
        self.neg_counted(&mut NoCount)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_counted(s, &mut NoCount)
    }

    /// `sqrt(sum |z_ij|^2) = sqrt(|A|^2 + |B|^2 + |C|^2 + |D|^2)`.
    pub fn frobenius_norm(&self) -> f64 {
        (self.a.norm_sq() + self.b.norm_sq() + self.c.norm_sq() + self.d.norm_sq()).sqrt()
    }

    /// Largest absolute entrywise difference over the four planes.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.planes()
            .iter()
            .zip(other.planes())
            .flat_map(|(p, q)| p.data.iter().zip(&q.data).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.planes().iter().map(|p| p.max_abs()).fold(0.0, f64::max)
    }

    /// Bit-level equality, distinguishing `0.0` from `-0.0` and comparing
    /// NaN payloads.
    pub fn bit_eq(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self
                .planes()
                .iter()
                .zip(other.planes())
                .all(|(p, q)| p.data.iter().zip(&q.data).all(|(x, y)| x.to_bits() == y.to_bits()))
    }
}

#[cfg(test)]
mod tests;
