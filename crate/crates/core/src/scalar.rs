//! Quaternion and complex scalars.
//!
//! Products use the schoolbook formulas: 16 real multiplications and 12
//! additions for a Hamilton product, 4 and 2 for a complex product. The
//! `*_counted` variants report exactly those counts to a [`FlopSink`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::flops::FlopSink;

/// `w + x i + y j + z k` with `i^2 = j^2 = k^2 = ijk = -1`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Hamilton product, reporting 16 multiplications and 12 additions.
    #[inline]
    pub fn mul_counted<S: FlopSink>(self, q: Self, sink: &mut S) -> Self {
        sink.flops(16, 12, 0);
        let p = self;
        Self {
            w: p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            x: p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            y: p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            z: p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        }
    }

    /// Componentwise sum, reporting 4 additions.
    #[inline]
    pub fn add_counted<S: FlopSink>(self, q: Self, sink: &mut S) -> Self {
        sink.flops(0, 4, 0);
        Self::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        self.inv_counted(&mut crate::flops::NoCount)
    }

    pub fn inv_counted<S: FlopSink>(self, sink: &mut S) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::SingularScalar);
        }
        // 4 squares + 3 adds for the norm, one reciprocal, 4 scalings.
        sink.flops(8, 3, 1);
        let r = 1.0 / n;
        Ok(Self::new(self.w * r, -self.x * r, -self.y * r, -self.z * r))
    }

    /// The 2x2 complex representation `[[a+ib, c+id], [-c+id, a-ib]]`.
    pub fn as_complex_2x2(self) -> [[Complex; 2]; 2] {
        [
            [Complex::new(self.w, self.x), Complex::new(self.y, self.z)],
            [Complex::new(-self.y, self.z), Complex::new(self.w, -self.x)],
        ]
    }
}

impl Mul for Quaternion {
    type Output = Self;

    #[inline]
    fn mul(self, q: Self) -> Self {
        self.mul_counted(q, &mut crate::flops::NoCount)
    }
}

impl Add for Quaternion {
    type Output = Self;

    #[inline]
    fn add(self, q: Self) -> Self {
        Self::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;

    #[inline]
    fn sub(self, q: Self) -> Self {
        Self::new(self.w - q.w, self.x - q.x, self.y - q.y, self.z - q.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

/// `re + im i`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Self = Self::new(0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0);

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// Schoolbook product, reporting 4 multiplications and 2 additions.
    #[inline]
    pub fn mul_counted<S: FlopSink>(self, q: Self, sink: &mut S) -> Self {
        sink.flops(4, 2, 0);
        Self::new(self.re * q.re - self.im * q.im, self.re * q.im + self.im * q.re)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `conj(z) / |z|^2`; caller guarantees `z != 0`.
    #[inline]
    pub fn recip(self) -> Self {
        let r = 1.0 / self.norm_sq();
        Self::new(self.re * r, -self.im * r)
    }
}

impl Mul for Complex {
    type Output = Self;

    #[inline]
    fn mul(self, q: Self) -> Self {
        Self::new(self.re * q.re - self.im * q.im, self.re * q.im + self.im * q.re)
    }
}

impl Add for Complex {
    type Output = Self;

    #[inline]
    fn add(self, q: Self) -> Self {
        Self::new(self.re + q.re, self.im + q.im)
    }
}

impl Sub for Complex {
    type Output = Self;

    #[inline]
    fn sub(self, q: Self) -> Self {
        Self::new(self.re - q.re, self.im - q.im)
    }
}

impl Neg for Complex {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// 2x2 complex matrix product, used to check the scalar representation.
pub fn complex_2x2_mul(p: &[[Complex; 2]; 2], q: &[[Complex; 2]; 2]) -> [[Complex; 2]; 2] {
    let mut out = [[Complex::ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = p[r][0] * q[0][c] + p[r][1] * q[1][c];
        }
    }
    out
}
