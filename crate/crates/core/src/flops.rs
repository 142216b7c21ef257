//! Operation accounting.
//!
//! Every kernel in the crate reports its real arithmetic to a [`FlopSink`].
//! Kernels report in bulk (one call per matrix operation, never per scalar),
//! and the no-op sink [`NoCount`] compiles away entirely, so timing runs
//! use the same code path as counting runs.

use std::collections::BTreeMap;
use std::fmt;

/// Scalar field of a matrix operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        })
    }
}

/// Matrix-level operation kinds.
///
/// `Solve` is `X^-1 Y` through one LU factorization; it has the same
/// leading-order cost as an explicit inverse and counts as an inversion in
/// operation certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Inverse,
    Solve,
    Mul,
    Add,
}

pub trait FlopSink {
    /// Real scalar operations performed by a kernel.
    fn flops(&mut self, mults: u64, adds: u64, divs: u64);

    /// One matrix-level operation; `size` is the row count of its result.
    fn op(&mut self, kind: OpKind, field: Field, size: usize);
}

/// Sink that discards everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoCount;

impl FlopSink for NoCount {
    #[inline(always)]
    fn flops(&mut self, _: u64, _: u64, _: u64) {}

    #[inline(always)]
    fn op(&mut self, _: OpKind, _: Field, _: usize) {}
}

/// Tally of real multiplications, additions, divisions and matrix-level
/// operations.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FlopCounter {
    pub real_mults: u64,
    pub real_adds: u64,
    pub real_divs: u64,
    ops: BTreeMap<(OpKind, Field, usize), u64>,
}

impl FlopCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplications + additions + divisions, each with unit weight.
    pub fn total(&self) -> u64 {
        self.real_mults + self.real_adds + self.real_divs
    }

    /// Number of recorded operations of `kind` over `field` with result size
    /// `size`.
    pub fn count(&self, kind: OpKind, field: Field, size: usize) -> u64 {
        self.ops.get(&(kind, field, size)).copied().unwrap_or(0)
    }

    /// Inversions of `size x size` matrices over `field`, explicit inverses
    /// and solves together.
    pub fn inversions(&self, field: Field, size: usize) -> u64 {
        self.count(OpKind::Inverse, field, size) + self.count(OpKind::Solve, field, size)
    }

    pub fn multiplications(&self, field: Field, size: usize) -> u64 {
        self.count(OpKind::Mul, field, size)
    }

    pub fn additions(&self, field: Field, size: usize) -> u64 {
        self.count(OpKind::Add, field, size)
    }

    /// All inversion tallies as `(field, size, count)`, sorted.
    pub fn inversions_by_field_and_size(&self) -> Vec<(Field, usize, u64)> {
        let mut out: BTreeMap<(Field, usize), u64> = BTreeMap::new();
        for (&(kind, field, size), &n) in &self.ops {
            if matches!(kind, OpKind::Inverse | OpKind::Solve) {
                *out.entry((field, size)).or_default() += n;
            }
        }
        out.into_iter().map(|((f, s), n)| (f, s, n)).collect()
    }

    /// Every recorded `(kind, field, size) -> count` entry.
    pub fn ops(&self) -> impl Iterator<Item = (OpKind, Field, usize, u64)> + '_ {
        self.ops.iter().map(|(&(k, f, s), &n)| (k, f, s, n))
    }

    /// Componentwise sum.
    pub fn merge(&mut self, other: &FlopCounter) {
        self.real_mults += other.real_mults;
        self.real_adds += other.real_adds;
        self.real_divs += other.real_divs;
        for (key, n) in &other.ops {
            *self.ops.entry(*key).or_default() += n;
        }
    }
}

impl FlopSink for FlopCounter {
    #[inline]
    fn flops(&mut self, mults: u64, adds: u64, divs: u64) {
        self.real_mults += mults;
        self.real_adds += adds;
        self.real_divs += divs;
    }

    fn op(&mut self, kind: OpKind, field: Field, size: usize) {
        *self.ops.entry((kind, field, size)).or_default() += 1;
    }
}

impl<S: FlopSink + ?Sized> FlopSink for &mut S {
    #[inline(always)]
    fn flops(&mut self, mults: u64, adds: u64, divs: u64) {
        (**self).flops(mults, adds, divs)
    }

    #[inline(always)]
    fn op(&mut self, kind: OpKind, field: Field, size: usize) {
        (**self).op(kind, field, size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_is_componentwise_sum() {
        let mut a = FlopCounter::new();
        a.flops(1, 2, 3);
        a.op(OpKind::Inverse, Field::Real, 4);
        let mut b = FlopCounter::new();
        b.flops(10, 20, 30);
        b.op(OpKind::Inverse, Field::Real, 4);
        b.op(OpKind::Solve, Field::Real, 4);
        b.op(OpKind::Mul, Field::Complex, 2);
        a.merge(&b);
        assert_eq!((a.real_mults, a.real_adds, a.real_divs), (11, 22, 33));
        assert_eq!(a.total(), 66);
        assert_eq!(a.inversions(Field::Real, 4), 3);
        assert_eq!(a.multiplications(Field::Complex, 2), 1);
        assert_eq!(a.inversions_by_field_and_size(), vec![(Field::Real, 4, 3)]);
    }

    #[test]
    fn no_count_is_zero_sized() {
        assert_eq!(std::mem::size_of::<NoCount>(), 0);
    }
}
