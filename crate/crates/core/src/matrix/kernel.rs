//! Row-major real kernels shared by every field. Each kernel reports the
//! flops it performs; none records a matrix-level operation.

use crate::flops::FlopSink;

/// `c (m x n) += a (m x k) * b (k x n)`, or `-=` when `negate` is set.
pub(crate) fn gemm_acc<S: FlopSink>(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    b: &[f64],
    c: &mut [f64],
    negate: bool,
    sink: &mut S,
) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(c.len(), m * n);
    let work = (m * k * n) as u64;
    sink.flops(work, work, 0);
    if n == 0 {
        return;
    }
    for (crow, arow) in c.chunks_exact_mut(n).zip(a.chunks_exact(k.max(1))) {
        for (p, &aip) in arow.iter().enumerate().take(k) {
            let brow = &b[p * n..(p + 1) * n];
            if negate {
                for (cij, &bpj) in crow.iter_mut().zip(brow) {
                    *cij -= aip * bpj;
                }
            } else {
                for (cij, &bpj) in crow.iter_mut().zip(brow) {
                    *cij += aip * bpj;
                }
            }
        }
    }
}

/// Fresh `a * b`.
pub(crate) fn gemm<S: FlopSink>(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    b: &[f64],
    sink: &mut S,
) -> Vec<f64> {
    let mut c = vec![0.0; m * n];
    gemm_acc(m, k, n, a, b, &mut c, false, sink);
    c
}

pub(crate) fn add<S: FlopSink>(a: &[f64], b: &[f64], sink: &mut S) -> Vec<f64> {
    sink.flops(0, a.len() as u64, 0);
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub<S: FlopSink>(a: &[f64], b: &[f64], sink: &mut S) -> Vec<f64> {
    sink.flops(0, a.len() as u64, 0);
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg<S: FlopSink>(a: &[f64], sink: &mut S) -> Vec<f64> {
    sink.flops(0, a.len() as u64, 0);
    a.iter().map(|x| -x).collect()
}

pub(crate) fn scale<S: FlopSink>(a: &[f64], s: f64, sink: &mut S) -> Vec<f64> {
    sink.flops(a.len() as u64, 0, 0);
    a.iter().map(|x| x * s).collect()
}
