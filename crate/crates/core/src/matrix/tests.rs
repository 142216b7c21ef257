use super::*;
use crate::flops::FlopCounter;
use proptest::prelude::*;

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }
}

fn random_real(rows: usize, cols: usize, seed: u64) -> RealMatrix {
    let mut r = lcg(seed);
    RealMatrix::from_fn(rows, cols, |_, _| r())
}

fn random_quat(n: usize, seed: u64) -> QuatMatrix {
    let mut r = lcg(seed);
    QuatMatrix::from_fn(n, n, |_, _| Quaternion::new(r(), r(), r(), r()))
}

/// Entrywise quaternion product through scalar Hamilton products.
fn quat_mul_oracle(x: &QuatMatrix, y: &QuatMatrix) -> QuatMatrix {
    QuatMatrix::from_fn(x.rows(), y.cols(), |i, j| {
        (0..x.cols()).fold(Quaternion::ZERO, |acc, k| acc + x.get(i, k) * y.get(k, j))
    })
}

#[test]
fn identity_is_neutral() {
    let x = random_real(4, 4, 1);
    assert_eq!(RealMatrix::identity(4).mul(&x).unwrap(), x);
    let q = random_quat(3, 2);
    assert_eq!(QuatMatrix::identity(3).mul(&q).unwrap(), q);
}

#[test]
fn one_by_one_quaternion_units() {
    let i = QuatMatrix::scalar_identity(1, Quaternion::I);
    let j = QuatMatrix::scalar_identity(1, Quaternion::J);
    let k = QuatMatrix::scalar_identity(1, Quaternion::K);
    assert_eq!(i.mul(&j).unwrap(), k);
    assert_eq!(j.mul(&i).unwrap(), k.neg());
}

#[test]
fn real_product_matches_extended_precision_dot_products() {
    let x = random_real(3, 3, 5);
    let y = random_real(3, 3, 6);
    let p = x.mul(&y).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            // Two-product / two-sum compensated dot product.
            let (mut s, mut c) = (0.0f64, 0.0f64);
            for k in 0..3 {
                let prod = x.get(i, k) * y.get(k, j);
                let perr = x.get(i, k).mul_add(y.get(k, j), -prod);
                let t = s + prod;
                let serr = if s.abs() >= prod.abs() { (s - t) + prod } else { (prod - t) + s };
                s = t;
                c += perr + serr;
            }
            let exact = s + c;
            assert!((p.get(i, j) - exact).abs() <= 4.0 * f64::EPSILON * exact.abs().max(1.0));
        }
    }
}

#[test]
fn shape_mismatch_is_an_error() {
    let x = RealMatrix::zeros(2, 3);
    assert!(matches!(x.mul(&x), Err(Error::Dimension { .. })));
    assert!(matches!(x.add(&RealMatrix::zeros(3, 2)), Err(Error::Dimension { .. })));
    let q = QuatMatrix::zeros(2, 2);
    assert!(matches!(q.mul(&QuatMatrix::zeros(3, 3)), Err(Error::Dimension { .. })));
    assert!(RealMatrix::new(2, 2, vec![0.0; 3]).is_err());
}

#[test]
fn elementwise_identities() {
    let x = random_real(4, 4, 7);
    let y = random_real(4, 4, 8);
    assert_eq!(x.add(&RealMatrix::zeros(4, 4)).unwrap(), x);
    assert_eq!(x.sub(&x).unwrap(), RealMatrix::zeros(4, 4));
    let back = x.add(&y).unwrap().sub(&y).unwrap();
    for (p, q) in back.data().iter().zip(x.data()) {
        assert!((p - q).abs() <= 1e-15);
    }
}

#[test]
fn complex_product_is_the_real_plane_expansion() {
    let z = ComplexMatrix::new(random_real(5, 4, 10), random_real(5, 4, 11)).unwrap();
    let w = ComplexMatrix::new(random_real(4, 3, 12), random_real(4, 3, 13)).unwrap();
    let p = z.mul(&w).unwrap();
    let re = z.re().mul(w.re()).unwrap().sub(&z.im().mul(w.im()).unwrap()).unwrap();
    let im = z.re().mul(w.im()).unwrap().add(&z.im().mul(w.re()).unwrap()).unwrap();
    assert_eq!(p.re(), &re);
    assert_eq!(p.im(), &im);
}

#[test]
fn quaternion_product_matches_entrywise_hamilton_products() {
    let x = random_quat(4, 20);
    let y = random_quat(4, 21);
    let p = x.mul(&y).unwrap();
    assert!(p.max_abs_diff(&quat_mul_oracle(&x, &y)) <= 1e-12);
}

#[test]
fn frobenius_norms() {
    assert_eq!(QuatMatrix::zeros(3, 3).frobenius_norm(), 0.0);
    assert_eq!(QuatMatrix::identity(4).frobenius_norm(), 2.0);
    assert!((QuatMatrix::identity(7).frobenius_norm() - 7f64.sqrt()).abs() < 1e-15);
    let q = QuatMatrix::scalar_identity(1, Quaternion::I + Quaternion::J);
    assert!((q.frobenius_norm() - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn multiplication_counts() {
    let (m, k, n) = (3usize, 5usize, 4usize);
    let mut c = FlopCounter::new();
    random_real(m, k, 1).mul_counted(&random_real(k, n, 2), &mut c).unwrap();
    assert_eq!((c.real_mults, c.real_adds), ((m * k * n) as u64, (m * k * n) as u64));
    assert_eq!(c.multiplications(Field::Real, m), 1);

    let nn = 6usize;
    let n3 = (nn * nn * nn) as u64;
    let z = ComplexMatrix::new(random_real(nn, nn, 3), random_real(nn, nn, 4)).unwrap();
    let mut c = FlopCounter::new();
    z.mul_counted(&z, &mut c).unwrap();
    assert_eq!((c.real_mults, c.real_adds), (4 * n3, 4 * n3 + 2 * (nn * nn) as u64));
    assert_eq!(c.multiplications(Field::Complex, nn), 1);
    assert_eq!(c.multiplications(Field::Real, nn), 0);

    let q = random_quat(nn, 5);
    let mut c = FlopCounter::new();
    q.mul_counted(&q, &mut c).unwrap();
    assert_eq!((c.real_mults, c.real_adds), (16 * n3, 16 * n3));
    assert_eq!(c.multiplications(Field::Quaternion, nn), 1);

    let mut c = FlopCounter::new();
    q.add_counted(&q, &mut c).unwrap();
    assert_eq!(c.real_adds, 4 * (nn * nn) as u64);
}

#[test]
fn blocks_round_trip() {
    let q = random_quat(5, 40);
    let z11 = q.block(0, 0, 2, 2);
    let z12 = q.block(0, 2, 2, 3);
    let z21 = q.block(2, 0, 3, 2);
    let z22 = q.block(2, 2, 3, 3);
    assert!(QuatMatrix::from_blocks(&z11, &z12, &z21, &z22).unwrap().bit_eq(&q));
}

proptest! {
    #[test]
    fn add_then_sub_round_trips(seed in any::<u64>(), n in 1usize..6) {
        let x = random_quat(n, seed);
        let y = random_quat(n, seed ^ 0x9e37);
        let back = x.add(&y).unwrap().sub(&y).unwrap();
        prop_assert!(back.max_abs_diff(&x) <= 1e-15);
    }
}
