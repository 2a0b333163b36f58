#![allow(dead_code)]

use morse_vqe::matrix::{ComplexMatrix, HermitianMatrix, C64};
use proptest::prelude::*;

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi on its real embedding
/// `[[Re, −Im], [Im, Re]]`. Every eigenvalue appears twice there; one copy is kept.
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let d = 2 * n;
    let mut a = vec![0.0; d * d];
    for r in 0..n {
        for c in 0..n {
            let z = m[(r, c)];
            a[r * d + c] = z.re;
            a[(r + n) * d + c + n] = z.re;
            a[r * d + c + n] = -z.im;
            a[(r + n) * d + c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|p| (0..d).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p * d + q] * a[p * d + q])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..d).map(|k| a[k * d + k]).collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

pub fn hermitian_from_parts(n: usize, re: &[f64], im: &[f64]) -> HermitianMatrix {
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r.min(c), r.max(c));
        let k = i * n + j;
        match r.cmp(&c) {
            std::cmp::Ordering::Equal => C64::new(re[k], 0.0),
            std::cmp::Ordering::Less => C64::new(re[k], im[k]),
            std::cmp::Ordering::Greater => C64::new(re[k], -im[k]),
        }
    });
    HermitianMatrix::new(m).unwrap()
}

/// Random Hermitian matrices of dimension `n` with entries in `[−1, 1]`.
pub fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (
        prop::collection::vec(-1.0f64..1.0, n * n),
        prop::collection::vec(-1.0f64..1.0, n * n),
    )
        .prop_map(move |(re, im)| hermitian_from_parts(n, &re, &im))
}

/// Random real symmetric matrices of dimension `n`.
pub fn real_symmetric(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    prop::collection::vec(-1.0f64..1.0, n * n)
        .prop_map(move |re| hermitian_from_parts(n, &re, &vec![0.0; n * n]))
}

/// Random Hermitian of a random dimension in `dims`.
pub fn hermitian_any(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = HermitianMatrix> {
    dims.prop_flat_map(hermitian)
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.try_sub(b).unwrap().frobenius_norm()
}
