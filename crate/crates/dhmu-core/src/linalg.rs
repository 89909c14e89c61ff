//! Dense symmetric eigenvalues by cyclic Jacobi rotations.
//!
//! Small-matrix duty only: the positive-semidefiniteness check on moment
//! Hankel blocks and brute-force cross-checks of the power-iteration
//! spectral norms. O(n^3) per sweep is fine at the n ≤ 128 sizes used.

use crate::scalar::Real;

/// Eigenvalues of a symmetric matrix (row-major, `n x n`), sorted ascending.
pub fn symmetric_eigenvalues<F: Real>(mat: &[F], n: usize) -> Vec<F> {
    assert_eq!(mat.len(), n * n, "matrix buffer must be n*n");
    let mut a = mat.to_vec();
    let idx = |i: usize, j: usize| i * n + j;

    let fro: F = a.iter().map(|&v| v * v).sum::<F>().sqrt();
    let stop = F::epsilon() * (fro + F::one());

    for _sweep in 0..60 {
        let mut off = F::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq.abs() <= F::epsilon() * fro {
                    continue;
                }
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (F::of(2.0) * apq);
                let t = {
                    let sign = if theta >= F::zero() {
                        F::one()
                    } else {
                        -F::one()
                    };
                    sign / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = (t * t + F::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<F> = (0..n).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
