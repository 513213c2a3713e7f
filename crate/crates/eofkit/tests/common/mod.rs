//! Shared test oracles, independent of the library's decomposition path.
//!
//! Each integration-test binary pulls in only what it needs.
#![allow(dead_code)]

use eofkit::matrix::{ComplexMatrix, C64};
use rand::Rng;

/// Eigenvalues of a Hermitian matrix by cyclic two-sided Jacobi rotations,
/// sorted nonincreasing. Iterative and self-contained: this is the oracle
/// the SVD is checked against (on M·M†), so it must not share code with
/// the implementation path.
#[allow(clippy::needless_range_loop)]
pub fn hermitian_eigenvalues_jacobi(h: &ComplexMatrix) -> Vec<f64> {
    assert_eq!(h.rows(), h.cols(), "oracle needs a square matrix");
    let p = h.rows();
    let mut a: Vec<Vec<C64>> = (0..p)
        .map(|i| (0..p).map(|j| h.get(i, j)).collect())
        .collect();
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1.0);

    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for r in 0..p {
            for c in (r + 1)..p {
                off = off.max(a[r][c].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for r in 0..p {
            for c in (r + 1)..p {
                let b = a[r][c];
                if b.norm() <= 1e-18 * scale {
                    continue;
                }
                // Phase out the off-diagonal entry, then rotate the real
                // 2x2 block to zero it.
                let w = b / b.norm();
                let app = a[r][r].re;
                let aqq = a[c][c].re;
                let tau = (app - aqq) / (2.0 * b.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                // Column rotation: A ← A · J with J = [[w·cos, −w·sin], [sin, cos]]
                // on coordinates (r, c), then row rotation A ← J† · A.
                let (jrr, jrc, jcr, jcc) = (w * cos, -w * sin, C64::new(sin, 0.0), C64::new(cos, 0.0));
                for k in 0..p {
                    let (x, y) = (a[k][r], a[k][c]);
                    a[k][r] = x * jrr + y * jcr;
                    a[k][c] = x * jrc + y * jcc;
                }
                for k in 0..p {
                    let (x, y) = (a[r][k], a[c][k]);
                    a[r][k] = jrr.conj() * x + jcr.conj() * y;
                    a[c][k] = jrc.conj() * x + jcc.conj() * y;
                }
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..p).map(|i| a[i][i].re).collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    eigenvalues
}

/// Kronecker product, test-side only.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let (ai, bi) = (i / b.rows(), i % b.rows());
        let (aj, bj) = (j / b.cols(), j % b.cols());
        a.get(ai, aj) * b.get(bi, bj)
    })
}

/// Random dense complex matrix with entries in the unit square.
pub fn random_complex_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
    })
}

/// Random probability spectrum with strictly positive, pairwise distinct
/// entries (geometric decay keeps the gaps well above the zero cutoff).
pub fn random_distinct_spectrum(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..len)
            .map(|k| (0.4 + 0.6 * rng.random::<f64>()) * 0.55f64.powi(k as i32))
            .collect();
        let sum: f64 = v.iter().sum();
        for x in &mut v {
            *x /= sum;
        }
        let mut sorted = v.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let distinct = sorted.windows(2).all(|w| w[0] - w[1] > 1e-6) && sorted[len - 1] > 1e-6;
        if distinct {
            return v;
        }
    }
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} (tolerance {tol:e})"
    );
}
