//! Dense complex-matrix substrate: SVD, adjoint/product/trace arithmetic
//! and the Hilbert–Schmidt norm.
//!
//! Matrices are small (per-side dimensions capped at a few dozen) and
//! stored dense row-major. The SVD is delegated to a vetted routine; only
//! the post-conditions here are contractual: `M = U·diag(s)·V†` within
//! 1e-12, orthonormal `U`/`V` columns, singular values sorted
//! nonincreasing.

use nalgebra::DMatrix;

use crate::error::{EofError, Result};

/// Double-precision complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Dense row-major complex matrix.
///
/// Invariants: `entries.len() == rows * cols`, every entry finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and
    /// finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(EofError::Dimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(EofError::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EofError::NonFinite(format!(
                "matrix entry at flat index {pos} is not finite"
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry. Panics on a non-finite generator
    /// value; callers supply closed-form entries only.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let z = f(i, j);
                assert!(
                    z.re.is_finite() && z.im.is_finite(),
                    "non-finite entry at ({i}, {j})"
                );
                m.entries[i * cols + j] = z;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    /// Sets the 0-based `(row, col)` entry; the value must be finite.
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        assert!(
            value.re.is_finite() && value.im.is_finite(),
            "non-finite entry at ({row}, {col})"
        );
        self.entries[row * self.cols + col] = value;
    }

    /// Conjugate transpose. `adjoint(adjoint(M)) == M` exactly.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(EofError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Sum of diagonal entries; requires a square matrix.
    pub fn trace(&self) -> Result<C64> {
        if self.rows != self.cols {
            return Err(EofError::Dimension(format!(
                "trace requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.entries[i * self.cols + i]).sum())
    }

    /// Hilbert–Schmidt (Frobenius) norm √Tr(MM†) = √Σ|entries|².
    pub fn hs_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise magnitude of `self† · self − I`; zero for a
    /// unitary matrix.
    pub fn max_deviation_from_unitary(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let gram = self.adjoint().matmul(self).expect("square product");
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((gram.get(i, j) - expected).norm());
            }
        }
        worst
    }

    /// Singular value decomposition `M = U · diag(s) · V†` with square
    /// unitary `U` (rows×rows) and `V` (cols×cols) and `s` sorted
    /// nonincreasing.
    pub fn svd(&self) -> Result<SvdDecomposition> {
        if let Some(pos) = self
            .entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(EofError::NonFinite(format!(
                "cannot decompose: entry at flat index {pos} is not finite"
            )));
        }
        let a = DMatrix::<C64>::from_fn(self.rows, self.cols, |i, j| self.get(i, j));
        let svd = a.svd(true, true);
        let u_thin = svd.u.expect("u was requested");
        let v_t_thin = svd.v_t.expect("v_t was requested");
        let singular_values: Vec<f64> = svd.singular_values.iter().map(|s| s.max(0.0)).collect();

        let left = complete_to_unitary(&u_thin);
        let right = complete_to_unitary(&v_t_thin.adjoint());
        Ok(SvdDecomposition {
            left,
            singular_values,
            right,
        })
    }
}

/// Result of [`ComplexMatrix::svd`].
#[derive(Debug, Clone)]
pub struct SvdDecomposition {
    /// Square unitary whose leading columns are the left singular vectors.
    pub left: ComplexMatrix,
    /// Nonnegative, sorted nonincreasing, `min(rows, cols)` of them.
    pub singular_values: Vec<f64>,
    /// Square unitary whose leading columns are the right singular
    /// vectors; the decomposition reads `M = left · diag(s) · right†`.
    pub right: ComplexMatrix,
}

impl SvdDecomposition {
    /// Rebuilds `U · diag(s) · V†`; used by round-trip checks.
    pub fn reconstruct(&self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |i, j| {
            self.singular_values
                .iter()
                .enumerate()
                .map(|(k, s)| self.left.get(i, k) * s * self.right.get(j, k).conj())
                .sum()
        })
    }
}

/// Extends a p×q matrix with orthonormal columns (q ≤ p) to a p×p unitary
/// by Gram–Schmidt against the canonical basis, with reorthogonalization.
fn complete_to_unitary(thin: &DMatrix<C64>) -> ComplexMatrix {
    let p = thin.nrows();
    let q = thin.ncols();
    assert!(q <= p, "thin factor cannot have more columns than rows");
    let mut columns: Vec<Vec<C64>> = (0..q)
        .map(|c| (0..p).map(|r| thin[(r, c)]).collect())
        .collect();

    let mut threshold = 0.5;
    while columns.len() < p {
        let before = columns.len();
        for k in 0..p {
            if columns.len() == p {
                break;
            }
            let mut v: Vec<C64> = (0..p)
                .map(|r| if r == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
                .collect();
            for _ in 0..2 {
                for col in &columns {
                    let overlap: C64 = col.iter().zip(&v).map(|(c, x)| c.conj() * x).sum();
                    for (x, c) in v.iter_mut().zip(col) {
                        *x -= overlap * c;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > threshold {
                for x in &mut v {
                    *x /= norm;
                }
                columns.push(v);
            }
        }
        if columns.len() == before {
            threshold *= 1e-3;
            assert!(threshold > 1e-12, "failed to complete orthonormal basis");
        }
    }

    ComplexMatrix::from_fn(p, p, |i, j| columns[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn svd_of_diagonal_matrix() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.8, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)])
            .unwrap();
        let svd = m.svd().unwrap();
        assert!((svd.singular_values[0] - 0.8).abs() < 1e-14);
        assert!((svd.singular_values[1] - 0.6).abs() < 1e-14);
    }

    #[test]
    fn svd_of_scaled_identity() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::new(2, 2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
            .unwrap();
        let svd = m.svd().unwrap();
        for v in &svd.singular_values {
            assert!((v - s).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_full_factors_are_unitary_and_reconstruct() {
        // 2x5 forces completion of the right factor.
        let m = ComplexMatrix::from_fn(2, 5, |i, j| c((i + j) as f64 * 0.17 - 0.4, (i as f64) - 0.3 * j as f64));
        let svd = m.svd().unwrap();
        assert!(svd.left.max_deviation_from_unitary() < 1e-12);
        assert!(svd.right.max_deviation_from_unitary() < 1e-12);
        let rebuilt = svd.reconstruct(2, 5);
        let mut err = 0.0f64;
        for i in 0..2 {
            for j in 0..5 {
                err += (rebuilt.get(i, j) - m.get(i, j)).norm_sqr();
            }
        }
        assert!(err.sqrt() <= 1e-12 * m.hs_norm().max(1.0));
    }

    #[test]
    fn svd_rejects_non_finite() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.entries[3] = c(f64::NAN, 0.0); // bypass set() to hit the svd guard
        assert!(matches!(m.svd(), Err(EofError::NonFinite(_))));
    }

    #[test]
    fn hs_norm_examples() {
        assert!((ComplexMatrix::identity(2).hs_norm() - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(ComplexMatrix::zeros(3, 4).hs_norm(), 0.0);
        let m = ComplexMatrix::new(2, 2, vec![c(3.0, 0.0), c(0.0, 4.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!((m.hs_norm() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn adjoint_example() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let a = m.adjoint();
        assert_eq!(a.get(0, 0), c(0.0, 0.0));
        assert_eq!(a.get(0, 1), c(0.0, 0.0));
        assert_eq!(a.get(1, 0), c(0.0, -1.0));
        assert_eq!(a.get(1, 1), c(0.0, 0.0));
        // involution is exact
        let back = a.adjoint();
        assert_eq!(back, m);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(3).trace().unwrap(), c(3.0, 0.0));
        assert!(ComplexMatrix::zeros(2, 3).trace().is_err());
    }

    #[test]
    fn matmul_shape_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(EofError::Dimension(_))));
    }

    #[test]
    fn product_with_own_adjoint_is_hermitian() {
        let a = ComplexMatrix::from_fn(3, 4, |i, j| {
            c(0.3 * i as f64 - 0.2 * j as f64, 0.1 + 0.05 * (i * j) as f64)
        });
        let h = a.matmul(&a.adjoint()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((h.get(i, j) - h.get(j, i).conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(EofError::Dimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(f64::INFINITY, 0.0); 4]),
            Err(EofError::NonFinite(_))
        ));
    }
}
