//! Bipartite pure states: construction, Schmidt decomposition, reduced
//! densities, direct EoF, and test-state generation.
//!
//! A state on an m⊗n system (2 ≤ m ≤ n) is stored as its complex
//! coefficient matrix `a_ij` (m rows over side A, n columns over side B,
//! row-major) with Σ|a_ij|² = 1. The Schmidt values are the squared
//! singular values of that matrix and double as the eigenvalues of the
//! reduced density on side A; the direct EoF is their base-2 entropy.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{EofError, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::tolerances::{
    DEFAULT_DIM_CAP, DEGENERATE_NORM, EPS_ZERO, SPECTRUM_NEG_TOL, SPECTRUM_SUM_TOL,
    STATE_NORM_TOL, UNITARY_TOL,
};

/// A normalized bipartite pure state.
///
/// Immutable after construction; all operations on it are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    m: usize,
    n: usize,
    amplitudes: ComplexMatrix,
}

/// Schmidt form of a [`PureState`]: values λ_i (nonincreasing, summing
/// to 1) plus the local rotations realizing it. The columns of `basis_a`
/// and `basis_b` are the Schmidt vectors on each side; rotating the
/// original coefficient matrix as `basis_a† · M · conj(basis_b)` yields
/// diag(√λ_1, ..., √λ_m).
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub values: Vec<f64>,
    pub basis_a: ComplexMatrix,
    pub basis_b: ComplexMatrix,
}

impl PureState {
    /// Builds a state from `m·n` row-major amplitudes.
    ///
    /// Without `renormalize` the squared norm must already be within
    /// 1e-8 of 1; with it, any vector of norm above the degeneracy cutoff
    /// is accepted and rescaled.
    pub fn new(m: usize, n: usize, amplitudes: Vec<C64>, renormalize: bool) -> Result<Self> {
        Self::new_with_cap(m, n, amplitudes, renormalize, DEFAULT_DIM_CAP)
    }

    /// [`PureState::new`] with an explicit per-side dimension cap.
    pub fn new_with_cap(
        m: usize,
        n: usize,
        amplitudes: Vec<C64>,
        renormalize: bool,
        cap: usize,
    ) -> Result<Self> {
        if m < 2 || m > n || n > cap {
            return Err(EofError::Dimension(format!(
                "dimensions must satisfy 2 <= m <= n <= {cap}, got m={m}, n={n}"
            )));
        }
        if amplitudes.len() != m * n {
            return Err(EofError::Dimension(format!(
                "expected {} amplitudes for a {m}x{n} state, got {}",
                m * n,
                amplitudes.len()
            )));
        }
        let matrix = ComplexMatrix::new(m, n, amplitudes)?;
        let norm = matrix.hs_norm();
        if norm <= DEGENERATE_NORM {
            return Err(EofError::DegenerateState(format!(
                "amplitude vector has norm {norm:.3e}; the zero vector is not a state"
            )));
        }
        let matrix = if renormalize {
            matrix.scale(C64::new(1.0 / norm, 0.0))
        } else {
            if (norm * norm - 1.0).abs() > STATE_NORM_TOL {
                return Err(EofError::Normalization(format!(
                    "sum of squared amplitude magnitudes is {:.12}, must be 1 within {STATE_NORM_TOL:e} \
                     (pass renormalize to rescale)",
                    norm * norm
                )));
            }
            matrix
        };
        Ok(Self {
            m,
            n,
            amplitudes: matrix,
        })
    }

    /// Dimension of side A.
    pub fn dim_a(&self) -> usize {
        self.m
    }

    /// Dimension of side B.
    pub fn dim_b(&self) -> usize {
        self.n
    }

    /// The m×n coefficient matrix.
    pub fn coefficients(&self) -> &ComplexMatrix {
        &self.amplitudes
    }

    /// Amplitude at 1-based logical position (i over A, j over B).
    pub fn amplitude(&self, i: usize, j: usize) -> C64 {
        assert!(
            (1..=self.m).contains(&i) && (1..=self.n).contains(&j),
            "logical index out of range"
        );
        self.amplitudes.get(i - 1, j - 1)
    }

    /// Schmidt decomposition of the state.
    ///
    /// Values are the squared singular values of the coefficient matrix,
    /// rescaled to sum to exactly 1 and clamped nonnegative.
    pub fn schmidt(&self) -> SchmidtDecomposition {
        let svd = self
            .amplitudes
            .svd()
            .expect("state amplitudes are finite by construction");
        let mut values: Vec<f64> = svd.singular_values.iter().map(|s| (s * s).max(0.0)).collect();
        let total: f64 = values.iter().sum();
        for v in &mut values {
            *v /= total;
        }
        SchmidtDecomposition {
            values,
            basis_a: svd.left,
            // Columns of conj(V) are the Schmidt vectors on side B.
            basis_b: conjugate(&svd.right),
        }
    }

    /// The same state expressed in its Schmidt basis: the coefficient
    /// matrix becomes diag(√λ_1, ..., √λ_m), real, nonnegative,
    /// nonincreasing. Local-unitary invariance leaves the EoF unchanged.
    pub fn to_schmidt_basis(&self) -> PureState {
        let values = self.schmidt().values;
        let mut matrix = ComplexMatrix::zeros(self.m, self.n);
        for (k, v) in values.iter().enumerate() {
            matrix.set(k, k, C64::new(v.sqrt(), 0.0));
        }
        PureState {
            m: self.m,
            n: self.n,
            amplitudes: matrix,
        }
    }

    /// Reduced density matrix on side A: `A·A†` for coefficient matrix
    /// `A`. Hermitian by construction; trace equals the squared state
    /// norm (1 for a normalized state).
    pub fn reduced_density_a(&self) -> ComplexMatrix {
        self.amplitudes
            .matmul(&self.amplitudes.adjoint())
            .expect("m x n times n x m is conformable")
    }

    /// Applies local rotations `wa ⊗ wb` (each validated unitary within
    /// 1e-8), returning the rotated state.
    pub fn rotate(&self, wa: &ComplexMatrix, wb: &ComplexMatrix) -> Result<PureState> {
        if wa.rows() != self.m || wa.cols() != self.m {
            return Err(EofError::Dimension(format!(
                "side-A rotation must be {0}x{0}, got {1}x{2}",
                self.m,
                wa.rows(),
                wa.cols()
            )));
        }
        if wb.rows() != self.n || wb.cols() != self.n {
            return Err(EofError::Dimension(format!(
                "side-B rotation must be {0}x{0}, got {1}x{2}",
                self.n,
                wb.rows(),
                wb.cols()
            )));
        }
        for (name, u) in [("side-A", wa), ("side-B", wb)] {
            let dev = u.max_deviation_from_unitary();
            if dev > UNITARY_TOL {
                return Err(EofError::InvalidUnitary(format!(
                    "{name} rotation deviates from unitarity by {dev:.3e} (tolerance {UNITARY_TOL:e})"
                )));
            }
        }
        // |ψ'⟩ = (W_A ⊗ W_B)|ψ⟩ transforms the coefficient matrix as
        // M' = W_A · M · W_Bᵀ.
        let rotated = wa
            .matmul(&self.amplitudes)
            .and_then(|t| t.matmul(&wb.transpose()))
            .expect("validated shapes are conformable");
        Ok(PureState {
            m: self.m,
            n: self.n,
            amplitudes: rotated,
        })
    }
}

fn conjugate(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).conj())
}

/// Binary entropy h(x) = −x log₂x − (1−x) log₂(1−x) with 0·log 0 = 0.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Base-2 von Neumann entropy of a probability spectrum.
///
/// Entries may undershoot zero by at most 1e-12 (clamped); the sum must
/// be 1 within 1e-8. The result is clamped to [0, log₂(len)].
pub fn von_neumann_entropy(spectrum: &[f64]) -> Result<f64> {
    if spectrum.is_empty() {
        return Err(EofError::InvalidSpectrum("empty spectrum".into()));
    }
    let mut sum = 0.0;
    for (k, &v) in spectrum.iter().enumerate() {
        if !v.is_finite() {
            return Err(EofError::InvalidSpectrum(format!(
                "entry {k} is not finite"
            )));
        }
        if v < -SPECTRUM_NEG_TOL {
            return Err(EofError::InvalidSpectrum(format!(
                "entry {k} is {v:.3e}, below the {SPECTRUM_NEG_TOL:e} tolerance"
            )));
        }
        sum += v.max(0.0);
    }
    if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
        return Err(EofError::InvalidSpectrum(format!(
            "spectrum sums to {sum:.12}, must be 1 within {SPECTRUM_SUM_TOL:e}"
        )));
    }
    let h: f64 = spectrum
        .iter()
        .map(|&v| {
            let p = v.max(0.0);
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum();
    Ok(h.clamp(0.0, (spectrum.len() as f64).log2()))
}

/// Direct EoF in bits: entropy of the Schmidt spectrum.
pub fn eof_direct(state: &PureState) -> f64 {
    von_neumann_entropy(&state.schmidt().values)
        .expect("Schmidt values form a valid spectrum by construction")
}

/// Test-state families.
#[derive(Debug, Clone)]
pub enum StateKind {
    /// Amplitudes drawn i.i.d. standard complex Gaussian, then
    /// normalized.
    HaarRandom { m: usize, n: usize },
    /// Coefficient matrix diag(√λ_1, ..., √λ_m) embedded in m×n; the λ
    /// list is used in the given order (no sorting).
    SchmidtDiag { lambdas: Vec<f64>, n: usize },
    /// (|11⟩ + |22⟩)/√2 on 2⊗2.
    Bell,
    /// Uniform Schmidt spectrum 1/d on d⊗d.
    MaxEntangled { d: usize },
    /// |11⟩ on m⊗n.
    Product { m: usize, n: usize },
    /// Local rotation of a base state by supplied unitaries.
    Rotated {
        base: Box<PureState>,
        unitary_a: ComplexMatrix,
        unitary_b: ComplexMatrix,
    },
}

/// Generates a state of the requested kind. `seed` drives the
/// deterministic generator for the random kinds and is ignored otherwise.
pub fn gen_state(kind: &StateKind, seed: u64) -> Result<PureState> {
    match kind {
        StateKind::HaarRandom { m, n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let amps: Vec<C64> = (0..m * n)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            PureState::new(*m, *n, amps, true)
        }
        StateKind::SchmidtDiag { lambdas, n } => {
            let m = lambdas.len();
            let mut sum = 0.0;
            for (k, &v) in lambdas.iter().enumerate() {
                if !v.is_finite() || v < -SPECTRUM_NEG_TOL {
                    return Err(EofError::InvalidSpectrum(format!(
                        "lambda entry {k} is {v:.3e}"
                    )));
                }
                sum += v.max(0.0);
            }
            if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
                return Err(EofError::InvalidSpectrum(format!(
                    "lambda list sums to {sum:.12}, must be 1 within {SPECTRUM_SUM_TOL:e}"
                )));
            }
            let mut amps = vec![C64::new(0.0, 0.0); m * n];
            if m < 2 || *n < m {
                return Err(EofError::Dimension(format!(
                    "schmidt_diag needs 2 <= len(lambda) <= n, got {m} values and n={n}"
                )));
            }
            for (k, &v) in lambdas.iter().enumerate() {
                amps[k * n + k] = C64::new(v.max(0.0).sqrt(), 0.0);
            }
            PureState::new(m, *n, amps, true)
        }
        StateKind::Bell => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            PureState::new(
                2,
                2,
                vec![
                    C64::new(s, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(s, 0.0),
                ],
                false,
            )
        }
        StateKind::MaxEntangled { d } => {
            if *d < 2 {
                return Err(EofError::Dimension(format!(
                    "max_entangled needs d >= 2, got {d}"
                )));
            }
            let s = 1.0 / (*d as f64).sqrt();
            let mut amps = vec![C64::new(0.0, 0.0); d * d];
            for k in 0..*d {
                amps[k * d + k] = C64::new(s, 0.0);
            }
            PureState::new(*d, *d, amps, true)
        }
        StateKind::Product { m, n } => {
            let mut amps = vec![C64::new(0.0, 0.0); m * n];
            amps[0] = C64::new(1.0, 0.0);
            PureState::new(*m, *n, amps, false)
        }
        StateKind::Rotated {
            base,
            unitary_a,
            unitary_b,
        } => base.rotate(unitary_a, unitary_b),
    }
}

/// Haar-distributed random unitary: QR of a complex Ginibre matrix via
/// modified Gram–Schmidt (positive R diagonal).
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(dim >= 1);
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for _ in 0..2 {
            for k in 0..j {
                let overlap: C64 = cols[k]
                    .iter()
                    .zip(cols[j].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let prev = cols[k].clone();
                for (x, p) in cols[j].iter_mut().zip(&prev) {
                    *x -= overlap * p;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Number of Schmidt values above the zero cutoff.
pub fn schmidt_rank(values: &[f64]) -> usize {
    values.iter().filter(|&&v| v > EPS_ZERO).count()
}

/// On-disk state format: `{"m": int, "n": int, "amplitudes": [[re, im], ...]}`
/// with m·n row-major entries.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub m: usize,
    pub n: usize,
    pub amplitudes: Vec<(f64, f64)>,
}

impl PureState {
    /// Serializes to the state file schema.
    pub fn to_state_file(&self) -> StateFile {
        StateFile {
            m: self.m,
            n: self.n,
            amplitudes: self
                .amplitudes
                .entries()
                .iter()
                .map(|z| (z.re, z.im))
                .collect(),
        }
    }

    /// Parses a state file, optionally renormalizing.
    pub fn from_state_file(file: &StateFile, renormalize: bool) -> Result<Self> {
        let amps: Vec<C64> = file.amplitudes.iter().map(|&(re, im)| C64::new(re, im)).collect();
        PureState::new(file.m, file.n, amps, renormalize)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_state_file()).expect("state file serializes")
    }

    pub fn from_json(text: &str, renormalize: bool) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| {
            EofError::Dimension(format!("malformed state file: {e}"))
        })?;
        Self::from_state_file(&file, renormalize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQ: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell() -> PureState {
        gen_state(&StateKind::Bell, 0).unwrap()
    }

    #[test]
    fn bell_state_is_accepted() {
        let s = PureState::new(
            2,
            2,
            vec![c(SQ, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(SQ, 0.0)],
            false,
        )
        .unwrap();
        assert_eq!(s.dim_a(), 2);
        assert_eq!(s.dim_b(), 2);
    }

    #[test]
    fn explicit_renormalization() {
        let s = PureState::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            true,
        )
        .unwrap();
        assert!((s.amplitude(1, 1) - c(SQ, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1, 2) - c(SQ, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrong_amplitude_count_is_dimension_error() {
        let r = PureState::new(2, 3, vec![c(1.0, 0.0); 5], false);
        assert!(matches!(r, Err(EofError::Dimension(_))));
    }

    #[test]
    fn unnormalized_without_flag_is_rejected() {
        let r = PureState::new(2, 2, vec![c(1.0, 0.0); 4], false);
        assert!(matches!(r, Err(EofError::Normalization(_))));
    }

    #[test]
    fn zero_vector_is_degenerate() {
        let r = PureState::new(2, 2, vec![c(0.0, 0.0); 4], true);
        assert!(matches!(r, Err(EofError::DegenerateState(_))));
    }

    #[test]
    fn schmidt_values_of_bell() {
        let values = bell().schmidt().values;
        assert!((values[0] - 0.5).abs() < 1e-14);
        assert!((values[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn schmidt_values_of_product() {
        let s = gen_state(&StateKind::Product { m: 2, n: 2 }, 0).unwrap();
        let values = s.schmidt().values;
        assert!((values[0] - 1.0).abs() < 1e-14);
        assert!(values[1].abs() < 1e-14);
    }

    #[test]
    fn schmidt_values_of_diagonal_coefficients() {
        let s = PureState::new(
            2,
            2,
            vec![c(0.8, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)],
            false,
        )
        .unwrap();
        let values = s.schmidt().values;
        assert!((values[0] - 0.64).abs() < 1e-12);
        assert!((values[1] - 0.36).abs() < 1e-12);
    }

    #[test]
    fn schmidt_basis_of_rank_one_product_in_3x3() {
        // ((|1⟩+|2⟩)/√2) ⊗ |1⟩
        let mut amps = vec![c(0.0, 0.0); 9];
        amps[0] = c(SQ, 0.0);
        amps[3] = c(SQ, 0.0);
        let s = PureState::new(3, 3, amps, false).unwrap();
        let rotated = s.to_schmidt_basis();
        assert!((rotated.amplitude(1, 1) - c(1.0, 0.0)).norm() < 1e-12);
        for i in 1..=3 {
            for j in 1..=3 {
                if (i, j) != (1, 1) {
                    assert!(rotated.amplitude(i, j).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn schmidt_basis_already_diagonal_is_fixed_point() {
        let s = gen_state(
            &StateKind::SchmidtDiag {
                lambdas: vec![0.5, 0.3, 0.2],
                n: 3,
            },
            0,
        )
        .unwrap();
        let rotated = s.to_schmidt_basis();
        for i in 1..=3 {
            for j in 1..=3 {
                assert!((rotated.amplitude(i, j) - s.amplitude(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn schmidt_rotation_preserves_eof_for_haar_states() {
        let s = gen_state(&StateKind::HaarRandom { m: 4, n: 5 }, 31).unwrap();
        assert!((eof_direct(&s) - eof_direct(&s.to_schmidt_basis())).abs() < 1e-10);
    }

    #[test]
    fn dimension_cap_is_configurable() {
        let mut amps = vec![c(0.0, 0.0); 2 * 40];
        amps[0] = c(1.0, 0.0);
        assert!(matches!(
            PureState::new(2, 40, amps.clone(), false),
            Err(EofError::Dimension(_))
        ));
        assert!(PureState::new_with_cap(2, 40, amps, false, 64).is_ok());
    }

    #[test]
    fn reduced_density_of_bell_is_maximally_mixed() {
        let rho = bell().reduced_density_a();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 0.5 } else { 0.0 };
                assert!((rho.get(i, j) - c(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn reduced_density_of_product_is_pure_projector() {
        let s = gen_state(&StateKind::Product { m: 2, n: 2 }, 0).unwrap();
        let rho = s.reduced_density_a();
        assert!((rho.get(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(rho.get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        assert!((von_neumann_entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-14);
        assert!(von_neumann_entropy(&[1.0, 0.0]).unwrap().abs() < 1e-14);
        assert!((von_neumann_entropy(&[0.5, 0.3, 0.2]).unwrap() - 1.48548).abs() < 1e-5);
    }

    #[test]
    fn entropy_rejects_bad_spectra() {
        assert!(matches!(
            von_neumann_entropy(&[0.5, 0.6]),
            Err(EofError::InvalidSpectrum(_))
        ));
        assert!(matches!(
            von_neumann_entropy(&[1.1, -0.1]),
            Err(EofError::InvalidSpectrum(_))
        ));
    }

    #[test]
    fn eof_direct_examples() {
        assert!((eof_direct(&bell()) - 1.0).abs() < 1e-14);
        let d3 = gen_state(&StateKind::MaxEntangled { d: 3 }, 0).unwrap();
        assert!((eof_direct(&d3) - 3.0f64.log2()).abs() < 1e-12);
        let product = gen_state(&StateKind::Product { m: 3, n: 4 }, 0).unwrap();
        assert!(eof_direct(&product).abs() < 1e-14);
    }

    #[test]
    fn schmidt_diag_places_roots_on_diagonal() {
        let s = gen_state(
            &StateKind::SchmidtDiag {
                lambdas: vec![0.5, 0.3, 0.2],
                n: 3,
            },
            0,
        )
        .unwrap();
        assert!((s.amplitude(1, 1) - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((s.amplitude(2, 2) - c(0.3f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((s.amplitude(3, 3) - c(0.2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(s.amplitude(1, 2).norm() == 0.0);
    }

    #[test]
    fn max_entangled_has_full_eof() {
        let s = gen_state(&StateKind::MaxEntangled { d: 4 }, 0).unwrap();
        assert!((eof_direct(&s) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn haar_random_is_deterministic_under_seed() {
        let a = gen_state(&StateKind::HaarRandom { m: 3, n: 3 }, 7).unwrap();
        let b = gen_state(&StateKind::HaarRandom { m: 3, n: 3 }, 7).unwrap();
        assert_eq!(a, b);
        let c = gen_state(&StateKind::HaarRandom { m: 3, n: 3 }, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_lambda_list_is_rejected() {
        let r = gen_state(
            &StateKind::SchmidtDiag {
                lambdas: vec![0.9, 0.3],
                n: 2,
            },
            0,
        );
        assert!(matches!(r, Err(EofError::InvalidSpectrum(_))));
    }

    #[test]
    fn non_unitary_rotation_is_rejected() {
        let base = bell();
        let mut not_unitary = ComplexMatrix::identity(2);
        not_unitary.set(0, 0, c(1.1, 0.0));
        let r = gen_state(
            &StateKind::Rotated {
                base: Box::new(base),
                unitary_a: not_unitary,
                unitary_b: ComplexMatrix::identity(2),
            },
            0,
        );
        assert!(matches!(r, Err(EofError::InvalidUnitary(_))));
    }

    #[test]
    fn rotation_preserves_direct_eof() {
        let base = gen_state(&StateKind::HaarRandom { m: 4, n: 5 }, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let ua = haar_unitary(4, &mut rng);
        let ub = haar_unitary(5, &mut rng);
        let rotated = base.rotate(&ua, &ub).unwrap();
        assert!((eof_direct(&base) - eof_direct(&rotated)).abs() < 1e-10);
    }

    #[test]
    fn state_file_round_trip_is_bit_exact() {
        let s = gen_state(&StateKind::HaarRandom { m: 3, n: 4 }, 5).unwrap();
        let json = s.to_json();
        let back = PureState::from_json(&json, false).unwrap();
        assert_eq!(s, back);
    }
}
