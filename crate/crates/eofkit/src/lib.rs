//! Entanglement of formation (EoF) for bipartite pure quantum states.
//!
//! The crate computes the EoF of an m⊗n pure state by three independent
//! routes and cross-validates them:
//!
//! 1. **Direct**: von Neumann entropy of the Schmidt spectrum
//!    ([`state::eof_direct`]).
//! 2. **Block reconstruction**: the state is decomposed into two-qubit
//!    blocks indexed by pairs of antisymmetric generators on each side;
//!    each block contributes `(E_block + log2(1/T)) · T` and the weighted
//!    sum, taken in the Schmidt basis, reproduces the EoF exactly
//!    ([`reconstruction::reconstruct_eof`]).
//! 3. **Measurement simulation**: every block quantity is expressible in
//!    mean values of local Hermitian observables; finite-shot projective
//!    measurement of those observables is simulated with seeded streams
//!    and the EoF is estimated with propagated uncertainties
//!    ([`measurement::estimate_eof`]).
//!
//! All entropies are base-2 (ebits). States live on dimensions
//! 2 ≤ m ≤ n ≤ 32 by default (configurable cap).

pub mod error;
pub mod matrix;
pub mod measurement;
pub mod projection;
pub mod reconstruction;
pub mod state;
pub mod tolerances;

pub use error::{EofError, Result};
pub use matrix::{ComplexMatrix, SvdDecomposition, C64};
pub use measurement::{
    estimate_eof, estimate_eof_with, EstimateOptions, EstimateReport, ExpectationSet,
    ObservableSpec, OutcomeCounts, ShotPlan,
};
pub use projection::{BlockState, EnumerationMode, GeneratorIndex};
pub use reconstruction::{reconstruct_eof, verify_theorem, Basis, ReconstructionReport};
pub use state::{PureState, SchmidtDecomposition, StateKind};
