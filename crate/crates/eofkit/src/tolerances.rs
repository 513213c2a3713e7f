//! Pinned numeric tolerances and caps.
//!
//! Everything here assumes 64-bit IEEE floating point. Values are part of
//! the library contract and are exercised by the acceptance suite; don't
//! tune them ad hoc.

/// Schmidt values at or below this are treated as exactly zero (rank
/// determination, census classification).
pub const EPS_ZERO: f64 = 1e-12;

/// Blocks whose weight `T` is at or below this cutoff are skipped: a
/// vanishing-trace block contributes nothing to the reconstruction sum.
pub const EPS_SKIP: f64 = 1e-12;

/// Allowed deviation of Σ|a_ij|² from 1 for an accepted state.
pub const STATE_NORM_TOL: f64 = 1e-8;

/// A state with norm at or below this is degenerate and cannot be
/// renormalized.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Allowed deviation of a probability spectrum's sum from 1.
pub const SPECTRUM_SUM_TOL: f64 = 1e-8;

/// Spectrum entries may undershoot zero by at most this much (then they
/// are clamped to 0); anything more negative is rejected.
pub const SPECTRUM_NEG_TOL: f64 = 1e-12;

/// Max entrywise deviation of U†U from the identity for a matrix accepted
/// as a local rotation.
pub const UNITARY_TOL: f64 = 1e-8;

/// Max off-diagonal magnitude for a coefficient matrix accepted as
/// Schmidt-diagonal by the census.
pub const DIAG_TOL: f64 = 1e-10;

/// Tolerance for matching a projected block's eigenvalues against the
/// Schmidt values in the census cross-check.
pub const CENSUS_MATCH_TOL: f64 = 1e-10;

/// Expectation values of Hermitian observables must be real up to this
/// imaginary residue, which is discarded.
pub const IM_RESIDUE_TOL: f64 = 1e-12;

/// Default per-side dimension cap; the generator-pair count grows as
/// m²n²/4, so desk-scale work stays comfortably below this.
pub const DEFAULT_DIM_CAP: usize = 32;
