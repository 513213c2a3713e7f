//! C ABI for eofkit.
//!
//! Other languages drive the library through an opaque state handle and
//! flat status codes. Every function returns [`EofStatus`]; out-values
//! are written through pointers only on `Ok`. Strings returned by
//! `*_json` functions are heap-allocated and must be released with
//! [`eofkit_string_free`]. The C header is generated into
//! `include/eofkit.h` at build time.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eofkit::measurement::{estimate_eof_with, EstimateOptions, ShotPlan};
use eofkit::reconstruction::{reconstruct_eof, Basis};
use eofkit::state::{eof_direct, PureState};
use eofkit::{C64, EnumerationMode, EofError};

/// Flat status codes mirrored from the library's error type.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EofStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    NonFinite = 3,
    Normalization = 4,
    DegenerateState = 5,
    InvalidSpectrum = 6,
    InvalidUnitary = 7,
    DegenerateBlock = 8,
    InvalidBasis = 9,
    InvalidPlan = 10,
    Utf8 = 11,
    Json = 12,
    BufferTooSmall = 13,
    Internal = 14,
}

/// Block enumeration range (mirrors the library's mode switch).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EofMode {
    /// B-side pairs restricted to the first m indices, 1/(m−1)²
    /// normalization.
    Paper = 0,
    /// All B-side pairs, 1/((m−1)(n−1)) normalization.
    Rect = 1,
}

/// Basis the block sum is evaluated in.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EofBasis {
    /// Rotate to the Schmidt basis first (certified).
    Schmidt = 0,
    /// Evaluate coefficients as given (demonstrative only).
    Raw = 1,
}

/// Opaque handle to an immutable bipartite pure state.
pub struct EofState(PureState);

impl From<EofMode> for EnumerationMode {
    fn from(value: EofMode) -> Self {
        match value {
            EofMode::Paper => EnumerationMode::Paper,
            EofMode::Rect => EnumerationMode::Rect,
        }
    }
}

impl From<EofBasis> for Basis {
    fn from(value: EofBasis) -> Self {
        match value {
            EofBasis::Schmidt => Basis::Schmidt,
            EofBasis::Raw => Basis::Raw,
        }
    }
}

fn status_of(err: &EofError) -> EofStatus {
    match err {
        EofError::Dimension(_) => EofStatus::Dimension,
        EofError::NonFinite(_) => EofStatus::NonFinite,
        EofError::Normalization(_) => EofStatus::Normalization,
        EofError::DegenerateState(_) => EofStatus::DegenerateState,
        EofError::InvalidSpectrum(_) => EofStatus::InvalidSpectrum,
        EofError::InvalidUnitary(_) => EofStatus::InvalidUnitary,
        EofError::DegenerateBlock(_) => EofStatus::DegenerateBlock,
        EofError::InvalidBasis(_) => EofStatus::InvalidBasis,
        EofError::InvalidPlan(_) => EofStatus::InvalidPlan,
    }
}

/// Runs a closure, converting panics into `Internal` so unwinding never
/// crosses the C boundary.
fn guarded(f: impl FnOnce() -> EofStatus) -> EofStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(EofStatus::Internal)
}

fn write_string(out: *mut *mut c_char, text: String) -> EofStatus {
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            EofStatus::Ok
        }
        Err(_) => EofStatus::Internal,
    }
}

/// Builds a state from `count` complex amplitudes laid out as
/// `[re0, im0, re1, im1, ...]` (row-major, side-A index major). On `Ok`
/// the new handle is written to `out_state`; release it with
/// [`eofkit_state_free`].
///
/// # Safety
/// `amplitudes` must point to `2 * count` readable doubles and
/// `out_state` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_state_new(
    m: u32,
    n: u32,
    amplitudes: *const f64,
    count: usize,
    renormalize: bool,
    out_state: *mut *mut EofState,
) -> EofStatus {
    if amplitudes.is_null() || out_state.is_null() {
        return EofStatus::NullPointer;
    }
    let raw = std::slice::from_raw_parts(amplitudes, count * 2);
    guarded(|| {
        let amps: Vec<C64> = raw.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect();
        match PureState::new(m as usize, n as usize, amps, renormalize) {
            Ok(state) => {
                unsafe { *out_state = Box::into_raw(Box::new(EofState(state))) };
                EofStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Parses a state from the JSON state-file schema
/// `{"m": int, "n": int, "amplitudes": [[re, im], ...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out_state` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_state_from_json(
    json: *const c_char,
    renormalize: bool,
    out_state: *mut *mut EofState,
) -> EofStatus {
    if json.is_null() || out_state.is_null() {
        return EofStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return EofStatus::Utf8;
    };
    guarded(|| match PureState::from_json(text, renormalize) {
        Ok(state) => {
            unsafe { *out_state = Box::into_raw(Box::new(EofState(state))) };
            EofStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Serializes the state to the JSON state-file schema. Free the returned
/// string with [`eofkit_string_free`].
///
/// # Safety
/// `state` must be a live handle from this library; `out_json` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_state_to_json(
    state: *const EofState,
    out_json: *mut *mut c_char,
) -> EofStatus {
    if state.is_null() || out_json.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| write_string(out_json, state.to_json()))
}

/// Reports the side dimensions of a state.
///
/// # Safety
/// All pointers must be valid; `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eofkit_state_dims(
    state: *const EofState,
    out_m: *mut u32,
    out_n: *mut u32,
) -> EofStatus {
    if state.is_null() || out_m.is_null() || out_n.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    *out_m = state.dim_a() as u32;
    *out_n = state.dim_b() as u32;
    EofStatus::Ok
}

/// Releases a state handle. Passing NULL is a no-op.
///
/// # Safety
/// `state` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn eofkit_state_free(state: *mut EofState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Direct EoF in bits (entropy of the Schmidt spectrum).
///
/// # Safety
/// `state` must be a live handle; `out_bits` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_eof_direct(
    state: *const EofState,
    out_bits: *mut f64,
) -> EofStatus {
    if state.is_null() || out_bits.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| {
        unsafe { *out_bits = eof_direct(state) };
        EofStatus::Ok
    })
}

/// Copies the Schmidt values (nonincreasing, summing to 1) into
/// `out_values`. `capacity` is the buffer length in doubles; the number
/// written goes to `out_len`. Returns `BufferTooSmall` (with `out_len`
/// set to the required length) when the buffer cannot hold all values.
///
/// # Safety
/// `out_values` must point to `capacity` writable doubles; other
/// pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eofkit_schmidt_values(
    state: *const EofState,
    out_values: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> EofStatus {
    if state.is_null() || out_values.is_null() || out_len.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| {
        let values = state.schmidt().values;
        unsafe { *out_len = values.len() };
        if values.len() > capacity {
            return EofStatus::BufferTooSmall;
        }
        for (i, v) in values.iter().enumerate() {
            unsafe { *out_values.add(i) = *v };
        }
        EofStatus::Ok
    })
}

/// Block-sum reconstruction of the EoF. Writes the total (bits) and its
/// residual against the direct route.
///
/// # Safety
/// `state` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eofkit_reconstruct(
    state: *const EofState,
    mode: EofMode,
    basis: EofBasis,
    out_total: *mut f64,
    out_residual: *mut f64,
) -> EofStatus {
    if state.is_null() || out_total.is_null() || out_residual.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| match reconstruct_eof(state, mode.into(), basis.into()) {
        Ok(report) => {
            unsafe {
                *out_total = report.total;
                *out_residual = report.residual_vs_direct;
            }
            EofStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Full reconstruction report as a JSON string (same schema as the CLI
/// emits, without the config block). Free with [`eofkit_string_free`].
///
/// # Safety
/// `state` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_reconstruct_json(
    state: *const EofState,
    mode: EofMode,
    basis: EofBasis,
    out_json: *mut *mut c_char,
) -> EofStatus {
    if state.is_null() || out_json.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| match reconstruct_eof(state, mode.into(), basis.into()) {
        Ok(report) => match serde_json::to_string_pretty(&report) {
            Ok(text) => write_string(out_json, text),
            Err(_) => EofStatus::Json,
        },
        Err(e) => status_of(&e),
    })
}

/// Finite-shot estimate of the EoF (Schmidt basis, `shots` per
/// observable, deterministic under `seed`). Writes the estimate and its
/// propagated standard error.
///
/// # Safety
/// `state` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eofkit_estimate(
    state: *const EofState,
    shots: u64,
    seed: u64,
    mode: EofMode,
    out_e_hat: *mut f64,
    out_std_error: *mut f64,
) -> EofStatus {
    if state.is_null() || out_e_hat.is_null() || out_std_error.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| {
        let plan = match ShotPlan::new(shots, seed) {
            Ok(plan) => plan,
            Err(e) => return status_of(&e),
        };
        match estimate_eof_with(state, &plan, mode.into(), &EstimateOptions::default()) {
            Ok(report) => {
                unsafe {
                    *out_e_hat = report.e_hat;
                    *out_std_error = report.std_error;
                }
                EofStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Full estimate report as a JSON string. Free with
/// [`eofkit_string_free`].
///
/// # Safety
/// `state` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eofkit_estimate_json(
    state: *const EofState,
    shots: u64,
    seed: u64,
    mode: EofMode,
    out_json: *mut *mut c_char,
) -> EofStatus {
    if state.is_null() || out_json.is_null() {
        return EofStatus::NullPointer;
    }
    let state = &(*state).0;
    guarded(|| {
        let plan = match ShotPlan::new(shots, seed) {
            Ok(plan) => plan,
            Err(e) => return status_of(&e),
        };
        match estimate_eof_with(state, &plan, mode.into(), &EstimateOptions::default()) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(text) => write_string(out_json, text),
                Err(_) => EofStatus::Json,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library. Passing NULL is a no-op.
///
/// # Safety
/// `s` must have been returned by an `eofkit_*` function and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn eofkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn eofkit_status_message(status: EofStatus) -> *const c_char {
    let text: &'static str = match status {
        EofStatus::Ok => "ok\0",
        EofStatus::NullPointer => "null pointer argument\0",
        EofStatus::Dimension => "dimension error\0",
        EofStatus::NonFinite => "non-finite input\0",
        EofStatus::Normalization => "normalization error\0",
        EofStatus::DegenerateState => "degenerate state\0",
        EofStatus::InvalidSpectrum => "invalid spectrum\0",
        EofStatus::InvalidUnitary => "invalid unitary\0",
        EofStatus::DegenerateBlock => "degenerate block\0",
        EofStatus::InvalidBasis => "invalid basis\0",
        EofStatus::InvalidPlan => "invalid measurement plan\0",
        EofStatus::Utf8 => "invalid UTF-8\0",
        EofStatus::Json => "JSON serialization failure\0",
        EofStatus::BufferTooSmall => "buffer too small\0",
        EofStatus::Internal => "internal error\0",
    };
    text.as_ptr() as *const c_char
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn eofkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
