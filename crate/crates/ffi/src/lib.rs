//! C ABI over `tiemzi`.
//!
//! Every function returns a [`TmStatus`] and writes results through out
//! pointers. On failure the message is kept in a thread-local slot readable
//! with [`tm_last_error_message`]. Handles are opaque and must be released
//! with the matching `*_free` function; strings returned by the library are
//! released with [`tm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tiemzi::complementarity::{self, Kappa, Verdict};
use tiemzi::interferometry::tie_fringe;
use tiemzi::montecarlo::{self, ExperimentConfig, ExperimentSummary};
use tiemzi::states::TieInput;
use tiemzi::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConfigError = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmVerdict {
    Satisfied = 0,
    Tight = 1,
    Violated = 2,
}

impl From<Verdict> for TmVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Satisfied => TmVerdict::Satisfied,
            Verdict::Tight => TmVerdict::Tight,
            Verdict::Violated => TmVerdict::Violated,
        }
    }
}

/// Two-frequency internal state.
pub struct TmTieInput(TieInput);

/// Result of a Monte Carlo phase-shift experiment.
pub struct TmExperimentSummary(ExperimentSummary);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

enum Failure {
    Null(&'static str),
    Invalid(tiemzi::Error),
    Config(String),
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> TmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TmStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            TmStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(e))) => {
            set_error(e.to_string());
            TmStatus::InvalidArgument
        }
        Ok(Err(Failure::Config(msg))) => {
            set_error(msg);
            TmStatus::ConfigError
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_error(format!("panic: {msg}"));
            TmStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(p: *mut T, name: &'static str, value: T) -> FfiResult {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    p.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// TIE state with `k1 = 1`, `k2 = kappa` and real amplitudes `√p1`, `√(1−p1)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_input_new(p1: f64, kappa: f64, out: *mut *mut TmTieInput) -> TmStatus {
    guard(|| {
        let tie = TieInput::with_weight(p1, kappa).map_err(Failure::Invalid)?;
        write(out, "out", Box::into_raw(Box::new(TmTieInput(tie))))
    })
}

/// TIE state from complex amplitudes and wavenumbers.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_input_from_amplitudes(
    c1_re: f64,
    c1_im: f64,
    c2_re: f64,
    c2_im: f64,
    k1: f64,
    k2: f64,
    out: *mut *mut TmTieInput,
) -> TmStatus {
    guard(|| {
        let tie = TieInput::new(Complex64::new(c1_re, c1_im), Complex64::new(c2_re, c2_im), k1, k2)
            .map_err(Failure::Invalid)?;
        write(out, "out", Box::into_raw(Box::new(TmTieInput(tie))))
    })
}

/// # Safety
/// `tie` must be null or a handle from `tm_tie_input_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_input_free(tie: *mut TmTieInput) {
    if !tie.is_null() {
        drop(Box::from_raw(tie));
    }
}

/// Output-port probabilities at path difference `l_ab`.
///
/// # Safety
/// `tie` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_fringe(
    tie: *const TmTieInput,
    l_ab: f64,
    p_plus: *mut f64,
    p_minus: *mut f64,
) -> TmStatus {
    guard(|| {
        let tie = deref(tie, "tie")?;
        let f = tie_fringe(&tie.0, l_ab);
        write(p_plus, "p_plus", f.p_plus)?;
        write(p_minus, "p_minus", f.p_minus)
    })
}

/// # Safety
/// `tie` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_distinguishability(tie: *const TmTieInput, l_ab: f64, out: *mut f64) -> TmStatus {
    guard(|| {
        let tie = deref(tie, "tie")?;
        write(out, "out", complementarity::tie_distinguishability(&tie.0, l_ab))
    })
}

/// `|dP+/dL| / k_max`.
///
/// # Safety
/// `tie` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_sensitivity(tie: *const TmTieInput, l_ab: f64, out: *mut f64) -> TmStatus {
    guard(|| {
        let tie = deref(tie, "tie")?;
        write(out, "out", complementarity::sensitivity(&tie.0, l_ab))
    })
}

/// Purity of the reduced path state with arm lengths `(l_ab, 0)`.
///
/// # Safety
/// `tie` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_tie_purity(tie: *const TmTieInput, l_ab: f64, out: *mut f64) -> TmStatus {
    guard(|| {
        let tie = deref(tie, "tie")?;
        let (a, b) = tie.0.arm_states(l_ab, 0.0);
        write(out, "out", complementarity::purity(&a, &b))
    })
}

/// Left-hand side of the sensitivity-distinguishability ellipse. Pass
/// `INFINITY` as `kappa` for the κ → ∞ limit.
///
/// # Safety
/// Out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_sd_ellipse_lhs(
    s: f64,
    d: f64,
    kappa: f64,
    lhs: *mut f64,
    verdict: *mut TmVerdict,
) -> TmStatus {
    guard(|| {
        let kappa = if kappa == f64::INFINITY {
            Kappa::Infinite
        } else {
            Kappa::finite(kappa).map_err(Failure::Invalid)?
        };
        let report = complementarity::sd_ellipse_bound(s, d, kappa).map_err(Failure::Invalid)?;
        write(lhs, "lhs", report.lhs)?;
        write(verdict, "verdict", report.verdict.into())
    })
}

/// `ceil(1/(k_max δL · S)²)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_required_atoms(kmax_delta_l: f64, sensitivity: f64, out: *mut u64) -> TmStatus {
    guard(|| {
        let n = montecarlo::required_atoms(kmax_delta_l, sensitivity).map_err(Failure::Invalid)?;
        write(out, "out", n)
    })
}

/// Runs an experiment described by a JSON config, for example
/// `{"mode":{"kind":"tie","kappa":3,"p1":0.5},"kmax_delta_l":0.01,"n_in":90000,"seed":1,"repetitions":10}`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_run(config_json: *const c_char, out: *mut *mut TmExperimentSummary) -> TmStatus {
    guard(|| {
        if config_json.is_null() {
            return Err(Failure::Null("config_json"));
        }
        let text = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|e| Failure::Config(format!("config is not UTF-8: {e}")))?;
        let cfg = ExperimentConfig::from_json(text).map_err(|e| Failure::Config(e.to_string()))?;
        let summary = montecarlo::run_phase_experiment(&cfg).map_err(Failure::Invalid)?;
        write(out, "out", Box::into_raw(Box::new(TmExperimentSummary(summary))))
    })
}

/// # Safety
/// `summary` must be null or a handle from `tm_experiment_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_free(summary: *mut TmExperimentSummary) {
    if !summary.is_null() {
        drop(Box::from_raw(summary));
    }
}

/// # Safety
/// `summary` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_mean_wrong_paths(
    summary: *const TmExperimentSummary,
    out: *mut f64,
) -> TmStatus {
    guard(|| write(out, "out", deref(summary, "summary")?.0.mean_wrong_paths))
}

/// # Safety
/// `summary` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_sign_success_rate(
    summary: *const TmExperimentSummary,
    out: *mut f64,
) -> TmStatus {
    guard(|| write(out, "out", deref(summary, "summary")?.0.sign_success_rate))
}

/// # Safety
/// `summary` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_repetitions(summary: *const TmExperimentSummary, out: *mut u32) -> TmStatus {
    guard(|| write(out, "out", deref(summary, "summary")?.0.repetitions.len() as u32))
}

/// Full summary as JSON. Release the string with `tm_string_free`.
///
/// # Safety
/// `summary` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tm_experiment_to_json(summary: *const TmExperimentSummary, out: *mut *mut c_char) -> TmStatus {
    guard(|| {
        let summary = deref(summary, "summary")?;
        let text = serde_json::to_string(&summary.0).map_err(|e| Failure::Config(e.to_string()))?;
        let c = CString::new(text).map_err(|e| Failure::Config(e.to_string()))?;
        write(out, "out", c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
