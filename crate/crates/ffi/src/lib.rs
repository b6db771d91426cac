//! C ABI for the grover2q simulator: opaque handles, integer status codes,
//! and a thread-local last-error message. The header `include/grover2q.h`
//! is generated by cbindgen at build time.
//!
//! Conventions:
//! - Every fallible call returns a [`G2qStatus`]; out-parameters are written
//!   only on `Ok`.
//! - Handles are created and destroyed by this library; passing a handle to
//!   the wrong `_free` function or using it after free is undefined behavior.
//! - 4×4 matrices cross the boundary as row-major arrays of 16 doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use grover2q::config::RunConfig;
use grover2q::error::Error;
use grover2q::grover::{
    calibrate, outcome_fidelity, run_algorithm, AlgorithmResult, ConditionalTable, OracleId,
};
use grover2q::rng::subseed;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2qStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularMatrix = 3,
    NumericalError = 4,
    ConfigError = 5,
    IoError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(error: &Error) -> G2qStatus {
    set_last_error(&error.to_string());
    match error {
        Error::InvalidArgument(_) => G2qStatus::InvalidArgument,
        Error::SingularMatrix(_) => G2qStatus::SingularMatrix,
        Error::InternalConsistency(_) | Error::DegenerateTable(_) => G2qStatus::NumericalError,
        Error::Config { .. } => G2qStatus::ConfigError,
        Error::Io(_) => G2qStatus::IoError,
    }
}

fn null_pointer(what: &str) -> G2qStatus {
    set_last_error(&format!("null pointer: {what}"));
    G2qStatus::NullPointer
}

/// Opaque simulation configuration (see `g2q_config_set` for keys).
pub struct G2qConfig {
    inner: RunConfig,
}

/// Opaque result of one oracle run.
pub struct G2qGroverResult {
    inner: AlgorithmResult,
}

/// Detail message for the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn g2q_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn g2q_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a configuration with the documented defaults. Free with
/// `g2q_config_free`.
#[no_mangle]
pub extern "C" fn g2q_config_new() -> *mut G2qConfig {
    Box::into_raw(Box::new(G2qConfig { inner: RunConfig::default() }))
}

/// # Safety
/// `config` must be a pointer from `g2q_config_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn g2q_config_free(config: *mut G2qConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Set one configuration key (same keys as the `key = value` config file,
/// e.g. "seed", "shots", "chi", "shelving", "noise_enabled", "t1_i_ns").
///
/// # Safety
/// `config` must be a live handle; `key` and `value` must be NUL-terminated
/// strings valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn g2q_config_set(
    config: *mut G2qConfig,
    key: *const c_char,
    value: *const c_char,
) -> G2qStatus {
    let Some(config) = config.as_mut() else {
        return null_pointer("config");
    };
    if key.is_null() || value.is_null() {
        return null_pointer("key/value");
    }
    let (Ok(key), Ok(value)) = (CStr::from_ptr(key).to_str(), CStr::from_ptr(value).to_str())
    else {
        set_last_error("key/value is not valid UTF-8");
        return G2qStatus::InvalidArgument;
    };
    match config.inner.set(key, value).and_then(|()| config.inner.validate()) {
        Ok(()) => G2qStatus::Ok,
        Err(err) => fail(&err),
    }
}

/// Write the 4×4 readout matrix (row-major, rows = outcomes, columns =
/// projected states) into `out`.
///
/// # Safety
/// `config` must be a live handle; `out` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2q_readout_matrix(
    config: *const G2qConfig,
    out: *mut f64,
) -> G2qStatus {
    let Some(config) = config.as_ref() else {
        return null_pointer("config");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    match config.inner.readout_matrix() {
        Ok(r) => {
            let slice = std::slice::from_raw_parts_mut(out, 16);
            for row in 0..4 {
                for col in 0..4 {
                    slice[row * 4 + col] = r.entry(row, col);
                }
            }
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}

/// Per-qubit readout contrasts 1 − e0 − e1.
///
/// # Safety
/// `config` must be a live handle; `contrast_i` and `contrast_ii` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn g2q_readout_contrasts(
    config: *const G2qConfig,
    contrast_i: *mut f64,
    contrast_ii: *mut f64,
) -> G2qStatus {
    let Some(config) = config.as_ref() else {
        return null_pointer("config");
    };
    if contrast_i.is_null() || contrast_ii.is_null() {
        return null_pointer("contrast out-parameters");
    }
    match config.inner.readout_rates() {
        Ok(rates) => {
            let (c_i, c_ii) = rates.contrasts();
            *contrast_i = c_i;
            *contrast_ii = c_ii;
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}

/// Run the search for the oracle tagging basis state `oracle_tag` (0..=3 for
/// 00..11). On success, `*out` receives a handle to free with
/// `g2q_grover_result_free`.
///
/// # Safety
/// `config` must be a live handle; `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn g2q_run_grover(
    config: *const G2qConfig,
    oracle_tag: u8,
    with_tomography: bool,
    out: *mut *mut G2qGroverResult,
) -> G2qStatus {
    let Some(config) = config.as_ref() else {
        return null_pointer("config");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    let run = || -> grover2q::Result<AlgorithmResult> {
        let id = OracleId::from_tag(oracle_tag as usize)?;
        let settings = config.inner.grover_settings()?;
        let r = config.inner.readout_matrix()?;
        run_algorithm(
            id,
            &r,
            &settings,
            subseed(config.inner.seed, id.tag() as u64),
            with_tomography,
        )
    };
    match run() {
        Ok(result) => {
            *out = Box::into_raw(Box::new(G2qGroverResult { inner: result }));
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}

/// # Safety
/// `result` must be a pointer from `g2q_run_grover` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_result_free(result: *mut G2qGroverResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Raw single-run success probability. Returns NaN for a null handle.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_success_probability(result: *const G2qGroverResult) -> f64 {
    match result.as_ref() {
        Some(result) => result.inner.success_probability,
        None => f64::NAN,
    }
}

/// Raw outcome counts for outcomes 00, 01, 10, 11. Fails with
/// `InvalidArgument` on the exact-distribution path (shots = 0), which has
/// no counts.
///
/// # Safety
/// `result` must be a live handle; `out` must point to 4 writable uint64.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_counts(
    result: *const G2qGroverResult,
    out: *mut u64,
) -> G2qStatus {
    let Some(result) = result.as_ref() else {
        return null_pointer("result");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    match result.inner.outcome_counts {
        Some(counts) => {
            std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&counts);
            G2qStatus::Ok
        }
        None => {
            set_last_error("exact-distribution run has no counts");
            G2qStatus::InvalidArgument
        }
    }
}

/// Raw outcome frequencies for outcomes 00, 01, 10, 11.
///
/// # Safety
/// `result` must be a live handle; `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_frequencies(
    result: *const G2qGroverResult,
    out: *mut f64,
) -> G2qStatus {
    let Some(result) = result.as_ref() else {
        return null_pointer("result");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&result.inner.outcome_frequencies);
    G2qStatus::Ok
}

/// State fidelity of the simulated post-oracle state against the ideal
/// tagged state (no readout involved). NaN for a null handle.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_fidelity_after_oracle(
    result: *const G2qGroverResult,
) -> f64 {
    match result.as_ref() {
        Some(result) => result.inner.fidelity_after_oracle,
        None => f64::NAN,
    }
}

/// State fidelity of the simulated final state against the tagged basis
/// state (no readout involved). NaN for a null handle.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_fidelity_final(result: *const G2qGroverResult) -> f64 {
    match result.as_ref() {
        Some(result) => result.inner.fidelity_final,
        None => f64::NAN,
    }
}

/// Tomography fidelities (f_int, f_final) of the readout-corrected
/// reconstructions. Fails with `InvalidArgument` when the run was made
/// without tomography.
///
/// # Safety
/// `result` must be a live handle; `f_int` and `f_final` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_tomography_fidelities(
    result: *const G2qGroverResult,
    f_int: *mut f64,
    f_final: *mut f64,
) -> G2qStatus {
    let Some(result) = result.as_ref() else {
        return null_pointer("result");
    };
    if f_int.is_null() || f_final.is_null() {
        return null_pointer("fidelity out-parameters");
    }
    match &result.inner.tomography {
        Some(tomo) => {
            *f_int = tomo.f_int;
            *f_final = tomo.f_final;
            G2qStatus::Ok
        }
        None => {
            set_last_error("run was made without tomography");
            G2qStatus::InvalidArgument
        }
    }
}

/// Real and imaginary parts (row-major 16 doubles each) of the
/// readout-corrected reconstruction of the final state. Requires a
/// tomography run.
///
/// # Safety
/// `result` must be a live handle; `real` and `imaginary` must each point to
/// 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2q_grover_rho_final(
    result: *const G2qGroverResult,
    real: *mut f64,
    imaginary: *mut f64,
) -> G2qStatus {
    let Some(result) = result.as_ref() else {
        return null_pointer("result");
    };
    if real.is_null() || imaginary.is_null() {
        return null_pointer("matrix out-parameters");
    }
    match &result.inner.tomography {
        Some(tomo) => {
            let m = tomo.final_state.physical.matrix();
            let re = std::slice::from_raw_parts_mut(real, 16);
            let im = std::slice::from_raw_parts_mut(imaginary, 16);
            for row in 0..4 {
                for col in 0..4 {
                    let z = m.get(row, col);
                    re[row * 4 + col] = z.re;
                    im[row * 4 + col] = z.im;
                }
            }
            G2qStatus::Ok
        }
        None => {
            set_last_error("run was made without tomography");
            G2qStatus::InvalidArgument
        }
    }
}

/// Run all four oracles with per-oracle derived seeds and write the 4×4
/// conditional-probability table (row-major, rows = outcomes ab, columns =
/// oracles uv).
///
/// # Safety
/// `config` must be a live handle; `out` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2q_conditional_table(
    config: *const G2qConfig,
    out: *mut f64,
) -> G2qStatus {
    let Some(config) = config.as_ref() else {
        return null_pointer("config");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    let run = || -> grover2q::Result<ConditionalTable> {
        let settings = config.inner.grover_settings()?;
        let r = config.inner.readout_matrix()?;
        grover2q::grover::conditional_table(&r, &settings, config.inner.seed)
    };
    match run() {
        Ok(table) => {
            let slice = std::slice::from_raw_parts_mut(out, 16);
            for row in 0..4 {
                for col in 0..4 {
                    slice[row * 4 + col] = table.entry(row, col);
                }
            }
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}

/// Per-outcome fidelities f_ab and their average from a conditional table
/// (row-major 16 doubles, rows = outcomes, columns = oracles).
///
/// # Safety
/// `table` must point to 16 readable doubles; `fidelities` to 4 writable
/// doubles; `average` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2q_outcome_fidelity(
    table: *const f64,
    fidelities: *mut f64,
    average: *mut f64,
) -> G2qStatus {
    if table.is_null() {
        return null_pointer("table");
    }
    if fidelities.is_null() || average.is_null() {
        return null_pointer("out-parameters");
    }
    let values = std::slice::from_raw_parts(table, 16);
    let mut entries = [[0.0; 4]; 4];
    for row in 0..4 {
        for col in 0..4 {
            entries[row][col] = values[row * 4 + col];
        }
    }
    let run = || -> grover2q::Result<([f64; 4], f64)> {
        outcome_fidelity(&ConditionalTable::new(entries)?)
    };
    match run() {
        Ok((f, avg)) => {
            std::slice::from_raw_parts_mut(fidelities, 4).copy_from_slice(&f);
            *average = avg;
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}

/// Calibration sweep on the exact-distribution path: best-fit χ (and idle,
/// when `sweep_idle` is set) against the reference success probabilities.
///
/// # Safety
/// `config` must be a live handle; `chi`, `idle_ns` and `residual` must be
/// writable; `success` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2q_calibrate(
    config: *const G2qConfig,
    sweep_idle: bool,
    chi: *mut f64,
    idle_ns: *mut f64,
    success: *mut f64,
    residual: *mut f64,
) -> G2qStatus {
    let Some(config) = config.as_ref() else {
        return null_pointer("config");
    };
    if chi.is_null() || idle_ns.is_null() || success.is_null() || residual.is_null() {
        return null_pointer("out-parameters");
    }
    let run = || -> grover2q::Result<grover2q::grover::CalibrationResult> {
        let settings = config.inner.grover_settings()?;
        calibrate(&settings, config.inner.shelving, sweep_idle)
    };
    match run() {
        Ok(result) => {
            *chi = result.chi;
            *idle_ns = result.prereadout_idle_ns;
            std::slice::from_raw_parts_mut(success, 4).copy_from_slice(&result.success);
            *residual = result.residual;
            G2qStatus::Ok
        }
        Err(err) => fail(&err),
    }
}
