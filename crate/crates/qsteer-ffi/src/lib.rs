//! C ABI for the qsteer steering-analysis library.
//!
//! λ tables are opaque handles created and freed here; analysis results fill
//! plain C structs. Every fallible call returns a [`QsteerStatus`]; on
//! failure a thread-local message is retrievable with
//! [`qsteer_last_error_message`]. The generated header lives in
//! `include/qsteer.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use qsteer::cloning::{make_family, LambdaFamily, LambdaTable};
use qsteer::error::Error;
use qsteer::explorer::{run_optimize, run_threshold, sample_lambda, Objective};
use qsteer::qudit::Dimension;
use qsteer::ss::ss_report;
use qsteer::steering::{
    mutual_info_closed_form, no_cloning_report, q_profile, MeasurementSetting, SteeringReport,
};

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Result code of a qsteer call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QsteerStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Invalid dimension, index, table, or parameter.
    InvalidInput = 2,
    /// An internal bound check failed; report this as a bug.
    TheoremViolation = 3,
    /// An i/o operation failed.
    Io = 4,
}

fn status_of(err: &Error) -> QsteerStatus {
    match err {
        Error::TheoremViolation { .. } => QsteerStatus::TheoremViolation,
        Error::Io(_) => QsteerStatus::Io,
        _ => QsteerStatus::InvalidInput,
    }
}

fn fail(err: Error) -> QsteerStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

/// Which scenario a report describes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QsteerScenario {
    /// Alice measures her half of an entangled pair.
    Epr = 0,
    /// Alice sends a prepared qudit through the cloner.
    Ss = 1,
}

/// Optimization objective.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QsteerObjective {
    /// Maximize sum_ab + sum_ac.
    Total = 0,
    /// Maximize min(sum_ab, sum_ac) − log2 d.
    Exclusivity = 1,
}

/// Opaque λ table handle.
pub struct QsteerLambda {
    table: LambdaTable,
}

/// Steering analysis of one λ table. Mutual informations and bounds are in
/// bits; array index 0 is measurement setting 1 (computational basis),
/// index 1 is setting 2 (Fourier basis).
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct QsteerReport {
    pub d: usize,
    pub scenario: QsteerScenario,
    pub i_ab: [f64; 2],
    pub i_ac: [f64; 2],
    pub holevo_ac: [f64; 2],
    pub sum_ab: f64,
    pub sum_ac: f64,
    pub total: f64,
    pub bound_total: f64,
    pub steerable_ab: bool,
    pub steerable_ac: bool,
}

impl QsteerReport {
    fn from_report(report: &SteeringReport, scenario: QsteerScenario) -> Self {
        QsteerReport {
            d: report.d,
            scenario,
            i_ab: report.i_ab,
            i_ac: report.i_ac,
            holevo_ac: report.holevo_ac,
            sum_ab: report.sum_ab,
            sum_ac: report.sum_ac,
            total: report.total,
            bound_total: report.bound_total,
            steerable_ab: report.steerable_ab,
            steerable_ac: report.steerable_ac,
        }
    }
}

/// Outcome of an optimization run. Retrieve the maximizing table through the
/// `out_lambda` argument of [`qsteer_optimize`].
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct QsteerOptimizeResult {
    pub best_objective: f64,
    pub best_total: f64,
    pub bound: f64,
    pub gap: f64,
    pub iterations: u64,
    pub restarts: u32,
    pub converged: bool,
}

/// Depolarizing-family steering threshold.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct QsteerThreshold {
    /// Largest depolarizing weight that still certifies AB steering.
    pub p_star: f64,
    /// The two-setting AB sum at p_star (approximately log2 d).
    pub sum_ab: f64,
    /// The criterion bound log2 d.
    pub bound: f64,
}

/// Version of the underlying library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qsteer_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or null if the last
/// call succeeded. The pointer is valid until the next failing qsteer call
/// on the same thread.
#[no_mangle]
pub extern "C" fn qsteer_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

fn emit_lambda(table: LambdaTable, out: *mut *mut QsteerLambda) -> QsteerStatus {
    if out.is_null() {
        return QsteerStatus::NullPointer;
    }
    let handle = Box::into_raw(Box::new(QsteerLambda { table }));
    // SAFETY: out was checked non-null; the caller guarantees it is writable.
    unsafe { *out = handle };
    QsteerStatus::Ok
}

fn make_and_emit(d: usize, family: LambdaFamily, out: *mut *mut QsteerLambda) -> QsteerStatus {
    let dim = match Dimension::new(d) {
        Ok(dim) => dim,
        Err(e) => return fail(e),
    };
    match make_family(&family, dim) {
        Ok(table) => emit_lambda(table, out),
        Err(e) => fail(e),
    }
}

/// Create the delta table (λ₀₀ = 1).
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_delta(
    d: usize,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    make_and_emit(d, LambdaFamily::Delta, out)
}

/// Create the uniform table (all weights 1/d²).
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_uniform(
    d: usize,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    make_and_emit(d, LambdaFamily::Uniform, out)
}

/// Create a depolarizing table with weight `p` in [0, 1].
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_depolarizing(
    d: usize,
    p: f64,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    make_and_emit(d, LambdaFamily::Depolarizing(p), out)
}

/// Create a product-family table from two probability profiles of length d.
///
/// # Safety
/// `q1` and `q2` must point to `d` readable doubles each; `out` must point
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_product(
    d: usize,
    q1: *const f64,
    q2: *const f64,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    if q1.is_null() || q2.is_null() {
        return QsteerStatus::NullPointer;
    }
    // SAFETY: caller guarantees q1/q2 hold d readable doubles.
    let q1 = unsafe { std::slice::from_raw_parts(q1, d) }.to_vec();
    let q2 = unsafe { std::slice::from_raw_parts(q2, d) }.to_vec();
    make_and_emit(d, LambdaFamily::Product(q1, q2), out)
}

/// Create a table from `d*d` row-major weights (nonnegative, summing to 1
/// within 1e-10).
///
/// # Safety
/// `rows` must point to `d*d` readable doubles; `out` must point to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_from_rows(
    d: usize,
    rows: *const f64,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    if rows.is_null() {
        return QsteerStatus::NullPointer;
    }
    let dim = match Dimension::new(d) {
        Ok(dim) => dim,
        Err(e) => return fail(e),
    };
    // SAFETY: caller guarantees rows holds d*d readable doubles.
    let entries = unsafe { std::slice::from_raw_parts(rows, d * d) }.to_vec();
    match LambdaTable::new(dim, entries) {
        Ok(table) => emit_lambda(table, out),
        Err(e) => fail(e),
    }
}

/// Draw a seeded Dirichlet table: a pure function of (seed, index,
/// concentration), identical across platforms and thread counts.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_sample(
    d: usize,
    seed: u64,
    index: u64,
    concentration: f64,
    out: *mut *mut QsteerLambda,
) -> QsteerStatus {
    let dim = match Dimension::new(d) {
        Ok(dim) => dim,
        Err(e) => return fail(e),
    };
    match sample_lambda(dim, seed, index, concentration) {
        Ok(table) => emit_lambda(table, out),
        Err(e) => fail(e),
    }
}

/// Release a table handle. Null is ignored.
///
/// # Safety
/// `lambda` must be null or a pointer previously returned through a
/// `qsteer_lambda_*` out-parameter, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_free(lambda: *mut QsteerLambda) {
    if !lambda.is_null() {
        // SAFETY: caller guarantees the pointer came from Box::into_raw here.
        drop(unsafe { Box::from_raw(lambda) });
    }
}

/// Qudit dimension of a table, or 0 for null.
///
/// # Safety
/// `lambda` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_dim(lambda: *const QsteerLambda) -> usize {
    if lambda.is_null() {
        return 0;
    }
    // SAFETY: caller guarantees a live handle.
    unsafe { &*lambda }.table.dimension().get()
}

/// Copy the d*d row-major weights into `buffer`.
///
/// # Safety
/// `lambda` must be a live handle; `buffer` must hold `buffer_len` writable
/// doubles with `buffer_len >= d*d`.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_entries(
    lambda: *const QsteerLambda,
    buffer: *mut f64,
    buffer_len: usize,
) -> QsteerStatus {
    if lambda.is_null() || buffer.is_null() {
        return QsteerStatus::NullPointer;
    }
    // SAFETY: caller guarantees a live handle.
    let entries = unsafe { &*lambda }.table.entries();
    if buffer_len < entries.len() {
        set_last_error(format!(
            "buffer holds {buffer_len} entries, need {}",
            entries.len()
        ));
        return QsteerStatus::InvalidInput;
    }
    // SAFETY: caller guarantees buffer_len writable doubles.
    unsafe { std::ptr::copy_nonoverlapping(entries.as_ptr(), buffer, entries.len()) };
    QsteerStatus::Ok
}

/// Copy the correlation profile q₁ (setting 1) or q₂ (setting 2) into
/// `buffer` (`buffer_len >= d`).
///
/// # Safety
/// `lambda` must be a live handle; `buffer` must hold `buffer_len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn qsteer_lambda_q_profile(
    lambda: *const QsteerLambda,
    setting: u8,
    buffer: *mut f64,
    buffer_len: usize,
) -> QsteerStatus {
    if lambda.is_null() || buffer.is_null() {
        return QsteerStatus::NullPointer;
    }
    let setting = match MeasurementSetting::from_index(setting) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    // SAFETY: caller guarantees a live handle.
    let table = &unsafe { &*lambda }.table;
    let profile = q_profile(table, setting);
    let values = profile.values();
    if buffer_len < values.len() {
        set_last_error(format!(
            "buffer holds {buffer_len} entries, need {}",
            values.len()
        ));
        return QsteerStatus::InvalidInput;
    }
    // SAFETY: caller guarantees buffer_len writable doubles.
    unsafe { std::ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len()) };
    QsteerStatus::Ok
}

/// Closed-form Alice–Bob mutual information log₂d − H(qᵢ) for one setting
/// (1 or 2).
///
/// # Safety
/// `lambda` must be a live handle; `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn qsteer_mutual_info_closed_form(
    lambda: *const QsteerLambda,
    setting: u8,
    out: *mut f64,
) -> QsteerStatus {
    if lambda.is_null() || out.is_null() {
        return QsteerStatus::NullPointer;
    }
    let setting = match MeasurementSetting::from_index(setting) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    // SAFETY: caller guarantees a live handle and writable out.
    let table = &unsafe { &*lambda }.table;
    unsafe { *out = mutual_info_closed_form(table, setting) };
    QsteerStatus::Ok
}

/// Full steering analysis of a table in the chosen scenario.
///
/// # Safety
/// `lambda` must be a live handle; `out` must point to one writable
/// `QsteerReport`.
#[no_mangle]
pub unsafe extern "C" fn qsteer_report(
    lambda: *const QsteerLambda,
    scenario: QsteerScenario,
    out: *mut QsteerReport,
) -> QsteerStatus {
    if lambda.is_null() || out.is_null() {
        return QsteerStatus::NullPointer;
    }
    // SAFETY: caller guarantees a live handle.
    let table = &unsafe { &*lambda }.table;
    let report = match scenario {
        QsteerScenario::Epr => no_cloning_report(table),
        QsteerScenario::Ss => ss_report(table),
    };
    match report {
        Ok(report) => {
            // SAFETY: caller guarantees writable out.
            unsafe { *out = QsteerReport::from_report(&report, scenario) };
            QsteerStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Multi-start search for the largest objective value over the λ simplex.
/// On success `out_lambda`, when non-null, receives the maximizing table
/// (free it with [`qsteer_lambda_free`]).
///
/// # Safety
/// `out` must point to one writable `QsteerOptimizeResult`; `out_lambda`
/// must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qsteer_optimize(
    d: usize,
    objective: QsteerObjective,
    restarts: u32,
    seed: u64,
    out: *mut QsteerOptimizeResult,
    out_lambda: *mut *mut QsteerLambda,
) -> QsteerStatus {
    if out.is_null() {
        return QsteerStatus::NullPointer;
    }
    let dim = match Dimension::new(d) {
        Ok(dim) => dim,
        Err(e) => return fail(e),
    };
    let objective = match objective {
        QsteerObjective::Total => Objective::Total,
        QsteerObjective::Exclusivity => Objective::Exclusivity,
    };
    match run_optimize(dim, objective, restarts, seed) {
        Ok(result) => {
            // SAFETY: caller guarantees writable out.
            unsafe {
                *out = QsteerOptimizeResult {
                    best_objective: result.best_objective,
                    best_total: result.best_total,
                    bound: result.bound,
                    gap: result.gap,
                    iterations: result.iterations,
                    restarts: result.restarts,
                    converged: result.converged,
                };
            }
            if out_lambda.is_null() {
                return QsteerStatus::Ok;
            }
            match LambdaTable::from_rows(dim, &result.best_lambda) {
                Ok(table) => emit_lambda(table, out_lambda),
                Err(e) => fail(e),
            }
        }
        Err(e) => fail(e),
    }
}

/// Steering threshold of the depolarizing family at dimension d.
///
/// # Safety
/// `out` must point to one writable `QsteerThreshold`.
#[no_mangle]
pub unsafe extern "C" fn qsteer_threshold_depolarizing(
    d: usize,
    out: *mut QsteerThreshold,
) -> QsteerStatus {
    if out.is_null() {
        return QsteerStatus::NullPointer;
    }
    let dim = match Dimension::new(d) {
        Ok(dim) => dim,
        Err(e) => return fail(e),
    };
    match run_threshold(dim) {
        Ok(record) => {
            // SAFETY: caller guarantees writable out.
            unsafe {
                *out = QsteerThreshold {
                    p_star: record.p_star,
                    sum_ab: record.sum_ab,
                    bound: record.bound,
                };
            }
            QsteerStatus::Ok
        }
        Err(e) => fail(e),
    }
}
