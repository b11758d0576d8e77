//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers and status codes.

use std::ffi::CStr;
use std::ptr;

use qsteer_ffi::*;

fn make(f: impl FnOnce(*mut *mut QsteerLambda) -> QsteerStatus) -> *mut QsteerLambda {
    let mut handle: *mut QsteerLambda = ptr::null_mut();
    let status = f(&mut handle);
    assert_eq!(status, QsteerStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(qsteer_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn delta_report_saturates() {
    unsafe {
        let lam = make(|out| qsteer_lambda_delta(3, out));
        assert_eq!(qsteer_lambda_dim(lam), 3);

        let mut report = std::mem::zeroed::<QsteerReport>();
        assert_eq!(
            qsteer_report(lam, QsteerScenario::Epr, &mut report),
            QsteerStatus::Ok
        );
        assert_eq!(report.d, 3);
        assert!((report.sum_ab - 2.0 * 3.0f64.log2()).abs() < 1e-9);
        assert!(report.sum_ac.abs() < 1e-9);
        assert!(report.steerable_ab);
        assert!(!report.steerable_ac);

        let mut ss = std::mem::zeroed::<QsteerReport>();
        assert_eq!(
            qsteer_report(lam, QsteerScenario::Ss, &mut ss),
            QsteerStatus::Ok
        );
        assert!((ss.total - report.total).abs() < 1e-9);

        qsteer_lambda_free(lam);
    }
}

#[test]
fn entries_and_profiles_round_trip() {
    unsafe {
        let lam = make(|out| qsteer_lambda_depolarizing(2, 0.5, out));
        let mut entries = [0.0f64; 4];
        assert_eq!(
            qsteer_lambda_entries(lam, entries.as_mut_ptr(), entries.len()),
            QsteerStatus::Ok
        );
        assert!((entries[0] - 0.625).abs() < 1e-12);
        assert!((entries[1] - 0.125).abs() < 1e-12);

        let mut q = [0.0f64; 2];
        for setting in [1u8, 2] {
            assert_eq!(
                qsteer_lambda_q_profile(lam, setting, q.as_mut_ptr(), q.len()),
                QsteerStatus::Ok
            );
            assert!((q[0] - 0.75).abs() < 1e-12);
            assert!((q[1] - 0.25).abs() < 1e-12);
        }

        // a rebuilt table from those entries reports identically
        let rebuilt = make(|out| qsteer_lambda_from_rows(2, entries.as_ptr(), out));
        let mut mi = 0.0f64;
        assert_eq!(
            qsteer_mutual_info_closed_form(rebuilt, 1, &mut mi),
            QsteerStatus::Ok
        );
        assert!((mi - 0.18872187554086717).abs() < 1e-12);

        qsteer_lambda_free(lam);
        qsteer_lambda_free(rebuilt);
    }
}

#[test]
fn product_family_and_sampling() {
    unsafe {
        let q1 = [1.0, 0.0];
        let q2 = [0.5, 0.5];
        let lam = make(|out| qsteer_lambda_product(2, q1.as_ptr(), q2.as_ptr(), out));
        let mut report = std::mem::zeroed::<QsteerReport>();
        assert_eq!(
            qsteer_report(lam, QsteerScenario::Epr, &mut report),
            QsteerStatus::Ok
        );
        assert!((report.sum_ab - 1.0).abs() < 1e-9);
        assert!((report.sum_ac - 1.0).abs() < 1e-9);
        qsteer_lambda_free(lam);

        let a = make(|out| qsteer_lambda_sample(2, 7, 0, 1.0, out));
        let b = make(|out| qsteer_lambda_sample(2, 7, 0, 1.0, out));
        let mut ea = [0.0f64; 4];
        let mut eb = [0.0f64; 4];
        assert_eq!(
            qsteer_lambda_entries(a, ea.as_mut_ptr(), 4),
            QsteerStatus::Ok
        );
        assert_eq!(
            qsteer_lambda_entries(b, eb.as_mut_ptr(), 4),
            QsteerStatus::Ok
        );
        assert_eq!(ea, eb);
        qsteer_lambda_free(a);
        qsteer_lambda_free(b);
    }
}

#[test]
fn optimize_and_threshold() {
    unsafe {
        let mut result = std::mem::zeroed::<QsteerOptimizeResult>();
        let mut best: *mut QsteerLambda = ptr::null_mut();
        assert_eq!(
            qsteer_optimize(2, QsteerObjective::Total, 3, 11, &mut result, &mut best),
            QsteerStatus::Ok
        );
        assert!(result.best_total >= 2.0 - 1e-6);
        assert!(result.gap >= -1e-6);
        assert!(!best.is_null());
        assert_eq!(qsteer_lambda_dim(best), 2);
        qsteer_lambda_free(best);

        let mut threshold = std::mem::zeroed::<QsteerThreshold>();
        assert_eq!(
            qsteer_threshold_depolarizing(2, &mut threshold),
            QsteerStatus::Ok
        );
        assert!((threshold.p_star - 0.22006).abs() < 1e-4);
        assert!((threshold.sum_ab - 1.0).abs() < 1e-6);
        assert_eq!(threshold.bound, 1.0);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut handle: *mut QsteerLambda = ptr::null_mut();
        assert_eq!(
            qsteer_lambda_depolarizing(2, 1.5, &mut handle),
            QsteerStatus::InvalidInput
        );
        assert!(handle.is_null());
        let message = qsteer_last_error_message();
        assert!(!message.is_null());
        let text = CStr::from_ptr(message).to_str().unwrap();
        assert!(text.contains("1.5"), "unexpected message: {text}");

        assert_eq!(
            qsteer_lambda_delta(1, &mut handle),
            QsteerStatus::InvalidInput
        );
        assert_eq!(
            qsteer_lambda_delta(65, &mut handle),
            QsteerStatus::InvalidInput
        );

        // null pointers are rejected without touching memory
        assert_eq!(
            qsteer_lambda_delta(2, ptr::null_mut()),
            QsteerStatus::NullPointer
        );
        assert_eq!(qsteer_lambda_dim(ptr::null()), 0);

        // short buffers are rejected
        let lam = make(|out| qsteer_lambda_uniform(2, out));
        let mut small = [0.0f64; 2];
        assert_eq!(
            qsteer_lambda_entries(lam, small.as_mut_ptr(), small.len()),
            QsteerStatus::InvalidInput
        );
        // bad setting index
        let mut q = [0.0f64; 2];
        assert_eq!(
            qsteer_lambda_q_profile(lam, 3, q.as_mut_ptr(), 2),
            QsteerStatus::InvalidInput
        );
        qsteer_lambda_free(lam);
        qsteer_lambda_free(ptr::null_mut()); // null free is a no-op
    }
}

#[test]
fn generated_header_exposes_the_surface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qsteer.h"))
        .expect("build script wrote include/qsteer.h");
    for needle in [
        "QSTEER_H",
        "typedef struct QsteerLambda QsteerLambda;",
        "QsteerStatus qsteer_report(",
        "qsteer_lambda_free",
        "QSTEER_STATUS_THEOREM_VIOLATION",
        "qsteer_threshold_depolarizing",
    ] {
        assert!(header.contains(needle), "header missing `{needle}`");
    }
}
