//! Exercises every exported function through the C ABI conventions: raw
//! pointers in, status codes and allocated strings out.

use qsphere_capi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;

fn run(engine: *mut QsEngine, f: impl FnOnce(*mut *mut c_char) -> i32) -> (i32, Option<String>) {
    let mut out: *mut c_char = std::ptr::null_mut();
    let rc = f(&mut out);
    let text = if out.is_null() {
        None
    } else {
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { qs_string_free(out) };
        Some(s)
    };
    let _ = engine;
    (rc, text)
}

fn last_error(engine: *mut QsEngine) -> String {
    let p = unsafe { qs_engine_last_error(engine) };
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
    }
}

#[test]
fn full_surface_smoke() {
    let engine = qs_engine_new(0);
    assert!(!engine.is_null());

    // version string is static and non-empty
    let v = unsafe { CStr::from_ptr(qs_version()) }.to_str().unwrap();
    assert!(!v.is_empty());

    // nf in all three contexts
    let src = CString::new("z2 z1").unwrap();
    let (rc, text) = run(engine, |out| unsafe {
        qs_nf(engine, QS_CONTEXT_P, src.as_ptr(), out)
    });
    assert_eq!(rc, QS_OK);
    assert_eq!(text.as_deref(), Some("q^-1*z1 z2"));

    let src = CString::new("d a").unwrap();
    let (rc, text) = run(engine, |out| unsafe {
        qs_nf(engine, QS_CONTEXT_SU2, src.as_ptr(), out)
    });
    assert_eq!(rc, QS_OK);
    assert_eq!(text.as_deref(), Some("1 + q^-1*b c"));

    let src = CString::new("r[1,0,0]").unwrap();
    let (rc, text) = run(engine, |out| unsafe {
        qs_nf(engine, QS_CONTEXT_C, src.as_ptr(), out)
    });
    assert_eq!(rc, QS_OK);
    assert_eq!(text.as_deref(), Some("r[1,0,0]"));

    // parse errors carry a message on the handle
    let src = CString::new("z5").unwrap();
    let (rc, _) = run(engine, |out| unsafe {
        qs_nf(engine, QS_CONTEXT_P, src.as_ptr(), out)
    });
    assert_eq!(rc, QS_PARSE_ERROR);
    assert!(last_error(engine).contains("unknown token"));

    // coaction of a coinvariant is trivial
    let src = CString::new("z1 z4* - z2 z3*").unwrap();
    let (rc, text) = run(engine, |out| unsafe {
        qs_delta_r(engine, src.as_ptr(), out)
    });
    assert_eq!(rc, QS_OK);
    let text = text.unwrap();
    assert!(text.contains("r[0,0,0]"));

    // chi of 1 (x) 1
    let one = CString::new("1").unwrap();
    let (rc, text) = run(engine, |out| unsafe {
        qs_chi(engine, one.as_ptr(), one.as_ptr(), out)
    });
    assert_eq!(rc, QS_OK);
    assert_eq!(text.as_deref(), Some("1 ⊗ r[0,0,0]"));

    // tau base case and a recursion step
    let (rc, text) = run(engine, |out| unsafe { qs_tau(engine, 0, 0, 0, out) });
    assert_eq!(rc, QS_OK);
    assert_eq!(text.as_deref(), Some("1 ⊗ 1"));
    let (rc, text) = run(engine, |out| unsafe { qs_tau(engine, 1, 0, 0, out) });
    assert_eq!(rc, QS_OK);
    assert!(text.unwrap().contains("⊗"));

    // the degree cap surfaces as a status code
    let small = qs_engine_new(2);
    let (rc, _) = run(small, |out| unsafe { qs_tau(small, 3, 0, 0, out) });
    assert_eq!(rc, QS_DEGREE_CAP);
    assert!(last_error(small).contains("degree cap"));
    unsafe { qs_engine_free(small) };

    // a suite runs and reports
    let suite = CString::new("S4").unwrap();
    let (rc, report) = run(engine, |out| unsafe {
        qs_run_suite(engine, suite.as_ptr(), 1, 0, out)
    });
    assert_eq!(rc, QS_OK);
    let report = report.unwrap();
    assert!(report.contains("status: PASS"));

    // unknown suite id
    let suite = CString::new("S9").unwrap();
    let (rc, _) = run(engine, |out| unsafe {
        qs_run_suite(engine, suite.as_ptr(), 1, 0, out)
    });
    assert_eq!(rc, QS_BAD_ARGUMENT);

    // null arguments are rejected, not dereferenced
    let (rc, _) = run(engine, |out| unsafe {
        qs_nf(engine, QS_CONTEXT_P, std::ptr::null(), out)
    });
    assert_eq!(rc, QS_NULL_ARGUMENT);

    unsafe { qs_engine_free(engine) };
}

#[test]
fn header_and_library_agree_on_status_codes() {
    // parse the enum values out of the committed header and compare
    let header = include_str!("../include/qsphere.h");
    for (name, value) in [
        ("QS_OK", QS_OK),
        ("QS_NULL_ARGUMENT", QS_NULL_ARGUMENT),
        ("QS_INVALID_UTF8", QS_INVALID_UTF8),
        ("QS_PARSE_ERROR", QS_PARSE_ERROR),
        ("QS_DEGREE_CAP", QS_DEGREE_CAP),
        ("QS_SUITE_FAILED", QS_SUITE_FAILED),
        ("QS_BAD_ARGUMENT", QS_BAD_ARGUMENT),
        ("QS_INTERNAL", QS_INTERNAL),
        ("QS_CONTEXT_P", QS_CONTEXT_P),
        ("QS_CONTEXT_SU2", QS_CONTEXT_SU2),
        ("QS_CONTEXT_C", QS_CONTEXT_C),
    ] {
        let needle = format!("{} = {}", name, value);
        assert!(
            header.contains(&needle),
            "header does not define `{}`",
            needle
        );
    }
    // every exported function is declared
    for symbol in [
        "qs_engine_new",
        "qs_engine_free",
        "qs_engine_last_error",
        "qs_string_free",
        "qs_nf",
        "qs_delta_r",
        "qs_chi",
        "qs_tau",
        "qs_run_suite",
        "qs_version",
    ] {
        assert!(header.contains(symbol), "header missing `{}`", symbol);
    }
}
