//! C ABI for the qsphere engine.
//!
//! The surface mirrors `include/qsphere.h`, which is the contract other
//! languages bind against. Conventions:
//!
//! - `QsEngine` is an opaque handle created by [`qs_engine_new`] and released
//!   by [`qs_engine_free`]. A handle may be shared across threads.
//! - Every function returns a `QS_*` status code; output strings are
//!   NUL-terminated UTF-8, allocated by this library and released with
//!   [`qs_string_free`].
//! - On a non-zero status, [`qs_engine_last_error`] returns a message that
//!   stays valid until the next call through the same handle.

use qsphere::cmod::ActionTable;
use qsphere::expr::{self, Context, ElementValue};
use qsphere::galois::{self, PPElement, TauTable};
use qsphere::verify::{run_suite, SuiteId};
use qsphere::{cmod, s7, suq2};
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;

pub const QS_OK: c_int = 0;
pub const QS_NULL_ARGUMENT: c_int = 1;
pub const QS_INVALID_UTF8: c_int = 2;
pub const QS_PARSE_ERROR: c_int = 3;
pub const QS_DEGREE_CAP: c_int = 4;
pub const QS_SUITE_FAILED: c_int = 5;
pub const QS_BAD_ARGUMENT: c_int = 6;
pub const QS_INTERNAL: c_int = 7;

pub const QS_CONTEXT_P: c_int = 0;
pub const QS_CONTEXT_SU2: c_int = 1;
pub const QS_CONTEXT_C: c_int = 2;

/// Opaque engine handle: the action table, a tau memo table and the degree
/// cap, plus the per-handle last error message.
pub struct QsEngine {
    table: ActionTable,
    tau: TauTable,
    last_error: Mutex<Option<CString>>,
}

impl QsEngine {
    fn set_error(&self, message: String) {
        let c = CString::new(message.replace('\0', " "))
            .unwrap_or_else(|_| CString::new("error").unwrap());
        *self.last_error.lock().unwrap() = Some(c);
    }

    fn clear_error(&self) {
        *self.last_error.lock().unwrap() = None;
    }
}

/// Create an engine. `degree_cap` bounds the letter count of any computation;
/// pass 0 for the default.
#[no_mangle]
pub extern "C" fn qs_engine_new(degree_cap: usize) -> *mut QsEngine {
    let cap = if degree_cap == 0 {
        s7::DEFAULT_DEGREE_CAP
    } else {
        degree_cap
    };
    Box::into_raw(Box::new(QsEngine {
        table: ActionTable::standard(),
        tau: TauTable::with_degree_cap(cap),
        last_error: Mutex::new(None),
    }))
}

/// Release an engine created by [`qs_engine_new`].
///
/// # Safety
/// `engine` must be a pointer returned by `qs_engine_new` that has not been
/// freed already, or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_engine_free(engine: *mut QsEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// The last error message recorded on this handle, or NULL. Valid until the
/// next call through the same handle.
///
/// # Safety
/// `engine` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_engine_last_error(engine: *const QsEngine) -> *const c_char {
    if engine.is_null() {
        return std::ptr::null();
    }
    let guard = (*engine).last_error.lock().unwrap();
    match &*guard {
        Some(c) => c.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter of this
/// library and not freed already, or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(engine: &QsEngine, p: *const c_char) -> Result<&'a str, c_int> {
    if p.is_null() {
        engine.set_error("null string argument".to_string());
        return Err(QS_NULL_ARGUMENT);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        engine.set_error("string argument is not valid UTF-8".to_string());
        QS_INVALID_UTF8
    })
}

unsafe fn write_out(engine: &QsEngine, out: *mut *mut c_char, text: String) -> c_int {
    if out.is_null() {
        engine.set_error("null output pointer".to_string());
        return QS_NULL_ARGUMENT;
    }
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            QS_OK
        }
        Err(_) => {
            engine.set_error("output contained an interior NUL".to_string());
            QS_INTERNAL
        }
    }
}

fn guard<F: FnOnce() -> c_int>(engine: &QsEngine, f: F) -> c_int {
    engine.clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(rc) => rc,
        Err(_) => {
            engine.set_error("internal panic".to_string());
            QS_INTERNAL
        }
    }
}

fn context_from(code: c_int) -> Option<Context> {
    match code {
        QS_CONTEXT_P => Some(Context::P),
        QS_CONTEXT_SU2 => Some(Context::Su2),
        QS_CONTEXT_C => Some(Context::C),
        _ => None,
    }
}

fn over_cap(engine: &QsEngine, p: &s7::PElement) -> bool {
    s7::degree(p).is_some_and(|d| d > engine.tau.degree_cap())
}

/// Normalize `src` in the given context and return its canonical rendering.
///
/// # Safety
/// `engine` must be a live handle; `src` a NUL-terminated string; `out` a
/// valid pointer to receive the result.
#[no_mangle]
pub unsafe extern "C" fn qs_nf(
    engine: *mut QsEngine,
    context: c_int,
    src: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if engine.is_null() {
        return QS_NULL_ARGUMENT;
    }
    let e = &*engine;
    guard(e, || {
        let Some(ctx) = context_from(context) else {
            e.set_error(format!("unknown context code {}", context));
            return QS_BAD_ARGUMENT;
        };
        let src = match read_str(e, src) {
            Ok(s) => s,
            Err(rc) => return rc,
        };
        match expr::parse_element(src, ctx) {
            Ok(ElementValue::P(p)) => {
                if over_cap(e, &p) {
                    e.set_error("input exceeds the degree cap".to_string());
                    return QS_DEGREE_CAP;
                }
                write_out(e, out, s7::render_element(&p))
            }
            Ok(ElementValue::Su2(x)) => write_out(e, out, suq2::render_element(&x)),
            Ok(ElementValue::C(c)) => write_out(e, out, cmod::render_element(&c)),
            Err(err) => {
                e.set_error(err.to_string());
                QS_PARSE_ERROR
            }
        }
    })
}

/// Apply the right coaction to an element of P.
///
/// # Safety
/// Same contracts as [`qs_nf`].
#[no_mangle]
pub unsafe extern "C" fn qs_delta_r(
    engine: *mut QsEngine,
    src: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if engine.is_null() {
        return QS_NULL_ARGUMENT;
    }
    let e = &*engine;
    guard(e, || {
        let src = match read_str(e, src) {
            Ok(s) => s,
            Err(rc) => return rc,
        };
        match expr::parse_p(src) {
            Ok(p) => {
                if over_cap(e, &p) {
                    e.set_error("input exceeds the degree cap".to_string());
                    return QS_DEGREE_CAP;
                }
                let d = galois::delta_r(&p, &e.table);
                write_out(e, out, galois::render_pc(&d))
            }
            Err(err) => {
                e.set_error(err.to_string());
                QS_PARSE_ERROR
            }
        }
    })
}

/// Apply the canonical map to the representative `left (x) right`.
///
/// # Safety
/// Same contracts as [`qs_nf`].
#[no_mangle]
pub unsafe extern "C" fn qs_chi(
    engine: *mut QsEngine,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if engine.is_null() {
        return QS_NULL_ARGUMENT;
    }
    let e = &*engine;
    guard(e, || {
        let left = match read_str(e, left) {
            Ok(s) => s,
            Err(rc) => return rc,
        };
        let right = match read_str(e, right) {
            Ok(s) => s,
            Err(rc) => return rc,
        };
        let p1 = match expr::parse_p(left) {
            Ok(p) => p,
            Err(err) => {
                e.set_error(format!("left leg: {}", err));
                return QS_PARSE_ERROR;
            }
        };
        let p2 = match expr::parse_p(right) {
            Ok(p) => p,
            Err(err) => {
                e.set_error(format!("right leg: {}", err));
                return QS_PARSE_ERROR;
            }
        };
        if over_cap(e, &p1) || over_cap(e, &p2) {
            e.set_error("input exceeds the degree cap".to_string());
            return QS_DEGREE_CAP;
        }
        let mut rep = PPElement::zero();
        for (m1, c1) in p1.iter() {
            for (m2, c2) in p2.iter() {
                rep.add_term((*m1, *m2), c1 * c2);
            }
        }
        let image = galois::chi(&rep, &e.table);
        write_out(e, out, galois::render_pc(&image))
    })
}

/// Compute the translation map on the basis element r[k,m,n]. The value is
/// memoized inside the engine, so repeated and nearby queries are cheap.
///
/// # Safety
/// Same contracts as [`qs_nf`].
#[no_mangle]
pub unsafe extern "C" fn qs_tau(
    engine: *mut QsEngine,
    k: i64,
    m: u32,
    n: u32,
    out: *mut *mut c_char,
) -> c_int {
    if engine.is_null() {
        return QS_NULL_ARGUMENT;
    }
    let e = &*engine;
    guard(e, || match e.tau.tau(k, m, n) {
        Ok(value) => write_out(e, out, galois::render_pp(&value)),
        Err(err) => {
            e.set_error(err.to_string());
            QS_DEGREE_CAP
        }
    })
}

/// Run a verification suite ("S1".."S8"). Returns QS_OK when every case
/// passes and QS_SUITE_FAILED when the suite ran but found a counterexample;
/// the report text is returned either way.
///
/// # Safety
/// Same contracts as [`qs_nf`].
#[no_mangle]
pub unsafe extern "C" fn qs_run_suite(
    engine: *mut QsEngine,
    suite: *const c_char,
    max_degree: u32,
    seed: u64,
    out_report: *mut *mut c_char,
) -> c_int {
    if engine.is_null() {
        return QS_NULL_ARGUMENT;
    }
    let e = &*engine;
    guard(e, || {
        let suite = match read_str(e, suite) {
            Ok(s) => s,
            Err(rc) => return rc,
        };
        let id: SuiteId = match suite.parse() {
            Ok(id) => id,
            Err(err) => {
                e.set_error(err);
                return QS_BAD_ARGUMENT;
            }
        };
        match run_suite(id, max_degree, seed) {
            Ok(report) => {
                let ok = report.passed_all();
                let rc = write_out(e, out_report, report.to_text());
                if rc != QS_OK {
                    rc
                } else if ok {
                    QS_OK
                } else {
                    e.set_error(format!("suite {} found counterexamples", id));
                    QS_SUITE_FAILED
                }
            }
            Err(err) => {
                e.set_error(err.to_string());
                QS_DEGREE_CAP
            }
        }
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
