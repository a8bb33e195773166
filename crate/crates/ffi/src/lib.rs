//! C ABI for gconverge.
//!
//! Objects cross the boundary as opaque handles created by a `*_parse`
//! function and released by the matching `*_free`. Every fallible call
//! returns a [`GcStatus`]; on failure the message is available from
//! [`gc_last_error`] on the same thread until the next failing call.
//! Strings returned through out-pointers are owned by the caller and must
//! be released with [`gc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gconverge::suites::{run_suite, SuiteParams};
use gconverge::{parse, topology, Error, LimitResult, MethodSpec, RSet, SeqSpec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Unsupported = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcLimitKind {
    /// Exact limit.
    Converges = 0,
    /// Limit established from sampled evidence.
    ConvergesApprox = 1,
    Diverges = 2,
    Unknown = 3,
}

/// Opaque interval union.
pub struct GcSet(RSet);

/// Opaque closed-form sequence.
pub struct GcSeq(SeqSpec);

/// Opaque G-method.
pub struct GcMethod(MethodSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match &e {
            Error::Parse { .. } => GcStatus::Parse,
            Error::Precondition(_) | Error::Sequence(_) => GcStatus::Precondition,
            Error::Unsupported(_) => GcStatus::Unsupported,
            Error::Internal(_) => GcStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal error: {msg}"));
            GcStatus::Internal
        }
    }
}

unsafe fn input<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(GcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// Message of the last failure on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a set expression such as `[0,1] u (2,3]`.
///
/// # Safety
/// `src` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_set_parse(src: *const c_char, out: *mut *mut GcSet) -> GcStatus {
    guard(|| {
        let set = parse::parse_set(input(src, "src")?)?;
        put(out, Box::into_raw(Box::new(GcSet(set))), "out")
    })
}

/// # Safety
/// `set` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gc_set_free(set: *mut GcSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Canonical text of a set.
///
/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_set_to_string(set: *const GcSet, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let s = handle(set, "set")?;
        put(out, owned_string(s.0.to_string()), "out")
    })
}

/// Membership of a rational given as text, e.g. `3/4` or `-0.5`.
///
/// # Safety
/// `set` must be a live handle, `point` a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_set_contains(set: *const GcSet, point: *const c_char, out: *mut bool) -> GcStatus {
    guard(|| {
        let s = handle(set, "set")?;
        let p = parse::parse_rat(input(point, "point")?)?;
        put(out, s.0.contains(&p), "out")
    })
}

/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn gc_set_equal(a: *const GcSet, b: *const GcSet, out: *mut bool) -> GcStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        put(out, a.0 == b.0, "out")
    })
}

/// Parses a method: `lim`, `cesaro`, `stat`, `prod(m)` or a `matrix:` form.
/// Matrix files are not read through this interface.
///
/// # Safety
/// `src` must be a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_method_parse(src: *const c_char, out: *mut *mut GcMethod) -> GcStatus {
    guard(|| {
        let m = parse::parse_method(input(src, "src")?)?;
        put(out, Box::into_raw(Box::new(GcMethod(m))), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gc_method_free(m: *mut GcMethod) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_method_to_string(m: *const GcMethod, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let m = handle(m, "method")?;
        put(out, owned_string(m.0.to_string()), "out")
    })
}

/// Parses a closed-form sequence such as `per(prefix=[]; cycle=[0,1])`.
///
/// # Safety
/// `src` must be a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_seq_parse(src: *const c_char, out: *mut *mut GcSeq) -> GcStatus {
    guard(|| {
        let s = parse::parse_seq(input(src, "src")?)?;
        put(out, Box::into_raw(Box::new(GcSeq(s))), "out")
    })
}

/// # Safety
/// `s` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gc_seq_free(s: *mut GcSeq) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_seq_to_string(s: *const GcSeq, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let s = handle(s, "seq")?;
        put(out, owned_string(s.0.to_string()), "out")
    })
}

/// G-limit of a sequence. `value` receives the limit (or the estimate for
/// `Unknown`) as text, or null on divergence.
///
/// # Safety
/// Handles must be live and both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn gc_limit(
    m: *const GcMethod,
    s: *const GcSeq,
    kind: *mut GcLimitKind,
    value: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let (m, s) = (handle(m, "method")?, handle(s, "seq")?);
        if value.is_null() {
            return Err(null("value"));
        }
        let (k, v) = match m.0.g_limit(&s.0) {
            LimitResult::Converges { value, exact: true } => (GcLimitKind::Converges, Some(value)),
            LimitResult::Converges { value, exact: false } => (GcLimitKind::ConvergesApprox, Some(value)),
            LimitResult::Diverges => (GcLimitKind::Diverges, None),
            LimitResult::Unknown { estimate, .. } => (GcLimitKind::Unknown, Some(estimate)),
        };
        put(kind, k, "kind")?;
        put(value, v.map_or(ptr::null_mut(), |v| owned_string(v.to_string())), "value")
    })
}

unsafe fn set_op(
    m: *const GcMethod,
    a: *const GcSet,
    out: *mut *mut GcSet,
    op: impl FnOnce(&MethodSpec, &RSet) -> gconverge::Result<RSet>,
) -> GcStatus {
    guard(|| {
        let (m, a) = (handle(m, "method")?, handle(a, "set")?);
        let r = op(&m.0, &a.0)?;
        put(out, Box::into_raw(Box::new(GcSet(r))), "out")
    })
}

unsafe fn set_pred(
    m: *const GcMethod,
    a: *const GcSet,
    out: *mut bool,
    pred: impl FnOnce(&MethodSpec, &RSet) -> gconverge::Result<bool>,
) -> GcStatus {
    guard(|| {
        let (m, a) = (handle(m, "method")?, handle(a, "set")?);
        let r = pred(&m.0, &a.0)?;
        put(out, r, "out")
    })
}

/// G-hull of a set; the result is a new handle.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_hull(m: *const GcMethod, a: *const GcSet, out: *mut *mut GcSet) -> GcStatus {
    set_op(m, a, out, topology::hull)
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_kernel(m: *const GcMethod, a: *const GcSet, out: *mut *mut GcSet) -> GcStatus {
    set_op(m, a, out, topology::kernel)
}

/// Smallest G-closed superset.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_closure(m: *const GcMethod, a: *const GcSet, out: *mut *mut GcSet) -> GcStatus {
    set_op(m, a, out, |m, a| Ok(topology::g_closure(m, a)?.set))
}

/// Largest G-open subset.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_interior(m: *const GcMethod, a: *const GcSet, out: *mut *mut GcSet) -> GcStatus {
    set_op(m, a, out, |m, a| Ok(topology::g_interior(m, a)?.set))
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_is_closed(m: *const GcMethod, a: *const GcSet, out: *mut bool) -> GcStatus {
    set_pred(m, a, out, topology::is_g_closed)
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_is_open(m: *const GcMethod, a: *const GcSet, out: *mut bool) -> GcStatus {
    set_pred(m, a, out, topology::is_g_open)
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_is_connected(m: *const GcMethod, a: *const GcSet, out: *mut bool) -> GcStatus {
    set_pred(m, a, out, |m, a| Ok(topology::is_g_connected(m, a)?.connected))
}

/// Runs a named suite. `trials` of 0 selects the suite default and `m` may
/// be null. `json` receives the report; `passed` its verdict.
///
/// # Safety
/// `name` must be a valid string, `m` null or live, out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn gc_run_suite(
    name: *const c_char,
    m: *const GcMethod,
    seed: u64,
    trials: usize,
    json: *mut *mut c_char,
    passed: *mut bool,
) -> GcStatus {
    guard(|| {
        let name = input(name, "name")?;
        if json.is_null() || passed.is_null() {
            return Err(null("out"));
        }
        let params = SuiteParams {
            trials: (trials > 0).then_some(trials),
            seed,
            method: m.as_ref().map(|m| m.0.clone()),
            ..SuiteParams::default()
        };
        let report = run_suite(name, &params)?;
        put(passed, report.passed, "passed")?;
        put(json, owned_string(report.to_json()), "json")
    })
}
