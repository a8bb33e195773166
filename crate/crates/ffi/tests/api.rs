use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gconverge_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gc_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(gc_last_error()).to_str().unwrap().to_string()
}

unsafe fn set(src: &str) -> *mut GcSet {
    let mut out = ptr::null_mut();
    assert_eq!(gc_set_parse(cs(src).as_ptr(), &mut out), GcStatus::Ok, "{src}");
    out
}

unsafe fn method(src: &str) -> *mut GcMethod {
    let mut out = ptr::null_mut();
    assert_eq!(gc_method_parse(cs(src).as_ptr(), &mut out), GcStatus::Ok, "{src}");
    out
}

unsafe fn text(s: *const GcSet) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(gc_set_to_string(s, &mut out), GcStatus::Ok);
    take(out)
}

#[test]
fn hull_and_kernel() {
    unsafe {
        let a = set("(0,1) u (2,3)");
        let ces = method("cesaro");
        let lim = method("lim");
        let mut h = ptr::null_mut();
        assert_eq!(gc_hull(ces, a, &mut h), GcStatus::Ok);
        assert_eq!(text(h), "[0,3]");
        gc_set_free(h);
        assert_eq!(gc_hull(lim, a, &mut h), GcStatus::Ok);
        assert_eq!(text(h), "[0,1] u [2,3]");
        gc_set_free(h);
        let mut k = ptr::null_mut();
        assert_eq!(gc_kernel(ces, a, &mut k), GcStatus::Ok);
        assert_eq!(text(k), "empty");
        gc_set_free(k);

        let mut b = false;
        assert_eq!(gc_is_open(lim, a, &mut b), GcStatus::Ok);
        assert!(b);
        assert_eq!(gc_is_closed(lim, a, &mut b), GcStatus::Ok);
        assert!(!b);
        assert_eq!(gc_is_connected(lim, a, &mut b), GcStatus::Ok);
        assert!(!b);
        assert_eq!(gc_set_contains(a, cs("1/2").as_ptr(), &mut b), GcStatus::Ok);
        assert!(b);

        let mut c = ptr::null_mut();
        assert_eq!(gc_closure(ces, a, &mut c), GcStatus::Ok);
        let expect = set("[0,3]");
        assert_eq!(gc_set_equal(c, expect, &mut b), GcStatus::Ok);
        assert!(b);
        gc_set_free(c);
        gc_set_free(expect);
        assert_eq!(gc_interior(ces, a, &mut c), GcStatus::Ok);
        assert_eq!(text(c), "empty");
        gc_set_free(c);

        gc_set_free(a);
        gc_method_free(ces);
        gc_method_free(lim);
    }
}

#[test]
fn limits() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gc_seq_parse(cs("per(prefix=[]; cycle=[0,1])").as_ptr(), &mut s), GcStatus::Ok);
        let mut kind = GcLimitKind::Unknown;
        let mut value = ptr::null_mut();
        let ces = method("cesaro");
        assert_eq!(gc_limit(ces, s, &mut kind, &mut value), GcStatus::Ok);
        assert_eq!(kind, GcLimitKind::Converges);
        assert_eq!(take(value), "1/2");
        let lim = method("lim");
        assert_eq!(gc_limit(lim, s, &mut kind, &mut value), GcStatus::Ok);
        assert_eq!(kind, GcLimitKind::Diverges);
        assert!(value.is_null());
        let mut t = ptr::null_mut();
        assert_eq!(gc_seq_to_string(s, &mut t), GcStatus::Ok);
        assert_eq!(take(t), "per(prefix=[]; cycle=[0,1])");
        let mut name = ptr::null_mut();
        assert_eq!(gc_method_to_string(ces, &mut name), GcStatus::Ok);
        assert!(!take(name).is_empty());
        gc_seq_free(s);
        gc_method_free(ces);
        gc_method_free(lim);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gc_set_parse(cs("[0,").as_ptr(), &mut s), GcStatus::Parse);
        assert!(s.is_null());
        assert!(last_error().contains("parse error"));

        assert_eq!(gc_set_parse(ptr::null(), &mut s), GcStatus::NullPointer);
        assert_eq!(gc_set_parse(cs("R").as_ptr(), ptr::null_mut()), GcStatus::NullPointer);

        let bad = [0xffu8, 0];
        assert_eq!(gc_set_parse(bad.as_ptr().cast(), &mut s), GcStatus::InvalidUtf8);

        let mut q = ptr::null_mut();
        assert_eq!(
            gc_seq_parse(cs("spike(base=0; spike=1; where=ap(0,1))").as_ptr(), &mut q),
            GcStatus::Parse
        );
        assert!(last_error().contains("ap(0,1)"));

        let banded = method("matrix:banded(offset=0;coef=1)");
        let a = set("[0,1]");
        let mut h = ptr::null_mut();
        assert_eq!(gc_hull(banded, a, &mut h), GcStatus::Unsupported);
        assert!(last_error().contains("oracle"));

        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            gc_run_suite(cs("nope").as_ptr(), ptr::null(), 1, 0, &mut json, &mut passed),
            GcStatus::Precondition
        );
        gc_set_free(a);
        gc_method_free(banded);
        gc_set_free(ptr::null_mut());
        gc_string_free(ptr::null_mut());
    }
}

#[test]
fn suite_report() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            gc_run_suite(cs("ex33").as_ptr(), ptr::null(), 1, 0, &mut json, &mut passed),
            GcStatus::Ok
        );
        assert!(passed);
        let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(report["schema"], 1);
        assert_eq!(report["passed"], true);
    }
}
