use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ncloop_ffi::*;

struct Surface(*mut NcloopSurface);

impl Surface {
    fn new(genus: u32, boundaries: u32) -> Self {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { ncloop_surface_new(genus, boundaries, &mut s) }, NcloopStatus::Ok);
        Surface(s)
    }
}

impl Drop for Surface {
    fn drop(&mut self) {
        unsafe { ncloop_surface_free(self.0) }
    }
}

fn take(out: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { ncloop_string_free(out) };
    s
}

fn last_error() -> String {
    let p = ncloop_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

type Unary = unsafe extern "C" fn(*const NcloopSurface, *const c_char, NcloopFormat, *mut *mut c_char) -> NcloopStatus;

fn call(f: Unary, s: &Surface, input: &str, format: NcloopFormat) -> Result<String, (NcloopStatus, String)> {
    let input = CString::new(input).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { f(s.0, input.as_ptr(), format, &mut out) } {
        NcloopStatus::Ok => Ok(take(out)),
        status => Err((status, last_error())),
    }
}

#[test]
fn kappa_and_mu_match_the_cli() {
    let s = Surface::new(1, 2);
    let (l, r) = (CString::new("a1").unwrap(), CString::new("b1").unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { ncloop_kappa(s.0, l.as_ptr(), r.as_ptr(), NcloopFormat::Text, &mut out) };
    assert_eq!(st, NcloopStatus::Ok);
    assert_eq!(take(out), "b1 ⊗ a1");
    assert_eq!(call(ncloop_mu, &s, "d1", NcloopFormat::Text).unwrap(), "3·|1_0| ⊗ d1 − 2·d1 ⊗ |1_0|");
}

#[test]
fn unary_operations() {
    let s = Surface::new(1, 1);
    assert_eq!(call(ncloop_phi, &s, "a1", NcloopFormat::Text).unwrap(), "−|1_0| ⊗ a1 + 1_0 ⊗ |a1|");
    assert_eq!(call(ncloop_modular, &s, "a1 b1", NcloopFormat::Text).unwrap(), "0");
    assert_eq!(call(ncloop_delta, &s, "|a1 b1|", NcloopFormat::Text).unwrap(), "0");
    assert_eq!(call(ncloop_tdiv, &s, r#"{"a1":[["1_0","1_0",1]]}"#, NcloopFormat::Text).unwrap(), "|1_0| ⊗ a1^-1");
    assert_eq!(call(ncloop_div, &s, r#"{"a1":"1_0"}"#, NcloopFormat::Text).unwrap(), "|1_0| ⊗ |a1^-1|");
}

#[test]
fn json_format() {
    let s = Surface::new(1, 1);
    let js = call(ncloop_mu, &s, "d1", NcloopFormat::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["text"], "3·|1_0| ⊗ d1 − 2·d1 ⊗ |1_0|");
    assert_eq!(v["result"]["left"], serde_json::json!([["|1_0|", "d1", "3"]]));
}

#[test]
fn error_codes_and_messages() {
    let s = Surface::new(1, 1);
    let (st, msg) = call(ncloop_mu, &s, "g1 d1", NcloopFormat::Text).unwrap_err();
    assert_eq!(st, NcloopStatus::Parse);
    assert!(msg.contains("`g1` ends at object 0"), "{msg}");
    let (st, _) = call(ncloop_tdiv, &s, r#"{"d1":[["1_0","1_0",1]]}"#, NcloopFormat::Text).unwrap_err();
    assert_eq!(st, NcloopStatus::InvalidTable);

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ncloop_surface_new(0, 0, &mut h) }, NcloopStatus::InvalidSurface);
    assert!(h.is_null());
    assert_eq!(unsafe { ncloop_surface_new(1, 1, ptr::null_mut()) }, NcloopStatus::NullArgument);

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ncloop_mu(ptr::null(), c"a1".as_ptr(), NcloopFormat::Text, &mut out) },
        NcloopStatus::NullArgument
    );
    assert_eq!(unsafe { ncloop_mu(s.0, ptr::null(), NcloopFormat::Text, &mut out) }, NcloopStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { ncloop_mu(s.0, bad.as_ptr().cast(), NcloopFormat::Text, &mut out) },
        NcloopStatus::InvalidUtf8
    );

    assert!(call(ncloop_mu, &s, "a1", NcloopFormat::Text).is_ok());
    assert!(ncloop_last_error().is_null(), "success clears the last error");
}

#[test]
fn verify_reports() {
    let s = Surface::new(1, 1);
    let mut out = ptr::null_mut();
    let st = unsafe { ncloop_verify(s.0, c"main-theorem".as_ptr(), 3, 20, 5, &mut out) };
    assert_eq!(st, NcloopStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["suite"], "main-theorem");
    assert_eq!(v["seed"], 3);

    let st = unsafe { ncloop_verify(s.0, c"all".as_ptr(), 3, 10, 4, &mut out) };
    assert_eq!(st, NcloopStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);

    let st = unsafe { ncloop_verify(s.0, c"nope".as_ptr(), 0, 1, 1, &mut out) };
    assert_eq!(st, NcloopStatus::UnknownSuite);
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        ncloop_surface_free(ptr::null_mut());
        ncloop_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/ncloop.h");
    for name in [
        "ncloop_surface_new",
        "ncloop_surface_free",
        "ncloop_string_free",
        "ncloop_last_error",
        "ncloop_kappa",
        "ncloop_mu",
        "ncloop_phi",
        "ncloop_modular",
        "ncloop_delta",
        "ncloop_tdiv",
        "ncloop_div",
        "ncloop_verify",
        "NCLOOP_STATUS_VERIFICATION_FAILED",
        "typedef struct NcloopSurface NcloopSurface;",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}
