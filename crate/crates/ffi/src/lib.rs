//! C ABI for the `ncloop` engine.
//!
//! Every entry point returns an [`NcloopStatus`]; on failure the message is
//! available from [`ncloop_last_error`] on the same thread. Strings handed
//! out by the library are owned by the caller and must be released with
//! [`ncloop_string_free`]. Surfaces are opaque handles created by
//! [`ncloop_surface_new`] and released by [`ncloop_surface_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncloop::bracket::ad_e;
use ncloop::divergence::{delta_map, div, modular, phi, tdiv};
use ncloop::error::Error;
use ncloop::forms::nabla_c;
use ncloop::io::{parse_derivation_table, parse_theta_table, tensor_json, trace_tensor_json, triple_json};
use ncloop::mu::MuEngine;
use ncloop::parse::{parse_elem, parse_trace};
use ncloop::surface::{make_surface, Presentation, SurfaceSignature};
use ncloop::verify::{run_suite, SuiteConfig};
use serde_json::Value;

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcloopStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed path, trace or element expression.
    Parse = 3,
    /// Degenerate surface or tensor dimension.
    InvalidSurface = 4,
    /// Malformed or ill-typed operator table.
    InvalidTable = 5,
    Unsupported = 6,
    UnknownSuite = 7,
    /// A verification suite ran and at least one case failed.
    VerificationFailed = 8,
    Panic = 9,
}

/// Output encoding for results.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcloopFormat {
    Text = 0,
    Json = 1,
}

/// Opaque surface handle.
pub struct NcloopSurface {
    sig: SurfaceSignature,
    mu: MuEngine,
}

impl NcloopSurface {
    fn pres(&self) -> Presentation {
        self.sig.into()
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> NcloopStatus {
    match e {
        Error::DegenerateSurface { .. } | Error::BadDimension(_) => NcloopStatus::InvalidSurface,
        Error::Parse { .. }
        | Error::UnknownIdentifier { .. }
        | Error::IndexOutOfRange { .. }
        | Error::NotComposable { .. }
        | Error::NoRepresentative(_) => NcloopStatus::Parse,
        Error::InvalidTable(_) => NcloopStatus::InvalidTable,
        Error::UnsupportedConnection(_) => NcloopStatus::Unsupported,
        Error::UnknownSuite(_) => NcloopStatus::UnknownSuite,
    }
}

struct Fail(NcloopStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> NcloopStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NcloopStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NcloopStatus::Panic
        }
    }
}

unsafe fn arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(NcloopStatus::NullArgument, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NcloopStatus::InvalidUtf8, format!("`{name}` is not valid UTF-8")))
}

unsafe fn surface<'a>(s: *const NcloopSurface) -> Result<&'a NcloopSurface, Fail> {
    s.as_ref().ok_or_else(|| Fail(NcloopStatus::NullArgument, "surface handle is null".into()))
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(NcloopStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(NcloopStatus::Panic, "result contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn render(format: NcloopFormat, text: String, value: Value) -> String {
    match format {
        NcloopFormat::Text => text,
        NcloopFormat::Json => serde_json::json!({ "result": value, "text": text }).to_string(),
    }
}

/// Creates the surface Σ_{g,n+1} with objects `0..=boundaries`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn ncloop_surface_new(genus: u32, boundaries: u32, out: *mut *mut NcloopSurface) -> NcloopStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(NcloopStatus::NullArgument, "output pointer is null".into()));
        }
        let sig = make_surface(genus, boundaries)?;
        *out = Box::into_raw(Box::new(NcloopSurface { sig, mu: MuEngine::new(&sig) }));
        Ok(())
    })
}

/// Releases a surface handle. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle from [`ncloop_surface_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncloop_surface_free(s: *mut NcloopSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncloop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failure on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ncloop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// κ(left, right) for two algebra-element expressions.
///
/// # Safety
/// `s` must be a live handle, the inputs nul-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncloop_kappa(
    s: *const NcloopSurface,
    left: *const c_char,
    right: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let a = parse_elem(arg(left, "left")?, &pres)?;
        let b = parse_elem(arg(right, "right")?, &pres)?;
        let v = s.mu.kappa().eval(&a, &b);
        write_out(out, render(format, v.to_string(), tensor_json(&v)))
    })
}

/// The framed loop operation μ on an algebra element.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_mu(
    s: *const NcloopSurface,
    path: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let a = parse_elem(arg(path, "path")?, &s.pres())?;
        let v = s.mu.eval(&a);
        write_out(out, render(format, v.to_string(), triple_json(&v)))
    })
}

/// φ for κ and the basis-flat connection.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_phi(
    s: *const NcloopSurface,
    path: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let a = parse_elem(arg(path, "path")?, &pres)?;
        let v = phi(s.mu.kappa(), &nabla_c(&s.sig), &a, &pres)?;
        write_out(out, render(format, v.to_string(), triple_json(&v)))
    })
}

/// The modular vector field m on an algebra element.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_modular(
    s: *const NcloopSurface,
    path: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let a = parse_elem(arg(path, "path")?, &pres)?;
        let v = modular(s.mu.kappa(), &nabla_c(&s.sig), &ad_e(&pres), &a, &pres)?;
        write_out(out, render(format, v.to_string(), triple_json(&v)))
    })
}

/// δ on a trace expression such as `|a1 b1|`.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_delta(
    s: *const NcloopSurface,
    trace: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let t = parse_trace(arg(trace, "trace")?, &pres)?;
        let v = delta_map(s.mu.kappa(), &nabla_c(&s.sig), &t, &pres)?;
        write_out(out, render(format, v.to_string(), trace_tensor_json(&v)))
    })
}

/// TDiv of a double derivation given as `{generator: [[p, q, coeff], …]}`.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_tdiv(
    s: *const NcloopSurface,
    table_json: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let theta = parse_theta_table(arg(table_json, "table_json")?, &pres)?;
        let v = tdiv(&theta, &nabla_c(&s.sig), &pres)?;
        write_out(out, render(format, v.to_string(), triple_json(&v)))
    })
}

/// Div of a derivation given as `{generator: "element"}`.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_div(
    s: *const NcloopSurface,
    table_json: *const c_char,
    format: NcloopFormat,
    out: *mut *mut c_char,
) -> NcloopStatus {
    guard(|| {
        let s = surface(s)?;
        let pres = s.pres();
        let f = parse_derivation_table(arg(table_json, "table_json")?, &pres)?;
        let v = div(&f, &nabla_c(&s.sig), &pres)?;
        write_out(out, render(format, v.to_string(), trace_tensor_json(&v)))
    })
}

/// Runs a verification suite (or `all`) and writes the JSON report: one
/// object for a single suite, an array for `all`. Returns
/// `VerificationFailed` (with the report still written) if any case fails.
///
/// # Safety
/// As for [`ncloop_kappa`].
#[no_mangle]
pub unsafe extern "C" fn ncloop_verify(
    s: *const NcloopSurface,
    suite: *const c_char,
    seed: u64,
    samples: usize,
    max_len: usize,
    out: *mut *mut c_char,
) -> NcloopStatus {
    let mut failed = false;
    let status = guard(|| {
        let s = surface(s)?;
        let cfg = SuiteConfig { sig: s.sig, seed, samples, max_len };
        let reports = run_suite(arg(suite, "suite")?, &cfg)?;
        failed = reports.iter().any(|r| !r.ok());
        let js = match reports.as_slice() {
            [one] => serde_json::to_string(one),
            many => serde_json::to_string(many),
        }
        .expect("reports serialize");
        write_out(out, js)
    });
    if status == NcloopStatus::Ok && failed {
        set_error("verification failed".into());
        return NcloopStatus::VerificationFailed;
    }
    status
}
