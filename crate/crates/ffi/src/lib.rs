//! C interface. Problems are parsed into opaque handles; every command writes
//! a JSON report (or problem text) into a string owned by the library, which
//! the caller releases with `trefl_string_free`. Failures return a status
//! code and leave a message for `trefl_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trefl::api;
use trefl::classify::CertifyOptions;
use trefl::field::FieldSpec;
use trefl::io::{ProblemFile, Report};
use trefl::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreflStatus {
    Ok = 0,
    /// Input outside the hypotheses or scope of the computation.
    Hypotheses = 1,
    /// Malformed problem text or options.
    Parse = 2,
    Internal = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Parsed problem; only reachable through a pointer.
pub struct TreflProblem {
    file: ProblemFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TreflStatus {
    match e.exit_code() {
        1 => TreflStatus::Hypotheses,
        2 => TreflStatus::Parse,
        _ => TreflStatus::Internal,
    }
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), (TreflStatus, String)>) -> TreflStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TreflStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            TreflStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TreflStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TreflStatus, String) {
    (TreflStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TreflStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (TreflStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_out(out: *mut *mut c_char, text: String) -> Result<(), (TreflStatus, String)> {
    let c = CString::new(text).map_err(|_| (TreflStatus::Internal, "output contains a NUL byte".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn problem<'a>(p: *const TreflProblem) -> Result<&'a TreflProblem, (TreflStatus, String)> {
    if p.is_null() {
        return Err(null("problem"));
    }
    Ok(unsafe { &*p })
}

fn check_out<T>(out: *mut *mut T) -> Result<(), (TreflStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Parses a problem in text or JSON form. On success `*out` owns a handle
/// to release with `trefl_problem_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_problem_parse(text: *const c_char, out: *mut *mut TreflProblem) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let text = unsafe { read_str(text, "text") }?;
        let file = ProblemFile::parse(text).map_err(lib_err)?;
        unsafe { *out = Box::into_raw(Box::new(TreflProblem { file })) };
        Ok(())
    })
}

/// Releases a handle from `trefl_problem_parse`; null is ignored.
///
/// # Safety
/// `p` must come from `trefl_problem_parse` and not be used afterwards.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_problem_free(p: *mut TreflProblem) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Classification report as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_analyze(p: *const TreflProblem, out: *mut *mut c_char) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let p = unsafe { problem(p) }?;
        let rep = api::analyze(&p.file).map_err(lib_err)?;
        let json = Report::new("analyze", &p.file.field, rep).to_json().map_err(lib_err)?;
        unsafe { write_out(out, json) }
    })
}

/// G-regularity report as JSON. `bound = 0` selects the default Tor bound.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_certify(
    p: *const TreflProblem,
    seed: u64,
    samples: usize,
    bound: usize,
    out: *mut *mut c_char,
) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let p = unsafe { problem(p) }?;
        let opts = CertifyOptions { samples, seed, bound: (bound > 0).then_some(bound) };
        let rep = api::certify(&p.file, &opts).map_err(lib_err)?;
        let json = Report::new("certify", &p.file.field, rep).to_json().map_err(lib_err)?;
        unsafe { write_out(out, json) }
    })
}

/// Resolution of the canonical module over `R` as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_resolve(p: *const TreflProblem, steps: usize, out: *mut *mut c_char) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let p = unsafe { problem(p) }?;
        let rep = api::resolve(&p.file, steps).map_err(lib_err)?;
        let json = Report::new("resolve", &p.file.field, rep).to_json().map_err(lib_err)?;
        unsafe { write_out(out, json) }
    })
}

/// Pfaffian and homotopy-table checks as JSON. `field` is `q` or `p:N`;
/// `units` is `u1,u2,u3`, or null for `1,1,1`.
///
/// # Safety
/// `field` must be a NUL-terminated string, `units` null or one, and `out`
/// a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_quadrics_verify(field: *const c_char, units: *const c_char, out: *mut *mut c_char) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let spec = FieldSpec::parse(unsafe { read_str(field, "field") }?).map_err(lib_err)?;
        let units = if units.is_null() { "1,1,1" } else { unsafe { read_str(units, "units") }? };
        let rep = api::quadrics_verify(spec, units).map_err(lib_err)?;
        let json = Report::new("quadrics-verify", &spec, rep).to_json().map_err(lib_err)?;
        unsafe { write_out(out, json) }
    })
}

/// Built-in problem for a case letter, in the text form.
///
/// # Safety
/// `field` must be a NUL-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_fixture(case_letter: c_char, field: *const c_char, seed: u64, out: *mut *mut c_char) -> TreflStatus {
    guard(|| {
        check_out(out)?;
        let spec = FieldSpec::parse(unsafe { read_str(field, "field") }?).map_err(lib_err)?;
        let p = api::fixture_problem(spec, case_letter as u8 as char, seed).map_err(lib_err)?;
        unsafe { write_out(out, p.to_text()) }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn trefl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[unsafe(no_mangle)]
pub extern "C" fn trefl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
