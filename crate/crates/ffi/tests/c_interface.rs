use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use trefl_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { trefl_string_free(s) };
    out
}

fn last_error() -> String {
    let p = trefl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture_text(letter: u8) -> CString {
    let field = CString::new("p:101").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { trefl_fixture(letter as c_char, field.as_ptr(), 0, &mut out) };
    assert_eq!(st, TreflStatus::Ok);
    CString::new(take(out)).unwrap()
}

fn parse(text: &CString) -> *mut TreflProblem {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { trefl_problem_parse(text.as_ptr(), &mut p) }, TreflStatus::Ok);
    p
}

#[test]
fn analyze_and_certify_through_handles() {
    let p = parse(&fixture_text(b'b'));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { trefl_analyze(p, &mut out) }, TreflStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["case"], "b");
    assert_eq!(unsafe { trefl_certify(p, 1, 4, 0, &mut out) }, TreflStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["result"]["verdict"], "G-REGULAR");
    assert_eq!(unsafe { trefl_resolve(p, 2, &mut out) }, TreflStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["result"]["ranks"].as_array().unwrap().len(), 3);
    unsafe { trefl_problem_free(p) };
}

#[test]
fn errors_map_to_status_codes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("field p:101\nvars x\nbogus\n").unwrap();
    assert_eq!(unsafe { trefl_problem_parse(bad.as_ptr(), &mut p) }, TreflStatus::Parse);
    assert!(p.is_null());
    assert!(last_error().contains("bogus"));

    assert_eq!(unsafe { trefl_problem_parse(ptr::null(), &mut p) }, TreflStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { trefl_analyze(ptr::null(), &mut out) }, TreflStatus::NullPointer);

    // J = 0 leaves R Gorenstein.
    let gor = CString::new("field p:101\nvars x y\nA\nx^3\ny^3\nend\nJ\n0\nend\n").unwrap();
    let p = parse(&gor);
    assert_eq!(unsafe { trefl_analyze(p, &mut out) }, TreflStatus::Hypotheses);
    assert!(out.is_null());
    unsafe { trefl_problem_free(p) };

    let field = CString::new("p:101").unwrap();
    assert_eq!(unsafe { trefl_fixture(b'z' as c_char, field.as_ptr(), 0, &mut out) }, TreflStatus::Parse);
}

#[test]
fn quadrics_verify_reports_structure() {
    let field = CString::new("p:2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { trefl_quadrics_verify(field.as_ptr(), ptr::null(), &mut out) }, TreflStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["result"]["alpha"]["unknowns"], 250);
    assert_eq!(v["result"]["alpha"]["table_solves"], true);
    assert_eq!(v["result"]["square_is_fourth_power"], true);
}

#[test]
fn header_declares_every_symbol() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/trefl.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "trefl_problem_parse",
        "trefl_problem_free",
        "trefl_analyze",
        "trefl_certify",
        "trefl_resolve",
        "trefl_quadrics_verify",
        "trefl_fixture",
        "trefl_string_free",
        "trefl_last_error",
        "TREFL_STATUS_PANIC = 5",
    ] {
        assert!(text.contains(sym), "missing {sym}");
    }
    // Syntax check with the system C compiler when one is present.
    if let Ok(o) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
}
