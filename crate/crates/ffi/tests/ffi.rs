use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use wpd_ffi::*;

fn named(name: &str, dims: &[usize]) -> *mut WpdState {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { wpd_state_named(name.as_ptr(), dims.as_ptr(), dims.len(), &mut out) };
    assert_eq!(status, WpdStatus::Ok);
    out
}

fn measure(s: *const WpdState, which: WpdMeasure) -> f64 {
    let mut v = f64::NAN;
    assert_eq!(unsafe { wpd_measure(s, which, WpdLogBase::Two, &mut v) }, WpdStatus::Ok);
    v
}

fn last_error() -> String {
    let p = wpd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn bell_measures_and_relation() {
    let bell = named("bell", &[]);
    let mut dim = 0;
    assert_eq!(unsafe { wpd_state_dim(bell, &mut dim) }, WpdStatus::Ok);
    assert_eq!(dim, 4);
    let mut pure = false;
    assert_eq!(unsafe { wpd_state_is_pure(bell, &mut pure) }, WpdStatus::Ok);
    assert!(pure);
    assert!((measure(bell, WpdMeasure::InfoI) - 1.5).abs() < 1e-12);

    let mut reduced = ptr::null_mut();
    assert_eq!(unsafe { wpd_partial_trace(bell, [0usize].as_ptr(), 1, &mut reduced) }, WpdStatus::Ok);
    assert!((measure(reduced, WpdMeasure::Entropy) - 1.0).abs() < 1e-12);
    assert!(measure(reduced, WpdMeasure::InfoS).abs() < 1e-12);

    let id = CString::new("R12").unwrap();
    let mut rec = WpdRelationRecord { lhs: 0.0, rhs: 0.0, margin: 0.0, direction: WpdDirection::Eq, satisfied: false, saturated: false };
    assert_eq!(unsafe { wpd_relation_evaluate(bell, ptr::null(), id.as_ptr(), WpdLogBase::Two, &mut rec) }, WpdStatus::Ok);
    assert!(rec.satisfied && rec.saturated);
    assert_eq!(rec.direction, WpdDirection::Leq);
    assert!((rec.lhs - 1.0).abs() < 1e-12);

    unsafe {
        wpd_state_free(reduced);
        wpd_state_free(bell);
    }
}

#[test]
fn entries_round_trip() {
    let re = [0.75, 0.25, 0.25, 0.25];
    let im = [0.0, -0.1, 0.1, 0.0];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wpd_state_from_entries([2usize].as_ptr(), 1, re.as_ptr(), im.as_ptr(), &mut s) }, WpdStatus::Ok);
    let (mut re2, mut im2) = ([0.0; 4], [0.0; 4]);
    assert_eq!(unsafe { wpd_state_entries(s, re2.as_mut_ptr(), im2.as_mut_ptr(), 4) }, WpdStatus::Ok);
    assert_eq!(re, re2);
    assert_eq!(im, im2);
    assert_eq!(unsafe { wpd_state_entries(s, re2.as_mut_ptr(), im2.as_mut_ptr(), 3) }, WpdStatus::DimensionMismatch);
    // P = |0.75 - 0.25| and V = 2|rho_01| for a qubit.
    assert!((measure(s, WpdMeasure::Predictability) - 0.5).abs() < 1e-12);
    assert!((measure(s, WpdMeasure::Visibility) - 2.0 * (0.0625f64 + 0.01).sqrt()).abs() < 1e-12);
    unsafe { wpd_state_free(s) };
}

#[test]
fn error_codes_and_messages() {
    let mut s = ptr::null_mut();
    let bad = CString::new("nonsense").unwrap();
    assert_eq!(unsafe { wpd_state_named(bad.as_ptr(), ptr::null(), 0, &mut s) }, WpdStatus::UnknownName);
    assert!(last_error().contains("nonsense"));
    assert!(s.is_null());

    let re = [1.0, 0.5, 0.0, 0.0];
    let im = [0.0; 4];
    assert_eq!(unsafe { wpd_state_from_entries([2usize].as_ptr(), 1, re.as_ptr(), im.as_ptr(), &mut s) }, WpdStatus::InvalidState);
    assert_eq!(unsafe { wpd_state_from_entries(ptr::null(), 1, re.as_ptr(), im.as_ptr(), &mut s) }, WpdStatus::NullPointer);

    let amps = [0.6, 0.8];
    assert_eq!(unsafe { wpd_state_from_amplitudes([2usize].as_ptr(), 1, amps.as_ptr(), [0.0, 0.0].as_ptr(), &mut s) }, WpdStatus::Ok);
    assert!(wpd_last_error_message().is_null());

    let mut rec = WpdRelationRecord { lhs: 0.0, rhs: 0.0, margin: 0.0, direction: WpdDirection::Eq, satisfied: false, saturated: false };
    let r999 = CString::new("R999").unwrap();
    assert_eq!(unsafe { wpd_relation_evaluate(s, ptr::null(), r999.as_ptr(), WpdLogBase::Two, &mut rec) }, WpdStatus::UnknownRelation);
    let r21 = CString::new("R21").unwrap();
    assert_eq!(unsafe { wpd_relation_evaluate(s, ptr::null(), r21.as_ptr(), WpdLogBase::Two, &mut rec) }, WpdStatus::Inapplicable);
    let mm = named("max_mixed", &[2]);
    assert_eq!(unsafe { wpd_relation_evaluate(s, mm, r21.as_ptr(), WpdLogBase::Two, &mut rec) }, WpdStatus::Ok);
    assert!(rec.satisfied);

    assert_eq!(unsafe { wpd_state_dim(ptr::null(), &mut 0) }, WpdStatus::NullPointer);
    unsafe {
        wpd_state_free(mm);
        wpd_state_free(s);
        wpd_state_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(wpd_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/wpd.h")).unwrap();
    for f in [
        "wpd_state_from_entries", "wpd_state_from_amplitudes", "wpd_state_named", "wpd_state_free",
        "wpd_state_dim", "wpd_state_is_pure", "wpd_state_entries", "wpd_measure", "wpd_partial_trace",
        "wpd_relation_evaluate", "wpd_last_error_message", "wpd_version", "typedef struct WpdState WpdState",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}

/// Compiles and runs a C program against the static library.
#[test]
fn c_program_links_against_staticlib() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libwpd_ffi.a");
    if !lib.exists() {
        panic!("static library not found at {}", lib.display());
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <math.h>
#include <stdio.h>
#include "wpd.h"

int main(void) {
    WpdState *ghz = NULL;
    if (wpd_state_named("ghz", NULL, 0, &ghz) != WPD_STATUS_OK) return 1;
    WpdRelationRecord rec;
    if (wpd_relation_evaluate(ghz, NULL, "R6", WPD_LOG_BASE_TWO, &rec) != WPD_STATUS_OK) return 2;
    if (fabs(rec.lhs - 1.0) > 1e-12 || fabs(rec.rhs - 3.0) > 1e-12 || !rec.satisfied) return 3;
    WpdState *bad = NULL;
    if (wpd_state_named("nope", NULL, 0, &bad) != WPD_STATUS_UNKNOWN_NAME) return 4;
    if (wpd_last_error_message() == NULL) return 5;
    wpd_state_free(ghz);
    printf("ok %s\n", wpd_version());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
