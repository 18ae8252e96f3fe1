use std::ffi::CStr;
use std::ptr;

use jackweight_ffi::*;

fn irrep(parts: &[usize]) -> *mut JwIrrep {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { jw_irrep_new(parts.as_ptr(), parts.len(), &mut out) }, JwStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(jw_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn irrep_42_dimensions_and_profile() {
    let ir = irrep(&[4, 2]);
    let (mut n, mut nt, mut mt) = (0, 0, 0);
    assert_eq!(unsafe { jw_irrep_dims(ir, &mut n, &mut nt, &mut mt) }, JwStatus::Ok);
    assert_eq!((n, nt, mt), (6, 9, 3));
    let mut e = [0usize; 6];
    assert_eq!(unsafe { jw_irrep_upsilon_multiplicities(ir, e.as_mut_ptr(), e.len()) }, JwStatus::Ok);
    assert_eq!(e, [2, 1, 2, 1, 2, 1]);
    let mut short = [0usize; 3];
    assert_eq!(
        unsafe { jw_irrep_upsilon_multiplicities(ir, short.as_mut_ptr(), short.len()) },
        JwStatus::BufferTooSmall
    );
    unsafe { jw_irrep_free(ir) };
}

#[test]
fn generators_are_involutions() {
    let ir = irrep(&[2, 1]);
    let mut g = [0.0; 8];
    assert_eq!(unsafe { jw_irrep_generator(ir, 0, g.as_mut_ptr(), g.len()) }, JwStatus::Ok);
    // real symmetric 2x2 with square I
    let (a, b, c, d) = (g[0], g[2], g[4], g[6]);
    assert!((a * a + b * c - 1.0).abs() < 1e-14 && (a * b + b * d).abs() < 1e-14);
    assert_eq!(unsafe { jw_irrep_generator(ir, 2, g.as_mut_ptr(), g.len()) }, JwStatus::InvalidArgument);
    unsafe { jw_irrep_free(ir) };
}

#[test]
fn errors_map_to_codes() {
    let mut out = ptr::null_mut();
    let bad = [1usize, 2];
    assert_eq!(unsafe { jw_irrep_new(bad.as_ptr(), 2, &mut out) }, JwStatus::InvalidArgument);
    assert!(last_error().contains("partition"));
    let row = [3usize];
    assert_eq!(unsafe { jw_irrep_new(row.as_ptr(), 1, &mut out) }, JwStatus::InvalidArgument);
    assert_eq!(unsafe { jw_irrep_new(ptr::null(), 0, &mut out) }, JwStatus::NullPointer);
    let ir = irrep(&[2, 1]);
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { jw_solve_h(ir, 0.6, 0.0, &mut w) }, JwStatus::InvalidArgument);
    assert!(w.is_null());
    unsafe { jw_irrep_free(ir) };
    unsafe { jw_irrep_free(ptr::null_mut()) };
    unsafe { jw_weight_free(ptr::null_mut()) };
}

#[test]
fn weight_round_trip() {
    let ir = irrep(&[2, 1]);
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { jw_solve_h(ir, 0.25, 0.0, &mut w) }, JwStatus::Ok);
    unsafe { jw_irrep_free(ir) };
    let (mut gap, mut min_eig) = (0.0, 0.0);
    assert_eq!(unsafe { jw_weight_diagnostics(w, &mut gap, &mut min_eig) }, JwStatus::Ok);
    assert!(gap >= 1e4 && min_eig > 0.0);
    let mut h = [0.0; 8];
    assert_eq!(unsafe { jw_weight_h(w, h.as_mut_ptr(), h.len()) }, JwStatus::Ok);
    assert!((h[2] - h[4]).abs() < 1e-10 && (h[3] + h[5]).abs() < 1e-10);
    // K is Hermitian and invariant under rotation
    let theta = [0.1, 2.0, 4.0];
    let rot = [0.8, 2.7, 4.7];
    let (mut k, mut kr) = ([0.0; 8], [0.0; 8]);
    assert_eq!(unsafe { jw_weight_k(w, theta.as_ptr(), 3, k.as_mut_ptr(), 8) }, JwStatus::Ok);
    assert_eq!(unsafe { jw_weight_k(w, rot.as_ptr(), 3, kr.as_mut_ptr(), 8) }, JwStatus::Ok);
    assert!(k.iter().zip(&kr).all(|(a, b)| (a - b).abs() < 1e-8));
    assert!((k[2] - k[4]).abs() < 1e-10);
    let on_face = [0.5, 0.5, 3.0];
    assert_eq!(unsafe { jw_weight_k(w, on_face.as_ptr(), 3, k.as_mut_ptr(), 8) }, JwStatus::SingularPoint);
    assert_eq!(unsafe { jw_weight_k(w, theta.as_ptr(), 2, k.as_mut_ptr(), 8) }, JwStatus::InvalidArgument);
    assert_eq!(unsafe { jw_weight_k(w, theta.as_ptr(), 3, k.as_mut_ptr(), 4) }, JwStatus::BufferTooSmall);
    unsafe { jw_weight_free(w) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(jw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/jackweight.h");
    let h = std::fs::read_to_string(path).unwrap();
    for name in [
        "jw_irrep_new",
        "jw_irrep_free",
        "jw_irrep_dims",
        "jw_irrep_generator",
        "jw_irrep_upsilon_multiplicities",
        "jw_solve_h",
        "jw_weight_free",
        "jw_weight_h",
        "jw_weight_diagnostics",
        "jw_weight_k",
        "jw_last_error",
        "JW_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(h.contains(name), "{name}");
    }
    // the header compiles as C when a compiler is around
    if let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", path]).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
