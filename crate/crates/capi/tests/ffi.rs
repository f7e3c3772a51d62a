//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers and status codes.

use pvgauge_capi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn parse(text: &str) -> *mut PvgMatrix {
    let c = CString::new(text).unwrap();
    let mut out: *mut PvgMatrix = ptr::null_mut();
    let status = unsafe { pvg_matrix_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, PvgStatus::Ok, "parse {text}");
    assert!(!out.is_null());
    out
}

fn format(m: *const PvgMatrix) -> String {
    let mut s: *mut libc::c_char = ptr::null_mut();
    let status = unsafe { pvg_matrix_format(m, &mut s) };
    assert_eq!(status, PvgStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pvg_string_free(s) };
    out
}

#[test]
fn parse_format_roundtrip() {
    let m = parse("[[0, 1/x],[0, 0]]");
    let mut n = 0usize;
    assert_eq!(unsafe { pvg_matrix_dim(m, &mut n) }, PvgStatus::Ok);
    assert_eq!(n, 2);
    assert_eq!(format(m), "[[0, 1/x], [0, 0]]");
    unsafe { pvg_matrix_free(m) };
}

#[test]
fn parse_error_reports_message() {
    let c = CString::new("[[1,2],[3]]").unwrap();
    let mut out: *mut PvgMatrix = ptr::null_mut();
    let status = unsafe { pvg_matrix_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, PvgStatus::ParseError);
    let msg = pvg_last_error_message();
    assert!(!msg.is_null());
    let text = unsafe { CStr::from_ptr(msg) }.to_str().unwrap().to_string();
    assert!(text.contains("row length"), "{text}");
    unsafe { pvg_string_free(msg) };
}

#[test]
fn arithmetic_and_inverse() {
    let u = parse("[[1, x],[0, 1]]");
    let mut inv: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(unsafe { pvg_matrix_inverse(u, &mut inv) }, PvgStatus::Ok);
    assert_eq!(format(inv), "[[1, -x], [0, 1]]");
    let mut prod: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(unsafe { pvg_matrix_mul(u, inv, &mut prod) }, PvgStatus::Ok);
    assert_eq!(format(prod), "[[1, 0], [0, 1]]");
    let mut det: *mut libc::c_char = ptr::null_mut();
    assert_eq!(unsafe { pvg_matrix_det(u, &mut det) }, PvgStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(det) }.to_str().unwrap(), "1");
    unsafe {
        pvg_string_free(det);
        pvg_matrix_free(prod);
        pvg_matrix_free(inv);
        pvg_matrix_free(u);
    }

    let singular = parse("[[x, x],[1, 1]]");
    let mut out: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { pvg_matrix_inverse(singular, &mut out) },
        PvgStatus::Singular
    );
    unsafe { pvg_matrix_free(singular) };

    let a = parse("[[1]]");
    let b = parse("[[1, 0],[0, 1]]");
    let mut sum: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { pvg_matrix_add(a, b, &mut sum) },
        PvgStatus::DimensionMismatch
    );
    unsafe {
        pvg_matrix_free(a);
        pvg_matrix_free(b);
    }
}

#[test]
fn gauge_action_through_ffi() {
    let u = parse("[[x, 0],[0, 1]]");
    let a = parse("[[0, 0],[0, 0]]");
    let mut out: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(unsafe { pvg_gauge_act(u, a, &mut out) }, PvgStatus::Ok);
    assert_eq!(format(out), "[[1/x, 0], [0, 0]]");
    unsafe {
        pvg_matrix_free(out);
        pvg_matrix_free(a);
        pvg_matrix_free(u);
    }
}

#[test]
fn residual_and_solutions() {
    let a1 = parse("[[0]]");
    let a2 = parse("[[1/x]]");
    let m = parse("[[x]]");
    let mut res: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { pvg_sylvester_residual(m, a1, a2, &mut res) },
        PvgStatus::Ok
    );
    assert_eq!(format(res), "[[0]]");

    let mut basis: *mut PvgBasis = ptr::null_mut();
    assert_eq!(
        unsafe { pvg_rational_solutions(a1, a2, ptr::null(), &mut basis) },
        PvgStatus::Ok
    );
    let mut len = 0usize;
    assert_eq!(unsafe { pvg_basis_len(basis, &mut len) }, PvgStatus::Ok);
    assert_eq!(len, 1);
    let mut complete = false;
    assert_eq!(
        unsafe { pvg_basis_is_complete(basis, &mut complete) },
        PvgStatus::Ok
    );
    assert!(complete);
    let mut elem: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(unsafe { pvg_basis_get(basis, 0, &mut elem) }, PvgStatus::Ok);
    assert_eq!(format(elem), "[[x]]");
    assert_eq!(
        unsafe { pvg_basis_get(basis, 1, &mut elem) },
        PvgStatus::DomainError
    );
    unsafe {
        pvg_matrix_free(elem);
        pvg_basis_free(basis);
        pvg_matrix_free(m);
        pvg_matrix_free(a2);
        pvg_matrix_free(a1);
    }
}

#[test]
fn decisions_through_ffi() {
    // trivial: [[1/x]] has witness [[x]]
    let a = parse("[[1/x]]");
    let mut witness: *mut PvgMatrix = ptr::null_mut();
    let mut cert: *mut libc::c_char = ptr::null_mut();
    let status = unsafe {
        pvg_is_trivial(a, ptr::null(), pvg_default_seed(), &mut witness, &mut cert)
    };
    assert_eq!(status, PvgStatus::Ok);
    assert_eq!(format(witness), "[[x]]");
    unsafe {
        pvg_matrix_free(witness);
        pvg_matrix_free(a);
    }

    // equivalent([[0]], [[1/(2x)]]): certified none over Q(x)
    let a = parse("[[0]]");
    let b = parse("[[1/(2x)]]");
    let status = unsafe {
        pvg_equivalent(
            a,
            b,
            ptr::null(),
            pvg_default_seed(),
            &mut witness,
            &mut cert,
        )
    };
    assert_eq!(status, PvgStatus::NoneFound);
    assert!(witness.is_null());
    let text = unsafe { CStr::from_ptr(cert) }.to_str().unwrap().to_string();
    assert!(text.contains("dimension 0"), "{text}");
    unsafe {
        pvg_string_free(cert);
        pvg_matrix_free(b);
        pvg_matrix_free(a);
    }
}

#[test]
fn needs_bounds_surfaces_and_bounds_text_repairs() {
    let a = parse("[[1/x^2]]");
    let mut witness: *mut PvgMatrix = ptr::null_mut();
    let status = unsafe {
        pvg_is_trivial(
            a,
            ptr::null(),
            pvg_default_seed(),
            &mut witness,
            ptr::null_mut(),
        )
    };
    assert_eq!(status, PvgStatus::NeedsBounds);

    let bounds = CString::new("bounds { pole x: 3 numerator: 4 }").unwrap();
    let status = unsafe {
        pvg_is_trivial(
            a,
            bounds.as_ptr(),
            pvg_default_seed(),
            &mut witness,
            ptr::null_mut(),
        )
    };
    assert_eq!(status, PvgStatus::NoneFound);
    unsafe { pvg_matrix_free(a) };
}

#[test]
fn null_pointer_handling() {
    let mut out: *mut PvgMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { pvg_matrix_parse(ptr::null(), &mut out) },
        PvgStatus::NullPointer
    );
    assert_eq!(
        unsafe { pvg_matrix_inverse(ptr::null(), &mut out) },
        PvgStatus::NullPointer
    );
    unsafe {
        pvg_matrix_free(ptr::null_mut());
        pvg_basis_free(ptr::null_mut());
        pvg_string_free(ptr::null_mut());
    }
    assert!(!pvg_version().is_null());
}

#[test]
fn generated_header_declares_the_surface() {
    let header = include_str!("../include/pvgauge.h");
    for decl in [
        "typedef struct PvgMatrix PvgMatrix;",
        "typedef struct PvgBasis PvgBasis;",
        "PvgStatus pvg_matrix_parse(",
        "PvgStatus pvg_equivalent(",
        "PvgStatus pvg_is_trivial(",
        "PvgStatus pvg_rational_solutions(",
        "PVG_STATUS_NONE_FOUND",
        "void pvg_string_free(",
    ] {
        assert!(header.contains(decl), "header is missing: {decl}");
    }
}
