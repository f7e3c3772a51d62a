//! C ABI for the gauge-class toolkit: opaque handles, status codes, and
//! exact string round trips so other languages can bind.
//!
//! Conventions: every function returns a `PvgStatus`; results come back
//! through out-pointers. Strings returned through out-pointers are owned by
//! the caller and must be released with `pvg_string_free`; matrices with
//! `pvg_matrix_free`; solution bases with `pvg_basis_free`. On any status
//! other than `Ok`, `pvg_last_error_message` returns a description of what
//! happened.

use libc::c_char;
use pvgauge::algebra::MatRF;
use pvgauge::cli::{parse_document, parse_matrix};
use pvgauge::gauge::gauge_act;
use pvgauge::ratsol::{
    equivalent_with, is_trivial_with, rational_solutions, DecisionResult, DegreeBounds,
    SylvesterSystem, DEFAULT_SEED,
};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of a library call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvgStatus {
    /// Success; out-pointers are populated.
    Ok = 0,
    /// A decision ran to completion and certified that no witness exists.
    NoneFound = 1,
    /// A required pointer argument was null.
    NullPointer = 2,
    /// Input text failed to parse.
    ParseError = 3,
    /// Matrix dimensions do not match.
    DimensionMismatch = 4,
    /// The matrix is singular over Q(x).
    Singular = 5,
    /// Automatic degree bounds are unavailable; supply bounds text.
    NeedsBounds = 6,
    /// The invertibility search was inconclusive.
    Inconclusive = 7,
    /// Any other domain error (see `pvg_last_error_message`).
    DomainError = 8,
    /// A panic was caught at the boundary; state is unchanged.
    Panic = 9,
}

/// Opaque handle to an n x n matrix over Q(x).
pub struct PvgMatrix {
    inner: MatRF,
}

/// Opaque handle to a basis of intertwiner solutions.
pub struct PvgBasis {
    items: Vec<MatRF>,
    provenance_computed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(msg).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = None;
    });
}

fn guard<F: FnOnce() -> PvgStatus>(f: F) -> PvgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the FFI boundary");
            PvgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, PvgStatus> {
    if ptr.is_null() {
        return Err(PvgStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        PvgStatus::ParseError
    })
}

fn export_string(s: String, out: *mut *mut c_char) -> PvgStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PvgStatus::Ok
        }
        Err(_) => {
            set_error("string contains an interior NUL byte");
            PvgStatus::DomainError
        }
    }
}

fn parse_bounds_arg(text: *const c_char) -> Result<Option<DegreeBounds>, PvgStatus> {
    if text.is_null() {
        return Ok(None);
    }
    let s = unsafe { read_str(text)? };
    let doc = parse_document(s).map_err(|e| {
        set_error(e.to_string());
        PvgStatus::ParseError
    })?;
    doc.bounds.map(Some).ok_or_else(|| {
        set_error("bounds text has no bounds block");
        PvgStatus::ParseError
    })
}

/// Version string of the library; static storage, do not free.
#[no_mangle]
pub extern "C" fn pvg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent non-Ok status on this thread, or null.
/// Caller frees with `pvg_string_free`.
#[no_mangle]
pub extern "C" fn pvg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn pvg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix literal like `[[0, 1/x],[0, 0]]`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_parse(
    text: *const c_char,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| {
        if out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_matrix(s) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(PvgMatrix { inner: m }));
                PvgStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PvgStatus::ParseError
            }
        }
    })
}

/// Canonical text form; round-trips through `pvg_matrix_parse`.
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_format(
    m: *const PvgMatrix,
    out: *mut *mut c_char,
) -> PvgStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        export_string((*m).inner.to_string(), out)
    })
}

/// # Safety
/// `m` must be a live matrix handle or null.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_free(m: *mut PvgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension n of the matrix.
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_dim(m: *const PvgMatrix, out: *mut usize) -> PvgStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        *out = (*m).inner.n();
        PvgStatus::Ok
    })
}

unsafe fn binop(
    a: *const PvgMatrix,
    b: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
    f: impl Fn(&MatRF, &MatRF) -> Result<MatRF, pvgauge::algebra::AlgebraError>,
) -> PvgStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return PvgStatus::NullPointer;
    }
    clear_error();
    match f(&(*a).inner, &(*b).inner) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(PvgMatrix { inner: m }));
            PvgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            match e {
                pvgauge::algebra::AlgebraError::DimensionMismatch(_, _) => {
                    PvgStatus::DimensionMismatch
                }
                pvgauge::algebra::AlgebraError::SingularMatrix => PvgStatus::Singular,
                _ => PvgStatus::DomainError,
            }
        }
    }
}

/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_add(
    a: *const PvgMatrix,
    b: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| binop(a, b, out, |x, y| x.checked_add(y)))
}

/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_sub(
    a: *const PvgMatrix,
    b: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| binop(a, b, out, |x, y| x.checked_sub(y)))
}

/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_mul(
    a: *const PvgMatrix,
    b: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| binop(a, b, out, |x, y| x.checked_mul(y)))
}

/// Entrywise derivative.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_derivative(
    m: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        *out = Box::into_raw(Box::new(PvgMatrix {
            inner: (*m).inner.derivative(),
        }));
        PvgStatus::Ok
    })
}

/// Exact inverse over Q(x); `Singular` when the determinant vanishes.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_inverse(
    m: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        match (*m).inner.inverse() {
            Ok(inv) => {
                *out = Box::into_raw(Box::new(PvgMatrix { inner: inv }));
                PvgStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PvgStatus::Singular
            }
        }
    })
}

/// Determinant as an exact string.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_matrix_det(
    m: *const PvgMatrix,
    out: *mut *mut c_char,
) -> PvgStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        export_string((*m).inner.det().to_string(), out)
    })
}

/// The gauge action `U'U^{-1} + U A U^{-1}`.
///
/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_gauge_act(
    u: *const PvgMatrix,
    a: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| binop(u, a, out, gauge_act))
}

/// The residual `M' - A2 M + M A1`; zero exactly when M intertwines.
///
/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_sylvester_residual(
    m: *const PvgMatrix,
    a1: *const PvgMatrix,
    a2: *const PvgMatrix,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| {
        if m.is_null() || a1.is_null() || a2.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let sys = match SylvesterSystem::new((*a1).inner.clone(), (*a2).inner.clone()) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return PvgStatus::DimensionMismatch;
            }
        };
        match pvgauge::ratsol::sylvester_residual(&(*m).inner, &sys) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(PvgMatrix { inner: r }));
                PvgStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PvgStatus::DimensionMismatch
            }
        }
    })
}

fn ratsol_status(e: &pvgauge::ratsol::RatSolError) -> PvgStatus {
    if e.needs_user_bound() {
        PvgStatus::NeedsBounds
    } else {
        PvgStatus::DomainError
    }
}

/// Basis of rational solutions of `M' = A2 M - M A1`. `bounds_text` may be
/// null (automatic bounds) or a document with a `bounds { ... }` block.
///
/// # Safety
/// Handles must be live; `out` must be valid; `bounds_text` null or a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pvg_rational_solutions(
    a1: *const PvgMatrix,
    a2: *const PvgMatrix,
    bounds_text: *const c_char,
    out: *mut *mut PvgBasis,
) -> PvgStatus {
    guard(|| {
        if a1.is_null() || a2.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let bounds = match parse_bounds_arg(bounds_text) {
            Ok(b) => b,
            Err(st) => return st,
        };
        let sys = match SylvesterSystem::new((*a1).inner.clone(), (*a2).inner.clone()) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return PvgStatus::DimensionMismatch;
            }
        };
        match rational_solutions(&sys, bounds.as_ref()) {
            Ok(sol) => {
                let computed = matches!(
                    sol.bounds_used().provenance,
                    pvgauge::ratsol::Provenance::Computed
                );
                *out = Box::into_raw(Box::new(PvgBasis {
                    items: sol.basis().to_vec(),
                    provenance_computed: computed,
                }));
                PvgStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                ratsol_status(&e)
            }
        }
    })
}

/// Number of basis elements.
///
/// # Safety
/// `b` must be a live basis handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_basis_len(b: *const PvgBasis, out: *mut usize) -> PvgStatus {
    guard(|| {
        if b.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        *out = (*b).items.len();
        PvgStatus::Ok
    })
}

/// True when the basis is the certified-complete solution space (computed
/// bounds rather than user-supplied ones).
///
/// # Safety
/// `b` must be a live basis handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_basis_is_complete(
    b: *const PvgBasis,
    out: *mut bool,
) -> PvgStatus {
    guard(|| {
        if b.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        *out = (*b).provenance_computed;
        PvgStatus::Ok
    })
}

/// Copies basis element `index` into a fresh matrix handle.
///
/// # Safety
/// `b` must be a live basis handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvg_basis_get(
    b: *const PvgBasis,
    index: usize,
    out: *mut *mut PvgMatrix,
) -> PvgStatus {
    guard(|| {
        if b.is_null() || out.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let items = &(*b).items;
        match items.get(index) {
            Some(m) => {
                *out = Box::into_raw(Box::new(PvgMatrix { inner: m.clone() }));
                PvgStatus::Ok
            }
            None => {
                set_error(format!(
                    "basis index {} out of range ({} elements)",
                    index,
                    (*b).items.len()
                ));
                PvgStatus::DomainError
            }
        }
    })
}

/// # Safety
/// `b` must be a live basis handle or null.
#[no_mangle]
pub unsafe extern "C" fn pvg_basis_free(b: *mut PvgBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

unsafe fn decision(
    compute: impl FnOnce() -> Result<pvgauge::ratsol::Decision, pvgauge::ratsol::DecisionError>,
    out_witness: *mut *mut PvgMatrix,
    out_certificate: *mut *mut c_char,
) -> PvgStatus {
    match compute() {
        Ok(d) => match d.result {
            DecisionResult::Witness(u) => {
                *out_witness = Box::into_raw(Box::new(PvgMatrix { inner: u }));
                PvgStatus::Ok
            }
            DecisionResult::NoneFound(cert) => {
                *out_witness = ptr::null_mut();
                if !out_certificate.is_null() {
                    let msg = format!(
                        "solution space dimension {}; generic determinant identically zero: {}",
                        cert.solution_dim, cert.generic_determinant_zero
                    );
                    if export_string(msg, out_certificate) != PvgStatus::Ok {
                        return PvgStatus::DomainError;
                    }
                }
                PvgStatus::NoneFound
            }
        },
        Err(pvgauge::ratsol::DecisionError::RatSol(e)) => {
            set_error(e.to_string());
            ratsol_status(&e)
        }
        Err(e @ pvgauge::ratsol::DecisionError::Inconclusive { .. }) => {
            set_error(e.to_string());
            PvgStatus::Inconclusive
        }
    }
}

/// Searches for invertible U with `gauge_act(U, A) = B`. On `Ok` the witness
/// handle is set; on `NoneFound` it is null and, when `out_certificate` is
/// non-null, a certificate string is returned.
///
/// # Safety
/// Handles must be live; `out_witness` must be valid; `bounds_text` and
/// `out_certificate` may be null.
#[no_mangle]
pub unsafe extern "C" fn pvg_equivalent(
    a: *const PvgMatrix,
    b: *const PvgMatrix,
    bounds_text: *const c_char,
    seed: u64,
    out_witness: *mut *mut PvgMatrix,
    out_certificate: *mut *mut c_char,
) -> PvgStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out_witness.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let bounds = match parse_bounds_arg(bounds_text) {
            Ok(bd) => bd,
            Err(st) => return st,
        };
        decision(
            || equivalent_with(&(*a).inner, &(*b).inner, bounds.as_ref(), seed, 1),
            out_witness,
            out_certificate,
        )
    })
}

/// Triviality decision: searches for a rational fundamental matrix
/// (`U' = A U`, U invertible).
///
/// # Safety
/// As for `pvg_equivalent`.
#[no_mangle]
pub unsafe extern "C" fn pvg_is_trivial(
    a: *const PvgMatrix,
    bounds_text: *const c_char,
    seed: u64,
    out_witness: *mut *mut PvgMatrix,
    out_certificate: *mut *mut c_char,
) -> PvgStatus {
    guard(|| {
        if a.is_null() || out_witness.is_null() {
            return PvgStatus::NullPointer;
        }
        clear_error();
        let bounds = match parse_bounds_arg(bounds_text) {
            Ok(bd) => bd,
            Err(st) => return st,
        };
        decision(
            || is_trivial_with(&(*a).inner, bounds.as_ref(), seed, 1),
            out_witness,
            out_certificate,
        )
    })
}

/// The default PRNG seed used by the command-line tool.
#[no_mangle]
pub extern "C" fn pvg_default_seed() -> u64 {
    DEFAULT_SEED
}
