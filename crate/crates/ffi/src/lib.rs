//! C interface: opaque handles for signatures, polynomials and fields, status
//! codes on every call, and a thread-local message for the last failure.
//!
//! Strings returned by this library are owned by the caller and must be
//! released with [`sf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use superfield::certify::{simplicity_certificate, verify_certificate, Verdict};
use superfield::textio::{emit_document, parse_document, parse_field, parse_poly, print_field, print_poly};
use superfield::{Error, Signature, SuperPolynomial, VectorField};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    Mismatch = 1,
    ParseError = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    Internal = 5,
}

pub struct SfSignature(Arc<Signature>);
pub struct SfPoly(SuperPolynomial);
pub struct SfField(VectorField);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::Parse(_) | Error::Schema { .. } => SfStatus::ParseError,
        Error::Mismatch { .. } => SfStatus::Mismatch,
        Error::Internal { .. } => SfStatus::Internal,
        _ => SfStatus::InvalidArgument,
    }
}

type Failure = (SfStatus, String);

fn fail(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

/// Runs `body`, records any failure and converts panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            SfStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SfStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: caller passes a live handle from this library or null.
    unsafe { p.as_ref() }.ok_or((SfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((SfStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (SfStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((SfStatus::NullPointer, "output pointer is null".into()));
    }
    // SAFETY: checked non-null; caller provides writable storage.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err((SfStatus::NullPointer, "output pointer is null".into()));
    }
    let s = CString::new(value).map_err(|_| (SfStatus::Internal, "string contains NUL".to_string()))?;
    // SAFETY: checked non-null.
    unsafe { *out = s.into_raw() };
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        // SAFETY: `p` came from `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Standard signature with `r` even variables and `s` odd ones.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_signature_new(r: usize, s: usize, out: *mut *mut SfSignature) -> SfStatus {
    guard(|| {
        if r + s == 0 {
            return Err((SfStatus::InvalidArgument, "signature needs r + s >= 1".into()));
        }
        let sig = Signature::standard(r, s).map_err(fail)?;
        unsafe { put(out, SfSignature(sig.shared())) }
    })
}

/// # Safety
/// `sig` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_signature_free(sig: *mut SfSignature) {
    unsafe { free(sig) }
}

/// # Safety
/// `sig` must be a live handle, `input` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_parse(
    sig: *const SfSignature,
    input: *const c_char,
    out: *mut *mut SfPoly,
) -> SfStatus {
    guard(|| {
        let sig = unsafe { deref(sig, "signature") }?;
        let input = unsafe { text(input, "input") }?;
        let p = parse_poly(input, &sig.0).map_err(|e| (SfStatus::ParseError, e.render(input)))?;
        unsafe { put(out, SfPoly(p)) }
    })
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_print(poly: *const SfPoly, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let p = unsafe { deref(poly, "polynomial") }?;
        unsafe { put_string(out, print_poly(&p.0)) }
    })
}

/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_poly_free(poly: *mut SfPoly) {
    unsafe { free(poly) }
}

/// # Safety
/// `sig` must be a live handle, `input` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_field_parse(
    sig: *const SfSignature,
    input: *const c_char,
    out: *mut *mut SfField,
) -> SfStatus {
    guard(|| {
        let sig = unsafe { deref(sig, "signature") }?;
        let input = unsafe { text(input, "input") }?;
        let x = parse_field(input, &sig.0).map_err(|e| (SfStatus::ParseError, e.render(input)))?;
        unsafe { put(out, SfField(x)) }
    })
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_field_print(field: *const SfField, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let x = unsafe { deref(field, "field") }?;
        unsafe { put_string(out, print_field(&x.0)) }
    })
}

/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_field_free(field: *mut SfField) {
    unsafe { free(field) }
}

/// `X(f)`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_field_apply(
    field: *const SfField,
    poly: *const SfPoly,
    out: *mut *mut SfPoly,
) -> SfStatus {
    guard(|| {
        let x = unsafe { deref(field, "field") }?;
        let f = unsafe { deref(poly, "polynomial") }?;
        let value = x.0.apply(&f.0).map_err(fail)?;
        unsafe { put(out, SfPoly(value)) }
    })
}

/// `[X, Y]`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_field_bracket(
    x: *const SfField,
    y: *const SfField,
    out: *mut *mut SfField,
) -> SfStatus {
    guard(|| {
        let x = unsafe { deref(x, "x") }?;
        let y = unsafe { deref(y, "y") }?;
        let value = x.0.bracket(&y.0).map_err(fail)?;
        unsafe { put(out, SfField(value)) }
    })
}

/// Certificate document (JSON) showing `nu` lies in the ideal generated by
/// `eta`. The document is verified before it is returned.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_certify(
    eta: *const SfField,
    nu: *const SfField,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let eta = unsafe { deref(eta, "eta") }?;
        let nu = unsafe { deref(nu, "nu") }?;
        let certified = simplicity_certificate(&eta.0, &nu.0).map_err(fail)?;
        let doc = emit_document(&certified.to_document());
        check_document(&doc)?;
        unsafe { put_string(out, doc) }
    })
}

fn check_document(doc: &str) -> Result<(), Failure> {
    let parsed = parse_document(doc).map_err(fail)?;
    match verify_certificate(&parsed.root, &parsed.seed, &parsed.target).map_err(fail)? {
        Verdict::Verified => Ok(()),
        mismatch => Err((SfStatus::Mismatch, mismatch.to_string())),
    }
}

/// Parses and re-checks a certificate document. Returns `Ok` when it
/// verifies, `Mismatch` when the evaluation differs from the claimed target.
///
/// # Safety
/// `document` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sf_verify_document(document: *const c_char) -> SfStatus {
    guard(|| {
        let doc = unsafe { text(document, "document") }?;
        check_document(doc)
    })
}
