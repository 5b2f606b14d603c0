use std::ffi::{c_char, CStr, CString};
use std::ptr;

use superfield_ffi::*;

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sf_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sf_last_error_message()) }.to_str().unwrap().to_owned()
}

struct Sig(*mut SfSignature);

impl Sig {
    fn new(r: usize, s: usize) -> Self {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sf_signature_new(r, s, &mut out) }, SfStatus::Ok);
        Sig(out)
    }

    fn field(&self, text: &str) -> *mut SfField {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sf_field_parse(self.0, c(text).as_ptr(), &mut out) }, SfStatus::Ok);
        out
    }
}

impl Drop for Sig {
    fn drop(&mut self) {
        unsafe { sf_signature_free(self.0) };
    }
}

#[test]
fn apply_and_bracket() {
    let sig = Sig::new(1, 1);
    let x = sig.field("d(t)");
    let y = sig.field("t*d(t)");
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { sf_poly_parse(sig.0, c("t^2").as_ptr(), &mut f) }, SfStatus::Ok);
    let mut value = ptr::null_mut();
    assert_eq!(unsafe { sf_field_apply(x, f, &mut value) }, SfStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sf_poly_print(value, &mut text) }, SfStatus::Ok);
    assert_eq!(unsafe { take(text) }, "2*t");
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { sf_field_bracket(x, y, &mut b) }, SfStatus::Ok);
    assert_eq!(unsafe { sf_field_print(b, &mut text) }, SfStatus::Ok);
    assert_eq!(unsafe { take(text) }, "d(t)");
    unsafe {
        sf_poly_free(f);
        sf_poly_free(value);
        sf_field_free(x);
        sf_field_free(y);
        sf_field_free(b);
    }
}

#[test]
fn parse_errors_carry_a_message() {
    let sig = Sig::new(1, 1);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { sf_poly_parse(sig.0, c("theta1^2").as_ptr(), &mut f) }, SfStatus::ParseError);
    assert!(f.is_null());
    assert!(last_error().contains("odd variable"), "{}", last_error());
    let mut sig0 = ptr::null_mut();
    assert_eq!(unsafe { sf_signature_new(0, 0, &mut sig0) }, SfStatus::InvalidArgument);
}

#[test]
fn null_arguments() {
    let sig = Sig::new(1, 0);
    assert_eq!(unsafe { sf_field_parse(sig.0, ptr::null(), &mut ptr::null_mut()) }, SfStatus::NullPointer);
    assert_eq!(unsafe { sf_field_parse(sig.0, c("d(t)").as_ptr(), ptr::null_mut()) }, SfStatus::NullPointer);
    assert_eq!(unsafe { sf_verify_document(ptr::null()) }, SfStatus::NullPointer);
    unsafe {
        sf_field_free(ptr::null_mut());
        sf_string_free(ptr::null_mut());
    }
}

#[test]
fn certify_and_verify() {
    let sig = Sig::new(1, 1);
    let eta = sig.field("theta1*d(t)");
    let nu = sig.field("d(theta1)");
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { sf_certify(eta, nu, &mut doc) }, SfStatus::Ok, "{}", last_error());
    let text = unsafe { take(doc) };
    assert_eq!(unsafe { sf_verify_document(c(&text).as_ptr()) }, SfStatus::Ok);
    assert_eq!(last_error(), "");

    let edited = text.replacen("\"coeff\":\"-1/2\"", "\"coeff\":\"1/2\"", 1);
    assert_eq!(unsafe { sf_verify_document(c(&edited).as_ptr()) }, SfStatus::Mismatch);
    assert!(last_error().contains("MISMATCH"));
    assert_eq!(unsafe { sf_verify_document(c(&text[..20]).as_ptr()) }, SfStatus::ParseError);

    let odd = Sig::new(0, 2);
    let d = odd.field("d(theta1)");
    assert_eq!(unsafe { sf_certify(d, d, &mut ptr::null_mut()) }, SfStatus::InvalidArgument);
    unsafe {
        sf_field_free(eta);
        sf_field_free(nu);
        sf_field_free(d);
    }
}

#[test]
fn mixed_signatures_are_rejected() {
    let a = Sig::new(1, 0);
    let b = Sig::new(1, 0);
    let x = a.field("d(t)");
    let y = b.field("d(t)");
    let mut out = ptr::null_mut();
    // Equal signatures from different handles are compatible.
    assert_eq!(unsafe { sf_field_bracket(x, y, &mut out) }, SfStatus::Ok);
    let c2 = Sig::new(2, 0);
    let z = c2.field("d(t1)");
    assert_eq!(unsafe { sf_field_bracket(x, z, &mut ptr::null_mut()) }, SfStatus::InvalidArgument);
    unsafe {
        sf_field_free(x);
        sf_field_free(y);
        sf_field_free(z);
        sf_field_free(out);
    }
}
