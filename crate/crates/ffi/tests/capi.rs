//! The C entry points driven through raw pointers, as a C caller would.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use growth_forge_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { gf_string_free(p) };
    s
}

fn word(spec: &str) -> *mut GfWord {
    let spec = CString::new(spec).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { gf_word_new(spec.as_ptr(), &mut w) }, GfStatus::Ok);
    w
}

fn group(text: &str) -> *mut GfGroupElement {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gf_group_parse(text.as_ptr(), &mut g) }, GfStatus::Ok);
    g
}

fn render(g: *const GfGroupElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gf_group_to_string(g, &mut s) }, GfStatus::Ok);
    take_string(s)
}

#[test]
fn word_queries() {
    let w = word("tower");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gf_word_length(w, 3, &mut s) }, GfStatus::Ok);
    assert_eq!(take_string(s), "2^^(1;65536)+131076");
    assert_eq!(unsafe { gf_word_prefix(w, 2, &mut s) }, GfStatus::Ok);
    assert_eq!(take_string(s), "x y^65536 x");
    let mut c = 0u64;
    assert_eq!(unsafe { gf_word_max_x(w, 65538, &mut c) }, GfStatus::Ok);
    assert_eq!(c, 2);
    unsafe { gf_word_free(w) };

    let g = word("geo:2");
    let factor = CString::new("x y^2 x y^2 x").unwrap();
    let mut yes = true;
    assert_eq!(unsafe { gf_word_is_factor(g, factor.as_ptr(), &mut yes) }, GfStatus::Ok);
    assert!(!yes);
    assert_eq!(unsafe { gf_word_complexity(g, 2, &mut c) }, GfStatus::Ok);
    assert_eq!(c, 3);
    assert_eq!(unsafe { gf_b_dim(g, 1, &mut c) }, GfStatus::Ok);
    assert_eq!(c, 9);
    unsafe { gf_word_free(g) };
}

#[test]
fn group_arithmetic() {
    let (s1, t0) = (group("s(1)"), group("t(0)"));
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { gf_group_multiply(s1, t0, &mut p) }, GfStatus::Ok);
    assert_eq!(render(p), "z(1) t(0) s(1)");
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { gf_group_commutator(s1, t0, &mut c) }, GfStatus::Ok);
    assert_eq!(render(c), "z(1)");
    let mut central = false;
    assert_eq!(unsafe { gf_group_is_central(c, &mut central) }, GfStatus::Ok);
    assert!(central);
    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { gf_group_inverse(p, &mut inv) }, GfStatus::Ok);
    let mut id = ptr::null_mut();
    assert_eq!(unsafe { gf_group_multiply(p, inv, &mut id) }, GfStatus::Ok);
    assert_eq!(render(id), "e");
    let mut conj = ptr::null_mut();
    assert_eq!(unsafe { gf_group_conjugate(s1, 2, &mut conj) }, GfStatus::Ok);
    assert_eq!(render(conj), "s(3)");
    for h in [s1, t0, p, c, inv, id, conj] {
        unsafe { gf_group_free(h) };
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("geo:1").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { gf_word_new(bad.as_ptr(), &mut w) }, GfStatus::InvalidArgument);
    assert!(w.is_null());
    assert!(take_string(gf_last_error()).contains("sequence"));

    let mut g = ptr::null_mut();
    let bad = CString::new("s(1").unwrap();
    assert_eq!(unsafe { gf_group_parse(bad.as_ptr(), &mut g) }, GfStatus::Parse);
    assert_eq!(unsafe { gf_group_parse(ptr::null(), &mut g) }, GfStatus::NullPointer);
    assert_eq!(unsafe { gf_group_to_string(ptr::null(), &mut ptr::null_mut()) }, GfStatus::NullPointer);

    let w = word("geo:2");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gf_word_length(w, 0, &mut s) }, GfStatus::InvalidArgument);
    assert_eq!(unsafe { gf_word_length(w, 3, ptr::null_mut()) }, GfStatus::NullPointer);
    unsafe {
        gf_word_free(w);
        gf_word_free(ptr::null_mut());
        gf_group_free(ptr::null_mut());
        gf_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/growth_forge.h");
    for name in [
        "gf_last_error", "gf_string_free", "gf_word_new", "gf_word_free", "gf_word_length",
        "gf_word_prefix", "gf_word_is_factor", "gf_word_complexity", "gf_word_max_x", "gf_b_dim",
        "gf_group_parse", "gf_group_free", "gf_group_multiply", "gf_group_inverse",
        "gf_group_conjugate", "gf_group_commutator", "gf_group_is_central", "gf_group_to_string",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct GfWord GfWord;"));
}
