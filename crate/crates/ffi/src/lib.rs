//! C ABI over growth-forge.
//!
//! Handles are opaque and owned by the caller; release them with the matching
//! `gf_*_free`. Strings returned through out-parameters are heap allocated and
//! must be released with `gf_string_free`. Every call returns a `GfStatus`; on
//! failure `gf_last_error` describes the most recent error on this thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use growth_forge::centre::{CentreError, GroupRing};
use growth_forge::field::Field;
use growth_forge::group::{parse_group_word, GroupElement};
use growth_forge::word::{InfiniteWord, RunSequence, RunWord, WordError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Budget = 4,
    Panic = 5,
}

/// An infinite word `v∞` for a fixed run sequence.
pub struct GfWord {
    inner: Arc<InfiniteWord>,
}

/// An element of the group `G` in normal form.
pub struct GfGroupElement {
    inner: GroupElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(GfStatus, String);

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        let status = match e {
            WordError::Parse { .. } => GfStatus::Parse,
            WordError::InvalidLevel(_) | WordError::InvalidSequence(_) => GfStatus::InvalidArgument,
            _ => GfStatus::Budget,
        };
        Failure(status, e.to_string())
    }
}

impl From<CentreError> for Failure {
    fn from(e: CentreError) -> Self {
        match e {
            CentreError::Word(w) => w.into(),
            other => Failure(GfStatus::Budget, other.to_string()),
        }
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GfStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GfStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GfStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(GfStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GfStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(GfStatus::InvalidArgument, "interior NUL".into()))?;
    write(out, c.into_raw())
}

unsafe fn write_group(out: *mut *mut GfGroupElement, g: GroupElement) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(GfGroupElement { inner: g })))
}

/// Message for the last failed call on this thread, or NULL. Free with `gf_string_free`.
#[no_mangle]
pub extern "C" fn gf_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a word from a sequence spec such as `tower`, `geo:2` or `list:2,5,9`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_new(spec: *const c_char, out: *mut *mut GfWord) -> GfStatus {
    guard(|| {
        let seq: RunSequence = text(spec)?.parse()?;
        let word = GfWord {
            inner: Arc::new(InfiniteWord::new(seq)),
        };
        write(out, Box::into_raw(Box::new(word)))
    })
}

/// # Safety
/// `word` must be NULL or a handle from `gf_word_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_word_free(word: *mut GfWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// `|v_k|` in decimal or tower notation.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_length(word: *const GfWord, k: u32, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let len = handle(word)?.inner.word_length(k)?;
        write_string(out, len.to_string())
    })
}

/// `v_k` in run notation, e.g. `x y^2 x`.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_prefix(word: *const GfWord, k: u32, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let prefix = handle(word)?.inner.build_prefix(k)?;
        write_string(out, prefix.to_string())
    })
}

/// # Safety
/// `word` must be a live handle, `factor` a NUL-terminated run-notation word, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_is_factor(word: *const GfWord, factor: *const c_char, out: *mut bool) -> GfStatus {
    guard(|| {
        let w: RunWord = text(factor)?.parse()?;
        let answer = handle(word)?.inner.is_factor(&w)?;
        write(out, answer)
    })
}

/// Number of distinct factors of length `l`.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_complexity(word: *const GfWord, l: u64, out: *mut u64) -> GfStatus {
    guard(|| {
        let p = handle(word)?.inner.factor_complexity(l)?;
        write(out, p)
    })
}

/// Largest number of `x`s in a factor of length `l`.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_word_max_x(word: *const GfWord, l: u64, out: *mut u64) -> GfStatus {
    guard(|| {
        let c = handle(word)?.inner.max_x_occurrences(l)?;
        write(out, c)
    })
}

/// `dim V^n` for the algebra `B` over the rationals.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_b_dim(word: *const GfWord, n: u64, out: *mut u64) -> GfStatus {
    guard(|| {
        let ring = GroupRing::new(handle(word)?.inner.clone(), Field::Rationals);
        let d = ring.b_dim_vn(n)?;
        write(out, d)
    })
}

/// Parses a group word such as `s(1) t(0)^-1 u^2`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_parse(word: *const c_char, out: *mut *mut GfGroupElement) -> GfStatus {
    guard(|| {
        let g = parse_group_word(text(word)?).map_err(|e| Failure(GfStatus::Parse, e.to_string()))?;
        write_group(out, g)
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_group_free(g: *mut GfGroupElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_multiply(
    a: *const GfGroupElement,
    b: *const GfGroupElement,
    out: *mut *mut GfGroupElement,
) -> GfStatus {
    guard(|| {
        let product = handle(a)?.inner.multiply(&handle(b)?.inner);
        write_group(out, product)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_inverse(a: *const GfGroupElement, out: *mut *mut GfGroupElement) -> GfStatus {
    guard(|| write_group(out, handle(a)?.inner.inverse()))
}

/// `u^k g u^-k`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_conjugate(
    a: *const GfGroupElement,
    k: i64,
    out: *mut *mut GfGroupElement,
) -> GfStatus {
    guard(|| write_group(out, handle(a)?.inner.conjugate_by_u(&k.into())))
}

/// `a b a^-1 b^-1`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_commutator(
    a: *const GfGroupElement,
    b: *const GfGroupElement,
    out: *mut *mut GfGroupElement,
) -> GfStatus {
    guard(|| {
        let c = handle(a)?.inner.commutator(&handle(b)?.inner);
        write_group(out, c)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_is_central(a: *const GfGroupElement, out: *mut bool) -> GfStatus {
    guard(|| write(out, handle(a)?.inner.is_central()))
}

/// Normal form text, `e` for the identity.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_group_to_string(a: *const GfGroupElement, out: *mut *mut c_char) -> GfStatus {
    guard(|| write_string(out, handle(a)?.inner.to_string()))
}
