//! C ABI for `ckhopf`.
//!
//! Elements, tensors and coefficient tables live behind opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns a [`CkStatus`] and writes its result through an out-pointer;
//! on failure `ck_last_error` describes the problem. Strings returned by the
//! library are NUL-terminated UTF-8 and must be released with
//! `ck_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ckhopf::cm::{coeff_recursion, delta, extract_coefficients, recursion_table, CoeffTable, IndexSeq};
use ckhopf::dominant::{closed_form_table, harmonic, poly_p, TailSeq};
use ckhopf::hopf::{antipode_recursive, antipode_takeuchi, coproduct, counit, graft_b, product};
use ckhopf::prelie::{growth_n, prelie};
use ckhopf::util::rational_to_string;
use ckhopf::{Error, LinComb, Tensor};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Guard = 5,
    Arithmetic = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkAntipodeMethod {
    Recursive = 0,
    Takeuchi = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkCoeffMethod {
    Extract = 0,
    Recursion = 1,
    ClosedForm = 2,
}

/// An integer combination of forests.
pub struct CkElement(LinComb);

/// An element of the tensor square.
pub struct CkTensor(Tensor);

/// The coefficients of `S(δ_n)` in the `δ`-monomials.
pub struct CkCoeffTable(CoeffTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CkStatus {
    match e {
        Error::Parse { .. } => CkStatus::Parse,
        Error::InvalidVertex(_) | Error::NotAugmented(_) | Error::InvalidArgument(_) => CkStatus::InvalidArgument,
        Error::Guard { .. } => CkStatus::Guard,
        Error::RankDeficient { .. } | Error::Inconsistent | Error::NonIntegral { .. } => CkStatus::Arithmetic,
    }
}

struct Fail(CkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic for `ck_last_error`.
fn guarded<F: FnOnce() -> Result<(), Fail>>(f: F) -> CkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CkStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            CkStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(CkStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_slice<'a>(p: *const u32, len: usize) -> Result<&'a [u32], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null("entries"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("library strings contain no NUL").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a forest in bracket notation, or a combination `c1*F1 + c2*F2`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_element_parse(text: *const c_char, out: *mut *mut CkElement) -> CkStatus {
    guarded(|| {
        let x: LinComb = read_str(text, "text")?.parse()?;
        write_out(out, CkElement(x))
    })
}

/// # Safety
/// `x` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn ck_element_free(x: *mut CkElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Text form `c1*F1 + c2*F2 + ...`.
///
/// # Safety
/// `x` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_element_to_string(x: *const CkElement, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(x, "element")?.0.to_string()))
}

/// JSON list of `{coefficient, forest}` records.
///
/// # Safety
/// `x` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_element_to_json(x: *const CkElement, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(x, "element")?.0.to_json()))
}

/// Counit as a decimal string.
///
/// # Safety
/// `x` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_counit(x: *const CkElement, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, counit(&read_ref(x, "element")?.0).to_string()))
}

unsafe fn binary(
    a: *const CkElement,
    b: *const CkElement,
    out: *mut *mut CkElement,
    op: fn(&LinComb, &LinComb) -> LinComb,
) -> CkStatus {
    guarded(|| {
        let r = op(&read_ref(a, "a")?.0, &read_ref(b, "b")?.0);
        write_out(out, CkElement(r))
    })
}

unsafe fn unary(a: *const CkElement, out: *mut *mut CkElement, op: fn(&LinComb) -> LinComb) -> CkStatus {
    guarded(|| {
        let r = op(&read_ref(a, "a")?.0);
        write_out(out, CkElement(r))
    })
}

/// Commutative product.
///
/// # Safety
/// `a` and `b` must be live elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_product(a: *const CkElement, b: *const CkElement, out: *mut *mut CkElement) -> CkStatus {
    binary(a, b, out, product)
}

/// PreLie grafting product `a • b`.
///
/// # Safety
/// `a` and `b` must be live elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_prelie(a: *const CkElement, b: *const CkElement, out: *mut *mut CkElement) -> CkStatus {
    binary(a, b, out, prelie)
}

/// # Safety
/// `a` must be a live element; `out` must be writable; `method` must be one
/// of the declared enumerators.
#[no_mangle]
pub unsafe extern "C" fn ck_antipode(
    a: *const CkElement,
    method: CkAntipodeMethod,
    out: *mut *mut CkElement,
) -> CkStatus {
    match method {
        CkAntipodeMethod::Recursive => unary(a, out, antipode_recursive),
        CkAntipodeMethod::Takeuchi => unary(a, out, antipode_takeuchi),
    }
}

/// Grafting operator: a new root below every forest.
///
/// # Safety
/// `a` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_graft(a: *const CkElement, out: *mut *mut CkElement) -> CkStatus {
    unary(a, out, graft_b)
}

/// Growth operator `x • []`.
///
/// # Safety
/// `a` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_grow(a: *const CkElement, out: *mut *mut CkElement) -> CkStatus {
    unary(a, out, growth_n)
}

/// The generator `δ_n`, `n ≥ 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_delta(n: usize, out: *mut *mut CkElement) -> CkStatus {
    guarded(|| write_out(out, CkElement(delta(n)?)))
}

/// # Safety
/// `a` must be a live element; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_coproduct(a: *const CkElement, out: *mut *mut CkTensor) -> CkStatus {
    guarded(|| write_out(out, CkTensor(coproduct(&read_ref(a, "a")?.0))))
}

/// # Safety
/// `t` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn ck_tensor_free(t: *mut CkTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Text form `c*L⊗R + ...`.
///
/// # Safety
/// `t` must be a live tensor; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_tensor_to_string(t: *const CkTensor, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(t, "tensor")?.0.to_string()))
}

/// JSON list of `{coefficient, left, right}` records.
///
/// # Safety
/// `t` must be a live tensor; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_tensor_to_json(t: *const CkTensor, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(t, "tensor")?.0.to_json()))
}

/// Number of terms of a tensor; 0 for null.
///
/// # Safety
/// `t` must be a live tensor or null.
#[no_mangle]
pub unsafe extern "C" fn ck_tensor_len(t: *const CkTensor) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// Coefficient table of `S(δ_n)` computed with the given method.
///
/// # Safety
/// `out` must be writable; `method` must be one of the declared enumerators.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_table(n: usize, method: CkCoeffMethod, out: *mut *mut CkCoeffTable) -> CkStatus {
    guarded(|| {
        let table = match method {
            CkCoeffMethod::Extract => extract_coefficients(n)?,
            CkCoeffMethod::Recursion => recursion_table(n)?,
            CkCoeffMethod::ClosedForm => closed_form_table(n)?,
        };
        write_out(out, CkCoeffTable(table))
    })
}

/// # Safety
/// `t` must come from this library and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_table_free(t: *mut CkCoeffTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of entries (partitions of n); 0 for null.
///
/// # Safety
/// `t` must be a live table or null.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_table_len(t: *const CkCoeffTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.entries.len())
}

/// `{n, method, entries: [{index, a, b}]}`.
///
/// # Safety
/// `t` must be a live table; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_table_to_json(t: *const CkCoeffTable, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(t, "table")?.0.to_json()))
}

/// CSV with columns `index,a,b`.
///
/// # Safety
/// `t` must be a live table; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_table_to_csv(t: *const CkCoeffTable, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, read_ref(t, "table")?.0.to_csv()))
}

/// `a_{i_1..i_n}` by the coefficient recursion, as a decimal string.
/// The entries must satisfy `Σ k i_k = len`.
///
/// # Safety
/// `entries` must point to `len` readable values (or be null when `len` is
/// 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_coeff_recursion(entries: *const u32, len: usize, out: *mut *mut c_char) -> CkStatus {
    guarded(|| {
        let idx = IndexSeq::new(read_slice(entries, len)?.to_vec())?;
        if idx.order() == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()).into());
        }
        write_string(out, coeff_recursion(&idx).to_string())
    })
}

/// The polynomial `P` of the dominant sequence of the tail `(i_2, i_3, ...)`,
/// in expanded text form.
///
/// # Safety
/// `tail` must point to `len` readable values (or be null when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_poly_p(tail: *const u32, len: usize, out: *mut *mut c_char) -> CkStatus {
    guarded(|| {
        let t = TailSeq::new(read_slice(tail, len)?.to_vec());
        write_string(out, poly_p(&t.dominant()).to_string())
    })
}

/// `H_n^{(k)}` as an exact rational string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_harmonic(n: usize, k: usize, out: *mut *mut c_char) -> CkStatus {
    guarded(|| write_string(out, rational_to_string(&harmonic(n, k))))
}
