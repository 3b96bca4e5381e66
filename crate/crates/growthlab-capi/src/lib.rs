//! C ABI over the growthlab core: opaque set handles, status codes, and
//! string results so that other languages can drive the exact kernels.
//!
//! Conventions: every function returns a `GrowthlabStatus`; results come
//! out through pointer parameters. Handles from `growthlab_set_*` must be
//! released with `growthlab_set_free`, strings with
//! `growthlab_string_free`. All inputs are UTF-8 literals in the same
//! formats the CLI accepts, e.g. `Fp(101){1,2,3}` or `Fq(t;2){1,t,t^2}`.

use std::ffi::{c_char, CStr, CString};

use growthlab::set::{self, FiniteSet, SetOp};
use growthlab::Error;

/// Status codes of every C-ABI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    FieldMismatch = 4,
    DivisionByZero = 5,
    EmptyInput = 6,
    Precondition = 7,
    BudgetExceeded = 8,
    Overflow = 9,
    InternalError = 10,
}

fn status_of(e: &Error) -> GrowthlabStatus {
    match e {
        Error::Parse(_) => GrowthlabStatus::ParseError,
        Error::FieldMismatch => GrowthlabStatus::FieldMismatch,
        Error::DivisionByZero | Error::ZeroDivisorEdge | Error::ZeroDilation => {
            GrowthlabStatus::DivisionByZero
        }
        Error::EmptyInput => GrowthlabStatus::EmptyInput,
        Error::BudgetExceeded(_) | Error::SubsetBudgetExceeded(_) => {
            GrowthlabStatus::BudgetExceeded
        }
        _ => GrowthlabStatus::Precondition,
    }
}

/// Opaque handle to a finite set over one of the exact fields.
pub struct GrowthlabSet {
    inner: FiniteSet,
}

/// Pairwise set operations, mirroring the library's `SetOp`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthlabOp {
    Sum = 0,
    Diff = 1,
    Prod = 2,
    Ratio = 3,
}

impl GrowthlabOp {
    fn to_op(self) -> SetOp {
        match self {
            GrowthlabOp::Sum => SetOp::Sum,
            GrowthlabOp::Diff => SetOp::Diff,
            GrowthlabOp::Prod => SetOp::Prod,
            GrowthlabOp::Ratio => SetOp::Ratio,
        }
    }
}

/// Energy kinds, mirroring `EnergyKind`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthlabEnergy {
    Additive = 0,
    Multiplicative = 1,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, GrowthlabStatus> {
    if ptr.is_null() {
        return Err(GrowthlabStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| GrowthlabStatus::InvalidUtf8)
}

fn emit_set(out: *mut *mut GrowthlabSet, set: FiniteSet) -> GrowthlabStatus {
    if out.is_null() {
        return GrowthlabStatus::NullPointer;
    }
    unsafe {
        *out = Box::into_raw(Box::new(GrowthlabSet { inner: set }));
    }
    GrowthlabStatus::Ok
}

fn emit_string(out: *mut *mut c_char, s: String) -> GrowthlabStatus {
    if out.is_null() {
        return GrowthlabStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe {
                *out = c.into_raw();
            }
            GrowthlabStatus::Ok
        }
        Err(_) => GrowthlabStatus::InternalError,
    }
}

unsafe fn set_ref<'a>(ptr: *const GrowthlabSet) -> Result<&'a FiniteSet, GrowthlabStatus> {
    if ptr.is_null() {
        return Err(GrowthlabStatus::NullPointer);
    }
    Ok(unsafe { &(*ptr).inner })
}

/// Parse a set literal such as `Fp(101){1,2,3}` into a new handle.
///
/// # Safety
/// `literal` must be a valid NUL-terminated string and `out` a valid
/// pointer; the returned handle must be freed with `growthlab_set_free`.
#[no_mangle]
pub unsafe extern "C" fn growthlab_set_parse(
    literal: *const c_char,
    out: *mut *mut GrowthlabSet,
) -> GrowthlabStatus {
    let text = match unsafe { read_str(literal) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match set::parse_set(text) {
        Ok(set) => emit_set(out, set),
        Err(e) => status_of(&e),
    }
}

/// Release a set handle. Null is a no-op.
///
/// # Safety
/// `ptr` must be null or a handle previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn growthlab_set_free(ptr: *mut GrowthlabSet) {
    if !ptr.is_null() {
        drop(unsafe { Box::from_raw(ptr) });
    }
}

/// Number of elements.
///
/// # Safety
/// `ptr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_set_len(
    ptr: *const GrowthlabSet,
    out: *mut usize,
) -> GrowthlabStatus {
    let set = match unsafe { set_ref(ptr) } {
        Ok(s) => s,
        Err(e) => return e,
    };
    if out.is_null() {
        return GrowthlabStatus::NullPointer;
    }
    unsafe {
        *out = set.len();
    }
    GrowthlabStatus::Ok
}

/// Render the canonical set literal. Free the result with
/// `growthlab_string_free`.
///
/// # Safety
/// `ptr` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_set_format(
    ptr: *const GrowthlabSet,
    out: *mut *mut c_char,
) -> GrowthlabStatus {
    let set = match unsafe { set_ref(ptr) } {
        Ok(s) => s,
        Err(e) => return e,
    };
    emit_string(out, set.to_string())
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `ptr` must be null or a string previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn growthlab_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(unsafe { CString::from_raw(ptr) });
    }
}

/// The pairwise image set A op B as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_pairwise(
    a: *const GrowthlabSet,
    b: *const GrowthlabSet,
    op: GrowthlabOp,
    out: *mut *mut GrowthlabSet,
) -> GrowthlabStatus {
    let (a, b) = match (unsafe { set_ref(a) }, unsafe { set_ref(b) }) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    match set::pairwise_set(a, b, op.to_op()) {
        Ok(s) => emit_set(out, s),
        Err(e) => status_of(&e),
    }
}

/// The iterated sumset kA.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_iterated_sumset(
    a: *const GrowthlabSet,
    k: u32,
    out: *mut *mut GrowthlabSet,
) -> GrowthlabStatus {
    let a = match unsafe { set_ref(a) } {
        Ok(a) => a,
        Err(e) => return e,
    };
    match set::iterated_sumset(a, k) {
        Ok(s) => emit_set(out, s),
        Err(e) => status_of(&e),
    }
}

/// Exact additive or multiplicative energy E(A,B). Counts above 2^64−1
/// report `Overflow`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_energy(
    a: *const GrowthlabSet,
    b: *const GrowthlabSet,
    kind: GrowthlabEnergy,
    out: *mut u64,
) -> GrowthlabStatus {
    let (a, b) = match (unsafe { set_ref(a) }, unsafe { set_ref(b) }) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    if out.is_null() {
        return GrowthlabStatus::NullPointer;
    }
    let kind = match kind {
        GrowthlabEnergy::Additive => set::EnergyKind::Additive,
        GrowthlabEnergy::Multiplicative => set::EnergyKind::Multiplicative,
    };
    match set::energy(a, b, kind) {
        Ok(v) => {
            if v > u64::MAX as u128 {
                return GrowthlabStatus::Overflow;
            }
            unsafe {
                *out = v as u64;
            }
            GrowthlabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The expander image f(A) = A(A+1).
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_f_image(
    a: *const GrowthlabSet,
    out: *mut *mut GrowthlabSet,
) -> GrowthlabStatus {
    let a = match unsafe { set_ref(a) } {
        Ok(a) => a,
        Err(e) => return e,
    };
    match growthlab::expander::f_image(a) {
        Ok(s) => emit_set(out, s),
        Err(e) => status_of(&e),
    }
}

/// Decide separability of a function-field set; writes 1 or 0.
///
/// # Safety
/// `a` must be a live handle over F_q(t); `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn growthlab_is_separable(
    a: *const GrowthlabSet,
    out: *mut u8,
) -> GrowthlabStatus {
    let a = match unsafe { set_ref(a) } {
        Ok(a) => a,
        Err(e) => return e,
    };
    if out.is_null() {
        return GrowthlabStatus::NullPointer;
    }
    match growthlab::ffield::is_separable(a) {
        Ok(report) => {
            unsafe {
                *out = report.separable as u8;
            }
            GrowthlabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The function-field sum-product certificate as a JSON string.
///
/// # Safety
/// `a` must be a live handle over F_q(t); `out` a valid pointer; free the
/// string with `growthlab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn growthlab_ff_sumproduct_json(
    a: *const GrowthlabSet,
    out: *mut *mut c_char,
) -> GrowthlabStatus {
    let a = match unsafe { set_ref(a) } {
        Ok(a) => a,
        Err(e) => return e,
    };
    match growthlab::ffield::ff_sumproduct_certificate(a) {
        Ok(cert) => emit_string(out, cert.to_json().to_string()),
        Err(e) => status_of(&e),
    }
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn growthlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
