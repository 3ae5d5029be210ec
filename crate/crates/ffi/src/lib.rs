//! C ABI over `atomcode`.
//!
//! Objects cross the boundary as opaque handles that must be released with
//! the matching `*_free` function. Every call returns an [`AtomcodeStatus`];
//! on failure a message is available from [`atomcode_last_error`] until the
//! next call on the same thread. Exact integers are returned as decimal
//! strings owned by the caller and released with [`atomcode_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use atomcode::codes::singleton_bound;
use atomcode::invariant::{distance, n_count};
use atomcode::io::{format_subspace, parse_code, parse_subspace};
use atomcode::{BigCount, Code, DecodeOutcome, Error, FieldSpec, Metric, Subspace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomcodeStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    FieldMismatch = 3,
    DimensionMismatch = 4,
    Infeasible = 5,
    GuardExceeded = 6,
    Arithmetic = 7,
    NullPointer = 8,
    /// Decoding tie; no index was written.
    Ambiguous = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomcodeMetric {
    Subspace = 0,
    Atomic = 1,
}

impl From<AtomcodeMetric> for Metric {
    fn from(m: AtomcodeMetric) -> Self {
        match m {
            AtomcodeMetric::Subspace => Metric::Subspace,
            AtomcodeMetric::Atomic => Metric::Atomic,
        }
    }
}

/// Opaque subspace handle.
pub struct AtomcodeSubspace(Subspace);

/// Opaque code handle.
pub struct AtomcodeCode(Code);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(AtomcodeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidModulus(_) | Error::InverseOfZero | Error::EntryOutOfRange { .. } | Error::InvalidArgument(_) => {
                AtomcodeStatus::InvalidArgument
            }
            Error::FieldMismatch { .. } => AtomcodeStatus::FieldMismatch,
            Error::DimensionMismatch(_) => AtomcodeStatus::DimensionMismatch,
            Error::GuardExceeded(_) => AtomcodeStatus::GuardExceeded,
            Error::Infeasible(_) => AtomcodeStatus::Infeasible,
            Error::Parse { .. } => AtomcodeStatus::Parse,
            Error::Arithmetic(_) => AtomcodeStatus::Arithmetic,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AtomcodeStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AtomcodeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AtomcodeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AtomcodeStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AtomcodeStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn atomcode_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn atomcode_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text subspace format (`q N` header, one row per line).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_parse(text: *const c_char, out: *mut *mut AtomcodeSubspace) -> AtomcodeStatus {
    guard(|| {
        let s = parse_subspace(c_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(AtomcodeSubspace(s))), "out")
    })
}

/// Row space of a row-major `rows x n` matrix over `F_q`.
///
/// # Safety
/// `data` must point to `rows * n` values (it may be NULL when that is 0).
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_from_rows(
    q: u32,
    n: usize,
    data: *const u32,
    rows: usize,
    out: *mut *mut AtomcodeSubspace,
) -> AtomcodeStatus {
    guard(|| {
        let spec = FieldSpec::new(q as u64)?;
        let len = rows.checked_mul(n).ok_or_else(|| Failure(AtomcodeStatus::InvalidArgument, "size overflow".into()))?;
        let flat: &[u32] = if len == 0 {
            &[]
        } else if data.is_null() {
            return Err(null("data"));
        } else {
            std::slice::from_raw_parts(data, len)
        };
        let rows: Vec<&[u32]> = if n == 0 { vec![&[][..]; rows] } else { flat.chunks(n).collect() };
        let s = Subspace::from_rows(spec, n, &rows)?;
        put(out, Box::into_raw(Box::new(AtomcodeSubspace(s))), "out")
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_free(s: *mut AtomcodeSubspace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_dim(s: *const AtomcodeSubspace, out: *mut usize) -> AtomcodeStatus {
    guard(|| put(out, deref(s, "subspace")?.0.dim(), "out"))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_ambient_dim(s: *const AtomcodeSubspace, out: *mut usize) -> AtomcodeStatus {
    guard(|| put(out, deref(s, "subspace")?.0.ambient_dim(), "out"))
}

/// Canonical text form of `s`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_subspace_format(s: *const AtomcodeSubspace, out: *mut *mut c_char) -> AtomcodeStatus {
    guard(|| put(out, to_c(format_subspace(&deref(s, "subspace")?.0)), "out"))
}

/// Exact number of minimal atomic decompositions of a `dim`-dimensional
/// space over `F_q`, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_n_count(q: u64, dim: usize, out: *mut *mut c_char) -> AtomcodeStatus {
    guard(|| put(out, to_c(n_count(dim, q)?.to_string()), "out"))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_distance(
    metric: AtomcodeMetric,
    a: *const AtomcodeSubspace,
    b: *const AtomcodeSubspace,
    out: *mut *mut c_char,
) -> AtomcodeStatus {
    guard(|| {
        let d = distance(metric.into(), &deref(a, "a")?.0, &deref(b, "b")?.0)?;
        put(out, to_c(d.to_string()), "out")
    })
}

/// Parses the text code format (`q N count` header, then blocks).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_code_parse(text: *const c_char, out: *mut *mut AtomcodeCode) -> AtomcodeStatus {
    guard(|| {
        let c = parse_code(c_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(AtomcodeCode(c))), "out")
    })
}

/// # Safety
/// `c` must be NULL or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn atomcode_code_free(c: *mut AtomcodeCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_code_len(c: *const AtomcodeCode, out: *mut usize) -> AtomcodeStatus {
    guard(|| put(out, deref(c, "code")?.0.len(), "out"))
}

/// Minimum-distance decoding. On a tie returns `ATOMCODE_STATUS_AMBIGUOUS`
/// and writes nothing; `distance` may be NULL.
///
/// # Safety
/// Handles must be live; `index` must be writable; `distance` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn atomcode_code_decode(
    c: *const AtomcodeCode,
    received: *const AtomcodeSubspace,
    metric: AtomcodeMetric,
    index: *mut usize,
    distance: *mut *mut c_char,
) -> AtomcodeStatus {
    guard(|| {
        let r = deref(c, "code")?.0.decode(&deref(received, "received")?.0, metric.into())?;
        match r.outcome {
            DecodeOutcome::Unique(i) => {
                put(index, i, "index")?;
                if !distance.is_null() {
                    distance.write(to_c(r.distance.to_string()));
                }
                Ok(())
            }
            DecodeOutcome::Ambiguous(ties) => {
                let ties: Vec<String> = ties.iter().map(usize::to_string).collect();
                Err(Failure(AtomcodeStatus::Ambiguous, format!("tie between codewords {}", ties.join(" "))))
            }
        }
    })
}

/// Singleton-type bound for decimal minimum distance `d`, as the CSV row
/// `q,N,k,D,s_star,delta_eff,bound`.
///
/// # Safety
/// `d` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn atomcode_singleton_bound(
    q: u64,
    n: usize,
    k: usize,
    d: *const c_char,
    out: *mut *mut c_char,
) -> AtomcodeStatus {
    guard(|| {
        let d: BigCount = c_str(d, "d")?.parse()?;
        put(out, to_c(singleton_bound(q, n, k, &d)?.csv_row()), "out")
    })
}
