//! C interface. Algebras are opaque handles built from the JSON algebra
//! format; every query returns a status code and writes a JSON report into
//! a string the caller releases with `poisson_string_free`. On failure the
//! message is available from `poisson_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use poisson_core::center::Caps;
use poisson_core::cli::{self, EngineChoice, GorensteinRoute, Report};
use poisson_core::structure::PoissonStructure;
use poisson_core::Error;

/// Opaque algebra handle.
pub struct PoissonAlgebra {
    inner: PoissonStructure,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoissonStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    /// The input is valid but outside what the operation handles.
    Unsupported = 5,
    CapExceeded = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PoissonStatus {
    match e {
        Error::Parse(_) => PoissonStatus::Parse,
        Error::CapExceeded { .. } | Error::SearchSpaceTooLarge { .. } | Error::DegreeBoundTooLarge { .. } => {
            PoissonStatus::CapExceeded
        }
        Error::SmallCharacteristic(_)
        | Error::NotGraded
        | Error::NotPotential
        | Error::AlreadyUnimodular
        | Error::WrongArity { .. } => PoissonStatus::Unsupported,
        _ => PoissonStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (PoissonStatus, String)>) -> PoissonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PoissonStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PoissonStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (PoissonStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PoissonStatus, String) {
    (PoissonStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PoissonStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (PoissonStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn algebra<'a>(a: *const PoissonAlgebra) -> Result<&'a PoissonStructure, (PoissonStatus, String)> {
    a.as_ref().map(|a| &a.inner).ok_or_else(|| null("algebra"))
}

unsafe fn write_report(out: *mut *mut c_char, r: Report) -> Result<(), (PoissonStatus, String)> {
    let body = r.json.to_string();
    *out = CString::new(body).expect("json has no nul").into_raw();
    Ok(())
}

fn degree(d: u32) -> Option<u32> {
    (d != 0).then_some(d)
}

/// Parses an algebra from JSON. On success `*out` owns a handle that must be
/// released with `poisson_algebra_free`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_algebra_from_json(json: *const c_char, out: *mut *mut PoissonAlgebra) -> PoissonStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let inner = poisson_core::io::parse_algebra(text).map_err(core_err)?;
        *out = Box::into_raw(Box::new(PoissonAlgebra { inner }));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from `poisson_algebra_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn poisson_algebra_free(a: *mut PoissonAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_algebra_variables(a: *const PoissonAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.n())
}

/// Characteristic, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_algebra_characteristic(a: *const PoissonAlgebra) -> u32 {
    a.as_ref().map_or(0, |a| a.inner.p())
}

/// Center report up to `max_degree` (0 selects `2p`).
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_center_json(
    a: *const PoissonAlgebra,
    max_degree: u32,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ps = algebra(a)?;
        let r = cli::center_report(ps, degree(max_degree), EngineChoice::Auto, &Caps::default()).map_err(core_err)?;
        write_report(out, r)
    })
}

/// Gorenstein report; `max_degree` (0 selects `5p`) only matters for
/// non-skew brackets.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_gorenstein_json(
    a: *const PoissonAlgebra,
    max_degree: u32,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ps = algebra(a)?;
        let r = cli::gorenstein_report(ps, degree(max_degree), GorensteinRoute::Both, &Caps::default()).map_err(core_err)?;
        write_report(out, r)
    })
}

/// Log-ozone report from normal elements of degree `<= normal_degree`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_loz_json(
    a: *const PoissonAlgebra,
    normal_degree: u32,
    max_degree: u32,
    predicates: bool,
    out: *mut *mut c_char,
) -> PoissonStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ps = algebra(a)?;
        let r = cli::loz_report(ps, normal_degree, degree(max_degree), predicates, &Caps::default())
            .map_err(core_err)?;
        write_report(out, r)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn poisson_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn poisson_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
