//! C ABI for the latring toolkit.
//!
//! Handles are opaque pointers created and freed by this library; every
//! function returns a [`LatStatus`] and writes results through out
//! pointers. Returned strings are NUL-terminated, owned by the caller,
//! and must be released with [`lat_string_free`]. On any failure a
//! human-readable message is stored per thread and can be read with
//! [`lat_last_error_message`].

use latring::analyze::Finding;
use latring::cli::report_pairs;
use latring::fileformat::{parse, serialize, NamedSemiring, Structure};
use latring::generators::realize;
use latring::group_semiring::AdditionFlavor;
use latring::sdl::{build_strong_sdl, BuildOptions};
use latring::AnalysisReport;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result code of every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    WrongKind = 4,
    CheckFailed = 5,
    ValidationFailed = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

/// Addition flavor selector for analysis.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatFlavor {
    Left = 0,
    Right = 1,
}

impl From<LatFlavor> for AdditionFlavor {
    fn from(f: LatFlavor) -> Self {
        match f {
            LatFlavor::Left => AdditionFlavor::LeftZero,
            LatFlavor::Right => AdditionFlavor::RightZero,
        }
    }
}

/// An owned semiring: tables plus element names.
pub struct LatSemiring {
    inner: NamedSemiring,
}

/// An owned analysis report.
pub struct LatReport {
    report: AnalysisReport,
    names: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").expect("empty"));
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes removed");
    });
}

/// The message of the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn guard<F: FnOnce() -> LatStatus>(body: F) -> LatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            LatStatus::Panic
        }
    }
}

/// Reads a caller string; on failure records an error and returns None.
unsafe fn read_str<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        set_error("text argument is null");
        return None;
    }
    match CStr::from_ptr(text).to_str() {
        Ok(s) => Some(s),
        Err(_) => {
            set_error("text argument is not valid UTF-8");
            None
        }
    }
}

fn give_string(out: *mut *mut c_char, content: String) -> LatStatus {
    let sanitized = content.replace('\0', " ");
    let c = CString::new(sanitized).expect("NUL bytes removed");
    unsafe { *out = c.into_raw() };
    LatStatus::Ok
}

/// Parses a semiring structure file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_parse(
    text: *const c_char,
    out: *mut *mut LatSemiring,
) -> LatStatus {
    guard(|| {
        if out.is_null() {
            set_error("out argument is null");
            return LatStatus::NullPointer;
        }
        let Some(text) = read_str(text) else {
            return if text.is_null() {
                LatStatus::NullPointer
            } else {
                LatStatus::InvalidUtf8
            };
        };
        match parse(text) {
            Ok(Structure::Semiring(inner)) => {
                *out = Box::into_raw(Box::new(LatSemiring { inner }));
                LatStatus::Ok
            }
            Ok(other) => {
                set_error(&format!(
                    "expected a semiring file, found kind `{}`",
                    other.kind_tag()
                ));
                LatStatus::WrongKind
            }
            Err(e) => {
                set_error(&e.to_string());
                LatStatus::ParseError
            }
        }
    })
}

/// Builds a semiring from an instance-spec file: the family is realized,
/// validated, and the constructed tables are re-verified.
///
/// # Safety
/// `spec_text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_build(
    spec_text: *const c_char,
    out: *mut *mut LatSemiring,
) -> LatStatus {
    guard(|| {
        if out.is_null() {
            set_error("out argument is null");
            return LatStatus::NullPointer;
        }
        let Some(text) = read_str(spec_text) else {
            return if spec_text.is_null() {
                LatStatus::NullPointer
            } else {
                LatStatus::InvalidUtf8
            };
        };
        let spec = match parse(text) {
            Ok(Structure::InstanceSpec(spec)) => spec,
            Ok(other) => {
                set_error(&format!(
                    "expected an instance-spec file, found kind `{}`",
                    other.kind_tag()
                ));
                return LatStatus::WrongKind;
            }
            Err(e) => {
                set_error(&e.to_string());
                return LatStatus::ParseError;
            }
        };
        let (fam, isos) = match realize(&spec) {
            Ok(pair) => pair,
            Err(e) => {
                set_error(&e.to_string());
                return LatStatus::ValidationFailed;
            }
        };
        let options = BuildOptions {
            flavor: spec.flavor,
            self_check: true,
        };
        match build_strong_sdl(&fam, &isos, options) {
            Ok(built) => {
                let names = (0..built.size()).map(|i| i.to_string()).collect();
                let inner = NamedSemiring {
                    names,
                    add: built.add_table().clone(),
                    mul: built.mul_table().clone(),
                };
                *out = Box::into_raw(Box::new(LatSemiring { inner }));
                LatStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                LatStatus::ValidationFailed
            }
        }
    })
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `semiring` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_size(semiring: *const LatSemiring) -> usize {
    if semiring.is_null() {
        return 0;
    }
    (*semiring).inner.add.size()
}

unsafe fn table_entry(
    semiring: *const LatSemiring,
    x: usize,
    y: usize,
    out: *mut usize,
    mul: bool,
) -> LatStatus {
    if semiring.is_null() || out.is_null() {
        set_error("null argument");
        return LatStatus::NullPointer;
    }
    let inner = &(*semiring).inner;
    let n = inner.add.size();
    if x >= n || y >= n {
        set_error(&format!("indices ({x}, {y}) out of range for size {n}"));
        return LatStatus::IndexOutOfRange;
    }
    *out = if mul {
        inner.mul.apply(x, y)
    } else {
        inner.add.apply(x, y)
    };
    LatStatus::Ok
}

/// Looks up `x + y`.
///
/// # Safety
/// `semiring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_add(
    semiring: *const LatSemiring,
    x: usize,
    y: usize,
    out: *mut usize,
) -> LatStatus {
    guard(|| table_entry(semiring, x, y, out, false))
}

/// Looks up `x · y`.
///
/// # Safety
/// `semiring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_mul(
    semiring: *const LatSemiring,
    x: usize,
    y: usize,
    out: *mut usize,
) -> LatStatus {
    guard(|| table_entry(semiring, x, y, out, true))
}

/// Verifies both associativities and both distributive laws.
///
/// # Safety
/// `semiring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_check(semiring: *const LatSemiring) -> LatStatus {
    guard(|| {
        if semiring.is_null() {
            set_error("null handle");
            return LatStatus::NullPointer;
        }
        let inner = &(*semiring).inner;
        match latring::check_semiring(&inner.add, &inner.mul) {
            Ok(()) => LatStatus::Ok,
            Err(v) => {
                set_error(&v.to_string());
                LatStatus::CheckFailed
            }
        }
    })
}

/// Serializes the semiring back to the canonical file format.
///
/// # Safety
/// `semiring` must be a live handle and `out` a valid pointer; the
/// returned string must be freed with [`lat_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_serialize(
    semiring: *const LatSemiring,
    out: *mut *mut c_char,
) -> LatStatus {
    guard(|| {
        if semiring.is_null() || out.is_null() {
            set_error("null argument");
            return LatStatus::NullPointer;
        }
        let inner = &(*semiring).inner;
        give_string(out, serialize(&Structure::Semiring(inner.clone())))
    })
}

/// Runs the full decomposition pipeline.
///
/// # Safety
/// `semiring` must be a live handle and `out` a valid pointer; the
/// report must be freed with [`lat_report_free`].
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_analyze(
    semiring: *const LatSemiring,
    flavor: LatFlavor,
    out: *mut *mut LatReport,
) -> LatStatus {
    guard(|| {
        if semiring.is_null() || out.is_null() {
            set_error("null argument");
            return LatStatus::NullPointer;
        }
        let inner = &(*semiring).inner;
        let report = latring::full_analysis_with_flavor(&inner.add, &inner.mul, flavor.into());
        *out = Box::into_raw(Box::new(LatReport {
            report,
            names: inner.names.clone(),
        }));
        LatStatus::Ok
    })
}

/// 1 if the analyzed table pair is a semiring, 0 if not, -1 on null.
///
/// # Safety
/// `report` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lat_report_is_semiring(report: *const LatReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    (*report).report.semiring.is_ok() as i32
}

/// 1 if certified a strong distributive lattice of group semirings,
/// 0 if refuted with a witness, -1 if not evaluated or null.
///
/// # Safety
/// `report` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lat_report_is_strong(report: *const LatReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    match &(*report).report.strong {
        Finding::Ok(()) => 1,
        Finding::Failed(_) => 0,
        Finding::NotEvaluated => -1,
    }
}

/// Number of multiplicative idempotents, or -1 if not evaluated.
///
/// # Safety
/// `report` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lat_report_idempotent_count(report: *const LatReport) -> i64 {
    if report.is_null() {
        return -1;
    }
    match &(*report).report.idempotents {
        Finding::Ok(e) => e.len() as i64,
        _ => -1,
    }
}

/// The report as sorted `key=value` lines.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer; the
/// returned string must be freed with [`lat_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lat_report_kv(
    report: *const LatReport,
    out: *mut *mut c_char,
) -> LatStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return LatStatus::NullPointer;
        }
        let r = &*report;
        let mut pairs = report_pairs(&r.report, &r.names);
        pairs.sort();
        let text: String = pairs
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        give_string(out, text)
    })
}

/// Releases a semiring handle. Null is ignored.
///
/// # Safety
/// `semiring` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lat_semiring_free(semiring: *mut LatSemiring) {
    if !semiring.is_null() {
        drop(Box::from_raw(semiring));
    }
}

/// Releases a report handle. Null is ignored.
///
/// # Safety
/// `report` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lat_report_free(report: *mut LatReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must come from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lat_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
