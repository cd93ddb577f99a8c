//! C ABI for the tangles library.
//!
//! Reports are built behind an opaque handle; every constructor returns a
//! status code and writes the handle through an out-pointer. String and
//! file accessors keep their allocations inside the handle, so the only
//! cleanup a caller needs is `tangles_report_free`. The most recent error
//! message is kept per thread and read with `tangles_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;

use tangles::cli::{self, Analysis, RunConfig};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TanglesStatus {
    /// success
    Ok = 0,
    /// a required pointer argument was null
    NullPointer = 1,
    /// parameters failed validation
    InvalidArgument = 2,
    /// the computation itself failed
    ComputeFailed = 3,
    /// a path or string was not valid UTF-8
    InvalidUtf8 = 4,
    /// writing an artifact failed
    IoError = 5,
}

/// Opaque analysis result.
pub struct TanglesReport {
    analysis: Analysis,
    json: Option<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn classify(err: &tangles::Error) -> TanglesStatus {
    match err {
        tangles::Error::InvalidParameter(_) | tangles::Error::Domain(_) => {
            TanglesStatus::InvalidArgument
        }
        tangles::Error::Io(_) => TanglesStatus::IoError,
        _ => TanglesStatus::ComputeFailed,
    }
}

fn finish(
    result: tangles::Result<Analysis>,
    out: *mut *mut TanglesReport,
) -> TanglesStatus {
    match result {
        Ok(analysis) => {
            let handle = Box::new(TanglesReport { analysis, json: None });
            unsafe { *out = Box::into_raw(handle) };
            TanglesStatus::Ok
        }
        Err(err) => {
            set_last_error(&err.to_string());
            classify(&err)
        }
    }
}

fn config(grid: usize, samples: usize) -> RunConfig {
    let defaults = RunConfig::default();
    RunConfig {
        grid: if grid == 0 { defaults.grid } else { grid },
        samples: if samples == 0 { defaults.samples } else { samples },
        ..defaults
    }
}

/// Analyze the tangle of a (p, q) torus knot with the default surgery
/// coefficients. Pass 0 for `grid` or `samples` to use the defaults
/// (1024 and 2048). On success writes a new handle to `out`.
///
/// # Safety
/// `out` must be a valid pointer to a `TanglesReport*`.
#[no_mangle]
pub unsafe extern "C" fn tangles_torus_report(
    p: i64,
    q: i64,
    grid: usize,
    samples: usize,
    out: *mut *mut TanglesReport,
) -> TanglesStatus {
    if out.is_null() {
        set_last_error("null out pointer");
        return TanglesStatus::NullPointer;
    }
    finish(cli::analyze_torus(p, q, None, None, &config(grid, samples)), out)
}

/// Like `tangles_torus_report` with explicit surgery coefficients
/// satisfying `p*r + q*s = 1`.
///
/// # Safety
/// `out` must be a valid pointer to a `TanglesReport*`.
#[no_mangle]
pub unsafe extern "C" fn tangles_torus_report_rs(
    p: i64,
    q: i64,
    r: i64,
    s: i64,
    grid: usize,
    samples: usize,
    out: *mut *mut TanglesReport,
) -> TanglesStatus {
    if out.is_null() {
        set_last_error("null out pointer");
        return TanglesStatus::NullPointer;
    }
    finish(cli::analyze_torus(p, q, Some(r), Some(s), &config(grid, samples)), out)
}

/// Analyze the tangle of a (-2, 3, n) pretzel knot (odd n >= 7).
///
/// # Safety
/// `out` must be a valid pointer to a `TanglesReport*`.
#[no_mangle]
pub unsafe extern "C" fn tangles_pretzel_report(
    n: i64,
    samples: usize,
    out: *mut *mut TanglesReport,
) -> TanglesStatus {
    if out.is_null() {
        set_last_error("null out pointer");
        return TanglesStatus::NullPointer;
    }
    finish(cli::analyze_pretzel(n, &config(0, samples)), out)
}

/// Binary dihedral components from branched-cover data. `offsets` points
/// to `offsets_len` pairs `(l1, l2)` stored flat; it may be null when
/// `offsets_len` is zero. `a_minus_order` must be odd and `offsets_len`
/// must equal `(a_minus_order - 1) / 2`.
///
/// # Safety
/// `offsets` must point to at least `2 * offsets_len` readable doubles
/// when non-null.
#[no_mangle]
pub unsafe extern "C" fn tangles_bd_report(
    h_ba: i64,
    h_bc: i64,
    a_minus_order: u64,
    offsets: *const f64,
    offsets_len: usize,
    samples: usize,
    out: *mut *mut TanglesReport,
) -> TanglesStatus {
    if out.is_null() || (offsets.is_null() && offsets_len > 0) {
        set_last_error("null pointer argument");
        return TanglesStatus::NullPointer;
    }
    let pairs: Vec<(f64, f64)> = (0..offsets_len)
        .map(|i| (*offsets.add(2 * i), *offsets.add(2 * i + 1)))
        .collect();
    finish(cli::analyze_bd(h_ba, h_bc, a_minus_order, pairs, &config(0, samples)), out)
}

/// Total number of chain-complex generators, or -1 on a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_total_generators(report: *const TanglesReport) -> i64 {
    match unsafe { report.as_ref() } {
        Some(r) => r.analysis.report.totals.total as i64,
        None => -1,
    }
}

/// Binary dihedral generator count, or -1 on a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_bd_generators(report: *const TanglesReport) -> i64 {
    match unsafe { report.as_ref() } {
        Some(r) => r.analysis.report.totals.bd as i64,
        None => -1,
    }
}

/// Number of components of the representation variety, or -1.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_component_count(report: *const TanglesReport) -> i64 {
    match unsafe { report.as_ref() } {
        Some(r) => r.analysis.report.components.len() as i64,
        None => -1,
    }
}

/// The JSON report. The string is owned by the handle and stays valid
/// until the handle is freed. Returns null on error.
///
/// # Safety
/// `report` must be a live handle or null; the returned pointer must not
/// outlive the handle.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_json(report: *mut TanglesReport) -> *const c_char {
    let Some(handle) = (unsafe { report.as_mut() }) else {
        set_last_error("null report handle");
        return std::ptr::null();
    };
    if handle.json.is_none() {
        let text = match cli::report_json(&handle.analysis.report) {
            Ok(t) => t,
            Err(err) => {
                set_last_error(&err.to_string());
                return std::ptr::null();
            }
        };
        match CString::new(text) {
            Ok(c) => handle.json = Some(c),
            Err(_) => {
                set_last_error("report contained an interior NUL byte");
                return std::ptr::null();
            }
        }
    }
    handle.json.as_ref().unwrap().as_ptr()
}

unsafe fn write_artifact(
    report: *const TanglesReport,
    path: *const c_char,
    render: impl Fn(&Analysis) -> String,
) -> TanglesStatus {
    let Some(handle) = report.as_ref() else {
        set_last_error("null report handle");
        return TanglesStatus::NullPointer;
    };
    if path.is_null() {
        set_last_error("null path");
        return TanglesStatus::NullPointer;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_last_error("path is not valid UTF-8");
        return TanglesStatus::InvalidUtf8;
    };
    match std::fs::write(PathBuf::from(path), render(&handle.analysis)) {
        Ok(()) => TanglesStatus::Ok,
        Err(err) => {
            set_last_error(&err.to_string());
            TanglesStatus::IoError
        }
    }
}

/// Write the pillowcase SVG figure to `path`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `report` a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_write_svg(
    report: *const TanglesReport,
    path: *const c_char,
) -> TanglesStatus {
    write_artifact(report, path, |a| cli::curves_svg(&a.curves))
}

/// Write the CSV point cloud to `path`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `report` a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_write_csv(
    report: *const TanglesReport,
    path: *const c_char,
) -> TanglesStatus {
    write_artifact(report, path, |a| cli::curves_csv(&a.curves))
}

/// Free a report handle. Null is ignored.
///
/// # Safety
/// `report` must come from one of the constructors and not already be
/// freed.
#[no_mangle]
pub unsafe extern "C" fn tangles_report_free(report: *mut TanglesReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// The most recent error message on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn tangles_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
