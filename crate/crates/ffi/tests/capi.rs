//! Exercise the C ABI through the exported symbols.

use std::ffi::CStr;
use std::ptr;

use tangles_ffi::*;

#[test]
fn torus_report_through_the_abi() {
    unsafe {
        let mut handle: *mut TanglesReport = ptr::null_mut();
        let status = tangles_torus_report(4, 5, 256, 512, &mut handle);
        assert_eq!(status, TanglesStatus::Ok);
        assert!(!handle.is_null());

        assert_eq!(tangles_report_total_generators(handle), 9);
        assert_eq!(tangles_report_bd_generators(handle), 5);
        assert_eq!(tangles_report_component_count(handle), 2);

        let json_ptr = tangles_report_json(handle);
        assert!(!json_ptr.is_null());
        let json = CStr::from_ptr(json_ptr).to_str().unwrap();
        let value: serde_json::Value = serde_json::from_str(json).unwrap();
        assert_eq!(value["topology"]["shape"], "phi");
        // the pointer is stable across calls
        assert_eq!(json_ptr, tangles_report_json(handle));

        let dir = tempfile::tempdir().unwrap();
        let svg_path = std::ffi::CString::new(
            dir.path().join("out.svg").to_str().unwrap().to_owned(),
        )
        .unwrap();
        let status = tangles_report_write_svg(handle, svg_path.as_ptr());
        assert_eq!(status, TanglesStatus::Ok);
        let svg = std::fs::read_to_string(dir.path().join("out.svg")).unwrap();
        assert!(svg.starts_with("<?xml"));

        tangles_report_free(handle);
    }
}

#[test]
fn invalid_arguments_set_the_error_message() {
    unsafe {
        let mut handle: *mut TanglesReport = ptr::null_mut();
        let status = tangles_torus_report(4, 6, 256, 512, &mut handle);
        assert_eq!(status, TanglesStatus::InvalidArgument);
        assert!(handle.is_null());
        let msg = CStr::from_ptr(tangles_last_error_message()).to_str().unwrap();
        assert!(msg.contains("coprime"), "message: {msg}");

        assert_eq!(
            tangles_torus_report(4, 5, 256, 512, ptr::null_mut()),
            TanglesStatus::NullPointer
        );
        assert_eq!(tangles_report_total_generators(ptr::null()), -1);
    }
}

#[test]
fn pretzel_and_bd_through_the_abi() {
    unsafe {
        let mut handle: *mut TanglesReport = ptr::null_mut();
        assert_eq!(tangles_pretzel_report(7, 512, &mut handle), TanglesStatus::Ok);
        assert_eq!(tangles_report_total_generators(handle), 9);
        tangles_report_free(handle);

        let mut handle: *mut TanglesReport = ptr::null_mut();
        assert_eq!(
            tangles_pretzel_report(8, 512, &mut handle),
            TanglesStatus::InvalidArgument
        );

        let offsets = [0.7f64, 1.1];
        let mut handle: *mut TanglesReport = ptr::null_mut();
        let status = tangles_bd_report(1, -1, 3, offsets.as_ptr(), 1, 512, &mut handle);
        assert_eq!(status, TanglesStatus::Ok);
        assert_eq!(tangles_report_component_count(handle), 2);
        tangles_report_free(handle);

        // even order is rejected
        let mut handle: *mut TanglesReport = ptr::null_mut();
        let status = tangles_bd_report(1, -1, 2, ptr::null(), 0, 512, &mut handle);
        assert_eq!(status, TanglesStatus::InvalidArgument);
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("tangles.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header");
    for symbol in [
        "tangles_torus_report",
        "tangles_pretzel_report",
        "tangles_bd_report",
        "tangles_report_json",
        "tangles_report_free",
        "tangles_last_error_message",
        "TanglesStatus",
        "TanglesReport",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
