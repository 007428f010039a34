use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use critical_ideals_ffi::*;

fn parse(text: &str) -> *mut CiDigraph {
    let c = CString::new(text).unwrap();
    let mut d = ptr::null_mut();
    // SAFETY: valid string and output slot.
    assert_eq!(unsafe { ci_digraph_from_digraph6(c.as_ptr(), &mut d) }, CiStatus::Ok);
    d
}

fn last_error() -> String {
    // SAFETY: the library returns a live nul-terminated string.
    unsafe { CStr::from_ptr(ci_last_error_message()) }.to_str().unwrap().to_string()
}

fn take_string(s: *mut c_char) -> String {
    // SAFETY: `s` was returned by the library.
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    // SAFETY: released exactly once.
    unsafe { ci_string_free(s) };
    out
}

#[test]
fn corank_and_criticality() {
    let d = parse("&AO");
    let (mut g, mut crit, mut free) = (0usize, false, false);
    // SAFETY: live handle and valid output slots throughout.
    unsafe {
        assert_eq!(ci_digraph_vertex_count(d), 2);
        assert_eq!(ci_algebraic_corank(d, &mut g), CiStatus::Ok);
        assert_eq!(ci_is_gamma_critical(d, &mut crit), CiStatus::Ok);
        assert_eq!(ci_is_f_free(d, &mut free), CiStatus::Ok);
        ci_digraph_free(d);
    }
    assert_eq!((g, crit, free), (1, true, true));
}

#[test]
fn arcs_round_trip_through_digraph6() {
    let arcs = [0usize, 1, 1, 2, 2, 0];
    let mut d = ptr::null_mut();
    let mut s = ptr::null_mut();
    // SAFETY: three arcs stored flat; valid output slots.
    unsafe {
        assert_eq!(ci_digraph_from_arcs(3, arcs.as_ptr(), 3, &mut d), CiStatus::Ok);
        assert_eq!(ci_digraph_to_digraph6(d, &mut s), CiStatus::Ok);
    }
    let text = take_string(s);
    let e = parse(&text);
    let (mut g1, mut g2) = (0, 0);
    // SAFETY: live handles.
    unsafe {
        ci_algebraic_corank(d, &mut g1);
        ci_algebraic_corank(e, &mut g2);
        ci_digraph_free(d);
        ci_digraph_free(e);
    }
    assert_eq!((g1, g2), (2, 2));
}

#[test]
fn parse_errors_carry_messages() {
    let bad = CString::new("AO").unwrap();
    let mut d = ptr::null_mut();
    // SAFETY: valid arguments.
    assert_eq!(unsafe { ci_digraph_from_digraph6(bad.as_ptr(), &mut d) }, CiStatus::Parse);
    assert!(d.is_null());
    assert!(last_error().contains("byte 0"), "{}", last_error());
    let looped = [0usize, 0];
    // SAFETY: one arc stored flat.
    assert_eq!(unsafe { ci_digraph_from_arcs(2, looped.as_ptr(), 1, &mut d) }, CiStatus::InvalidArgument);
}

#[test]
fn null_arguments_are_rejected() {
    let mut g = 0usize;
    // SAFETY: null pointers are part of the accepted domain.
    unsafe {
        assert_eq!(ci_algebraic_corank(ptr::null(), &mut g), CiStatus::NullPointer);
        assert_eq!(ci_digraph_from_digraph6(ptr::null(), ptr::null_mut()), CiStatus::NullPointer);
        ci_digraph_free(ptr::null_mut());
        ci_string_free(ptr::null_mut());
    }
}

#[test]
fn lambda_round_trip() {
    let mut d = ptr::null_mut();
    let mut p = CiLambdaParams::default();
    // SAFETY: valid output slots; live handle.
    unsafe {
        assert_eq!(ci_build_lambda(CiLambdaParams { n1: 2, n2: 1, n3: 3 }, &mut d), CiStatus::Ok);
        assert_eq!(ci_recognize_lambda(d, &mut p), CiStatus::Ok);
        ci_digraph_free(d);
    }
    assert_eq!(p, CiLambdaParams { n1: 2, n2: 1, n3: 3 });
    // SAFETY: valid output slot.
    let s = unsafe { ci_build_lambda(CiLambdaParams { n1: 2, n2: 0, n3: 0 }, &mut d) };
    assert_eq!(s, CiStatus::InvalidArgument);
    assert!(last_error().contains("disconnected"));
}

#[test]
fn directed_triangle_is_not_lambda() {
    let d = parse("&BP_");
    let mut p = CiLambdaParams::default();
    // SAFETY: live handle.
    let s = unsafe { ci_recognize_lambda(d, &mut p) };
    // SAFETY: released once.
    unsafe { ci_digraph_free(d) };
    assert_eq!(s, CiStatus::NotMember, "{}", last_error());
}

#[test]
fn group_summaries() {
    let d = parse("&AW");
    let (mut k, mut s) = (CiGroupSummary::default(), CiGroupSummary::default());
    let mut report = ptr::null_mut();
    // SAFETY: live handle and valid output slots.
    unsafe {
        assert_eq!(ci_critical_group(d, &mut k, &mut report), CiStatus::Ok);
        assert_eq!(ci_smith_group(d, &mut s, ptr::null_mut()), CiStatus::Ok);
        ci_digraph_free(d);
    }
    assert_eq!(take_string(report), "factors=[1] free_rank=1 unit_count=1");
    assert_eq!(k.unit_count, 1);
    assert_eq!(s.unit_count, 2);
}

#[test]
fn census_counts() {
    let mut counts = [usize::MAX; 4];
    // SAFETY: four writable slots.
    assert_eq!(unsafe { ci_census_counts(4, counts.as_mut_ptr(), 4) }, CiStatus::Ok);
    assert_eq!(counts, [0, 0, 10, 61]);
    let mut short = [0usize; 2];
    // SAFETY: two writable slots.
    assert_eq!(unsafe { ci_census_counts(3, short.as_mut_ptr(), 2) }, CiStatus::BufferTooSmall);
    // SAFETY: four writable slots.
    assert_eq!(unsafe { ci_census_counts(9, counts.as_mut_ptr(), 4) }, CiStatus::InvalidArgument);
}

#[test]
fn header_declares_the_interface_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/critical_ideals.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "ci_digraph_from_digraph6",
        "ci_digraph_free",
        "ci_algebraic_corank",
        "ci_recognize_lambda",
        "ci_census_counts",
        "CI_STATUS_NOT_MEMBER",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping the syntax check");
        return;
    };
    assert!(status.success());
}
