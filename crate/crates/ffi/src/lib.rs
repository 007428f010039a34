//! C interface to `critical-ideals`.
//!
//! Every function returns a [`CiStatus`]; on failure a message is available
//! from [`ci_last_error_message`] on the same thread. Digraphs cross the
//! boundary as opaque [`CiDigraph`] handles released with
//! [`ci_digraph_free`]; strings returned by the library are released with
//! [`ci_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use critical_ideals::abelian::{self, GroupSummary};
use critical_ideals::critical::{self, CriticalError};
use critical_ideals::digraph::{self, Digraph};
use critical_ideals::lambda::{self, LambdaParams};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    ResourceCap = 4,
    NotMember = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque digraph handle.
pub struct CiDigraph(Digraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CiLambdaParams {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CiGroupSummary {
    /// Nonzero invariant factors among the indices read.
    pub factor_count: usize,
    pub unit_count: usize,
    pub free_rank: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: CiStatus, msg: impl Into<String>) -> CiStatus {
    set_error(msg);
    status
}

fn critical_status(e: CriticalError) -> CiStatus {
    let status = if e.is_resource() {
        CiStatus::ResourceCap
    } else {
        CiStatus::InvalidArgument
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CiStatus) -> CiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == CiStatus::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(CiStatus::Panic, msg)
        }
    }
}

/// # Safety
/// `d` must be null or a live handle from this library.
unsafe fn digraph_ref<'a>(d: *const CiDigraph) -> Result<&'a Digraph, CiStatus> {
    // SAFETY: caller guarantees `d` is null or a live handle.
    unsafe { d.as_ref() }
        .map(|h| &h.0)
        .ok_or_else(|| fail(CiStatus::NullPointer, "null digraph handle"))
}

fn into_handle(d: Digraph, out: *mut *mut CiDigraph) -> CiStatus {
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(Box::new(CiDigraph(d))) };
    CiStatus::Ok
}

/// Message describing the last failure on this thread, empty after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ci_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a nul-terminated digraph6 string.
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_digraph_from_digraph6(text: *const c_char, out: *mut *mut CiDigraph) -> CiStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CiStatus::NullPointer, "null argument");
        }
        // SAFETY: checked non-null; caller guarantees nul termination.
        let s = unsafe { CStr::from_ptr(text) };
        let Ok(s) = s.to_str() else {
            return fail(CiStatus::Parse, "digraph6 text is not UTF-8");
        };
        match digraph::parse_digraph6(s) {
            Ok(d) => into_handle(d, out),
            Err(e) => fail(CiStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a digraph on `n` vertices from `arc_count` pairs stored flat in
/// `arcs` (`arcs[2k] -> arcs[2k + 1]`).
///
/// # Safety
/// `arcs` must point to `2 * arc_count` readable values (or be null when
/// `arc_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_digraph_from_arcs(
    n: usize,
    arcs: *const usize,
    arc_count: usize,
    out: *mut *mut CiDigraph,
) -> CiStatus {
    guard(|| {
        if out.is_null() || (arcs.is_null() && arc_count > 0) {
            return fail(CiStatus::NullPointer, "null argument");
        }
        let flat: &[usize] = if arc_count == 0 {
            &[]
        } else {
            // SAFETY: non-null and sized by the caller's contract.
            unsafe { std::slice::from_raw_parts(arcs, 2 * arc_count) }
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        match Digraph::from_arcs(n, pairs) {
            Ok(d) => into_handle(d, out),
            Err(e) => fail(CiStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `d` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ci_digraph_free(d: *mut CiDigraph) {
    if !d.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(d) });
    }
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ci_digraph_vertex_count(d: *const CiDigraph) -> usize {
    // SAFETY: forwarded contract.
    unsafe { d.as_ref() }.map_or(0, |h| h.0.vertex_count())
}

/// Writes a newly allocated digraph6 string to `out`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_digraph_to_digraph6(d: *const CiDigraph, out: *mut *mut c_char) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        let s = CString::new(d.to_digraph6()).expect("digraph6 is printable ASCII");
        // SAFETY: checked non-null.
        unsafe { *out = s.into_raw() };
        CiStatus::Ok
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ci_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_algebraic_corank(d: *const CiDigraph, out: *mut usize) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        match critical::algebraic_corank(d) {
            // SAFETY: checked non-null.
            Ok(g) => unsafe {
                *out = g;
                CiStatus::Ok
            },
            Err(e) => critical_status(e),
        }
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_is_gamma_critical(d: *const CiDigraph, out: *mut bool) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        match critical::is_gamma_critical(d) {
            // SAFETY: checked non-null.
            Ok(c) => unsafe {
                *out = c;
                CiStatus::Ok
            },
            Err(e) => critical_status(e),
        }
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_is_f_free(d: *const CiDigraph, out: *mut bool) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        // SAFETY: checked non-null.
        unsafe { *out = critical::is_f_free(d) };
        CiStatus::Ok
    })
}

/// `CI_STATUS_NOT_MEMBER` (with the reason in the error message) when `d`
/// is not isomorphic to any `Lambda(n1,n2,n3)`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_recognize_lambda(d: *const CiDigraph, out: *mut CiLambdaParams) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        match lambda::recognize_lambda(d) {
            Ok(p) => {
                // SAFETY: checked non-null.
                unsafe {
                    *out = CiLambdaParams {
                        n1: p.n1,
                        n2: p.n2,
                        n3: p.n3,
                    }
                };
                CiStatus::Ok
            }
            Err(r) => fail(CiStatus::NotMember, r.to_string()),
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_build_lambda(p: CiLambdaParams, out: *mut *mut CiDigraph) -> CiStatus {
    guard(|| {
        if out.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        match lambda::build_lambda(LambdaParams::new(p.n1, p.n2, p.n3)) {
            Ok(d) => into_handle(d, out),
            Err(e) => fail(CiStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `d` must be a live handle; `summary` must be writable; `report` must be
/// null or writable, receiving a string to release with `ci_string_free`.
unsafe fn group(
    d: *const CiDigraph,
    summary: *mut CiGroupSummary,
    report: *mut *mut c_char,
    f: fn(&Digraph) -> GroupSummary,
) -> CiStatus {
    guard(|| {
        // SAFETY: forwarded contract.
        let d = match unsafe { digraph_ref(d) } {
            Ok(d) => d,
            Err(s) => return s,
        };
        if summary.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        let g = f(d);
        // SAFETY: checked non-null.
        unsafe {
            *summary = CiGroupSummary {
                factor_count: g.factors.len(),
                unit_count: g.unit_count,
                free_rank: g.free_rank,
            }
        };
        if !report.is_null() {
            let s = CString::new(g.to_string()).expect("report is ASCII");
            // SAFETY: checked non-null.
            unsafe { *report = s.into_raw() };
        }
        CiStatus::Ok
    })
}

/// Invariant factors 1..n-1 of the Laplacian. `report` may be null.
///
/// # Safety
/// See [`ci_smith_group`].
#[no_mangle]
pub unsafe extern "C" fn ci_critical_group(
    d: *const CiDigraph,
    summary: *mut CiGroupSummary,
    report: *mut *mut c_char,
) -> CiStatus {
    // SAFETY: forwarded contract.
    unsafe { group(d, summary, report, abelian::critical_group) }
}

/// All invariant factors of the adjacency matrix. `report` may be null.
///
/// # Safety
/// `d` must be a live handle; `summary` must be writable; `report` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn ci_smith_group(
    d: *const CiDigraph,
    summary: *mut CiGroupSummary,
    report: *mut *mut c_char,
) -> CiStatus {
    // SAFETY: forwarded contract.
    unsafe { group(d, summary, report, abelian::smith_group) }
}

/// Gamma-critical class counts on `n` vertices: `counts[k]` receives the
/// number with co-rank `k` for `k < counts_len`. Fails with
/// `CI_STATUS_BUFFER_TOO_SMALL` when some co-rank does not fit.
///
/// # Safety
/// `counts` must point to `counts_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ci_census_counts(n: usize, counts: *mut usize, counts_len: usize) -> CiStatus {
    guard(|| {
        if counts.is_null() {
            return fail(CiStatus::NullPointer, "null output pointer");
        }
        let census = match critical::census(n) {
            Ok(c) => c,
            Err(e) => return critical_status(e),
        };
        if let Some((&k, _)) = census.counts.last_key_value() {
            if k >= counts_len {
                return fail(CiStatus::BufferTooSmall, format!("co-rank {k} needs {} slots", k + 1));
            }
        }
        // SAFETY: sized by the caller's contract.
        let slots = unsafe { std::slice::from_raw_parts_mut(counts, counts_len) };
        slots.fill(0);
        for (&k, &c) in &census.counts {
            slots[k] = c;
        }
        CiStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_handles_are_reported() {
        let mut g = 0usize;
        // SAFETY: null is an accepted handle value.
        let s = unsafe { ci_algebraic_corank(ptr::null(), &mut g) };
        assert_eq!(s, CiStatus::NullPointer);
        // SAFETY: the message pointer is a live nul-terminated string.
        let msg = unsafe { CStr::from_ptr(ci_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }
}
