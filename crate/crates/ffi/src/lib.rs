//! C ABI over `ramanujan`.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `*_free`. Every fallible function returns an [`RmjStatus`];
//! on failure [`rmj_last_error_message`] describes the error. Strings handed
//! out by the library are NUL-terminated UTF-8 and must be released with
//! [`rmj_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ramanujan::expectation::node_polynomial;
use ramanujan::family::leaf_graph;
use ramanujan::walk::{Walk, WalkOptions};
use ramanujan::{certify, Certificate, Error, Multigraph, NodeState, Params};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotRegular = 4,
    /// No graph with these parameters passes the bound (only `d = 1`, `n >= 4`).
    NoRamanujanGraph = 5,
    Internal = 6,
    Panic = 7,
}

/// A bipartite multigraph.
pub struct RmjGraph(Multigraph);

/// An exact spectral certificate.
pub struct RmjCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior NUL")));
}

fn status_of(e: &Error) -> RmjStatus {
    match e {
        _ if e.is_internal() => RmjStatus::Internal,
        Error::Json(_) => RmjStatus::ParseError,
        Error::NotRegular { .. } => RmjStatus::NotRegular,
        Error::RootExceedsBound { .. } => RmjStatus::NoRamanujanGraph,
        _ => RmjStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (RmjStatus, String)>) -> RmjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RmjStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            RmjStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (RmjStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (RmjStatus, String) {
    (RmjStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (RmjStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (RmjStatus::InvalidArgument, format!("{what} is not UTF-8: {e}")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).expect("JSON has no NUL").into_raw();
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rmj_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a `d`-regular bipartite Ramanujan multigraph on `n` vertices.
/// `jobs` is the number of worker threads (0 = one per core); the result does
/// not depend on it.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rmj_build(n: usize, d: usize, jobs: usize, out: *mut *mut RmjGraph) -> RmjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = Params::new(n, d).map_err(lib_err)?;
        let options = WalkOptions { jobs, ..WalkOptions::default() };
        let leaf = Walk::new(params, options).run().map_err(lib_err)?;
        let graph = leaf_graph(&leaf, &params).map_err(lib_err)?;
        write_out(out, RmjGraph(graph));
        Ok(())
    })
}

/// Parses `{"n": .., "d": .., "multiplicity": [[..]..]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_from_json(json: *const c_char, out: *mut *mut RmjGraph) -> RmjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let graph: Multigraph = serde_json::from_str(text).map_err(|e| lib_err(e.into()))?;
        graph.check_regular().map_err(lib_err)?;
        write_out(out, RmjGraph(graph));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_to_json(graph: *const RmjGraph, out: *mut *mut c_char) -> RmjStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serde_json::to_string(&graph.0).expect("serializable"));
        Ok(())
    })
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_n(graph: *const RmjGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n)
}

/// Degree, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_d(graph: *const RmjGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.d)
}

/// Number of edges between left vertex `left` and right vertex `right`,
/// both 0-based below `n / 2`.
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_multiplicity(
    graph: *const RmjGraph,
    left: usize,
    right: usize,
    out: *mut u64,
) -> RmjStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let value = graph.0.multiplicity.get(left).and_then(|row| row.get(right)).ok_or_else(|| {
            (RmjStatus::InvalidArgument, format!("vertex pair ({left}, {right}) out of range"))
        })?;
        *out = *value;
        Ok(())
    })
}

/// # Safety
/// `graph` must be NULL or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rmj_graph_free(graph: *mut RmjGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Certifies the graph's nontrivial spectrum exactly.
///
/// # Safety
/// `graph` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_certify(graph: *const RmjGraph, out: *mut *mut RmjCertificate) -> RmjStatus {
    guard(|| {
        let graph = graph.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = certify(&graph.0).map_err(lib_err)?;
        write_out(out, RmjCertificate(cert));
        Ok(())
    })
}

/// Whether every nontrivial eigenvalue lies in `[-2 sqrt(d-1), 2 sqrt(d-1)]`.
/// False for NULL.
///
/// # Safety
/// `cert` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rmj_certificate_passed(cert: *const RmjCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.0.passed)
}

/// # Safety
/// `cert` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_certificate_to_json(cert: *const RmjCertificate, out: *mut *mut c_char) -> RmjStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("certificate"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serde_json::to_string(&cert.0).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `cert` must be NULL or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rmj_certificate_free(cert: *mut RmjCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Expected nontrivial characteristic polynomial of a tree node, as a JSON
/// list of exact coefficient strings, constant term first. `node_json` NULL
/// means the root.
///
/// # Safety
/// `node_json` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rmj_node_poly_json(
    n: usize,
    d: usize,
    node_json: *const c_char,
    out: *mut *mut c_char,
) -> RmjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = Params::new(n, d).map_err(lib_err)?;
        let node = if node_json.is_null() {
            NodeState::root()
        } else {
            let text = read_str(node_json, "node_json")?;
            serde_json::from_str(text).map_err(|e| (RmjStatus::ParseError, format!("malformed node: {e}")))?
        };
        let poly = node_polynomial(&node, &params).map_err(lib_err)?;
        write_string(out, serde_json::to_string(&poly).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn rmj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
