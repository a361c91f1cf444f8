//! C interface to the solver library.
//!
//! Every fallible function returns a [`SosiStatus`]; on failure a message is
//! kept per thread and can be read with [`sosi_last_error`]. Handles are
//! opaque and must be released with their `_free` function. Strings returned
//! through `char **` are owned by the caller and released with
//! [`sosi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sosi::digraph::Digraph;
use sosi::io::{self, DigraphDoc, PlaneDoc, WeightDoc};
use sosi::plane::{self, PlaneBipartiteGraph};
use sosi::sosi::{max_so_si, SoSiCertificate, SosiError, WeightPair};
use sosi::{Error, ErrorKind, Rational};

/// Result of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SosiStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullOrInvalidArgument = 1,
    /// The input data was rejected.
    InputError = 2,
    /// A certificate failed its self-check.
    InternalError = 3,
    /// An exhaustive search exceeded its budget.
    BudgetExceeded = 4,
    /// The library panicked; the handle arguments should not be reused.
    Panic = 5,
}

/// A validated digraph.
pub struct SosiDigraph {
    inner: Digraph,
}

/// An optimal source-sink pair together with its circular cover.
pub struct SosiCertificate {
    digraph: Digraph,
    weights: WeightPair,
    cert: SoSiCertificate,
}

/// A validated plane bipartite graph with its face weights.
pub struct SosiPlaneGraph {
    inner: PlaneBipartiteGraph,
    w1: Vec<Rational>,
    w2: Vec<Rational>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

enum Failure {
    Argument(&'static str),
    Lib(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Lib(e.into())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SosiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SosiStatus::Ok,
        Ok(Err(Failure::Argument(msg))) => {
            set_error(msg.to_string());
            SosiStatus::NullOrInvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e.kind() {
                ErrorKind::Input => SosiStatus::InputError,
                ErrorKind::Internal => SosiStatus::InternalError,
                ErrorKind::Budget => SosiStatus::BudgetExceeded,
            }
        }
        Err(_) => {
            set_error("panic inside the solver library".into());
            SosiStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Argument(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Argument("string is not valid UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Argument(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Argument(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Argument(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    let s = CString::new(value.to_string()).expect("JSON text has no NUL bytes");
    put(out, s.into_raw(), "output pointer is null")
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next API call on the same thread.
#[no_mangle]
pub extern "C" fn sosi_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sosi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a digraph with nodes `0..node_count` and arcs `tails[k] -> heads[k]`.
///
/// # Safety
/// `tails` and `heads` must point to `arc_count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_digraph_new(
    node_count: usize,
    tails: *const usize,
    heads: *const usize,
    arc_count: usize,
    out: *mut *mut SosiDigraph,
) -> SosiStatus {
    guard(|| {
        let tails = slice(tails, arc_count, "tails is null")?;
        let heads = slice(heads, arc_count, "heads is null")?;
        let arcs = tails.iter().copied().zip(heads.iter().copied()).collect();
        let inner = Digraph::new(node_count, arcs)?;
        put(
            out,
            Box::into_raw(Box::new(SosiDigraph { inner })),
            "out is null",
        )
    })
}

/// Parses a digraph document (`{"nodes": [...], "arcs": [[u, v], ...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_digraph_from_json(
    json: *const c_char,
    out: *mut *mut SosiDigraph,
) -> SosiStatus {
    guard(|| {
        let doc: DigraphDoc = serde_json::from_str(text(json, "json is null")?)?;
        let inner = doc.digraph()?;
        put(
            out,
            Box::into_raw(Box::new(SosiDigraph { inner })),
            "out is null",
        )
    })
}

/// # Safety
/// `d` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sosi_digraph_node_count(d: *const SosiDigraph) -> usize {
    d.as_ref().map_or(0, |d| d.inner.node_count())
}

/// # Safety
/// `d` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sosi_digraph_arc_count(d: *const SosiDigraph) -> usize {
    d.as_ref().map_or(0, |d| d.inner.arc_count())
}

/// # Safety
/// `d` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sosi_digraph_free(d: *mut SosiDigraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

fn solve(digraph: &Digraph, weights: WeightPair) -> Result<SosiCertificate, Failure> {
    let cert = max_so_si(digraph, &weights)?;
    if !cert
        .check(digraph, &weights)
        .all_pass(weights.is_integral())
    {
        return Err(Failure::Lib(Error::Sosi(SosiError::Internal(
            "certificate failed its self-check".into(),
        ))));
    }
    Ok(SosiCertificate {
        digraph: digraph.clone(),
        weights,
        cert,
    })
}

/// Maximum-weight source-sink pair for integer node weights, one entry per node.
///
/// # Safety
/// `w_o` and `w_i` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_max_so_si(
    d: *const SosiDigraph,
    w_o: *const i64,
    w_i: *const i64,
    len: usize,
    out: *mut *mut SosiCertificate,
) -> SosiStatus {
    guard(|| {
        let d = handle(d, "digraph is null")?;
        let w_o = slice(w_o, len, "w_o is null")?;
        let w_i = slice(w_i, len, "w_i is null")?;
        let weights = WeightPair::from_integers(w_o, w_i)?;
        let cert = solve(&d.inner, weights)?;
        put(out, Box::into_raw(Box::new(cert)), "out is null")
    })
}

/// Same as [`sosi_max_so_si`] with weights given as a JSON document keyed by
/// node name (`{"w_o": {...}, "w_i": {...}}` or `{"w": {...}}`).
///
/// # Safety
/// `weights_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_max_so_si_json(
    d: *const SosiDigraph,
    weights_json: *const c_char,
    out: *mut *mut SosiCertificate,
) -> SosiStatus {
    guard(|| {
        let d = handle(d, "digraph is null")?;
        let doc: WeightDoc = serde_json::from_str(text(weights_json, "weights_json is null")?)?;
        let weights = doc.pair(d.inner.names())?;
        let cert = solve(&d.inner, weights)?;
        put(out, Box::into_raw(Box::new(cert)), "out is null")
    })
}

/// Optimum value as a fraction.
///
/// # Safety
/// `c` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_certificate_value(
    c: *const SosiCertificate,
    num: *mut i64,
    den: *mut i64,
) -> SosiStatus {
    guard(|| {
        let c = handle(c, "certificate is null")?;
        put(num, *c.cert.value.numer(), "num is null")?;
        put(den, *c.cert.value.denom(), "den is null")
    })
}

/// Copies the source side (`which = 0`) or the sink side (`which = 1`) of the
/// pair into `buf`, which has room for `cap` node indices. `len` receives the
/// full size even when `buf` is too small; nothing is copied in that case.
///
/// # Safety
/// `buf` must have room for `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_certificate_nodes(
    c: *const SosiCertificate,
    which: u32,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> SosiStatus {
    guard(|| {
        let c = handle(c, "certificate is null")?;
        let nodes = match which {
            0 => &c.cert.y_o,
            1 => &c.cert.y_i,
            _ => return Err(Failure::Argument("which must be 0 (sources) or 1 (sinks)")),
        };
        put(len, nodes.len(), "len is null")?;
        if nodes.len() <= cap && !nodes.is_empty() {
            if buf.is_null() {
                return Err(Failure::Argument("buf is null"));
            }
            ptr::copy_nonoverlapping(nodes.as_ptr(), buf, nodes.len());
        }
        Ok(())
    })
}

/// Writes the witness potential, one value per node, into `buf` of length `cap`.
///
/// # Safety
/// `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sosi_certificate_potential(
    c: *const SosiCertificate,
    buf: *mut i64,
    cap: usize,
) -> SosiStatus {
    guard(|| {
        let c = handle(c, "certificate is null")?;
        let values = c.cert.potential.values();
        if cap < values.len() || buf.is_null() {
            return Err(Failure::Argument("potential buffer is too small"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

/// Full certificate as JSON, the same document the command-line tool prints.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_certificate_to_json(
    c: *const SosiCertificate,
    out: *mut *mut c_char,
) -> SosiStatus {
    guard(|| {
        let c = handle(c, "certificate is null")?;
        put_json(out, &io::certificate_json(&c.digraph, &c.weights, &c.cert))
    })
}

/// # Safety
/// `c` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sosi_certificate_free(c: *mut SosiCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses a plane bipartite graph document, including optional `w1`/`w2`
/// face weights.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_plane_from_json(
    json: *const c_char,
    out: *mut *mut SosiPlaneGraph,
) -> SosiStatus {
    guard(|| {
        let doc: PlaneDoc = serde_json::from_str(text(json, "json is null")?)?;
        let inner = doc.graph()?;
        let (w1, w2) = doc.face_weights(&inner)?;
        put(
            out,
            Box::into_raw(Box::new(SosiPlaneGraph { inner, w1, w2 })),
            "out is null",
        )
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_clar_number(g: *const SosiPlaneGraph, out: *mut usize) -> SosiStatus {
    guard(|| {
        let g = handle(g, "plane graph is null")?;
        put(out, plane::clar_number(&g.inner)?.value, "out is null")
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_fries_number(
    g: *const SosiPlaneGraph,
    out: *mut usize,
) -> SosiStatus {
    guard(|| {
        let g = handle(g, "plane graph is null")?;
        put(out, plane::fries_number(&g.inner)?.value, "out is null")
    })
}

/// Double-weighted optimum for the graph's own face weights, as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sosi_clar_fries_json(
    g: *const SosiPlaneGraph,
    out: *mut *mut c_char,
) -> SosiStatus {
    guard(|| {
        let g = handle(g, "plane graph is null")?;
        let res = plane::solve_clar_fries(&g.inner, &g.w1, &g.w2)?;
        put_json(out, &io::clar_fries_json(&g.inner, &g.w1, &g.w2, &res))
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sosi_plane_free(g: *mut SosiPlaneGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
