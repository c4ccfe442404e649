//! C ABI over `tightcut`.
//!
//! Graphs and certificates are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns a [`TcStatus`];
//! the message of the last failure on the calling thread is available from
//! [`tc_last_error_message`]. Strings returned through out-parameters are
//! released with [`tc_string_free`].
//!
//! Cut shores are passed as arrays of vertex ids.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tightcut::certificate::{verify_certificate, Certificate};
use tightcut::graph::{boundary, Cut, Graph, VertexSet};
use tightcut::io::parse_edge_list;
use tightcut::matching::is_matching_covered;
use tightcut::tightcuts::{classify_cut, TightnessOracle};
use tightcut::{decompose_tight_cut, Error};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidShore = 4,
    Precondition = 5,
    LimitExceeded = 6,
    CertificateRejected = 7,
    JsonError = 8,
    Internal = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct TcGraph(Graph);

/// Opaque certificate handle.
pub struct TcCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> TcStatus {
    match e {
        Error::Parse { .. } => TcStatus::ParseError,
        Error::InvalidShore(_)
        | Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::ForeignCut => TcStatus::InvalidShore,
        Error::Precondition(_) | Error::UnknownGraph(_) => TcStatus::Precondition,
        Error::LimitExceeded { .. } => TcStatus::LimitExceeded,
        Error::Json { .. } => TcStatus::JsonError,
        Error::Internal(_) | Error::Io(_) => TcStatus::Internal,
    }
}

struct Fail(TcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and turns panics into [`TcStatus::Panic`].
fn guarded(f: impl FnOnce() -> Result<(), Fail>) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside tightcut");
            TcStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(TcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(TcStatus::InvalidUtf8, e.to_string()))
}

unsafe fn graph<'a>(g: *const TcGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn cut(g: &Graph, shore: *const u32, len: usize) -> Result<Cut, Fail> {
    if shore.is_null() && len > 0 {
        return Err(null());
    }
    let ids = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(shore, len)
    };
    Ok(boundary(g, &VertexSet::of(ids.iter().copied()))?)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next `tc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn tc_status_name(status: TcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        TcStatus::Ok => c"ok",
        TcStatus::NullPointer => c"null pointer",
        TcStatus::InvalidUtf8 => c"invalid utf-8",
        TcStatus::ParseError => c"parse error",
        TcStatus::InvalidShore => c"invalid shore",
        TcStatus::Precondition => c"precondition violated",
        TcStatus::LimitExceeded => c"limit exceeded",
        TcStatus::CertificateRejected => c"certificate rejected",
        TcStatus::JsonError => c"json error",
        TcStatus::Internal => c"internal error",
        TcStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Parse an edge-list document.
///
/// # Safety
/// `text_ptr` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_parse(
    text_ptr: *const c_char,
    out: *mut *mut TcGraph,
) -> TcStatus {
    guarded(|| {
        let g = parse_edge_list(text(text_ptr)?)?;
        put(out, Box::into_raw(Box::new(TcGraph(g))))
    })
}

/// Graph on `0..n` whose edge `i` joins `ends[2i]` and `ends[2i + 1]`.
///
/// # Safety
/// `ends` must hold `2 * m` ids and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_new(
    n: u32,
    ends: *const u32,
    m: usize,
    out: *mut *mut TcGraph,
) -> TcStatus {
    guarded(|| {
        if ends.is_null() && m > 0 {
            return Err(null());
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(ends, 2 * m)
        };
        let pairs: Vec<(u32, u32)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::new(n, &pairs)?;
        put(out, Box::into_raw(Box::new(TcGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_free(g: *mut TcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_vertex_count(g: *const TcGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// Edge count, 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_edge_count(g: *const TcGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_is_matching_covered(g: *const TcGraph, out: *mut bool) -> TcStatus {
    guarded(|| put(out, is_matching_covered(graph(g)?)))
}

/// Whether every perfect matching meets `∂(shore)` exactly once.
///
/// # Safety
/// `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_is_tight(
    g: *const TcGraph,
    shore: *const u32,
    len: usize,
    out: *mut bool,
) -> TcStatus {
    guarded(|| {
        let g = graph(g)?;
        let c = cut(g, shore, len)?;
        put(out, TightnessOracle::new(g)?.is_tight(&c))
    })
}

/// Number of tight cuts, only nontrivial ones when `nontrivial_only`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_count_tight_cuts(
    g: *const TcGraph,
    nontrivial_only: bool,
    out: *mut usize,
) -> TcStatus {
    guarded(|| {
        let g = graph(g)?;
        if !is_matching_covered(g) {
            return Err(Fail(
                TcStatus::Precondition,
                "graph is not matching covered".into(),
            ));
        }
        put(
            out,
            TightnessOracle::new(g)?.tight_cuts(nontrivial_only)?.len(),
        )
    })
}

/// Classification of `∂(shore)` as JSON (`tight`, `trivial`, `elp` and the
/// witnesses). Free the string with [`tc_string_free`].
///
/// # Safety
/// `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_classify_cut_json(
    g: *const TcGraph,
    shore: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> TcStatus {
    guarded(|| {
        let g = graph(g)?;
        let c = cut(g, shore, len)?;
        let cl = classify_cut(g, &c)?;
        let json =
            serde_json::to_string(&cl).map_err(|e| Fail(TcStatus::Internal, e.to_string()))?;
        put(out, owned_string(json))
    })
}

/// Contraction certificate for a nontrivial tight cut, verified before it is
/// returned.
///
/// # Safety
/// `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_decompose(
    g: *const TcGraph,
    shore: *const u32,
    len: usize,
    out: *mut *mut TcCertificate,
) -> TcStatus {
    guarded(|| {
        let g = graph(g)?;
        let c = cut(g, shore, len)?;
        let cert = decompose_tight_cut(g, &c)?;
        put(out, Box::into_raw(Box::new(TcCertificate(cert))))
    })
}

/// # Safety
/// `cert` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_certificate_free(cert: *mut TcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Number of graphs in the sequence, 0 for null.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_certificate_r(cert: *const TcCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.r)
}

/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_certificate_to_json(
    cert: *const TcCertificate,
    out: *mut *mut c_char,
) -> TcStatus {
    guarded(|| {
        let cert = cert.as_ref().ok_or_else(null)?;
        put(out, owned_string(cert.0.to_json_string()))
    })
}

/// Parse certificate JSON. Schema errors name the offending path.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_certificate_from_json(
    json: *const c_char,
    out: *mut *mut TcCertificate,
) -> TcStatus {
    guarded(|| {
        let cert = Certificate::from_json_str(text(json)?)?;
        put(out, Box::into_raw(Box::new(TcCertificate(cert))))
    })
}

/// Independent check of `cert` for `(g, ∂(shore))`. A rejection returns
/// [`TcStatus::CertificateRejected`] with the reason as the error message.
///
/// # Safety
/// `g` and `cert` must be live handles and `shore` must hold `len` ids.
#[no_mangle]
pub unsafe extern "C" fn tc_verify_certificate(
    g: *const TcGraph,
    shore: *const u32,
    len: usize,
    cert: *const TcCertificate,
) -> TcStatus {
    guarded(|| {
        let g = graph(g)?;
        let c = cut(g, shore, len)?;
        let cert = cert.as_ref().ok_or_else(null)?;
        verify_certificate(g, &c, &cert.0)
            .map_err(|e| Fail(TcStatus::CertificateRejected, e.to_string()))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
