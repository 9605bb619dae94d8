//! C ABI for tpconv.
//!
//! Graphs and decompositions are opaque handles created and freed through
//! this interface. Every fallible call returns a [`TpStatus`]; on failure
//! the message is available from [`tp_last_error`] on the same thread.
//! Vertex sets cross the boundary as arrays of `size_t` ids. Functions that
//! return a set write into a caller buffer of capacity `cap` and always
//! store the set's size in `*out_len`; if the buffer is too small they
//! write nothing and return `TP_STATUS_BUFFER_TOO_SMALL`, so callers can
//! size a buffer with a first call of `cap = 0`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tpconv::{Decomposition, Error, Format, Graph, VertexSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range (vertex id, index, format, UTF-8).
    InvalidArgument = 2,
    /// Graph text could not be parsed.
    ParseError = 3,
    /// The input violates an operation's requirement (e.g. disconnected).
    ValidationError = 4,
    /// A prime-only operation was given a graph with a clique separator.
    ContractError = 5,
    /// A result failed its internal self-check.
    InternalError = 6,
    /// The output buffer is smaller than `*out_len`.
    BufferTooSmall = 7,
    /// The library panicked; the handle arguments should be discarded.
    Panic = 8,
}

/// Edge list: one `u v` pair per line, 0-based, `#` comments.
pub const TP_FORMAT_EDGE_LIST: u32 = 0;
/// DIMACS: `p edge n m` header and `e u v` lines, 1-based.
pub const TP_FORMAT_DIMACS: u32 = 1;

/// An undirected simple graph on vertices `0..n`.
pub struct TpGraph {
    graph: Graph,
}

/// Atoms of a connected graph in decomposition order, with their overlap
/// sets.
pub struct TpDecomposition {
    dec: Decomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(message: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend(message.bytes().filter(|&b| b != 0));
    });
}

struct Failure(TpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => TpStatus::ParseError,
            Error::Validation(_) | Error::Budget(_) => TpStatus::ValidationError,
            Error::Precondition(_) => TpStatus::InvalidArgument,
            Error::Contract(_) => TpStatus::ContractError,
            Error::Internal(_) => TpStatus::InternalError,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: TpStatus, message: impl Into<String>) -> Failure {
    Failure(status, message.into())
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            TpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {message}"));
            TpStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: non-null pointers are required by the caller contract to
    // point at a live object of type T.
    unsafe { ptr.as_ref() }.ok_or_else(|| fail(TpStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: as for `deref`, for a writable location.
    unsafe { ptr.as_mut() }.ok_or_else(|| fail(TpStatus::NullPointer, format!("{what} is null")))
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(fail(TpStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller guarantees `ptr` points at `len` readable elements.
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) })
}

unsafe fn c_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(fail(TpStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller guarantees a NUL-terminated string.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(TpStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn vertex_set(g: &Graph, ids: *const usize, len: usize) -> Result<VertexSet, Failure> {
    let ids = unsafe { slice(ids, len, "vertices") }?;
    let mut s = VertexSet::new(g.n());
    for &v in ids {
        if v >= g.n() {
            return Err(fail(
                TpStatus::InvalidArgument,
                format!("vertex {v} out of range for n = {}", g.n()),
            ));
        }
        s.insert(v);
    }
    Ok(s)
}

/// Writes `set` in increasing order, or reports the size needed.
unsafe fn write_set(
    set: &VertexSet,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> Result<(), Failure> {
    let out_len = unsafe { out_ptr(out_len, "out_len") }?;
    *out_len = set.len();
    if set.len() > cap {
        return Err(fail(TpStatus::BufferTooSmall, format!("buffer holds {cap} ids, set has {}", set.len())));
    }
    if set.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(fail(TpStatus::NullPointer, "buf is null"));
    }
    for (k, v) in set.iter().enumerate() {
        // SAFETY: caller guarantees `buf` has room for `cap` ids and k < len <= cap.
        unsafe { *buf.add(k) = v };
    }
    Ok(())
}

fn into_handle(graph: Graph, out: &mut *mut TpGraph) {
    *out = Box::into_raw(Box::new(TpGraph { graph }));
}

/// Builds a graph on `n` vertices from `m` edges given as `2 * m` ids
/// `u0, v0, u1, v1, ...`. Duplicate edges collapse; self-loops and ids
/// `>= n` are rejected.
///
/// # Safety
/// `edges` must point at `2 * m` readable ids (or may be null when
/// `m == 0`); `out` must be writable. Free the result with
/// [`tp_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn tp_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut TpGraph,
) -> TpStatus {
    guard(|| {
        let out = unsafe { out_ptr(out, "out") }?;
        let len = m.checked_mul(2).ok_or_else(|| fail(TpStatus::InvalidArgument, "edge count overflows"))?;
        let ids = unsafe { slice(edges, len, "edges") }?;
        let graph = Graph::from_edges(n, ids.chunks_exact(2).map(|e| (e[0], e[1])))
            .map_err(|e| fail(TpStatus::InvalidArgument, e.to_string()))?;
        into_handle(graph, out);
        Ok(())
    })
}

/// Parses graph text in `format` (`TP_FORMAT_EDGE_LIST` or
/// `TP_FORMAT_DIMACS`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable. Free the
/// result with [`tp_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn tp_graph_parse(
    text: *const c_char,
    format: u32,
    out: *mut *mut TpGraph,
) -> TpStatus {
    guard(|| {
        let out = unsafe { out_ptr(out, "out") }?;
        let text = unsafe { c_str(text, "text") }?;
        let format = match format {
            TP_FORMAT_EDGE_LIST => Format::EdgeList,
            TP_FORMAT_DIMACS => Format::Dimacs,
            other => return Err(fail(TpStatus::InvalidArgument, format!("unknown format {other}"))),
        };
        into_handle(Graph::parse(text, format)?, out);
        Ok(())
    })
}

/// Builds a named graph from a spec such as `cycle:5`, `bowtie`,
/// `triangle_star:3` or `random_connected:100:0.05`; random specs without
/// an explicit seed use `seed`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable. Free the
/// result with [`tp_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn tp_graph_generate(
    spec: *const c_char,
    seed: u64,
    out: *mut *mut TpGraph,
) -> TpStatus {
    guard(|| {
        let out = unsafe { out_ptr(out, "out") }?;
        let spec = unsafe { c_str(spec, "spec") }?;
        let kind = tpconv::GraphKind::parse_seeded(spec, seed)?;
        into_handle(kind.build()?, out);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_free(g: *mut TpGraph) {
    if !g.is_null() {
        // SAFETY: caller guarantees `g` came from Box::into_raw here.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_vertex_count(g: *const TpGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.graph.n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_edge_count(g: *const TpGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.graph.m())
}

/// Whether the `len` vertices in `ids` form a t-convex set.
///
/// # Safety
/// `g` must be a live graph handle, `ids` must point at `len` ids (or be
/// null when `len == 0`), and `out_convex` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_is_t_convex(
    g: *const TpGraph,
    ids: *const usize,
    len: usize,
    out_convex: *mut bool,
) -> TpStatus {
    guard(|| {
        let g = &unsafe { deref(g, "graph") }?.graph;
        let out = unsafe { out_ptr(out_convex, "out_convex") }?;
        let s = unsafe { vertex_set(g, ids, len) }?;
        *out = tpconv::is_t_convex(g, &s).0;
        Ok(())
    })
}

/// The t-convex hull of the `len` vertices in `ids`.
///
/// # Safety
/// As for [`tp_is_t_convex`]; `buf` must have room for `cap` ids and
/// `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_t_convex_hull(
    g: *const TpGraph,
    ids: *const usize,
    len: usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> TpStatus {
    guard(|| {
        let g = &unsafe { deref(g, "graph") }?.graph;
        let s = unsafe { vertex_set(g, ids, len) }?;
        unsafe { write_set(&tpconv::t_convex_hull(g, &s), buf, cap, out_len) }
    })
}

/// Convexity number of a connected graph with at least two vertices:
/// stores the value and writes a largest proper t-convex set.
///
/// # Safety
/// `g` must be a live graph handle; `out_value` and `out_len` writable;
/// `buf` must have room for `cap` ids.
#[no_mangle]
pub unsafe extern "C" fn tp_convexity_number(
    g: *const TpGraph,
    out_value: *mut usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> TpStatus {
    guard(|| {
        let g = &unsafe { deref(g, "graph") }?.graph;
        let out_value = unsafe { out_ptr(out_value, "out_value") }?;
        let r = tpconv::convexity_number(g)?;
        *out_value = r.value;
        unsafe { write_set(&r.witness, buf, cap, out_len) }
    })
}

/// Hull number of a connected graph: stores the value and writes a
/// minimum t-hull set (verified to hull the graph before returning).
///
/// # Safety
/// As for [`tp_convexity_number`].
#[no_mangle]
pub unsafe extern "C" fn tp_hull_number(
    g: *const TpGraph,
    out_value: *mut usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> TpStatus {
    guard(|| {
        let g = &unsafe { deref(g, "graph") }?.graph;
        let out_value = unsafe { out_ptr(out_value, "out_value") }?;
        let r = tpconv::hull_number(g)?;
        *out_value = r.value;
        unsafe { write_set(&r.hull_set, buf, cap, out_len) }
    })
}

/// Decomposes a connected graph into atoms.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable. Free the result
/// with [`tp_decomposition_free`]; it does not borrow `g`.
#[no_mangle]
pub unsafe extern "C" fn tp_decompose(g: *const TpGraph, out: *mut *mut TpDecomposition) -> TpStatus {
    guard(|| {
        let g = &unsafe { deref(g, "graph") }?.graph;
        let out = unsafe { out_ptr(out, "out") }?;
        let dec = tpconv::decompose(g)?;
        *out = Box::into_raw(Box::new(TpDecomposition { dec }));
        Ok(())
    })
}

/// Releases a decomposition. Null is ignored.
///
/// # Safety
/// `d` must be null or a handle from [`tp_decompose`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_free(d: *mut TpDecomposition) {
    if !d.is_null() {
        // SAFETY: caller guarantees `d` came from Box::into_raw here.
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Number of atoms, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_atom_count(d: *const TpDecomposition) -> usize {
    unsafe { d.as_ref() }.map_or(0, |d| d.dec.len())
}

/// Vertices of atom `index` (0-based, in decomposition order).
///
/// # Safety
/// `d` must be a live decomposition handle; `buf` must have room for
/// `cap` ids and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_atom(
    d: *const TpDecomposition,
    index: usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> TpStatus {
    guard(|| {
        let d = &unsafe { deref(d, "decomposition") }?.dec;
        if index >= d.len() {
            return Err(fail(TpStatus::InvalidArgument, format!("atom {index} of {}", d.len())));
        }
        unsafe { write_set(d.atom(index), buf, cap, out_len) }
    })
}

/// Overlap of atom `index` with all earlier atoms; `index` runs from 1 to
/// the atom count minus one.
///
/// # Safety
/// As for [`tp_decomposition_atom`].
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_overlap(
    d: *const TpDecomposition,
    index: usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> TpStatus {
    guard(|| {
        let d = &unsafe { deref(d, "decomposition") }?.dec;
        if index == 0 || index >= d.len() {
            return Err(fail(
                TpStatus::InvalidArgument,
                format!("overlap {index} needs 1 <= index < {}", d.len()),
            ));
        }
        unsafe { write_set(d.r_set(index), buf, cap, out_len) }
    })
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
/// message length (excluding the terminator); an empty message means the
/// last call succeeded.
///
/// # Safety
/// `buf` must be null (with `cap == 0`) or point at `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tp_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && cap > 0 {
            let k = e.len().min(cap - 1);
            // SAFETY: caller guarantees `cap` writable bytes at `buf`.
            unsafe {
                std::ptr::copy_nonoverlapping(e.as_ptr(), buf.cast::<u8>(), k);
                *buf.add(k) = 0;
            }
        }
        e.len()
    })
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn tp_status_name(status: TpStatus) -> *const c_char {
    let name: &'static CStr = match status {
        TpStatus::Ok => c"ok",
        TpStatus::NullPointer => c"null pointer",
        TpStatus::InvalidArgument => c"invalid argument",
        TpStatus::ParseError => c"parse error",
        TpStatus::ValidationError => c"validation error",
        TpStatus::ContractError => c"contract error",
        TpStatus::InternalError => c"internal error",
        TpStatus::BufferTooSmall => c"buffer too small",
        TpStatus::Panic => c"panic",
    };
    name.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_a_status() {
        let hook = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(hook);
        assert_eq!(status, TpStatus::Panic);
        let mut buf = [0 as c_char; 32];
        unsafe { tp_last_error(buf.as_mut_ptr(), buf.len()) };
        let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
        assert_eq!(text, "panic: boom");
    }
}
