#ifndef TPCONV_H
#define TPCONV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Edge list: one `u v` pair per line, 0-based, `#` comments.
 */
#define TP_FORMAT_EDGE_LIST 0

/**
 * DIMACS: `p edge n m` header and `e u v` lines, 1-based.
 */
#define TP_FORMAT_DIMACS 1

/**
 * Result code of every fallible call.
 */
typedef enum TpStatus {
  TP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TP_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of range (vertex id, index, format, UTF-8).
   */
  TP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Graph text could not be parsed.
   */
  TP_STATUS_PARSE_ERROR = 3,
  /**
   * The input violates an operation's requirement (e.g. disconnected).
   */
  TP_STATUS_VALIDATION_ERROR = 4,
  /**
   * A prime-only operation was given a graph with a clique separator.
   */
  TP_STATUS_CONTRACT_ERROR = 5,
  /**
   * A result failed its internal self-check.
   */
  TP_STATUS_INTERNAL_ERROR = 6,
  /**
   * The output buffer is smaller than `*out_len`.
   */
  TP_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * The library panicked; the handle arguments should be discarded.
   */
  TP_STATUS_PANIC = 8,
} TpStatus;

/**
 * Atoms of a connected graph in decomposition order, with their overlap
 * sets.
 */
typedef struct TpDecomposition TpDecomposition;

/**
 * An undirected simple graph on vertices `0..n`.
 */
typedef struct TpGraph TpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph on `n` vertices from `m` edges given as `2 * m` ids
 * `u0, v0, u1, v1, ...`. Duplicate edges collapse; self-loops and ids
 * `>= n` are rejected.
 *
 * # Safety
 * `edges` must point at `2 * m` readable ids (or may be null when
 * `m == 0`); `out` must be writable. Free the result with
 * [`tp_graph_free`].
 */
enum TpStatus tp_graph_from_edges(size_t n, const size_t *edges, size_t m, struct TpGraph **out);

/**
 * Parses graph text in `format` (`TP_FORMAT_EDGE_LIST` or
 * `TP_FORMAT_DIMACS`).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable. Free the
 * result with [`tp_graph_free`].
 */
enum TpStatus tp_graph_parse(const char *text, uint32_t format, struct TpGraph **out);

/**
 * Builds a named graph from a spec such as `cycle:5`, `bowtie`,
 * `triangle_star:3` or `random_connected:100:0.05`; random specs without
 * an explicit seed use `seed`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable. Free the
 * result with [`tp_graph_free`].
 */
enum TpStatus tp_graph_generate(const char *spec, uint64_t seed, struct TpGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void tp_graph_free(struct TpGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t tp_graph_vertex_count(const struct TpGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t tp_graph_edge_count(const struct TpGraph *g);

/**
 * Whether the `len` vertices in `ids` form a t-convex set.
 *
 * # Safety
 * `g` must be a live graph handle, `ids` must point at `len` ids (or be
 * null when `len == 0`), and `out_convex` must be writable.
 */
enum TpStatus tp_is_t_convex(const struct TpGraph *g,
                             const size_t *ids,
                             size_t len,
                             bool *out_convex);

/**
 * The t-convex hull of the `len` vertices in `ids`.
 *
 * # Safety
 * As for [`tp_is_t_convex`]; `buf` must have room for `cap` ids and
 * `out_len` must be writable.
 */
enum TpStatus tp_t_convex_hull(const struct TpGraph *g,
                               const size_t *ids,
                               size_t len,
                               size_t *buf,
                               size_t cap,
                               size_t *out_len);

/**
 * Convexity number of a connected graph with at least two vertices:
 * stores the value and writes a largest proper t-convex set.
 *
 * # Safety
 * `g` must be a live graph handle; `out_value` and `out_len` writable;
 * `buf` must have room for `cap` ids.
 */
enum TpStatus tp_convexity_number(const struct TpGraph *g,
                                  size_t *out_value,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *out_len);

/**
 * Hull number of a connected graph: stores the value and writes a
 * minimum t-hull set (verified to hull the graph before returning).
 *
 * # Safety
 * As for [`tp_convexity_number`].
 */
enum TpStatus tp_hull_number(const struct TpGraph *g,
                             size_t *out_value,
                             size_t *buf,
                             size_t cap,
                             size_t *out_len);

/**
 * Decomposes a connected graph into atoms.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable. Free the result
 * with [`tp_decomposition_free`]; it does not borrow `g`.
 */
enum TpStatus tp_decompose(const struct TpGraph *g, struct TpDecomposition **out);

/**
 * Releases a decomposition. Null is ignored.
 *
 * # Safety
 * `d` must be null or a handle from [`tp_decompose`] not yet freed.
 */
void tp_decomposition_free(struct TpDecomposition *d);

/**
 * Number of atoms, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live decomposition handle.
 */
size_t tp_decomposition_atom_count(const struct TpDecomposition *d);

/**
 * Vertices of atom `index` (0-based, in decomposition order).
 *
 * # Safety
 * `d` must be a live decomposition handle; `buf` must have room for
 * `cap` ids and `out_len` must be writable.
 */
enum TpStatus tp_decomposition_atom(const struct TpDecomposition *d,
                                    size_t index,
                                    size_t *buf,
                                    size_t cap,
                                    size_t *out_len);

/**
 * Overlap of atom `index` with all earlier atoms; `index` runs from 1 to
 * the atom count minus one.
 *
 * # Safety
 * As for [`tp_decomposition_atom`].
 */
enum TpStatus tp_decomposition_overlap(const struct TpDecomposition *d,
                                       size_t index,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *out_len);

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
 * message length (excluding the terminator); an empty message means the
 * last call succeeded.
 *
 * # Safety
 * `buf` must be null (with `cap == 0`) or point at `cap` writable bytes.
 */
size_t tp_last_error(char *buf, size_t cap);

/**
 * Static name of a status code.
 */
const char *tp_status_name(enum TpStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPCONV_H */
