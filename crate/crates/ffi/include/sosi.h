#ifndef SOSI_H
#define SOSI_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result of a C API call.
typedef enum SosiStatus {
  SOSI_STATUS_OK = 0,
  // A required pointer was null or a string was not UTF-8.
  SOSI_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  // The input data was rejected.
  SOSI_STATUS_INPUT_ERROR = 2,
  // A certificate failed its self-check.
  SOSI_STATUS_INTERNAL_ERROR = 3,
  // An exhaustive search exceeded its budget.
  SOSI_STATUS_BUDGET_EXCEEDED = 4,
  // The library panicked; the handle arguments should not be reused.
  SOSI_STATUS_PANIC = 5,
} SosiStatus;

// An optimal source-sink pair together with its circular cover.
typedef struct SosiCertificate SosiCertificate;

// A validated digraph.
typedef struct SosiDigraph SosiDigraph;

// A validated plane bipartite graph with its face weights.
typedef struct SosiPlaneGraph SosiPlaneGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next API call on the same thread.
const char *sosi_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sosi_string_free(char *s);

// Builds a digraph with nodes `0..node_count` and arcs `tails[k] -> heads[k]`.
//
// # Safety
// `tails` and `heads` must point to `arc_count` values; `out` must be writable.
enum SosiStatus sosi_digraph_new(size_t node_count,
                                 const size_t *tails,
                                 const size_t *heads,
                                 size_t arc_count,
                                 struct SosiDigraph **out);

// Parses a digraph document (`{"nodes": [...], "arcs": [[u, v], ...]}`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SosiStatus sosi_digraph_from_json(const char *json, struct SosiDigraph **out);

// # Safety
// `d` must be a live handle or NULL.
size_t sosi_digraph_node_count(const struct SosiDigraph *d);

// # Safety
// `d` must be a live handle or NULL.
size_t sosi_digraph_arc_count(const struct SosiDigraph *d);

// # Safety
// `d` must come from this library and not have been freed. NULL is ignored.
void sosi_digraph_free(struct SosiDigraph *d);

// Maximum-weight source-sink pair for integer node weights, one entry per node.
//
// # Safety
// `w_o` and `w_i` must point to `len` values; `out` must be writable.
enum SosiStatus sosi_max_so_si(const struct SosiDigraph *d,
                               const int64_t *w_o,
                               const int64_t *w_i,
                               size_t len,
                               struct SosiCertificate **out);

// Same as [`sosi_max_so_si`] with weights given as a JSON document keyed by
// node name (`{"w_o": {...}, "w_i": {...}}` or `{"w": {...}}`).
//
// # Safety
// `weights_json` must be a NUL-terminated string; `out` must be writable.
enum SosiStatus sosi_max_so_si_json(const struct SosiDigraph *d,
                                    const char *weights_json,
                                    struct SosiCertificate **out);

// Optimum value as a fraction.
//
// # Safety
// `c` must be a live handle; `num` and `den` must be writable.
enum SosiStatus sosi_certificate_value(const struct SosiCertificate *c, int64_t *num, int64_t *den);

// Copies the source side (`which = 0`) or the sink side (`which = 1`) of the
// pair into `buf`, which has room for `cap` node indices. `len` receives the
// full size even when `buf` is too small; nothing is copied in that case.
//
// # Safety
// `buf` must have room for `cap` values; `len` must be writable.
enum SosiStatus sosi_certificate_nodes(const struct SosiCertificate *c,
                                       uint32_t which,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

// Writes the witness potential, one value per node, into `buf` of length `cap`.
//
// # Safety
// `buf` must have room for `cap` values.
enum SosiStatus sosi_certificate_potential(const struct SosiCertificate *c,
                                           int64_t *buf,
                                           size_t cap);

// Full certificate as JSON, the same document the command-line tool prints.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum SosiStatus sosi_certificate_to_json(const struct SosiCertificate *c, char **out);

// # Safety
// `c` must come from this library and not have been freed. NULL is ignored.
void sosi_certificate_free(struct SosiCertificate *c);

// Parses a plane bipartite graph document, including optional `w1`/`w2`
// face weights.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SosiStatus sosi_plane_from_json(const char *json, struct SosiPlaneGraph **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum SosiStatus sosi_clar_number(const struct SosiPlaneGraph *g, size_t *out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum SosiStatus sosi_fries_number(const struct SosiPlaneGraph *g, size_t *out);

// Double-weighted optimum for the graph's own face weights, as JSON.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum SosiStatus sosi_clar_fries_json(const struct SosiPlaneGraph *g, char **out);

// # Safety
// `g` must come from this library and not have been freed. NULL is ignored.
void sosi_plane_free(struct SosiPlaneGraph *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOSI_H */
