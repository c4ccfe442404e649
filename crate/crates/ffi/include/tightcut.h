#ifndef TIGHTCUT_H
#define TIGHTCUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. Zero is success.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  TC_STATUS_PARSE_ERROR = 3,
  TC_STATUS_INVALID_SHORE = 4,
  TC_STATUS_PRECONDITION = 5,
  TC_STATUS_LIMIT_EXCEEDED = 6,
  TC_STATUS_CERTIFICATE_REJECTED = 7,
  TC_STATUS_JSON_ERROR = 8,
  TC_STATUS_INTERNAL = 9,
  TC_STATUS_PANIC = 10,
} TcStatus;

/*
 Opaque certificate handle.
 */
typedef struct TcCertificate TcCertificate;

/*
 Opaque graph handle.
 */
typedef struct TcGraph TcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, empty after a success.
 Valid until the next `tc_*` call on the same thread.
 */
const char *tc_last_error_message(void);

/*
 Static name of a status code.
 */
const char *tc_status_name(enum TcStatus status);

/*
 Parse an edge-list document.

 # Safety
 `text_ptr` must be a nul-terminated string and `out` writable.
 */
enum TcStatus tc_graph_parse(const char *text_ptr, struct TcGraph **out);

/*
 Graph on `0..n` whose edge `i` joins `ends[2i]` and `ends[2i + 1]`.

 # Safety
 `ends` must hold `2 * m` ids and `out` must be writable.
 */
enum TcStatus tc_graph_new(uint32_t n, const uint32_t *ends, size_t m, struct TcGraph **out);

/*
 # Safety
 `g` must come from this library and not be used afterwards. Null is a no-op.
 */
void tc_graph_free(struct TcGraph *g);

/*
 Vertex count, 0 for null.

 # Safety
 `g` must be null or a live handle.
 */
size_t tc_graph_vertex_count(const struct TcGraph *g);

/*
 Edge count, 0 for null.

 # Safety
 `g` must be null or a live handle.
 */
size_t tc_graph_edge_count(const struct TcGraph *g);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum TcStatus tc_is_matching_covered(const struct TcGraph *g, bool *out);

/*
 Whether every perfect matching meets `∂(shore)` exactly once.

 # Safety
 `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
 */
enum TcStatus tc_is_tight(const struct TcGraph *g, const uint32_t *shore, size_t len, bool *out);

/*
 Number of tight cuts, only nontrivial ones when `nontrivial_only`.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum TcStatus tc_count_tight_cuts(const struct TcGraph *g, bool nontrivial_only, size_t *out);

/*
 Classification of `∂(shore)` as JSON (`tight`, `trivial`, `elp` and the
 witnesses). Free the string with [`tc_string_free`].

 # Safety
 `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
 */
enum TcStatus tc_classify_cut_json(const struct TcGraph *g,
                                   const uint32_t *shore,
                                   size_t len,
                                   char **out);

/*
 Contraction certificate for a nontrivial tight cut, verified before it is
 returned.

 # Safety
 `g` must be a live handle, `shore` must hold `len` ids and `out` be writable.
 */
enum TcStatus tc_decompose(const struct TcGraph *g,
                           const uint32_t *shore,
                           size_t len,
                           struct TcCertificate **out);

/*
 # Safety
 `cert` must come from this library and not be used afterwards. Null is a no-op.
 */
void tc_certificate_free(struct TcCertificate *cert);

/*
 Number of graphs in the sequence, 0 for null.

 # Safety
 `cert` must be null or a live handle.
 */
size_t tc_certificate_r(const struct TcCertificate *cert);

/*
 # Safety
 `cert` must be a live handle and `out` writable.
 */
enum TcStatus tc_certificate_to_json(const struct TcCertificate *cert, char **out);

/*
 Parse certificate JSON. Schema errors name the offending path.

 # Safety
 `json` must be a nul-terminated string and `out` writable.
 */
enum TcStatus tc_certificate_from_json(const char *json, struct TcCertificate **out);

/*
 Independent check of `cert` for `(g, ∂(shore))`. A rejection returns
 [`TcStatus::CertificateRejected`] with the reason as the error message.

 # Safety
 `g` and `cert` must be live handles and `shore` must hold `len` ids.
 */
enum TcStatus tc_verify_certificate(const struct TcGraph *g,
                                    const uint32_t *shore,
                                    size_t len,
                                    const struct TcCertificate *cert);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void tc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIGHTCUT_H */
