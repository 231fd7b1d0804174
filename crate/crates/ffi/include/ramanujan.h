#ifndef RAMANUJAN_H
#define RAMANUJAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum RmjStatus {
  RMJ_STATUS_OK = 0,
  RMJ_STATUS_NULL_POINTER = 1,
  RMJ_STATUS_INVALID_ARGUMENT = 2,
  RMJ_STATUS_PARSE_ERROR = 3,
  RMJ_STATUS_NOT_REGULAR = 4,
  // No graph with these parameters passes the bound (only `d = 1`, `n >= 4`).
  RMJ_STATUS_NO_RAMANUJAN_GRAPH = 5,
  RMJ_STATUS_INTERNAL = 6,
  RMJ_STATUS_PANIC = 7,
} RmjStatus;

// An exact spectral certificate.
typedef struct RmjCertificate RmjCertificate;

// A bipartite multigraph.
typedef struct RmjGraph RmjGraph;

// Message for the most recent failure on this thread, or NULL. Valid until
// the next failing call on the same thread.
const char *rmj_last_error_message(void);

// Builds a `d`-regular bipartite Ramanujan multigraph on `n` vertices.
// `jobs` is the number of worker threads (0 = one per core); the result does
// not depend on it.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum RmjStatus rmj_build(size_t n, size_t d, size_t jobs, struct RmjGraph **out);

// Parses `{"n": .., "d": .., "multiplicity": [[..]..]}`.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum RmjStatus rmj_graph_from_json(const char *json, struct RmjGraph **out);

// # Safety
// `graph` must come from this library; `out` must be writable.
enum RmjStatus rmj_graph_to_json(const struct RmjGraph *graph, char **out);

// Vertex count, or 0 for NULL.
//
// # Safety
// `graph` must be NULL or come from this library.
size_t rmj_graph_n(const struct RmjGraph *graph);

// Degree, or 0 for NULL.
//
// # Safety
// `graph` must be NULL or come from this library.
size_t rmj_graph_d(const struct RmjGraph *graph);

// Number of edges between left vertex `left` and right vertex `right`,
// both 0-based below `n / 2`.
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum RmjStatus rmj_graph_multiplicity(const struct RmjGraph *graph,
                                      size_t left,
                                      size_t right,
                                      uint64_t *out);

// # Safety
// `graph` must be NULL or come from this library and not be used afterwards.
void rmj_graph_free(struct RmjGraph *graph);

// Certifies the graph's nontrivial spectrum exactly.
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum RmjStatus rmj_certify(const struct RmjGraph *graph, struct RmjCertificate **out);

// Whether every nontrivial eigenvalue lies in `[-2 sqrt(d-1), 2 sqrt(d-1)]`.
// False for NULL.
//
// # Safety
// `cert` must be NULL or come from this library.
bool rmj_certificate_passed(const struct RmjCertificate *cert);

// # Safety
// `cert` must come from this library; `out` must be writable.
enum RmjStatus rmj_certificate_to_json(const struct RmjCertificate *cert, char **out);

// # Safety
// `cert` must be NULL or come from this library and not be used afterwards.
void rmj_certificate_free(struct RmjCertificate *cert);

// Expected nontrivial characteristic polynomial of a tree node, as a JSON
// list of exact coefficient strings, constant term first. `node_json` NULL
// means the root.
//
// # Safety
// `node_json` must be NULL or NUL-terminated; `out` must be writable.
enum RmjStatus rmj_node_poly_json(size_t n, size_t d, const char *node_json, char **out);

// # Safety
// `s` must be NULL or a string returned by this library, not freed before.
void rmj_string_free(char *s);

#endif  /* RAMANUJAN_H */
