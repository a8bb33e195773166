#ifndef GCONVERGE_H
#define GCONVERGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GcLimitKind {
  // Exact limit.
  GC_LIMIT_KIND_CONVERGES = 0,
  // Limit established from sampled evidence.
  GC_LIMIT_KIND_CONVERGES_APPROX = 1,
  GC_LIMIT_KIND_DIVERGES = 2,
  GC_LIMIT_KIND_UNKNOWN = 3,
} GcLimitKind;

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_UTF8 = 2,
  GC_STATUS_PARSE = 3,
  GC_STATUS_PRECONDITION = 4,
  GC_STATUS_UNSUPPORTED = 5,
  GC_STATUS_INTERNAL = 6,
} GcStatus;

// Opaque G-method.
typedef struct GcMethod GcMethod;

// Opaque closed-form sequence.
typedef struct GcSeq GcSeq;

// Opaque interval union.
typedef struct GcSet GcSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or an empty string. The
// pointer stays valid until the next failing call on the same thread.
const char *gc_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void gc_string_free(char *s);

// Parses a set expression such as `[0,1] u (2,3]`.
//
// # Safety
// `src` must be a valid nul-terminated string and `out` writable.
enum GcStatus gc_set_parse(const char *src, struct GcSet **out);

// # Safety
// `set` must be null or a handle from this library, freed once.
void gc_set_free(struct GcSet *set);

// Canonical text of a set.
//
// # Safety
// `set` must be a live handle and `out` writable.
enum GcStatus gc_set_to_string(const struct GcSet *set, char **out);

// Membership of a rational given as text, e.g. `3/4` or `-0.5`.
//
// # Safety
// `set` must be a live handle, `point` a valid string and `out` writable.
enum GcStatus gc_set_contains(const struct GcSet *set, const char *point, bool *out);

// # Safety
// Both handles must be live.
enum GcStatus gc_set_equal(const struct GcSet *a, const struct GcSet *b, bool *out);

// Parses a method: `lim`, `cesaro`, `stat`, `prod(m)` or a `matrix:` form.
// Matrix files are not read through this interface.
//
// # Safety
// `src` must be a valid string and `out` writable.
enum GcStatus gc_method_parse(const char *src, struct GcMethod **out);

// # Safety
// `m` must be null or a handle from this library, freed once.
void gc_method_free(struct GcMethod *m);

// # Safety
// `m` must be a live handle and `out` writable.
enum GcStatus gc_method_to_string(const struct GcMethod *m, char **out);

// Parses a closed-form sequence such as `per(prefix=[]; cycle=[0,1])`.
//
// # Safety
// `src` must be a valid string and `out` writable.
enum GcStatus gc_seq_parse(const char *src, struct GcSeq **out);

// # Safety
// `s` must be null or a handle from this library, freed once.
void gc_seq_free(struct GcSeq *s);

// # Safety
// `s` must be a live handle and `out` writable.
enum GcStatus gc_seq_to_string(const struct GcSeq *s, char **out);

// G-limit of a sequence. `value` receives the limit (or the estimate for
// `Unknown`) as text, or null on divergence.
//
// # Safety
// Handles must be live and both out-pointers writable.
enum GcStatus gc_limit(const struct GcMethod *m,
                       const struct GcSeq *s,
                       enum GcLimitKind *kind,
                       char **value);

// G-hull of a set; the result is a new handle.
//
// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_hull(const struct GcMethod *m, const struct GcSet *a, struct GcSet **out);

// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_kernel(const struct GcMethod *m, const struct GcSet *a, struct GcSet **out);

// Smallest G-closed superset.
//
// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_closure(const struct GcMethod *m, const struct GcSet *a, struct GcSet **out);

// Largest G-open subset.
//
// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_interior(const struct GcMethod *m, const struct GcSet *a, struct GcSet **out);

// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_is_closed(const struct GcMethod *m, const struct GcSet *a, bool *out);

// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_is_open(const struct GcMethod *m, const struct GcSet *a, bool *out);

// # Safety
// Handles must be live and `out` writable.
enum GcStatus gc_is_connected(const struct GcMethod *m, const struct GcSet *a, bool *out);

// Runs a named suite. `trials` of 0 selects the suite default and `m` may
// be null. `json` receives the report; `passed` its verdict.
//
// # Safety
// `name` must be a valid string, `m` null or live, out-pointers writable.
enum GcStatus gc_run_suite(const char *name,
                           const struct GcMethod *m,
                           uint64_t seed,
                           size_t trials,
                           char **json,
                           bool *passed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GCONVERGE_H */
