#ifndef SPHERE_CW_H
#define SPHERE_CW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call. Values are stable across releases.
 */
typedef enum SphereCwStatus {
  SPHERE_CW_STATUS_OK = 0,
  SPHERE_CW_STATUS_NULL_POINTER = 1,
  SPHERE_CW_STATUS_INVALID_UTF8 = 2,
  SPHERE_CW_STATUS_PANIC = 3,
  SPHERE_CW_STATUS_BUFFER_TOO_SMALL = 4,
  SPHERE_CW_STATUS_ZERO_VECTOR = 10,
  SPHERE_CW_STATUS_DEGENERATE_LUNE = 11,
  SPHERE_CW_STATUS_DEGENERATE_ARC = 12,
  SPHERE_CW_STATUS_AMBIGUOUS_SIDE = 13,
  SPHERE_CW_STATUS_BAD_RADIUS = 14,
  SPHERE_CW_STATUS_BAD_SPAN = 15,
  SPHERE_CW_STATUS_INVALID_BODY = 16,
  SPHERE_CW_STATUS_NOT_ON_BOUNDARY = 17,
  SPHERE_CW_STATUS_NOT_SELF_DUAL = 18,
  SPHERE_CW_STATUS_NOT_SUPPORTING = 19,
  SPHERE_CW_STATUS_NOT_STRICTLY_CONVEX = 20,
  SPHERE_CW_STATUS_DUAL_OVERLAP = 21,
  SPHERE_CW_STATUS_NOT_CONSTANT_WIDTH = 22,
  SPHERE_CW_STATUS_BUDGET_EXHAUSTED = 23,
  SPHERE_CW_STATUS_CERTIFICATION_FAILED = 24,
  SPHERE_CW_STATUS_SEED_NOT_SUBDUAL = 25,
  SPHERE_CW_STATUS_EMPTY_INTERSECTION = 26,
  SPHERE_CW_STATUS_INVALID_CONFIG = 27,
} SphereCwStatus;

/**
 * Opaque handle to a piecewise-circular convex body.
 */
typedef struct SphereCwBody SphereCwBody;

/**
 * Opaque handle to a spherical polygon given by its vertices.
 */
typedef struct SphereCwPolytope SphereCwPolytope;

/**
 * Width summary of a body, in radians.
 */
typedef struct SphereCwMetrics {
  double thickness;
  double diameter;
  double width_min;
  double width_max;
  /**
   * Hausdorff distance to the polar dual; negative when the dual is undefined.
   */
  double self_duality_residual;
} SphereCwMetrics;

/**
 * Outcome of an approximation run.
 */
typedef struct SphereCwCertificate {
  double epsilon;
  double hausdorff_bound;
  double width_min;
  double width_max;
  double self_duality_residual;
  size_t steps;
  size_t rounds;
  size_t vertices;
  bool pass;
} SphereCwCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *sphere_cw_last_error(void);

/**
 * Name of a status code as a static NUL-terminated string.
 */
const char *sphere_cw_status_name(enum SphereCwStatus status);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void sphere_cw_string_free(char *s);

/**
 * Releases a body handle. Null is ignored.
 *
 * # Safety
 * `body` must be null or a handle from this library, not yet freed.
 */
void sphere_cw_body_free(struct SphereCwBody *body);

/**
 * Releases a polytope handle. Null is ignored.
 *
 * # Safety
 * `polytope` must be null or a handle from this library, not yet freed.
 */
void sphere_cw_polytope_free(struct SphereCwPolytope *polytope);

/**
 * Spherical cap about `center` (three doubles, any nonzero length).
 *
 * # Safety
 * `center` must point to three doubles; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_cap(const double *center, double radius, struct SphereCwBody **out);

/**
 * The octant triangle with vertices at the coordinate axes.
 *
 * # Safety
 * `out` must be writable.
 */
enum SphereCwStatus sphere_cw_octant(struct SphereCwPolytope **out);

/**
 * Random self-dual polygon with about `n` vertices, deterministic in `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SphereCwStatus sphere_cw_random_polytope(size_t n,
                                              uint64_t seed,
                                              struct SphereCwPolytope **out);

/**
 * Builds a polytope from `n` vertices stored as `3 * n` doubles.
 *
 * # Safety
 * `xyz` must point to `3 * n` doubles; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_polytope_new(const double *xyz,
                                           size_t n,
                                           struct SphereCwPolytope **out);

/**
 * Number of vertices of a polytope, or 0 for a null handle.
 *
 * # Safety
 * `polytope` must be null or a live handle.
 */
size_t sphere_cw_polytope_len(const struct SphereCwPolytope *polytope);

/**
 * Copies the vertices into `xyz` as `x, y, z` triples. `capacity` counts vertices.
 *
 * # Safety
 * `polytope` must be a live handle and `xyz` must hold `3 * capacity` doubles.
 */
enum SphereCwStatus sphere_cw_polytope_vertices(const struct SphereCwPolytope *polytope,
                                                double *xyz,
                                                size_t capacity);

/**
 * Converts a polytope to a body with great-arc edges.
 *
 * # Safety
 * `polytope` must be a live handle; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_polytope_to_body(const struct SphereCwPolytope *polytope,
                                               struct SphereCwBody **out);

/**
 * Parses a shape file (polytope or piecewise-circular body) into a body.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_body_from_json(const char *json, struct SphereCwBody **out);

/**
 * Serializes a body; release the result with [`sphere_cw_string_free`].
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_body_to_json(const struct SphereCwBody *body, char **out);

/**
 * Serializes a polytope; release the result with [`sphere_cw_string_free`].
 *
 * # Safety
 * `polytope` must be a live handle; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_polytope_to_json(const struct SphereCwPolytope *polytope, char **out);

/**
 * Polar dual of a body.
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_body_dual(const struct SphereCwBody *body, struct SphereCwBody **out);

/**
 * Thickness, diameter, width range and self-duality residual.
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_body_metrics(const struct SphereCwBody *body,
                                           struct SphereCwMetrics *out);

/**
 * Hausdorff distance between two bodies.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SphereCwStatus sphere_cw_hausdorff(const struct SphereCwBody *a,
                                        const struct SphereCwBody *b,
                                        double *out);

/**
 * Approximates a body of constant width π/2 by a self-dual polygon within
 * `epsilon`. `cert` may be null. On certification failure the polygon is
 * not returned and the status is `CertificationFailed`.
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable; `cert` null or writable.
 */
enum SphereCwStatus sphere_cw_approximate(const struct SphereCwBody *body,
                                          double epsilon,
                                          struct SphereCwPolytope **out,
                                          struct SphereCwCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHERE_CW_H */
