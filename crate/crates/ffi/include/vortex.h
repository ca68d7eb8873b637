#ifndef VORTEX_H
#define VORTEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VortexStatus {
  VORTEX_STATUS_OK = 0,
  VORTEX_STATUS_NULL_POINTER = 1,
  VORTEX_STATUS_INVALID_CONFIG = 2,
  VORTEX_STATUS_SHAPE_MISMATCH = 3,
  VORTEX_STATUS_ZERO_FIELD = 4,
  VORTEX_STATUS_NO_ASYMPTOTE = 5,
  VORTEX_STATUS_SENSITIVITY_REGIME = 6,
  VORTEX_STATUS_NON_FINITE = 7,
  VORTEX_STATUS_ZERO_MODULUS_ON_LOOP = 8,
  VORTEX_STATUS_ZERO_INTENSITY_RING = 9,
  VORTEX_STATUS_VALIDITY = 10,
  VORTEX_STATUS_IO = 11,
  VORTEX_STATUS_PANIC = 12,
} VortexStatus;

/**
 * Opaque sampled field grid.
 */
typedef struct VortexGrid VortexGrid;

/**
 * Opaque vortex analysis result.
 */
typedef struct VortexReportHandle VortexReportHandle;

/**
 * Opaque medium description.
 */
typedef struct VortexScheme VortexScheme;

typedef struct VortexComplex {
  double re;
  double im;
} VortexComplex;

/**
 * One weighted LG term feeding field `field` at the entrance.
 */
typedef struct VortexBeamTerm {
  size_t field;
  struct VortexComplex weight;
  double epsilon;
  double waist;
  int32_t charge;
} VortexBeamTerm;

typedef struct VortexSingularity {
  double x;
  double y;
  int32_t charge;
} VortexSingularity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *vortex_last_error_message(void);

/**
 * Builds a medium from `n` coefficients. `gamma` and `delta` may be null
 * (all ones and all zeros).
 *
 * # Safety
 * Non-null array arguments must hold `n` elements; `out` must be writable.
 */
enum VortexStatus vortex_scheme_new(size_t n,
                                    const struct VortexComplex *c,
                                    const double *alpha,
                                    const double *gamma,
                                    const double *delta,
                                    double length,
                                    struct VortexScheme **out);

/**
 * Parses a medium from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum VortexStatus vortex_scheme_from_json(const char *json, struct VortexScheme **out);

/**
 * # Safety
 * `scheme` must come from this library and not be used afterwards.
 */
void vortex_scheme_free(struct VortexScheme *scheme);

/**
 * Number of fields, or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t vortex_scheme_n(const struct VortexScheme *scheme);

/**
 * Writes the `n` propagation constants and the collective eigenvalue.
 *
 * # Safety
 * `beta` must hold `n` elements; `x` must be writable.
 */
enum VortexStatus vortex_scheme_coefficients(const struct VortexScheme *scheme,
                                             struct VortexComplex *beta,
                                             size_t n,
                                             struct VortexComplex *x);

/**
 * Closed-form fields at distance `z`.
 *
 * # Safety
 * `entrance` and `out` must hold `n` elements each.
 */
enum VortexStatus vortex_propagate(const struct VortexScheme *scheme,
                                   const struct VortexComplex *entrance,
                                   size_t n,
                                   double z,
                                   struct VortexComplex *out);

/**
 * RK4 fields at distance `z` with `steps` fixed steps.
 *
 * # Safety
 * `entrance` and `out` must hold `n` elements each.
 */
enum VortexStatus vortex_integrate(const struct VortexScheme *scheme,
                                   const struct VortexComplex *entrance,
                                   size_t n,
                                   double z,
                                   size_t steps,
                                   struct VortexComplex *out);

/**
 * Long-distance limit of the fields.
 *
 * # Safety
 * `entrance` and `out` must hold `n` elements each.
 */
enum VortexStatus vortex_asymptote(const struct VortexScheme *scheme,
                                   const struct VortexComplex *entrance,
                                   size_t n,
                                   struct VortexComplex *out);

/**
 * `Σ c_m* Ω_m`.
 *
 * # Safety
 * `fields` must hold `n` elements; `out` must be writable.
 */
enum VortexStatus vortex_bright_component(const struct VortexScheme *scheme,
                                          const struct VortexComplex *fields,
                                          size_t n,
                                          struct VortexComplex *out);

/**
 * LG amplitude at polar position `(r, phi)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum VortexStatus vortex_lg_amplitude(double epsilon,
                                      double waist,
                                      int32_t charge,
                                      double r,
                                      double phi,
                                      struct VortexComplex *out);

/**
 * `Lλ/w²` and whether it is below π.
 *
 * # Safety
 * `value` and `negligible` must be writable.
 */
enum VortexStatus vortex_diffraction(double length,
                                     double wavelength,
                                     double width,
                                     double *value,
                                     bool *negligible);

/**
 * Samples the entrance fields on a `resolution²` grid spanning `[−extent, extent)²`.
 * Fields that no term names stay dark.
 *
 * # Safety
 * `terms` must hold `count` elements; `out` must be writable.
 */
enum VortexStatus vortex_grid_sample(const struct VortexScheme *scheme,
                                     const struct VortexBeamTerm *terms,
                                     size_t count,
                                     double extent,
                                     size_t resolution,
                                     struct VortexGrid **out);

/**
 * Propagates every grid point to distance `z` into a new grid.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum VortexStatus vortex_grid_propagate(const struct VortexScheme *scheme,
                                        const struct VortexGrid *grid,
                                        double z,
                                        struct VortexGrid **out);

/**
 * # Safety
 * `grid` must come from this library and not be used afterwards.
 */
void vortex_grid_free(struct VortexGrid *grid);

/**
 * Points per side, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t vortex_grid_resolution(const struct VortexGrid *grid);

/**
 * Total number of stored values, `resolution² · n`.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t vortex_grid_len(const struct VortexGrid *grid);

/**
 * Copies the grid values, laid out as `[(j·resolution + i)·n + m]`.
 *
 * # Safety
 * `out` must hold `len` elements.
 */
enum VortexStatus vortex_grid_values(const struct VortexGrid *grid,
                                     struct VortexComplex *out,
                                     size_t len);

/**
 * Detects vortices of one field and counts its petals.
 *
 * # Safety
 * `grid` must be live; `out` must be writable.
 */
enum VortexStatus vortex_grid_detect(const struct VortexGrid *grid,
                                     size_t field,
                                     struct VortexReportHandle **out);

/**
 * Intensity maxima on the ring of radius `ring_radius`.
 *
 * # Safety
 * `grid` must be live; `out` must be writable.
 */
enum VortexStatus vortex_grid_count_petals(const struct VortexGrid *grid,
                                           size_t field,
                                           double ring_radius,
                                           size_t *out);

/**
 * # Safety
 * `report` must come from this library and not be used afterwards.
 */
void vortex_report_free(struct VortexReportHandle *report);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
size_t vortex_report_count(const struct VortexReportHandle *report);

/**
 * # Safety
 * `report` must be live; `out` must be writable.
 */
enum VortexStatus vortex_report_get(const struct VortexReportHandle *report,
                                    size_t index,
                                    struct VortexSingularity *out);

/**
 * Winding around the grid boundary, or 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int32_t vortex_report_total_winding(const struct VortexReportHandle *report);

/**
 * Petal count, or −1 when none was measured.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int64_t vortex_report_petal_count(const struct VortexReportHandle *report);

/**
 * JSON form of the report. Release it with [`vortex_string_free`].
 *
 * # Safety
 * `report` must be live; `out` must be writable.
 */
enum VortexStatus vortex_report_to_json(const struct VortexReportHandle *report, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void vortex_string_free(char *s);

/**
 * Runs a scenario given as JSON and writes its artifacts under `out_dir`.
 * Returns [`VortexStatus::Validity`] when `strict` is set and a guard trips.
 *
 * # Safety
 * Both strings must be NUL-terminated.
 */
enum VortexStatus vortex_run_scenario(const char *scenario_json, const char *out_dir, bool strict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VORTEX_H */
