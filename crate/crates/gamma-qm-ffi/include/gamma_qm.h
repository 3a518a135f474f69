/* C interface to the gamma-qm deformed-translation quantum mechanics library. */

#ifndef GAMMA_QM_H
#define GAMMA_QM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum GqStatus {
  GQ_STATUS_OK = 0,
  /**
   * A coordinate or parameter crossed the singular point 1 + γx = 0.
   */
  GQ_STATUS_DOMAIN_ERROR = 1,
  /**
   * Bad argument: sizes, signs, or contract violations.
   */
  GQ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An iterative routine failed to converge.
   */
  GQ_STATUS_NUMERICS_ERROR = 3,
  /**
   * A required pointer was null.
   */
  GQ_STATUS_NULL_POINTER = 4,
  /**
   * The caller-provided buffer is too small.
   */
  GQ_STATUS_BUFFER_TOO_SMALL = 5,
} GqStatus;

/**
 * Opaque deformation context: γ, mass, ħ and the valid interval.
 */
typedef struct GqFrame GqFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a frame; on success writes a heap pointer the caller must
 * release with [`gq_frame_free`].
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum GqStatus gq_frame_new(double gamma,
                           double mass,
                           double hbar,
                           double x_lo,
                           double x_hi,
                           struct GqFrame **out);

/**
 * Releases a frame created by [`gq_frame_new`]. Null is a no-op.
 *
 * # Safety
 * `frame` must be a pointer from [`gq_frame_new`] not yet freed.
 */
void gq_frame_free(struct GqFrame *frame);

/**
 * Deformed exponential [1 + γx]^(1/γ); exp(x) in the γ → 0 limit.
 *
 * # Safety
 * `out` must point to writable storage for one f64.
 */
enum GqStatus gq_qexp(double gamma, double x, double *out);

/**
 * Non-additive displacement composition dx1 + dx2 + γ·dx1·dx2.
 */
double gq_compose_displacements(double dx1, double dx2, double gamma);

/**
 * x → x + a + γ·a·x, validated against the frame domain.
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_translate_point(const struct GqFrame *frame, double x, double a, double *out);

/**
 * Inverse displacement (x − dx)/(1 + γ·dx).
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_inverse_translate(const struct GqFrame *frame, double x, double dx, double *out);

/**
 * Additive coordinate u(x) = ln(1 + γx)/γ.
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_coord_to_u(const struct GqFrame *frame, double x, double *out);

/**
 * Inverse map x(u) = (e^(γu) − 1)/γ.
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_coord_to_x(const struct GqFrame *frame, double u, double *out);

/**
 * Position-dependent effective mass m/(1 + γx)².
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_effective_mass(const struct GqFrame *frame, double x, double *out);

/**
 * Quantized wave vector k_n = nπγ/ln(1+γL) of the infinite well [0, L].
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_well_wave_vector(const struct GqFrame *frame,
                                  double length,
                                  uintptr_t n,
                                  double *out);

/**
 * Well level E_n = ħ²n²π²γ²/(2m ln²(1+γL)).
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_well_energy(const struct GqFrame *frame, double length, uintptr_t n, double *out);

/**
 * Closed-form average position of the n-th well state.
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_well_mean_x(const struct GqFrame *frame, double length, uintptr_t n, double *out);

/**
 * Samples the normalized well eigenfunction φ_n at `len` positions.
 *
 * # Safety
 * `xs` and `out` must point to `len` readable/writable f64 respectively.
 */
enum GqStatus gq_well_wavefunction(const struct GqFrame *frame,
                                   double length,
                                   uintptr_t n,
                                   const double *xs,
                                   uintptr_t len,
                                   double *out);

/**
 * Closed-form barrier transmission for a barrier of height v0 on
 * [0, width].
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_barrier_transmission(const struct GqFrame *frame,
                                      double v0,
                                      double width,
                                      double energy,
                                      double *out);

/**
 * Transfer-matrix transmission; agrees with the closed form to 1e-10.
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out` writable.
 */
enum GqStatus gq_transfer_matrix_transmission(const struct GqFrame *frame,
                                              double v0,
                                              double width,
                                              double energy,
                                              double *out);

/**
 * Numeric bound-state energies of the infinite well on [0, L], written
 * into `out_energies` (capacity must be at least `n_states`).
 *
 * # Safety
 * `frame` from [`gq_frame_new`]; `out_energies` must have room for
 * `capacity` f64.
 */
enum GqStatus gq_solve_well_energies(const struct GqFrame *frame,
                                     double length,
                                     uintptr_t n_states,
                                     uintptr_t n_grid,
                                     double *out_energies,
                                     uintptr_t capacity);

/**
 * Samples the probability flux of the forward free wave with the exact
 * derivative; the values equal ħk/m everywhere.
 *
 * # Safety
 * `xs` and `out` must point to `len` readable/writable f64; `xs`
 * ascending with at least 3 entries.
 */
enum GqStatus gq_free_wave_flux(const struct GqFrame *frame,
                                double k,
                                const double *xs,
                                uintptr_t len,
                                double *out);

/**
 * Static description of a status code; never needs freeing.
 */
const char *gq_status_message(enum GqStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GAMMA_QM_H */
