/*
 * Copyright (c) 2026, the gaplab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * gaplab C API: spectral gaps of discrete measures, determinacy diagnostics,
 * gap-characteristic estimation and the supporting constructions, behind
 * opaque handles and status codes.  Every function that can fail returns a
 * gaplab_status; gaplab_last_error() describes the most recent failure on
 * the calling thread.
 */

#ifndef GAPLAB_H
#define GAPLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gaplab_status {
    GAPLAB_OK = 0,
    GAPLAB_ERR_INVALID = 1,  /* bad arguments or violated preconditions */
    GAPLAB_ERR_DOMAIN = 2,   /* math-domain violation (zero measure, ...) */
    GAPLAB_ERR_SINGULAR = 3, /* singular Gram matrix without a ridge */
    GAPLAB_ERR_BRACKET = 4,  /* no feasibility transition in the interval */
    GAPLAB_ERR_IO = 5,
    GAPLAB_ERR_NUMERIC = 6,  /* other numerical failure */
    GAPLAB_ERR_INTERNAL = 7
} gaplab_status;

const char* gaplab_version(void);

/* Thread-local message describing the last failure (empty if none). */
const char* gaplab_last_error(void);

/* ------------------------------------------------------------------ */
/* Measures                                                            */

typedef struct gaplab_measure gaplab_measure;

/* Builds a finite signed atomic measure; sites are sorted, exact-zero
 * masses pruned, duplicate sites rejected. */
gaplab_status gaplab_measure_create(const double* sites, const double* masses,
                                    size_t n, gaplab_measure** out);
void gaplab_measure_free(gaplab_measure* m);

size_t gaplab_measure_size(const gaplab_measure* m);
/* Copies size() entries into caller-provided arrays. */
gaplab_status gaplab_measure_copy_data(const gaplab_measure* m, double* sites,
                                       double* masses);
gaplab_status gaplab_measure_total_variation(const gaplab_measure* m,
                                             double* out);

/* Plain-text "site mass" format, '#' comments, 17-digit round trip. */
gaplab_status gaplab_measure_read(const char* path, gaplab_measure** out);
gaplab_status gaplab_measure_write(const gaplab_measure* m, const char* path);

gaplab_status gaplab_jordan_decompose(const gaplab_measure* m,
                                      gaplab_measure** positive_part,
                                      gaplab_measure** negative_part);

/* Adjacent-site sign alternations of the masses within (0, r). */
gaplab_status gaplab_sign_changes(const gaplab_measure* m, double r,
                                  size_t* out);

/* Counting function of a strictly increasing point list:
 * #((0, x]) for x > 0, -#((x, 0]) for x < 0, 0 at x = 0. */
gaplab_status gaplab_counting_function(const double* points, size_t n,
                                       double x, long* out);

/* ------------------------------------------------------------------ */
/* Fourier side                                                        */

/* sigma_hat(x) = sum_k mass_k e^{i x site_k} at each of the n points. */
gaplab_status gaplab_ft_eval(const gaplab_measure* m, const double* xs,
                             size_t n, double* out_re, double* out_im);

/* (1/2a) \int_{-a}^{a} |sigma_hat|^2 / ||sigma||^2 by Gauss-Legendre
 * quadrature; nodes = 0 selects the resolution-based default. */
gaplab_status gaplab_gap_residual(const gaplab_measure* m, double a, int nodes,
                                  double* value);

/* Lattice measure with a verified spectral gap [-gap_radius, gap_radius],
 * built from the Fourier coefficients of a smooth periodized bump.
 * Requires gap_radius < pi/spacing and odd n_atoms. */
gaplab_status gaplab_make_highpass_lattice(double spacing, double gap_radius,
                                           int n_atoms, gaplab_measure** out);

/* Clark lattice for e^{iaz}: sites (phase + 2 pi k)/a within
 * [-window, window], each of mass 2 pi / a. */
gaplab_status gaplab_clark_lattice(double a, double phase, double window,
                                   gaplab_measure** out);

/* ------------------------------------------------------------------ */
/* Determinacy                                                         */

/* Majorant m(w) = sup |F(w)| over span{e^{i t x}} with the ridged
 * L^2(mu) quadratic form at most 1; mu must be positive. */
gaplab_status gaplab_majorant(const gaplab_measure* mu, const double* freqs,
                              size_t n_freqs, double ridge, double w,
                              double* out);

/* ------------------------------------------------------------------ */
/* Gap solver                                                          */

typedef struct gaplab_solver_opts {
    int restarts;       /* <= 0: default 20 */
    int max_iterations; /* <= 0: default 20000 */
    uint64_t seed;
    int threads;        /* <= 0: default 1 */
} gaplab_solver_opts;

/* Minimizes the normalized transform energy on [-a, a] over sign-patterned
 * total-variation-1 measures (masses >= 0 on sitesA, <= 0 on sitesB).
 * Non-convergence is reported through *converged, never as an error. */
gaplab_status gaplab_min_gap_residual(const double* sitesA, size_t nA,
                                      const double* sitesB, size_t nB,
                                      double a, const gaplab_solver_opts* opts,
                                      gaplab_measure** solution,
                                      double* residual, int* converged);

/* Bisection for the feasibility transition radius in [a_lo, a_hi]. */
gaplab_status gaplab_estimate_gap(const double* sitesA, size_t nA,
                                  const double* sitesB, size_t nB, double a_lo,
                                  double a_hi, double threshold,
                                  const gaplab_solver_opts* opts,
                                  int bisection_steps, double* bracket_lo,
                                  double* bracket_hi);

/* 1 iff the positive and negative supports alternate along the line after
 * pruning masses with |m| <= prune; on violation the offending adjacent
 * sites are reported. */
gaplab_status gaplab_interlacing_check(const gaplab_measure* m, double prune,
                                       int* interlaced, double* violation_lo,
                                       double* violation_hi);

/* Verifies the spectral gap, then checks min s(r)/r over the top half of
 * the schedule against (a/pi)(1 - slack). */
gaplab_status gaplab_oscillation_rate_check(const gaplab_measure* m,
                                            double gap_radius,
                                            const double* r_schedule,
                                            size_t n_r, double slack,
                                            double residual_tol, int* pass,
                                            double* min_rate);

/* ------------------------------------------------------------------ */
/* Experiments                                                         */

/* Runs a JSON experiment config (same schema the CLI produces) and writes
 * the artifact files.  Validation problems map to GAPLAB_ERR_INVALID,
 * numerical failures to GAPLAB_ERR_NUMERIC; details via
 * gaplab_last_error(). */
gaplab_status gaplab_run_experiment(const char* config_json);

#ifdef __cplusplus
}
#endif

#endif /* GAPLAB_H */
