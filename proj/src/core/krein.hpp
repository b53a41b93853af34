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

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "measure.hpp"

namespace gaplab {

// Entire function known through its simple real zeros, the derivative values
// there, and a direct evaluator.
struct ZeroSetFunction {
    RealSequence zeros;
    std::vector<double> derivative_values;  // F'(lambda_n), all nonzero
    std::function<std::complex<double>(std::complex<double>)> evaluator;
};

// Monic polynomial prod (z - r_k) from real roots; derivative values by the
// product rule.
ZeroSetFunction from_real_roots(std::vector<double> roots);

// max over samples of |1/F(z) - sum_n 1/((z - lambda_n) F'(lambda_n))| using
// every stored zero.  Samples closer than min_distance to a zero are
// rejected.
double partial_fraction_check(const ZeroSetFunction& f,
                              std::span<const std::complex<double>> samples,
                              double min_distance = 1e-3);

struct ResidueMeasure {
    DiscreteMeasure measure;                  // mass 1/F'(lambda_n) at lambda_n
    std::vector<double> window_edges;         // growing |lambda| windows
    std::vector<double> summability_partials; // sum |1/F'| within each window
    bool summable_trend = false;              // Krein-class necessary condition
};

// Residue measure of 1/F plus a trend report on sum 1/|F'(lambda_n)|.
ResidueMeasure residue_measure(const ZeroSetFunction& f,
                               double plateau_ratio = 0.02);

struct DoubleZeroScan {
    std::vector<double> xs;
    std::vector<double> values;   // G(x)
    double sup_abs = 0.0;
    std::size_t pairs_positive = 0;
    std::size_t pairs_negative = 0;
    std::size_t dropped_zeros = 0;  // unpaired window-edge zeros
};

// Lemma-5.3 construction: pair the consecutive zeros of Lambda (positive
// side (lambda_{2n-1}, lambda_{2n}), negative side (lambda_{2n}, lambda_{2n+1})),
// form midpoints gamma_n, and evaluate
//   G(x) = F(x) prod (x - gamma)^2 / prod (x - lambda)
// in the log-magnitude domain with pair-matched term ordering.  Scan points
// closer than 1e-6 to a removed zero are rejected; a point landing exactly
// on a midpoint evaluates to 0.
DoubleZeroScan double_zero_replacement(
    const std::function<double(double)>& f_eval, const RealSequence& zeros,
    std::span<const double> scan);

struct OscillationReport {
    SignChangeReport sign_changes;
    double gap_radius = 0.0;
    double measured_residual = 0.0;  // verified precondition value
    double bound = 0.0;              // (a/pi) * (1 - slack)
    double min_rate_top_half = 0.0;
    bool pass = false;
};

// Verifies the spectral gap (gap_residual <= residual_tol, else a
// precondition error naming the measured value), then checks the rescaled
// oscillation bound min s(r)/r >= (a/pi)(1 - slack) over the top half of the
// schedule.
OscillationReport oscillation_rate_check(const DiscreteMeasure& sigma,
                                         double gap_radius,
                                         const std::vector<double>& r_schedule,
                                         double slack = 0.05,
                                         double residual_tol = 1e-6);

}  // namespace gaplab
