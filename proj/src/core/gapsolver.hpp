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

#include <cstdint>
#include <optional>
#include <vector>

#include "fourier.hpp"
#include "measure.hpp"

namespace gaplab {

// Thrown by estimate_gap_characteristic when no feasibility transition lies
// inside [a_lo, a_hi].
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by interlacing_check on a one-signed measure.
struct NotApplicableError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SolverSettings {
    int restarts = 20;
    int max_iterations = 20000;
    // Early stop when the L1 change of the mass vector over a 100-iteration
    // block drops below this.
    double step_tol = 1e-13;
    std::uint64_t seed = 42;
    int threads = 1;
    int quad_nodes = 0;  // 0 = the fourier module's auto policy
};

// Sign-constrained relaxation of membership in M_a(A, B): minimize
// (1/2a) \int_{-a}^{a} |sigma_hat|^2 over measures with masses >= 0 on
// sitesA, <= 0 on sitesB, total variation 1.
struct GapProblem {
    std::vector<double> sitesA;
    std::vector<double> sitesB;
    double gap_radius = 0.0;
    SolverSettings settings;
};

struct GapSolution {
    DiscreteMeasure measure;   // sign pattern exact, total variation 1
    GapResidual residual;      // upper bound on the true minimum
    int iterations = 0;        // of the best restart
    bool converged = false;
    int best_restart = -1;
};

// Projected gradient on the quadratic form with sign clipping and
// total-variation renormalization each step, over seeded restarts; the best
// iterate is returned.  Never throws on non-convergence (converged = false).
// Optional warm starts are projected to the feasible set and seed the first
// restarts.
GapSolution min_gap_residual(const GapProblem& problem);
GapSolution min_gap_residual(const GapProblem& problem,
                             const std::vector<DiscreteMeasure>& warm_starts);

struct GapBracket {
    double lo = 0.0;  // largest radius observed feasible
    double hi = 0.0;  // smallest radius observed infeasible
    double residual_lo = 0.0;
    double residual_hi = 0.0;
    int probes = 0;
    std::vector<double> probe_radii;
    std::vector<double> probe_residuals;
};

// Bisection on the gap radius over min_gap_residual outcomes; feasible means
// best residual < threshold.  [a_lo, a_hi] must straddle the transition.
GapBracket estimate_gap_characteristic(const std::vector<double>& sitesA,
                                       const std::vector<double>& sitesB,
                                       double a_lo, double a_hi,
                                       double threshold = 1e-3,
                                       const SolverSettings& settings = {},
                                       int bisection_steps = 5);

struct InterlacingResult {
    bool interlaced = false;
    // First violating adjacent same-sign pair, when not interlaced.
    double violation_site_lo = 0.0;
    double violation_site_hi = 0.0;
};

// True iff the supports of sigma+ and sigma- alternate along the line.
// Masses with |m| <= prune are ignored.  Throws NotApplicableError when
// either part is empty after pruning.
InterlacingResult interlacing_check(const DiscreteMeasure& sigma,
                                    double prune = 0.0);

// Gap transition with the positive part pinned to sitesX and the negative
// part free on a dense grid (points closer than min_separation to sitesX are
// removed).  Probes the largest radius at which some positive measure on X
// is part of a gap measure.
GapBracket det_probe(const std::vector<double>& sitesX,
                     const std::vector<double>& fine_grid, double a_lo,
                     double a_hi, double threshold = 1e-3,
                     const SolverSettings& settings = {},
                     int bisection_steps = 5,
                     double min_separation = 1e-9);

}  // namespace gaplab
