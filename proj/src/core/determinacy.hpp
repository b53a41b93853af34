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

#include <Eigen/Core>
#include <string>
#include <vector>

#include "measure.hpp"

namespace gaplab {

// Thrown when the Gram matrix is numerically singular and no ridge was
// requested.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gram matrix of the exponential family {e^{i t_k x}} under L^2(mu):
// entry (j, k) = mu_hat(t_k - t_j).  Hermitian PSD for positive mu.
struct GramSystem {
    std::vector<double> freqs;
    Eigen::MatrixXcd matrix;
    double ridge = 0.0;       // epsilon added as ridge * total_mass * I
    double total_mass = 0.0;  // mu(R) = diagonal entry
};

// Builds the Gram system.  Uses the Toeplitz structure when freqs are
// uniformly spaced.  Throws std::invalid_argument for signed mu (determinacy
// is a positive-measure notion) or duplicate frequencies.
GramSystem gram_matrix(const DiscreteMeasure& mu, std::vector<double> freqs,
                       double ridge = 0.0);

// m(w) = sqrt(e(w)^* (G + eps I)^{-1} e(w)) with e(w)_k = e^{i t_k w}: the
// supremum of |F(w)| over the spanned family with the ridged quadratic form
// at most 1; a lower bound of the unregularized supremum for eps > 0.
double majorant(const GramSystem& gram, double w);

// Batch evaluation with a single factorization.
std::vector<double> majorant_curve(const GramSystem& gram,
                                   const std::vector<double>& xs);

// Partial Poisson integrals of log+ m over growing windows, per frequency
// grid.  logplus(w, g) = \int_{-X_w}^{X_w} log+ m_g(x) / (1+x^2) dx on a
// log-spaced x grid (trapezoid); full_log is the unclipped variant.
struct GrowthTable {
    double radius = 0.0;               // determinacy radius a (freqs in [-a/2, a/2])
    std::vector<double> windows;
    std::vector<int> grid_sizes;
    Eigen::MatrixXd logplus;           // windows x grids
    Eigen::MatrixXd full_log;
    double ridge = 0.0;
    bool degenerate = false;           // numerical Gram rank <= 1
};

GrowthTable riesz_log_integral(const DiscreteMeasure& mu, double a,
                               const std::vector<double>& windows,
                               const std::vector<int>& grid_sizes,
                               double ridge = 1e-8,
                               int points_per_octave = 32);

enum class DetVerdict { determinate_like, indeterminate_like, inconclusive };

const char* to_string(DetVerdict v);

struct VerdictThresholds {
    // Plateau: per-octave increment below this fraction of the accumulated
    // integral for `octaves` consecutive octaves.
    double plateau_ratio = 0.02;
    int octaves = 3;
};

struct DeterminacyVerdict {
    DetVerdict verdict = DetVerdict::inconclusive;
    std::string note;
    // increment_ratios(k, g) = (I_{k+1,g} - I_{k,g}) / I_{k+1,g}
    Eigen::MatrixXd increment_ratios;
    bool plateau_finest = false;
    bool plateau_all_grids = false;
};

// Plateau on the finest grids => indeterminate-like; otherwise the integral
// is still growing at the finest grid => determinate-like.  Degenerate Gram
// forces indeterminate-like with a note.  Needs >= 3 windows and >= 2 grid
// refinements (3 grid sizes are recommended).
DeterminacyVerdict determinacy_verdict(const GrowthTable& table,
                                       const VerdictThresholds& thresholds = {});

// Uniform frequency grid on [-a/2, a/2] with 2^k + 1 points.
std::vector<double> frequency_grid(double a, int count);

}  // namespace gaplab
