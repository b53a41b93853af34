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
#include <vector>

#include "measure.hpp"

namespace gaplab {

// Thrown by make_highpass_lattice when the requested gap cannot exist
// (a >= pi/spacing, a periodicity obstruction) or the profile support
// violates the gap window.
struct InfeasibleGapError : std::domain_error {
    using std::domain_error::domain_error;
};

// sigma_hat(x) = sum_k mass_k e^{i x site_k}, summed in ascending |mass|
// order.
std::vector<std::complex<double>> ft_eval(const DiscreteMeasure& sigma,
                                          std::span<const double> xs);
std::complex<double> ft_eval_at(const DiscreteMeasure& sigma, double x);

// Node-count policy: max(64, ceil(8 a span / pi)) rounded up to even, where
// span is the site spread.  Resolves the fastest oscillation of |sigma_hat|^2
// on [-a, a].
int auto_node_count(double a, double site_span);

// value = (1/2a) \int_{-a}^{a} |sigma_hat|^2 dx / ||sigma||^2, in [0, 1].
struct GapResidual {
    double gap_radius = 0.0;
    int quad_nodes = 0;
    double value = 0.0;
    double total_variation = 0.0;
};

// Gauss-Legendre quadrature of the normalized transform energy over [-a, a].
// nodes = 0 selects the auto policy.  Throws ZeroMeasureError on the zero
// measure.
GapResidual gap_residual(const DiscreteMeasure& sigma, double a,
                         int nodes = 0);

// One period of a smooth nonnegative profile supported strictly inside
// (gap_radius, period - gap_radius); identically zero elsewhere in each
// period.  The default shape is the standard bump exp(-1/(1-u^2)).
class PeriodicProfile {
  public:
    // Bump template scaled into the allowed support window.  width_factor
    // in (0, 1) sets the half-width as a fraction of the maximal one;
    // sharpness q replaces the bump exponent by exp(-q/(1-u^2)).
    static PeriodicProfile bump(double period, double gap_radius,
                                double width_factor = 0.95,
                                double sharpness = 1.0);

    double period() const { return period_; }
    double support_lo() const { return center_ - half_width_; }
    double support_hi() const { return center_ + half_width_; }

    // Periodized evaluation at any real t.
    double operator()(double t) const;

  private:
    PeriodicProfile() = default;
    double period_ = 0.0;
    double center_ = 0.0;
    double half_width_ = 0.0;
    std::function<double(double)> shape_;  // on (-1, 1), zero outside
};

// sigma = sum_{|n|<=N} c_n delta_{n delta}, N = (n_atoms-1)/2, where c_n are
// the trapezoid-rule Fourier coefficients of the profile (period 2*pi/delta).
// Coefficients with |c_n| < 1e-16 * max |c_n| are dropped.  The profile must
// vanish on [-gap_radius, gap_radius] mod period, which forces
// gap_radius < pi/spacing.
DiscreteMeasure make_highpass_lattice(double spacing, double gap_radius,
                                      int n_atoms);
DiscreteMeasure make_highpass_lattice(double spacing, double gap_radius,
                                      int n_atoms,
                                      const PeriodicProfile& profile);

// Solutions of e^{iat} = e^{i alpha} in [-window, window]:
// t_k = (alpha + 2 pi k)/a, each carrying mass 2*pi/a.
struct ClarkLattice {
    RealSequence points;
    double mass = 0.0;

    DiscreteMeasure to_measure() const;
};

ClarkLattice clark_lattice(double a, double alpha_phase, double window);

}  // namespace gaplab
