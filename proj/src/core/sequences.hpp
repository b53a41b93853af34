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

#include <cstddef>
#include <string>
#include <vector>

#include "measure.hpp"

namespace gaplab {

// Signals an energy-evaluation inconsistency (a Def-2.4 term negative beyond
// round-off, which the theory forbids).
struct EnergyConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    // Distance from the origin to the closed interval.
    double dist0() const;
    // ((length) / (1 + dist0))^2, the longness series term.
    double shortness_term() const;
};

// Ordered, pairwise disjoint open intervals.
class IntervalFamily {
  public:
    IntervalFamily() = default;
    explicit IntervalFamily(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  private:
    std::vector<Interval> intervals_;
};

enum class LongVerdict { long_trend, short_family, inconclusive };

struct LongReport {
    LongVerdict verdict = LongVerdict::inconclusive;
    std::vector<std::size_t> schedule;   // prefix counts examined
    std::vector<double> partial_sums;    // shortness partial sums at each
};

// Trend classification of the shortness series over prefix counts.  "short"
// when tail increments fall below convergence_tol * (1 + sum); "long-trend"
// when the last increments stay above growth_floor.
LongReport classify_long(const IntervalFamily& family,
                         const std::vector<std::size_t>& schedule,
                         double convergence_tol = 1e-6,
                         double growth_floor = 1e-2);

// w(t) = dist(t, R \ (a_n, b_n)) on each interval, zero elsewhere.
// 1-Lipschitz by construction.  Poisson integrals are evaluated in closed
// form per clipped interval.
class GapWeight {
  public:
    explicit GapWeight(IntervalFamily family);

    double operator()(double t) const;
    // \int_{-X}^{X} w(t) / (1 + t^2) dt, exact.
    double poisson_integral(double window) const;

    const IntervalFamily& family() const { return family_; }

  private:
    IntervalFamily family_;
};

// \int_{-X}^{X} |n_Lambda(x) - d x| / (1 + x^2) dx by piecewise-exact
// integration (the integrand is elementary between sequence points and the
// root of n - d x).
double regularity_integral(const RealSequence& seq, double density,
                           double window);

// Atomic interval energy: sum over ordered pairs i != j of points of
// Lambda in [lo, hi] of log|lambda_i - lambda_j|.  Fewer than two points
// give 0 by convention.
double interval_energy(const RealSequence& seq, double lo, double hi);

// A contiguous interval cover of [window_lo, window_hi] whose lengths grow
// toward the edges and whose shortness series converges.
struct ShortPartition {
    IntervalFamily family;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// Default generator: integer lengths ceil((1 + |left endpoint|)^gamma)
// marching outward from 0 in both directions until |end| >= window.
// gamma = 0.4 keeps the shortness series summable (2*gamma - 2 < -1).
ShortPartition default_partition(double window, double gamma = 0.4);

struct EnergyTerm {
    Interval interval;
    std::size_t count = 0;     // #(Lambda ∩ I_n), half-open [lo, hi)
    double energy = 0.0;       // E_{I_n}(dn_Lambda)
    double term = 0.0;         // (count^2 log+ |I| - energy) / (1 + dist^2)
};

// Per-interval terms of the Def-2.4 energy series, ordered by distance from
// the origin.  Throws EnergyConsistencyError if a term is < -1e-9.
std::vector<EnergyTerm> energy_condition_terms(const RealSequence& seq,
                                               const ShortPartition& partition);

// Cumulative sums of the terms above (growing-window partial sums).
std::vector<double> energy_condition_partials(const RealSequence& seq,
                                              const ShortPartition& partition);

enum class UniformityVerdict { pass, fail_regularity, fail_energy, inconclusive };

const char* to_string(UniformityVerdict v);

struct UniformityThresholds {
    // Tail mean of |defect|/|I_n| below which the density trend counts as
    // regular, and above which it counts as failed.
    double defect_ratio_pass = 0.10;
    double defect_ratio_fail = 0.25;
    // Energy test: per-pair defect (k^2 log+ |I| - E) / (k (k-1)) is ~3/2
    // for locally uniform spacing and grows like the log of the inverse
    // cluster width; the tail maximum above this level fails the energy
    // condition for the supplied partition.
    double energy_pair_defect_max = 6.0;
    int energy_octaves = 3;  // octave count reported as trend evidence
};

struct UniformityReport {
    double density = 0.0;
    UniformityVerdict verdict = UniformityVerdict::inconclusive;
    std::vector<Interval> intervals;
    std::vector<double> defects;          // count - d |I_n| per interval
    std::vector<double> defect_ratios;    // defect / |I_n|
    double tail_defect_ratio = 0.0;       // mean |ratio| over the outer half
    std::vector<double> regularity_partials;  // integral over growing windows
    std::vector<double> energy_partials;
    std::vector<double> energy_octave_ratios;  // increment / accumulated
    std::vector<double> pair_defects;     // per interval with >= 2 points
    double tail_pair_defect = 0.0;        // max over the outer half
    std::string note;
};

UniformityReport uniformity_report(const RealSequence& seq, double density,
                                   const ShortPartition& partition,
                                   const UniformityThresholds& thresholds = {});

// Gamma ∪ {midpoints of consecutive pairs}; doubles the counting-function
// increment over any window whose endpoints lie in Gamma.
RealSequence midpoint_double(const RealSequence& gamma);

// Arithmetic lattice step*k + offset restricted to [-window, window].
RealSequence lattice_sequence(double step, double offset, double window);

}  // namespace gaplab
