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
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaplab {

// Thrown when an operation requires a nonzero measure.
struct ZeroMeasureError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown by weighted_norm when the weight dips below 1 at a site.
struct WeightDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A finite signed atomic measure: sites strictly increasing, masses real and
// nonzero (exact zeros are pruned on construction).  An empty instance is the
// zero measure.
class DiscreteMeasure {
  public:
    DiscreteMeasure() = default;

    // Sorts (site, mass) pairs by site and prunes exact-zero masses.
    // Throws std::invalid_argument on duplicate sites or size mismatch.
    DiscreteMeasure(std::vector<double> sites, std::vector<double> masses,
                    std::string label = {});

    const std::vector<double>& sites() const { return sites_; }
    const std::vector<double>& masses() const { return masses_; }
    const std::string& label() const { return label_; }

    std::size_t size() const { return sites_.size(); }
    bool is_zero() const { return sites_.empty(); }

    // Sum of |mass_k|.
    double total_variation() const;
    // Sum of mass_k, i.e. the transform at 0.
    double total_mass() const;
    bool is_positive() const;

  private:
    std::vector<double> sites_;
    std::vector<double> masses_;
    std::string label_;
};

// Jordan decomposition sigma = sigma+ - sigma-, both parts with strictly
// positive masses on disjoint site sets.  Throws ZeroMeasureError on the zero
// measure.
std::pair<DiscreteMeasure, DiscreteMeasure>
jordan_decompose(const DiscreteMeasure& sigma);

// Sum of w(site_k) * |mass_k|.  Requires w >= 1 on every site; with w == 1
// this is the total variation.
double weighted_norm(const DiscreteMeasure& sigma,
                     const std::function<double(double)>& w);

// Measure sum and scalar multiple; coincident sites merge, cancellations
// prune.
DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b);
DiscreteMeasure scale(const DiscreteMeasure& sigma, double c);

// A strictly increasing finite point sequence.  origin_index maps list
// position i to the two-sided index n = i - origin_index.
class RealSequence {
  public:
    RealSequence() = default;
    explicit RealSequence(std::vector<double> points, long origin_index = 0);

    const std::vector<double>& points() const { return points_; }
    long origin_index() const { return origin_index_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

  private:
    std::vector<double> points_;
    long origin_index_ = 0;
};

// Counting function n_Lambda(x): #(Lambda ∩ (0, x]) for x > 0,
// -#(Lambda ∩ (x, 0]) for x < 0, 0 at x = 0.  A point at exactly 0 is counted
// into the left branch.
long counting_function(const RealSequence& seq, double x);

// Number of adjacent-site mass-sign alternations of sigma within (0, r).
std::size_t sign_changes(const DiscreteMeasure& sigma, double r);

struct SignChangeReport {
    std::vector<double> radii;
    std::vector<std::size_t> counts;
    std::vector<double> rates;  // counts[i] / radii[i]
};

SignChangeReport sign_change_report(const DiscreteMeasure& sigma,
                                    const std::vector<double>& radii);

}  // namespace gaplab
