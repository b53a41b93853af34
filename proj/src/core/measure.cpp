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

#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gaplab {

DiscreteMeasure::DiscreteMeasure(std::vector<double> sites,
                                 std::vector<double> masses, std::string label)
    : label_(std::move(label)) {
    if (sites.size() != masses.size())
        throw std::invalid_argument(
            "DiscreteMeasure: sites/masses length mismatch");
    std::vector<std::size_t> order(sites.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sites[a] < sites[b]; });
    sites_.reserve(sites.size());
    masses_.reserve(masses.size());
    for (std::size_t k : order) {
        if (!std::isfinite(sites[k]) || !std::isfinite(masses[k]))
            throw std::invalid_argument("DiscreteMeasure: non-finite entry");
        if (masses[k] == 0.0) continue;  // exact-zero pruning
        if (!sites_.empty() && sites[k] == sites_.back())
            throw std::invalid_argument("DiscreteMeasure: duplicate site");
        sites_.push_back(sites[k]);
        masses_.push_back(masses[k]);
    }
}

double DiscreteMeasure::total_variation() const {
    double s = 0.0;
    for (double m : masses_) s += std::abs(m);
    return s;
}

double DiscreteMeasure::total_mass() const {
    double s = 0.0;
    for (double m : masses_) s += m;
    return s;
}

bool DiscreteMeasure::is_positive() const {
    if (is_zero()) return false;
    return std::all_of(masses_.begin(), masses_.end(),
                       [](double m) { return m > 0.0; });
}

std::pair<DiscreteMeasure, DiscreteMeasure>
jordan_decompose(const DiscreteMeasure& sigma) {
    if (sigma.is_zero())
        throw ZeroMeasureError("jordan_decompose: zero measure");
    std::vector<double> ps, pm, ns, nm;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double m = sigma.masses()[i];
        if (m > 0.0) {
            ps.push_back(sigma.sites()[i]);
            pm.push_back(m);
        } else {
            ns.push_back(sigma.sites()[i]);
            nm.push_back(-m);
        }
    }
    return {DiscreteMeasure(std::move(ps), std::move(pm)),
            DiscreteMeasure(std::move(ns), std::move(nm))};
}

double weighted_norm(const DiscreteMeasure& sigma,
                     const std::function<double(double)>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double wi = w(sigma.sites()[i]);
        if (wi < 1.0)
            throw WeightDomainError("weighted_norm: weight < 1 at site " +
                                    std::to_string(sigma.sites()[i]));
        s += wi * std::abs(sigma.masses()[i]);
    }
    return s;
}

DiscreteMeasure add(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    std::vector<double> sites, masses;
    sites.reserve(a.size() + b.size());
    masses.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const bool take_a =
            j >= b.size() ||
            (i < a.size() && a.sites()[i] <= b.sites()[j]);
        if (take_a && j < b.size() && i < a.size() &&
            a.sites()[i] == b.sites()[j]) {
            const double m = a.masses()[i] + b.masses()[j];
            if (m != 0.0) {
                sites.push_back(a.sites()[i]);
                masses.push_back(m);
            }
            ++i;
            ++j;
        } else if (take_a) {
            sites.push_back(a.sites()[i]);
            masses.push_back(a.masses()[i]);
            ++i;
        } else {
            sites.push_back(b.sites()[j]);
            masses.push_back(b.masses()[j]);
            ++j;
        }
    }
    return DiscreteMeasure(std::move(sites), std::move(masses));
}

DiscreteMeasure scale(const DiscreteMeasure& sigma, double c) {
    std::vector<double> masses(sigma.masses());
    for (double& m : masses) m *= c;
    return DiscreteMeasure(sigma.sites(), std::move(masses), sigma.label());
}

RealSequence::RealSequence(std::vector<double> points, long origin_index)
    : points_(std::move(points)), origin_index_(origin_index) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]))
            throw std::invalid_argument("RealSequence: non-finite point");
        if (i > 0 && points_[i] <= points_[i - 1])
            throw std::invalid_argument(
                "RealSequence: points not strictly increasing");
    }
}

long counting_function(const RealSequence& seq, double x) {
    const auto& p = seq.points();
    const auto above = [&](double t) {
        return static_cast<long>(p.end() -
                                 std::upper_bound(p.begin(), p.end(), t));
    };
    if (x > 0.0) return above(0.0) - above(x);    // #((0, x])
    if (x < 0.0) return -(above(x) - above(0.0)); // -#((x, 0])
    return 0;
}

std::size_t sign_changes(const DiscreteMeasure& sigma, double r) {
    if (r <= 0.0) throw std::invalid_argument("sign_changes: r must be > 0");
    std::size_t count = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double s = sigma.sites()[i];
        if (s <= 0.0) continue;
        if (s >= r) break;
        const double m = sigma.masses()[i];
        if (prev != 0.0 && ((prev > 0.0) != (m > 0.0))) ++count;
        prev = m;
    }
    return count;
}

SignChangeReport sign_change_report(const DiscreteMeasure& sigma,
                                    const std::vector<double>& radii) {
    SignChangeReport rep;
    rep.radii = radii;
    rep.counts.reserve(radii.size());
    rep.rates.reserve(radii.size());
    for (double r : radii) {
        const std::size_t c = sign_changes(sigma, r);
        rep.counts.push_back(c);
        rep.rates.push_back(static_cast<double>(c) / r);
    }
    return rep;
}

}  // namespace gaplab
