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

#include "sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gaplab {

double Interval::dist0() const {
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return std::min(std::abs(lo), std::abs(hi));
}

double Interval::shortness_term() const {
    const double t = length() / (1.0 + dist0());
    return t * t;
}

IntervalFamily::IntervalFamily(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (intervals_[i].length() <= 0.0)
            throw std::invalid_argument("IntervalFamily: nonpositive length");
        if (i > 0 && intervals_[i].lo < intervals_[i - 1].hi)
            throw std::invalid_argument("IntervalFamily: overlapping intervals");
    }
}

LongReport classify_long(const IntervalFamily& family,
                         const std::vector<std::size_t>& schedule,
                         double convergence_tol, double growth_floor) {
    if (schedule.size() < 3)
        throw std::invalid_argument("classify_long: need >= 3 schedule points");
    LongReport rep;
    rep.schedule = schedule;
    for (std::size_t count : schedule) {
        const std::size_t n = std::min(count, family.size());
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += family[i].shortness_term();
        rep.partial_sums.push_back(s);
    }
    std::vector<double> increments;
    for (std::size_t i = 1; i < rep.partial_sums.size(); ++i)
        increments.push_back(rep.partial_sums[i] - rep.partial_sums[i - 1]);
    const double last = increments.back();
    const double total = rep.partial_sums.back();
    if (last <= convergence_tol * (1.0 + total))
        rep.verdict = LongVerdict::short_family;
    else if (*std::min_element(increments.end() - std::min<std::size_t>(
                                                      2, increments.size()),
                               increments.end()) >= growth_floor)
        rep.verdict = LongVerdict::long_trend;
    else
        rep.verdict = LongVerdict::inconclusive;
    return rep;
}

GapWeight::GapWeight(IntervalFamily family) : family_(std::move(family)) {}

double GapWeight::operator()(double t) const {
    const auto& iv = family_.intervals();
    auto it = std::upper_bound(
        iv.begin(), iv.end(), t,
        [](double x, const Interval& I) { return x < I.lo; });
    if (it == iv.begin()) return 0.0;
    --it;
    if (t <= it->lo || t >= it->hi) return 0.0;
    return std::min(t - it->lo, it->hi - t);
}

namespace {
// \int (t - a)/(1+t^2) dt and \int (b - t)/(1+t^2) dt antiderivatives.
double up_ramp(double a, double lo, double hi) {
    auto F = [a](double t) {
        return 0.5 * std::log1p(t * t) - a * std::atan(t);
    };
    return F(hi) - F(lo);
}
double down_ramp(double b, double lo, double hi) {
    auto F = [b](double t) {
        return b * std::atan(t) - 0.5 * std::log1p(t * t);
    };
    return F(hi) - F(lo);
}
}  // namespace

double GapWeight::poisson_integral(double window) const {
    if (window <= 0.0)
        throw std::invalid_argument("poisson_integral: window must be > 0");
    double total = 0.0;
    for (const Interval& I : family_.intervals()) {
        const double lo = std::max(I.lo, -window);
        const double hi = std::min(I.hi, window);
        if (lo >= hi) continue;
        const double mid = 0.5 * (I.lo + I.hi);
        if (lo < std::min(hi, mid))
            total += up_ramp(I.lo, lo, std::min(hi, mid));
        if (std::max(lo, mid) < hi)
            total += down_ramp(I.hi, std::max(lo, mid), hi);
    }
    return total;
}

double regularity_integral(const RealSequence& seq, double density,
                           double window) {
    if (window <= 0.0)
        throw std::invalid_argument("regularity_integral: window must be > 0");
    if (density < 0.0)
        throw std::invalid_argument("regularity_integral: density must be >= 0");
    // Breakpoints: window edges, 0, and the sequence points inside.
    std::vector<double> breaks{-window, 0.0, window};
    for (double p : seq.points())
        if (p > -window && p < window) breaks.push_back(p);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    // |n - d x| integrated exactly over a sign-constant piece.
    auto piece = [&](double n, double lo, double hi) {
        auto F = [&](double t) {
            return n * std::atan(t) - 0.5 * density * std::log1p(t * t);
        };
        return std::abs(F(hi) - F(lo));
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i], hi = breaks[i + 1];
        // n_Lambda is right-continuous; its value on (lo, hi) is the value
        // just past lo.
        const double mid = 0.5 * (lo + hi);
        const double n = static_cast<double>(counting_function(seq, mid));
        double root = (density > 0.0) ? n / density : lo - 1.0;
        if (root > lo && root < hi) {
            total += piece(n, lo, root) + piece(n, root, hi);
        } else {
            total += piece(n, lo, hi);
        }
    }
    return total;
}

namespace {
// Sum over ordered pairs i != j within [first, last) of log|p_i - p_j|.
double pair_log_sum(const std::vector<double>& p, std::size_t first,
                    std::size_t last) {
    double e = 0.0;
    for (std::size_t i = first; i < last; ++i)
        for (std::size_t j = i + 1; j < last; ++j)
            e += std::log(p[j] - p[i]);
    return 2.0 * e;
}
}  // namespace

double interval_energy(const RealSequence& seq, double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("interval_energy: hi < lo");
    const auto& p = seq.points();
    const auto first = std::lower_bound(p.begin(), p.end(), lo) - p.begin();
    const auto last = std::upper_bound(p.begin(), p.end(), hi) - p.begin();
    if (last - first < 2) return 0.0;
    return pair_log_sum(p, static_cast<std::size_t>(first),
                        static_cast<std::size_t>(last));
}

ShortPartition default_partition(double window, double gamma) {
    if (window <= 0.0)
        throw std::invalid_argument("default_partition: window must be > 0");
    if (gamma <= 0.0 || gamma >= 0.5)
        throw std::invalid_argument(
            "default_partition: gamma must lie in (0, 0.5) for a short "
            "partition");
    std::vector<Interval> right;
    double x = 0.0;
    while (x < window) {
        const double len = std::ceil(std::pow(1.0 + x, gamma));
        right.push_back({x, x + len});
        x += len;
    }
    std::vector<Interval> all;
    for (auto it = right.rbegin(); it != right.rend(); ++it)
        all.push_back({-it->hi, -it->lo});
    all.insert(all.end(), right.begin(), right.end());
    ShortPartition part;
    part.family = IntervalFamily(std::move(all));
    part.window_lo = -x;
    part.window_hi = x;
    return part;
}

std::vector<EnergyTerm> energy_condition_terms(const RealSequence& seq,
                                               const ShortPartition& partition) {
    const auto& p = seq.points();
    if (!p.empty() &&
        (p.front() < partition.window_lo || p.back() > partition.window_hi))
        throw std::invalid_argument(
            "energy_condition_terms: partition does not cover the sequence");
    std::vector<EnergyTerm> terms;
    terms.reserve(partition.family.size());
    for (const Interval& I : partition.family.intervals()) {
        // Half-open membership [lo, hi) so the contiguous cover counts each
        // point exactly once.
        const auto first = std::lower_bound(p.begin(), p.end(), I.lo) - p.begin();
        const auto last = std::lower_bound(p.begin(), p.end(), I.hi) - p.begin();
        EnergyTerm t;
        t.interval = I;
        t.count = static_cast<std::size_t>(last - first);
        t.energy = (last - first >= 2)
                       ? pair_log_sum(p, static_cast<std::size_t>(first),
                                      static_cast<std::size_t>(last))
                       : 0.0;
        const double logp = std::max(std::log(I.length()), 0.0);
        const double d = I.dist0();
        t.term = (static_cast<double>(t.count) * static_cast<double>(t.count) *
                      logp -
                  t.energy) /
                 (1.0 + d * d);
        if (t.term < -1e-9)
            throw EnergyConsistencyError(
                "energy_condition_terms: negative term " +
                std::to_string(t.term) + " at interval [" +
                std::to_string(I.lo) + ", " + std::to_string(I.hi) + ")");
        terms.push_back(t);
    }
    std::sort(terms.begin(), terms.end(),
              [](const EnergyTerm& a, const EnergyTerm& b) {
                  const double da = a.interval.dist0(), db = b.interval.dist0();
                  if (da != db) return da < db;
                  return a.interval.lo < b.interval.lo;
              });
    return terms;
}

std::vector<double> energy_condition_partials(const RealSequence& seq,
                                              const ShortPartition& partition) {
    const auto terms = energy_condition_terms(seq, partition);
    std::vector<double> partials;
    partials.reserve(terms.size());
    double acc = 0.0;
    for (const EnergyTerm& t : terms) {
        acc += t.term;
        partials.push_back(acc);
    }
    return partials;
}

const char* to_string(UniformityVerdict v) {
    switch (v) {
        case UniformityVerdict::pass: return "pass";
        case UniformityVerdict::fail_regularity: return "fail-regularity";
        case UniformityVerdict::fail_energy: return "fail-energy";
        case UniformityVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {
// Per-octave increment ratios of a cumulative-in-distance series: partial
// sums are re-sampled at distances W, W/2, W/4, ... and each increment is
// compared with the sum accumulated up to the octave's outer edge.
std::vector<double> octave_ratios(const std::vector<EnergyTerm>& terms,
                                  int octaves) {
    if (terms.empty()) return {};
    const double w_max = terms.back().interval.dist0();
    std::vector<double> edges;  // inner edges of the examined octaves
    for (int k = octaves; k >= 0; --k)
        edges.push_back(w_max / std::pow(2.0, k));
    auto partial_at = [&](double w) {
        double s = 0.0;
        for (const EnergyTerm& t : terms)
            if (t.interval.dist0() <= w) s += t.term;
        return s;
    };
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double hi = partial_at(edges[i + 1]);
        const double lo = partial_at(edges[i]);
        ratios.push_back((hi - lo) / std::max(hi, 1e-300));
    }
    return ratios;
}
}  // namespace

UniformityReport uniformity_report(const RealSequence& seq, double density,
                                   const ShortPartition& partition,
                                   const UniformityThresholds& thresholds) {
    if (density <= 0.0)
        throw std::invalid_argument("uniformity_report: density must be > 0");
    UniformityReport rep;
    rep.density = density;

    const auto& p = seq.points();
    double max_dist = 0.0;
    for (const Interval& I : partition.family.intervals())
        max_dist = std::max(max_dist, I.dist0());
    double tail_sum = 0.0;
    std::size_t tail_n = 0;
    for (const Interval& I : partition.family.intervals()) {
        const auto first = std::lower_bound(p.begin(), p.end(), I.lo) - p.begin();
        const auto last = std::lower_bound(p.begin(), p.end(), I.hi) - p.begin();
        const double defect =
            static_cast<double>(last - first) - density * I.length();
        rep.intervals.push_back(I);
        rep.defects.push_back(defect);
        rep.defect_ratios.push_back(defect / I.length());
        if (I.dist0() >= 0.5 * max_dist) {
            tail_sum += std::abs(defect) / I.length();
            ++tail_n;
        }
    }
    rep.tail_defect_ratio = tail_n ? tail_sum / static_cast<double>(tail_n) : 0.0;

    const double window = std::max(std::abs(partition.window_lo),
                                   std::abs(partition.window_hi));
    for (double w = window / 8.0; w <= window * 1.0001; w *= 2.0)
        rep.regularity_partials.push_back(
            p.empty() ? 0.0 : regularity_integral(seq, density, w));

    auto terms = energy_condition_terms(seq, partition);
    double acc = 0.0;
    for (const EnergyTerm& t : terms) {
        acc += t.term;
        rep.energy_partials.push_back(acc);
    }
    rep.energy_octave_ratios = octave_ratios(terms, thresholds.energy_octaves);
    for (const EnergyTerm& t : terms) {
        if (t.count < 2) continue;
        const double pairs =
            static_cast<double>(t.count) * static_cast<double>(t.count - 1);
        const double logp = std::max(std::log(t.interval.length()), 0.0);
        const double delta =
            (static_cast<double>(t.count) * static_cast<double>(t.count) *
                 logp -
             t.energy) /
            pairs;
        rep.pair_defects.push_back(delta);
        if (t.interval.dist0() >= 0.5 * max_dist)
            rep.tail_pair_defect = std::max(rep.tail_pair_defect, delta);
    }

    const bool regular_ok = rep.tail_defect_ratio <= thresholds.defect_ratio_pass;
    const bool regular_fail =
        rep.tail_defect_ratio >= thresholds.defect_ratio_fail;
    const bool energy_ok =
        rep.tail_pair_defect < thresholds.energy_pair_defect_max;

    if (regular_fail) {
        rep.verdict = UniformityVerdict::fail_regularity;
        rep.note = "tail defect ratio " + std::to_string(rep.tail_defect_ratio);
    } else if (regular_ok && energy_ok) {
        rep.verdict = UniformityVerdict::pass;
    } else if (regular_ok) {
        rep.verdict = UniformityVerdict::fail_energy;
        rep.note = "tail per-pair energy defect " +
                   std::to_string(rep.tail_pair_defect) +
                   " exceeds the locally-uniform scale";
    } else {
        rep.verdict = UniformityVerdict::inconclusive;
        rep.note = "defect trend between pass and fail thresholds";
    }
    return rep;
}

RealSequence midpoint_double(const RealSequence& gamma) {
    if (gamma.size() < 2)
        throw std::invalid_argument("midpoint_double: need >= 2 points");
    const auto& p = gamma.points();
    std::vector<double> out;
    out.reserve(2 * p.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.push_back(p[i]);
        if (i + 1 < p.size()) out.push_back(0.5 * (p[i] + p[i + 1]));
    }
    return RealSequence(std::move(out), 2 * gamma.origin_index());
}

RealSequence lattice_sequence(double step, double offset, double window) {
    if (step <= 0.0)
        throw std::invalid_argument("lattice_sequence: step must be > 0");
    const long k_lo = static_cast<long>(std::ceil((-window - offset) / step));
    const long k_hi = static_cast<long>(std::floor((window - offset) / step));
    std::vector<double> pts;
    for (long k = k_lo; k <= k_hi; ++k) pts.push_back(offset + k * step);
    return RealSequence(std::move(pts), -k_lo);
}

}  // namespace gaplab
