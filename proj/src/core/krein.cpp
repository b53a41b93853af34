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

#include "krein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fourier.hpp"

namespace gaplab {

ZeroSetFunction from_real_roots(std::vector<double> roots) {
    if (roots.empty())
        throw std::invalid_argument("from_real_roots: no roots");
    std::sort(roots.begin(), roots.end());
    ZeroSetFunction f;
    f.zeros = RealSequence(roots);  // throws on duplicates (non-simple zeros)
    f.derivative_values.reserve(roots.size());
    for (std::size_t n = 0; n < roots.size(); ++n) {
        double d = 1.0;
        for (std::size_t m = 0; m < roots.size(); ++m)
            if (m != n) d *= roots[n] - roots[m];
        f.derivative_values.push_back(d);
    }
    f.evaluator = [roots](std::complex<double> z) {
        std::complex<double> p{1.0, 0.0};
        for (double r : roots) p *= z - r;
        return p;
    };
    return f;
}

double partial_fraction_check(const ZeroSetFunction& f,
                              std::span<const std::complex<double>> samples,
                              double min_distance) {
    const auto& zeros = f.zeros.points();
    if (zeros.empty())
        throw std::invalid_argument("partial_fraction_check: no zeros");
    if (zeros.size() != f.derivative_values.size())
        throw std::invalid_argument(
            "partial_fraction_check: derivative list length mismatch");
    // Residue terms summed by ascending |lambda| so symmetric zero sets
    // cancel pairwise.
    std::vector<std::size_t> order(zeros.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(zeros[a]) < std::abs(zeros[b]);
    });

    double worst = 0.0;
    for (const std::complex<double> z : samples) {
        for (double lam : zeros)
            if (std::abs(z - lam) < min_distance)
                throw std::invalid_argument(
                    "partial_fraction_check: sample within " +
                    std::to_string(min_distance) + " of zero " +
                    std::to_string(lam));
        std::complex<double> series{0.0, 0.0};
        for (std::size_t i : order)
            series += 1.0 / ((z - zeros[i]) * f.derivative_values[i]);
        worst = std::max(worst, std::abs(1.0 / f.evaluator(z) - series));
    }
    return worst;
}

ResidueMeasure residue_measure(const ZeroSetFunction& f, double plateau_ratio) {
    const auto& zeros = f.zeros.points();
    if (zeros.empty()) throw std::invalid_argument("residue_measure: no zeros");
    std::vector<double> masses(zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (f.derivative_values[i] == 0.0)
            throw std::invalid_argument(
                "residue_measure: zero derivative (non-simple zero)");
        masses[i] = 1.0 / f.derivative_values[i];
    }
    ResidueMeasure out;
    out.measure = DiscreteMeasure(zeros, std::move(masses), "residue_measure");

    // |lambda|-quantile windows holding n/8, n/4, n/2 and all of the zeros.
    std::vector<double> abs_sorted(zeros.size());
    std::vector<double> mass_by_abs(zeros.size());
    {
        std::vector<std::size_t> order(zeros.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(zeros[a]) < std::abs(zeros[b]);
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            abs_sorted[i] = std::abs(zeros[order[i]]);
            mass_by_abs[i] = std::abs(1.0 / f.derivative_values[order[i]]);
        }
    }
    const std::size_t n = zeros.size();
    double acc = 0.0;
    std::size_t taken = 0;
    for (int k = 3; k >= 0; --k) {
        const std::size_t upto = std::max<std::size_t>(n >> k, 1);
        while (taken < upto) acc += mass_by_abs[taken++];
        out.window_edges.push_back(abs_sorted[upto - 1]);
        out.summability_partials.push_back(acc);
    }
    // Tail-dominance test: the outer half of the zeros must contribute a
    // vanishing share of the sum.  Below ~16 zeros there is no trend to
    // measure and a finite sum is summable outright.
    if (n < 16) {
        out.summable_trend = true;
    } else {
        const double total = out.summability_partials.back();
        const double inner =
            out.summability_partials[out.summability_partials.size() - 2];
        out.summable_trend =
            (total - inner) < plateau_ratio * std::max(total, 1e-300);
    }
    return out;
}

namespace {

struct ZeroPair {
    double lo = 0.0, hi = 0.0, mid = 0.0;
};

}  // namespace

DoubleZeroScan double_zero_replacement(
    const std::function<double(double)>& f_eval, const RealSequence& zeros,
    std::span<const double> scan) {
    const auto& z = zeros.points();
    if (z.size() < 2)
        throw std::invalid_argument(
            "double_zero_replacement: need at least two zeros");

    DoubleZeroScan out;
    std::vector<double> pos, neg;
    for (double v : z) {
        if (v > 0.0)
            pos.push_back(v);
        else if (v < 0.0)
            neg.push_back(v);
        else
            ++out.dropped_zeros;  // a zero at the origin has no pair index
    }
    std::vector<ZeroPair> pairs;
    // Positive side: (lambda_{2n-1}, lambda_{2n}) pairs from the first
    // positive zero outward.
    for (std::size_t i = 0; i + 1 < pos.size(); i += 2)
        pairs.push_back({pos[i], pos[i + 1], 0.5 * (pos[i] + pos[i + 1])});
    if (pos.size() % 2 == 1) ++out.dropped_zeros;
    out.pairs_positive = pairs.size();
    // Negative side: (lambda_{2n}, lambda_{2n+1}) pairs from the last
    // negative zero inward, i.e. adjacent pairs ending at lambda_{-1}.
    std::size_t npairs = 0;
    for (std::size_t i = neg.size(); i >= 2; i -= 2) {
        pairs.push_back(
            {neg[i - 2], neg[i - 1], 0.5 * (neg[i - 2] + neg[i - 1])});
        ++npairs;
        if (i == 2) break;
    }
    if (neg.size() % 2 == 1) ++out.dropped_zeros;
    out.pairs_negative = npairs;
    std::sort(pairs.begin(), pairs.end(), [](const ZeroPair& a,
                                             const ZeroPair& b) {
        return std::abs(a.mid) < std::abs(b.mid);
    });

    std::vector<double> removed;
    for (const ZeroPair& p : pairs) {
        removed.push_back(p.lo);
        removed.push_back(p.hi);
    }
    std::sort(removed.begin(), removed.end());

    out.xs.assign(scan.begin(), scan.end());
    out.values.reserve(scan.size());
    for (double x : out.xs) {
        const auto it = std::lower_bound(removed.begin(), removed.end(), x);
        const double d_right =
            it != removed.end() ? std::abs(*it - x) : 1e300;
        const double d_left =
            it != removed.begin() ? std::abs(x - *(it - 1)) : 1e300;
        if (std::min(d_left, d_right) < 1e-6)
            throw std::invalid_argument(
                "double_zero_replacement: scan point within 1e-6 of a "
                "removed zero");

        const double fx = f_eval(x);
        if (fx == 0.0) {
            out.values.push_back(0.0);
            continue;
        }
        // Pair-matched log sum: each term is
        // 2 log|x-gamma| - log|x-lo| - log|x-hi| = O(|I|^2 / dist^2),
        // so the |gamma|-ordered series telescopes the huge individual logs.
        double log_mag = std::log(std::abs(fx));
        double sign = fx > 0.0 ? 1.0 : -1.0;
        bool exact_zero = false;
        for (const ZeroPair& p : pairs) {
            if (x == p.mid) {
                exact_zero = true;  // even-order touch point of G
                break;
            }
            log_mag += 2.0 * std::log(std::abs(x - p.mid)) -
                       std::log(std::abs(x - p.lo)) -
                       std::log(std::abs(x - p.hi));
            if ((x - p.lo) * (x - p.hi) < 0.0) sign = -sign;
        }
        const double val = exact_zero ? 0.0 : sign * std::exp(log_mag);
        out.values.push_back(val);
        out.sup_abs = std::max(out.sup_abs, std::abs(val));
    }
    return out;
}

OscillationReport oscillation_rate_check(const DiscreteMeasure& sigma,
                                         double gap_radius,
                                         const std::vector<double>& r_schedule,
                                         double slack, double residual_tol) {
    if (r_schedule.empty())
        throw std::invalid_argument("oscillation_rate_check: empty schedule");
    OscillationReport rep;
    rep.gap_radius = gap_radius;
    rep.measured_residual = gap_residual(sigma, gap_radius).value;
    if (!(rep.measured_residual <= residual_tol))
        throw std::invalid_argument(
            "oscillation_rate_check: spectral-gap precondition failed: "
            "measured gap residual " +
            std::to_string(rep.measured_residual) + " exceeds tolerance " +
            std::to_string(residual_tol));

    std::vector<double> radii(r_schedule);
    std::sort(radii.begin(), radii.end());
    rep.sign_changes = sign_change_report(sigma, radii);
    rep.bound = gap_radius / std::numbers::pi * (1.0 - slack);
    const std::size_t half = radii.size() / 2;
    rep.min_rate_top_half = rep.sign_changes.rates[half];
    for (std::size_t i = half; i < radii.size(); ++i)
        rep.min_rate_top_half =
            std::min(rep.min_rate_top_half, rep.sign_changes.rates[i]);
    rep.pass = rep.min_rate_top_half >= rep.bound;
    return rep;
}

}  // namespace gaplab
