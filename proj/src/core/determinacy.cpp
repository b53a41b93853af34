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

#include "determinacy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "fourier.hpp"

namespace gaplab {

GramSystem gram_matrix(const DiscreteMeasure& mu, std::vector<double> freqs,
                       double ridge) {
    if (!mu.is_positive())
        throw std::invalid_argument(
            "gram_matrix: mu must be a nonzero positive measure");
    if (freqs.empty())
        throw std::invalid_argument("gram_matrix: empty frequency grid");
    if (ridge < 0.0)
        throw std::invalid_argument("gram_matrix: ridge must be >= 0");
    std::sort(freqs.begin(), freqs.end());
    for (std::size_t i = 1; i < freqs.size(); ++i)
        if (freqs[i] == freqs[i - 1])
            throw std::invalid_argument("gram_matrix: duplicate frequency");

    const auto n = static_cast<Eigen::Index>(freqs.size());
    GramSystem g;
    g.freqs = freqs;
    g.ridge = ridge;
    g.total_mass = mu.total_mass();
    g.matrix.resize(n, n);

    bool uniform = n >= 2;
    const double step = n >= 2 ? freqs[1] - freqs[0] : 0.0;
    for (std::size_t i = 2; i < freqs.size() && uniform; ++i)
        uniform = std::abs((freqs[i] - freqs[i - 1]) - step) <= 1e-12 * std::abs(step);

    if (uniform) {
        // Toeplitz: entry (j,k) depends on k - j only.
        std::vector<double> diffs(static_cast<std::size_t>(n));
        for (Eigen::Index d = 0; d < n; ++d)
            diffs[static_cast<std::size_t>(d)] = static_cast<double>(d) * step;
        const auto ft = ft_eval(mu, diffs);
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = j; k < n; ++k) {
                g.matrix(j, k) = ft[static_cast<std::size_t>(k - j)];
                g.matrix(k, j) = std::conj(g.matrix(j, k));
            }
        }
    } else {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = j; k < n; ++k) {
                g.matrix(j, k) = ft_eval_at(
                    mu, freqs[static_cast<std::size_t>(k)] -
                            freqs[static_cast<std::size_t>(j)]);
                g.matrix(k, j) = std::conj(g.matrix(j, k));
            }
        }
    }
    return g;
}

namespace {

Eigen::LDLT<Eigen::MatrixXcd> factor(const GramSystem& gram) {
    Eigen::MatrixXcd a = gram.matrix;
    const double eps = gram.ridge * gram.total_mass;
    if (eps > 0.0)
        a += eps * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(a);
    const double dmin = ldlt.vectorD().real().minCoeff();
    if (ldlt.info() != Eigen::Success ||
        dmin <= (gram.ridge > 0.0 ? 0.0 : 1e-14 * gram.total_mass)) {
        if (gram.ridge <= 0.0)
            throw SingularityError(
                "majorant: Gram matrix numerically singular; use a positive "
                "ridge");
        throw SingularityError("majorant: ridged factorization failed");
    }
    return ldlt;
}

Eigen::VectorXcd exp_vector(const std::vector<double>& freqs, double w) {
    Eigen::VectorXcd e(static_cast<Eigen::Index>(freqs.size()));
    for (std::size_t k = 0; k < freqs.size(); ++k)
        e(static_cast<Eigen::Index>(k)) =
            std::complex<double>(std::cos(freqs[k] * w), std::sin(freqs[k] * w));
    return e;
}

}  // namespace

double majorant(const GramSystem& gram, double w) {
    const auto ldlt = factor(gram);
    const Eigen::VectorXcd e = exp_vector(gram.freqs, w);
    const double m2 = e.dot(ldlt.solve(e)).real();
    return std::sqrt(std::max(m2, 0.0));
}

std::vector<double> majorant_curve(const GramSystem& gram,
                                   const std::vector<double>& xs) {
    const auto ldlt = factor(gram);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double w : xs) {
        const Eigen::VectorXcd e = exp_vector(gram.freqs, w);
        out.push_back(std::sqrt(std::max(e.dot(ldlt.solve(e)).real(), 0.0)));
    }
    return out;
}

std::vector<double> frequency_grid(double a, int count) {
    if (count < 1) throw std::invalid_argument("frequency_grid: count < 1");
    std::vector<double> f(static_cast<std::size_t>(count));
    if (count == 1) {
        f[0] = 0.0;
        return f;
    }
    for (int k = 0; k < count; ++k)
        f[static_cast<std::size_t>(k)] =
            -a / 2.0 + a * static_cast<double>(k) / (count - 1);
    return f;
}

GrowthTable riesz_log_integral(const DiscreteMeasure& mu, double a,
                               const std::vector<double>& windows,
                               const std::vector<int>& grid_sizes,
                               double ridge, int points_per_octave) {
    if (a <= 0.0)
        throw std::invalid_argument("riesz_log_integral: a must be > 0");
    if (windows.empty() || grid_sizes.empty())
        throw std::invalid_argument("riesz_log_integral: empty schedule");
    if (!std::is_sorted(windows.begin(), windows.end()))
        throw std::invalid_argument("riesz_log_integral: windows must increase");

    GrowthTable table;
    table.radius = a;
    table.windows = windows;
    table.grid_sizes = grid_sizes;
    const auto nw = static_cast<Eigen::Index>(windows.size());
    const auto ng = static_cast<Eigen::Index>(grid_sizes.size());
    table.logplus.setZero(nw, ng);
    table.full_log.setZero(nw, ng);
    table.ridge = ridge;

    // Log-spaced positive abscissae from x0 to the largest window; the
    // integrand is evaluated on both half-lines.
    const double x0 = 0.1;
    const double x_max = windows.back();
    const int nseg = static_cast<int>(
        std::ceil(std::log2(x_max / x0) * points_per_octave));
    std::vector<double> xg(static_cast<std::size_t>(nseg) + 1);
    for (int i = 0; i <= nseg; ++i)
        xg[static_cast<std::size_t>(i)] =
            x0 * std::exp(std::log(x_max / x0) * i / nseg);

    for (Eigen::Index gi = 0; gi < ng; ++gi) {
        const int count = grid_sizes[static_cast<std::size_t>(gi)];
        GramSystem gram = gram_matrix(mu, frequency_grid(a, count), ridge);

        // Degeneracy probe: numerical rank of the Gram matrix.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram.matrix,
                                                           Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        const double lam_max = ev.maxCoeff();
        const Eigen::Index rank =
            (ev.array() > 1e-12 * std::max(lam_max, 1e-300)).count();
        if (rank <= 1) table.degenerate = true;

        std::vector<double> xneg(xg.size());
        for (std::size_t i = 0; i < xg.size(); ++i) xneg[i] = -xg[i];
        const auto mp = majorant_curve(gram, xg);
        const auto mn = majorant_curve(gram, xneg);

        std::vector<double> g_plus(xg.size()), g_full(xg.size());
        for (std::size_t i = 0; i < xg.size(); ++i) {
            const double w = 1.0 + xg[i] * xg[i];
            g_plus[i] = (std::log(std::max(mp[i], 1.0)) +
                         std::log(std::max(mn[i], 1.0))) /
                        w;
            g_full[i] =
                (std::log(std::max(mp[i], 1e-300)) +
                 std::log(std::max(mn[i], 1e-300))) /
                w;
        }
        for (Eigen::Index wi = 0; wi < nw; ++wi) {
            const double X = windows[static_cast<std::size_t>(wi)];
            double ip = 0.0, ifl = 0.0;
            for (std::size_t i = 0; i + 1 < xg.size() && xg[i + 1] <= X; ++i) {
                const double h = xg[i + 1] - xg[i];
                ip += 0.5 * h * (g_plus[i] + g_plus[i + 1]);
                ifl += 0.5 * h * (g_full[i] + g_full[i + 1]);
            }
            table.logplus(wi, gi) = ip;
            table.full_log(wi, gi) = ifl;
        }
    }
    return table;
}

const char* to_string(DetVerdict v) {
    switch (v) {
        case DetVerdict::determinate_like: return "determinate-like";
        case DetVerdict::indeterminate_like: return "indeterminate-like";
        case DetVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

DeterminacyVerdict determinacy_verdict(const GrowthTable& table,
                                       const VerdictThresholds& thresholds) {
    DeterminacyVerdict v;
    const Eigen::Index nw = table.logplus.rows();
    const Eigen::Index ng = table.logplus.cols();
    if (nw < 3 || ng < 2) {
        v.verdict = DetVerdict::inconclusive;
        v.note = "insufficient data: need >= 3 windows and >= 2 grid sizes";
        return v;
    }
    v.increment_ratios.resize(nw - 1, ng);
    for (Eigen::Index g = 0; g < ng; ++g)
        for (Eigen::Index w = 0; w + 1 < nw; ++w)
            v.increment_ratios(w, g) =
                (table.logplus(w + 1, g) - table.logplus(w, g)) /
                std::max(table.logplus(w + 1, g), 1e-300);

    if (table.degenerate) {
        v.verdict = DetVerdict::indeterminate_like;
        v.note = "degenerate: Gram matrix has numerical rank <= 1 "
                 "(rank-one majorant; verdict forced)";
        return v;
    }

    const Eigen::Index span =
        std::min<Eigen::Index>(thresholds.octaves, nw - 1);
    auto plateau_on = [&](Eigen::Index g) {
        for (Eigen::Index w = nw - 1 - span; w + 1 < nw; ++w)
            if (v.increment_ratios(w, g) >= thresholds.plateau_ratio)
                return false;
        return true;
    };
    v.plateau_finest = plateau_on(ng - 1) && plateau_on(ng - 2);
    v.plateau_all_grids = true;
    for (Eigen::Index g = 0; g < ng; ++g)
        v.plateau_all_grids = v.plateau_all_grids && plateau_on(g);

    if (v.plateau_finest) {
        v.verdict = DetVerdict::indeterminate_like;
        v.note = v.plateau_all_grids
                     ? "plateau on every grid"
                     : "plateau on the two finest grids";
    } else {
        v.verdict = DetVerdict::determinate_like;
        v.note = "log-integral still growing per octave at the finest grid";
    }
    return v;
}

}  // namespace gaplab
