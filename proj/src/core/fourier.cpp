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

#include "fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "quadrature.hpp"

namespace gaplab {

namespace {
constexpr double kPi = std::numbers::pi;

// Index permutation by ascending |mass|: small terms first keeps the
// accumulated rounding of the exponential sum at the small-term scale.
std::vector<std::size_t> mass_order(const DiscreteMeasure& sigma) {
    std::vector<std::size_t> order(sigma.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(sigma.masses()[a]) < std::abs(sigma.masses()[b]);
    });
    return order;
}
}  // namespace

std::vector<std::complex<double>> ft_eval(const DiscreteMeasure& sigma,
                                          std::span<const double> xs) {
    const auto order = mass_order(sigma);
    std::vector<std::complex<double>> out(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double x = xs[j];
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k : order) {
            const double phi = x * sigma.sites()[k];
            acc += sigma.masses()[k] *
                   std::complex<double>(std::cos(phi), std::sin(phi));
        }
        out[j] = acc;
    }
    return out;
}

std::complex<double> ft_eval_at(const DiscreteMeasure& sigma, double x) {
    return ft_eval(sigma, std::span<const double>(&x, 1))[0];
}

int auto_node_count(double a, double site_span) {
    const double needed = 8.0 * a * site_span / kPi;
    int n = std::max(64, static_cast<int>(std::ceil(needed)));
    if (n % 2 != 0) ++n;
    return n;
}

GapResidual gap_residual(const DiscreteMeasure& sigma, double a, int nodes) {
    if (a <= 0.0) throw std::invalid_argument("gap_residual: a must be > 0");
    if (sigma.is_zero()) throw ZeroMeasureError("gap_residual: zero measure");
    const double tv = sigma.total_variation();
    if (nodes <= 0)
        nodes = auto_node_count(a, sigma.sites().back() - sigma.sites().front());
    const QuadratureRule rule = gauss_legendre(nodes, -a, a);
    const auto ft = ft_eval(sigma, rule.nodes);
    double integral = 0.0;
    for (int i = 0; i < nodes; ++i) integral += rule.weights[i] * std::norm(ft[i]);
    GapResidual r;
    r.gap_radius = a;
    r.quad_nodes = nodes;
    r.total_variation = tv;
    r.value = integral / (2.0 * a) / (tv * tv);
    return r;
}

PeriodicProfile PeriodicProfile::bump(double period, double gap_radius,
                                      double width_factor, double sharpness) {
    if (period <= 0.0)
        throw std::invalid_argument("PeriodicProfile: period must be > 0");
    if (gap_radius <= 0.0 || gap_radius >= period / 2.0)
        throw InfeasibleGapError(
            "PeriodicProfile: gap radius must lie in (0, period/2)");
    if (width_factor <= 0.0 || width_factor >= 1.0)
        throw std::invalid_argument(
            "PeriodicProfile: width_factor must lie in (0, 1)");
    PeriodicProfile p;
    p.period_ = period;
    p.center_ = period / 2.0;
    p.half_width_ = width_factor * (period / 2.0 - gap_radius);
    const double q = sharpness;
    p.shape_ = [q](double u) {
        const double d = 1.0 - u * u;
        return d > 0.0 ? std::exp(-q / d) : 0.0;
    };
    return p;
}

double PeriodicProfile::operator()(double t) const {
    double u = std::fmod(t - center_, period_);
    if (u < -period_ / 2.0) u += period_;
    if (u > period_ / 2.0) u -= period_;
    u /= half_width_;
    return (u > -1.0 && u < 1.0) ? shape_(u) : 0.0;
}

DiscreteMeasure make_highpass_lattice(double spacing, double gap_radius,
                                      int n_atoms) {
    if (spacing <= 0.0)
        throw std::invalid_argument("make_highpass_lattice: spacing <= 0");
    if (gap_radius >= kPi / spacing)
        throw InfeasibleGapError(
            "make_highpass_lattice: gap radius >= pi/spacing "
            "(the lattice transform is 2*pi/spacing-periodic)");
    return make_highpass_lattice(
        spacing, gap_radius, n_atoms,
        PeriodicProfile::bump(2.0 * kPi / spacing, gap_radius));
}

DiscreteMeasure make_highpass_lattice(double spacing, double gap_radius,
                                      int n_atoms,
                                      const PeriodicProfile& profile) {
    if (spacing <= 0.0)
        throw std::invalid_argument("make_highpass_lattice: spacing <= 0");
    if (gap_radius <= 0.0)
        throw std::invalid_argument("make_highpass_lattice: gap radius <= 0");
    if (gap_radius >= kPi / spacing)
        throw InfeasibleGapError(
            "make_highpass_lattice: gap radius >= pi/spacing "
            "(the lattice transform is 2*pi/spacing-periodic)");
    if (n_atoms < 1 || n_atoms % 2 == 0)
        throw std::invalid_argument(
            "make_highpass_lattice: n_atoms must be a positive odd integer");
    const double period = 2.0 * kPi / spacing;
    if (std::abs(profile.period() - period) > 1e-12 * period)
        throw std::invalid_argument(
            "make_highpass_lattice: profile period must equal 2*pi/spacing");
    if (profile.support_lo() <= gap_radius ||
        profile.support_hi() >= period - gap_radius)
        throw InfeasibleGapError(
            "make_highpass_lattice: profile support must avoid "
            "[-gap_radius, gap_radius] mod period");

    const int trunc = (n_atoms - 1) / 2;
    // Trapezoid rule over one period; spectrally accurate for the smooth
    // periodic integrand.  Oversample the highest requested harmonic.
    const int m = std::max(4096, 16 * (trunc + 1));
    std::vector<double> fvals(m);
    for (int j = 0; j < m; ++j) fvals[j] = profile(period * j / m);

    std::vector<double> sites, masses;
    sites.reserve(n_atoms);
    masses.reserve(n_atoms);
    double max_abs = 0.0;
    for (int n = -trunc; n <= trunc; ++n) {
        // c_n = (1/P) \int_0^P f(t) e^{-i n spacing t} dt.  The profile is
        // even about its center, so the coefficients are real.
        double re = 0.0, im = 0.0;
        for (int j = 0; j < m; ++j) {
            const double phi = n * spacing * (period * j / m);
            re += fvals[j] * std::cos(phi);
            im -= fvals[j] * std::sin(phi);
        }
        re /= m;
        im /= m;
        if (std::abs(im) > 1e-12 * std::max(1.0, std::abs(re)))
            throw std::invalid_argument(
                "make_highpass_lattice: profile must be even about its "
                "center (complex coefficients)");
        sites.push_back(n * spacing);
        masses.push_back(re);
        max_abs = std::max(max_abs, std::abs(re));
    }
    // Drop coefficients below round-off influence.
    std::vector<double> ks, km;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (std::abs(masses[i]) >= 1e-16 * max_abs) {
            ks.push_back(sites[i]);
            km.push_back(masses[i]);
        }
    }
    return DiscreteMeasure(std::move(ks), std::move(km), "highpass_lattice");
}

ClarkLattice clark_lattice(double a, double alpha_phase, double window) {
    if (a <= 0.0) throw std::invalid_argument("clark_lattice: a must be > 0");
    if (window <= 0.0)
        throw std::invalid_argument("clark_lattice: window must be > 0");
    const double step = 2.0 * kPi / a;
    const double t0 = alpha_phase / a;
    const long k_lo = static_cast<long>(std::ceil((-window - t0) / step));
    const long k_hi = static_cast<long>(std::floor((window - t0) / step));
    std::vector<double> pts;
    for (long k = k_lo; k <= k_hi; ++k) pts.push_back(t0 + k * step);
    ClarkLattice lat;
    lat.points = RealSequence(std::move(pts), -k_lo);
    lat.mass = step;  // 2*pi/|Theta'| with |Theta'| = a for Theta = e^{iaz}
    return lat;
}

DiscreteMeasure ClarkLattice::to_measure() const {
    return DiscreteMeasure(points.points(),
                           std::vector<double>(points.size(), mass),
                           "clark_lattice");
}

}  // namespace gaplab
