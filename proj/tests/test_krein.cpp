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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "core/fourier.hpp"
#include "core/krein.hpp"

using namespace gaplab;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> random_separated_roots(std::mt19937_64& rng, int degree,
                                           double separation) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> roots;
    double x = -0.5 * degree * (separation + 1.0);
    for (int k = 0; k < degree; ++k) {
        x += separation + u(rng);
        roots.push_back(x);
    }
    return roots;
}

ZeroSetFunction truncated_sine(long n_max) {
    std::vector<double> zeros;
    std::vector<double> derivs;
    for (long n = -n_max; n <= n_max; ++n) {
        zeros.push_back(static_cast<double>(n));
        derivs.push_back(kPi * (n % 2 == 0 ? 1.0 : -1.0));
    }
    ZeroSetFunction f;
    f.zeros = RealSequence(zeros, n_max);
    f.derivative_values = derivs;
    f.evaluator = [](std::complex<double> z) {
        return std::sin(kPi * z);
    };
    return f;
}

}  // namespace

TEST_CASE("partial fractions: z^2 - 1 is exact") {
    ZeroSetFunction f = from_real_roots({-1.0, 1.0});
    CHECK(f.derivative_values[0] == doctest::Approx(-2.0));
    CHECK(f.derivative_values[1] == doctest::Approx(2.0));
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::vector<std::complex<double>> samples;
    while (samples.size() < 50) {
        std::complex<double> z(u(rng), u(rng));
        if (std::abs(z - 1.0) > 1e-2 && std::abs(z + 1.0) > 1e-2)
            samples.push_back(z);
    }
    CHECK(partial_fraction_check(f, samples) < 1e-12);
}

TEST_CASE("partial fractions: random real-rooted polynomials up to degree 12") {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> dpick(2, 12);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = dpick(rng);
        ZeroSetFunction f =
            from_real_roots(random_separated_roots(rng, d, 0.5));
        std::vector<std::complex<double>> samples;
        while (samples.size() < 50) {
            std::complex<double> z(u(rng) * d, u(rng));
            bool ok = true;
            for (double r : f.zeros.points())
                if (std::abs(z - r) < 2e-3) ok = false;
            if (ok) samples.push_back(z);
        }
        CHECK(partial_fraction_check(f, samples) < 1e-10);
    }
}

TEST_CASE("partial fractions: sample too close to a zero is rejected") {
    ZeroSetFunction f = from_real_roots({0.0, 2.0});
    std::vector<std::complex<double>> bad{{2.0 + 1e-4, 0.0}};
    CHECK_THROWS_AS(partial_fraction_check(f, bad), std::invalid_argument);
}

TEST_CASE("partial fractions: truncated sine deviation decays with N") {
    const std::vector<std::complex<double>> samples{
        {0.5, 0.4}, {-0.37, 0.8}, {2.25, -0.6}, {1.31, 1.0}};
    double prev = 1e9;
    std::vector<double> devs;
    for (long n : {25L, 50L, 100L, 200L}) {
        const double dev = partial_fraction_check(truncated_sine(n), samples);
        CHECK(dev < prev);
        devs.push_back(dev);
        prev = dev;
    }
    // At least 1/N; the symmetric alternating truncation actually cancels
    // pairwise and the measured decay is ~1/N^2 (ratio ~4 per doubling).
    for (std::size_t i = 1; i < devs.size(); ++i) {
        const double q = devs[i - 1] / devs[i];
        CHECK(q > 2.0);
        CHECK(q < 6.0);
    }
}

TEST_CASE("residue measure of z^2 - 1 and its transform") {
    ZeroSetFunction f = from_real_roots({-1.0, 1.0});
    const ResidueMeasure rm = residue_measure(f);
    REQUIRE(rm.measure.size() == 2);
    CHECK(rm.measure.masses()[0] == doctest::Approx(-0.5));  // at -1
    CHECK(rm.measure.masses()[1] == doctest::Approx(0.5));   // at +1
    // sigma_hat(x) = i sin(x).
    for (double x : {0.3, 1.0, 2.5}) {
        const auto v = ft_eval_at(rm.measure, x);
        CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(v.imag() == doctest::Approx(std::sin(x)).epsilon(1e-13));
    }
    CHECK(rm.summable_trend);  // finitely many zeros
}

TEST_CASE("residue measure of the truncated sine is flagged non-summable") {
    const ResidueMeasure rm = residue_measure(truncated_sine(100));
    for (double m : rm.measure.masses())
        CHECK(std::abs(m) == doctest::Approx(1.0 / kPi));
    // Partials grow linearly with the window.
    const auto& p = rm.summability_partials;
    REQUIRE(p.size() == 4);
    CHECK(p[3] > 1.9 * p[2]);
    CHECK(!rm.summable_trend);
}

TEST_CASE("residues alternate at consecutive zeros of real-rooted "
          "polynomials") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        ZeroSetFunction f =
            from_real_roots(random_separated_roots(rng, 9, 0.5));
        const ResidueMeasure rm = residue_measure(f);
        for (std::size_t i = 0; i + 1 < rm.measure.size(); ++i)
            CHECK(rm.measure.masses()[i] * rm.measure.masses()[i + 1] < 0.0);
    }
}

TEST_CASE("double-zero replacement: sup stable under truncation doubling") {
    auto sinc = [](double x) {
        return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    };
    auto zeros_to = [](long n) {
        std::vector<double> z;
        for (long k = -n; k <= n; ++k)
            if (k != 0) z.push_back(static_cast<double>(k));
        return RealSequence(z);
    };
    std::vector<double> scan;
    for (int i = 0; i < 2000; ++i) {
        const double x = -50.0 + 100.0 * (i + 0.5) / 2000.0;
        scan.push_back(x);
    }
    const DoubleZeroScan a = double_zero_replacement(sinc, zeros_to(200), scan);
    const DoubleZeroScan b = double_zero_replacement(sinc, zeros_to(400), scan);
    CHECK(a.sup_abs > 0.0);
    CHECK(std::abs(b.sup_abs - a.sup_abs) / a.sup_abs < 0.10);
    CHECK(a.pairs_positive == 100);
    CHECK(a.pairs_negative == 100);
    CHECK(a.dropped_zeros == 0);
}

TEST_CASE("double-zero replacement: even-order touch at the midpoints") {
    auto sinc = [](double x) {
        return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    };
    std::vector<double> z;
    for (long k = -400; k <= 400; ++k)
        if (k != 0) z.push_back(static_cast<double>(k));
    const RealSequence zeros(z);
    // G(gamma + eps) / G(gamma + 2 eps) -> 1/4 as eps -> 0.
    for (double gamma : {1.5, 3.5, 21.5}) {
        for (double eps : {1e-3, 1e-4}) {
            const std::vector<double> pts{gamma + eps, gamma + 2.0 * eps};
            const DoubleZeroScan s = double_zero_replacement(sinc, zeros, pts);
            const double ratio = s.values[0] / s.values[1];
            CHECK(ratio == doctest::Approx(0.25).epsilon(0.02));
        }
    }
}

TEST_CASE("double-zero replacement: symbolic degree-4 cross-check") {
    // F = (z-1)(z-2)(z-r3)(z-r4), Lambda = {1, 2}: G = (z-1.5)^2 (z-r3)(z-r4).
    const double r3 = -0.8, r4 = 4.6;
    auto f = [&](double x) {
        return (x - 1.0) * (x - 2.0) * (x - r3) * (x - r4);
    };
    const RealSequence lambda({1.0, 2.0});
    std::vector<double> scan{-2.0, 0.3, 1.2, 1.8, 3.1, 6.4};
    const DoubleZeroScan s = double_zero_replacement(f, lambda, scan);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const double x = scan[i];
        const double expected =
            (x - 1.5) * (x - 1.5) * (x - r3) * (x - r4);
        CHECK(s.values[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("double-zero replacement: unpaired edge zeros are dropped with a "
          "warning count") {
    auto f = [](double x) { return std::sin(kPi * x); };
    // Three positive zeros: (1,2) pair, 3 dropped; one negative zero: -1
    // dropped.
    const RealSequence zeros({-1.0, 1.0, 2.0, 3.0});
    const std::vector<double> scan{0.4};
    const DoubleZeroScan s = double_zero_replacement(f, zeros, scan);
    CHECK(s.pairs_positive == 1);
    CHECK(s.pairs_negative == 0);
    CHECK(s.dropped_zeros == 2);
    CHECK_THROWS_AS(
        double_zero_replacement(f, zeros,
                                std::vector<double>{1.0 + 1e-9}),
        std::invalid_argument);
}

TEST_CASE("oscillation rate check on verified high-pass measures") {
    const std::vector<double> schedule{100.0, 150.0, 200.0, 280.0, 400.0};
    // Gap pi/2: bound 0.5 * 0.95.
    const DiscreteMeasure s1 = make_highpass_lattice(1.0, kPi / 2.0, 1001);
    const OscillationReport r1 =
        oscillation_rate_check(s1, kPi / 2.0, schedule);
    CHECK(r1.pass);
    CHECK(r1.min_rate_top_half >= 0.5 * 0.95);

    // Gap 0.8 pi: bound 0.8 * 0.95.
    const DiscreteMeasure s2 = make_highpass_lattice(1.0, 0.8 * kPi, 1001);
    const OscillationReport r2 =
        oscillation_rate_check(s2, 0.8 * kPi, schedule);
    CHECK(r2.pass);
    CHECK(r2.min_rate_top_half >= 0.8 * 0.95);
}

TEST_CASE("oscillation rate check verifies the gap precondition") {
    // An alternating measure with no spectral gap must be rejected, naming
    // the measured residual.
    std::vector<double> sites, masses;
    for (int n = 1; n <= 40; ++n) {
        sites.push_back(n);
        masses.push_back(n % 3 == 0 ? 1.0 : -0.5);
    }
    const DiscreteMeasure bad(sites, masses);
    CHECK_THROWS_WITH_AS(
        oscillation_rate_check(bad, 1.0, {10.0, 20.0}),
        doctest::Contains("measured gap residual"), std::invalid_argument);
}
