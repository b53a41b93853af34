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
#include <cstdio>
#include <filesystem>
#include <string>

#include "gaplab/gaplab.h"

// Pure-C translation unit exercising the header under a C compiler.
extern "C" int gaplab_c_smoke(void);

namespace fs = std::filesystem;

TEST_CASE("the header compiles and runs as C") {
    CHECK(gaplab_c_smoke() == 0);
    CHECK(std::string(gaplab_version()) == "0.1.0");
}

TEST_CASE("measure lifecycle through the C surface") {
    const double sites[] = {-1.0, 1.0, 3.0};
    const double masses[] = {-2.0, 3.0, 0.0};  // third atom pruned
    gaplab_measure* m = nullptr;
    REQUIRE(gaplab_measure_create(sites, masses, 3, &m) == GAPLAB_OK);
    CHECK(gaplab_measure_size(m) == 2);

    double tv = 0.0;
    CHECK(gaplab_measure_total_variation(m, &tv) == GAPLAB_OK);
    CHECK(tv == doctest::Approx(5.0));

    double s2[2], m2[2];
    CHECK(gaplab_measure_copy_data(m, s2, m2) == GAPLAB_OK);
    CHECK(s2[0] == -1.0);
    CHECK(m2[1] == 3.0);

    gaplab_measure *pos = nullptr, *neg = nullptr;
    CHECK(gaplab_jordan_decompose(m, &pos, &neg) == GAPLAB_OK);
    CHECK(gaplab_measure_size(pos) == 1);
    CHECK(gaplab_measure_size(neg) == 1);

    const double dup_sites[] = {1.0, 1.0};
    const double dup_masses[] = {1.0, 2.0};
    gaplab_measure* bad = nullptr;
    CHECK(gaplab_measure_create(dup_sites, dup_masses, 2, &bad) ==
          GAPLAB_ERR_INVALID);
    CHECK(std::string(gaplab_last_error()).find("duplicate") !=
          std::string::npos);

    gaplab_measure_free(pos);
    gaplab_measure_free(neg);
    gaplab_measure_free(m);
}

TEST_CASE("error codes: domain, singular, bracket") {
    gaplab_measure* empty = nullptr;
    REQUIRE(gaplab_measure_create(nullptr, nullptr, 0, &empty) == GAPLAB_OK);
    double v = 0.0;
    CHECK(gaplab_gap_residual(empty, 1.0, 0, &v) == GAPLAB_ERR_DOMAIN);
    gaplab_measure_free(empty);

    gaplab_measure* hp = nullptr;
    CHECK(gaplab_make_highpass_lattice(1.0, 4.0, 41, &hp) ==
          GAPLAB_ERR_DOMAIN);  // gap radius beyond pi/spacing

    // Singular Gram without a ridge: 1 atom, 3 frequencies.
    const double site = 0.0, mass = 1.0;
    gaplab_measure* atom = nullptr;
    REQUIRE(gaplab_measure_create(&site, &mass, 1, &atom) == GAPLAB_OK);
    const double freqs[] = {-0.5, 0.0, 0.5};
    double out = 0.0;
    CHECK(gaplab_majorant(atom, freqs, 3, 0.0, 0.3, &out) ==
          GAPLAB_ERR_SINGULAR);
    CHECK(gaplab_majorant(atom, freqs, 3, 1e-10, 0.0, &out) == GAPLAB_OK);
    CHECK(out == doctest::Approx(1.0).epsilon(1e-6));
    gaplab_measure_free(atom);

    const double a_sites[] = {0.0};
    double lo = 0.0, hi = 0.0;
    CHECK(gaplab_estimate_gap(a_sites, 1, a_sites, 0, 0.5, 2.0, 1e-3, nullptr,
                              3, &lo, &hi) == GAPLAB_ERR_BRACKET);
}

TEST_CASE("transform, gap residual and sign changes through the C surface") {
    gaplab_measure* hp = nullptr;
    REQUIRE(gaplab_make_highpass_lattice(1.0, 1.5707963267948966, 201, &hp) ==
            GAPLAB_OK);
    double value = 1.0;
    CHECK(gaplab_gap_residual(hp, 0.95 * 1.5707963267948966, 0, &value) ==
          GAPLAB_OK);
    CHECK(value < 1e-8);

    const double xs[] = {0.0, 0.5};
    double re[2], im[2];
    CHECK(gaplab_ft_eval(hp, xs, 2, re, im) == GAPLAB_OK);
    // Inside the gap the transform sits at the coefficient-tail level.
    CHECK(std::abs(re[0]) < 1e-6);

    size_t changes = 0;
    CHECK(gaplab_sign_changes(hp, 50.0, &changes) == GAPLAB_OK);
    CHECK(changes >= 20);

    int pass = 0;
    double rate = 0.0;
    const double schedule[] = {40.0, 60.0, 80.0, 100.0};
    CHECK(gaplab_oscillation_rate_check(hp, 1.5707963267948966, schedule, 4,
                                        0.05, 1e-6, &pass, &rate) ==
          GAPLAB_OK);
    CHECK(pass == 1);
    gaplab_measure_free(hp);

    gaplab_measure* clark = nullptr;
    REQUIRE(gaplab_clark_lattice(3.14159265358979323846, 0.0, 10.0, &clark) ==
            GAPLAB_OK);
    CHECK(gaplab_measure_size(clark) > 0);
    gaplab_measure_free(clark);

    long n = 0;
    const double pts[] = {-1.0, 0.5, 2.0};
    CHECK(gaplab_counting_function(pts, 3, 1.0, &n) == GAPLAB_OK);
    CHECK(n == 1);
}

TEST_CASE("solver and interlacing through the C surface") {
    std::vector<double> evens, odds;
    for (double s = -20.0; s <= 20.0; s += 2.0) evens.push_back(s);
    for (double s = -19.0; s <= 19.0; s += 2.0) odds.push_back(s);

    gaplab_solver_opts opts{};
    opts.restarts = 4;
    opts.max_iterations = 6000;
    opts.seed = 42;
    opts.threads = 2;

    gaplab_measure* sol = nullptr;
    double residual = 1.0;
    int converged = -1;
    REQUIRE(gaplab_min_gap_residual(evens.data(), evens.size(), odds.data(),
                                    odds.size(), 1.5, &opts, &sol, &residual,
                                    &converged) == GAPLAB_OK);
    CHECK(residual < 1e-4);

    int interlaced = 0;
    double vlo = 0.0, vhi = 0.0;
    CHECK(gaplab_interlacing_check(sol, 1e-9, &interlaced, &vlo, &vhi) ==
          GAPLAB_OK);
    CHECK(interlaced == 1);
    gaplab_measure_free(sol);
}

TEST_CASE("file IO and the experiment runner through the C surface") {
    const fs::path dir =
        fs::temp_directory_path() / "gaplab_capi_test";
    fs::create_directories(dir);
    const fs::path mp = dir / "m.txt";

    const double sites[] = {0.25, 1.5};
    const double masses[] = {1.0, -0.125};
    gaplab_measure* m = nullptr;
    REQUIRE(gaplab_measure_create(sites, masses, 2, &m) == GAPLAB_OK);
    REQUIRE(gaplab_measure_write(m, mp.string().c_str()) == GAPLAB_OK);
    gaplab_measure* back = nullptr;
    REQUIRE(gaplab_measure_read(mp.string().c_str(), &back) == GAPLAB_OK);
    CHECK(gaplab_measure_size(back) == 2);
    gaplab_measure_free(m);
    gaplab_measure_free(back);

    const std::string cfg = std::string(R"({"experiment":"uniformity",)") +
                            R"("sequence":"integers","density":1.0,)" +
                            R"("window":128.0,"out":")" +
                            (dir / "exp").string() + R"("})";
    CHECK(gaplab_run_experiment(cfg.c_str()) == GAPLAB_OK);
    CHECK(fs::exists(dir / "exp" / "uniformity_report.json"));

    CHECK(gaplab_run_experiment(R"({"experiment":"bogus"})") ==
          GAPLAB_ERR_INVALID);
    CHECK(gaplab_run_experiment("{bad json") == GAPLAB_ERR_INVALID);
    fs::remove_all(dir);
}
