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

#include "gaplab/gaplab.h"

#include <cstring>
#include <string>

#include "../core/determinacy.hpp"
#include "../core/experiments.hpp"
#include "../core/fourier.hpp"
#include "../core/gapsolver.hpp"
#include "../core/io.hpp"
#include "../core/krein.hpp"
#include "../core/measure.hpp"

// Opaque handle: a plain wrapper so the C side never sees C++ types.
struct gaplab_measure {
    gaplab::DiscreteMeasure m;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& what) { g_last_error = what; }

// Translates the core exception hierarchy to status codes.
template <typename Fn>
gaplab_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return GAPLAB_OK;
    } catch (const gaplab::ZeroMeasureError& e) {
        set_error(e.what());
        return GAPLAB_ERR_DOMAIN;
    } catch (const gaplab::WeightDomainError& e) {
        set_error(e.what());
        return GAPLAB_ERR_DOMAIN;
    } catch (const gaplab::InfeasibleGapError& e) {
        set_error(e.what());
        return GAPLAB_ERR_DOMAIN;
    } catch (const gaplab::NotApplicableError& e) {
        set_error(e.what());
        return GAPLAB_ERR_DOMAIN;
    } catch (const gaplab::SingularityError& e) {
        set_error(e.what());
        return GAPLAB_ERR_SINGULAR;
    } catch (const gaplab::BracketError& e) {
        set_error(e.what());
        return GAPLAB_ERR_BRACKET;
    } catch (const gaplab::io::IoError& e) {
        set_error(e.what());
        return GAPLAB_ERR_IO;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return GAPLAB_ERR_INVALID;
    } catch (const std::exception& e) {
        set_error(e.what());
        return GAPLAB_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return GAPLAB_ERR_INTERNAL;
    }
}

gaplab_status require(bool ok, const char* what) {
    if (ok) return GAPLAB_OK;
    set_error(what);
    return GAPLAB_ERR_INVALID;
}

gaplab::SolverSettings to_settings(const gaplab_solver_opts* opts) {
    gaplab::SolverSettings s;
    if (opts) {
        if (opts->restarts > 0) s.restarts = opts->restarts;
        if (opts->max_iterations > 0) s.max_iterations = opts->max_iterations;
        s.seed = opts->seed;
        if (opts->threads > 0) s.threads = opts->threads;
    }
    return s;
}

}  // namespace

extern "C" {

const char* gaplab_version(void) { return gaplab::kVersion; }

const char* gaplab_last_error(void) { return g_last_error.c_str(); }

gaplab_status gaplab_measure_create(const double* sites, const double* masses,
                                    size_t n, gaplab_measure** out) {
    if (auto st = require(out && (n == 0 || (sites && masses)),
                          "measure_create: null argument"))
        return st;
    return guarded([&] {
        *out = new gaplab_measure{gaplab::DiscreteMeasure(
            std::vector<double>(sites, sites + n),
            std::vector<double>(masses, masses + n))};
    });
}

void gaplab_measure_free(gaplab_measure* m) { delete m; }

size_t gaplab_measure_size(const gaplab_measure* m) {
    return m ? m->m.size() : 0;
}

gaplab_status gaplab_measure_copy_data(const gaplab_measure* m, double* sites,
                                       double* masses) {
    if (auto st = require(m && sites && masses, "copy_data: null argument"))
        return st;
    return guarded([&] {
        std::memcpy(sites, m->m.sites().data(), m->m.size() * sizeof(double));
        std::memcpy(masses, m->m.masses().data(), m->m.size() * sizeof(double));
    });
}

gaplab_status gaplab_measure_total_variation(const gaplab_measure* m,
                                             double* out) {
    if (auto st = require(m && out, "total_variation: null argument"))
        return st;
    return guarded([&] { *out = m->m.total_variation(); });
}

gaplab_status gaplab_measure_read(const char* path, gaplab_measure** out) {
    if (auto st = require(path && out, "measure_read: null argument"))
        return st;
    return guarded(
        [&] { *out = new gaplab_measure{gaplab::io::read_measure(path)}; });
}

gaplab_status gaplab_measure_write(const gaplab_measure* m, const char* path) {
    if (auto st = require(m && path, "measure_write: null argument")) return st;
    return guarded([&] { gaplab::io::write_measure(m->m, path); });
}

gaplab_status gaplab_jordan_decompose(const gaplab_measure* m,
                                      gaplab_measure** positive_part,
                                      gaplab_measure** negative_part) {
    if (auto st = require(m && positive_part && negative_part,
                          "jordan_decompose: null argument"))
        return st;
    return guarded([&] {
        auto [pos, neg] = gaplab::jordan_decompose(m->m);
        *positive_part = new gaplab_measure{std::move(pos)};
        *negative_part = new gaplab_measure{std::move(neg)};
    });
}

gaplab_status gaplab_sign_changes(const gaplab_measure* m, double r,
                                  size_t* out) {
    if (auto st = require(m && out, "sign_changes: null argument")) return st;
    return guarded([&] { *out = gaplab::sign_changes(m->m, r); });
}

gaplab_status gaplab_counting_function(const double* points, size_t n,
                                       double x, long* out) {
    if (auto st = require((points || n == 0) && out,
                          "counting_function: null argument"))
        return st;
    return guarded([&] {
        gaplab::RealSequence seq{std::vector<double>(points, points + n)};
        *out = gaplab::counting_function(seq, x);
    });
}

gaplab_status gaplab_ft_eval(const gaplab_measure* m, const double* xs,
                             size_t n, double* out_re, double* out_im) {
    if (auto st = require(m && xs && out_re && out_im,
                          "ft_eval: null argument"))
        return st;
    return guarded([&] {
        const auto vals = gaplab::ft_eval(m->m, std::span(xs, n));
        for (size_t i = 0; i < n; ++i) {
            out_re[i] = vals[i].real();
            out_im[i] = vals[i].imag();
        }
    });
}

gaplab_status gaplab_gap_residual(const gaplab_measure* m, double a, int nodes,
                                  double* value) {
    if (auto st = require(m && value, "gap_residual: null argument")) return st;
    return guarded([&] { *value = gaplab::gap_residual(m->m, a, nodes).value; });
}

gaplab_status gaplab_make_highpass_lattice(double spacing, double gap_radius,
                                           int n_atoms, gaplab_measure** out) {
    if (auto st = require(out != nullptr, "make_highpass_lattice: null out"))
        return st;
    return guarded([&] {
        *out = new gaplab_measure{
            gaplab::make_highpass_lattice(spacing, gap_radius, n_atoms)};
    });
}

gaplab_status gaplab_clark_lattice(double a, double phase, double window,
                                   gaplab_measure** out) {
    if (auto st = require(out != nullptr, "clark_lattice: null out")) return st;
    return guarded([&] {
        *out = new gaplab_measure{
            gaplab::clark_lattice(a, phase, window).to_measure()};
    });
}

gaplab_status gaplab_majorant(const gaplab_measure* mu, const double* freqs,
                              size_t n_freqs, double ridge, double w,
                              double* out) {
    if (auto st = require(mu && freqs && n_freqs > 0 && out,
                          "majorant: null argument"))
        return st;
    return guarded([&] {
        const auto gram = gaplab::gram_matrix(
            mu->m, std::vector<double>(freqs, freqs + n_freqs), ridge);
        *out = gaplab::majorant(gram, w);
    });
}

gaplab_status gaplab_min_gap_residual(const double* sitesA, size_t nA,
                                      const double* sitesB, size_t nB,
                                      double a, const gaplab_solver_opts* opts,
                                      gaplab_measure** solution,
                                      double* residual, int* converged) {
    if (auto st = require((sitesA || nA == 0) && (sitesB || nB == 0),
                          "min_gap_residual: null sites"))
        return st;
    return guarded([&] {
        gaplab::GapProblem p;
        p.sitesA.assign(sitesA, sitesA + nA);
        p.sitesB.assign(sitesB, sitesB + nB);
        p.gap_radius = a;
        p.settings = to_settings(opts);
        const gaplab::GapSolution sol = gaplab::min_gap_residual(p);
        if (solution) *solution = new gaplab_measure{sol.measure};
        if (residual) *residual = sol.residual.value;
        if (converged) *converged = sol.converged ? 1 : 0;
    });
}

gaplab_status gaplab_estimate_gap(const double* sitesA, size_t nA,
                                  const double* sitesB, size_t nB, double a_lo,
                                  double a_hi, double threshold,
                                  const gaplab_solver_opts* opts,
                                  int bisection_steps, double* bracket_lo,
                                  double* bracket_hi) {
    if (auto st = require(sitesA && sitesB && bracket_lo && bracket_hi,
                          "estimate_gap: null argument"))
        return st;
    return guarded([&] {
        const auto br = gaplab::estimate_gap_characteristic(
            std::vector<double>(sitesA, sitesA + nA),
            std::vector<double>(sitesB, sitesB + nB), a_lo, a_hi, threshold,
            to_settings(opts), bisection_steps > 0 ? bisection_steps : 5);
        *bracket_lo = br.lo;
        *bracket_hi = br.hi;
    });
}

gaplab_status gaplab_interlacing_check(const gaplab_measure* m, double prune,
                                       int* interlaced, double* violation_lo,
                                       double* violation_hi) {
    if (auto st = require(m && interlaced, "interlacing_check: null argument"))
        return st;
    return guarded([&] {
        const auto res = gaplab::interlacing_check(m->m, prune);
        *interlaced = res.interlaced ? 1 : 0;
        if (violation_lo) *violation_lo = res.violation_site_lo;
        if (violation_hi) *violation_hi = res.violation_site_hi;
    });
}

gaplab_status gaplab_oscillation_rate_check(const gaplab_measure* m,
                                            double gap_radius,
                                            const double* r_schedule,
                                            size_t n_r, double slack,
                                            double residual_tol, int* pass,
                                            double* min_rate) {
    if (auto st = require(m && r_schedule && n_r > 0 && pass,
                          "oscillation_rate_check: null argument"))
        return st;
    return guarded([&] {
        const auto rep = gaplab::oscillation_rate_check(
            m->m, gap_radius,
            std::vector<double>(r_schedule, r_schedule + n_r), slack,
            residual_tol);
        *pass = rep.pass ? 1 : 0;
        if (min_rate) *min_rate = rep.min_rate_top_half;
    });
}

gaplab_status gaplab_run_experiment(const char* config_json) {
    if (auto st = require(config_json != nullptr, "run_experiment: null config"))
        return st;
    gaplab::ExperimentResult res;
    const gaplab_status st =
        guarded([&] { res = gaplab::run_experiment(config_json); });
    if (st != GAPLAB_OK) return st;
    if (res.exit_code == 0) {
        g_last_error.clear();
        return GAPLAB_OK;
    }
    set_error(res.message);
    return res.exit_code == 2 ? GAPLAB_ERR_INVALID : GAPLAB_ERR_NUMERIC;
}

}  // extern "C"
