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

#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "determinacy.hpp"
#include "fourier.hpp"
#include "gapsolver.hpp"
#include "io.hpp"
#include "krein.hpp"
#include "measure.hpp"
#include "sequences.hpp"

namespace gaplab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

double require_number(const json& cfg, const std::string& key) {
    if (!cfg.contains(key) || !cfg[key].is_number())
        throw ValidationError("missing or non-numeric parameter: " + key);
    return cfg[key].get<double>();
}

double number_or(const json& cfg, const std::string& key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number())
        throw ValidationError("non-numeric parameter: " + key);
    return cfg[key].get<double>();
}

long integer_or(const json& cfg, const std::string& key, long fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number_integer())
        throw ValidationError("non-integer parameter: " + key);
    return cfg[key].get<long>();
}

std::string string_or(const json& cfg, const std::string& key,
                      const std::string& fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_string())
        throw ValidationError("non-string parameter: " + key);
    return cfg[key].get<std::string>();
}

// An artifact staged in memory; nothing touches the filesystem until the
// whole experiment has succeeded, so failed runs leave no partial outputs.
struct Artifacts {
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> files;

    void add_csv(const std::string& name, const io::CsvWriter& csv) {
        files.emplace_back(name, "# config " + config_hash + "\n" + csv.str());
    }
    void add_json(const std::string& name, json j) {
        j["config_hash"] = config_hash;
        files.emplace_back(name, j.dump(2) + "\n");
    }
};

SolverSettings solver_settings(const json& cfg) {
    SolverSettings s;
    s.restarts = static_cast<int>(integer_or(cfg, "restarts", 20));
    s.max_iterations = static_cast<int>(integer_or(cfg, "iterations", 20000));
    s.seed = static_cast<std::uint64_t>(integer_or(cfg, "seed", 42));
    s.threads = static_cast<int>(integer_or(cfg, "threads", 1));
    if (s.restarts < 1) throw ValidationError("restarts must be >= 1");
    if (s.max_iterations < 1) throw ValidationError("iterations must be >= 1");
    if (s.threads < 1) throw ValidationError("threads must be >= 1");
    return s;
}

std::vector<double> geometric_radii(double lo, double hi, int n) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i)
        r.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
    return r;
}

void run_highpass(const json& cfg, Artifacts& art, json& manifest) {
    const double spacing = number_or(cfg, "spacing", 1.0);
    const double gap = require_number(cfg, "gap");
    const int atoms = static_cast<int>(integer_or(cfg, "atoms", 201));
    const double width = number_or(cfg, "profile_width", 0.95);
    const double sharp = number_or(cfg, "profile_sharpness", 1.0);
    const double margin = number_or(cfg, "margin", 0.05);

    const auto profile =
        PeriodicProfile::bump(2.0 * kPi / spacing, gap, width, sharp);
    const DiscreteMeasure sigma =
        make_highpass_lattice(spacing, gap, atoms, profile);

    {
        std::string s = "# config " + art.config_hash + "\n# site mass\n";
        for (std::size_t i = 0; i < sigma.size(); ++i)
            s += io::format_double(sigma.sites()[i]) + " " +
                 io::format_double(sigma.masses()[i]) + "\n";
        art.files.emplace_back("highpass_measure.txt", s);
    }

    const GapResidual res_full = gap_residual(sigma, gap);
    const GapResidual res_margin = gap_residual(sigma, (1.0 - margin) * gap);
    json residual;
    residual["spacing"] = spacing;
    residual["gap_radius"] = gap;
    residual["atoms_requested"] = atoms;
    residual["atoms_kept"] = sigma.size();
    residual["total_variation"] = sigma.total_variation();
    residual["residual_at_gap"] = res_full.value;
    residual["margin"] = margin;
    residual["residual_at_margin_radius"] = res_margin.value;
    residual["quad_nodes"] = res_full.quad_nodes;
    art.add_json("highpass_residual.json", residual);

    const double span = sigma.sites().back();
    std::vector<double> radii;
    for (double r = 8.0 * spacing; r <= span; r *= std::sqrt(2.0))
        radii.push_back(r);
    if (radii.empty()) radii.push_back(span);
    const SignChangeReport rep = sign_change_report(sigma, radii);
    io::CsvWriter signs({"r", "count", "rate"});
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        signs.row({rep.radii[i], static_cast<double>(rep.counts[i]),
                   rep.rates[i]});
    art.add_csv("highpass_signs.csv", signs);

    manifest["atoms_kept"] = sigma.size();
    manifest["residual_at_margin_radius"] = res_margin.value;
}

void run_gap_sweep(const json& cfg, Artifacts& art, json& manifest) {
    const double window = number_or(cfg, "window", 64.0);
    const std::string spec_a = string_or(cfg, "A", "evens");
    const std::string spec_b = string_or(cfg, "B", "odds");
    const double a_min = number_or(cfg, "a_min", 0.5 * kPi);
    const double a_max = number_or(cfg, "a_max", 1.5 * kPi);
    const int count = static_cast<int>(integer_or(cfg, "a_count", 9));
    const double threshold = number_or(cfg, "threshold", 1e-3);
    const int bisect = static_cast<int>(integer_or(cfg, "bisection_steps", 5));
    if (!(a_min > 0.0 && a_min < a_max))
        throw ValidationError("need 0 < a_min < a_max");
    if (count < 2) throw ValidationError("a_count must be >= 2");
    const SolverSettings settings = solver_settings(cfg);
    const auto sites_a = parse_site_spec(spec_a, window);
    const auto sites_b = parse_site_spec(spec_b, window);

    io::CsvWriter sweep({"a", "residual", "converged", "best_restart"});
    for (double a : geometric_radii(a_min, a_max, count)) {
        GapProblem p{sites_a, sites_b, a, settings};
        const GapSolution sol = min_gap_residual(p);
        sweep.row({a, sol.residual.value, sol.converged ? 1.0 : 0.0,
                   static_cast<double>(sol.best_restart)});
    }
    art.add_csv("gap_sweep.csv", sweep);

    const GapBracket br = estimate_gap_characteristic(
        sites_a, sites_b, a_min, a_max, threshold, settings, bisect);
    json bj;
    bj["A"] = spec_a;
    bj["B"] = spec_b;
    bj["window"] = window;
    bj["threshold"] = threshold;
    bj["bracket_lo"] = br.lo;
    bj["bracket_hi"] = br.hi;
    bj["residual_lo"] = br.residual_lo;
    bj["residual_hi"] = br.residual_hi;
    bj["probes"] = br.probes;
    bj["probe_radii"] = br.probe_radii;
    bj["probe_residuals"] = br.probe_residuals;
    art.add_json("gap_bracket.json", bj);

    manifest["bracket_lo"] = br.lo;
    manifest["bracket_hi"] = br.hi;
}

DiscreteMeasure determinacy_measure(const json& cfg) {
    const std::string spec = string_or(cfg, "measure", "highpass-pos");
    if (spec.rfind("file:", 0) == 0) return io::read_measure(spec.substr(5));
    if (spec == "highpass-pos") {
        const double spacing = number_or(cfg, "spacing", 1.0);
        const double gap = number_or(cfg, "gap", 0.5 * kPi);
        const int atoms = static_cast<int>(integer_or(cfg, "atoms", 201));
        const DiscreteMeasure sigma = make_highpass_lattice(spacing, gap, atoms);
        return jordan_decompose(sigma).first;
    }
    if (spec == "gaussian-grid") {
        const double spacing = number_or(cfg, "grid_spacing", 0.01);
        const double half = number_or(cfg, "grid_halfwidth", 20.0);
        std::vector<double> sites, masses;
        for (double t = -half; t <= half + spacing / 2; t += spacing) {
            sites.push_back(t);
            masses.push_back(std::exp(-t * t));
        }
        DiscreteMeasure mu(std::move(sites), std::move(masses), "gaussian-grid");
        return scale(mu, 1.0 / mu.total_mass());
    }
    throw ValidationError("unknown measure spec: " + spec);
}

void run_determinacy(const json& cfg, Artifacts& art, json& manifest) {
    const DiscreteMeasure mu = determinacy_measure(cfg);
    const double radius = require_number(cfg, "radius");
    const double ridge = number_or(cfg, "ridge", 1e-8);
    std::vector<double> windows;
    if (cfg.contains("windows")) {
        if (!cfg["windows"].is_array())
            throw ValidationError("windows must be an array");
        for (const auto& w : cfg["windows"]) windows.push_back(w.get<double>());
    } else {
        windows = {128.0, 256.0, 512.0, 1024.0};
    }
    std::vector<int> grids;
    if (cfg.contains("grids")) {
        if (!cfg["grids"].is_array())
            throw ValidationError("grids must be an array");
        for (const auto& g : cfg["grids"]) grids.push_back(g.get<int>());
    } else {
        grids = {17, 33, 65};
    }
    VerdictThresholds th;
    th.plateau_ratio = number_or(cfg, "plateau_ratio", th.plateau_ratio);
    th.octaves = static_cast<int>(integer_or(cfg, "octaves", th.octaves));

    const GrowthTable table =
        riesz_log_integral(mu, radius, windows, grids, ridge);
    const DeterminacyVerdict verdict = determinacy_verdict(table, th);

    std::vector<std::string> cols{"window"};
    for (int g : grids) cols.push_back("grid_" + std::to_string(g));
    io::CsvWriter growth(cols);
    for (Eigen::Index w = 0; w < table.logplus.rows(); ++w) {
        std::vector<double> row{windows[static_cast<std::size_t>(w)]};
        for (Eigen::Index g = 0; g < table.logplus.cols(); ++g)
            row.push_back(table.logplus(w, g));
        growth.row(row);
    }
    art.add_csv("determinacy_growth.csv", growth);

    json vj;
    vj["measure"] = string_or(cfg, "measure", "highpass-pos");
    vj["radius"] = radius;
    vj["ridge"] = ridge;
    vj["windows"] = windows;
    vj["grids"] = grids;
    vj["plateau_ratio"] = th.plateau_ratio;
    vj["octaves"] = th.octaves;
    vj["verdict"] = to_string(verdict.verdict);
    vj["note"] = verdict.note;
    vj["degenerate"] = table.degenerate;
    std::vector<std::vector<double>> ratios;
    for (Eigen::Index w = 0; w < verdict.increment_ratios.rows(); ++w) {
        std::vector<double> row;
        for (Eigen::Index g = 0; g < verdict.increment_ratios.cols(); ++g)
            row.push_back(verdict.increment_ratios(w, g));
        ratios.push_back(row);
    }
    vj["increment_ratios"] = ratios;
    art.add_json("determinacy_verdict.json", vj);

    manifest["verdict"] = to_string(verdict.verdict);
}

RealSequence uniformity_sequence(const json& cfg, double window) {
    const std::string spec = string_or(cfg, "sequence", "integers");
    if (spec.rfind("file:", 0) == 0) return io::read_sequence(spec.substr(5));
    return RealSequence(parse_site_spec(spec, window));
}

void run_uniformity(const json& cfg, Artifacts& art, json& manifest) {
    const double window = number_or(cfg, "window", 512.0);
    const double density = require_number(cfg, "density");
    const double gamma = number_or(cfg, "gamma", 0.4);
    const RealSequence seq = uniformity_sequence(cfg, window);
    ShortPartition part;
    if (cfg.contains("breakpoints")) {
        if (!cfg["breakpoints"].is_array())
            throw ValidationError("breakpoints must be an array");
        std::vector<double> bp;
        for (const auto& b : cfg["breakpoints"]) bp.push_back(b.get<double>());
        if (bp.size() < 2) throw ValidationError("need >= 2 breakpoints");
        std::vector<Interval> iv;
        for (std::size_t i = 0; i + 1 < bp.size(); ++i)
            iv.push_back({bp[i], bp[i + 1]});
        part.family = IntervalFamily(std::move(iv));
        part.window_lo = bp.front();
        part.window_hi = bp.back();
    } else {
        part = default_partition(window, gamma);
    }
    UniformityThresholds th;
    const UniformityReport rep = uniformity_report(seq, density, part, th);

    json rj;
    rj["sequence"] = string_or(cfg, "sequence", "integers");
    rj["density"] = density;
    rj["window"] = window;
    rj["gamma"] = gamma;
    rj["verdict"] = to_string(rep.verdict);
    rj["note"] = rep.note;
    rj["tail_defect_ratio"] = rep.tail_defect_ratio;
    rj["defects"] = rep.defects;
    rj["defect_ratios"] = rep.defect_ratios;
    rj["regularity_partials"] = rep.regularity_partials;
    rj["energy_partials"] = rep.energy_partials;
    rj["energy_octave_ratios"] = rep.energy_octave_ratios;
    rj["pair_defects"] = rep.pair_defects;
    rj["tail_pair_defect"] = rep.tail_pair_defect;
    rj["thresholds"] = {{"defect_ratio_pass", th.defect_ratio_pass},
                        {"defect_ratio_fail", th.defect_ratio_fail},
                        {"energy_pair_defect_max", th.energy_pair_defect_max},
                        {"energy_octaves", th.energy_octaves}};
    art.add_json("uniformity_report.json", rj);

    manifest["verdict"] = to_string(rep.verdict);
}

void run_krein_check(const json& cfg, Artifacts& art, json& manifest) {
    const int count = static_cast<int>(integer_or(cfg, "poly_count", 200));
    const int degree = static_cast<int>(integer_or(cfg, "degree", 12));
    const double separation = number_or(cfg, "separation", 0.5);
    const int samples = static_cast<int>(integer_or(cfg, "samples", 50));
    const std::uint64_t seed =
        static_cast<std::uint64_t>(integer_or(cfg, "seed", 42));
    if (count < 1 || degree < 1 || samples < 1)
        throw ValidationError("poly_count, degree, samples must be >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    std::uniform_int_distribution<int> degree_pick(2, degree);

    io::CsvWriter pf({"index", "degree", "max_deviation"});
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const int d = degree_pick(rng);
        std::vector<double> roots;
        double x = -0.5 * d * (separation + 1.0);
        for (int k = 0; k < d; ++k) {
            x += separation + jitter(rng);
            roots.push_back(x);
        }
        const ZeroSetFunction f = from_real_roots(std::move(roots));
        std::vector<std::complex<double>> zs;
        for (int s = 0; s < samples; ++s) {
            // Real and complex samples bounded away from the zero set.
            const double re = (jitter(rng) - 0.5) * 2.0 * d;
            const double im =
                (s % 2 == 0) ? 0.0 : (jitter(rng) - 0.5) * 2.0;
            const std::complex<double> z(re, im);
            bool ok = true;
            for (double r : f.zeros.points())
                if (std::abs(z - r) < 2e-3) ok = false;
            if (ok) zs.push_back(z);
        }
        const double dev = partial_fraction_check(f, zs, 1e-3);
        worst = std::max(worst, dev);
        pf.row({static_cast<double>(i), static_cast<double>(d), dev});
    }
    art.add_csv("krein_pf.csv", pf);

    json sj;
    sj["poly_count"] = count;
    sj["degree_max"] = degree;
    sj["separation"] = separation;
    sj["worst_deviation"] = worst;

    const long sinc_n = integer_or(cfg, "sinc_n", 0);
    if (sinc_n > 0) {
        const double scan_half = number_or(cfg, "scan_halfwidth", 50.0);
        const int scan_points = static_cast<int>(integer_or(cfg, "scan_points", 2000));
        std::vector<double> zeros;
        for (long n = -sinc_n; n <= sinc_n; ++n)
            if (n != 0) zeros.push_back(static_cast<double>(n));
        auto sinc = [](double x) {
            return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
        };
        std::vector<double> scan;
        for (int i = 0; i < scan_points; ++i) {
            const double x =
                -scan_half + 2.0 * scan_half * (i + 0.5) / scan_points;
            scan.push_back(x);
        }
        const DoubleZeroScan dz =
            double_zero_replacement(sinc, RealSequence(zeros), scan);
        io::CsvWriter dzcsv({"x", "log_abs_G", "sign"});
        for (std::size_t i = 0; i < dz.xs.size(); ++i) {
            const double v = dz.values[i];
            dzcsv.row({dz.xs[i],
                       v == 0.0 ? -744.0 : std::log(std::abs(v)),
                       v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0)});
        }
        art.add_csv("krein_doublezero.csv", dzcsv);
        sj["sinc_n"] = sinc_n;
        sj["doublezero_sup"] = dz.sup_abs;
    }
    art.add_json("krein_summary.json", sj);
    manifest["worst_deviation"] = worst;
}

}  // namespace

std::vector<double> parse_site_spec(const std::string& spec, double window) {
    if (spec.rfind("file:", 0) == 0) {
        const RealSequence s = io::read_sequence(spec.substr(5));
        return s.points();
    }
    double step = 0.0, offset = 0.0;
    if (spec == "integers") {
        step = 1.0;
    } else if (spec == "evens") {
        step = 2.0;
    } else if (spec == "odds") {
        step = 2.0;
        offset = 1.0;
    } else if (spec == "3k") {
        step = 3.0;
    } else if (spec == "3k+1") {
        step = 3.0;
        offset = 1.0;
    } else if (spec == "3k+2") {
        step = 3.0;
        offset = 2.0;
    } else {
        throw ValidationError("unknown site spec: " + spec +
                              " (use integers/evens/odds/3k/3k+1/3k+2 or "
                              "file:<path>)");
    }
    return lattice_sequence(step, offset, window).points();
}

ExperimentResult run_experiment(const std::string& config_json) {
    ExperimentResult result;
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const json::parse_error& e) {
        result.exit_code = 2;
        result.message = std::string("config parse error: ") + e.what();
        return result;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Artifacts art;
    json manifest;
    std::string out_dir;
    try {
        if (!cfg.is_object()) throw ValidationError("config must be an object");
        const std::string name = string_or(cfg, "experiment", "");
        out_dir = string_or(cfg, "out", "gaplab_out");
        art.config_hash = io::hex64(io::fnv1a64(cfg.dump()));

        manifest["experiment"] = name;
        manifest["config"] = cfg;
        manifest["config_hash"] = art.config_hash;
        manifest["seed"] = integer_or(cfg, "seed", 42);
        manifest["version"] = kVersion;

        if (name == "highpass")
            run_highpass(cfg, art, manifest);
        else if (name == "gap-sweep")
            run_gap_sweep(cfg, art, manifest);
        else if (name == "determinacy")
            run_determinacy(cfg, art, manifest);
        else if (name == "uniformity")
            run_uniformity(cfg, art, manifest);
        else if (name == "krein-check")
            run_krein_check(cfg, art, manifest);
        else
            throw ValidationError("unknown experiment: '" + name +
                                  "' (expected highpass, gap-sweep, "
                                  "determinacy, uniformity, krein-check)");
    } catch (const ValidationError& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    } catch (const std::invalid_argument& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    } catch (const io::IoError& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    } catch (const std::exception& e) {
        // Numerical failures (bracket, singularity, consistency).
        result.exit_code = 3;
        result.message = e.what();
        return result;
    }

    const auto t1 = std::chrono::steady_clock::now();
    manifest["wall_time_s"] =
        std::chrono::duration<double>(t1 - t0).count();

    try {
        fs::create_directories(out_dir);
        for (const auto& [name, content] : art.files) {
            const fs::path p = fs::path(out_dir) / name;
            std::ofstream f(p);
            if (!f) throw io::IoError("cannot write " + p.string());
            f << content;
            result.files_written.push_back(p.string());
        }
        const fs::path mp = fs::path(out_dir) / "manifest.json";
        std::ofstream mf(mp);
        mf << manifest.dump(2) << "\n";
        result.files_written.push_back(mp.string());
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    }
    result.message = "ok";
    return result;
}

}  // namespace gaplab
