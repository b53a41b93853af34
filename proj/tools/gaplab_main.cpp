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

// gaplab command-line front end.  All functionality lives behind the shared
// library's C API (gaplab/gaplab.h); this program only parses flags, merges
// the optional key=value config file, and dispatches one experiment run.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaplab/gaplab.h"

namespace {

using nlohmann::json;

enum class Kind { number, integer, text, number_list };

struct OptSpec {
    std::string key;   // JSON key consumed by the experiment driver
    Kind kind;
    std::string flag;  // CLI flag
    std::string help;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string k = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (!k.empty()) kv[k] = v;
    }
    return kv;
}

json parse_value(const OptSpec& spec, const std::string& raw) {
    try {
        switch (spec.kind) {
            case Kind::number: return std::stod(raw);
            case Kind::integer: return std::stol(raw);
            case Kind::text: return raw;
            case Kind::number_list: {
                json arr = json::array();
                std::stringstream ss(raw);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) arr.push_back(std::stod(tok));
                return arr;
            }
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError(spec.flag, "cannot parse '" + raw + "'");
    }
    return {};
}

struct Subcommand {
    CLI::App* app = nullptr;
    std::string name;
    std::vector<OptSpec> specs;
    std::map<std::string, std::string> values;  // flag values as strings

    void add(CLI::App* parent, const std::string& n, const std::string& desc) {
        name = n;
        app = parent->add_subcommand(n, desc);
    }
    void option(const std::string& flag, const std::string& key, Kind kind,
                const std::string& help) {
        specs.push_back({key, kind, flag, help});
        app->add_option(flag, values[key], help);
    }
};

int map_status(gaplab_status st) {
    switch (st) {
        case GAPLAB_OK: return 0;
        case GAPLAB_ERR_INVALID:
        case GAPLAB_ERR_IO: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{std::string("gaplab ") + gaplab_version() +
                 " - spectral gaps, determinacy diagnostics and gap "
                 "characteristics of discrete measures"};
    cli.require_subcommand(1);
    cli.fallthrough();  // global flags may follow the subcommand

    std::string out_dir = "gaplab_out";
    long seed = 42;
    long threads = 1;
    std::string config_path;
    bool seed_set = false, threads_set = false;
    cli.add_option("--out", out_dir, "output directory")->capture_default_str();
    cli.add_option("--seed", seed, "RNG seed")
        ->capture_default_str()
        ->each([&](const std::string&) { seed_set = true; });
    cli.add_option("--threads", threads, "worker threads for restarts")
        ->capture_default_str()
        ->each([&](const std::string&) { threads_set = true; });
    cli.add_option("--config", config_path,
                   "key=value config file; command-line flags override it");

    Subcommand highpass, sweep, det, unif, krein;

    highpass.add(&cli, "highpass",
                 "synthesize a lattice measure with a spectral gap");
    highpass.option("--spacing", "spacing", Kind::number, "lattice spacing");
    highpass.option("--gap", "gap", Kind::number, "gap radius a (required)");
    highpass.option("--atoms", "atoms", Kind::integer, "odd atom count");
    highpass.option("--profile-width", "profile_width", Kind::number,
                    "bump half-width as a fraction of the allowed window");
    highpass.option("--profile-sharpness", "profile_sharpness", Kind::number,
                    "bump exponent q in exp(-q/(1-u^2))");
    highpass.option("--margin", "margin", Kind::number,
                    "guarantee margin (residual reported at (1-margin)a)");

    sweep.add(&cli, "gap-sweep",
              "residual sweep + transition bracket for a site pair");
    sweep.option("--A", "A", Kind::text, "positive-part sites (shorthand or file:)");
    sweep.option("--B", "B", Kind::text, "negative-part sites");
    sweep.option("--window", "window", Kind::number, "site window half-width");
    sweep.option("--a-min", "a_min", Kind::number, "sweep start radius");
    sweep.option("--a-max", "a_max", Kind::number, "sweep end radius");
    sweep.option("--a-count", "a_count", Kind::integer, "sweep points");
    sweep.option("--threshold", "threshold", Kind::number,
                 "feasibility threshold on the residual");
    sweep.option("--restarts", "restarts", Kind::integer, "solver restarts");
    sweep.option("--iterations", "iterations", Kind::integer,
                 "max solver iterations");
    sweep.option("--bisection-steps", "bisection_steps", Kind::integer,
                 "bisection refinement steps");

    det.add(&cli, "determinacy", "majorant log-integral growth diagnostic");
    det.option("--measure", "measure", Kind::text,
               "highpass-pos, gaussian-grid, or file:<path>");
    det.option("--radius", "radius", Kind::number,
               "determinacy radius a (required)");
    det.option("--ridge", "ridge", Kind::number, "Gram ridge epsilon");
    det.option("--windows", "windows", Kind::number_list,
               "comma-separated window schedule");
    det.option("--grids", "grids", Kind::number_list,
               "comma-separated frequency-grid sizes");
    det.option("--spacing", "spacing", Kind::number,
               "highpass-pos lattice spacing");
    det.option("--gap", "gap", Kind::number, "highpass-pos gap radius");
    det.option("--atoms", "atoms", Kind::integer, "highpass-pos atom count");
    det.option("--plateau-ratio", "plateau_ratio", Kind::number,
               "plateau threshold (fraction of accumulated integral)");

    unif.add(&cli, "uniformity", "d-uniformity report for a sequence");
    unif.option("--sequence", "sequence", Kind::text,
                "shorthand (integers/evens/...) or file:<path>");
    unif.option("--density", "density", Kind::number, "density d (required)");
    unif.option("--window", "window", Kind::number, "window half-width");
    unif.option("--gamma", "gamma", Kind::number,
                "partition length exponent");

    krein.add(&cli, "krein-check",
              "partial-fraction identity sweep and double-zero study");
    krein.option("--poly-count", "poly_count", Kind::integer,
                 "random real-rooted polynomials");
    krein.option("--degree", "degree", Kind::integer, "max degree");
    krein.option("--separation", "separation", Kind::number,
                 "min root separation");
    krein.option("--samples", "samples", Kind::integer, "samples per polynomial");
    krein.option("--sinc-n", "sinc_n", Kind::integer,
                 "truncation N for the sinc double-zero study (0 = skip)");
    krein.option("--scan-halfwidth", "scan_halfwidth", Kind::number,
                 "double-zero scan half-width");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return 2;  // usage / validation
    }

    std::map<std::string, std::string> file_kv;
    try {
        if (!config_path.empty()) file_kv = read_config_file(config_path);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "gaplab: %s\n", e.what());
        return 2;
    }

    for (Subcommand* sc : {&highpass, &sweep, &det, &unif, &krein}) {
        if (!sc->app->parsed()) continue;
        json cfg;
        cfg["experiment"] = sc->name;
        // Config file first, command line second: the command line wins.
        try {
            for (const OptSpec& spec : sc->specs) {
                const auto it = file_kv.find(spec.key);
                if (it != file_kv.end())
                    cfg[spec.key] = parse_value(spec, it->second);
                if (sc->app->count(spec.flag) > 0)
                    cfg[spec.key] = parse_value(spec, sc->values[spec.key]);
            }
            if (auto it = file_kv.find("out"); it != file_kv.end())
                cfg["out"] = it->second;
            if (auto it = file_kv.find("seed"); it != file_kv.end())
                cfg["seed"] = std::stol(it->second);
            if (auto it = file_kv.find("threads"); it != file_kv.end())
                cfg["threads"] = std::stol(it->second);
        } catch (const CLI::Error& e) {
            std::fprintf(stderr, "gaplab: %s\n", e.what());
            return 2;
        }
        if (cli.count("--out") > 0 || !cfg.contains("out")) cfg["out"] = out_dir;
        if (seed_set || !cfg.contains("seed")) cfg["seed"] = seed;
        if (threads_set || !cfg.contains("threads")) cfg["threads"] = threads;

        const std::string payload = cfg.dump();
        const gaplab_status st = gaplab_run_experiment(payload.c_str());
        if (st != GAPLAB_OK) {
            std::fprintf(stderr, "gaplab %s: %s\n", sc->name.c_str(),
                         gaplab_last_error());
            return map_status(st);
        }
        std::printf("gaplab %s: artifacts written to %s\n", sc->name.c_str(),
                    cfg["out"].get<std::string>().c_str());
        return 0;
    }
    return 2;
}
