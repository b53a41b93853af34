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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gaplab {

inline constexpr const char* kVersion = "0.1.0";

// Config / input problems: exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentResult {
    int exit_code = 0;  // 0 ok, 2 validation, 3 numerical failure
    std::string message;
    std::vector<std::string> files_written;
};

// Dispatches a JSON experiment config to one of: highpass, gap-sweep,
// determinacy, uniformity, krein-check.  All artifacts land in config["out"];
// every file carries the config hash, and a manifest.json records inputs,
// parameters, seed, version and wall time.  Identical config + seed give
// byte-identical numeric outputs (manifest wall time/timestamp excluded).
ExperimentResult run_experiment(const std::string& config_json);

// Site-set shorthand parser: "integers", "evens", "odds", "3k", "3k+1",
// "3k+2", or "file:<path>", restricted to [-window, window].
std::vector<double> parse_site_spec(const std::string& spec, double window);

}  // namespace gaplab
