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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "measure.hpp"

namespace gaplab::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits: shortest representation that round-trips a double.
std::string format_double(double v);

// Plain-text measure format: one "site mass" pair per line, '#' comments.
void write_measure(const DiscreteMeasure& m, const std::filesystem::path& path,
                   const std::string& header_comment = {});
DiscreteMeasure read_measure(const std::filesystem::path& path);

// Plain-text sequence format: one point per line, '#' comments.
void write_sequence(const RealSequence& s, const std::filesystem::path& path,
                    const std::string& header_comment = {});
RealSequence read_sequence(const std::filesystem::path& path);

// Line-oriented CSV writer with deterministic numeric formatting.  Leading
// '#' comment lines carry provenance.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);

    void comment(const std::string& text);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

    void save(const std::filesystem::path& path) const;
    std::string str() const;

  private:
    std::string body_;
    std::string comments_;
    std::size_t n_columns_;
};

// FNV-1a 64-bit, used to stamp outputs with the config that produced them.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace gaplab::io
