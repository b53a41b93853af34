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

#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gaplab::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> data_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

void write_measure(const DiscreteMeasure& m, const std::filesystem::path& path,
                   const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << "# site mass\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        out << format_double(m.sites()[i]) << ' '
            << format_double(m.masses()[i]) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

DiscreteMeasure read_measure(const std::filesystem::path& path) {
    std::vector<double> sites, masses;
    for (const std::string& line : data_lines(path)) {
        std::istringstream ss(line);
        double s = 0.0, m = 0.0;
        if (!(ss >> s >> m))
            throw IoError("malformed measure line in " + path.string() + ": " +
                          line);
        sites.push_back(s);
        masses.push_back(m);
    }
    return DiscreteMeasure(std::move(sites), std::move(masses),
                           path.filename().string());
}

void write_sequence(const RealSequence& s, const std::filesystem::path& path,
                    const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << "# point\n";
    for (double p : s.points()) out << format_double(p) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

RealSequence read_sequence(const std::filesystem::path& path) {
    std::vector<double> pts;
    for (const std::string& line : data_lines(path)) {
        std::istringstream ss(line);
        double p = 0.0;
        if (!(ss >> p))
            throw IoError("malformed sequence line in " + path.string() +
                          ": " + line);
        pts.push_back(p);
    }
    return RealSequence(std::move(pts));
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : n_columns_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

void CsvWriter::comment(const std::string& text) {
    comments_ += "# " + text + "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw IoError("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(values[i]);
    }
    body_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != n_columns_)
        throw IoError("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += values[i];
    }
    body_ += '\n';
}

std::string CsvWriter::str() const { return comments_ + body_; }

void CsvWriter::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << str();
    if (!out) throw IoError("write failed: " + path.string());
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace gaplab::io
