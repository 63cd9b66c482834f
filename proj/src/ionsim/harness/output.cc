// Copyright 2026 The ionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsim/harness/output.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace ionsim {

namespace {

void write_atomically(const std::filesystem::path &path, const std::string &text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("Cannot open " + tmp.string() + " for writing.");
        }
        out << text;
        out.flush();
        if (!out) {
            throw std::runtime_error("Failed writing " + tmp.string() + ".");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

OutputFormat parse_output_format(const std::string &name) {
    if (name == "json") {
        return OutputFormat::Json;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "both") {
        return OutputFormat::Both;
    }
    throw std::invalid_argument("Unknown output format '" + name + "'.");
}

std::string csv_text(const std::vector<CsvRow> &rows) {
    std::string text = "x,series,y,yerr\n";
    for (const auto &r : rows) {
        text += format_number(r.x) + "," + r.series + "," + format_number(r.y) + "," + format_number(r.yerr) + "\n";
    }
    return text;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::filesystem::path> write_bundle(
    const ResultBundle &bundle, const std::filesystem::path &dir, OutputFormat format, const std::string &timestamp) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    if (format != OutputFormat::Csv) {
        auto path = dir / (bundle.experiment + ".json");
        write_atomically(path, bundle.to_json(timestamp).dump(2) + "\n");
        written.push_back(path);
    }
    if (format != OutputFormat::Json) {
        auto path = dir / (bundle.experiment + "_scan.csv");
        write_atomically(path, csv_text(bundle.csv));
        written.push_back(path);
    }
    return written;
}

}  // namespace ionsim
