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

#ifndef IONSIM_HARNESS_OUTPUT_H
#define IONSIM_HARNESS_OUTPUT_H

#include <filesystem>
#include <string>
#include <vector>

#include "ionsim/harness/experiments.h"

namespace ionsim {

enum class OutputFormat { Json, Csv, Both };

/// Parses "json", "csv" or "both". Throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string &name);

/// `x,series,y,yerr` rows, every number printed with 17 significant digits.
std::string csv_text(const std::vector<CsvRow> &rows);

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

/// Writes `<experiment>.json` and/or `<experiment>_scan.csv` under `dir`,
/// creating it if needed. Each file is written to a temporary name first and
/// renamed into place. Returns the written paths.
std::vector<std::filesystem::path> write_bundle(
    const ResultBundle &bundle, const std::filesystem::path &dir, OutputFormat format, const std::string &timestamp);

}  // namespace ionsim

#endif
