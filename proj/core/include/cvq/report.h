// Copyright 2026 The cvq Authors
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

#ifndef CVQ_REPORT_H_
#define CVQ_REPORT_H_

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cvq/scenario.h"

namespace cvq {

enum class OutputFormat { kCsv, kJson, kBoth };

OutputFormat parse_output_format(const std::string &text);

inline constexpr int kReportSchemaVersion = 1;

// 17 significant digits; round-trips every double.
std::string format_number(double value);

// One row per grid point under a fixed header. Empty cells mark absent values.
std::string points_csv(const RunReport &report);
// Columns: trial, then the running mean of each scheme.
std::string drift_csv(const RunReport &report);
std::string drift_summary_csv(const RunReport &report);
std::string counts_csv(const RunReport &report);
// Long format: index, mode, n, p.
std::string distributions_csv(const RunReport &report);

nlohmann::json report_to_json(const RunReport &report);

// Writes the files relevant to the report kind and returns their paths.
std::vector<std::filesystem::path> emit(const RunReport &report, const std::filesystem::path &dir,
                                        OutputFormat format);

}  // namespace cvq

#endif  // CVQ_REPORT_H_
