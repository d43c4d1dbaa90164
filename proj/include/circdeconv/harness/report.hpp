// Copyright 2026 The circdeconv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Experiment reports and their CSV / JSON forms.

#ifndef CIRCDECONV_HARNESS_REPORT_HPP_
#define CIRCDECONV_HARNESS_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "circdeconv/harness/config.hpp"

namespace circdeconv {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// One (n, scenario, A) cell. Quantities that do not apply are NaN.
struct ReportRow {
  std::size_t n = 0;
  std::string scenario;
  std::string ladder;  // ladder label, empty for risk rows
  double A = 0.0;
  std::size_t k = 0;
  double q = 0.0;
  bool feasible = true;
  double estimate_mean = 0.0;
  double estimate_se = 0.0;
  double risk = 0.0;
  double risk_se = 0.0;
  double type1 = 0.0;
  double type1_se = 0.0;
  double type2 = 0.0;
  double type2_se = 0.0;
  double error_sum = 0.0;
  double error_sum_se = 0.0;
  double bound = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Per-n summary: the maximal-risk proxy over the stress set, or the null
/// type I error for test experiments.
struct SummaryRow {
  std::size_t n = 0;
  double value = 0.0;
  double value_se = 0.0;
  std::string argmax;
  double bound = 0.0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct ExperimentReport {
  std::string kind;  // "risk" or "test"
  std::string artifact_version = kArtifactVersion;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  /// Canonical configuration (without threads and output).
  nlohmann::json config;
  std::vector<ReportRow> rows;
  std::vector<SummaryRow> summary;
  /// Log-log slope of the summary values against n, and its target.
  double fitted_slope = 0.0;
  double fitted_r_squared = 0.0;
  double theory_slope = 0.0;
  /// Not part of the serialized report.
  double wall_clock_seconds = 0.0;
};

/// Stable column order.
const std::vector<std::string>& report_columns();

std::string report_to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

enum class ReportFormat { csv, json };

std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Writes the rendered report; IoError on failure.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path);

/// "%.17g", with "nan" / "inf" spelled out.
std::string format_double(double v);

}  // namespace circdeconv

#endif  // CIRCDECONV_HARNESS_REPORT_HPP_
