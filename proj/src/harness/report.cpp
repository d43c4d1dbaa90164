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


#include "circdeconv/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "circdeconv/errors.hpp"
#include "circdeconv/serialization.hpp"

namespace circdeconv {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json row_to_json(const ReportRow& r) {
  return {{"n", r.n},
          {"scenario", r.scenario},
          {"ladder", r.ladder},
          {"A", number_or_null(r.A)},
          {"k", r.k},
          {"q", number_or_null(r.q)},
          {"feasible", r.feasible},
          {"estimate_mean", number_or_null(r.estimate_mean)},
          {"estimate_se", number_or_null(r.estimate_se)},
          {"risk", number_or_null(r.risk)},
          {"risk_se", number_or_null(r.risk_se)},
          {"type1", number_or_null(r.type1)},
          {"type1_se", number_or_null(r.type1_se)},
          {"type2", number_or_null(r.type2)},
          {"type2_se", number_or_null(r.type2_se)},
          {"error_sum", number_or_null(r.error_sum)},
          {"error_sum_se", number_or_null(r.error_sum_se)},
          {"bound", number_or_null(r.bound)}};
}

ReportRow row_from_json(const nlohmann::json& j) {
  ReportRow r;
  r.n = j.at("n").get<std::size_t>();
  r.scenario = j.at("scenario").get<std::string>();
  r.ladder = j.at("ladder").get<std::string>();
  r.A = number_or_nan(j.at("A"));
  r.k = j.at("k").get<std::size_t>();
  r.q = number_or_nan(j.at("q"));
  r.feasible = j.at("feasible").get<bool>();
  r.estimate_mean = number_or_nan(j.at("estimate_mean"));
  r.estimate_se = number_or_nan(j.at("estimate_se"));
  r.risk = number_or_nan(j.at("risk"));
  r.risk_se = number_or_nan(j.at("risk_se"));
  r.type1 = number_or_nan(j.at("type1"));
  r.type1_se = number_or_nan(j.at("type1_se"));
  r.type2 = number_or_nan(j.at("type2"));
  r.type2_se = number_or_nan(j.at("type2_se"));
  r.error_sum = number_or_nan(j.at("error_sum"));
  r.error_sum_se = number_or_nan(j.at("error_sum_se"));
  r.bound = number_or_nan(j.at("bound"));
  return r;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "n",         "scenario",    "ladder",   "A",        "k",
      "q",         "feasible",    "estimate_mean",        "estimate_se",
      "risk",      "risk_se",     "type1",    "type1_se", "type2",
      "type2_se",  "error_sum",   "error_sum_se",         "bound"};
  return cols;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "# kind=" << report.kind << " artifact_version="
     << report.artifact_version << " config_hash=" << hex64(report.config_hash)
     << " seed=" << report.seed << "\n";
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    os << (i ? "," : "") << cols[i];
  }
  os << "\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << csv_field(r.scenario) << ',' << csv_field(r.ladder)
       << ',' << format_double(r.A) << ',' << r.k << ',' << format_double(r.q)
       << ',' << (r.feasible ? "true" : "false") << ','
       << format_double(r.estimate_mean) << ','
       << format_double(r.estimate_se) << ',' << format_double(r.risk) << ','
       << format_double(r.risk_se) << ',' << format_double(r.type1) << ','
       << format_double(r.type1_se) << ',' << format_double(r.type2) << ','
       << format_double(r.type2_se) << ',' << format_double(r.error_sum)
       << ',' << format_double(r.error_sum_se) << ','
       << format_double(r.bound) << "\n";
  }
  return os.str();
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) rows.push_back(row_to_json(r));
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"n", s.n},
                       {"value", number_or_null(s.value)},
                       {"value_se", number_or_null(s.value_se)},
                       {"argmax", s.argmax},
                       {"bound", number_or_null(s.bound)}});
  }
  return {{"kind", report.kind},
          {"artifact_version", report.artifact_version},
          {"config_hash", hex64(report.config_hash)},
          {"seed", report.seed},
          {"config", report.config},
          {"rows", rows},
          {"summary", summary},
          {"fitted_slope", number_or_null(report.fitted_slope)},
          {"fitted_r_squared", number_or_null(report.fitted_r_squared)},
          {"theory_slope", number_or_null(report.theory_slope)}};
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport report;
  try {
    report.kind = j.at("kind").get<std::string>();
    report.artifact_version = j.at("artifact_version").get<std::string>();
    report.config_hash =
        std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config = j.at("config");
    for (const auto& r : j.at("rows")) report.rows.push_back(row_from_json(r));
    for (const auto& s : j.at("summary")) {
      SummaryRow row;
      row.n = s.at("n").get<std::size_t>();
      row.value = number_or_nan(s.at("value"));
      row.value_se = number_or_nan(s.at("value_se"));
      row.argmax = s.at("argmax").get<std::string>();
      row.bound = number_or_nan(s.at("bound"));
      report.summary.push_back(row);
    }
    report.fitted_slope = number_or_nan(j.at("fitted_slope"));
    report.fitted_r_squared = number_or_nan(j.at("fitted_r_squared"));
    report.theory_slope = number_or_nan(j.at("theory_slope"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string render_report(const ExperimentReport& report,
                          ReportFormat format) {
  if (format == ReportFormat::csv) return report_to_csv(report);
  return report_to_json(report).dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << render_report(report, format);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace circdeconv
