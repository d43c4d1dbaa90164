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


// circdeconv: estimation, testing, rate scans, lower-bound constructions and
// Monte Carlo experiments for the circular deconvolution model.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circdeconv/errors.hpp"
#include "circdeconv/estimation.hpp"
#include "circdeconv/harness/config.hpp"
#include "circdeconv/harness/experiment.hpp"
#include "circdeconv/harness/ingest.hpp"
#include "circdeconv/harness/report.hpp"
#include "circdeconv/lower_bounds.hpp"
#include "circdeconv/rates.hpp"
#include "circdeconv/sampling.hpp"
#include "circdeconv/serialization.hpp"
#include "circdeconv/testing.hpp"

namespace {

using circdeconv::ExperimentConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> threads;
  std::string format = "json";
};

struct DataOptions {
  std::string data;
  std::string data_format = "unit";
  std::optional<std::size_t> k;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", c.config, "JSON configuration file")
                  ->check(CLI::ExistingFile);
  if (needs_config) opt->required();
  cmd->add_option("--seed", c.seed, "Master seed (overrides the config)");
  cmd->add_option("--out", c.out, "Output file (default: config output or stdout)");
  cmd->add_option("--threads", c.threads, "Worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig load(const Common& c) {
  ExperimentConfig cfg = circdeconv::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  if (!c.out.empty()) cfg.output = c.out;
  cfg.validate();
  return cfg;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw circdeconv::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw circdeconv::IoError("failed writing '" + path + "'");
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out + "\n";
}

std::string num(double v) { return circdeconv::format_double(v); }

circdeconv::CircularSample load_sample(const DataOptions& d) {
  if (d.data_format == "binary") {
    std::ifstream in(d.data, std::ios::binary);
    if (!in) throw circdeconv::IoError("cannot open '" + d.data + "'");
    return circdeconv::read_binary(in);
  }
  const auto fmt = circdeconv::parse_circular_format(d.data_format);
  auto result = circdeconv::ingest_circular_data(d.data, fmt);
  for (const auto& e : result.errors) {
    std::cerr << "warning: line " << e.line << ": " << e.reason << "\n";
  }
  return std::move(result.sample);
}

std::size_t choose_k(const ExperimentConfig& cfg,
                     const circdeconv::SmoothnessClass& cls,
                     const circdeconv::NoiseModel& eps, std::size_t n,
                     const DataOptions& d) {
  if (d.k) return *d.k;
  if (cfg.k_rule.kind == circdeconv::KRule::Kind::fixed) return cfg.k_rule.k;
  return circdeconv::optimal_dim_est(cls, eps, n, cfg.k_max);
}

int run_estimate(const Common& c, const DataOptions& d) {
  const ExperimentConfig cfg = load(c);
  const auto cls = cfg.smoothness.build();
  const auto eps = cfg.noise.build();
  const auto sample = load_sample(d);
  const std::size_t k = choose_k(cfg, cls, eps, sample.size(), d);
  const double q = circdeconv::estimate_q(sample, eps, k);
  const double q_clamped = circdeconv::estimate_q_clamped(sample, eps, k);
  const auto bound = circdeconv::risk_upper_bound(cls, eps, sample.size(), k);
  if (c.format == "csv") {
    write_output(csv_line({"n", "k", "q_hat", "q_hat_clamped", "risk_bound"}) +
                     csv_line({std::to_string(sample.size()),
                               std::to_string(k), num(q), num(q_clamped),
                               num(bound.total)}),
                 cfg.output);
  } else {
    const json j{{"n", sample.size()},
                 {"k", k},
                 {"q_hat", q},
                 {"q_hat_clamped", q_clamped},
                 {"risk_bound", circdeconv::number_or_null(bound.total)},
                 {"provenance", sample.provenance()}};
    write_output(j.dump(2) + "\n", cfg.output);
  }
  return kExitOk;
}

int run_test_cmd(const Common& c, const DataOptions& d) {
  const ExperimentConfig cfg = load(c);
  const auto cls = cfg.smoothness.build();
  const auto eps = cfg.noise.build();
  const auto sample = load_sample(d);
  const std::size_t k = choose_k(cfg, cls, eps, sample.size(), d);
  const auto cal =
      circdeconv::TestCalibration::calibrate(cfg.alpha, eps, cls.radius());
  const auto result = circdeconv::run_test(sample, eps, k, cal);
  if (c.format == "csv") {
    write_output(
        csv_line({"n", "k", "statistic", "threshold", "nu_k_sq", "decision"}) +
            csv_line({std::to_string(sample.size()), std::to_string(k),
                      num(result.statistic), num(result.threshold),
                      num(result.nu_k_sq), circdeconv::to_string(result.decision)}),
        cfg.output);
  } else {
    const json j{{"n", sample.size()}, {"result", result}, {"calibration", cal}};
    write_output(j.dump(2) + "\n", cfg.output);
  }
  return kExitOk;
}

std::optional<circdeconv::RegimeSpec> regime_of(const ExperimentConfig& cfg) {
  circdeconv::RegimeSpec reg;
  reg.smoothness =
      cfg.smoothness.kind == circdeconv::SmoothnessSpec::Kind::ordinary
          ? circdeconv::RegimeSpec::Smoothness::ordinary
          : circdeconv::RegimeSpec::Smoothness::super_smooth;
  reg.s = cfg.smoothness.s;
  if (cfg.noise.kind == circdeconv::NoiseSpec::Kind::mildly) {
    reg.ill_posedness = circdeconv::RegimeSpec::IllPosedness::mild;
  } else if (cfg.noise.kind == circdeconv::NoiseSpec::Kind::severely) {
    reg.ill_posedness = circdeconv::RegimeSpec::IllPosedness::severe;
  } else {
    return std::nullopt;
  }
  reg.p = cfg.noise.p;
  return reg;
}

int run_rates(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const auto cls = cfg.smoothness.build();
  const auto eps = cfg.noise.build();
  const auto rows = circdeconv::numeric_rate_scan(cls, eps, cfg.n_grid, cfg.k_max);
  if (c.format == "csv") {
    std::string text = csv_line({"n", "rho_star_sq", "k_rho", "kappa_star",
                                 "r_star4", "base", "base_argmax",
                                 "base_at_edge"});
    for (const auto& r : rows) {
      text += csv_line({std::to_string(r.n), num(r.rho_star_sq),
                        std::to_string(r.k_rho), std::to_string(r.kappa_star),
                        num(r.r_star4), num(r.base),
                        std::to_string(r.base_argmax),
                        r.base_at_edge ? "true" : "false"});
    }
    write_output(text, cfg.output);
    return kExitOk;
  }
  json j{{"scan", rows}};
  if (rows.size() >= 4) {
    std::vector<double> ns;
    std::vector<double> est;
    std::vector<double> radius;
    for (const auto& r : rows) {
      ns.push_back(static_cast<double>(r.n));
      est.push_back(std::max(r.r_star4, r.base));
      radius.push_back(r.rho_star_sq);
    }
    const auto mode = cfg.noise.kind == circdeconv::NoiseSpec::Kind::severely
                          ? circdeconv::FitMode::log_only
                          : circdeconv::FitMode::power;
    const auto fe = circdeconv::fit_rate(ns, est, mode);
    const auto fr = circdeconv::fit_rate(ns, radius, mode);
    j["estimation_fit"] = {{"slope", circdeconv::number_or_null(fe.slope)},
                           {"log_exponent", circdeconv::number_or_null(fe.log_exponent)},
                           {"r_squared", circdeconv::number_or_null(fe.r_squared)}};
    j["testing_fit"] = {{"slope", circdeconv::number_or_null(fr.slope)},
                        {"log_exponent", circdeconv::number_or_null(fr.log_exponent)},
                        {"r_squared", circdeconv::number_or_null(fr.r_squared)}};
  }
  if (const auto reg = regime_of(cfg)) {
    const std::size_t n = cfg.n_grid.back();
    try {
      j["theory_estimation"] = circdeconv::theoretical_estimation_rate(*reg, n);
      j["theory_testing"] = circdeconv::theoretical_testing_radius(*reg, n);
    } catch (const circdeconv::InvalidArgument& e) {
      j["theory_note"] = e.what();
    }
  }
  write_output(j.dump(2) + "\n", cfg.output);
  return kExitOk;
}

int run_simulation(const Common& c, bool risk) {
  const ExperimentConfig cfg = load(c);
  const auto report = risk ? circdeconv::run_risk_experiment(cfg)
                           : circdeconv::run_test_experiment(cfg);
  const auto fmt = c.format == "csv" ? circdeconv::ReportFormat::csv
                                     : circdeconv::ReportFormat::json;
  write_output(circdeconv::render_report(report, fmt), cfg.output);
  std::fprintf(stderr, "config %s, %zu rows, %.3f s\n",
               circdeconv::hex64(report.config_hash).c_str(),
               report.rows.size(), report.wall_clock_seconds);
  return kExitOk;
}

int run_lower_bound(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const auto cls = cfg.smoothness.build();
  const auto eps = cfg.noise.build();
  bool all_hold = true;
  json out = json::array();
  std::string csv = csv_line({"n", "construction", "condition", "lhs", "rhs", "holds"});
  auto add_checks = [&](std::size_t n, const std::string& name,
                        const circdeconv::ConditionReport& report) {
    for (const auto& ch : report.checks) {
      csv += csv_line({std::to_string(n), name, ch.label, num(ch.lhs),
                       num(ch.rhs), ch.holds ? "true" : "false"});
    }
    all_hold = all_hold && report.all_hold();
  };
  for (const std::size_t n : cfg.n_grid) {
    const auto fam = circdeconv::hypercube_family(cls, eps, n, cfg.alpha, cfg.k_max);
    const std::size_t m = circdeconv::base_term(cls, eps, n).argmax;
    const auto pair = circdeconv::two_point_pair(cls, eps, n, m);
    add_checks(n, "hypercube", fam.conditions());
    add_checks(n, "two_point", pair.conditions);
    std::vector<double> theta(fam.theta().begin(), fam.theta().end());
    out.push_back(
        {{"n", n},
         {"hypercube",
          {{"kappa", fam.kappa()},
           {"theta", theta},
           {"zeta", fam.zeta()},
           {"eta", fam.eta()},
           {"rho_star_sq", fam.rho_star_sq()},
           {"A_lower_sq", fam.a_lower_sq()},
           {"vertex", fam.vertex(0)},
           {"conditions", fam.conditions()}}},
         {"two_point",
          {{"m", pair.m},
           {"xi", pair.xi},
           {"C", pair.C},
           {"f_plus", pair.f_plus},
           {"f_minus", pair.f_minus},
           {"separation_sq", pair.separation_sq},
           {"observation_distance_sq", pair.observation_distance_sq},
           {"hellinger_bound", circdeconv::hellinger_reduction_bound(pair, n)},
           {"conditions", pair.conditions}}}});
  }
  if (c.format == "csv") {
    write_output(csv, cfg.output);
  } else {
    write_output(json{{"all_hold", all_hold}, {"constructions", out}}.dump(2) + "\n",
                 cfg.output);
  }
  return all_hold ? kExitOk : kExitCheck;
}

int run_ingest(const Common& c, const std::string& input,
               const std::string& input_format) {
  const auto fmt = circdeconv::parse_circular_format(input_format);
  const auto result = circdeconv::ingest_circular_data(input, fmt);
  for (const auto& e : result.errors) {
    std::cerr << "warning: line " << e.line << ": " << e.reason << "\n";
  }
  if (c.format == "csv") {
    std::ostringstream os;
    circdeconv::write_csv(result.sample, os);
    write_output(os.str(), c.out);
  } else {
    json errors = json::array();
    for (const auto& e : result.errors) {
      errors.push_back({{"line", e.line}, {"text", e.text}, {"reason", e.reason}});
    }
    const std::span<const double> v = result.sample.values();
    const json j{{"values", std::vector<double>(v.begin(), v.end())},
                 {"seed", result.sample.seed()},
                 {"provenance", result.sample.provenance()},
                 {"records", result.records},
                 {"errors", errors}};
    write_output(j.dump(2) + "\n", c.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic functional estimation and testing under circular "
               "deconvolution"};
  app.require_subcommand(1);

  Common common;
  DataOptions data;
  std::string ingest_input;
  std::string ingest_format = "unit";

  auto* estimate = app.add_subcommand("estimate", "Estimate q from a sample");
  auto* test = app.add_subcommand("test", "Run the calibrated test on a sample");
  for (auto* cmd : {estimate, test}) {
    add_common(cmd, common);
    cmd->add_option("--data", data.data, "Sample file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--data-format", data.data_format, "Sample file format")
        ->check(CLI::IsMember({"unit", "hhmm", "degrees", "binary"}));
    cmd->add_option("--k", data.k, "Truncation level (overrides the k rule)")
        ->check(CLI::PositiveNumber);
  }
  auto* rates = app.add_subcommand("rates", "Numeric rate scan over n_grid");
  add_common(rates, common);
  auto* sim_risk = app.add_subcommand("simulate-risk", "Monte Carlo risk experiment");
  add_common(sim_risk, common);
  auto* sim_test = app.add_subcommand("simulate-test", "Monte Carlo testing experiment");
  add_common(sim_test, common);
  auto* lower = app.add_subcommand("lower-bound",
                                   "Lower-bound constructions and their conditions");
  add_common(lower, common);
  auto* ingest = app.add_subcommand("ingest", "Convert circular records to [0, 1)");
  add_common(ingest, common, false);
  ingest->add_option("--input", ingest_input, "Record file")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--input-format", ingest_format, "Record format")
      ->check(CLI::IsMember({"unit", "hhmm", "degrees"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (estimate->parsed()) return run_estimate(common, data);
    if (test->parsed()) return run_test_cmd(common, data);
    if (rates->parsed()) return run_rates(common);
    if (sim_risk->parsed()) return run_simulation(common, true);
    if (sim_test->parsed()) return run_simulation(common, false);
    if (lower->parsed()) return run_lower_bound(common);
    if (ingest->parsed()) return run_ingest(common, ingest_input, ingest_format);
  } catch (const circdeconv::ConditionViolated& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheck;
  } catch (const circdeconv::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
