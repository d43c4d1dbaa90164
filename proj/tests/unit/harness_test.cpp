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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "circdeconv/errors.hpp"
#include "circdeconv/harness/config.hpp"
#include "circdeconv/harness/experiment.hpp"
#include "circdeconv/harness/ingest.hpp"
#include "circdeconv/harness/report.hpp"

namespace circdeconv {
namespace {

using nlohmann::json;

std::uint64_t reference_fnv(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.smoothness.s = 1.0;
  cfg.noise.kind = NoiseSpec::Kind::mildly;
  cfg.noise.p = 1.0;
  cfg.noise.max_freq = 8;
  cfg.n_grid = {50, 100};
  cfg.replications = 40;
  cfg.k_rule = {KRule::Kind::fixed, 2};
  cfg.seed = 2026;
  return cfg;
}

TEST(Config, Fnv1aReferenceVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg = small_config();
  cfg.a_ladder = {{LadderEntry::Kind::a_lower, 0.0},
                  {LadderEntry::Kind::value, 2.5},
                  {LadderEntry::Kind::a_upper, 0.0}};
  cfg.scenarios = {"hypercube", "spike"};
  const json j = config_to_json(cfg);
  const ExperimentConfig back = config_from_json(j);
  EXPECT_EQ(config_to_json(back), j);
  EXPECT_EQ(j.at("a_ladder"), json::parse(R"(["A_lower", 2.5, "A_upper"])"));
  EXPECT_EQ(j.at("k_rule"), json::parse(R"({"fixed": 2})"));
}

TEST(Config, StrictParsing) {
  json j = config_to_json(small_config());
  j["unexpected"] = 1;
  EXPECT_THROW(config_from_json(j), InvalidArgument);
  json k = config_to_json(small_config());
  k["k_rule"] = "kappa_star";
  EXPECT_EQ(config_from_json(k).k_rule.kind, KRule::Kind::kappa_star);
  k["k_rule"] = 3;
  EXPECT_EQ(config_from_json(k).k_rule.k, 3u);
  k["replications"] = 0;
  EXPECT_THROW(config_from_json(k).validate(), InvalidArgument);
  json bad_n = config_to_json(small_config());
  bad_n["n_grid"] = json::array({1});
  EXPECT_THROW(config_from_json(bad_n).validate(), InvalidArgument);
}

TEST(Config, HashMatchesIndependentRehash) {
  ExperimentConfig cfg = small_config();
  json j = config_to_json(cfg);
  j.erase("threads");
  j.erase("output");
  EXPECT_EQ(config_hash(cfg), reference_fnv(j.dump()));
  ExperimentConfig other = cfg;
  other.threads = 8;
  other.output = "elsewhere.csv";
  EXPECT_EQ(config_hash(other), config_hash(cfg));
  other.seed += 1;
  EXPECT_NE(config_hash(other), config_hash(cfg));
}

TEST(Experiment, StandardErrorIsSampleSdOverRootReps) {
  const std::vector<double> v{1.0, 4.0, 2.5, -3.0, 0.5};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= 5.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const ReplicationStats s = summarize(v);
  EXPECT_NEAR(s.mean, mean, 1e-15);
  EXPECT_NEAR(s.se, std::sqrt(ss / 4.0) / std::sqrt(5.0), 1e-12);
}

TEST(Experiment, ReplicationsAreIndexedStreams) {
  const Rng master(5);
  auto fn = [](Rng& rng, std::size_t i) {
    return rng.uniform() + static_cast<double>(i);
  };
  const auto serial = replicate(64, master, 9, 1, fn);
  const auto parallel = replicate(64, master, 9, 4, fn);
  EXPECT_EQ(serial, parallel);
  Rng direct = master.child(9).child(17);
  EXPECT_EQ(serial[17], direct.uniform() + 17.0);
}

TEST(Experiment, RiskReportShapeAndDeterminism) {
  ExperimentConfig cfg = small_config();
  const ExperimentReport a = run_risk_experiment(cfg);
  EXPECT_EQ(a.rows.size(), cfg.n_grid.size() * risk_scenarios().size());
  EXPECT_EQ(a.summary.size(), cfg.n_grid.size());
  EXPECT_EQ(a.config_hash, config_hash(cfg));
  cfg.threads = 3;
  const ExperimentReport b = run_risk_experiment(cfg);
  EXPECT_EQ(render_report(a, ReportFormat::csv),
            render_report(b, ReportFormat::csv));
  EXPECT_EQ(render_report(a, ReportFormat::json),
            render_report(b, ReportFormat::json));
  for (const auto& s : a.summary) {
    double worst = 0.0;
    for (const auto& r : a.rows) {
      if (r.n == s.n) worst = std::max(worst, r.risk);
    }
    EXPECT_EQ(s.value, worst);
  }
  for (const auto& r : a.rows) {
    if (r.scenario == "null") {
      EXPECT_EQ(r.q, 0.0);
    }
    EXPECT_TRUE(std::isnan(r.type1));
  }
}

TEST(Experiment, TestReportLadderRows) {
  ExperimentConfig cfg = small_config();
  cfg.scenarios = {"hypercube", "spike"};
  cfg.a_ladder = {{LadderEntry::Kind::a_lower, 0.0},
                  {LadderEntry::Kind::value, 0.5},
                  {LadderEntry::Kind::a_upper, 0.0}};
  const ExperimentReport rep = run_test_experiment(cfg);
  EXPECT_EQ(rep.rows.size(), 2u * 2u * 3u);
  const std::string csv = render_report(rep, ReportFormat::csv);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 2u + rep.rows.size());
  for (const auto& r : rep.rows) {
    if (!r.feasible) {
      EXPECT_TRUE(std::isnan(r.type2));
      EXPECT_EQ(r.error_sum, r.type1);
    } else {
      EXPECT_NEAR(r.error_sum, r.type1 + r.type2, 1e-15);
    }
  }
  // The symbolic upper constant is far outside the ellipsoid.
  for (const auto& r : rep.rows) {
    if (r.ladder == "A_upper") {
      EXPECT_FALSE(r.feasible);
    }
  }
  cfg.scenarios = {"nonsense"};
  EXPECT_THROW(run_test_experiment(cfg), InvalidArgument);
}

TEST(Report, JsonRoundTripIsIdentity) {
  const ExperimentReport rep = run_risk_experiment(small_config());
  const json j = report_to_json(rep);
  EXPECT_EQ(report_to_json(report_from_json(j)), j);
  const ExperimentReport back = report_from_json(json::parse(j.dump()));
  EXPECT_EQ(render_report(back, ReportFormat::csv),
            render_report(rep, ReportFormat::csv));
  EXPECT_EQ(back.config_hash, rep.config_hash);
  EXPECT_EQ(back.config.dump(), canonical_config(small_config()));
}

TEST(Report, CsvHeaderAndFormatting) {
  const auto& cols = report_columns();
  EXPECT_EQ(cols.front(), "n");
  EXPECT_EQ(cols.back(), "bound");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}

TEST(Report, EmitWritesAndSurfacesIoErrors) {
  const ExperimentReport rep = run_risk_experiment(small_config());
  const auto path =
      std::filesystem::temp_directory_path() / "circdeconv_report_test.json";
  emit_report(rep, ReportFormat::json, path.string());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j, report_to_json(rep));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(rep, ReportFormat::csv, "/nonexistent/dir/x.csv"),
               IoError);
}

TEST(Ingest, RecordConversions) {
  EXPECT_DOUBLE_EQ(parse_circular_record("12:00", CircularFormat::hhmm), 0.5);
  EXPECT_DOUBLE_EQ(parse_circular_record("23:59", CircularFormat::hhmm),
                   1439.0 / 1440.0);
  EXPECT_DOUBLE_EQ(parse_circular_record("0930", CircularFormat::hhmm),
                   570.0 / 1440.0);
  EXPECT_DOUBLE_EQ(parse_circular_record("90", CircularFormat::degrees), 0.25);
  EXPECT_DOUBLE_EQ(parse_circular_record(" 0.125 ", CircularFormat::unit), 0.125);
  EXPECT_THROW(parse_circular_record("24:00", CircularFormat::hhmm), InvalidArgument);
  EXPECT_THROW(parse_circular_record("12:60", CircularFormat::hhmm), InvalidArgument);
  EXPECT_THROW(parse_circular_record("360", CircularFormat::degrees), InvalidArgument);
  EXPECT_THROW(parse_circular_record("1.0", CircularFormat::unit), InvalidArgument);
  EXPECT_THROW(parse_circular_record("abc", CircularFormat::unit), InvalidArgument);
  EXPECT_THROW(parse_circular_format("radians"), InvalidArgument);
}

TEST(Ingest, CollectsLineErrorsUpToOnePercent) {
  std::ostringstream ok;
  ok << "# header\n";
  for (int i = 0; i < 200; ++i) ok << (i % 24) << ":" << (i % 60 < 10 ? "0" : "") << i % 60 << "\n";
  ok << "25:00\n";
  std::istringstream in(ok.str());
  const IngestResult r = ingest_circular_data(in, CircularFormat::hhmm);
  EXPECT_EQ(r.records, 201u);
  EXPECT_EQ(r.sample.size(), 200u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 202u);
  EXPECT_EQ(r.sample.provenance(), "external-data");

  std::istringstream bad("0.1\n0.2\nx\n");
  EXPECT_THROW(ingest_circular_data(bad, CircularFormat::unit), InvalidArgument);
  EXPECT_THROW(ingest_circular_data("/nonexistent/file", CircularFormat::unit),
               IoError);
}

}  // namespace
}  // namespace circdeconv
