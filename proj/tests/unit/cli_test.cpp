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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CIRCDECONV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("circdeconv_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kConfig = R"({
  "smoothness": {"kind": "ordinary", "s": 1.0, "radius": 1.0},
  "noise": {"kind": "mildly", "p": 1.0, "max_freq": 8},
  "n_grid": [100, 200],
  "replications": 20,
  "k_rule": {"fixed": 2},
  "seed": 7
})";

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("bogus"), 1);
  EXPECT_EQ(run_cli("rates"), 1);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST_F(CliTest, InvalidConfigIsUsageError) {
  const std::string cfg = write("bad.json", R"({"n_grid": [1]})");
  EXPECT_EQ(run_cli("rates --config " + cfg), 1);
}

TEST_F(CliTest, SimulateRiskIsReproducible) {
  const std::string cfg = write("cfg.json", kConfig);
  ASSERT_EQ(run_cli("simulate-risk --config " + cfg + " --threads 1 --format csv --out " +
                    path("a.csv")),
            0);
  ASSERT_EQ(run_cli("simulate-risk --config " + cfg + " --threads 4 --format csv --out " +
                    path("b.csv")),
            0);
  std::ifstream a(path("a.csv"));
  std::ifstream b(path("b.csv"));
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}

TEST_F(CliTest, LowerBoundReportsConditions) {
  const std::string cfg = write("cfg.json", kConfig);
  ASSERT_EQ(run_cli("lower-bound --config " + cfg + " --out " + path("lb.json")), 0);
  std::ifstream in(path("lb.json"));
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j.at("all_hold").get<bool>());
  EXPECT_EQ(j.at("constructions").size(), 2u);
}

TEST_F(CliTest, IngestThenEstimate) {
  const std::string data = write("times.txt", "12:00\n06:00\n18:30\n23:59\n00:15\n");
  ASSERT_EQ(run_cli("ingest --input " + data + " --input-format hhmm --format csv --out " +
                    path("unit.csv")),
            0);
  const std::string cfg = write("cfg.json", kConfig);
  ASSERT_EQ(run_cli("estimate --config " + cfg + " --data " + path("unit.csv") +
                    " --out " + path("est.json")),
            0);
  std::ifstream in(path("est.json"));
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("n").get<int>(), 5);
  EXPECT_EQ(j.at("k").get<int>(), 2);
  EXPECT_EQ(run_cli("test --config " + cfg + " --data " + path("unit.csv") +
                    " --out " + path("t.json")),
            0);
}

TEST_F(CliTest, MissingFileIsUsageError) {
  EXPECT_EQ(run_cli("ingest --input " + path("missing.txt")), 1);
}

}  // namespace
