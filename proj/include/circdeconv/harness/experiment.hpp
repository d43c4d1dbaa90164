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


// Monte Carlo experiments over the configured n grid.

#ifndef CIRCDECONV_HARNESS_EXPERIMENT_HPP_
#define CIRCDECONV_HARNESS_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "circdeconv/harness/config.hpp"
#include "circdeconv/harness/report.hpp"
#include "circdeconv/rng.hpp"

namespace circdeconv {

struct ReplicationStats {
  double mean = 0.0;
  /// Sample standard deviation / sqrt(reps); 0 for a single replication.
  double se = 0.0;
};

ReplicationStats summarize(std::span<const double> values);

/// Runs fn(rng, i) for i < reps with rng = master.child(stream).child(i) and
/// returns the results in index order.
std::vector<double> replicate(
    std::size_t reps, const Rng& master, std::uint64_t stream,
    std::size_t threads,
    const std::function<double(Rng&, std::size_t)>& fn);

/// Risk scenarios: null, boundary_low, boundary_kappa, hypercube,
/// two_point_plus, two_point_minus.
const std::vector<std::string>& risk_scenarios();
/// Test scenarios: hypercube, spike.
const std::vector<std::string>& test_scenarios();

ExperimentReport run_risk_experiment(const ExperimentConfig& cfg);
ExperimentReport run_test_experiment(const ExperimentConfig& cfg);

}  // namespace circdeconv

#endif  // CIRCDECONV_HARNESS_EXPERIMENT_HPP_
