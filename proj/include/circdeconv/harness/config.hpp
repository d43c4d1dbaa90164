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


// Experiment configuration and its canonical JSON form.

#ifndef CIRCDECONV_HARNESS_CONFIG_HPP_
#define CIRCDECONV_HARNESS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "circdeconv/fourier.hpp"

namespace circdeconv {

struct SmoothnessSpec {
  enum class Kind { ordinary, super_smooth };
  Kind kind = Kind::ordinary;
  double s = 1.0;
  double radius = 1.0;
  double scale = 1.0;

  SmoothnessClass build() const;
};

struct NoiseSpec {
  enum class Kind { mildly, severely, direct, density };
  Kind kind = Kind::mildly;
  double p = 1.0;
  /// Density-backed noise truncated at max_freq; sequence-only when absent.
  std::optional<std::size_t> max_freq;
  std::optional<double> scale;
  /// Sup-norm override; required for sequence-only models used in tests.
  std::optional<double> sup_norm;
  /// Coefficients for Kind::density.
  std::optional<FourierDensity> coeffs;

  NoiseModel build() const;
};

struct KRule {
  enum class Kind { kappa_star, fixed };
  Kind kind = Kind::kappa_star;
  std::size_t k = 0;
};

/// One entry of the separation ladder: a number, or a symbolic constant
/// resolved per n.
struct LadderEntry {
  enum class Kind { value, a_lower, a_upper };
  Kind kind = Kind::value;
  double value = 0.0;

  std::string label() const;
};

struct ExperimentConfig {
  SmoothnessSpec smoothness;
  NoiseSpec noise;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1000;
  double alpha = 0.05;
  KRule k_rule;
  std::size_t k_max = std::size_t{1} << 20;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t threads = 1;
  std::vector<LadderEntry> a_ladder;
  std::vector<std::string> scenarios;

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON text of the configuration without `threads` and `output`.
std::string canonical_config(const ExperimentConfig& cfg);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string hex64(std::uint64_t v);

}  // namespace circdeconv

#endif  // CIRCDECONV_HARNESS_CONFIG_HPP_
