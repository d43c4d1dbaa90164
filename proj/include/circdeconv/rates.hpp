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


// Theoretical orders, the base term and finite-n rate scans.

#ifndef CIRCDECONV_RATES_HPP_
#define CIRCDECONV_RATES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circdeconv/fourier.hpp"

namespace circdeconv {

struct BaseTerm {
  double value = 0.0;
  std::size_t argmax = 0;
  /// The scan reached m_max before the maximum could be certified.
  bool at_window_edge = false;
};

/// B = max_m min(a_m^4, a_m^2 / (n |eps_m|^2)). The scan stops once a_m^4
/// falls below the running maximum, which is exact because a is
/// non-increasing. m_max = 0 means no explicit cap beyond 2^26.
BaseTerm base_term(const SmoothnessClass& cls, const NoiseModel& eps,
                   std::size_t n, std::size_t m_max = 0);

/// n^{n_exp} (log n)^{log_exp}.
struct Order {
  double n_exp = 0.0;
  double log_exp = 0.0;

  double evaluate(double n) const;
  std::string describe() const;
  friend bool operator==(const Order&, const Order&) = default;
};

/// Strict comparison by growth: larger n exponent wins, ties by log exponent.
bool order_less(const Order& a, const Order& b);
Order order_max(const Order& a, const Order& b);

struct RegimeSpec {
  enum class Smoothness { ordinary, super_smooth };
  enum class IllPosedness { mild, severe };

  Smoothness smoothness = Smoothness::ordinary;
  double s = 1.0;
  IllPosedness ill_posedness = IllPosedness::mild;
  double p = 1.0;

  void validate() const;
  std::string describe() const;

  /// Canonical sequences with unit proportionality constants.
  SmoothnessClass smoothness_class(double radius = 1.0) const;
  NoiseModel noise_model() const;
};

struct RateReport {
  Order r_star4;
  Order base_term;
  Order estimation_rate;
  Order testing_radius;
  bool elbow = false;
  std::string condition;
};

/// Throws InvalidArgument for the untabulated super smooth / severe regime.
RateReport theoretical_estimation_rate(const RegimeSpec& reg, std::size_t n);
RateReport theoretical_testing_radius(const RegimeSpec& reg, std::size_t n);

struct RateScanRow {
  std::size_t n = 0;
  /// min_k max(a_k^2, nu_k^2) and its minimiser.
  double rho_star_sq = 0.0;
  std::size_t k_rho = 0;
  /// Dimension from the first-crossing rule.
  std::size_t kappa_star = 0;
  double r_star4 = 0.0;
  double base = 0.0;
  std::size_t base_argmax = 0;
  bool base_at_edge = false;
};

/// min_k rho_k^2 over k <= k_max with its argmin. Throws DimensionNotFound
/// when the bias and variance curves do not cross below k_max.
std::pair<double, std::size_t> min_radius(const SmoothnessClass& cls,
                                          const NoiseModel& eps, std::size_t n,
                                          std::size_t k_max);

std::vector<RateScanRow> numeric_rate_scan(const SmoothnessClass& cls,
                                           const NoiseModel& eps,
                                           std::span<const std::size_t> n_grid,
                                           std::size_t k_max = 1u << 20);

enum class FitMode {
  power,      // log v = c + beta log n
  power_log,  // log v = c + beta log n + gamma log log n
  log_only,   // log v = c + gamma log log n
};

struct RateFit {
  double slope = 0.0;
  double log_exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

RateFit fit_rate(std::span<const double> ns, std::span<const double> values,
                 FitMode mode = FitMode::power);

/// 2^{lo}, ..., 2^{hi}.
std::vector<std::size_t> dyadic_grid(unsigned lo, unsigned hi);

}  // namespace circdeconv

#endif  // CIRCDECONV_RATES_HPP_
