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


// The bias-corrected estimator of the quadratic functional, its dimension
// rule and risk bounds.

#ifndef CIRCDECONV_ESTIMATION_HPP_
#define CIRCDECONV_ESTIMATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "circdeconv/fourier.hpp"
#include "circdeconv/sampling.hpp"

namespace circdeconv {

struct EmpiricalCoeffs {
  std::size_t n = 0;
  /// hat g_j for j = 0..j_max; hat g_0 = 1.
  std::vector<Complex> coeffs;

  std::size_t max_freq() const noexcept { return coeffs.size() - 1; }
};

EmpiricalCoeffs empirical_coeffs(std::span<const double> values,
                                 std::size_t j_max);
EmpiricalCoeffs empirical_coeffs(const CircularSample& sample,
                                 std::size_t j_max);

/// |g|^2 - (1 - |g|^2) / (n - 1). Not clamped.
double unbiased_sq_modulus(Complex g_hat, std::size_t n);

/// hat q_k = 2 sum_{j=1}^{k} |eps_j|^{-2} unbiased_sq_modulus(hat g_j, n).
double estimate_q(const EmpiricalCoeffs& g_hat, const NoiseModel& eps,
                  std::size_t k);
double estimate_q(const CircularSample& sample, const NoiseModel& eps,
                  std::size_t k);

/// max(hat q_k, 0). Convenience only.
double estimate_q_clamped(const CircularSample& sample, const NoiseModel& eps,
                          std::size_t k);

/// Smallest k <= k_max with a_k^4 <= n^{-2} 2 sum_{j<=k} |eps_j|^{-4}.
/// Throws DimensionNotFound otherwise.
std::size_t optimal_dim_est(const SmoothnessClass& cls, const NoiseModel& eps,
                            std::size_t n, std::size_t k_max);

struct RiskConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

struct RiskBoundBreakdown {
  double bias_sq = 0.0;
  double variance_linear = 0.0;
  double variance_quadratic = 0.0;
  double total = 0.0;
  RiskConstants constants;
};

/// Uniform bound over the ellipsoid: max(c1 a_k^4, c2 nu_k^4, c3 B) with
/// c1 = 3 R^4, c2 = 3 (||eps|| + R^2), c3 = 3 ||eps|| R^2. The breakdown holds
/// the three scaled terms.
RiskBoundBreakdown risk_upper_bound(const SmoothnessClass& cls,
                                    const NoiseModel& eps, std::size_t n,
                                    std::size_t k,
                                    std::size_t base_window = 0);

/// Pointwise bound for a fixed f: (q - q_k)^2 + (c/n) sum |f_j|^2/|eps_j|^2 +
/// (c/n^2) sum |eps_j|^{-4}, sums over 0 < |j| <= k, c = ||eps||_inf.
RiskBoundBreakdown risk_bound_pointwise(const FourierDensity& f,
                                        const NoiseModel& eps, std::size_t n,
                                        std::size_t k);

/// Coefficients of the observation density g = f (*) eps. For sequence-only
/// noise the moduli are used as (real) coefficients.
FourierDensity observation_density(const FourierDensity& f,
                                   const NoiseModel& eps);

/// Hoeffding components of the kernel
/// h(y1, y2) = sum_{0<|j|<=k} |eps_j|^{-2} e_j(-y1) e_j(y2) under g.
struct HoeffdingComponents {
  double mean = 0.0;  // q_k
  double xi1 = 0.0;   // Var h_1(Y)
  double xi2 = 0.0;   // Var h(Y1, Y2)
};

HoeffdingComponents hoeffding_components(const FourierDensity& g,
                                         const NoiseModel& eps, std::size_t k);

/// Exact Var(hat q_k) = (4 (n-2) xi1 + 2 xi2) / (n (n-1)).
double exact_variance(const FourierDensity& g, const NoiseModel& eps,
                      std::size_t n, std::size_t k);

/// Exact E (hat q_k - q(f))^2 for observation density g = f (*) eps.
double exact_risk(const FourierDensity& f, const NoiseModel& eps,
                  std::size_t n, std::size_t k);

/// h(y1, y2).
double kernel(double y1, double y2, const NoiseModel& eps, std::size_t k);

}  // namespace circdeconv

#endif  // CIRCDECONV_ESTIMATION_HPP_
