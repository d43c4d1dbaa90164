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


#include "circdeconv/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "circdeconv/errors.hpp"
#include "circdeconv/rates.hpp"

namespace circdeconv {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw InvalidArgument(message);
}

// w_j = |eps_j|^{-2} for j = 1..k.
std::vector<double> inverse_sq_weights(const NoiseModel& eps, std::size_t k) {
  std::vector<double> w(k + 1, 0.0);
  for (std::size_t j = 1; j <= k; ++j) {
    const double m = eps.modulus(j);
    w[j] = 1.0 / (m * m);
  }
  return w;
}

}  // namespace

EmpiricalCoeffs empirical_coeffs(std::span<const double> values,
                                 std::size_t j_max) {
  require(!values.empty(), "empirical coefficients need n >= 1");
  require(j_max >= 1, "j_max must be >= 1");
  std::vector<Complex> acc(j_max + 1, Complex{});
  for (double y : values) {
    const double angle = -2.0 * std::numbers::pi * y;
    const Complex step{std::cos(angle), std::sin(angle)};
    Complex z{1.0, 0.0};
    for (std::size_t j = 1; j <= j_max; ++j) {
      z *= step;
      // Renormalise occasionally so the recurrence stays on the unit circle.
      if ((j & 63u) == 0) z /= std::abs(z);
      acc[j] += z;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(values.size());
  for (auto& c : acc) c *= inv_n;
  acc[0] = Complex{1.0, 0.0};
  return EmpiricalCoeffs{values.size(), std::move(acc)};
}

EmpiricalCoeffs empirical_coeffs(const CircularSample& sample,
                                 std::size_t j_max) {
  return empirical_coeffs(sample.values(), j_max);
}

double unbiased_sq_modulus(Complex g_hat, std::size_t n) {
  require(n >= 2, "the bias correction needs n >= 2");
  const double a = std::norm(g_hat);
  return a - (1.0 - a) / static_cast<double>(n - 1);
}

double estimate_q(const EmpiricalCoeffs& g_hat, const NoiseModel& eps,
                  std::size_t k) {
  require(g_hat.n >= 2, "estimation needs n >= 2");
  require(k >= 1, "dimension k must be >= 1");
  require(g_hat.max_freq() >= k, "empirical coefficients do not reach k");
  double total = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double m = eps.modulus(j);
    total += unbiased_sq_modulus(g_hat.coeffs[j], g_hat.n) / (m * m);
  }
  return 2.0 * total;
}

double estimate_q(const CircularSample& sample, const NoiseModel& eps,
                  std::size_t k) {
  require(sample.size() >= 2, "estimation needs n >= 2");
  require(k >= 1, "dimension k must be >= 1");
  return estimate_q(empirical_coeffs(sample, k), eps, k);
}

double estimate_q_clamped(const CircularSample& sample, const NoiseModel& eps,
                          std::size_t k) {
  return std::max(estimate_q(sample, eps, k), 0.0);
}

std::size_t optimal_dim_est(const SmoothnessClass& cls, const NoiseModel& eps,
                            std::size_t n, std::size_t k_max) {
  require(n >= 2, "optimal dimension needs n >= 2");
  const double nn = static_cast<double>(n);
  double quartic = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double m = eps.modulus(k);
    const double m2 = m * m;
    quartic += 1.0 / (m2 * m2);
    const double a2 = cls.a(k) * cls.a(k);
    if (a2 * a2 <= 2.0 * quartic / (nn * nn)) return k;
  }
  throw DimensionNotFound("no k <= " + std::to_string(k_max) +
                          " satisfies the dimension rule at n = " +
                          std::to_string(n));
}

RiskBoundBreakdown risk_upper_bound(const SmoothnessClass& cls,
                                    const NoiseModel& eps, std::size_t n,
                                    std::size_t k, std::size_t base_window) {
  require(n >= 2, "risk bound needs n >= 2");
  require(k >= 1, "dimension k must be >= 1");
  const double r2 = cls.radius() * cls.radius();
  const double c = eps.sup_norm();
  RiskBoundBreakdown out;
  out.constants = {3.0 * r2 * r2, 3.0 * (c + r2), 3.0 * c * r2};
  const double ak2 = cls.a(k) * cls.a(k);
  const double nn = static_cast<double>(n);
  const double nu4 = 2.0 * inverse_quartic_sum(eps, k) / (nn * nn);
  const double base = base_term(cls, eps, n, base_window).value;
  out.bias_sq = out.constants.c1 * ak2 * ak2;
  out.variance_quadratic = out.constants.c2 * nu4;
  out.variance_linear = out.constants.c3 * base;
  out.total = std::max({out.bias_sq, out.variance_quadratic,
                        out.variance_linear});
  return out;
}

RiskBoundBreakdown risk_bound_pointwise(const FourierDensity& f,
                                        const NoiseModel& eps, std::size_t n,
                                        std::size_t k) {
  require(n >= 2, "risk bound needs n >= 2");
  require(k >= 1, "dimension k must be >= 1");
  const double c = eps.sup_norm();
  const double nn = static_cast<double>(n);
  const double tail = quadratic_functional(f) - truncated_functional(f, k);
  double linear = 0.0;
  double quartic = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double m = eps.modulus(j);
    const double m2 = m * m;
    linear += std::norm(f.coeff(static_cast<long>(j))) / m2;
    quartic += 1.0 / (m2 * m2);
  }
  RiskBoundBreakdown out;
  out.constants = {1.0, c, c};
  out.bias_sq = tail * tail;
  out.variance_linear = c * 2.0 * linear / nn;
  out.variance_quadratic = c * 2.0 * quartic / (nn * nn);
  out.total = out.bias_sq + out.variance_linear + out.variance_quadratic;
  return out;
}

FourierDensity observation_density(const FourierDensity& f,
                                   const NoiseModel& eps) {
  if (eps.kind() == NoiseModel::Kind::direct) return f;
  if (eps.density()) return convolve(f, *eps.density());
  std::vector<Complex> g(f.max_freq() + 1);
  g[0] = 1.0;
  for (std::size_t j = 1; j <= f.max_freq(); ++j) {
    g[j] = f.coeffs()[j] * eps.modulus(j);
  }
  return FourierDensity::from_coeffs(std::move(g));
}

HoeffdingComponents hoeffding_components(const FourierDensity& g,
                                         const NoiseModel& eps, std::size_t k) {
  require(k >= 1, "dimension k must be >= 1");
  const std::vector<double> w = inverse_sq_weights(eps, k);
  // Index set 0 < |j| <= k, stored as signed frequencies.
  std::vector<long> freq;
  std::vector<double> weight;
  for (std::size_t j = 1; j <= k; ++j) {
    freq.push_back(static_cast<long>(j));
    freq.push_back(-static_cast<long>(j));
    weight.push_back(w[j]);
    weight.push_back(w[j]);
  }
  double mean = 0.0;
  for (std::size_t a = 0; a < freq.size(); ++a) {
    mean += weight[a] * std::norm(g.coeff(freq[a]));
  }
  // E h_1(Y)^2 = sum_{j,l} w_j w_l g_{-j} g_l g_{j-l}.
  // E h(Y1,Y2)^2 = sum_{j,l} w_j w_l |g_{j-l}|^2.
  Complex h1_sq{};
  double h_sq = 0.0;
  for (std::size_t a = 0; a < freq.size(); ++a) {
    const Complex gj = g.coeff(-freq[a]);
    for (std::size_t b = 0; b < freq.size(); ++b) {
      const double ww = weight[a] * weight[b];
      const Complex diff = g.coeff(freq[a] - freq[b]);
      h1_sq += ww * gj * g.coeff(freq[b]) * diff;
      h_sq += ww * std::norm(diff);
    }
  }
  HoeffdingComponents out;
  out.mean = mean;
  out.xi1 = std::max(h1_sq.real() - mean * mean, 0.0);
  out.xi2 = h_sq - mean * mean;
  return out;
}

double exact_variance(const FourierDensity& g, const NoiseModel& eps,
                      std::size_t n, std::size_t k) {
  require(n >= 2, "variance needs n >= 2");
  const HoeffdingComponents h = hoeffding_components(g, eps, k);
  const double nn = static_cast<double>(n);
  return (4.0 * (nn - 2.0) * h.xi1 + 2.0 * h.xi2) / (nn * (nn - 1.0));
}

double exact_risk(const FourierDensity& f, const NoiseModel& eps,
                  std::size_t n, std::size_t k) {
  const FourierDensity g = observation_density(f, eps);
  const double bias = quadratic_functional(f) - truncated_functional(f, k);
  return exact_variance(g, eps, n, k) + bias * bias;
}

double kernel(double y1, double y2, const NoiseModel& eps, std::size_t k) {
  require(k >= 1, "dimension k must be >= 1");
  double total = 0.0;
  const double d = 2.0 * std::numbers::pi * (y2 - y1);
  for (std::size_t j = 1; j <= k; ++j) {
    const double m = eps.modulus(j);
    total += std::cos(d * static_cast<double>(j)) / (m * m);
  }
  return 2.0 * total;
}

}  // namespace circdeconv
