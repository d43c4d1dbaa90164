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


#include "circdeconv/testing.hpp"

#include <algorithm>
#include <cmath>

#include "circdeconv/errors.hpp"

namespace circdeconv {

namespace {

void check_level(double alpha, double sup_norm) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  if (!(sup_norm >= 1.0) || !std::isfinite(sup_norm)) {
    throw InvalidArgument("calibration needs a finite ||eps||_inf >= 1");
  }
}

}  // namespace

double nu_k_sq(const NoiseModel& eps, std::size_t n, std::size_t k) {
  if (n < 2) throw InvalidArgument("nu_k needs n >= 2");
  if (k < 1) throw InvalidArgument("dimension k must be >= 1");
  return std::sqrt(2.0 * inverse_quartic_sum(eps, k)) /
         static_cast<double>(n);
}

TestCalibration TestCalibration::calibrate(double alpha, const NoiseModel& eps,
                                           double radius) {
  return calibrate(alpha, eps.sup_norm(), radius);
}

TestCalibration TestCalibration::calibrate(double alpha, double sup_norm,
                                           double radius) {
  check_level(alpha, sup_norm);
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  TestCalibration cal;
  cal.alpha = alpha;
  cal.sup_norm = sup_norm;
  cal.radius = radius;
  cal.C_alpha = 6.0 * sup_norm / alpha;
  cal.A_tilde =
      cal.C_alpha +
      2.0 / alpha *
          std::sqrt(12.0 * sup_norm * sup_norm / alpha + sup_norm);
  cal.A_bar = std::sqrt(radius * radius + cal.A_tilde * cal.A_tilde);
  if (!cal.type_one_condition() || !cal.type_two_condition()) {
    throw Error("calibration constants violate the level conditions");
  }
  return cal;
}

TestCalibration TestCalibration::custom(double alpha, double C_alpha,
                                        double A_tilde, double sup_norm,
                                        double radius) {
  check_level(alpha, sup_norm);
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  if (!(C_alpha > 0.0) || !(A_tilde > C_alpha)) {
    throw InvalidArgument("need 0 < C_alpha < A_tilde");
  }
  TestCalibration cal;
  cal.alpha = alpha;
  cal.sup_norm = sup_norm;
  cal.radius = radius;
  cal.C_alpha = C_alpha;
  cal.A_tilde = A_tilde;
  cal.A_bar = std::sqrt(radius * radius + A_tilde * A_tilde);
  if (!cal.type_one_condition()) {
    throw InvalidArgument("C_alpha too small for level alpha");
  }
  if (!cal.type_two_condition()) {
    throw InvalidArgument("A_tilde too small for level alpha");
  }
  return cal;
}

bool TestCalibration::type_one_condition() const {
  const double lhs = (2.0 * C_alpha + 1.0) / (C_alpha * C_alpha) * sup_norm;
  return lhs <= alpha / 2.0 + kInequalitySlack;
}

bool TestCalibration::type_two_condition() const {
  const double gap = A_tilde - C_alpha;
  const double lhs = (2.0 * C_alpha + 1.0) / (gap * gap) * sup_norm;
  return lhs <= alpha / 2.0 + kInequalitySlack;
}

std::string to_string(Decision d) {
  return d == Decision::reject_null ? "reject_null" : "accept_null";
}

Decision decide(double statistic, double threshold) noexcept {
  return statistic >= threshold ? Decision::reject_null
                                : Decision::accept_null;
}

TestResult run_test(const EmpiricalCoeffs& g_hat, const NoiseModel& eps,
                    std::size_t k, const TestCalibration& cal) {
  TestResult out;
  out.k = k;
  out.statistic = estimate_q(g_hat, eps, k);
  out.nu_k_sq = nu_k_sq(eps, g_hat.n, k);
  out.threshold = cal.C_alpha * out.nu_k_sq;
  out.decision = decide(out.statistic, out.threshold);
  return out;
}

TestResult run_test(const CircularSample& sample, const NoiseModel& eps,
                    std::size_t k, const TestCalibration& cal) {
  if (sample.size() < 2) throw InvalidArgument("testing needs n >= 2");
  if (k < 1) throw InvalidArgument("dimension k must be >= 1");
  return run_test(empirical_coeffs(sample, k), eps, k, cal);
}

double radius_upper(const SmoothnessClass& cls, const NoiseModel& eps,
                    std::size_t n, std::size_t k) {
  const double a2 = cls.a(k) * cls.a(k);
  return std::max(a2, nu_k_sq(eps, n, k));
}

}  // namespace circdeconv
