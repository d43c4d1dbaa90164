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


// The goodness-of-fit test of the uniform null and its calibration.

#ifndef CIRCDECONV_TESTING_HPP_
#define CIRCDECONV_TESTING_HPP_

#include <cstddef>
#include <string>

#include "circdeconv/estimation.hpp"
#include "circdeconv/fourier.hpp"
#include "circdeconv/sampling.hpp"

namespace circdeconv {

/// nu_k^2 = n^{-1} sqrt(2 sum_{j=1}^{k} |eps_j|^{-4}).
double nu_k_sq(const NoiseModel& eps, std::size_t n, std::size_t k);

struct TestCalibration {
  double alpha = 0.05;
  double C_alpha = 0.0;
  double A_tilde = 0.0;
  double A_bar = 0.0;
  /// ||eps||_inf and R the constants were built from.
  double sup_norm = 1.0;
  double radius = 1.0;

  /// C = 6 ||eps|| / alpha, A~ = C + 2 alpha^{-1} sqrt(12 ||eps||^2 / alpha +
  /// ||eps||), A_bar^2 = R^2 + A~^2.
  static TestCalibration calibrate(double alpha, const NoiseModel& eps,
                                   double radius);
  static TestCalibration calibrate(double alpha, double sup_norm,
                                   double radius);

  /// Arbitrary (C, A~); rejected unless both level conditions hold.
  static TestCalibration custom(double alpha, double C_alpha, double A_tilde,
                                double sup_norm, double radius);

  /// (2C+1)/C^2 ||eps|| <= alpha/2.
  bool type_one_condition() const;
  /// (2C+1)/(A~-C)^2 ||eps|| <= alpha/2.
  bool type_two_condition() const;
};

enum class Decision { accept_null, reject_null };

std::string to_string(Decision d);

struct TestResult {
  double statistic = 0.0;
  double threshold = 0.0;
  Decision decision = Decision::accept_null;
  std::size_t k = 0;
  double nu_k_sq = 0.0;
};

/// Reject when statistic >= threshold.
Decision decide(double statistic, double threshold) noexcept;

TestResult run_test(const CircularSample& sample, const NoiseModel& eps,
                    std::size_t k, const TestCalibration& cal);
TestResult run_test(const EmpiricalCoeffs& g_hat, const NoiseModel& eps,
                    std::size_t k, const TestCalibration& cal);

/// rho_k^2 = max(a_k^2, nu_k^2).
double radius_upper(const SmoothnessClass& cls, const NoiseModel& eps,
                    std::size_t n, std::size_t k);

}  // namespace circdeconv

#endif  // CIRCDECONV_TESTING_HPP_
