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


// Lower-bound constructions: hypercube hypotheses, chi-square mixture bounds,
// the two-point pair and the testing-to-estimation reduction.

#ifndef CIRCDECONV_LOWER_BOUNDS_HPP_
#define CIRCDECONV_LOWER_BOUNDS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circdeconv/fourier.hpp"
#include "circdeconv/rng.hpp"

namespace circdeconv {

/// One verified inequality, lhs <= rhs (or lhs == rhs for identities).
struct ConditionCheck {
  std::string label;
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ConditionReport {
  std::vector<ConditionCheck> checks;

  bool all_hold() const noexcept;
  /// First failing check, or nullptr.
  const ConditionCheck* first_failure() const noexcept;
  /// Throws ConditionViolated on the first failure.
  void enforce() const;
};

/// eta = min(a^2, nu^2) / max(a^2, nu^2) at kappa*.
double find_eta(const SmoothnessClass& cls, const NoiseModel& eps,
                std::size_t n, std::size_t k_max = std::size_t{1} << 20);

class HypercubeFamily {
 public:
  /// |f_j| for j = 1..kappa.
  std::span<const double> theta() const noexcept { return theta_; }
  std::size_t kappa() const noexcept { return theta_.size(); }
  std::size_t n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double zeta() const noexcept { return zeta_; }
  double eta() const noexcept { return eta_; }
  /// rho*^2 = max(a_kappa^2, nu_kappa^2).
  double rho_star_sq() const noexcept { return rho_star_sq_; }
  /// A_lower^2 = zeta * eta.
  double a_lower_sq() const noexcept { return zeta_ * eta_; }

  /// Vertex with tau_j = -1 exactly where bit (j-1) of mask is set.
  FourierDensity vertex(std::uint64_t mask) const;
  FourierDensity random_vertex(Rng& rng) const;

  const ConditionReport& conditions() const noexcept { return conditions_; }

 private:
  friend HypercubeFamily hypercube_family(const SmoothnessClass&,
                                          const NoiseModel&, std::size_t,
                                          double, std::size_t);
  std::vector<double> theta_;
  std::size_t n_ = 0;
  double alpha_ = 0.0;
  double zeta_ = 0.0;
  double eta_ = 0.0;
  double rho_star_sq_ = 0.0;
  ConditionReport conditions_;
};

/// Builds the family and evaluates conditions (a)-(g) without throwing.
HypercubeFamily hypercube_family(const SmoothnessClass& cls,
                                 const NoiseModel& eps, std::size_t n,
                                 double alpha,
                                 std::size_t k_max = std::size_t{1} << 20);

/// As hypercube_family, but throws ConditionViolated on any failed condition.
HypercubeFamily build_hypercube(const SmoothnessClass& cls,
                                const NoiseModel& eps, std::size_t n,
                                double alpha,
                                std::size_t k_max = std::size_t{1} << 20);

/// exp(2 n^2 sum theta_j^4) - 1. OverflowError if the exponent exceeds 700.
double chi2_mixture_bound(std::span<const double> theta, std::size_t n);

/// chi^2 of the uniform mixture over `components` (each a density of one
/// observation) against the uniform density, for n i.i.d. observations.
/// Exact tensor quadrature; cost grows like (4K+4)^n.
double chi2_mixture_quadrature(std::span<const FourierDensity> components,
                               std::size_t n);

/// Mixture over the sign vertices of theta (real coefficients tau_j theta_j).
double chi2_hypercube_exact(std::span<const double> theta, std::size_t n);

struct Chi2Estimate {
  double quadrature = 0.0;
  double monte_carlo = 0.0;
  double monte_carlo_se = 0.0;
};

/// chi^2 of the observation-side mixture of a hypercube family; n <= 3 and
/// kappa <= 3.
Chi2Estimate mc_chi2_estimate(const HypercubeFamily& family,
                              const NoiseModel& eps, std::size_t n,
                              std::size_t reps, Rng& rng);

/// 2^{-k} sum_tau prod_j J_j^{tau_j} and prod_j (J_j^- + J_j^+)/2.
std::pair<double, double> cube_product_identity(std::span<const double> j_plus,
                                                std::span<const double> j_minus);

enum class TwoPointConstant {
  /// C = 1/(4 sqrt 2) ^ R / sqrt 8; keeps the similarity condition valid.
  corrected,
  /// C = 1/4 ^ R / sqrt 8.
  printed,
};

double two_point_constant(double radius, TwoPointConstant variant);

struct TwoPointPair {
  FourierDensity f_plus;
  FourierDensity f_minus;
  std::size_t m = 0;
  double xi = 0.0;
  double C = 0.0;
  double a_m = 0.0;
  double eps_m = 0.0;
  /// (q(f+) - q(f-))^2 from the coefficients.
  double separation_sq = 0.0;
  /// ||f+ (*) eps - f- (*) eps||^2 over all integer frequencies.
  double observation_distance_sq = 0.0;
  ConditionReport conditions;
};

TwoPointPair two_point_pair(const SmoothnessClass& cls, const NoiseModel& eps,
                            std::size_t n, std::size_t m,
                            TwoPointConstant variant =
                                TwoPointConstant::corrected);

/// As two_point_pair, throwing ConditionViolated on the first failure.
TwoPointPair build_two_point(const SmoothnessClass& cls, const NoiseModel& eps,
                             std::size_t n, std::size_t m,
                             TwoPointConstant variant =
                                 TwoPointConstant::corrected);

/// (1/8) (p^2 - q^2)^2 (1 - 2 n ||g+ - g-||^2).
double hellinger_reduction_bound(const TwoPointPair& pair, std::size_t n);

/// (1 - alpha) A^4 rho^4 / 8 with rho^4 = rho_sq^2.
double testing_to_estimation_lb(double rho_sq, double alpha, double a_lower);

/// Constant of the first estimation lower bound, (1 - alpha) (eta zeta)^2 / 8.
double first_lower_bound_constant(double eta, double radius, double alpha,
                                  double summability);

}  // namespace circdeconv

#endif  // CIRCDECONV_LOWER_BOUNDS_HPP_
