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

// Fourier representations of densities on the circle [0,1).
//
// A density f is stored through its coefficients f_j = <f, e_j> with
// e_j(x) = exp(2 pi i j x), truncated at a maximal frequency K. Only
// j = 0..K are kept; f_{-j} = conj(f_j) is implied, so every stored object is
// the coefficient vector of a real-valued function.

#ifndef CIRCDECONV_FOURIER_HPP_
#define CIRCDECONV_FOURIER_HPP_

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace circdeconv {

using Complex = std::complex<double>;

/// Slack used whenever a defining inequality is checked in floating point.
inline constexpr double kInequalitySlack = 1e-10;

/// Number of grid points used by the pointwise nonnegativity diagnostic.
inline constexpr std::size_t kPositivityGridPoints = 4096;

class FourierDensity {
 public:
  /// The uniform density (all tail coefficients zero, max_freq 0).
  FourierDensity();

  static FourierDensity uniform() { return FourierDensity(); }

  /// Coefficients j = 0..K. coeffs[0] must be exactly 1.
  static FourierDensity from_coeffs(std::vector<Complex> coeffs);

  /// Tail coefficients f_1..f_K; f_0 = 1 is prepended.
  static FourierDensity from_tail(std::span<const Complex> tail);
  static FourierDensity from_real_tail(std::span<const double> tail);

  std::size_t max_freq() const noexcept { return coeffs_.size() - 1; }

  /// f_j for any integer j, zero beyond max_freq.
  Complex coeff(long j) const noexcept;

  /// Stored coefficients, j = 0..max_freq.
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// sum_{j != 0} |f_j|.
  double l1_tail() const noexcept { return l1_tail_; }

  /// True when sum_{j != 0} |f_j| <= 1, which makes f pointwise nonnegative.
  bool certified_nonnegative() const noexcept {
    return l1_tail_ <= 1.0 + kInequalitySlack;
  }

  friend bool operator==(const FourierDensity&, const FourierDensity&) = default;

 private:
  explicit FourierDensity(std::vector<Complex> coeffs);

  std::vector<Complex> coeffs_;
  double l1_tail_ = 0.0;
};

/// Sequence a = (a_j)_{j>=1} and radius R of the ellipsoid
/// { f : 2 sum_j a_j^{-2} |f_j|^2 <= R^2 }.
class SmoothnessClass {
 public:
  enum class Kind { ordinary, super_smooth, explicit_sequence };

  /// a_j = scale * j^{-s}, s > 1/2.
  static SmoothnessClass ordinary(double s, double radius, double scale = 1.0);
  /// a_j = scale * exp(-j^s), s > 0.
  static SmoothnessClass super_smooth(double s, double radius,
                                      double scale = 1.0);
  /// Arbitrary evaluator. The sequence must be positive and non-increasing;
  /// the first `checked_prefix` terms are verified at construction.
  static SmoothnessClass explicit_sequence(
      std::function<double(std::size_t)> a, double radius,
      std::size_t checked_prefix = 64);

  Kind kind() const noexcept { return kind_; }
  double s() const noexcept { return s_; }
  double scale() const noexcept { return scale_; }
  double radius() const noexcept { return radius_; }

  /// a_j for j >= 1.
  double a(std::size_t j) const;

  /// Throws InvalidArgument unless a_1..a_m is positive and non-increasing.
  void validate_prefix(std::size_t m) const;

  /// L_a = 2 sum_j a_j^2. Computed on demand; throws ClassNotSummable when
  /// the partial sums have not settled within the summation window.
  double summability_constant(std::size_t window = std::size_t{1} << 22) const;

  std::string describe() const;

 private:
  SmoothnessClass() = default;

  Kind kind_ = Kind::ordinary;
  double s_ = 0.0;
  double scale_ = 1.0;
  double radius_ = 1.0;
  std::shared_ptr<const std::function<double(std::size_t)>> evaluator_;
};

/// Error density together with the modulus sequence |eps_j| used by the
/// estimator and an upper bound on its sup-norm.
class NoiseModel {
 public:
  enum class Kind {
    mildly,            // |eps_j| = scale * j^{-p}
    severely,          // |eps_j| = scale * exp(-j^p)
    direct,            // no noise, |eps_j| = 1
    explicit_sequence, // user-supplied modulus evaluator
    explicit_density,  // moduli taken from a FourierDensity
  };

  /// Sequence-only models: usable for rates and bounds but not for sampling.
  static NoiseModel mildly(double p, double scale = 1.0);
  static NoiseModel severely(double p, double scale = 1.0);

  /// Density-backed models with coefficients scale * w_j for 1 <= j <= K and
  /// zero beyond. Without an explicit scale the largest scale that keeps the
  /// density certified nonnegative is used.
  static NoiseModel mildly_density(double p, std::size_t max_freq,
                                   std::optional<double> scale = {});
  static NoiseModel severely_density(double p, std::size_t max_freq,
                                     std::optional<double> scale = {});

  /// Direct observation. There is no error density, so the caller supplies the
  /// sup-norm bound the risk and test constants should use (1 is exact under
  /// the uniform null).
  static NoiseModel direct(double sup_norm_bound = 1.0);

  static NoiseModel from_density(FourierDensity eps);

  static NoiseModel explicit_sequence(
      std::function<double(std::size_t)> modulus, double sup_norm);

  /// Same model with a different sup-norm bound (must stay >= 1).
  NoiseModel with_sup_norm(double sup_norm) const;

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double scale() const noexcept { return scale_; }

  /// |eps_j|. Throws InvalidArgument if the modulus vanishes at j.
  double modulus(std::size_t j) const;

  const std::optional<FourierDensity>& density() const noexcept {
    return density_;
  }

  /// Density-backed with a certificate, or direct.
  bool samplable() const noexcept;

  double sup_norm() const noexcept { return sup_norm_; }

  std::string describe() const;

 private:
  NoiseModel() = default;

  Kind kind_ = Kind::direct;
  double p_ = 0.0;
  double scale_ = 1.0;
  double sup_norm_ = 1.0;
  std::optional<FourierDensity> density_;
  std::shared_ptr<const std::function<double(std::size_t)>> evaluator_;
};

/// sum_{j=1}^{k} |eps_j|^{-4}.
double inverse_quartic_sum(const NoiseModel& eps, std::size_t k);

/// g = f (*) eps, i.e. g_j = f_j eps_j, truncated at the smaller max_freq.
FourierDensity convolve(const FourierDensity& f, const FourierDensity& eps);

/// q(f) = ||f - 1||^2 = 2 sum_{j>=1} |f_j|^2.
double quadratic_functional(const FourierDensity& f);

/// q_k(f) = 2 sum_{j=1}^{k} |f_j|^2. Throws for k = 0.
double truncated_functional(const FourierDensity& f, std::size_t k);

/// q_k computed from the observation side: 2 sum_{j=1}^{k} |f_j eps_j|^2 /
/// |eps_j|^2. Agrees with the f-form whenever eps does not vanish.
double truncated_functional(const FourierDensity& f, const NoiseModel& eps,
                            std::size_t k);

/// 2 sum_{j=1}^{k} |g_j|^2 / |eps_j|^2 for observation coefficients g.
double truncated_functional_observed(const FourierDensity& g,
                                     const NoiseModel& eps, std::size_t k);

struct EllipsoidCheck {
  bool member = false;
  /// 2 sum_j a_j^{-2} |f_j|^2.
  double weighted_norm_sq = 0.0;
};

EllipsoidCheck ellipsoid_membership(const FourierDensity& f,
                                    const SmoothnessClass& cls);

/// Real part of sum_{|j|<=K} f_j exp(2 pi i j x).
double evaluate_density(const FourierDensity& f, double x);

/// Values on the uniform grid x_i = i / points, i = 0..points-1.
std::vector<double> evaluate_on_grid(const FourierDensity& f,
                                     std::size_t points);

/// Smallest value on a grid of kPositivityGridPoints points. Diagnostic only;
/// the certificate is FourierDensity::certified_nonnegative.
double grid_minimum(const FourierDensity& f,
                    std::size_t points = kPositivityGridPoints);

}  // namespace circdeconv

#endif  // CIRCDECONV_FOURIER_HPP_
