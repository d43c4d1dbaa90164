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


#include "circdeconv/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circdeconv/errors.hpp"
#include "circdeconv/estimation.hpp"
#include "circdeconv/testing.hpp"

namespace circdeconv {

namespace {

ConditionCheck inequality(std::string label, std::string description,
                          double lhs, double rhs) {
  const bool holds = std::isfinite(lhs) && lhs <= rhs + kInequalitySlack;
  return {std::move(label), std::move(description), lhs, rhs, holds};
}

ConditionCheck identity(std::string label, std::string description,
                        double lhs, double rhs, double rel_tol = 1e-12) {
  const bool holds = std::abs(lhs - rhs) <=
                     rel_tol * std::max({1e-300, std::abs(lhs), std::abs(rhs)});
  return {std::move(label), std::move(description), lhs, rhs, holds};
}

ConditionCheck finite_l2(const std::vector<const FourierDensity*>& fs) {
  double worst = 0.0;
  for (const auto* f : fs) worst = std::max(worst, 1.0 + quadratic_functional(*f));
  ConditionCheck c{"a", "square-summable coefficients", worst,
                   std::numeric_limits<double>::max(), std::isfinite(worst)};
  return c;
}

ConditionCheck real_valued(const std::vector<const FourierDensity*>& fs) {
  double worst = 0.0;
  for (const auto* f : fs) {
    for (std::size_t j = 1; j <= f->max_freq(); ++j) {
      const long jj = static_cast<long>(j);
      worst = std::max(worst, std::abs(f->coeff(-jj) - std::conj(f->coeff(jj))));
    }
  }
  return inequality("b", "f_{-j} = conj(f_j)", worst, 0.0);
}

ConditionCheck normalised(const std::vector<const FourierDensity*>& fs) {
  double worst = 0.0;
  for (const auto* f : fs) worst = std::max(worst, std::abs(f->coeff(0) - 1.0));
  return inequality("c", "f_0 = 1", worst, 0.0);
}

ConditionCheck positive(const std::vector<const FourierDensity*>& fs) {
  double worst = 0.0;
  for (const auto* f : fs) worst = std::max(worst, f->l1_tail());
  return inequality("d", "sum_{j != 0} |f_j| <= 1", worst, 1.0);
}

ConditionCheck smooth(std::string label,
                      const std::vector<const FourierDensity*>& fs,
                      const SmoothnessClass& cls) {
  double worst = 0.0;
  for (const auto* f : fs) {
    worst = std::max(worst, ellipsoid_membership(*f, cls).weighted_norm_sq);
  }
  const double r2 = cls.radius() * cls.radius();
  return inequality(std::move(label), "2 sum a_j^{-2} |f_j|^2 <= R^2", worst,
                    r2);
}

double safe_modulus(const NoiseModel& eps, std::size_t j) {
  try {
    return eps.modulus(j);
  } catch (const InvalidArgument&) {
    return 0.0;
  }
}

FourierDensity signed_vertex(std::span<const double> theta,
                             const std::vector<bool>& minus) {
  std::vector<double> tail(theta.begin(), theta.end());
  for (std::size_t j = 0; j < tail.size(); ++j) {
    if (minus[j]) tail[j] = -tail[j];
  }
  return FourierDensity::from_real_tail(tail);
}

}  // namespace

bool ConditionReport::all_hold() const noexcept {
  return first_failure() == nullptr;
}

const ConditionCheck* ConditionReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

void ConditionReport::enforce() const {
  if (const auto* c = first_failure()) {
    throw ConditionViolated(c->label, c->description + " (lhs " +
                                          std::to_string(c->lhs) + ", rhs " +
                                          std::to_string(c->rhs) + ")");
  }
}

double find_eta(const SmoothnessClass& cls, const NoiseModel& eps,
                std::size_t n, std::size_t k_max) {
  const std::size_t kappa = optimal_dim_est(cls, eps, n, k_max);
  const double a2 = cls.a(kappa) * cls.a(kappa);
  const double nu2 = nu_k_sq(eps, n, kappa);
  const double eta = std::min(a2, nu2) / std::max(a2, nu2);
  return std::clamp(eta, std::numeric_limits<double>::min(), 1.0);
}

FourierDensity HypercubeFamily::vertex(std::uint64_t mask) const {
  std::vector<bool> minus(theta_.size(), false);
  for (std::size_t j = 0; j < theta_.size() && j < 64; ++j) {
    minus[j] = ((mask >> j) & 1u) != 0;
  }
  return signed_vertex(theta_, minus);
}

FourierDensity HypercubeFamily::random_vertex(Rng& rng) const {
  std::vector<bool> minus(theta_.size(), false);
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    if (j % 64 == 0) bits = rng();
    minus[j] = ((bits >> (j % 64)) & 1u) != 0;
  }
  return signed_vertex(theta_, minus);
}

HypercubeFamily hypercube_family(const SmoothnessClass& cls,
                                 const NoiseModel& eps, std::size_t n,
                                 double alpha, std::size_t k_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  const double summability = cls.summability_constant();
  const std::size_t kappa = optimal_dim_est(cls, eps, n, k_max);
  const double a2 = cls.a(kappa) * cls.a(kappa);
  const double nu2 = nu_k_sq(eps, n, kappa);

  HypercubeFamily fam;
  fam.n_ = n;
  fam.alpha_ = alpha;
  fam.rho_star_sq_ = std::max(a2, nu2);
  fam.eta_ = find_eta(cls, eps, n, k_max);
  const double r2 = cls.radius() * cls.radius();
  const double log_term = std::log1p(2.0 * alpha * alpha);
  fam.zeta_ = std::min({r2, std::sqrt(log_term), 1.0 / summability});

  const double quartic = 2.0 * inverse_quartic_sum(eps, kappa);
  const double scale =
      std::sqrt(fam.zeta_ * fam.eta_ * fam.rho_star_sq_ / quartic);
  fam.theta_.resize(kappa);
  for (std::size_t j = 1; j <= kappa; ++j) {
    const double m = eps.modulus(j);
    fam.theta_[j - 1] = scale / (m * m);
  }

  // The conditions only see |f_j|, so a few sign patterns represent the cube;
  // small cubes are enumerated completely.
  std::vector<FourierDensity> vertices;
  if (kappa <= 10) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << kappa); ++mask) {
      vertices.push_back(fam.vertex(mask));
    }
  } else {
    for (std::uint64_t mask : {std::uint64_t{0}, ~std::uint64_t{0},
                               std::uint64_t{0x5555555555555555ULL},
                               std::uint64_t{0xAAAAAAAAAAAAAAAAULL}}) {
      vertices.push_back(fam.vertex(mask));
    }
  }
  std::vector<const FourierDensity*> ptrs;
  for (const auto& v : vertices) ptrs.push_back(&v);

  auto& checks = fam.conditions_.checks;
  checks.push_back(finite_l2(ptrs));
  checks.push_back(real_valued(ptrs));
  checks.push_back(normalised(ptrs));
  checks.push_back(positive(ptrs));
  checks.push_back(smooth("e", ptrs, cls));

  const double target = fam.zeta_ * fam.eta_ * fam.rho_star_sq_;
  double worst_sep = target;
  for (const auto* f : ptrs) {
    const double q = truncated_functional(*f, kappa);
    if (std::abs(q - target) > std::abs(worst_sep - target)) worst_sep = q;
  }
  checks.push_back(identity("f", "q_kappa(f^tau) = zeta eta rho*^2",
                            worst_sep, target));

  const double nn = static_cast<double>(n);
  double similarity = 0.0;
  for (std::size_t j = 1; j <= kappa; ++j) {
    const double m = eps.modulus(j);
    const double t = fam.theta_[j - 1] * m;
    similarity += 2.0 * t * t * t * t;
  }
  checks.push_back(inequality("g",
                              "n^2 sum |f_j|^4 |eps_j|^4 <= log(1 + 2 alpha^2)",
                              nn * nn * similarity, log_term));
  return fam;
}

HypercubeFamily build_hypercube(const SmoothnessClass& cls,
                                const NoiseModel& eps, std::size_t n,
                                double alpha, std::size_t k_max) {
  HypercubeFamily fam = hypercube_family(cls, eps, n, alpha, k_max);
  fam.conditions().enforce();
  return fam;
}

double chi2_mixture_bound(std::span<const double> theta, std::size_t n) {
  double s4 = 0.0;
  for (double t : theta) {
    if (!std::isfinite(t)) throw InvalidArgument("theta must be finite");
    s4 += t * t * t * t;
  }
  const double nn = static_cast<double>(n);
  const double exponent = 2.0 * nn * nn * s4;
  if (exponent > 700.0) {
    throw OverflowError("chi-square bound exponent " +
                        std::to_string(exponent) + " exceeds 700");
  }
  return std::expm1(exponent);
}

double chi2_mixture_quadrature(std::span<const FourierDensity> components,
                               std::size_t n) {
  if (components.empty()) throw InvalidArgument("no mixture components");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  std::size_t top = 0;
  for (const auto& c : components) top = std::max(top, c.max_freq());
  // (L - 1)^2 has degree <= 2 top per coordinate; M > 2 top nodes integrate it
  // exactly.
  const std::size_t m = 4 * top + 4;
  double cells = static_cast<double>(components.size());
  for (std::size_t i = 0; i < n; ++i) cells *= static_cast<double>(m);
  if (cells > 2e8) throw InvalidArgument("quadrature grid too large");

  std::vector<std::vector<double>> values;
  values.reserve(components.size());
  for (const auto& c : components) values.push_back(evaluate_on_grid(c, m));

  std::vector<std::size_t> idx(n, 0);
  double total = 0.0;
  std::size_t points = 0;
  const double inv_c = 1.0 / static_cast<double>(components.size());
  while (true) {
    double lik = 0.0;
    for (const auto& v : values) {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) prod *= v[idx[i]];
      lik += prod;
    }
    lik *= inv_c;
    total += (lik - 1.0) * (lik - 1.0);
    ++points;
    std::size_t d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
  return total / static_cast<double>(points);
}

double chi2_hypercube_exact(std::span<const double> theta, std::size_t n) {
  if (theta.empty()) throw InvalidArgument("theta must be non-empty");
  if (theta.size() > 16) throw InvalidArgument("at most 16 cube dimensions");
  std::vector<FourierDensity> comps;
  const std::size_t k = theta.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<bool> minus(k);
    for (std::size_t j = 0; j < k; ++j) minus[j] = ((mask >> j) & 1u) != 0;
    comps.push_back(signed_vertex(theta, minus));
  }
  return chi2_mixture_quadrature(comps, n);
}

Chi2Estimate mc_chi2_estimate(const HypercubeFamily& family,
                              const NoiseModel& eps, std::size_t n,
                              std::size_t reps, Rng& rng) {
  if (n < 1 || n > 3) throw InvalidArgument("mc_chi2_estimate needs n <= 3");
  if (family.kappa() > 3) {
    throw InvalidArgument("mc_chi2_estimate needs kappa <= 3");
  }
  std::vector<FourierDensity> comps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << family.kappa());
       ++mask) {
    comps.push_back(observation_density(family.vertex(mask), eps));
  }
  Chi2Estimate out;
  out.quadrature = chi2_mixture_quadrature(comps, n);
  if (reps == 0) return out;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> z(n);
  for (std::size_t r = 0; r < reps; ++r) {
    for (auto& v : z) v = rng.uniform();
    double lik = 0.0;
    for (const auto& c : comps) {
      double prod = 1.0;
      for (double v : z) prod *= evaluate_density(c, v);
      lik += prod;
    }
    lik /= static_cast<double>(comps.size());
    const double term = (lik - 1.0) * (lik - 1.0);
    sum += term;
    sum_sq += term * term;
  }
  const double r = static_cast<double>(reps);
  out.monte_carlo = sum / r;
  const double var = std::max(sum_sq / r - out.monte_carlo * out.monte_carlo,
                              0.0);
  out.monte_carlo_se = std::sqrt(var / r);
  return out;
}

std::pair<double, double> cube_product_identity(
    std::span<const double> j_plus, std::span<const double> j_minus) {
  if (j_plus.size() != j_minus.size() || j_plus.empty()) {
    throw InvalidArgument("cube identity needs equal, non-empty inputs");
  }
  const std::size_t k = j_plus.size();
  if (k > 20) throw InvalidArgument("cube identity enumerates at most 2^20");
  double lhs = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      prod *= ((mask >> j) & 1u) ? j_minus[j] : j_plus[j];
    }
    lhs += prod;
  }
  lhs /= static_cast<double>(std::uint64_t{1} << k);
  double rhs = 1.0;
  for (std::size_t j = 0; j < k; ++j) rhs *= 0.5 * (j_minus[j] + j_plus[j]);
  return {lhs, rhs};
}

double two_point_constant(double radius, TwoPointConstant variant) {
  const double head =
      variant == TwoPointConstant::corrected ? 1.0 / (4.0 * std::sqrt(2.0)) : 0.25;
  return std::min(head, radius / std::sqrt(8.0));
}

TwoPointPair two_point_pair(const SmoothnessClass& cls, const NoiseModel& eps,
                            std::size_t n, std::size_t m,
                            TwoPointConstant variant) {
  if (n < 2) throw InvalidArgument("two-point construction needs n >= 2");
  if (m < 1) throw InvalidArgument("frequency m must be >= 1");
  TwoPointPair out;
  out.m = m;
  out.C = two_point_constant(cls.radius(), variant);
  out.a_m = cls.a(m);
  out.eps_m = safe_modulus(eps, m);
  const double nn = static_cast<double>(n);
  const double spread = nn * out.a_m * out.a_m * out.eps_m * out.eps_m;
  out.xi = spread <= 1.0 ? 1.0 : std::sqrt(1.0 / spread);

  std::vector<double> plus(m, 0.0);
  std::vector<double> minus(m, 0.0);
  plus[m - 1] = (1.0 + out.xi) * out.C * out.a_m;
  minus[m - 1] = (1.0 - out.xi) * out.C * out.a_m;
  out.f_plus = FourierDensity::from_real_tail(plus);
  out.f_minus = FourierDensity::from_real_tail(minus);

  const double dq =
      quadratic_functional(out.f_plus) - quadratic_functional(out.f_minus);
  out.separation_sq = dq * dq;
  const FourierDensity g_plus = observation_density(out.f_plus, eps);
  const FourierDensity g_minus = observation_density(out.f_minus, eps);
  double dist = 0.0;
  const std::size_t top = std::max(g_plus.max_freq(), g_minus.max_freq());
  for (std::size_t j = 1; j <= top; ++j) {
    const long jj = static_cast<long>(j);
    dist += 2.0 * std::norm(g_plus.coeff(jj) - g_minus.coeff(jj));
  }
  out.observation_distance_sq = dist;

  const std::vector<const FourierDensity*> both{&out.f_plus, &out.f_minus};
  auto& checks = out.conditions.checks;
  checks.push_back(finite_l2(both));
  checks.push_back(real_valued(both));
  checks.push_back(normalised(both));
  checks.push_back(positive(both));
  double lower = 0.0;
  for (std::size_t j = 1; j <= out.f_minus.max_freq(); ++j) {
    lower += 2.0 * std::abs(out.f_minus.coeff(static_cast<long>(j))) *
             safe_modulus(eps, j);
  }
  checks.push_back(inequality("e", "sum |f^-_j| |eps_j| <= 1/2", lower, 0.5));
  checks.push_back(smooth("f", both, cls));
  const double c2 = out.C * out.C;
  const double a2 = out.a_m * out.a_m;
  checks.push_back(identity("g", "(p^2 - q^2)^2 = 64 xi^2 C^4 a_m^4",
                            out.separation_sq,
                            64.0 * out.xi * out.xi * c2 * c2 * a2 * a2));
  checks.push_back(inequality("h", "||g+ - g-||^2 <= 1/(4n)", dist,
                              1.0 / (4.0 * nn)));
  return out;
}

TwoPointPair build_two_point(const SmoothnessClass& cls, const NoiseModel& eps,
                             std::size_t n, std::size_t m,
                             TwoPointConstant variant) {
  TwoPointPair out = two_point_pair(cls, eps, n, m, variant);
  out.conditions.enforce();
  return out;
}

double hellinger_reduction_bound(const TwoPointPair& pair, std::size_t n) {
  const double nn = static_cast<double>(n);
  return 0.125 * pair.separation_sq *
         (1.0 - 2.0 * nn * pair.observation_distance_sq);
}

double testing_to_estimation_lb(double rho_sq, double alpha, double a_lower) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  if (rho_sq < 0.0 || a_lower < 0.0) {
    throw InvalidArgument("inputs must be nonnegative");
  }
  const double a2 = a_lower * a_lower;
  return (1.0 - alpha) * a2 * a2 / 8.0 * rho_sq * rho_sq;
}

double first_lower_bound_constant(double eta, double radius, double alpha,
                                  double summability) {
  const double zeta = std::min({radius * radius,
                                std::sqrt(std::log1p(2.0 * alpha * alpha)),
                                1.0 / summability});
  const double a2 = eta * zeta;
  return (1.0 - alpha) * a2 * a2 / 8.0;
}

}  // namespace circdeconv
