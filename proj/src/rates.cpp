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


#include "circdeconv/rates.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "circdeconv/errors.hpp"
#include "circdeconv/estimation.hpp"

namespace circdeconv {

namespace {

constexpr std::size_t kBaseScanCap = std::size_t{1} << 26;

// a^2 / (n |eps|^2), +inf where the modulus vanishes.
double variance_side(double a2, const NoiseModel& eps, std::size_t m,
                     double n) {
  double mod = 0.0;
  try {
    mod = eps.modulus(m);
  } catch (const InvalidArgument&) {
    return std::numeric_limits<double>::infinity();
  }
  return a2 / (n * mod * mod);
}

}  // namespace

BaseTerm base_term(const SmoothnessClass& cls, const NoiseModel& eps,
                   std::size_t n, std::size_t m_max) {
  if (n < 2) throw InvalidArgument("base term needs n >= 2");
  const std::size_t cap = m_max == 0 ? kBaseScanCap : m_max;
  const double nn = static_cast<double>(n);
  BaseTerm out;
  out.at_window_edge = true;
  for (std::size_t m = 1; m <= cap; ++m) {
    const double a2 = cls.a(m) * cls.a(m);
    const double a4 = a2 * a2;
    if (m > 1 && a4 < out.value) {
      out.at_window_edge = false;
      break;
    }
    const double v = std::min(a4, variance_side(a2, eps, m, nn));
    if (v > out.value) {
      out.value = v;
      out.argmax = m;
    }
  }
  return out;
}

double Order::evaluate(double n) const {
  return std::pow(n, n_exp) * std::pow(std::log(n), log_exp);
}

std::string Order::describe() const {
  std::ostringstream out;
  out << "n^(" << n_exp << ") (log n)^(" << log_exp << ")";
  return out.str();
}

bool order_less(const Order& a, const Order& b) {
  constexpr double tol = 1e-12;
  if (std::abs(a.n_exp - b.n_exp) > tol) return a.n_exp < b.n_exp;
  if (std::abs(a.log_exp - b.log_exp) > tol) return a.log_exp < b.log_exp;
  return false;
}

Order order_max(const Order& a, const Order& b) {
  return order_less(a, b) ? b : a;
}

void RegimeSpec::validate() const {
  if (smoothness == Smoothness::ordinary && !(s > 0.5)) {
    throw InvalidArgument("ordinary smoothness needs s > 1/2");
  }
  if (smoothness == Smoothness::super_smooth && !(s > 0.0)) {
    throw InvalidArgument("super smoothness needs s > 0");
  }
  if (ill_posedness == IllPosedness::mild && !(p > 0.5)) {
    throw InvalidArgument("mild ill-posedness needs p > 1/2");
  }
  if (ill_posedness == IllPosedness::severe && !(p > 0.0)) {
    throw InvalidArgument("severe ill-posedness needs p > 0");
  }
}

std::string RegimeSpec::describe() const {
  std::ostringstream out;
  out << (smoothness == Smoothness::ordinary ? "ordinary" : "super")
      << "(s=" << s << ")/"
      << (ill_posedness == IllPosedness::mild ? "mild" : "severe")
      << "(p=" << p << ")";
  return out.str();
}

SmoothnessClass RegimeSpec::smoothness_class(double radius) const {
  validate();
  return smoothness == Smoothness::ordinary
             ? SmoothnessClass::ordinary(s, radius)
             : SmoothnessClass::super_smooth(s, radius);
}

NoiseModel RegimeSpec::noise_model() const {
  validate();
  return ill_posedness == IllPosedness::mild ? NoiseModel::mildly(p)
                                             : NoiseModel::severely(p);
}

namespace {

RateReport tabulate(const RegimeSpec& reg, std::size_t n) {
  reg.validate();
  if (n < 2) throw InvalidArgument("rates need n >= 2");
  const double s = reg.s;
  const double p = reg.p;
  using S = RegimeSpec::Smoothness;
  using I = RegimeSpec::IllPosedness;
  RateReport out;
  if (reg.smoothness == S::ordinary && reg.ill_posedness == I::mild) {
    const double d = 4.0 * s + 4.0 * p + 1.0;
    out.r_star4 = {-8.0 * s / d, 0.0};
    out.base_term = s < p ? Order{-2.0 * s / (s + p), 0.0} : Order{-1.0, 0.0};
    out.testing_radius = {-4.0 * s / d, 0.0};
    out.elbow = s - p >= 0.25;
    out.condition = out.elbow ? "s - p >= 1/4: parametric rate"
                              : "s - p < 1/4: nonparametric rate";
  } else if (reg.smoothness == S::ordinary && reg.ill_posedness == I::severe) {
    out.r_star4 = {0.0, -4.0 * s / p};
    out.base_term = {0.0, -4.0 * s / p};
    out.testing_radius = {0.0, -2.0 * s / p};
    out.condition = "logarithmic rate";
  } else if (reg.smoothness == S::super_smooth && reg.ill_posedness == I::mild) {
    out.r_star4 = {-2.0, (4.0 * p + 1.0) / s};
    out.base_term = {-1.0, 0.0};
    out.testing_radius = {-1.0, (4.0 * p + 1.0) / (2.0 * s)};
    out.condition = "base term dominates: parametric rate";
  } else {
    throw InvalidArgument("no closed-form rate for " + reg.describe());
  }
  out.estimation_rate = order_max(out.r_star4, out.base_term);
  return out;
}

}  // namespace

RateReport theoretical_estimation_rate(const RegimeSpec& reg, std::size_t n) {
  return tabulate(reg, n);
}

RateReport theoretical_testing_radius(const RegimeSpec& reg, std::size_t n) {
  RateReport out = tabulate(reg, n);
  out.elbow = false;
  out.condition = "no elbow";
  return out;
}

std::pair<double, std::size_t> min_radius(const SmoothnessClass& cls,
                                          const NoiseModel& eps, std::size_t n,
                                          std::size_t k_max) {
  if (n < 2) throw InvalidArgument("radius needs n >= 2");
  const double nn = static_cast<double>(n);
  double quartic = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double m = eps.modulus(k);
    const double m2 = m * m;
    quartic += 1.0 / (m2 * m2);
    const double a2 = cls.a(k) * cls.a(k);
    const double nu2 = std::sqrt(2.0 * quartic) / nn;
    const double rho = std::max(a2, nu2);
    if (rho < best) {
      best = rho;
      arg = k;
    }
    if (nu2 >= a2) return {best, arg};
  }
  throw DimensionNotFound("radius scan did not cross below k = " +
                          std::to_string(k_max));
}

std::vector<RateScanRow> numeric_rate_scan(const SmoothnessClass& cls,
                                           const NoiseModel& eps,
                                           std::span<const std::size_t> n_grid,
                                           std::size_t k_max) {
  if (!std::is_sorted(n_grid.begin(), n_grid.end())) {
    throw InvalidArgument("n grid must be sorted ascending");
  }
  std::vector<RateScanRow> rows;
  rows.reserve(n_grid.size());
  for (std::size_t n : n_grid) {
    RateScanRow row;
    row.n = n;
    const auto [rho, k_rho] = min_radius(cls, eps, n, k_max);
    row.rho_star_sq = rho;
    row.k_rho = k_rho;
    row.kappa_star = optimal_dim_est(cls, eps, n, k_max);
    row.r_star4 = rho * rho;
    const BaseTerm b = base_term(cls, eps, n);
    row.base = b.value;
    row.base_argmax = b.argmax;
    row.base_at_edge = b.at_window_edge;
    rows.push_back(row);
  }
  return rows;
}

RateFit fit_rate(std::span<const double> ns, std::span<const double> values,
                 FitMode mode) {
  if (ns.size() != values.size()) {
    throw InvalidArgument("fit_rate: size mismatch");
  }
  if (ns.size() < 4) throw InvalidArgument("fit_rate needs >= 4 points");
  const bool uses_log = mode != FitMode::power;
  const Eigen::Index rows = static_cast<Eigen::Index>(ns.size());
  const Eigen::Index cols = mode == FitMode::power_log ? 3 : 2;
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double n = ns[static_cast<std::size_t>(i)];
    const double v = values[static_cast<std::size_t>(i)];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("fit_rate: values must be positive and finite");
    }
    if (!(n > 0.0) || (uses_log && !(n > 1.0))) {
      throw InvalidArgument("fit_rate: n out of range");
    }
    y(i) = std::log(v);
    x(i, 0) = 1.0;
    switch (mode) {
      case FitMode::power:
        x(i, 1) = std::log(n);
        break;
      case FitMode::power_log:
        x(i, 1) = std::log(n);
        x(i, 2) = std::log(std::log(n));
        break;
      case FitMode::log_only:
        x(i, 1) = std::log(std::log(n));
        break;
    }
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  RateFit out;
  out.intercept = beta(0);
  switch (mode) {
    case FitMode::power:
      out.slope = beta(1);
      break;
    case FitMode::power_log:
      out.slope = beta(1);
      out.log_exponent = beta(2);
      break;
    case FitMode::log_only:
      out.log_exponent = beta(1);
      break;
  }
  const Eigen::VectorXd resid = y - x * beta;
  const double ss_res = resid.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

std::vector<std::size_t> dyadic_grid(unsigned lo, unsigned hi) {
  if (lo > hi || hi >= 63) throw InvalidArgument("bad dyadic range");
  std::vector<std::size_t> out;
  for (unsigned e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

}  // namespace circdeconv
