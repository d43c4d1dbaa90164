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

#include "circdeconv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "circdeconv/errors.hpp"

namespace circdeconv {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Relative size of the last half of the window below which partial sums are
// considered settled.
constexpr double kSettledTailFraction = 1e-3;

// Sums term(j) for j = 1.. until the terms are negligible or the window is
// exhausted. Returns the sum and the contribution of the second half of the
// window (0 when it stopped early).
struct WindowSum {
  double total = 0.0;
  double late_half = 0.0;
  bool stopped_early = false;
};

template <class Term>
WindowSum window_sum(Term term, std::size_t window) {
  WindowSum out;
  for (std::size_t j = 1; j <= window; ++j) {
    const double t = term(j);
    out.total += t;
    if (j > window / 2) out.late_half += t;
    if (t <= 1e-18 * out.total && j > 8) {
      out.stopped_early = true;
      out.late_half = 0.0;
      break;
    }
  }
  return out;
}

double severe_weight_sum(double p, std::size_t max_freq) {
  double total = 0.0;
  for (std::size_t j = 1; j <= max_freq; ++j) {
    const double t = std::exp(-std::pow(static_cast<double>(j), p));
    total += t;
    if (t < 1e-18 * total) break;
  }
  return total;
}

std::vector<Complex> density_coeffs_from_weights(std::size_t max_freq,
                                                 double scale,
                                                 const auto& weight) {
  std::vector<Complex> coeffs(max_freq + 1);
  coeffs[0] = 1.0;
  for (std::size_t j = 1; j <= max_freq; ++j) coeffs[j] = scale * weight(j);
  return coeffs;
}

}  // namespace

// ---------------------------------------------------------------------------
// FourierDensity

FourierDensity::FourierDensity() : coeffs_{Complex{1.0, 0.0}} {}

FourierDensity::FourierDensity(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), "density needs at least the j = 0 coefficient");
  require(coeffs_[0] == Complex{1.0, 0.0}, "f_0 must equal 1");
  l1_tail_ = 0.0;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    require(finite(coeffs_[j]), "non-finite Fourier coefficient");
    l1_tail_ += 2.0 * std::abs(coeffs_[j]);
  }
}

FourierDensity FourierDensity::from_coeffs(std::vector<Complex> coeffs) {
  return FourierDensity(std::move(coeffs));
}

FourierDensity FourierDensity::from_tail(std::span<const Complex> tail) {
  std::vector<Complex> coeffs;
  coeffs.reserve(tail.size() + 1);
  coeffs.emplace_back(1.0, 0.0);
  coeffs.insert(coeffs.end(), tail.begin(), tail.end());
  return FourierDensity(std::move(coeffs));
}

FourierDensity FourierDensity::from_real_tail(std::span<const double> tail) {
  std::vector<Complex> coeffs;
  coeffs.reserve(tail.size() + 1);
  coeffs.emplace_back(1.0, 0.0);
  for (double v : tail) coeffs.emplace_back(v, 0.0);
  return FourierDensity(std::move(coeffs));
}

Complex FourierDensity::coeff(long j) const noexcept {
  const auto m = static_cast<std::size_t>(j < 0 ? -j : j);
  if (m >= coeffs_.size()) return {};
  return j < 0 ? std::conj(coeffs_[m]) : coeffs_[m];
}

// ---------------------------------------------------------------------------
// SmoothnessClass

SmoothnessClass SmoothnessClass::ordinary(double s, double radius,
                                          double scale) {
  require(s > 0.5, "ordinary smoothness requires s > 1/2");
  require(radius > 0.0 && std::isfinite(radius), "radius must be positive");
  require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
  SmoothnessClass cls;
  cls.kind_ = Kind::ordinary;
  cls.s_ = s;
  cls.radius_ = radius;
  cls.scale_ = scale;
  return cls;
}

SmoothnessClass SmoothnessClass::super_smooth(double s, double radius,
                                              double scale) {
  require(s > 0.0, "super smoothness requires s > 0");
  require(radius > 0.0 && std::isfinite(radius), "radius must be positive");
  require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
  SmoothnessClass cls;
  cls.kind_ = Kind::super_smooth;
  cls.s_ = s;
  cls.radius_ = radius;
  cls.scale_ = scale;
  return cls;
}

SmoothnessClass SmoothnessClass::explicit_sequence(
    std::function<double(std::size_t)> a, double radius,
    std::size_t checked_prefix) {
  require(static_cast<bool>(a), "empty smoothness evaluator");
  require(radius > 0.0 && std::isfinite(radius), "radius must be positive");
  SmoothnessClass cls;
  cls.kind_ = Kind::explicit_sequence;
  cls.radius_ = radius;
  cls.evaluator_ =
      std::make_shared<const std::function<double(std::size_t)>>(std::move(a));
  cls.validate_prefix(checked_prefix);
  return cls;
}

double SmoothnessClass::a(std::size_t j) const {
  require(j >= 1, "a_j is defined for j >= 1");
  const double x = static_cast<double>(j);
  double value = 0.0;
  switch (kind_) {
    case Kind::ordinary:
      value = scale_ * std::pow(x, -s_);
      break;
    case Kind::super_smooth:
      value = scale_ * std::exp(-std::pow(x, s_));
      break;
    case Kind::explicit_sequence:
      value = (*evaluator_)(j);
      break;
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("a_" + std::to_string(j) +
                          " is not strictly positive and finite");
  }
  return value;
}

void SmoothnessClass::validate_prefix(std::size_t m) const {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j <= m; ++j) {
    const double v = a(j);
    if (v > prev) {
      throw InvalidArgument("smoothness sequence increases at j = " +
                            std::to_string(j));
    }
    prev = v;
  }
}

double SmoothnessClass::summability_constant(std::size_t window) const {
  if (kind_ == Kind::ordinary) {
    return 2.0 * scale_ * scale_ * std::riemann_zeta(2.0 * s_);
  }
  const WindowSum sum =
      window_sum([this](std::size_t j) { return a(j) * a(j); }, window);
  if (!std::isfinite(sum.total) ||
      (!sum.stopped_early && sum.late_half > kSettledTailFraction * sum.total)) {
    throw ClassNotSummable("sum of a_j^2 has not settled within " +
                           std::to_string(window) + " terms");
  }
  return 2.0 * sum.total;
}

std::string SmoothnessClass::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::ordinary:
      out << "ordinary(s=" << s_ << ",scale=" << scale_ << ")";
      break;
    case Kind::super_smooth:
      out << "super(s=" << s_ << ",scale=" << scale_ << ")";
      break;
    case Kind::explicit_sequence:
      out << "explicit";
      break;
  }
  out << ",R=" << radius_;
  return out.str();
}

// ---------------------------------------------------------------------------
// NoiseModel

NoiseModel NoiseModel::mildly(double p, double scale) {
  require(p > 0.5, "mildly ill-posed noise requires p > 1/2");
  require(scale > 0.0 && scale <= 1.0, "noise scale must lie in (0, 1]");
  NoiseModel eps;
  eps.kind_ = Kind::mildly;
  eps.p_ = p;
  eps.scale_ = scale;
  eps.sup_norm_ = p > 1.0 ? 1.0 + 2.0 * scale * std::riemann_zeta(p)
                          : std::numeric_limits<double>::infinity();
  return eps;
}

NoiseModel NoiseModel::severely(double p, double scale) {
  require(p > 0.0, "severely ill-posed noise requires p > 0");
  require(scale > 0.0 && scale <= 1.0, "noise scale must lie in (0, 1]");
  NoiseModel eps;
  eps.kind_ = Kind::severely;
  eps.p_ = p;
  eps.scale_ = scale;
  eps.sup_norm_ =
      1.0 + 2.0 * scale * severe_weight_sum(p, std::size_t{1} << 26);
  return eps;
}

NoiseModel NoiseModel::mildly_density(double p, std::size_t max_freq,
                                      std::optional<double> scale) {
  require(p > 0.5, "mildly ill-posed noise requires p > 1/2");
  require(max_freq >= 1, "noise density needs max_freq >= 1");
  auto weight = [p](std::size_t j) {
    return std::pow(static_cast<double>(j), -p);
  };
  double weights = 0.0;
  for (std::size_t j = 1; j <= max_freq; ++j) weights += weight(j);
  const double c = scale.value_or(1.0 / (2.0 * weights));
  require(c > 0.0, "noise scale must be positive");
  NoiseModel eps = from_density(FourierDensity::from_coeffs(
      density_coeffs_from_weights(max_freq, c, weight)));
  eps.kind_ = Kind::mildly;
  eps.p_ = p;
  eps.scale_ = c;
  return eps;
}

NoiseModel NoiseModel::severely_density(double p, std::size_t max_freq,
                                        std::optional<double> scale) {
  require(p > 0.0, "severely ill-posed noise requires p > 0");
  require(max_freq >= 1, "noise density needs max_freq >= 1");
  auto weight = [p](std::size_t j) {
    return std::exp(-std::pow(static_cast<double>(j), p));
  };
  double weights = 0.0;
  for (std::size_t j = 1; j <= max_freq; ++j) weights += weight(j);
  const double c = scale.value_or(1.0 / (2.0 * weights));
  require(c > 0.0, "noise scale must be positive");
  NoiseModel eps = from_density(FourierDensity::from_coeffs(
      density_coeffs_from_weights(max_freq, c, weight)));
  eps.kind_ = Kind::severely;
  eps.p_ = p;
  eps.scale_ = c;
  return eps;
}

NoiseModel NoiseModel::direct(double sup_norm_bound) {
  require(sup_norm_bound >= 1.0, "sup-norm bound must be >= 1");
  NoiseModel eps;
  eps.kind_ = Kind::direct;
  eps.sup_norm_ = sup_norm_bound;
  return eps;
}

NoiseModel NoiseModel::from_density(FourierDensity density) {
  NoiseModel eps;
  eps.kind_ = Kind::explicit_density;
  // ||eps||_inf <= sum_j |eps_j|.
  eps.sup_norm_ = 1.0 + density.l1_tail();
  eps.density_ = std::move(density);
  return eps;
}

NoiseModel NoiseModel::explicit_sequence(
    std::function<double(std::size_t)> modulus, double sup_norm) {
  require(static_cast<bool>(modulus), "empty modulus evaluator");
  require(sup_norm >= 1.0, "sup-norm bound must be >= 1");
  NoiseModel eps;
  eps.kind_ = Kind::explicit_sequence;
  eps.sup_norm_ = sup_norm;
  eps.evaluator_ = std::make_shared<const std::function<double(std::size_t)>>(
      std::move(modulus));
  return eps;
}

NoiseModel NoiseModel::with_sup_norm(double sup_norm) const {
  require(sup_norm >= 1.0, "sup-norm bound must be >= 1");
  NoiseModel copy = *this;
  copy.sup_norm_ = sup_norm;
  return copy;
}

double NoiseModel::modulus(std::size_t j) const {
  if (j == 0) return 1.0;
  double value = 0.0;
  if (density_) {
    value = std::abs(density_->coeff(static_cast<long>(j)));
  } else {
    const double x = static_cast<double>(j);
    switch (kind_) {
      case Kind::mildly:
        value = scale_ * std::pow(x, -p_);
        break;
      case Kind::severely:
        value = scale_ * std::exp(-std::pow(x, p_));
        break;
      case Kind::direct:
        value = 1.0;
        break;
      case Kind::explicit_sequence:
        value = (*evaluator_)(j);
        break;
      case Kind::explicit_density:
        break;
    }
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("noise modulus |eps_" + std::to_string(j) +
                          "| vanishes for " + describe());
  }
  return value;
}

bool NoiseModel::samplable() const noexcept {
  if (kind_ == Kind::direct) return true;
  return density_ && density_->certified_nonnegative();
}

std::string NoiseModel::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::mildly:
      out << "mildly(p=" << p_ << ",scale=" << scale_;
      break;
    case Kind::severely:
      out << "severely(p=" << p_ << ",scale=" << scale_;
      break;
    case Kind::direct:
      out << "direct(";
      break;
    case Kind::explicit_sequence:
      out << "explicit-sequence(";
      break;
    case Kind::explicit_density:
      out << "explicit-density(";
      break;
  }
  if (density_) {
    out << (kind_ == Kind::explicit_density ? "" : ",")
        << "K=" << density_->max_freq();
  }
  out << ")";
  return out.str();
}

double inverse_quartic_sum(const NoiseModel& eps, std::size_t k) {
  double total = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double m = eps.modulus(j);
    const double m2 = m * m;
    total += 1.0 / (m2 * m2);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Operations

FourierDensity convolve(const FourierDensity& f, const FourierDensity& eps) {
  const std::size_t k = std::min(f.max_freq(), eps.max_freq());
  std::vector<Complex> g(k + 1);
  g[0] = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    g[j] = f.coeffs()[j] * eps.coeffs()[j];
  }
  return FourierDensity::from_coeffs(std::move(g));
}

double quadratic_functional(const FourierDensity& f) {
  double total = 0.0;
  for (std::size_t j = 1; j <= f.max_freq(); ++j) {
    total += std::norm(f.coeffs()[j]);
  }
  return 2.0 * total;
}

double truncated_functional(const FourierDensity& f, std::size_t k) {
  require(k >= 1, "truncation level k must be >= 1");
  double total = 0.0;
  const std::size_t top = std::min(k, f.max_freq());
  for (std::size_t j = 1; j <= top; ++j) total += std::norm(f.coeffs()[j]);
  return 2.0 * total;
}

double truncated_functional(const FourierDensity& f, const NoiseModel& eps,
                            std::size_t k) {
  require(k >= 1, "truncation level k must be >= 1");
  double total = 0.0;
  const std::size_t top = std::min(k, f.max_freq());
  for (std::size_t j = 1; j <= top; ++j) {
    const double m = eps.modulus(j);
    total += std::norm(f.coeffs()[j] * m) / (m * m);
  }
  return 2.0 * total;
}

double truncated_functional_observed(const FourierDensity& g,
                                     const NoiseModel& eps, std::size_t k) {
  require(k >= 1, "truncation level k must be >= 1");
  double total = 0.0;
  const std::size_t top = std::min(k, g.max_freq());
  for (std::size_t j = 1; j <= top; ++j) {
    const double m = eps.modulus(j);
    total += std::norm(g.coeffs()[j]) / (m * m);
  }
  return 2.0 * total;
}

EllipsoidCheck ellipsoid_membership(const FourierDensity& f,
                                    const SmoothnessClass& cls) {
  EllipsoidCheck out;
  double total = 0.0;
  for (std::size_t j = 1; j <= f.max_freq(); ++j) {
    const double mag = std::norm(f.coeffs()[j]);
    if (mag == 0.0) continue;
    const double a = cls.a(j);
    total += mag / (a * a);
  }
  out.weighted_norm_sq = 2.0 * total;
  const double r2 = cls.radius() * cls.radius();
  out.member =
      out.weighted_norm_sq <= r2 + kInequalitySlack * std::max(1.0, r2);
  return out;
}

double evaluate_density(const FourierDensity& f, double x) {
  const auto coeffs = f.coeffs();
  const double theta = 2.0 * std::numbers::pi * x;
  double tail = 0.0;
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    const double phase = theta * static_cast<double>(j);
    tail += coeffs[j].real() * std::cos(phase) -
            coeffs[j].imag() * std::sin(phase);
  }
  return 1.0 + 2.0 * tail;
}

std::vector<double> evaluate_on_grid(const FourierDensity& f,
                                     std::size_t points) {
  require(points >= 1, "grid needs at least one point");
  const auto coeffs = f.coeffs();
  std::vector<double> cos_table(points), sin_table(points);
  for (std::size_t t = 0; t < points; ++t) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) /
                         static_cast<double>(points);
    cos_table[t] = std::cos(phase);
    sin_table[t] = std::sin(phase);
  }
  std::vector<double> values(points, 1.0);
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    const double re = 2.0 * coeffs[j].real();
    const double im = 2.0 * coeffs[j].imag();
    if (re == 0.0 && im == 0.0) continue;
    const std::size_t step = j % points;
    std::size_t t = 0;
    for (std::size_t i = 0; i < points; ++i) {
      values[i] += re * cos_table[t] - im * sin_table[t];
      t += step;
      if (t >= points) t -= points;
    }
  }
  return values;
}

double grid_minimum(const FourierDensity& f, std::size_t points) {
  const auto values = evaluate_on_grid(f, points);
  return *std::min_element(values.begin(), values.end());
}

}  // namespace circdeconv
