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


#include "circdeconv/serialization.hpp"

#include <cmath>
#include <limits>

#include "circdeconv/errors.hpp"

namespace circdeconv {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double number_or_nan(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

void to_json(nlohmann::json& j, const FourierDensity& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Complex& c : f.coeffs()) {
    coeffs.push_back({c.real(), c.imag()});
  }
  j = nlohmann::json{{"max_freq", f.max_freq()}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, FourierDensity& f) {
  const auto& arr = j.at("coeffs");
  if (!arr.is_array() || arr.empty()) {
    throw InvalidArgument("FourierDensity JSON needs a non-empty coeffs array");
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw InvalidArgument("each coefficient must be [re, im]");
    }
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  if (j.contains("max_freq") &&
      j.at("max_freq").get<std::size_t>() + 1 != coeffs.size()) {
    throw InvalidArgument("max_freq does not match the coefficient count");
  }
  f = FourierDensity::from_coeffs(std::move(coeffs));
}

void to_json(nlohmann::json& j, const TestResult& r) {
  j = nlohmann::json{{"statistic", r.statistic},
                     {"threshold", r.threshold},
                     {"decision", to_string(r.decision)},
                     {"k", r.k},
                     {"nu_k_sq", r.nu_k_sq}};
}

void to_json(nlohmann::json& j, const TestCalibration& c) {
  j = nlohmann::json{{"alpha", c.alpha},     {"C_alpha", c.C_alpha},
                     {"A_tilde", c.A_tilde}, {"A_bar", c.A_bar},
                     {"sup_norm", c.sup_norm}, {"radius", c.radius}};
}

void to_json(nlohmann::json& j, const ConditionCheck& c) {
  j = nlohmann::json{{"label", c.label},
                     {"description", c.description},
                     {"lhs", number_or_null(c.lhs)},
                     {"rhs", number_or_null(c.rhs)},
                     {"holds", c.holds}};
}

void to_json(nlohmann::json& j, const ConditionReport& r) {
  j = nlohmann::json{{"all_hold", r.all_hold()}, {"checks", r.checks}};
}

void to_json(nlohmann::json& j, const Order& o) {
  j = nlohmann::json{{"n_exp", o.n_exp}, {"log_exp", o.log_exp}};
}

void to_json(nlohmann::json& j, const RateReport& r) {
  j = nlohmann::json{{"r_star4", r.r_star4},
                     {"base_term", r.base_term},
                     {"estimation_rate", r.estimation_rate},
                     {"testing_radius", r.testing_radius},
                     {"elbow", r.elbow},
                     {"condition", r.condition}};
}

void to_json(nlohmann::json& j, const RateScanRow& r) {
  j = nlohmann::json{{"n", r.n},
                     {"rho_star_sq", r.rho_star_sq},
                     {"k_rho", r.k_rho},
                     {"kappa_star", r.kappa_star},
                     {"r_star4", r.r_star4},
                     {"base", r.base},
                     {"base_argmax", r.base_argmax},
                     {"base_at_edge", r.base_at_edge}};
}

}  // namespace circdeconv
