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


// JSON forms of the core value types.

#ifndef CIRCDECONV_SERIALIZATION_HPP_
#define CIRCDECONV_SERIALIZATION_HPP_

#include <json.hpp>

#include "circdeconv/fourier.hpp"
#include "circdeconv/lower_bounds.hpp"
#include "circdeconv/rates.hpp"
#include "circdeconv/testing.hpp"

namespace circdeconv {

/// {"max_freq": K, "coeffs": [[re, im], ...]} for j = 0..K.
void to_json(nlohmann::json& j, const FourierDensity& f);
void from_json(const nlohmann::json& j, FourierDensity& f);

void to_json(nlohmann::json& j, const TestResult& r);
void to_json(nlohmann::json& j, const TestCalibration& c);
void to_json(nlohmann::json& j, const ConditionCheck& c);
void to_json(nlohmann::json& j, const ConditionReport& r);
void to_json(nlohmann::json& j, const Order& o);
void to_json(nlohmann::json& j, const RateReport& r);
void to_json(nlohmann::json& j, const RateScanRow& r);

/// Finite doubles as numbers, non-finite values as null.
nlohmann::json number_or_null(double v);
/// Inverse of number_or_null; null maps to NaN.
double number_or_nan(const nlohmann::json& j);

}  // namespace circdeconv

#endif  // CIRCDECONV_SERIALIZATION_HPP_
