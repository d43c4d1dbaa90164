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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "circdeconv/errors.hpp"
#include "circdeconv/rng.hpp"
#include "circdeconv/sampling.hpp"

namespace circdeconv {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Rng, ChildrenAreReproducibleAndDistinct) {
  const Rng master(42);
  Rng a = master.child(3);
  Rng b = master.child(3);
  Rng c = master.child(4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    seen.insert(x);
    seen.insert(c());
  }
  EXPECT_EQ(seen.size(), 200u);
  Rng u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(WrapAdd, StaysInUnitInterval) {
  EXPECT_DOUBLE_EQ(wrap_add(0.75, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(wrap_add(0.0, 0.0), 0.0);
  EXPECT_LT(wrap_add(0.5, 0.5 - 1e-17), 1.0);
  EXPECT_GE(wrap_add(1e-17, -1e-17 * 0.5), 0.0);
}

// Kolmogorov distance between the sample and F(x) = x + sum_j
// theta_j sin(2 pi j x) / (pi j) for a real cosine series.
double ks_distance(std::vector<double> v, const std::vector<double>& theta) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double f = v[i];
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double jj = static_cast<double>(j + 1);
      f += theta[j] * std::sin(2 * kPi * jj * v[i]) / (kPi * jj);
    }
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

TEST(Sampling, DensitySamplerMatchesCdf) {
  const std::vector<double> theta{0.3, -0.15};
  const FourierDensity f = FourierDensity::from_real_tail(theta);
  Rng rng(11);
  const CircularSample s = sample_density(f, 20000, rng);
  EXPECT_EQ(s.size(), 20000u);
  std::vector<double> v(s.values().begin(), s.values().end());
  // 0.1% critical value of the Kolmogorov statistic.
  EXPECT_LT(ks_distance(v, theta), 1.95 / std::sqrt(20000.0));
}

TEST(Sampling, ModelSamplerMatchesConvolution) {
  const std::vector<double> theta{0.3};
  const FourierDensity f = FourierDensity::from_real_tail(theta);
  const NoiseModel eps = NoiseModel::mildly_density(1.0, 3);
  const ModelSampler sampler(f, eps);
  Rng rng(5);
  std::vector<double> v(40000);
  sampler.fill(v, rng);
  const std::vector<double> g{0.3 * eps.modulus(1)};
  EXPECT_LT(ks_distance(v, g), 1.95 / std::sqrt(40000.0));
  // E cos(2 pi Y) = g_1.
  double c = 0.0;
  double c2 = 0.0;
  for (double y : v) {
    const double t = std::cos(2 * kPi * y);
    c += t;
    c2 += t * t;
  }
  const double mean = c / v.size();
  const double se = std::sqrt((c2 / v.size() - mean * mean) / v.size());
  EXPECT_NEAR(mean, g[0], 4 * se);
}

TEST(Sampling, RejectsUncertifiedAndSequenceOnlyModels) {
  const std::vector<double> big{0.7};
  Rng rng(1);
  EXPECT_THROW(sample_density(FourierDensity::from_real_tail(big), 10, rng),
               NotCertified);
  EXPECT_THROW(sample_model(FourierDensity::uniform(), NoiseModel::mildly(1.0),
                            10, rng),
               NotCertified);
}

TEST(Sampling, SameSeedSameSample) {
  const NoiseModel eps = NoiseModel::severely_density(1.0, 4);
  Rng a(99);
  Rng b(99);
  const auto s1 = sample_model(FourierDensity::uniform(), eps, 50, a);
  const auto s2 = sample_model(FourierDensity::uniform(), eps, 50, b);
  EXPECT_TRUE(std::equal(s1.values().begin(), s1.values().end(),
                         s2.values().begin()));
}

TEST(SampleIo, CsvAndBinaryRoundTrip) {
  Rng rng(3);
  const auto s = sample_model(FourierDensity::uniform(),
                              NoiseModel::direct(), 25, rng);
  std::stringstream csv;
  write_csv(s, csv);
  const std::vector<double> back = read_csv_values(csv);
  ASSERT_EQ(back.size(), 25u);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i], s.values()[i]);
  }
  std::stringstream bin;
  write_binary(s, bin);
  const CircularSample b = read_binary(bin);
  EXPECT_EQ(b.seed(), s.seed());
  EXPECT_TRUE(std::equal(b.values().begin(), b.values().end(),
                         s.values().begin()));
}

TEST(SampleIo, BinaryRejectsBadMagic) {
  std::stringstream bad("NOTMAGIC........");
  EXPECT_THROW(read_binary(bad), Error);
}

}  // namespace
}  // namespace circdeconv
