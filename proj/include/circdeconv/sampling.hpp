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

// Drawing observations from coefficient-specified circular densities and
// simulating Y = X + eps mod 1.

#ifndef CIRCDECONV_SAMPLING_HPP_
#define CIRCDECONV_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circdeconv/fourier.hpp"
#include "circdeconv/rng.hpp"

namespace circdeconv {

struct SamplerConfig {
  /// Number of CDF cells on [0, 1).
  std::size_t grid_points = std::size_t{1} << 14;
  /// Density values in [-clamp_tolerance, 0) are treated as 0; anything more
  /// negative is rejected.
  double clamp_tolerance = 1e-9;
};

/// n observations in [0, 1) plus where they came from.
class CircularSample {
 public:
  CircularSample(std::vector<double> values, std::uint64_t seed,
                 std::string provenance);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::vector<double> values_;
  std::uint64_t seed_;
  std::string provenance_;
};

/// Inverse-CDF sampler: the CDF is tabulated by trapezoid integration of the
/// density on a uniform grid and inverted by binary search with linear
/// interpolation inside the cell.
class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const FourierDensity& f, SamplerConfig config = {});

  double invert(double u) const;
  double operator()(Rng& rng) const { return invert(rng.uniform()); }

  /// Tabulated CDF, linearly interpolated.
  double cdf(double x) const;

 private:
  std::size_t cells_;
  std::vector<double> cumulative_;  // cells_ + 1 entries, 0 .. 1
  std::vector<std::uint32_t> guide_;
};

/// Fractional part of x + e.
double wrap_add(double x, double e) noexcept;

/// Draws X ~ f and eps ~ noise and returns wrap_add(X, eps). The tabulated
/// samplers are built once and reused across draws.
class ModelSampler {
 public:
  ModelSampler(const FourierDensity& f, const NoiseModel& eps,
               SamplerConfig config = {});

  double draw(Rng& rng) const;
  void fill(std::span<double> out, Rng& rng) const;

 private:
  std::optional<InverseCdfSampler> signal_;  // empty: uniform
  std::optional<InverseCdfSampler> noise_;   // empty: no noise
  bool noise_uniform_ = false;
};

/// n i.i.d. draws from f. Throws NotCertified unless f carries the l1
/// nonnegativity certificate, InvalidArgument for n = 0.
CircularSample sample_density(const FourierDensity& f, std::size_t n, Rng& rng,
                              SamplerConfig config = {});

/// n i.i.d. observations of the convolution model. Requires n >= 2 and a
/// samplable noise model.
CircularSample sample_model(const FourierDensity& f, const NoiseModel& eps,
                            std::size_t n, Rng& rng, SamplerConfig config = {});

/// One value per line, 17 significant digits.
void write_csv(const CircularSample& sample, std::ostream& out);
std::vector<double> read_csv_values(std::istream& in);

/// Header: 8-byte magic "CIRCSMP1", uint64 n, uint64 seed (little endian);
/// payload: n IEEE-754 doubles.
void write_binary(const CircularSample& sample, std::ostream& out);
CircularSample read_binary(std::istream& in);

}  // namespace circdeconv

#endif  // CIRCDECONV_SAMPLING_HPP_
