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

#include "circdeconv/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "circdeconv/errors.hpp"

namespace circdeconv {

static_assert(std::endian::native == std::endian::little,
              "binary sample format assumes a little-endian host");

namespace {

constexpr char kBinaryMagic[8] = {'C', 'I', 'R', 'C', 'S', 'M', 'P', '1'};

bool is_uniform(const FourierDensity& f) {
  for (std::size_t j = 1; j <= f.max_freq(); ++j) {
    if (f.coeffs()[j] != Complex{}) return false;
  }
  return true;
}

}  // namespace

CircularSample::CircularSample(std::vector<double> values, std::uint64_t seed,
                               std::string provenance)
    : values_(std::move(values)), seed_(seed),
      provenance_(std::move(provenance)) {
  if (values_.empty()) throw InvalidArgument("sample must not be empty");
  for (double v : values_) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw InvalidArgument("sample value outside [0, 1)");
    }
  }
}

InverseCdfSampler::InverseCdfSampler(const FourierDensity& f,
                                     SamplerConfig config)
    : cells_(config.grid_points) {
  if (cells_ < 2) throw InvalidArgument("sampler grid needs >= 2 cells");
  if (!f.certified_nonnegative()) {
    throw NotCertified("density is not certified nonnegative (l1 tail = " +
                       std::to_string(f.l1_tail()) + ")");
  }
  std::vector<double> values = evaluate_on_grid(f, cells_);
  for (double& v : values) {
    if (v < -config.clamp_tolerance) {
      throw InvalidArgument("density is negative on the sampling grid");
    }
    v = std::max(v, 0.0);
  }
  cumulative_.resize(cells_ + 1);
  cumulative_[0] = 0.0;
  const double h = 1.0 / static_cast<double>(cells_);
  for (std::size_t i = 0; i < cells_; ++i) {
    const double right = values[(i + 1) % cells_];
    cumulative_[i + 1] = cumulative_[i] + 0.5 * h * (values[i] + right);
  }
  const double total = cumulative_.back();
  if (!(total > 0.0)) throw InvalidArgument("density integrates to zero");
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;

  // guide_[b] is the first cell whose right edge exceeds b / cells_.
  guide_.resize(cells_ + 1);
  std::size_t cell = 0;
  for (std::size_t b = 0; b <= cells_; ++b) {
    const double level = static_cast<double>(b) / static_cast<double>(cells_);
    while (cell + 1 < cells_ && cumulative_[cell + 1] <= level) ++cell;
    guide_[b] = static_cast<std::uint32_t>(cell);
  }
}

double InverseCdfSampler::invert(double u) const {
  const auto bucket = std::min(
      cells_ - 1, static_cast<std::size_t>(u * static_cast<double>(cells_)));
  const auto lo = cumulative_.begin() + guide_[bucket] + 1;
  const auto hi = cumulative_.begin() + guide_[bucket + 1] + 2;
  // First right edge strictly greater than u.
  const auto it = std::upper_bound(lo, std::min(hi, cumulative_.end()), u);
  const std::size_t cell =
      static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double left = cumulative_[cell];
  const double mass = cumulative_[cell + 1] - left;
  const double frac = mass > 0.0 ? (u - left) / mass : 0.0;
  const double x =
      (static_cast<double>(cell) + frac) / static_cast<double>(cells_);
  return x < 1.0 ? x : 0.0;
}

double InverseCdfSampler::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double pos = x * static_cast<double>(cells_);
  const auto cell = std::min(cells_ - 1, static_cast<std::size_t>(pos));
  const double frac = pos - static_cast<double>(cell);
  return cumulative_[cell] + frac * (cumulative_[cell + 1] - cumulative_[cell]);
}

double wrap_add(double x, double e) noexcept {
  const double y = x + e;
  const double w = y - std::floor(y);
  return w < 1.0 ? w : 0.0;
}

ModelSampler::ModelSampler(const FourierDensity& f, const NoiseModel& eps,
                           SamplerConfig config) {
  if (!eps.samplable()) {
    throw NotCertified("noise model " + eps.describe() +
                       " has no certified density to sample from");
  }
  if (!f.certified_nonnegative()) {
    throw NotCertified("density is not certified nonnegative");
  }
  if (!is_uniform(f)) signal_.emplace(f, config);
  if (eps.density()) {
    if (is_uniform(*eps.density())) {
      noise_uniform_ = true;
    } else {
      noise_.emplace(*eps.density(), config);
    }
  }
}

double ModelSampler::draw(Rng& rng) const {
  const double x = signal_ ? (*signal_)(rng) : rng.uniform();
  double e = 0.0;
  if (noise_) {
    e = (*noise_)(rng);
  } else if (noise_uniform_) {
    e = rng.uniform();
  }
  return wrap_add(x, e);
}

void ModelSampler::fill(std::span<double> out, Rng& rng) const {
  for (double& y : out) y = draw(rng);
}

CircularSample sample_density(const FourierDensity& f, std::size_t n, Rng& rng,
                              SamplerConfig config) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  if (!f.certified_nonnegative()) {
    throw NotCertified("density is not certified nonnegative");
  }
  std::vector<double> values(n);
  if (is_uniform(f)) {
    for (double& v : values) v = rng.uniform();
  } else {
    const InverseCdfSampler sampler(f, config);
    for (double& v : values) v = sampler(rng);
  }
  return CircularSample(std::move(values), rng.seed(), "density");
}

CircularSample sample_model(const FourierDensity& f, const NoiseModel& eps,
                            std::size_t n, Rng& rng, SamplerConfig config) {
  if (n < 2) throw InvalidArgument("model sample size must be >= 2");
  const ModelSampler sampler(f, eps, config);
  std::vector<double> values(n);
  sampler.fill(values, rng);
  return CircularSample(std::move(values), rng.seed(),
                        "model:" + eps.describe());
}

void write_csv(const CircularSample& sample, std::ostream& out) {
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  for (double v : sample.values()) out << v << '\n';
  out.precision(old_precision);
  if (!out) throw IoError("failed to write CSV sample");
}

std::vector<double> read_csv_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream field(line);
    double v = 0.0;
    if (!(field >> v)) {
      throw IoError("unparseable CSV value on line " + std::to_string(line_no));
    }
    values.push_back(v);
  }
  return values;
}

void write_binary(const CircularSample& sample, std::ostream& out) {
  const std::uint64_t n = sample.size();
  const std::uint64_t seed = sample.seed();
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&seed), sizeof(seed));
  out.write(reinterpret_cast<const char*>(sample.values().data()),
            static_cast<std::streamsize>(n * sizeof(double)));
  if (!out) throw IoError("failed to write binary sample");
}

CircularSample read_binary(std::istream& in) {
  char magic[8];
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kBinaryMagic, sizeof(magic)) != 0) {
    throw IoError("not a binary circular sample (bad magic)");
  }
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&seed), sizeof(seed));
  if (!in) throw IoError("truncated binary sample header");
  std::vector<double> values(n);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw IoError("truncated binary sample payload");
  return CircularSample(std::move(values), seed, "binary");
}

}  // namespace circdeconv
