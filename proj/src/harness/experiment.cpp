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


#include "circdeconv/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>

#include "circdeconv/errors.hpp"
#include "circdeconv/estimation.hpp"
#include "circdeconv/harness/parallel.hpp"
#include "circdeconv/lower_bounds.hpp"
#include "circdeconv/rates.hpp"
#include "circdeconv/sampling.hpp"
#include "circdeconv/testing.hpp"

namespace circdeconv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t stream_id(std::size_t n_index, std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(n_index) << 32) |
         (static_cast<std::uint64_t>(a) << 16) | static_cast<std::uint64_t>(b);
}

// Draws Y = X + e mod 1 where X follows either a fixed density or, for a
// hypercube, the vertex selected by one sign vector per call to fill.
class ScenarioSampler {
 public:
  ScenarioSampler(const FourierDensity& f, const NoiseModel& eps)
      : single_(std::in_place, f, eps) {}

  ScenarioSampler(std::vector<double> theta, const NoiseModel& eps)
      : theta_(std::move(theta)) {
    if (!eps.samplable()) {
      throw InvalidArgument("noise model " + eps.describe() +
                            " cannot be sampled");
    }
    if (eps.density()) noise_.emplace(*eps.density());
    bound_ = 1.0;
    for (double t : theta_) bound_ += 2.0 * std::abs(t);
    if (bound_ > 2.0 + 1e-12) {
      throw InvalidArgument("hypercube vertices are not certified densities");
    }
  }

  void fill(std::span<double> out, Rng& rng) const {
    if (single_) {
      single_->fill(out, rng);
      return;
    }
    std::vector<double> signed_theta(theta_);
    for (double& t : signed_theta) {
      if ((rng() & 1u) != 0) t = -t;
    }
    for (double& y : out) {
      double x = 0.0;
      for (;;) {
        x = rng.uniform();
        double value = 1.0;
        for (std::size_t j = 0; j < signed_theta.size(); ++j) {
          value += 2.0 * signed_theta[j] *
                   std::cos(2.0 * std::numbers::pi * static_cast<double>(j + 1) * x);
        }
        if (rng.uniform() * bound_ <= value) break;
      }
      y = noise_ ? wrap_add(x, (*noise_)(rng)) : x;
    }
  }

 private:
  std::optional<ModelSampler> single_;
  std::vector<double> theta_;
  std::optional<InverseCdfSampler> noise_;
  double bound_ = 1.0;
};

std::size_t resolve_k(const ExperimentConfig& cfg, const SmoothnessClass& cls,
                      const NoiseModel& eps, std::size_t n) {
  if (cfg.k_rule.kind == KRule::Kind::fixed) return cfg.k_rule.k;
  return optimal_dim_est(cls, eps, n, cfg.k_max);
}

// Largest single-frequency density at m inside the ellipsoid that is still
// certified nonnegative.
FourierDensity boundary_density(const SmoothnessClass& cls, std::size_t m) {
  const double amp =
      std::min(cls.radius() * cls.a(m) / std::sqrt(2.0), 0.5);
  std::vector<double> tail(m, 0.0);
  tail[m - 1] = amp;
  return FourierDensity::from_real_tail(tail);
}

double theory_slope(const ExperimentConfig& cfg, bool testing) {
  RegimeSpec reg;
  reg.smoothness = cfg.smoothness.kind == SmoothnessSpec::Kind::ordinary
                       ? RegimeSpec::Smoothness::ordinary
                       : RegimeSpec::Smoothness::super_smooth;
  reg.s = cfg.smoothness.s;
  switch (cfg.noise.kind) {
    case NoiseSpec::Kind::mildly:
      reg.ill_posedness = RegimeSpec::IllPosedness::mild;
      break;
    case NoiseSpec::Kind::severely:
      reg.ill_posedness = RegimeSpec::IllPosedness::severe;
      break;
    default:
      return kNaN;
  }
  reg.p = cfg.noise.p;
  try {
    const RateReport r = testing ? theoretical_testing_radius(reg, 2)
                                 : theoretical_estimation_rate(reg, 2);
    return testing ? r.testing_radius.n_exp : r.estimation_rate.n_exp;
  } catch (const InvalidArgument&) {
    return kNaN;
  }
}

void fit_summary(ExperimentReport& report, double target) {
  report.theory_slope = target;
  report.fitted_slope = kNaN;
  report.fitted_r_squared = kNaN;
  if (report.summary.size() < 4) return;
  std::vector<double> ns;
  std::vector<double> vs;
  for (const auto& s : report.summary) {
    if (!(s.value > 0.0) || !std::isfinite(s.value)) return;
    ns.push_back(static_cast<double>(s.n));
    vs.push_back(s.value);
  }
  const RateFit fit = fit_rate(ns, vs, FitMode::power);
  report.fitted_slope = fit.slope;
  report.fitted_r_squared = fit.r_squared;
}

NoiseModel samplable_noise(const ExperimentConfig& cfg) {
  NoiseModel eps = cfg.noise.build();
  if (!eps.samplable()) {
    throw InvalidArgument(
        "noise model " + eps.describe() +
        " cannot be sampled; give max_freq for a density-backed model");
  }
  return eps;
}

ReportRow blank_row(std::size_t n, const std::string& scenario,
                    std::size_t k) {
  ReportRow row;
  row.n = n;
  row.scenario = scenario;
  row.k = k;
  row.A = kNaN;
  row.estimate_mean = row.estimate_se = kNaN;
  row.risk = row.risk_se = kNaN;
  row.type1 = row.type1_se = kNaN;
  row.type2 = row.type2_se = kNaN;
  row.error_sum = row.error_sum_se = kNaN;
  row.bound = kNaN;
  return row;
}

}  // namespace

ReplicationStats summarize(std::span<const double> values) {
  ReplicationStats out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double r = static_cast<double>(values.size());
  out.mean = sum / r;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
  return out;
}

std::vector<double> replicate(
    std::size_t reps, const Rng& master, std::uint64_t stream,
    std::size_t threads,
    const std::function<double(Rng&, std::size_t)>& fn) {
  std::vector<double> out(reps, 0.0);
  const Rng base = master.child(stream);
  parallel_for_index(reps, threads, [&](std::size_t i) {
    Rng rng = base.child(i);
    out[i] = fn(rng, i);
  });
  return out;
}

const std::vector<std::string>& risk_scenarios() {
  static const std::vector<std::string> names{
      "null",      "boundary_low",   "boundary_kappa",
      "hypercube", "two_point_plus", "two_point_minus"};
  return names;
}

const std::vector<std::string>& test_scenarios() {
  static const std::vector<std::string> names{"hypercube", "spike"};
  return names;
}

ExperimentReport run_risk_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const SmoothnessClass cls = cfg.smoothness.build();
  const NoiseModel eps = samplable_noise(cfg);
  const std::vector<std::string> scenarios =
      cfg.scenarios.empty() ? risk_scenarios() : cfg.scenarios;
  for (const auto& s : scenarios) {
    if (std::find(risk_scenarios().begin(), risk_scenarios().end(), s) ==
        risk_scenarios().end()) {
      throw InvalidArgument("unknown risk scenario '" + s + "'");
    }
  }

  ExperimentReport report;
  report.kind = "risk";
  report.config = nlohmann::json::parse(canonical_config(cfg));
  report.config_hash = config_hash(cfg);
  report.seed = cfg.seed;
  const Rng master(cfg.seed);

  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    const std::size_t n = cfg.n_grid[ni];
    const std::size_t k = resolve_k(cfg, cls, eps, n);
    const double bound = risk_upper_bound(cls, eps, n, k).total;

    SummaryRow summary;
    summary.n = n;
    summary.value = -1.0;
    summary.bound = bound;
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      const std::string& name = scenarios[si];
      std::unique_ptr<ScenarioSampler> sampler;
      double q = 0.0;
      if (name == "hypercube") {
        const HypercubeFamily fam =
            build_hypercube(cls, eps, n, cfg.alpha, cfg.k_max);
        const std::vector<double> theta(fam.theta().begin(), fam.theta().end());
        for (double t : theta) q += 2.0 * t * t;
        sampler = std::make_unique<ScenarioSampler>(theta, eps);
      } else {
        FourierDensity f = FourierDensity::uniform();
        if (name == "boundary_low") {
          f = boundary_density(cls, 1);
        } else if (name == "boundary_kappa") {
          f = boundary_density(cls, k + 1);
        } else if (name != "null") {
          const std::size_t m = base_term(cls, eps, n).argmax;
          const TwoPointPair pair = build_two_point(cls, eps, n, m);
          f = name == "two_point_plus" ? pair.f_plus : pair.f_minus;
        }
        q = quadratic_functional(f);
        sampler = std::make_unique<ScenarioSampler>(f, eps);
      }
      const std::vector<double> est = replicate(
          cfg.replications, master, stream_id(ni, si, 0), cfg.threads,
          [&](Rng& rng, std::size_t) {
            std::vector<double> values(n);
            sampler->fill(values, rng);
            return estimate_q(empirical_coeffs(values, k), eps, k);
          });
      std::vector<double> loss(est.size());
      for (std::size_t r = 0; r < est.size(); ++r) {
        loss[r] = (est[r] - q) * (est[r] - q);
      }
      const ReplicationStats e = summarize(est);
      const ReplicationStats l = summarize(loss);
      ReportRow row = blank_row(n, name, k);
      row.q = q;
      row.estimate_mean = e.mean;
      row.estimate_se = e.se;
      row.risk = l.mean;
      row.risk_se = l.se;
      row.bound = bound;
      report.rows.push_back(row);
      if (l.mean > summary.value) {
        summary.value = l.mean;
        summary.value_se = l.se;
        summary.argmax = name;
      }
    }
    report.summary.push_back(summary);
  }
  fit_summary(report, theory_slope(cfg, false));
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

ExperimentReport run_test_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const SmoothnessClass cls = cfg.smoothness.build();
  const NoiseModel eps = samplable_noise(cfg);
  const std::vector<std::string> scenarios =
      cfg.scenarios.empty() ? std::vector<std::string>{"hypercube"}
                            : cfg.scenarios;
  for (const auto& s : scenarios) {
    if (std::find(test_scenarios().begin(), test_scenarios().end(), s) ==
        test_scenarios().end()) {
      throw InvalidArgument("unknown test scenario '" + s + "'");
    }
  }
  const std::vector<LadderEntry> ladder =
      cfg.a_ladder.empty()
          ? std::vector<LadderEntry>{{LadderEntry::Kind::a_lower, 0.0},
                                     {LadderEntry::Kind::a_upper, 0.0}}
          : cfg.a_ladder;
  const TestCalibration cal =
      TestCalibration::calibrate(cfg.alpha, eps, cls.radius());

  ExperimentReport report;
  report.kind = "test";
  report.config = nlohmann::json::parse(canonical_config(cfg));
  report.config_hash = config_hash(cfg);
  report.seed = cfg.seed;
  const Rng master(cfg.seed);

  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    const std::size_t n = cfg.n_grid[ni];
    const std::size_t k = resolve_k(cfg, cls, eps, n);
    const double rho_sq = radius_upper(cls, eps, n, k);
    const HypercubeFamily fam =
        hypercube_family(cls, eps, n, cfg.alpha, cfg.k_max);
    const double a_lower = std::sqrt(fam.a_lower_sq());

    auto reject_rate = [&](const ScenarioSampler& sampler, std::uint64_t stream,
                           std::vector<double>* stats) {
      std::vector<double> statistic(cfg.replications);
      const std::vector<double> rejects = replicate(
          cfg.replications, master, stream, cfg.threads,
          [&](Rng& rng, std::size_t i) {
            std::vector<double> values(n);
            sampler.fill(values, rng);
            const TestResult t =
                run_test(empirical_coeffs(values, k), eps, k, cal);
            statistic[i] = t.statistic;
            return t.decision == Decision::reject_null ? 1.0 : 0.0;
          });
      if (stats) *stats = std::move(statistic);
      return rejects;
    };

    const ScenarioSampler null_sampler(FourierDensity::uniform(), eps);
    const ReplicationStats type1 =
        summarize(reject_rate(null_sampler, stream_id(ni, 0, 0), nullptr));

    SummaryRow summary;
    summary.n = n;
    summary.value = type1.mean;
    summary.value_se = type1.se;
    summary.argmax = "null";
    summary.bound = rho_sq;
    report.summary.push_back(summary);

    const double quartic = 2.0 * inverse_quartic_sum(eps, k);
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      for (std::size_t ai = 0; ai < ladder.size(); ++ai) {
        const LadderEntry& entry = ladder[ai];
        const double A = entry.kind == LadderEntry::Kind::a_lower ? a_lower
                         : entry.kind == LadderEntry::Kind::a_upper
                             ? cal.A_bar
                             : entry.value;
        const double sep = A * std::sqrt(rho_sq);
        std::vector<double> theta;
        if (scenarios[si] == "hypercube") {
          theta.resize(k);
          for (std::size_t j = 1; j <= k; ++j) {
            const double m = eps.modulus(j);
            theta[j - 1] = sep / std::sqrt(quartic) / (m * m);
          }
        } else {
          theta.push_back(sep / std::sqrt(2.0));
        }
        // Every vertex shares the moduli of the all-plus vertex.
        const FourierDensity vertex = FourierDensity::from_real_tail(theta);
        const bool feasible = vertex.certified_nonnegative() &&
                              ellipsoid_membership(vertex, cls).member;

        ReportRow row = blank_row(n, scenarios[si], k);
        row.ladder = entry.label();
        row.A = A;
        row.q = quadratic_functional(vertex);
        row.feasible = feasible;
        row.type1 = type1.mean;
        row.type1_se = type1.se;
        row.bound = rho_sq;
        if (feasible) {
          const ScenarioSampler sampler =
              scenarios[si] == "hypercube" ? ScenarioSampler(theta, eps)
                                           : ScenarioSampler(vertex, eps);
          std::vector<double> stats;
          std::vector<double> accept =
              reject_rate(sampler, stream_id(ni, si + 1, ai), &stats);
          for (double& v : accept) v = 1.0 - v;
          const ReplicationStats type2 = summarize(accept);
          const ReplicationStats est = summarize(stats);
          row.estimate_mean = est.mean;
          row.estimate_se = est.se;
          row.type2 = type2.mean;
          row.type2_se = type2.se;
          row.error_sum = type1.mean + type2.mean;
          row.error_sum_se = std::hypot(type1.se, type2.se);
        } else {
          // The separated alternative set is empty: only the type I error
          // contributes to the testing risk.
          row.error_sum = type1.mean;
          row.error_sum_se = type1.se;
        }
        report.rows.push_back(row);
      }
    }
  }
  fit_summary(report, theory_slope(cfg, true));
  // The summary value for tests is the type I error; the fitted slope refers
  // to the radius column instead.
  {
    std::vector<double> ns;
    std::vector<double> vs;
    for (const auto& s : report.summary) {
      ns.push_back(static_cast<double>(s.n));
      vs.push_back(s.bound);
    }
    if (ns.size() >= 4) {
      const RateFit fit = fit_rate(ns, vs, FitMode::power);
      report.fitted_slope = fit.slope;
      report.fitted_r_squared = fit.r_squared;
    }
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace circdeconv
