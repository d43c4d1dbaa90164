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


// Acceptance suite: prints one PASS/FAIL line per criterion and exits with 3
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "circdeconv/errors.hpp"
#include "circdeconv/estimation.hpp"
#include "circdeconv/fourier.hpp"
#include "circdeconv/harness/config.hpp"
#include "circdeconv/harness/experiment.hpp"
#include "circdeconv/harness/report.hpp"
#include "circdeconv/lower_bounds.hpp"
#include "circdeconv/rates.hpp"
#include "circdeconv/rng.hpp"
#include "circdeconv/sampling.hpp"
#include "circdeconv/testing.hpp"

namespace {

using namespace circdeconv;

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

std::size_t worker_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void verdict(const std::string& id, bool pass, const std::string& what,
             const std::string& detail, double seconds) {
  std::printf("CRITERION %-3s %s  %s [%s] (%.1f s)\n", id.c_str(),
              pass ? "PASS" : "FAIL", what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void info(const std::string& text) {
  std::printf("    info: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct MomentSummary {
  double mean;
  double se;
  double var;
  double var_se;
};

MomentSummary moments(const std::vector<double>& x) {
  const double r = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= r;
  double s2 = 0.0;
  for (double v : x) s2 += (v - m) * (v - m);
  const double var = s2 / (r - 1.0);
  double s4 = 0.0;
  for (double v : x) {
    const double d = (v - m) * (v - m) - var;
    s4 += d * d;
  }
  return {m, std::sqrt(var / r), var, std::sqrt(s4 / (r * (r - 1.0)))};
}

// Monte Carlo draws of hat q_k under f (*) eps.
std::vector<double> estimator_draws(const FourierDensity& f,
                                    const NoiseModel& eps, std::size_t n,
                                    std::size_t k, std::size_t reps,
                                    std::uint64_t seed) {
  const ModelSampler sampler(f, eps);
  return replicate(reps, Rng(seed), 0, worker_threads(),
                   [&](Rng& rng, std::size_t) {
                     std::vector<double> y(n);
                     sampler.fill(y, rng);
                     return estimate_q(empirical_coeffs(y, k), eps, k);
                   });
}

// 1. Unbiasedness of hat q_k for q_k(f).
void criterion_1() {
  Timer t;
  const std::vector<double> tail{0.2, -0.12, 0.08};
  const FourierDensity f = FourierDensity::from_real_tail(tail);
  const std::vector<std::pair<std::string, NoiseModel>> noises{
      {"mild", NoiseModel::mildly_density(1.0, 4)},
      {"severe", NoiseModel::severely_density(1.0, 4)}};
  bool pass = true;
  double worst = 0.0;
  std::uint64_t seed = 100;
  for (const auto& [name, eps] : noises) {
    for (std::size_t n : {10u, 100u}) {
      for (std::size_t k : {1u, 3u}) {
        const auto draws = estimator_draws(f, eps, n, k, 100000, ++seed);
        const MomentSummary m = moments(draws);
        const double target = truncated_functional(f, k);
        const double z = std::abs(m.mean - target) / m.se;
        worst = std::max(worst, z);
        pass = pass && z <= 3.0;
        info(name + fmt(" n=%g k=%g", n, k) +
             fmt(": mean %.6g, q_k %.6g, |z| %.2f", m.mean, target, z));
      }
    }
  }
  const double secs = t.seconds();
  verdict("1", pass && secs < 120.0,
          "MC mean of the estimator within 3 SE of q_k(f), 8 configurations, "
          "1e5 reps",
          fmt("max |z| = %.2f", worst), secs);
}

// 2. Equality with the explicit pair-sum U-statistic.
void criterion_2() {
  Timer t;
  Rng rng(2);
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 2 + rng() % 39;
    const std::size_t k = 1 + rng() % 6;
    const double p = 0.6 + 1.4 * rng.uniform();
    const double scale = 0.2 + 0.8 * rng.uniform();
    const NoiseModel eps = inst % 2 ? NoiseModel::mildly(p, scale)
                                    : NoiseModel::severely(0.3 * p, scale);
    std::vector<double> y(n);
    for (double& v : y) v = rng.uniform();
    double pair = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (i == l) continue;
        for (std::size_t j = 1; j <= k; ++j) {
          const double m = eps.modulus(j);
          pair += 2.0 * std::cos(2.0 * kPi * j * (y[i] - y[l])) / (m * m);
        }
      }
    }
    pair /= static_cast<double>(n) * (n - 1);
    const double est = estimate_q(empirical_coeffs(y, k), eps, k);
    worst = std::max(worst, std::abs(est - pair) / std::max(1.0, std::abs(pair)));
  }
  verdict("2", worst <= 1e-10,
          "estimator equals the pair-sum U-statistic on 100 samples, n <= 40",
          fmt("max scaled difference %.2e", worst), t.seconds());
}

// 3. Null variance against nu_k^4.
void criterion_3() {
  Timer t;
  const std::size_t n = 100;
  const std::size_t k = 3;
  const std::vector<std::pair<std::string, NoiseModel>> noises{
      {"direct", NoiseModel::direct()},
      {"mild p=1", NoiseModel::mildly_density(1.0, 4)},
      {"mild p=2", NoiseModel::mildly_density(2.0, 4)},
      {"severe p=1", NoiseModel::severely_density(1.0, 4)}};
  bool pass = true;
  bool exact_ok = true;
  double worst_ratio = 0.0;
  std::uint64_t seed = 300;
  for (const auto& [name, eps] : noises) {
    const auto draws =
        estimator_draws(FourierDensity::uniform(), eps, n, k, 100000, ++seed);
    const MomentSummary m = moments(draws);
    const double nu2 = nu_k_sq(eps, n, k);
    const double nu4 = nu2 * nu2;
    const double exact = exact_variance(FourierDensity::uniform(), eps, n, k);
    pass = pass && m.var <= nu4 + 3.0 * m.var_se;
    exact_ok = exact_ok && std::abs(m.var - exact) <= 3.0 * m.var_se;
    worst_ratio = std::max(worst_ratio, m.var / nu4);
    info(name + fmt(": empirical var / nu^4 = %.4f, exact var / nu^4 = %.4f, "
                    "var SE / nu^4 = %.4f",
                    m.var / nu4, exact / nu4, m.var_se / nu4));
  }
  info(std::string("empirical variance within 3 SE of the exact U-statistic "
                   "variance 4 sum|eps|^-4 / (n(n-1)) for all models: ") +
       (exact_ok ? "yes" : "no"));
  verdict("3", pass,
          "null variance <= nu_k^4 (+3 SE), 4 noise models, 1e5 reps",
          fmt("max var / nu^4 = %.4f", worst_ratio), t.seconds());
}

ExperimentConfig base_config(double s, double p, std::size_t noise_freq) {
  ExperimentConfig cfg;
  cfg.smoothness.kind = SmoothnessSpec::Kind::ordinary;
  cfg.smoothness.s = s;
  cfg.smoothness.radius = 1.0;
  cfg.noise.kind = NoiseSpec::Kind::mildly;
  cfg.noise.p = p;
  cfg.noise.max_freq = noise_freq;
  cfg.threads = worker_threads();
  return cfg;
}

// 4. Calibration: type I error and error sum at A_bar.
void criterion_4() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double alpha : {0.05, 0.2}) {
    ExperimentConfig cfg = base_config(1.0, 1.0, 8);
    cfg.n_grid = {1000};
    cfg.replications = 10000;
    cfg.alpha = alpha;
    cfg.seed = 400 + static_cast<std::uint64_t>(alpha * 100);
    cfg.a_ladder = {{LadderEntry::Kind::a_upper, 0.0}};
    cfg.scenarios = {"hypercube", "spike"};
    const ExperimentReport rep = run_test_experiment(cfg);
    const SummaryRow& s = rep.summary.front();
    pass = pass && s.value <= alpha;
    for (const auto& r : rep.rows) {
      pass = pass && r.error_sum <= alpha + 3.0 * r.error_sum_se;
      info(fmt("alpha=%.2f A=%.4g: ", alpha, r.A) + r.scenario +
           (r.feasible ? " feasible" : " outside the class (no alternative)") +
           fmt(", type I %.4f, error sum %.4f", r.type1, r.error_sum));
    }
    detail += fmt("alpha %.2f: type I %.4f; ", alpha, s.value);
  }
  const double secs = t.seconds();
  verdict("4", pass && secs < 300.0,
          "type I <= alpha and error sum at A_bar <= alpha + 3 SE, s=p=1, "
          "n=1000, 1e4 reps",
          detail, secs);
}

// 5. Indistinguishability at A_lower.
void criterion_5() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double alpha : {0.05, 0.2}) {
    ExperimentConfig cfg = base_config(1.0, 1.0, 8);
    cfg.n_grid = {1000};
    cfg.replications = 10000;
    cfg.alpha = alpha;
    cfg.seed = 500 + static_cast<std::uint64_t>(alpha * 100);
    cfg.a_ladder = {{LadderEntry::Kind::a_lower, 0.0}};
    cfg.scenarios = {"hypercube"};
    const SmoothnessClass cls = cfg.smoothness.build();
    const NoiseModel eps = cfg.noise.build();
    const HypercubeFamily fam = hypercube_family(cls, eps, 1000, alpha);
    const bool conditions = fam.conditions().all_hold();
    const ExperimentReport rep = run_test_experiment(cfg);
    const ReportRow& r = rep.rows.front();
    const bool ok = r.feasible && conditions &&
                    r.error_sum >= 1.0 - alpha - 3.0 * r.error_sum_se;
    pass = pass && ok;
    detail += fmt("alpha %.2f: error sum %.4f, ", alpha, r.error_sum) +
              (conditions ? "conditions hold; " : "conditions fail; ");
    for (const auto& c : fam.conditions().checks) {
      info(fmt("alpha=%.2f condition ", alpha) + c.label + " (" +
           c.description + "): " + (c.holds ? "true" : "false"));
    }
  }
  verdict("5", pass,
          "error sum at A_lower >= 1 - alpha - 3 SE under hypercube mixtures; "
          "conditions (a)-(g) hold",
          detail, t.seconds());
}

struct ScanFit {
  RateFit estimation;
  RateFit radius;
  bool base_dominates;
};

ScanFit scan_fit(const SmoothnessClass& cls, const NoiseModel& eps,
                 const std::vector<std::size_t>& grid, FitMode mode) {
  const auto rows = numeric_rate_scan(cls, eps, grid);
  std::vector<double> ns;
  std::vector<double> est;
  std::vector<double> rad;
  bool dominates = true;
  for (const auto& r : rows) {
    ns.push_back(static_cast<double>(r.n));
    est.push_back(std::max(r.r_star4, r.base));
    rad.push_back(r.rho_star_sq);
    dominates = dominates && r.base >= r.r_star4;
  }
  return {fit_rate(ns, est, mode), fit_rate(ns, rad, mode), dominates};
}

// 6. Rate slopes.
void criterion_6() {
  const std::vector<std::size_t> grid = dyadic_grid(8, 22);
  {
    Timer t;
    const ScanFit f = scan_fit(SmoothnessClass::ordinary(1.0, 1.0),
                               NoiseModel::mildly(1.0), grid, FitMode::power);
    verdict("6a", std::abs(f.estimation.slope + 8.0 / 9.0) <= 0.05,
            "estimation slope -8/9 +- 0.05, s=p=1, n in 2^8..2^22",
            fmt("fitted %.4f", f.estimation.slope), t.seconds());
    verdict("6b", std::abs(f.radius.slope + 4.0 / 9.0) <= 0.05,
            "testing radius slope -4/9 +- 0.05, s=p=1, n in 2^8..2^22",
            fmt("fitted %.4f", f.radius.slope), t.seconds());
  }
  {
    Timer t;
    bool pass = true;
    std::string detail;
    for (const auto& [s, p] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
      const ScanFit f = scan_fit(SmoothnessClass::ordinary(s, 1.0),
                                 NoiseModel::severely(p), grid,
                                 FitMode::log_only);
      const double target = -4.0 * s / p;
      pass = pass && std::abs(f.estimation.log_exponent - target) <= 0.05;
      detail += fmt("s=%g p=%g: fitted %.4f", s, p, f.estimation.log_exponent) +
                fmt(" vs %.4f; ", target);
      const ScanFit pl = scan_fit(SmoothnessClass::ordinary(s, 1.0),
                                  NoiseModel::severely(p), grid,
                                  FitMode::power_log);
      info(fmt("s=%g p=%g power+log fit: n exponent %.4f", s, p,
               pl.estimation.slope) +
           fmt(", log exponent %.4f", pl.estimation.log_exponent));
    }
    verdict("6c", pass,
            "ordinary/severe log-exponent -4s/p +- 0.05, n in 2^8..2^22",
            detail, t.seconds());
  }
  {
    Timer t;
    ExperimentConfig cfg = base_config(1.0, 1.0, 16);
    cfg.n_grid = dyadic_grid(8, 13);
    cfg.replications = 1000;
    cfg.seed = 600;
    const ExperimentReport rep = run_risk_experiment(cfg);
    for (const auto& s : rep.summary) {
      info(fmt("n=%g: max risk %.4e (+- %.1e), ", s.n, s.value, s.value_se) +
           "at " + s.argmax + fmt(", bound %.4e", s.bound));
    }
    verdict("6d", std::abs(rep.fitted_slope + 8.0 / 9.0) <= 0.1,
            "Monte Carlo maximal-risk slope -8/9 +- 0.1, s=p=1, n in "
            "2^8..2^13, 1e3 reps",
            fmt("fitted %.4f (R^2 %.3f)", rep.fitted_slope,
                rep.fitted_r_squared),
            t.seconds());
  }
}

// 7. Elbow for s - p >= 1/4.
void criterion_7() {
  Timer t;
  const ScanFit f =
      scan_fit(SmoothnessClass::ordinary(2.0, 1.0), NoiseModel::mildly(1.0),
               dyadic_grid(8, 22), FitMode::power);
  const bool pass = f.base_dominates &&
                    std::abs(f.estimation.slope + 1.0) <= 0.05 &&
                    std::abs(f.radius.slope + 8.0 / 13.0) <= 0.05;
  verdict("7", pass,
          "s=2, p=1: base term dominates r*^4, estimation slope -1 +- 0.05, "
          "testing slope -8/13 +- 0.05",
          fmt("base dominates %g, estimation %.4f, testing %.4f",
              f.base_dominates ? 1.0 : 0.0, f.estimation.slope,
              f.radius.slope),
          t.seconds());
}

// 8. Product identity over the hypercube.
void criterion_8() {
  Timer t;
  Rng rng(8);
  double worst = 0.0;
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t k = 1 + rng() % 12;
    std::vector<double> jp(k);
    std::vector<double> jm(k);
    for (std::size_t j = 0; j < k; ++j) {
      jp[j] = 0.1 + 2.0 * rng.uniform();
      jm[j] = 0.1 + 2.0 * rng.uniform();
    }
    const auto [lhs, rhs] = cube_product_identity(jp, jm);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  verdict("8", worst <= 1e-12,
          "hypercube product identity on 1e3 random instances, k <= 12",
          fmt("max relative error %.2e", worst), t.seconds());
}

// 9. Chi-square bound for hypercube mixtures.
void criterion_9() {
  Timer t;
  bool pass = true;
  int count = 0;
  double worst_ratio = 0.0;
  double worst_oracle = 0.0;
  std::vector<double> values;
  for (int i = 1; i <= 30; ++i) values.push_back(0.01 * i);
  for (std::size_t n : {1u, 2u}) {
    for (double a : values) {
      for (std::size_t kappa : {1u, 2u}) {
        for (double b : kappa == 1 ? std::vector<double>{0.0} : values) {
          std::vector<double> theta{a};
          if (kappa == 2) theta.push_back(b);
          const double exact = chi2_hypercube_exact(theta, n);
          const double bound = chi2_mixture_bound(theta, n);
          // Closed form 2^{-2k} sum (1 + 2 sum theta^2 tau eta)^n - 1.
          double oracle = 0.0;
          const int cnt = 1 << kappa;
          for (int x = 0; x < cnt; ++x) {
            for (int y = 0; y < cnt; ++y) {
              double inner = 1.0;
              for (std::size_t j = 0; j < kappa; ++j) {
                inner += 2.0 * theta[j] * theta[j] *
                         ((((x ^ y) >> j) & 1) ? -1.0 : 1.0);
              }
              oracle += std::pow(inner, static_cast<double>(n));
            }
          }
          oracle = oracle / (cnt * cnt) - 1.0;
          worst_oracle = std::max(worst_oracle, std::abs(exact - oracle));
          pass = pass && exact <= bound * (1.0 + 1e-12) + 1e-15;
          if (bound > 0.0) worst_ratio = std::max(worst_ratio, exact / bound);
          ++count;
        }
      }
    }
  }
  pass = pass && worst_oracle <= 1e-12;
  verdict("9", pass,
          "quadrature chi^2 <= exp(2 n^2 sum theta^4) - 1, n <= 2, kappa <= 2, "
          "theta <= 0.3",
          fmt("%g instances, max ratio %.4f, max deviation from closed form "
              "%.1e",
              count, worst_ratio, worst_oracle),
          t.seconds());
}

// 10. Two-point construction.
void criterion_10() {
  Timer t;
  bool pass = true;
  double worst = 0.0;
  for (const auto& [s, p] :
       std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 1.0}}) {
    const SmoothnessClass cls = SmoothnessClass::ordinary(s, 1.0);
    const NoiseModel eps = NoiseModel::mildly(p);
    for (std::size_t n : {100u, 1000u}) {
      const std::size_t m = base_term(cls, eps, n).argmax;
      const TwoPointPair pair = two_point_pair(cls, eps, n, m);
      pass = pass && pair.conditions.all_hold();
      const double c4 = std::pow(pair.C, 4.0);
      const double identity =
          64.0 * pair.xi * pair.xi * c4 * std::pow(pair.a_m, 4.0);
      const double rel = std::abs(pair.separation_sq - identity) / identity;
      worst = std::max(worst, rel);
      const TwoPointPair printed =
          two_point_pair(cls, eps, n, m, TwoPointConstant::printed);
      const ConditionCheck* fail = printed.conditions.first_failure();
      info(fmt("s=%g p=%g n=%g", s, p, n) + fmt(": m*=%g, C=%.5f, all hold", m, pair.C) +
           (fail ? "; printed C=1/4 fails (" + fail->label + ") with " +
                       fmt("%.3e > %.3e", fail->lhs, fail->rhs)
                 : std::string("; printed C also holds")));
    }
  }
  pass = pass && worst <= 1e-12;
  verdict("10", pass,
          "two-point conditions (a)-(h) at m*, (s,p) in {(1,1),(2,1)}, "
          "n in {1e2,1e3}; separation identity",
          fmt("max relative identity error %.2e", worst), t.seconds());
}

// 11. Bit-identical reports across thread counts.
void criterion_11() {
  Timer t;
  bool pass = true;
  ExperimentConfig risk = base_config(1.0, 1.0, 8);
  risk.n_grid = {64, 256};
  risk.replications = 200;
  risk.seed = 1100;
  ExperimentConfig test = risk;
  test.a_ladder = {{LadderEntry::Kind::a_lower, 0.0},
                   {LadderEntry::Kind::value, 1.0}};
  test.scenarios = {"hypercube", "spike"};
  for (int which = 0; which < 2; ++which) {
    std::vector<std::string> outputs;
    for (std::size_t threads : {1u, 8u}) {
      ExperimentConfig cfg = which == 0 ? risk : test;
      cfg.threads = threads;
      const ExperimentReport rep =
          which == 0 ? run_risk_experiment(cfg) : run_test_experiment(cfg);
      outputs.push_back(render_report(rep, ReportFormat::csv) +
                        render_report(rep, ReportFormat::json));
    }
    pass = pass && outputs[0] == outputs[1];
  }
  verdict("11", pass,
          "risk and test reports byte-identical at 1 and 8 threads", "",
          t.seconds());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
      criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      verdict(std::to_string(i + 1), false, "raised an exception", e.what(), 0.0);
    }
  }
  std::printf("%d criterion line(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 3;
}
