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


#include "circdeconv/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "circdeconv/errors.hpp"
#include "circdeconv/serialization.hpp"

namespace circdeconv {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw InvalidArgument("unknown key '" + key + "' in " + where);
    }
  }
}

json smoothness_to_json(const SmoothnessSpec& s) {
  return json{{"kind", s.kind == SmoothnessSpec::Kind::ordinary ? "ordinary"
                                                                : "super"},
              {"s", s.s},
              {"radius", s.radius},
              {"scale", s.scale}};
}

SmoothnessSpec smoothness_from_json(const json& j) {
  reject_unknown(j, {"kind", "s", "radius", "scale"}, "smoothness");
  SmoothnessSpec s;
  const std::string kind = j.value("kind", "ordinary");
  if (kind == "ordinary") {
    s.kind = SmoothnessSpec::Kind::ordinary;
  } else if (kind == "super") {
    s.kind = SmoothnessSpec::Kind::super_smooth;
  } else {
    throw InvalidArgument("smoothness kind must be ordinary or super");
  }
  s.s = j.value("s", 1.0);
  s.radius = j.value("radius", 1.0);
  s.scale = j.value("scale", 1.0);
  return s;
}

const char* noise_kind_name(NoiseSpec::Kind k) {
  switch (k) {
    case NoiseSpec::Kind::mildly:
      return "mildly";
    case NoiseSpec::Kind::severely:
      return "severely";
    case NoiseSpec::Kind::direct:
      return "direct";
    case NoiseSpec::Kind::density:
      return "density";
  }
  return "?";
}

json noise_to_json(const NoiseSpec& n) {
  json j{{"kind", noise_kind_name(n.kind)}};
  if (n.kind == NoiseSpec::Kind::mildly || n.kind == NoiseSpec::Kind::severely) {
    j["p"] = n.p;
  }
  if (n.max_freq) j["max_freq"] = *n.max_freq;
  if (n.scale) j["scale"] = *n.scale;
  if (n.sup_norm) j["sup_norm"] = *n.sup_norm;
  if (n.coeffs) j["density"] = *n.coeffs;
  return j;
}

NoiseSpec noise_from_json(const json& j) {
  reject_unknown(j, {"kind", "p", "max_freq", "scale", "sup_norm", "density"},
                 "noise");
  NoiseSpec n;
  const std::string kind = j.value("kind", "mildly");
  if (kind == "mildly") {
    n.kind = NoiseSpec::Kind::mildly;
  } else if (kind == "severely") {
    n.kind = NoiseSpec::Kind::severely;
  } else if (kind == "direct") {
    n.kind = NoiseSpec::Kind::direct;
  } else if (kind == "density") {
    n.kind = NoiseSpec::Kind::density;
  } else {
    throw InvalidArgument("noise kind must be mildly, severely, direct or "
                          "density");
  }
  n.p = j.value("p", 1.0);
  if (j.contains("max_freq")) n.max_freq = j.at("max_freq").get<std::size_t>();
  if (j.contains("scale")) n.scale = j.at("scale").get<double>();
  if (j.contains("sup_norm")) n.sup_norm = j.at("sup_norm").get<double>();
  if (j.contains("density")) n.coeffs = j.at("density").get<FourierDensity>();
  return n;
}

}  // namespace

SmoothnessClass SmoothnessSpec::build() const {
  return kind == Kind::ordinary
             ? SmoothnessClass::ordinary(s, radius, scale)
             : SmoothnessClass::super_smooth(s, radius, scale);
}

NoiseModel NoiseSpec::build() const {
  NoiseModel model = NoiseModel::direct(sup_norm.value_or(1.0));
  switch (kind) {
    case Kind::mildly:
      model = max_freq ? NoiseModel::mildly_density(p, *max_freq, scale)
                       : NoiseModel::mildly(p, scale.value_or(1.0));
      break;
    case Kind::severely:
      model = max_freq ? NoiseModel::severely_density(p, *max_freq, scale)
                       : NoiseModel::severely(p, scale.value_or(1.0));
      break;
    case Kind::direct:
      return model;
    case Kind::density:
      if (!coeffs) throw InvalidArgument("density noise needs coefficients");
      model = NoiseModel::from_density(*coeffs);
      break;
  }
  if (sup_norm) model = model.with_sup_norm(*sup_norm);
  return model;
}

std::string LadderEntry::label() const {
  switch (kind) {
    case Kind::a_lower:
      return "A_lower";
    case Kind::a_upper:
      return "A_upper";
    case Kind::value:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw InvalidArgument("replications must be >= 1");
  if (n_grid.empty()) throw InvalidArgument("n_grid must not be empty");
  for (std::size_t n : n_grid) {
    if (n < 2) throw InvalidArgument("n_grid entries must be >= 2");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  if (k_rule.kind == KRule::Kind::fixed && k_rule.k < 1) {
    throw InvalidArgument("fixed k must be >= 1");
  }
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  for (const auto& a : a_ladder) {
    if (a.kind == LadderEntry::Kind::value && !(a.value > 0.0)) {
      throw InvalidArgument("ladder values must be positive");
    }
  }
}

json config_to_json(const ExperimentConfig& cfg) {
  json ladder = json::array();
  for (const auto& a : cfg.a_ladder) {
    if (a.kind == LadderEntry::Kind::value) {
      ladder.push_back(a.value);
    } else {
      ladder.push_back(a.label());
    }
  }
  json k_rule = cfg.k_rule.kind == KRule::Kind::kappa_star
                    ? json("kappa_star")
                    : json{{"fixed", cfg.k_rule.k}};
  return json{{"smoothness", smoothness_to_json(cfg.smoothness)},
              {"noise", noise_to_json(cfg.noise)},
              {"n_grid", cfg.n_grid},
              {"replications", cfg.replications},
              {"alpha", cfg.alpha},
              {"k_rule", k_rule},
              {"k_max", cfg.k_max},
              {"seed", cfg.seed},
              {"output", cfg.output},
              {"threads", cfg.threads},
              {"a_ladder", ladder},
              {"scenarios", cfg.scenarios}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  reject_unknown(j,
                 {"smoothness", "noise", "n_grid", "replications", "alpha",
                  "k_rule", "k_max", "seed", "output", "threads", "a_ladder",
                  "scenarios"},
                 "config");
  ExperimentConfig cfg;
  try {
    if (j.contains("smoothness")) {
      cfg.smoothness = smoothness_from_json(j.at("smoothness"));
    }
    if (j.contains("noise")) cfg.noise = noise_from_json(j.at("noise"));
    cfg.n_grid = j.value("n_grid", std::vector<std::size_t>{});
    cfg.replications = j.value("replications", cfg.replications);
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("k_rule")) {
      const json& k = j.at("k_rule");
      if (k.is_string() && k.get<std::string>() == "kappa_star") {
        cfg.k_rule = {KRule::Kind::kappa_star, 0};
      } else if (k.is_object() && k.contains("fixed")) {
        cfg.k_rule = {KRule::Kind::fixed, k.at("fixed").get<std::size_t>()};
      } else if (k.is_number_integer() && k.get<long long>() >= 0) {
        cfg.k_rule = {KRule::Kind::fixed, k.get<std::size_t>()};
      } else {
        throw InvalidArgument("k_rule must be \"kappa_star\" or {\"fixed\": k}");
      }
    }
    cfg.k_max = j.value("k_max", cfg.k_max);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output = j.value("output", cfg.output);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("a_ladder")) {
      for (const auto& a : j.at("a_ladder")) {
        if (a.is_number()) {
          cfg.a_ladder.push_back({LadderEntry::Kind::value, a.get<double>()});
        } else if (a == "A_lower") {
          cfg.a_ladder.push_back({LadderEntry::Kind::a_lower, 0.0});
        } else if (a == "A_upper") {
          cfg.a_ladder.push_back({LadderEntry::Kind::a_upper, 0.0});
        } else {
          throw InvalidArgument("ladder entries are numbers, \"A_lower\" or "
                                "\"A_upper\"");
        }
      }
    }
    cfg.scenarios = j.value("scenarios", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string canonical_config(const ExperimentConfig& cfg) {
  json j = config_to_json(cfg);
  j.erase("threads");
  j.erase("output");
  return j.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a64(canonical_config(cfg));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace circdeconv
