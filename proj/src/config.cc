// Copyright 2026 The eftqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eftqc/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "eftqc/error.h"

namespace eftqc {
namespace {

using nlohmann::json;

const std::map<std::string, json>& presets() {
  static const std::map<std::string, json> kPresets = {
      // Power-law contours for the family of scalabilities, QPE defaults.
      {"paper-fig-scalability",
       {{"scalability", {{"kind", "power_law"}, {"p0", 1e-4}, {"scale", 3.5}}},
        {"surface_code", {{"A", 0.1}, {"p_th", 0.01}}},
        {"algorithm", {{"alpha", 4.12e9}, {"beta", 0.515}, {"p_C", 0.1}}},
        {"contour",
         {{"q_min", 1}, {"q_max", 300}, {"step", 1},
          {"scales", json::array({3.0, 3.5, 4.0, 4.5, "inf"})}}}}},
      // Reach versus burden reduction, plus an RFE configuration.
      {"paper-fig-rfe",
       {{"scalability", {{"kind", "power_law"}, {"p0", 1e-4}, {"scale", 3.5}}},
        {"surface_code", {{"A", 0.1}, {"p_th", 0.01}}},
        {"algorithm", {{"alpha", 4.12e9}, {"beta", 0.515}, {"p_C", 0.1}}},
        {"reach", {{"sweep_max_decades", 5}, {"sweep_points_per_decade", 4}}},
        {"rfe", {{"K", 32}, {"J", 32}, {"theta", 2.0 * std::numbers::pi * 5.0 / 32.0},
                 {"delta", 0.1}, {"trials_per_probe", 200}}}}},
      // Today's scalability as fitted from device calibration data.
      {"paper-appendix-a",
       {{"scalability", {{"kind", "power_law"}, {"p0", 0.005}, {"scale", 1.75}}},
        {"surface_code", {{"A", 0.1}, {"p_th", 0.01}}}}},
  };
  return kPresets;
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

bool is_inf_word(const std::string& s) {
  return s == "inf" || s == "infinity" || s == "Inf" || s == "INF";
}

// Keys whose value may be written as "inf".
bool allows_inf(const std::string& key) { return key == "scalability.scale"; }

json parse_scalar_like(const json& prototype, const std::string& key,
                       const std::string& text) {
  if (prototype.is_string()) return text;
  if (prototype.is_number_unsigned() || prototype.is_number_integer()) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) return v;
    double d = 0.0;
    auto [p2, e2] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (e2 == std::errc() && p2 == text.data() + text.size() && d >= 0.0 &&
        d == std::floor(d) && d < 1.8e19) {
      return static_cast<std::uint64_t>(d);
    }
    throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  if (prototype.is_number()) {
    if (allows_inf(key) && is_inf_word(text)) return text;
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec == std::errc() && ptr == text.data() + text.size()) return d;
    throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
  }
  if (prototype.is_array()) {
    json arr = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (is_inf_word(item)) {
        arr.push_back(item);
      } else {
        arr.push_back(parse_scalar_like(json(0.0), key, item));
      }
    }
    return arr;
  }
  throw ConfigError("key '" + key + "' cannot be set from text");
}

void check_type(const json& prototype, const json& value, const std::string& key) {
  const bool ok = [&] {
    if (prototype.is_string()) return value.is_string();
    if (prototype.is_number_unsigned() || prototype.is_number_integer()) {
      return value.is_number_unsigned() ||
             (value.is_number_integer() && value.get<std::int64_t>() >= 0);
    }
    if (prototype.is_number()) {
      return value.is_number() || (allows_inf(key) && value.is_string() &&
                                   is_inf_word(value.get<std::string>()));
    }
    if (prototype.is_array()) {
      if (!value.is_array()) return false;
      for (const auto& item : value) {
        if (!(item.is_number() || (item.is_string() && is_inf_word(item.get<std::string>())))) {
          return false;
        }
      }
      return true;
    }
    return false;
  }();
  if (!ok) {
    throw ConfigError("key '" + key + "' has the wrong type (expected " +
                      std::string(prototype.type_name()) + ")");
  }
}

ConfigError bad_choice(const std::string& key, const std::string& value,
                       const std::string& choices) {
  return ConfigError("key '" + key + "' has unknown value '" + value +
                     "' (choices: " + choices + ")");
}

}  // namespace

double parse_scale(const json& value, const std::string& key) {
  if (value.is_string()) {
    if (is_inf_word(value.get<std::string>())) return kInfiniteScalability;
    throw ConfigError("key '" + key + "' must be a number or \"inf\"");
  }
  if (!value.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return value.get<double>();
}

Parameters Parameters::Defaults() {
  Parameters p;
  p.tree_ = {
      {"scalability", {{"kind", "power_law"}, {"p0", 1e-4}, {"scale", 3.5}}},
      {"surface_code", {{"A", 0.1}, {"p_th", 0.01}}},
      {"algorithm",
       {{"alpha", 4.12e9}, {"beta", 0.515}, {"p_C", 0.1},
        {"error_budget_mode", "union_bound"}}},
      {"reach",
       {{"distance_mode", "continuous"}, {"method", "all"},
        {"burden_reduction", 1.0}, {"sweep_max_decades", 5u},
        {"sweep_points_per_decade", 2u}}},
      {"contour",
       {{"q_min", 1u}, {"q_max", 300u}, {"step", 1u}, {"scales", json::array()}}},
      {"regimes",
       {{"s_min", 0.25}, {"s_max", 5.0}, {"s_points", 20u}, {"ratio_min", 0.05},
        {"ratio_max", 1.0}, {"ratio_points", 20u}, {"ratio_spacing", "linear"}}},
      {"rfe",
       {{"theta", 2.0 * std::numbers::pi * 5.0 / 64.0},
        {"K", 64u}, {"J", 64u}, {"M", 2000u}, {"seed", 1u},
        {"trials", 200u}, {"delta", 0.1}, {"trials_per_probe", 200u},
        {"max_M", 100000000u},
        {"noise",
         {{"kind", "ideal"}, {"sigma", 0.0}, {"lambda", 0.0},
          {"eta_resample", "per_k"}}}}},
      {"fit", {{"input", ""}}},
  };
  return p;
}

const std::vector<std::string>& Parameters::PresetNames() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, doc] : presets()) names.push_back(name);
    return names;
  }();
  return kNames;
}

void Parameters::MergeInto(json& target, const json& source, const std::string& prefix) {
  if (!source.is_object()) {
    throw ConfigError("section '" + (prefix.empty() ? std::string("<root>") : prefix) +
                      "' must be an object");
  }
  for (const auto& [name, value] : source.items()) {
    const std::string key = prefix.empty() ? name : prefix + "." + name;
    auto it = target.find(name);
    if (it == target.end()) throw ConfigError("unknown config key '" + key + "'");
    if (it->is_object()) {
      MergeInto(*it, value, key);
    } else {
      check_type(*it, value, key);
      if (it->is_number_float() && value.is_number()) {
        *it = value.get<double>();
      } else if ((it->is_number_unsigned() || it->is_number_integer()) &&
                 value.is_number()) {
        *it = value.get<std::uint64_t>();
      } else {
        *it = value;
      }
    }
  }
}

void Parameters::Merge(const json& doc) {
  if (doc.is_object() && doc.contains("parameters") && doc.contains("command")) {
    MergeInto(tree_, doc.at("parameters"), "");
    return;
  }
  MergeInto(tree_, doc, "");
}

void Parameters::MergeFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  Merge(doc);
}

void Parameters::ApplyPreset(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset '" + name + "'");
  Merge(it->second);
}

void Parameters::Set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  }
  Set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void Parameters::Set(const std::string& key, const std::string& value) {
  const auto parts = split_key(key);
  json* node = &tree_;
  for (const auto& part : parts) {
    auto it = node->find(part);
    if (it == node->end()) throw ConfigError("unknown config key '" + key + "'");
    node = &*it;
  }
  if (node->is_object()) throw ConfigError("key '" + key + "' names a section");
  *node = parse_scalar_like(*node, key, value);
}

bool Parameters::Has(const std::string& key) const {
  const json* node = &tree_;
  for (const auto& part : split_key(key)) {
    auto it = node->find(part);
    if (it == node->end()) return false;
    node = &*it;
  }
  return true;
}

const json& Parameters::Node(const std::string& key) const {
  const json* node = &tree_;
  for (const auto& part : split_key(key)) {
    auto it = node->find(part);
    if (it == node->end()) throw ConfigError("unknown config key '" + key + "'");
    node = &*it;
  }
  return *node;
}

double Parameters::GetDouble(const std::string& key) const {
  const json& v = Node(key);
  if (allows_inf(key)) return parse_scale(v, key);
  if (!v.is_number()) throw ConfigError("key '" + key + "' is not numeric");
  return v.get<double>();
}

std::uint64_t Parameters::GetUint(const std::string& key) const {
  const json& v = Node(key);
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' is not an integer");
  return v.get<std::uint64_t>();
}

std::string Parameters::GetString(const std::string& key) const {
  const json& v = Node(key);
  if (!v.is_string()) throw ConfigError("key '" + key + "' is not a string");
  return v.get<std::string>();
}

ScalabilityModel Parameters::scalability() const {
  ScalabilityModel m;
  const std::string kind = GetString("scalability.kind");
  if (kind == "power_law") {
    m.kind = ScalabilityModel::Kind::kPowerLaw;
  } else if (kind == "logarithmic") {
    m.kind = ScalabilityModel::Kind::kLogarithmic;
  } else {
    throw bad_choice("scalability.kind", kind, "power_law, logarithmic");
  }
  m.p0 = GetDouble("scalability.p0");
  m.scale = GetDouble("scalability.scale");
  m.Validate();
  return m;
}

SurfaceCodeModel Parameters::surface_code() const {
  SurfaceCodeModel c{GetDouble("surface_code.A"), GetDouble("surface_code.p_th")};
  c.Validate();
  return c;
}

AlgorithmCostModel Parameters::algorithm() const {
  AlgorithmCostModel a;
  a.alpha = GetDouble("algorithm.alpha");
  a.beta = GetDouble("algorithm.beta");
  a.p_C = GetDouble("algorithm.p_C");
  const std::string mode = GetString("algorithm.error_budget_mode");
  if (mode == "union_bound") {
    a.error_budget_mode = ErrorBudgetMode::kUnionBound;
  } else if (mode == "log_refined") {
    a.error_budget_mode = ErrorBudgetMode::kLogRefined;
  } else {
    throw bad_choice("algorithm.error_budget_mode", mode, "union_bound, log_refined");
  }
  a.Validate();
  return a;
}

DistanceMode Parameters::distance_mode() const {
  const std::string mode = GetString("reach.distance_mode");
  if (mode == "continuous") return DistanceMode::kContinuous;
  if (mode == "discrete_odd") return DistanceMode::kDiscreteOdd;
  throw bad_choice("reach.distance_mode", mode, "continuous, discrete_odd");
}

ReachProblem Parameters::reach_problem() const {
  return ReachProblem::Make(scalability(), surface_code(), algorithm(), distance_mode())
      .WithBurdenReduction(GetDouble("reach.burden_reduction"));
}

std::vector<double> Parameters::contour_scales() const {
  std::vector<double> out;
  for (const auto& item : Node("contour.scales")) {
    out.push_back(parse_scale(item, "contour.scales"));
  }
  return out;
}

rfe::RfeExperiment Parameters::rfe_experiment() const {
  rfe::RfeExperiment e;
  e.theta = GetDouble("rfe.theta");
  e.K = GetUint("rfe.K");
  e.J = GetUint("rfe.J");
  e.M = GetUint("rfe.M");
  e.seed = GetUint("rfe.seed");
  const std::string kind = GetString("rfe.noise.kind");
  if (kind == "ideal") {
    e.noise.kind = rfe::NoiseModel::Kind::kIdeal;
  } else if (kind == "gaussian") {
    e.noise.kind = rfe::NoiseModel::Kind::kGaussian;
  } else if (kind == "exp_decay") {
    e.noise.kind = rfe::NoiseModel::Kind::kExpDecay;
  } else {
    throw bad_choice("rfe.noise.kind", kind, "ideal, gaussian, exp_decay");
  }
  e.noise.sigma = GetDouble("rfe.noise.sigma");
  e.noise.lambda = GetDouble("rfe.noise.lambda");
  const std::string resample = GetString("rfe.noise.eta_resample");
  if (resample == "per_k") {
    e.noise.eta_resample = rfe::NoiseModel::EtaResample::kPerK;
  } else if (resample == "per_shot") {
    e.noise.eta_resample = rfe::NoiseModel::EtaResample::kPerShot;
  } else {
    throw bad_choice("rfe.noise.eta_resample", resample, "per_k, per_shot");
  }
  e.Validate();
  return e;
}

}  // namespace eftqc
