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

#ifndef EFTQC_CONFIG_H_
#define EFTQC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "eftqc/models.h"
#include "eftqc/reach.h"
#include "eftqc/rfe.h"

namespace eftqc {

// Resolved run parameters: built-in defaults, then a config file or preset,
// then `key=value` overrides. Keys are dotted paths into a nested JSON
// document (e.g. "rfe.noise.lambda"). Every key must already exist in the
// defaults; anything else is a ConfigError.
class Parameters {
 public:
  static Parameters Defaults();
  static const std::vector<std::string>& PresetNames();

  // Merges a nested document. Accepts either plain parameters or an emitted
  // manifest (whose "parameters" member is merged).
  void Merge(const nlohmann::json& doc);
  void MergeFile(const std::filesystem::path& path);
  void ApplyPreset(const std::string& name);
  // `assignment` is "dotted.key=value".
  void Set(const std::string& assignment);
  void Set(const std::string& key, const std::string& value);

  const nlohmann::json& tree() const { return tree_; }
  bool Has(const std::string& key) const;

  double GetDouble(const std::string& key) const;
  std::uint64_t GetUint(const std::string& key) const;
  std::string GetString(const std::string& key) const;

  ScalabilityModel scalability() const;
  SurfaceCodeModel surface_code() const;
  AlgorithmCostModel algorithm() const;
  DistanceMode distance_mode() const;
  // Problem with reach.burden_reduction applied.
  ReachProblem reach_problem() const;
  // Entries of contour.scales, "inf" mapped to the infinite sentinel.
  std::vector<double> contour_scales() const;
  rfe::RfeExperiment rfe_experiment() const;

 private:
  const nlohmann::json& Node(const std::string& key) const;
  void MergeInto(nlohmann::json& target, const nlohmann::json& source,
                 const std::string& prefix);

  nlohmann::json tree_;
};

// Parses a positive real that may be written "inf" / "infinity".
double parse_scale(const nlohmann::json& value, const std::string& key);

}  // namespace eftqc

#endif  // EFTQC_CONFIG_H_
