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

#ifndef EFTQC_CLI_H_
#define EFTQC_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eftqc::cli {

enum class Command { kFit, kReach, kContour, kRegimes, kRfeSim, kRfeCalibrate, kMsd };

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,       // usage, unknown keys, conflicting settings
  kExitInput = 3,        // missing or malformed input files
  kExitDomain = 4,       // model preconditions violated, no valid fit
  kExitConvergence = 5,  // search ceiling hit or unbounded result
};

struct RunConfig {
  Command command = Command::kReach;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> preset;
  std::vector<std::string> overrides;  // "key=value"
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> input;
  std::optional<std::string> distance_mode;
  std::optional<std::string> error_budget_mode;
};

const char* to_string(Command command);
std::optional<Command> parse_command(const std::string& name);

// Resolves parameters, runs the command, writes manifest.json, result.json
// and any CSVs into out_dir. On failure writes error.json (when possible) and
// a one-line JSON error to `err`.
int run(const RunConfig& config, std::ostream& err);

// argv front end used by the executable.
int main_entry(int argc, char** argv);

}  // namespace eftqc::cli

#endif  // EFTQC_CLI_H_
