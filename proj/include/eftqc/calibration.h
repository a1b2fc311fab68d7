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

#ifndef EFTQC_CALIBRATION_H_
#define EFTQC_CALIBRATION_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "eftqc/models.h"

namespace eftqc::calibration {

struct CalibrationPoint {
  std::uint64_t q_phys;
  double error_rate;
  std::optional<double> std_dev;
};

struct CalibrationSeries {
  std::vector<CalibrationPoint> points;
  std::string source_label;
};

struct FitReport {
  ScalabilityModel model;
  // RMS residual in the fit's own space: ln(p) for the power law, p for the
  // logarithmic model.
  double residual_rms = 0.0;
  // RMS residual of p itself, comparable across models.
  double raw_rms = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  bool weighted = false;
};

// Reads `qubit_count,worst_two_qubit_error[,std_dev]`. Throws ParseError
// whose kind() distinguishes header, empty-body and per-line value errors.
CalibrationSeries load_calibration_csv(const std::filesystem::path& path);
CalibrationSeries parse_calibration_csv(std::istream& in,
                                        const std::string& source_label);

// Least squares on ln p = ln p0 + (1/s) ln Q. Repeated Q values are averaged
// in log space first. Rows carry weights (p / std_dev)^2 when every row has a
// positive std_dev.
FitReport fit_power_law(const CalibrationSeries& series);

// Least squares on p = a + b ln Q, giving p0 = a and sigma = a / b. Weights
// 1 / std_dev^2 under the same rule. Throws FitError unless a > 0 and b > 0.
FitReport fit_log_model(const CalibrationSeries& series);

struct FitOutcome {
  ScalabilityModel::Kind kind;
  std::optional<FitReport> report;
  std::string error;  // set when report is empty
};

// Both fits, successful ones first in ascending raw_rms order.
std::vector<FitOutcome> compare_fits(const CalibrationSeries& series);

}  // namespace eftqc::calibration

#endif  // EFTQC_CALIBRATION_H_
