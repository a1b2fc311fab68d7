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

#include "eftqc/calibration.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "eftqc/error.h"

namespace eftqc::calibration {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

double parse_double(const std::string& cell, int line, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw ParseError(ParseError::Kind::kBadValue, line,
                     at_line(line) + "cannot parse " + column + " value '" + cell + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& cell, int line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError(ParseError::Kind::kBadValue, line,
                     at_line(line) + "qubit_count '" + cell +
                         "' is not a non-negative integer");
  }
  if (value < 1) {
    throw ParseError(ParseError::Kind::kOutOfRange, line,
                     at_line(line) + "qubit_count must be >= 1");
  }
  return value;
}

// One regression sample per distinct qubit count.
struct Sample {
  double x;       // ln Q
  double y;       // transformed error rate
  double weight;
};

enum class Space { kLog, kRaw };

bool use_weights(const CalibrationSeries& series) {
  return std::all_of(series.points.begin(), series.points.end(), [](const auto& p) {
    return p.std_dev.has_value() && *p.std_dev > 0.0;
  });
}

std::vector<Sample> aggregate(const CalibrationSeries& series, Space space,
                              bool weighted) {
  for (const auto& p : series.points) {
    if (p.q_phys < 1 || !(p.error_rate > 0.0 && p.error_rate < 1.0)) {
      throw FitError("calibration points need q_phys >= 1 and error rate in (0, 1)");
    }
  }
  std::map<std::uint64_t, std::vector<std::pair<double, double>>> groups;
  for (const auto& p : series.points) {
    const double y = space == Space::kLog ? std::log(p.error_rate) : p.error_rate;
    double w = 1.0;
    if (weighted) {
      // Delta method: sd(ln p) ~ sd(p) / p.
      const double sd = space == Space::kLog ? *p.std_dev / p.error_rate : *p.std_dev;
      w = 1.0 / (sd * sd);
    }
    groups[p.q_phys].emplace_back(y, w);
  }
  std::vector<Sample> out;
  for (auto& [q, values] : groups) {
    // Sorted so the sums do not depend on input row order.
    std::sort(values.begin(), values.end());
    double sw = 0.0;
    double swy = 0.0;
    for (const auto& [y, w] : values) {
      sw += w;
      swy += w * y;
    }
    out.push_back(Sample{std::log(static_cast<double>(q)), swy / sw,
                         weighted ? sw : 1.0});
  }
  return out;
}

struct Line {
  double intercept;
  double slope;
  double residual_rms;
  double r_squared;
};

Line weighted_line(const std::vector<Sample>& samples) {
  if (samples.size() < 2) {
    throw FitError("fit needs at least two distinct qubit counts");
  }
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& s : samples) {
    sw += s.weight;
    sx += s.weight * s.x;
    sy += s.weight * s.y;
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& s : samples) {
    sxx += s.weight * (s.x - mx) * (s.x - mx);
    sxy += s.weight * (s.x - mx) * (s.y - my);
    syy += s.weight * (s.y - my) * (s.y - my);
  }
  if (sxx == 0.0) throw FitError("degenerate design: all qubit counts equal");
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  if (samples.size() == 2) {
    // Two samples, two unknowns: interpolation is exact.
    line.residual_rms = 0.0;
    line.r_squared = 1.0;
    return line;
  }
  double ss_res = 0.0;
  for (const auto& s : samples) {
    const double r = s.y - (line.intercept + line.slope * s.x);
    ss_res += s.weight * r * r;
  }
  line.residual_rms = std::sqrt(ss_res / sw);
  line.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
  return line;
}

double raw_rms(const CalibrationSeries& series, const ScalabilityModel& model) {
  double ss = 0.0;
  for (const auto& p : series.points) {
    const double r = p.error_rate - physical_error_rate(model, static_cast<double>(p.q_phys));
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(series.points.size()));
}

}  // namespace

CalibrationSeries parse_calibration_csv(std::istream& in,
                                        const std::string& source_label) {
  CalibrationSeries series;
  series.source_label = source_label;
  std::string raw;
  int line = 0;
  int q_col = -1, p_col = -1, sd_col = -1;
  std::size_t n_cols = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto cells = split(text);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (cells[i] == "qubit_count" && q_col < 0) {
          q_col = idx;
        } else if (cells[i] == "worst_two_qubit_error" && p_col < 0) {
          p_col = idx;
        } else if (cells[i] == "std_dev" && sd_col < 0) {
          sd_col = idx;
        } else {
          throw ParseError(ParseError::Kind::kMalformedHeader, line,
                           at_line(line) + "unexpected header column '" + cells[i] +
                               "' (expected qubit_count,worst_two_qubit_error[,std_dev])");
        }
      }
      if (q_col < 0 || p_col < 0) {
        throw ParseError(ParseError::Kind::kMalformedHeader, line,
                         at_line(line) +
                             "header must name qubit_count and worst_two_qubit_error");
      }
      n_cols = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != n_cols) {
      throw ParseError(ParseError::Kind::kBadValue, line,
                       at_line(line) + "expected " + std::to_string(n_cols) +
                           " columns, found " + std::to_string(cells.size()));
    }
    CalibrationPoint point{};
    point.q_phys = parse_count(cells[q_col], line);
    point.error_rate = parse_double(cells[p_col], line, "worst_two_qubit_error");
    if (!(point.error_rate > 0.0 && point.error_rate < 1.0)) {
      throw ParseError(ParseError::Kind::kOutOfRange, line,
                       at_line(line) + "worst_two_qubit_error " + cells[p_col] +
                           " is outside (0, 1)");
    }
    if (sd_col >= 0 && !cells[sd_col].empty()) {
      const double sd = parse_double(cells[sd_col], line, "std_dev");
      if (sd < 0.0) {
        throw ParseError(ParseError::Kind::kOutOfRange, line,
                         at_line(line) + "std_dev must be >= 0");
      }
      point.std_dev = sd;
    }
    series.points.push_back(point);
  }
  if (!have_header) {
    throw ParseError(ParseError::Kind::kMalformedHeader, 0, "missing header row");
  }
  if (series.points.empty()) {
    throw ParseError(ParseError::Kind::kEmptyBody, line, "no data rows after header");
  }
  return series;
}

CalibrationSeries load_calibration_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(ParseError::Kind::kIo, 0, "cannot open " + path.string());
  }
  return parse_calibration_csv(in, path.filename().string());
}

FitReport fit_power_law(const CalibrationSeries& series) {
  const bool weighted = use_weights(series);
  const Line line = weighted_line(aggregate(series, Space::kLog, weighted));
  if (!(line.slope > 0.0)) {
    throw FitError("power-law model inapplicable to data: error rate does not "
                   "increase with qubit count");
  }
  FitReport report;
  report.model = ScalabilityModel{ScalabilityModel::Kind::kPowerLaw,
                                  std::exp(line.intercept), 1.0 / line.slope};
  report.residual_rms = line.residual_rms;
  report.r_squared = line.r_squared;
  report.n_points = series.points.size();
  report.weighted = weighted;
  report.raw_rms = raw_rms(series, report.model);
  return report;
}

FitReport fit_log_model(const CalibrationSeries& series) {
  const bool weighted = use_weights(series);
  const Line line = weighted_line(aggregate(series, Space::kRaw, weighted));
  if (!(line.intercept > 0.0) || !(line.slope > 0.0)) {
    throw FitError("logarithmic model inapplicable to data: needs positive "
                   "intercept and positive slope in p = a + b ln Q");
  }
  FitReport report;
  report.model = ScalabilityModel{ScalabilityModel::Kind::kLogarithmic,
                                  line.intercept, line.intercept / line.slope};
  report.residual_rms = line.residual_rms;
  report.r_squared = line.r_squared;
  report.n_points = series.points.size();
  report.weighted = weighted;
  report.raw_rms = raw_rms(series, report.model);
  return report;
}

std::vector<FitOutcome> compare_fits(const CalibrationSeries& series) {
  std::vector<FitOutcome> out;
  auto attempt = [&](ScalabilityModel::Kind kind, auto&& fit) {
    FitOutcome o{kind, std::nullopt, {}};
    try {
      o.report = fit(series);
      o.report->model.Validate();
    } catch (const Error& e) {
      o.report.reset();
      o.error = e.what();
    }
    out.push_back(std::move(o));
  };
  attempt(ScalabilityModel::Kind::kPowerLaw, fit_power_law);
  attempt(ScalabilityModel::Kind::kLogarithmic, fit_log_model);
  std::stable_sort(out.begin(), out.end(), [](const FitOutcome& a, const FitOutcome& b) {
    if (a.report.has_value() != b.report.has_value()) return a.report.has_value();
    if (!a.report) return false;
    return a.report->raw_rms < b.report->raw_rms;
  });
  return out;
}

}  // namespace eftqc::calibration
