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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "eftqc/error.h"

using namespace eftqc;
using namespace eftqc::calibration;

namespace {

const std::vector<std::uint64_t> kQ = {7, 27, 65, 127, 433};

CalibrationSeries power_law_series(double p0, double s) {
  CalibrationSeries out;
  for (auto q : kQ) out.points.push_back({q, p0 * std::pow(static_cast<double>(q), 1.0 / s), {}});
  return out;
}

CalibrationSeries log_series(double p0, double sigma) {
  CalibrationSeries out;
  for (auto q : kQ) {
    out.points.push_back({q, p0 * (1.0 + std::log(static_cast<double>(q)) / sigma), {}});
  }
  return out;
}

CalibrationSeries parse(const std::string& text) {
  std::istringstream in(text);
  return parse_calibration_csv(in, "inline");
}

ParseError::Kind parse_error_kind(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError::Kind::kIo;
}

}  // namespace

TEST(CalibrationCsv, MinimalFile) {
  const CalibrationSeries s = parse("qubit_count,worst_two_qubit_error\n7,0.01\n127,0.05\n");
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[0].q_phys, 7u);
  EXPECT_EQ(s.points[1].error_rate, 0.05);
  EXPECT_FALSE(s.points[0].std_dev.has_value());
  EXPECT_EQ(s.source_label, "inline");
}

TEST(CalibrationCsv, OptionalStdDevAndCommentsAndColumnOrder) {
  const CalibrationSeries s = parse(
      "# device A\nworst_two_qubit_error,std_dev,qubit_count\n\n0.01,0.001,7\n# x\n0.02,0.002,27\n");
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[1].q_phys, 27u);
  EXPECT_EQ(*s.points[1].std_dev, 0.002);
}

TEST(CalibrationCsv, DistinctDiagnostics) {
  EXPECT_EQ(parse_error_kind("qubits,error\n7,0.01\n"), ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error,extra\n7,0.01,1\n"),
            ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(parse_error_kind(""), ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n"), ParseError::Kind::kEmptyBody);
  std::size_t line = 0;
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n7,0.01\n27,1.5\n", &line),
            ParseError::Kind::kOutOfRange);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n7,abc\n", &line),
            ParseError::Kind::kBadValue);
  EXPECT_EQ(line, 2u);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n7,nan\n"),
            ParseError::Kind::kBadValue);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n0,0.01\n"),
            ParseError::Kind::kOutOfRange);
  EXPECT_EQ(parse_error_kind("qubit_count,worst_two_qubit_error\n7\n"), ParseError::Kind::kBadValue);
}

TEST(CalibrationCsv, ErrorMessageNamesTheLine) {
  try {
    parse("qubit_count,worst_two_qubit_error\n7,0.01\n27,1.5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(CalibrationCsv, DuplicatesAreRetained) {
  EXPECT_EQ(parse("qubit_count,worst_two_qubit_error\n7,0.01\n7,0.012\n27,0.02\n").points.size(),
            3u);
}

TEST(CalibrationCsv, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "eftqc_calibration_test.csv";
  {
    std::ofstream out(path);
    out << "qubit_count,worst_two_qubit_error\n7,0.01\n127,0.05\n";
  }
  const CalibrationSeries s = load_calibration_csv(path);
  EXPECT_EQ(s.points.size(), 2u);
  std::filesystem::remove(path);
  try {
    load_calibration_csv(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::kIo);
  }
}

TEST(FitPowerLaw, ExactRoundTrip) {
  const FitReport r = fit_power_law(power_law_series(0.005, 1.75));
  EXPECT_EQ(r.model.kind, ScalabilityModel::Kind::kPowerLaw);
  EXPECT_NEAR(r.model.p0 / 0.005, 1.0, 1e-9);
  EXPECT_NEAR(r.model.scale / 1.75, 1.0, 1e-9);
  EXPECT_NEAR(r.residual_rms, 0.0, 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_EQ(r.n_points, 5u);
  EXPECT_FALSE(r.weighted);
}

TEST(FitPowerLaw, MatchesHandRegression) {
  // Hand-computed ordinary least squares on (ln Q, ln p).
  const std::vector<std::pair<double, double>> data = {{7, 0.004}, {27, 0.011}, {65, 0.017},
                                                       {127, 0.02}, {433, 0.05}};
  CalibrationSeries series;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [q, p] : data) {
    series.points.push_back({static_cast<std::uint64_t>(q), p, {}});
    const double x = std::log(q), y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 5.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  const FitReport r = fit_power_law(series);
  EXPECT_NEAR(r.model.scale, 1.0 / slope, 1e-12);
  EXPECT_NEAR(r.model.p0, std::exp(intercept), 1e-15);
  EXPECT_GT(r.residual_rms, 0.0);
  EXPECT_LT(r.r_squared, 1.0);
}

TEST(FitPowerLaw, NoisyRecoveryWithinTenPercent) {
  std::mt19937_64 gen(175);
  std::uniform_real_distribution<double> noise(0.95, 1.05);
  for (int rep = 0; rep < 100; ++rep) {
    CalibrationSeries s = power_law_series(0.005, 1.75);
    for (auto& p : s.points) p.error_rate *= noise(gen);
    EXPECT_NEAR(fit_power_law(s).model.scale / 1.75, 1.0, 0.10);
  }
}

TEST(FitPowerLaw, TwoPointsInterpolateExactly) {
  CalibrationSeries s;
  s.points = {{7, 0.01, {}}, {127, 0.05, {}}};
  const FitReport r = fit_power_law(s);
  EXPECT_EQ(r.residual_rms, 0.0);
  EXPECT_EQ(r.r_squared, 1.0);
  EXPECT_NEAR(physical_error_rate(r.model, 7), 0.01, 1e-15);
  EXPECT_NEAR(physical_error_rate(r.model, 127), 0.05, 1e-15);
}

TEST(FitPowerLaw, Rejections) {
  CalibrationSeries same;
  same.points = {{7, 0.01, {}}, {7, 0.02, {}}};
  EXPECT_THROW(fit_power_law(same), FitError);
  CalibrationSeries decreasing;
  decreasing.points = {{7, 0.05, {}}, {127, 0.01, {}}};
  EXPECT_THROW(fit_power_law(decreasing), FitError);
}

TEST(FitPowerLaw, PermutationAndDuplicateInvariance) {
  CalibrationSeries s = power_law_series(0.005, 1.75);
  const FitReport base = fit_power_law(s);
  std::reverse(s.points.begin(), s.points.end());
  std::swap(s.points[1], s.points[3]);
  const FitReport permuted = fit_power_law(s);
  EXPECT_EQ(permuted.model.p0, base.model.p0);
  EXPECT_EQ(permuted.model.scale, base.model.scale);
  s.points.push_back(s.points[2]);
  s.points.push_back(s.points[2]);
  const FitReport dup = fit_power_law(s);
  EXPECT_EQ(dup.model.p0, base.model.p0);
  EXPECT_EQ(dup.model.scale, base.model.scale);
}

TEST(FitPowerLaw, WeightsPullTowardPreciseRows) {
  CalibrationSeries s = power_law_series(0.005, 1.75);
  s.points[4].error_rate *= 1.3;  // one outlier
  const FitReport plain = fit_power_law(s);
  for (auto& p : s.points) p.std_dev = 1e-5;
  s.points[4].std_dev = 1.0;  // outlier is imprecise
  const FitReport weighted = fit_power_law(s);
  EXPECT_TRUE(weighted.weighted);
  EXPECT_LT(std::abs(weighted.model.scale - 1.75), std::abs(plain.model.scale - 1.75));
  // Weighting needs every row.
  s.points[0].std_dev.reset();
  EXPECT_FALSE(fit_power_law(s).weighted);
}

TEST(FitLogModel, ExactRoundTrip) {
  const FitReport r = fit_log_model(log_series(0.001, 20.0));
  EXPECT_EQ(r.model.kind, ScalabilityModel::Kind::kLogarithmic);
  EXPECT_NEAR(r.model.p0 / 0.001, 1.0, 1e-9);
  EXPECT_NEAR(r.model.scale / 20.0, 1.0, 1e-9);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
}

TEST(FitLogModel, InapplicableData) {
  CalibrationSeries decreasing;
  decreasing.points = {{7, 0.05, {}}, {27, 0.03, {}}, {127, 0.01, {}}};
  EXPECT_THROW(fit_log_model(decreasing), FitError);
  CalibrationSeries constant;
  constant.points = {{7, 0.02, {}}, {27, 0.02, {}}, {127, 0.02, {}}};
  EXPECT_THROW(fit_log_model(constant), FitError);
  EXPECT_THROW(fit_power_law(constant), FitError);
}

TEST(CompareFits, RanksGeneratingModelFirst) {
  const auto pl = compare_fits(power_law_series(0.005, 1.75));
  ASSERT_EQ(pl.size(), 2u);
  EXPECT_EQ(pl[0].kind, ScalabilityModel::Kind::kPowerLaw);
  ASSERT_TRUE(pl[0].report.has_value());
  // A convex power law has a negative log-model intercept at p0 = 0.005.
  EXPECT_FALSE(pl[1].report.has_value());
  CalibrationSeries gentle = power_law_series(0.005, 4.0);
  const auto g = compare_fits(gentle);
  ASSERT_TRUE(g[0].report && g[1].report);
  EXPECT_EQ(g[0].kind, ScalabilityModel::Kind::kPowerLaw);
  EXPECT_EQ(g[0].report->n_points, g[1].report->n_points);
  EXPECT_LT(g[0].report->raw_rms, g[1].report->raw_rms);

  const auto lg = compare_fits(log_series(0.001, 20.0));
  ASSERT_EQ(lg.size(), 2u);
  EXPECT_EQ(lg[0].kind, ScalabilityModel::Kind::kLogarithmic);
}

TEST(CompareFits, FailuresReportedLast) {
  CalibrationSeries decreasing;
  decreasing.points = {{7, 0.05, {}}, {27, 0.03, {}}, {127, 0.01, {}}};
  const auto out = compare_fits(decreasing);
  ASSERT_EQ(out.size(), 2u);
  for (const auto& o : out) {
    EXPECT_FALSE(o.report.has_value());
    EXPECT_FALSE(o.error.empty());
  }
}
