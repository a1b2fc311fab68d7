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

#ifndef EFTQC_REACH_H_
#define EFTQC_REACH_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eftqc/models.h"

namespace eftqc {

// Every input to the success condition
//   sqrt(8 Q_L) ln(B Q_L^beta) <= sqrt(Q_phys) ln(p_th / p(Q_phys)),
// with burden B = A alpha / p_C.
struct ReachProblem {
  ScalabilityModel scalability;
  SurfaceCodeModel code;
  AlgorithmCostModel cost;
  DistanceMode distance_mode = DistanceMode::kContinuous;

  // Validates all three models and requires p0 < p_th.
  static ReachProblem Make(const ScalabilityModel& scalability,
                           const SurfaceCodeModel& code,
                           const AlgorithmCostModel& cost,
                           DistanceMode mode = DistanceMode::kContinuous);

  // Copy with the burden factor divided by `factor` (alpha scaled down).
  ReachProblem WithBurdenReduction(double factor) const;
};

enum class ReachMethod { kClosedForm, kLowerBound, kNumericSearch };

struct ReachResult {
  std::uint64_t q_logical_max = 0;
  // Unrounded value for the two analytic methods; equals q_logical_max for
  // the numeric search.
  double q_logical_value = 0.0;
  double q_phys_opt = 0.0;
  double q_phys_max = 0.0;
  ReachMethod method = ReachMethod::kNumericSearch;
};

struct ContourPoint {
  std::uint64_t q_logical;
  // NaN when infeasible.
  double q_phys_required;
  bool feasible;
};

struct ContourSeries {
  std::vector<ContourPoint> points;
  std::string scalability_label;
};

// Left-hand side of the success condition. Throws DomainError when
// B Q_L^beta <= 1 (the requirement is then trivially met).
double success_lhs(const AlgorithmCostModel& cost, const SurfaceCodeModel& code,
                   double q_logical);

// Right-hand side; negative (not an error) beyond max_physical_qubits.
double success_rhs(const ScalabilityModel& scalability,
                   const SurfaceCodeModel& code, double q_phys);

bool satisfies_success_condition(const ReachProblem& problem,
                                 std::uint64_t q_logical, double q_phys);

// Q_phys^opt / (8 s^2 beta^2 W(x)^2) with
// x = sqrt(B^(1/beta) Q_phys^opt / (8 s^2 beta^2)). Power law only.
ReachResult max_logical_qubits_closed_form(const ReachProblem& problem);

// Same expression with W(x) replaced by its upper bound ln(x).
ReachResult max_logical_qubits_lower_bound(const ReachProblem& problem);

// Integer search for the largest feasible Q_L. Returns 0 when Q_L = 1 is
// already infeasible; throws UnboundedError when no finite limit exists.
ReachResult max_logical_qubits_numeric(const ReachProblem& problem);

// Smallest Q_phys meeting the condition for this Q_L, or nullopt.
std::optional<double> required_physical_qubits(const ReachProblem& problem,
                                               std::uint64_t q_logical);

ContourSeries contour(const ReachProblem& problem, std::uint64_t q_first,
                      std::uint64_t q_last, std::uint64_t step = 1);

std::string scalability_label(const ScalabilityModel& model);

enum class Regime { kNisq, kNisqToEftqc, kEftqc, kEftqcToFtqc, kFtqc };

// Contour levels of max physical qubits separating the regimes: 1e2-1e4 is
// the NISQ->EFTQC band, 1e6-1e8 the EFTQC->FTQC band.
inline constexpr std::array<double, 4> kRegimeLevels = {1e2, 1e4, 1e6, 1e8};

Regime classify_regime(double q_phys_max);
const char* to_string(Regime regime);

struct RegimeCell {
  double s;
  double ratio;  // p0 / p_th
  double q_max;
  Regime regime;
};

struct RegimeGrid {
  std::vector<double> s_values;
  std::vector<double> ratio_values;
  // Row-major, s outer.
  std::vector<RegimeCell> cells;

  const RegimeCell& at(std::size_t s_index, std::size_t ratio_index) const {
    return cells[s_index * ratio_values.size() + ratio_index];
  }
};

// (p_th / p0)^s = ratio^(-s) over an s x ratio grid. Ratio spacing is
// linear or logarithmic.
RegimeGrid regimes_grid(double s_min, double s_max, std::size_t s_points,
                        double ratio_min, double ratio_max,
                        std::size_t ratio_points, bool log_ratio = false);

const char* to_string(ReachMethod method);

}  // namespace eftqc

#endif  // EFTQC_REACH_H_
