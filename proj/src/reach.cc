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

#include "eftqc/reach.h"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>

#include "eftqc/error.h"
#include "eftqc/lambert_w.h"

namespace eftqc {
namespace {

constexpr std::uint64_t kReachCeiling = std::uint64_t{1} << 53;
constexpr double kRelativeBisectionTolerance = 1e-9;
constexpr double kMaxDiscreteDistance = 200001.0;

// ln(B Q_L^beta), computed additively.
double log_burden_argument(const AlgorithmCostModel& cost,
                           const SurfaceCodeModel& code, double q_logical) {
  return std::log(burden_factor(cost, code)) + cost.beta * std::log(q_logical);
}

void require_power_law(const ReachProblem& problem) {
  if (problem.scalability.kind != ScalabilityModel::Kind::kPowerLaw) {
    throw DomainError(
        "closed-form reach assumes the power-law scalability model; use the "
        "numeric search");
  }
  if (problem.scalability.infinite()) {
    throw UnboundedError("reach is unbounded for infinite scalability");
  }
  if (problem.cost.beta <= 0.0) {
    throw DomainError("closed-form reach requires beta > 0");
  }
}

bool satisfies_discrete(const ReachProblem& problem, double q_logical,
                        double q_phys) {
  double d_plus_one = std::floor(std::sqrt(q_phys / (2.0 * q_logical)));
  double d = d_plus_one - 1.0;
  if (std::fmod(d, 2.0) == 0.0) d -= 1.0;
  if (d < 1.0) return false;
  const double q_used = physical_qubits_for_code(d, q_logical);
  const double p_phys = physical_error_rate(problem.scalability, q_used);
  if (p_phys >= problem.code.p_th) return false;
  return logical_error_rate(problem.code, p_phys, d, DistanceMode::kDiscreteOdd) <=
         tolerable_logical_error(problem.cost, q_logical);
}

std::optional<double> required_discrete(const ReachProblem& problem,
                                        double q_logical) {
  const double q_max = max_physical_qubits(problem.scalability, problem.code);
  const double tolerance = tolerable_logical_error(problem.cost, q_logical);
  for (double d = 1.0; d <= kMaxDiscreteDistance; d += 2.0) {
    const double q_phys = physical_qubits_for_code(d, q_logical);
    if (q_phys > q_max) break;
    const double p_phys = physical_error_rate(problem.scalability, q_phys);
    if (p_phys >= problem.code.p_th) break;
    if (logical_error_rate(problem.code, p_phys, d,
                           DistanceMode::kDiscreteOdd) <= tolerance) {
      return q_phys;
    }
  }
  return std::nullopt;
}

std::optional<double> required_continuous(const ReachProblem& problem,
                                          std::uint64_t q_logical) {
  auto ok = [&](double q) {
    return satisfies_success_condition(problem, q_logical, q);
  };
  double lo = physical_qubits_for_code(1.0, static_cast<double>(q_logical));
  if (ok(lo)) return lo;

  double hi;
  if (problem.scalability.infinite()) {
    hi = lo;
    do {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return std::nullopt;
    } while (!ok(hi));
  } else {
    hi = optimal_physical_qubits(problem.scalability, problem.code);
    if (lo >= hi || !ok(hi)) return std::nullopt;
  }
  while (hi - lo > kRelativeBisectionTolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ReachResult analytic_result(const ReachProblem& problem, double value,
                            ReachMethod method) {
  ReachResult r;
  r.q_logical_value = value;
  r.q_logical_max = value >= 1.0 ? static_cast<std::uint64_t>(std::floor(value)) : 0;
  r.q_phys_opt = optimal_physical_qubits(problem.scalability, problem.code);
  r.q_phys_max = max_physical_qubits(problem.scalability, problem.code);
  r.method = method;
  return r;
}

}  // namespace

ReachProblem ReachProblem::Make(const ScalabilityModel& scalability,
                                const SurfaceCodeModel& code,
                                const AlgorithmCostModel& cost,
                                DistanceMode mode) {
  scalability.Validate();
  code.Validate();
  cost.Validate();
  if (scalability.p0 >= code.p_th) {
    throw AboveThresholdError(
        "base error rate p0 is not below threshold; no sub-threshold regime");
  }
  return ReachProblem{scalability, code, cost, mode};
}

ReachProblem ReachProblem::WithBurdenReduction(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("burden reduction factor must be positive and finite");
  }
  ReachProblem copy = *this;
  copy.cost.alpha /= factor;
  return copy;
}

double success_lhs(const AlgorithmCostModel& cost, const SurfaceCodeModel& code,
                   double q_logical) {
  if (!(q_logical >= 1.0)) throw DomainError("q_logical must be >= 1");
  const double log_arg = log_burden_argument(cost, code, q_logical);
  if (log_arg <= 0.0) {
    throw DomainError(
        "burden factor times Q_L^beta is <= 1; success condition is trivially "
        "satisfied");
  }
  return std::sqrt(8.0 * q_logical) * log_arg;
}

double success_rhs(const ScalabilityModel& scalability,
                   const SurfaceCodeModel& code, double q_phys) {
  scalability.Validate();
  code.Validate();
  if (!(q_phys >= 1.0)) throw DomainError("q_phys must be >= 1");
  const double log_ratio = std::log(code.p_th / scalability.p0);
  if (std::isinf(q_phys)) {
    // Only reachable under infinite scalability, where the margin is fixed.
    return log_ratio > 0.0 ? q_phys : -q_phys;
  }
  double margin;
  if (scalability.infinite()) {
    margin = log_ratio;
  } else if (scalability.kind == ScalabilityModel::Kind::kPowerLaw) {
    margin = log_ratio - std::log(q_phys) / scalability.scale;
  } else {
    margin = std::log(code.p_th / physical_error_rate(scalability, q_phys));
  }
  return std::sqrt(q_phys) * margin;
}

bool satisfies_success_condition(const ReachProblem& problem,
                                 std::uint64_t q_logical, double q_phys) {
  if (q_logical < 1) throw DomainError("q_logical must be >= 1");
  const double q_l = static_cast<double>(q_logical);
  if (problem.distance_mode == DistanceMode::kDiscreteOdd) {
    return satisfies_discrete(problem, q_l, q_phys);
  }
  const double rhs = success_rhs(problem.scalability, problem.code, q_phys);
  if (log_burden_argument(problem.cost, problem.code, q_l) <= 0.0) {
    return rhs >= 0.0;
  }
  return success_lhs(problem.cost, problem.code, q_l) <= rhs;
}

ReachResult max_logical_qubits_closed_form(const ReachProblem& problem) {
  require_power_law(problem);
  const double s = problem.scalability.scale;
  const double beta = problem.cost.beta;
  const double q_opt = optimal_physical_qubits(problem.scalability, problem.code);
  const double c = 8.0 * s * s * beta * beta;
  const double log_x =
      0.5 * (std::log(burden_factor(problem.cost, problem.code)) / beta +
             std::log(q_opt) - std::log(c));
  const double w = lambert_w0(std::exp(log_x));
  return analytic_result(problem, q_opt / (c * w * w), ReachMethod::kClosedForm);
}

ReachResult max_logical_qubits_lower_bound(const ReachProblem& problem) {
  require_power_law(problem);
  const double s = problem.scalability.scale;
  const double beta = problem.cost.beta;
  const double q_max = max_physical_qubits(problem.scalability, problem.code);
  const double e2 = std::exp(2.0);
  const double log_arg = std::log(burden_factor(problem.cost, problem.code)) / beta +
                         std::log(q_max) - std::log(8.0 * e2 * s * s * beta * beta);
  if (log_arg <= 0.0) {
    throw DomainError("lower bound requires its logarithm argument to exceed 1");
  }
  const double value = q_max / (2.0 * e2 * s * s * beta * beta * log_arg * log_arg);
  return analytic_result(problem, value, ReachMethod::kLowerBound);
}

ReachResult max_logical_qubits_numeric(const ReachProblem& problem) {
  if (problem.scalability.infinite()) {
    throw UnboundedError("reach is unbounded for infinite scalability");
  }
  const double q_opt = optimal_physical_qubits(problem.scalability, problem.code);
  auto feasible = [&](std::uint64_t q_logical) {
    if (problem.distance_mode == DistanceMode::kDiscreteOdd) {
      return required_discrete(problem, static_cast<double>(q_logical)).has_value();
    }
    return satisfies_success_condition(problem, q_logical, q_opt);
  };

  ReachResult r;
  r.q_phys_opt = q_opt;
  r.q_phys_max = max_physical_qubits(problem.scalability, problem.code);
  r.method = ReachMethod::kNumericSearch;
  if (!feasible(1)) return r;

  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kReachCeiling) {
      throw UnboundedError("reach search exceeded 2^53 logical qubits");
    }
  }
  // Invariant: feasible(lo), !feasible(hi).
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.q_logical_max = lo;
  r.q_logical_value = static_cast<double>(lo);
  return r;
}

std::optional<double> required_physical_qubits(const ReachProblem& problem,
                                               std::uint64_t q_logical) {
  if (q_logical < 1) throw DomainError("q_logical must be >= 1");
  if (problem.distance_mode == DistanceMode::kDiscreteOdd) {
    return required_discrete(problem, static_cast<double>(q_logical));
  }
  return required_continuous(problem, q_logical);
}

ContourSeries contour(const ReachProblem& problem, std::uint64_t q_first,
                      std::uint64_t q_last, std::uint64_t step) {
  if (q_first < 1 || q_last < q_first || step < 1) {
    throw DomainError("contour requires 1 <= q_first <= q_last and step >= 1");
  }
  const std::uint64_t n = (q_last - q_first) / step + 1;
  ContourSeries series;
  series.scalability_label = scalability_label(problem.scalability);
  series.points.resize(n);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const std::uint64_t q_l = q_first + static_cast<std::uint64_t>(i) * step;
    try {
      const auto q = required_physical_qubits(problem, q_l);
      series.points[i] = ContourPoint{
          q_l, q.value_or(std::numeric_limits<double>::quiet_NaN()),
          q.has_value()};
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return series;
}

std::string scalability_label(const ScalabilityModel& model) {
  std::ostringstream os;
  os << (model.kind == ScalabilityModel::Kind::kPowerLaw ? "s=" : "sigma=");
  if (model.infinite()) {
    os << "inf";
  } else {
    os << model.scale;
  }
  return os.str();
}

Regime classify_regime(double q_phys_max) {
  if (q_phys_max < kRegimeLevels[0]) return Regime::kNisq;
  if (q_phys_max < kRegimeLevels[1]) return Regime::kNisqToEftqc;
  if (q_phys_max < kRegimeLevels[2]) return Regime::kEftqc;
  if (q_phys_max < kRegimeLevels[3]) return Regime::kEftqcToFtqc;
  return Regime::kFtqc;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kNisq:
      return "NISQ";
    case Regime::kNisqToEftqc:
      return "NISQ->EFTQC";
    case Regime::kEftqc:
      return "EFTQC";
    case Regime::kEftqcToFtqc:
      return "EFTQC->FTQC";
    case Regime::kFtqc:
      return "FTQC";
  }
  return "?";
}

RegimeGrid regimes_grid(double s_min, double s_max, std::size_t s_points,
                        double ratio_min, double ratio_max,
                        std::size_t ratio_points, bool log_ratio) {
  if (s_points < 1 || ratio_points < 1) {
    throw DomainError("regimes grid needs at least one point per axis");
  }
  if (!(s_min > 0.0) || s_max < s_min) {
    throw DomainError("regimes grid needs 0 < s_min <= s_max");
  }
  if (!(ratio_min > 0.0) || ratio_max < ratio_min || ratio_max > 1.0) {
    throw DomainError("regimes grid needs 0 < ratio_min <= ratio_max <= 1");
  }
  auto axis = [](double lo, double hi, std::size_t n, bool logarithmic) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      v[i] = logarithmic ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                         : lo + t * (hi - lo);
    }
    // Pin the endpoints against rounding.
    v.front() = lo;
    v.back() = hi;
    return v;
  };

  RegimeGrid grid;
  grid.s_values = axis(s_min, s_max, s_points, false);
  grid.ratio_values = axis(ratio_min, ratio_max, ratio_points, log_ratio);
  grid.cells.resize(s_points * ratio_points);
#pragma omp parallel for collapse(2)
  for (std::size_t i = 0; i < s_points; ++i) {
    for (std::size_t j = 0; j < ratio_points; ++j) {
      const double s = grid.s_values[i];
      const double ratio = grid.ratio_values[j];
      const double q_max = std::pow(ratio, -s);
      grid.cells[i * ratio_points + j] = RegimeCell{s, ratio, q_max, classify_regime(q_max)};
    }
  }
  return grid;
}

const char* to_string(ReachMethod method) {
  switch (method) {
    case ReachMethod::kClosedForm:
      return "closed_form";
    case ReachMethod::kLowerBound:
      return "lower_bound";
    case ReachMethod::kNumericSearch:
      return "numeric";
  }
  return "?";
}

}  // namespace eftqc
