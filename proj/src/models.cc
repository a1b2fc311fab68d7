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

#include "eftqc/models.h"

#include <cmath>

#include "eftqc/error.h"

namespace eftqc {
namespace {

bool is_probability(double p) { return std::isfinite(p) && p > 0.0 && p < 1.0; }

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

void require_sub_threshold(const ScalabilityModel& model,
                           const SurfaceCodeModel& code) {
  model.Validate();
  code.Validate();
  if (model.p0 >= code.p_th) {
    throw AboveThresholdError(
        "base error rate p0 is not below threshold; no sub-threshold regime");
  }
}

// ln(p_th / p(e^u)) for the logarithmic model, written in u = ln(Q).
double log_margin_logarithmic(const ScalabilityModel& model,
                              const SurfaceCodeModel& code, double u) {
  return std::log(code.p_th / model.p0) - std::log1p(u / model.scale);
}

}  // namespace

ScalabilityModel ScalabilityModel::PowerLaw(double p0, double s) {
  ScalabilityModel m{Kind::kPowerLaw, p0, s};
  m.Validate();
  return m;
}

ScalabilityModel ScalabilityModel::Logarithmic(double p0, double sigma) {
  ScalabilityModel m{Kind::kLogarithmic, p0, sigma};
  m.Validate();
  return m;
}

void ScalabilityModel::Validate() const {
  require(is_probability(p0), "scalability p0 must lie in (0, 1)");
  require(!std::isnan(scale) && scale > 0.0,
          "scalability parameter must be positive");
}

void SurfaceCodeModel::Validate() const {
  require(std::isfinite(A) && A > 0.0, "surface code A must be positive");
  require(is_probability(p_th), "surface code p_th must lie in (0, 1)");
}

void AlgorithmCostModel::Validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be non-negative");
  require(is_probability(p_C), "p_C must lie in (0, 1)");
}

double physical_error_rate(const ScalabilityModel& model, double q_phys) {
  model.Validate();
  require(!std::isnan(q_phys) && q_phys >= 1.0, "q_phys must be >= 1");
  if (model.infinite()) return model.p0;
  switch (model.kind) {
    case ScalabilityModel::Kind::kPowerLaw:
      return model.p0 * std::pow(q_phys, 1.0 / model.scale);
    case ScalabilityModel::Kind::kLogarithmic:
      return model.p0 * (1.0 + std::log(q_phys) / model.scale);
  }
  return model.p0;
}

double max_physical_qubits(const ScalabilityModel& model,
                           const SurfaceCodeModel& code) {
  require_sub_threshold(model, code);
  if (model.infinite()) return kInfiniteScalability;
  switch (model.kind) {
    case ScalabilityModel::Kind::kPowerLaw:
      return std::pow(code.p_th / model.p0, model.scale);
    case ScalabilityModel::Kind::kLogarithmic:
      return std::exp(model.scale * (code.p_th - model.p0) / model.p0);
  }
  return kInfiniteScalability;
}

double optimal_physical_qubits(const ScalabilityModel& model,
                               const SurfaceCodeModel& code) {
  const double q_max = max_physical_qubits(model, code);
  if (model.infinite()) return kInfiniteScalability;
  if (model.kind == ScalabilityModel::Kind::kPowerLaw) {
    return std::pow(code.p_th / model.p0, model.scale) *
           std::exp(-2.0);
  }

  // ln of the objective: u/2 + ln(ln(p_th / p)), log-concave in u = ln(Q).
  auto objective = [&](double u) {
    const double margin = log_margin_logarithmic(model, code, u);
    if (margin <= 0.0) return -std::numeric_limits<double>::infinity();
    return 0.5 * u + std::log(margin);
  };
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0;
  double hi = std::log(q_max);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int iter = 0; iter < 400 && hi - lo > 1e-13 * (1.0 + hi); ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double logical_error_rate(const SurfaceCodeModel& code, double p_phys, double d,
                          DistanceMode mode) {
  code.Validate();
  require(std::isfinite(p_phys) && p_phys > 0.0, "p_phys must be positive");
  require(std::isfinite(d) && d >= 1.0, "code distance must be >= 1");
  if (mode == DistanceMode::kDiscreteOdd) {
    require(d == std::floor(d) && std::fmod(d, 2.0) == 1.0,
            "discrete code distance must be an odd integer");
  }
  return code.A * std::pow(p_phys / code.p_th, 0.5 * (d + 1.0));
}

double physical_qubits_for_code(double d, double q_logical) {
  require(std::isfinite(d) && d >= 1.0, "code distance must be >= 1");
  require(std::isfinite(q_logical) && q_logical >= 1.0, "q_logical must be >= 1");
  return 2.0 * (d + 1.0) * (d + 1.0) * q_logical;
}

double circuit_gate_count(const AlgorithmCostModel& cost, double q_logical) {
  cost.Validate();
  require(std::isfinite(q_logical) && q_logical >= 1.0, "q_logical must be >= 1");
  return cost.alpha * std::pow(q_logical, cost.beta);
}

double circuit_error_budget(const AlgorithmCostModel& cost) {
  cost.Validate();
  switch (cost.error_budget_mode) {
    case ErrorBudgetMode::kUnionBound:
      return cost.p_C;
    case ErrorBudgetMode::kLogRefined:
      return -std::log1p(-cost.p_C);
  }
  return cost.p_C;
}

double tolerable_logical_error(const AlgorithmCostModel& cost,
                               double q_logical) {
  return circuit_error_budget(cost) / circuit_gate_count(cost, q_logical);
}

double burden_factor(const AlgorithmCostModel& cost,
                     const SurfaceCodeModel& code) {
  code.Validate();
  return code.A * cost.alpha / circuit_error_budget(cost);
}

const MsdFactoryRecord& msd_minimum_footprint(MsdQuality quality) {
  // Smallest known 15-to-1 distillation widgets; q_min_eftqc adds one
  // distance-3 logical qubit (32 physical qubits) to the factory footprint.
  static const MsdFactoryRecord kHigh{"(15-to-1)_{5,3,3}", 1e-4, 522, 4.7e-6,
                                      554, 1e-5};
  static const MsdFactoryRecord kLower{"(15-to-1)_{7,3,3}", 1e-3, 810, 5.4e-4,
                                       842, 1e-3};
  return quality == MsdQuality::kHigh ? kHigh : kLower;
}

const char* to_string(ScalabilityModel::Kind kind) {
  return kind == ScalabilityModel::Kind::kPowerLaw ? "power_law" : "logarithmic";
}

const char* to_string(ErrorBudgetMode mode) {
  return mode == ErrorBudgetMode::kUnionBound ? "union_bound" : "log_refined";
}

const char* to_string(DistanceMode mode) {
  return mode == DistanceMode::kContinuous ? "continuous" : "discrete_odd";
}

}  // namespace eftqc
