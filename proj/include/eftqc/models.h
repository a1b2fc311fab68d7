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

#ifndef EFTQC_MODELS_H_
#define EFTQC_MODELS_H_

#include <cstdint>
#include <limits>
#include <string>

namespace eftqc {

inline constexpr double kInfiniteScalability =
    std::numeric_limits<double>::infinity();

// Physical error rate as a function of the number of physical qubits.
//   PowerLaw:    p(Q) = p0 * Q^(1/s)
//   Logarithmic: p(Q) = p0 * (1 + ln(Q) / sigma)
// scale = +inf is the infinite-scalability sentinel: p(Q) == p0 for all Q.
struct ScalabilityModel {
  enum class Kind { kPowerLaw, kLogarithmic };

  Kind kind = Kind::kPowerLaw;
  double p0 = 1e-4;
  double scale = 3.5;

  static ScalabilityModel PowerLaw(double p0, double s);
  static ScalabilityModel Logarithmic(double p0, double sigma);

  // Throws DomainError unless 0 < p0 < 1 and scale > 0 (inf allowed).
  void Validate() const;
  bool infinite() const { return scale == kInfiniteScalability; }
};

struct SurfaceCodeModel {
  double A = 0.1;
  double p_th = 0.01;

  void Validate() const;
};

enum class ErrorBudgetMode { kUnionBound, kLogRefined };

// Gate count G_C = alpha * Q_L^beta and tolerable circuit error p_C.
// The defaults come from a power-law fit to a published QPE cost table.
struct AlgorithmCostModel {
  double alpha = 4.12e9;
  double beta = 0.515;
  double p_C = 0.1;
  ErrorBudgetMode error_budget_mode = ErrorBudgetMode::kUnionBound;

  void Validate() const;
};

enum class DistanceMode { kContinuous, kDiscreteOdd };

struct MsdFactoryRecord {
  std::string name;
  double p_phys;
  std::uint64_t q_factory;
  double p_out;
  std::uint64_t q_min_eftqc;
  double p_L;
};

enum class MsdQuality { kHigh, kLower };

// Values >= 1 are returned unclipped; callers treat them as "no valid
// operation possible".
double physical_error_rate(const ScalabilityModel& model, double q_phys);

// Q_phys at which the physical error rate reaches threshold. +inf for the
// infinite-scalability sentinel. Throws AboveThresholdError if p0 >= p_th.
double max_physical_qubits(const ScalabilityModel& model,
                           const SurfaceCodeModel& code);

// Maximizer of sqrt(Q) * ln(p_th / p(Q)) over [1, max_physical_qubits].
// Closed form Q_max / e^2 for the power law; golden-section search in
// ln(Q) for the logarithmic model.
double optimal_physical_qubits(const ScalabilityModel& model,
                               const SurfaceCodeModel& code);

// A * (p_phys / p_th)^((d + 1) / 2). DiscreteOdd mode requires d to be an odd
// integer. Values above 1 are returned as-is.
double logical_error_rate(const SurfaceCodeModel& code, double p_phys, double d,
                          DistanceMode mode = DistanceMode::kContinuous);

// 2 (d + 1)^2 Q_L.
double physical_qubits_for_code(double d, double q_logical);

double circuit_gate_count(const AlgorithmCostModel& cost, double q_logical);

// p_C (union bound) or ln(1 / (1 - p_C)) (log refined). The quantity every
// other budget expression divides by.
double circuit_error_budget(const AlgorithmCostModel& cost);

// Largest per-operation logical error rate for which the circuit succeeds.
double tolerable_logical_error(const AlgorithmCostModel& cost,
                               double q_logical);

// A * alpha / budget.
double burden_factor(const AlgorithmCostModel& cost,
                     const SurfaceCodeModel& code);

const MsdFactoryRecord& msd_minimum_footprint(MsdQuality quality);

const char* to_string(ScalabilityModel::Kind kind);
const char* to_string(ErrorBudgetMode mode);
const char* to_string(DistanceMode mode);

}  // namespace eftqc

#endif  // EFTQC_MODELS_H_
