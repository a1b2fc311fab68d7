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

#ifndef EFTQC_RFE_H_
#define EFTQC_RFE_H_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace eftqc::rfe {

// Algorithmic noise acting on the Hadamard-test likelihood.
//   Ideal:    P(z = +1) = (1 + cos(k theta + phi)) / 2
//   Gaussian: P(z = +1) = (1 + cos(k theta + phi) + eta_k) / 2, clamped
//   ExpDecay: P(z = +1) = (1 + exp(-k lambda) cos(k theta + phi)) / 2
struct NoiseModel {
  enum class Kind { kIdeal, kGaussian, kExpDecay };
  // How often eta is redrawn: once per circuit depth k, or once per shot.
  enum class EtaResample { kPerK, kPerShot };

  Kind kind = Kind::kIdeal;
  double sigma = 0.0;
  double lambda = 0.0;
  EtaResample eta_resample = EtaResample::kPerK;

  static NoiseModel Ideal() { return {}; }
  static NoiseModel Gaussian(double sigma,
                             EtaResample resample = EtaResample::kPerK) {
    return {Kind::kGaussian, sigma, 0.0, resample};
  }
  static NoiseModel ExpDecay(double lambda) {
    return {Kind::kExpDecay, 0.0, lambda, EtaResample::kPerK};
  }

  void Validate() const;
};

struct RfeExperiment {
  double theta = 0.0;       // true eigenphase in [0, 2pi)
  std::uint64_t K = 1;      // depths k drawn from {0, ..., K-1}
  std::uint64_t J = 2;      // Fourier grid size
  std::uint64_t M = 1;      // shots
  NoiseModel noise;
  std::uint64_t seed = 0;

  // Target accuracy 2pi / J.
  double epsilon() const;
  void Validate() const;
};

struct Shot {
  int z;  // +1 or -1
  std::uint64_t k;
  double phi;
  bool clamped;  // Gaussian probability left [0, 1] and was clamped
};

struct RfeResult {
  double theta_hat = 0.0;
  std::vector<std::complex<double>> spectrum;
  std::uint64_t peak_index = 0;
  std::uint64_t shots_used = 0;
  std::uint64_t clamp_events = 0;
};

struct OutcomeProbability {
  double value;
  bool clamped;
};

OutcomeProbability outcome_probability(double theta, std::uint64_t k,
                                       double phi, const NoiseModel& noise,
                                       double eta_k = 0.0);

// Deterministic shot source: shot `index` of an experiment is a pure function
// of (seed, index), independent of how shots are partitioned across threads.
class ShotSampler {
 public:
  explicit ShotSampler(const RfeExperiment& experiment);

  Shot operator()(std::uint64_t index) const;
  // The Gaussian perturbation used for depth k (PerK) or shot index (PerShot).
  double eta(std::uint64_t k, std::uint64_t shot_index) const;

 private:
  RfeExperiment experiment_;
};

Shot sample_shot(const RfeExperiment& experiment, std::uint64_t shot_index);

// 2 z exp(-i 2pi k j / J) exp(-i phi).
std::complex<double> shot_estimator(int z, std::uint64_t k, double phi,
                                    std::uint64_t J, std::uint64_t j);

// argmax_j |spectrum[j]|, lowest index on exact ties.
std::uint64_t decode_peak(std::span<const std::complex<double>> spectrum);

RfeResult run_rfe(const RfeExperiment& experiment);

// E[f_j] = (1/K) sum_k c_k exp(i k (theta - 2pi j / J)), c_k = 1 (Ideal) or
// exp(-k lambda) (ExpDecay). Throws DomainError for the Gaussian model.
std::vector<std::complex<double>> expected_spectrum(double theta,
                                                    std::uint64_t K,
                                                    std::uint64_t J,
                                                    const NoiseModel& noise);

// Distance on the circle, in [0, pi].
double circular_error(double theta_hat, double theta_true);

struct FailureEstimate {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

// Wilson score interval for a binomial proportion.
FailureEstimate wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                double z = kWilsonZ95);

// Seed of trial t of an experiment.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Failure means circular_error(theta_hat, theta) > epsilon.
bool is_failure(const RfeExperiment& experiment, const RfeResult& result);

FailureEstimate estimate_failure_rate(const RfeExperiment& experiment,
                                      std::uint64_t trials);

struct CalibrationOptions {
  std::uint64_t max_M = 100'000'000;
  // Bisection stops once hi - lo <= max(1, hi * resolution).
  double resolution = 1.0 / 32.0;
  int max_retries = 3;
};

struct SampleCalibration {
  std::uint64_t M = 0;
  FailureEstimate at_M;
  int probes = 0;
};

// Smallest probed M whose failure-rate Wilson upper bound is <= delta.
// `experiment_template.M` is ignored. Throws ConvergenceError past max_M.
SampleCalibration calibrate_samples(const RfeExperiment& experiment_template,
                                    double delta,
                                    std::uint64_t trials_per_probe,
                                    const CalibrationOptions& options = {});

// J / K: burden reduction relative to a QPE-depth circuit (K ~ J).
double burden_reduction_from_depth(std::uint64_t K, std::uint64_t J);

const char* to_string(NoiseModel::Kind kind);
const char* to_string(NoiseModel::EtaResample resample);

}  // namespace eftqc::rfe

#endif  // EFTQC_RFE_H_
