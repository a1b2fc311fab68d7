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

#include "eftqc/rfe.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eftqc/error.h"
#include "eftqc/rfe_kernels.h"
#include "eftqc/rng.h"

namespace eftqc::rfe {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Philox stream tags; one per kind of draw.
constexpr std::uint32_t kShotTag = 1;
constexpr std::uint32_t kDepthTag = 2;
constexpr std::uint32_t kEtaTag = 3;

// derive_seed domains.
constexpr std::uint64_t kTrialDomain = 0x7472'6961'6cULL;  // "trial"
constexpr std::uint64_t kProbeDomain = 0x7072'6f62'65ULL;  // "probe"

RfeResult make_result(const RfeExperiment& experiment,
                      kernels::Accumulation&& acc) {
  RfeResult r;
  r.spectrum = std::move(acc.spectrum);
  r.clamp_events = acc.clamp_events;
  r.peak_index = decode_peak(r.spectrum);
  r.theta_hat = kTwoPi * static_cast<double>(r.peak_index) /
                static_cast<double>(experiment.J);
  r.shots_used = experiment.M;
  return r;
}

}  // namespace

void NoiseModel::Validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("noise sigma must be finite and >= 0");
  }
  if (!(lambda >= 0.0)) throw DomainError("noise lambda must be >= 0");
}

double RfeExperiment::epsilon() const {
  return kTwoPi / static_cast<double>(J);
}

void RfeExperiment::Validate() const {
  if (!(theta >= 0.0 && theta < kTwoPi)) {
    throw DomainError("theta must lie in [0, 2pi)");
  }
  if (K < 1) throw DomainError("K must be >= 1");
  if (J < 2) throw DomainError("J must be >= 2");
  if (M < 1) throw DomainError("M must be >= 1");
  noise.Validate();
}

OutcomeProbability outcome_probability(double theta, std::uint64_t k,
                                       double phi, const NoiseModel& noise,
                                       double eta_k) {
  const double signal = std::cos(static_cast<double>(k) * theta + phi);
  switch (noise.kind) {
    case NoiseModel::Kind::kIdeal:
      return {0.5 * (1.0 + signal), false};
    case NoiseModel::Kind::kGaussian: {
      const double p = 0.5 * (1.0 + signal + eta_k);
      if (p < 0.0) return {0.0, true};
      if (p > 1.0) return {1.0, true};
      return {p, false};
    }
    case NoiseModel::Kind::kExpDecay: {
      // exp(-k lambda) -> 0 for lambda = inf, k >= 1; k = 0 stays undamped.
      const double decay =
          k == 0 ? 1.0 : std::exp(-static_cast<double>(k) * noise.lambda);
      return {0.5 * (1.0 + decay * signal), false};
    }
  }
  return {0.5, false};
}

ShotSampler::ShotSampler(const RfeExperiment& experiment)
    : experiment_(experiment) {}

double ShotSampler::eta(std::uint64_t k, std::uint64_t shot_index) const {
  if (experiment_.noise.kind != NoiseModel::Kind::kGaussian ||
      experiment_.noise.sigma == 0.0) {
    return 0.0;
  }
  const RandomStream stream(experiment_.seed, kEtaTag);
  const std::uint64_t index =
      experiment_.noise.eta_resample == NoiseModel::EtaResample::kPerK
          ? k
          : shot_index;
  const auto w = stream.words(index);
  return experiment_.noise.sigma * to_normal(w[0], w[1]);
}

Shot ShotSampler::operator()(std::uint64_t index) const {
  const RandomStream shots(experiment_.seed, kShotTag);
  const RandomStream depths(experiment_.seed, kDepthTag);
  const auto w = shots.words(index);
  const std::uint64_t k = to_range(depths.words(index)[0], experiment_.K);
  const double phi = kTwoPi * to_unit(w[0]);
  const auto p = outcome_probability(experiment_.theta, k, phi,
                                     experiment_.noise, eta(k, index));
  return Shot{to_unit(w[1]) < p.value ? 1 : -1, k, phi, p.clamped};
}

Shot sample_shot(const RfeExperiment& experiment, std::uint64_t shot_index) {
  return ShotSampler(experiment)(shot_index);
}

std::complex<double> shot_estimator(int z, std::uint64_t k, double phi,
                                    std::uint64_t J, std::uint64_t j) {
  // Reduce k j mod J before scaling to keep the angle small and exact.
  const std::uint64_t m = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(k) * j) % J);
  const double angle =
      -kTwoPi * static_cast<double>(m) / static_cast<double>(J) - phi;
  return std::polar(2.0 * static_cast<double>(z), angle);
}

std::uint64_t decode_peak(std::span<const std::complex<double>> spectrum) {
  std::uint64_t best = 0;
  double best_norm = -1.0;
  for (std::uint64_t j = 0; j < spectrum.size(); ++j) {
    const double n = std::norm(spectrum[j]);
    if (n > best_norm) {
      best_norm = n;
      best = j;
    }
  }
  return best;
}

RfeResult run_rfe(const RfeExperiment& experiment) {
  experiment.Validate();
  return make_result(experiment, kernels::parallel::accumulate(experiment));
}

std::vector<std::complex<double>> expected_spectrum(double theta,
                                                    std::uint64_t K,
                                                    std::uint64_t J,
                                                    const NoiseModel& noise) {
  if (noise.kind == NoiseModel::Kind::kGaussian) {
    throw DomainError(
        "expected spectrum is realization dependent under Gaussian noise");
  }
  if (K < 1 || J < 2) throw DomainError("expected spectrum needs K >= 1, J >= 2");
  noise.Validate();
  std::vector<std::complex<double>> out(J);
  for (std::uint64_t j = 0; j < J; ++j) {
    const double offset =
        theta - kTwoPi * static_cast<double>(j) / static_cast<double>(J);
    std::complex<double> sum = 0.0;
    for (std::uint64_t k = 0; k < K; ++k) {
      const double c = noise.kind == NoiseModel::Kind::kExpDecay && k > 0
                           ? std::exp(-static_cast<double>(k) * noise.lambda)
                           : 1.0;
      sum += std::polar(c, static_cast<double>(k) * offset);
    }
    out[j] = sum / static_cast<double>(K);
  }
  return out;
}

double circular_error(double theta_hat, double theta_true) {
  const double d = std::fabs(std::remainder(theta_hat - theta_true, kTwoPi));
  return std::min(d, std::numbers::pi);
}

FailureEstimate wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                double z) {
  if (trials == 0) throw DomainError("wilson interval needs trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return FailureEstimate{trials, failures, p, std::max(0.0, center - half),
                         std::min(1.0, center + half)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return derive_seed(seed, trial, kTrialDomain);
}

bool is_failure(const RfeExperiment& experiment, const RfeResult& result) {
  return circular_error(result.theta_hat, experiment.theta) > experiment.epsilon();
}

FailureEstimate estimate_failure_rate(const RfeExperiment& experiment,
                                      std::uint64_t trials) {
  experiment.Validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  return wilson_interval(kernels::parallel::count_failures(experiment, trials),
                         trials);
}

SampleCalibration calibrate_samples(const RfeExperiment& experiment_template,
                                    double delta,
                                    std::uint64_t trials_per_probe,
                                    const CalibrationOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (trials_per_probe < 1) throw DomainError("trials_per_probe must be >= 1");
  RfeExperiment probe_experiment = experiment_template;
  probe_experiment.M = 1;
  probe_experiment.Validate();

  SampleCalibration out;
  auto probe = [&](std::uint64_t m, int attempt) {
    RfeExperiment e = experiment_template;
    e.M = m;
    e.seed = derive_seed(experiment_template.seed, m,
                         kProbeDomain + static_cast<std::uint64_t>(attempt));
    ++out.probes;
    return estimate_failure_rate(e, trials_per_probe);
  };

  // lo == 0 means no failing M is known yet.
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  FailureEstimate at_hi;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    // Grow until a pass.
    for (;;) {
      at_hi = probe(hi, attempt);
      if (at_hi.ci_high <= delta) break;
      lo = hi;
      hi *= 2;
      if (hi > options.max_M) {
        throw ConvergenceError(
            "sample calibration exceeded the M ceiling; the (noise, delta, "
            "epsilon) combination looks infeasible");
      }
    }
    // Shrink the bracket (lo fails, hi passes).
    while (hi - lo > std::max<std::uint64_t>(
                         1, static_cast<std::uint64_t>(
                                static_cast<double>(hi) * options.resolution))) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const FailureEstimate e = probe(mid, attempt);
      if (e.ci_high <= delta) {
        hi = mid;
        at_hi = e;
      } else {
        lo = mid;
      }
    }
    // Confirm on an independent probe; a failure means the bracket was
    // placed by an unlucky non-monotone draw, so restart above it.
    if (attempt == options.max_retries) break;
    const FailureEstimate check = probe(hi, attempt + 1);
    if (check.ci_high <= delta) break;
    lo = hi;
    hi *= 2;
    if (hi > options.max_M) {
      throw ConvergenceError("sample calibration exceeded the M ceiling");
    }
  }
  out.M = hi;
  out.at_M = at_hi;
  return out;
}

double burden_reduction_from_depth(std::uint64_t K, std::uint64_t J) {
  if (K < 1 || J < 1) throw DomainError("K and J must be >= 1");
  if (K > J) throw DomainError("circuit depth K may not exceed J");
  return static_cast<double>(J) / static_cast<double>(K);
}

const char* to_string(NoiseModel::Kind kind) {
  switch (kind) {
    case NoiseModel::Kind::kIdeal:
      return "ideal";
    case NoiseModel::Kind::kGaussian:
      return "gaussian";
    case NoiseModel::Kind::kExpDecay:
      return "exp_decay";
  }
  return "?";
}

const char* to_string(NoiseModel::EtaResample resample) {
  return resample == NoiseModel::EtaResample::kPerK ? "per_k" : "per_shot";
}

}  // namespace eftqc::rfe
