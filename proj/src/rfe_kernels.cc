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

#include "eftqc/rfe_kernels.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eftqc::rfe::kernels {
namespace {

// Number of chunks whose bucket arrays are held at once.
constexpr std::uint64_t kChunkGroup = 64;

RfeExperiment trial_experiment(const RfeExperiment& experiment,
                               std::uint64_t trial) {
  RfeExperiment e = experiment;
  e.seed = trial_seed(experiment.seed, trial);
  return e;
}

template <typename Accumulate>
bool trial_fails(const RfeExperiment& experiment, std::uint64_t trial,
                 Accumulate&& accumulate) {
  const RfeExperiment e = trial_experiment(experiment, trial);
  const Accumulation acc = accumulate(e);
  const std::uint64_t peak = decode_peak(acc.spectrum);
  const double theta_hat = 2.0 * std::numbers::pi * static_cast<double>(peak) /
                           static_cast<double>(e.J);
  return circular_error(theta_hat, e.theta) > e.epsilon();
}

}  // namespace

namespace serial {

Accumulation accumulate(const RfeExperiment& experiment) {
  const ShotSampler sampler(experiment);
  Accumulation out;
  out.spectrum.assign(experiment.J, 0.0);
  for (std::uint64_t i = 0; i < experiment.M; ++i) {
    const Shot shot = sampler(i);
    out.clamp_events += shot.clamped ? 1 : 0;
    for (std::uint64_t j = 0; j < experiment.J; ++j) {
      out.spectrum[j] += shot_estimator(shot.z, shot.k, shot.phi, experiment.J, j);
    }
  }
  for (auto& f : out.spectrum) f /= static_cast<double>(experiment.M);
  return out;
}

std::uint64_t count_failures(const RfeExperiment& experiment,
                             std::uint64_t trials) {
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    failures += trial_fails(experiment, t, serial::accumulate) ? 1 : 0;
  }
  return failures;
}

}  // namespace serial

namespace parallel {

Accumulation accumulate(const RfeExperiment& experiment) {
  const ShotSampler sampler(experiment);
  const std::uint64_t K = experiment.K;
  const std::uint64_t J = experiment.J;
  const std::uint64_t M = experiment.M;
  const std::uint64_t n_chunks = (M + kChunkShots - 1) / kChunkShots;

  // buckets[k] = sum over shots with depth k of 2 z exp(-i phi).
  std::vector<std::complex<double>> buckets(K, 0.0);
  std::uint64_t clamp_events = 0;
  std::vector<std::complex<double>> partial(kChunkGroup * K);
  std::vector<std::uint64_t> partial_clamps(kChunkGroup);

  for (std::uint64_t group = 0; group < n_chunks; group += kChunkGroup) {
    const std::uint64_t group_size = std::min(kChunkGroup, n_chunks - group);
    std::fill(partial.begin(), partial.begin() + group_size * K, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(group_size); ++c) {
      const std::uint64_t first = (group + c) * kChunkShots;
      const std::uint64_t last = std::min(M, first + kChunkShots);
      std::complex<double>* local = partial.data() + c * K;
      std::uint64_t clamps = 0;
      for (std::uint64_t i = first; i < last; ++i) {
        const Shot shot = sampler(i);
        clamps += shot.clamped ? 1 : 0;
        local[shot.k] += std::polar(2.0 * shot.z, -shot.phi);
      }
      partial_clamps[c] = clamps;
    }
    for (std::uint64_t c = 0; c < group_size; ++c) {
      for (std::uint64_t k = 0; k < K; ++k) buckets[k] += partial[c * K + k];
      clamp_events += partial_clamps[c];
    }
  }

  // Roots of unity exp(-i 2pi m / J); f_j = sum_k buckets[k] root[k j mod J].
  std::vector<std::complex<double>> roots(J);
  for (std::uint64_t m = 0; m < J; ++m) {
    roots[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) /
                                   static_cast<double>(J));
  }
  Accumulation out;
  out.spectrum.resize(J);
  out.clamp_events = clamp_events;
  const double inv_m = 1.0 / static_cast<double>(M);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(J); ++j) {
    std::complex<double> sum = 0.0;
    std::uint64_t m = 0;
    for (std::uint64_t k = 0; k < K; ++k) {
      sum += buckets[k] * roots[m];
      m += static_cast<std::uint64_t>(j);
      if (m >= J) m %= J;
    }
    out.spectrum[j] = sum * inv_m;
  }
  return out;
}

std::uint64_t count_failures(const RfeExperiment& experiment,
                             std::uint64_t trials) {
  std::uint64_t failures = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    failures += trial_fails(experiment, static_cast<std::uint64_t>(t),
                            parallel::accumulate)
                    ? 1
                    : 0;
  }
  return failures;
}

}  // namespace parallel
}  // namespace eftqc::rfe::kernels
