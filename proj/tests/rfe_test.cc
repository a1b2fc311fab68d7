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

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "eftqc/error.h"
#include "eftqc/rfe_kernels.h"

using namespace eftqc::rfe;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RfeExperiment on_grid(std::uint64_t K, std::uint64_t J, std::uint64_t j_star,
                      std::uint64_t M, std::uint64_t seed = 1,
                      NoiseModel noise = NoiseModel::Ideal()) {
  RfeExperiment e;
  e.theta = kTwoPi * static_cast<double>(j_star) / static_cast<double>(J);
  e.K = K;
  e.J = J;
  e.M = M;
  e.seed = seed;
  e.noise = noise;
  return e;
}

// Direct long-double summation of the mean estimator.
std::complex<long double> mean_oracle(double theta, std::uint64_t K, std::uint64_t J,
                                      std::uint64_t j, long double lambda) {
  const long double pi = std::numbers::pi_v<long double>;
  std::complex<long double> sum = 0;
  for (std::uint64_t k = 0; k < K; ++k) {
    const long double angle = k * (static_cast<long double>(theta) - 2 * pi * j / J);
    sum += std::exp(-lambda * k) * std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return sum / static_cast<long double>(K);
}

}  // namespace

TEST(OutcomeProbability, Examples) {
  EXPECT_DOUBLE_EQ(outcome_probability(0.0, 0, 0.0, NoiseModel::Ideal()).value, 1.0);
  EXPECT_NEAR(outcome_probability(0.0, 3, std::numbers::pi / 2, NoiseModel::Ideal()).value, 0.5,
              1e-16);
  EXPECT_NEAR(outcome_probability(0.3, 2, 0.1, NoiseModel::Ideal()).value,
              0.5 * (1.0 + std::cos(0.7)), 1e-16);
  EXPECT_NEAR(outcome_probability(0.0, 1, 0.0, NoiseModel::ExpDecay(800.0)).value, 0.5, 1e-16);
  EXPECT_NEAR(outcome_probability(0.0, 2, 0.0, NoiseModel::ExpDecay(0.5)).value,
              0.5 * (1.0 + std::exp(-1.0)), 1e-16);
  // Depth 0 is never damped.
  EXPECT_DOUBLE_EQ(outcome_probability(0.0, 0, 0.0, NoiseModel::ExpDecay(5.0)).value, 1.0);
}

TEST(OutcomeProbability, GaussianShiftAndClamp) {
  const NoiseModel g = NoiseModel::Gaussian(0.1);
  const auto shifted = outcome_probability(0.0, 1, std::numbers::pi / 2, g, 0.2);
  EXPECT_NEAR(shifted.value, 0.6, 1e-15);
  EXPECT_FALSE(shifted.clamped);
  const auto high = outcome_probability(0.0, 0, 0.0, g, 0.2);
  EXPECT_EQ(high.value, 1.0);
  EXPECT_TRUE(high.clamped);
  const auto low = outcome_probability(0.0, 0, std::numbers::pi, g, -0.2);
  EXPECT_EQ(low.value, 0.0);
  EXPECT_TRUE(low.clamped);
}

TEST(ShotSampler, SingleDepthIsZero) {
  const RfeExperiment e = on_grid(1, 8, 3, 1000);
  for (std::uint64_t i = 0; i < 1000; ++i) EXPECT_EQ(sample_shot(e, i).k, 0u);
}

TEST(ShotSampler, Deterministic) {
  const RfeExperiment e = on_grid(16, 16, 3, 1000, 77);
  const ShotSampler a(e), b(e);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Shot x = a(i), y = b(i);
    EXPECT_EQ(x.z, y.z);
    EXPECT_EQ(x.k, y.k);
    EXPECT_EQ(x.phi, y.phi);
    EXPECT_GE(x.phi, 0.0);
    EXPECT_LT(x.phi, kTwoPi);
  }
}

TEST(ShotSampler, DepthsAreUniform) {
  const RfeExperiment e = on_grid(8, 8, 1, 80000, 5);
  std::vector<int> counts(8, 0);
  for (std::uint64_t i = 0; i < e.M; ++i) ++counts[sample_shot(e, i).k];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 1e4) * (c - 1e4) / 1e4;
  EXPECT_LT(chi2, 29.9);  // 0.9999 quantile, 7 degrees of freedom
}

TEST(ShotSampler, OutcomeMeanMatchesCosine) {
  // E[z | k, phi] = cos(k theta + phi), so E[z cos] = 1/2 and E[z sin] = 0.
  const RfeExperiment e = on_grid(13, 32, 7, 100000, 11);
  double zc = 0.0, zs = 0.0;
  for (std::uint64_t i = 0; i < e.M; ++i) {
    const Shot s = sample_shot(e, i);
    const double a = static_cast<double>(s.k) * e.theta + s.phi;
    zc += s.z * std::cos(a);
    zs += s.z * std::sin(a);
  }
  const double n = static_cast<double>(e.M);
  EXPECT_NEAR(zc / n, 0.5, 5.0 / std::sqrt(n));
  EXPECT_NEAR(zs / n, 0.0, 5.0 / std::sqrt(n));
}

TEST(ShotSampler, ConditionalMeanInNarrowPhaseWindow) {
  // K = 1: bin shots with phi near phi0 and compare with cos(phi0).
  const RfeExperiment e = on_grid(1, 4, 0, 400000, 3);
  for (double phi0 : {0.3, 1.4, 2.0, 4.0}) {
    double sum = 0.0, n = 0.0;
    for (std::uint64_t i = 0; i < e.M; ++i) {
      const Shot s = sample_shot(e, i);
      if (std::abs(s.phi - phi0) < 0.02) {
        sum += s.z;
        n += 1.0;
      }
    }
    ASSERT_GT(n, 1000.0);
    // Window-averaged cosine differs from cos(phi0) by under 1e-4.
    EXPECT_NEAR(sum / n, std::cos(phi0), 5.0 / std::sqrt(n));
  }
}

TEST(ShotEstimator, Examples) {
  EXPECT_EQ(shot_estimator(1, 0, 0.0, 16, 5), std::complex<double>(2.0, 0.0));
  const auto flipped = shot_estimator(-1, 0, std::numbers::pi, 16, 3);
  EXPECT_NEAR(flipped.real(), 2.0, 1e-15);
  EXPECT_NEAR(flipped.imag(), 0.0, 1e-15);
  const auto quarter = shot_estimator(1, 1, 0.0, 4, 1);  // exp(-i pi / 2)
  EXPECT_NEAR(quarter.real(), 0.0, 1e-15);
  EXPECT_NEAR(quarter.imag(), -2.0, 1e-15);
  for (std::uint64_t k = 0; k < 40; k += 3) {
    EXPECT_NEAR(std::abs(shot_estimator(-1, k, 0.1 * k, 37, k % 37)), 2.0, 1e-14);
  }
}

TEST(DecodePeak, LowestIndexOnTies) {
  const std::vector<std::complex<double>> flat(8, {1.0, 0.0});
  EXPECT_EQ(decode_peak(flat), 0u);
  std::vector<std::complex<double>> two = {{0, 0}, {0, 2}, {2, 0}, {1, 1}};
  EXPECT_EQ(decode_peak(two), 1u);
}

TEST(RunRfe, SingleShotSpectrumHasModulusTwo) {
  const RfeResult r = run_rfe(on_grid(16, 16, 4, 1, 9));
  ASSERT_EQ(r.spectrum.size(), 16u);
  for (const auto& f : r.spectrum) EXPECT_NEAR(std::abs(f), 2.0, 1e-12);
  EXPECT_EQ(r.shots_used, 1u);
}

TEST(RunRfe, DeterministicAndSelfConsistent) {
  const RfeExperiment e = on_grid(32, 32, 9, 5000, 123);
  const RfeResult a = run_rfe(e), b = run_rfe(e);
  EXPECT_EQ(a.spectrum, b.spectrum);
  EXPECT_EQ(a.peak_index, b.peak_index);
  EXPECT_EQ(a.theta_hat, kTwoPi * static_cast<double>(a.peak_index) / 32.0);
  EXPECT_EQ(a.peak_index, decode_peak(a.spectrum));
  for (const auto& f : a.spectrum) EXPECT_LE(std::abs(f), 2.0);
}

TEST(RunRfe, FindsOnGridPeak) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EXPECT_EQ(run_rfe(on_grid(64, 64, 5, 50000, seed)).peak_index, 5u);
  }
}

TEST(Kernels, SerialAndParallelAgree) {
  for (const NoiseModel& noise :
       {NoiseModel::Ideal(), NoiseModel::ExpDecay(0.1), NoiseModel::Gaussian(0.3),
        NoiseModel::Gaussian(0.3, NoiseModel::EtaResample::kPerShot)}) {
    const RfeExperiment e = on_grid(24, 40, 11, 20000, 8, noise);
    const auto s = kernels::serial::accumulate(e);
    const auto p = kernels::parallel::accumulate(e);
    ASSERT_EQ(s.spectrum.size(), p.spectrum.size());
    for (std::size_t j = 0; j < s.spectrum.size(); ++j) {
      EXPECT_NEAR(std::abs(s.spectrum[j] - p.spectrum[j]), 0.0, 1e-12) << j;
    }
    EXPECT_EQ(s.clamp_events, p.clamp_events);
    const RfeExperiment small = on_grid(16, 16, 3, 40, 4, noise);
    EXPECT_EQ(kernels::serial::count_failures(small, 60),
              kernels::parallel::count_failures(small, 60));
  }
}

TEST(ExpectedSpectrum, Examples) {
  const auto peak = expected_spectrum(kTwoPi * 5 / 64, 64, 64, NoiseModel::Ideal());
  EXPECT_NEAR(peak[5].real(), 1.0, 1e-13);
  EXPECT_NEAR(peak[5].imag(), 0.0, 1e-13);
  for (const auto& f : expected_spectrum(1.234, 1, 16, NoiseModel::Ideal())) {
    EXPECT_NEAR(std::abs(f), 1.0, 1e-15);
  }
  EXPECT_THROW(expected_spectrum(0.1, 8, 8, NoiseModel::Gaussian(0.1)), eftqc::DomainError);
}

TEST(ExpectedSpectrum, MatchesDirectSummation) {
  for (double lambda : {0.0, 0.05, 0.3}) {
    const NoiseModel noise = lambda == 0.0 ? NoiseModel::Ideal() : NoiseModel::ExpDecay(lambda);
    const auto f = expected_spectrum(2.1, 20, 48, noise);
    for (std::uint64_t j = 0; j < 48; ++j) {
      const auto o = mean_oracle(2.1, 20, 48, j, lambda);
      EXPECT_NEAR(f[j].real(), static_cast<double>(o.real()), 1e-13);
      EXPECT_NEAR(f[j].imag(), static_cast<double>(o.imag()), 1e-13);
    }
  }
}

TEST(ExpectedSpectrum, DecayKeepsArgmaxAndLowersPeak) {
  for (std::uint64_t j_star = 0; j_star < 64; ++j_star) {
    const double theta = kTwoPi * static_cast<double>(j_star) / 64.0;
    const auto ideal = expected_spectrum(theta, 64, 64, NoiseModel::Ideal());
    const auto decayed = expected_spectrum(theta, 64, 64, NoiseModel::ExpDecay(0.3));
    EXPECT_EQ(decode_peak(decayed), decode_peak(ideal));
    EXPECT_EQ(decode_peak(ideal), j_star);
    EXPECT_LT(std::abs(decayed[j_star]), std::abs(ideal[j_star]));
  }
}

TEST(Unbiasedness, ShotAverageConvergesToMean) {
  constexpr std::uint64_t kM = 200000;
  const double tol = 5.0 * 2.0 / std::sqrt(static_cast<double>(kM));
  for (const NoiseModel& noise : {NoiseModel::Ideal(), NoiseModel::ExpDecay(0.1)}) {
    RfeExperiment e = on_grid(32, 32, 0, kM, 31, noise);
    e.theta = 1.0;  // off-grid on purpose
    const RfeResult r = run_rfe(e);
    const auto mean = expected_spectrum(e.theta, 32, 32, noise);
    for (std::size_t j = 0; j < 32; ++j) {
      EXPECT_LE(std::abs(r.spectrum[j] - mean[j]), tol) << j;
    }
  }
}

TEST(GaussianNoise, ZeroSigmaIsIdeal) {
  const RfeResult ideal = run_rfe(on_grid(16, 32, 3, 3000, 2));
  const RfeResult g = run_rfe(on_grid(16, 32, 3, 3000, 2, NoiseModel::Gaussian(0.0)));
  EXPECT_EQ(ideal.spectrum, g.spectrum);
  EXPECT_EQ(g.clamp_events, 0u);
}

TEST(GaussianNoise, LargeSigmaClampsAndStaysBounded) {
  for (auto resample : {NoiseModel::EtaResample::kPerK, NoiseModel::EtaResample::kPerShot}) {
    const RfeResult r = run_rfe(on_grid(16, 16, 3, 5000, 2, NoiseModel::Gaussian(0.8, resample)));
    EXPECT_GT(r.clamp_events, 0u);
    for (const auto& f : r.spectrum) EXPECT_LE(std::abs(f), 2.0);
  }
}

TEST(GaussianNoise, PerKEtaIsSharedAcrossShots) {
  const RfeExperiment e = on_grid(8, 8, 1, 10, 6, NoiseModel::Gaussian(0.2));
  const ShotSampler s(e);
  EXPECT_EQ(s.eta(3, 0), s.eta(3, 9));
  EXPECT_NE(s.eta(3, 0), s.eta(4, 0));
  const RfeExperiment ps =
      on_grid(8, 8, 1, 10, 6, NoiseModel::Gaussian(0.2, NoiseModel::EtaResample::kPerShot));
  EXPECT_NE(ShotSampler(ps).eta(3, 0), ShotSampler(ps).eta(3, 9));
}

TEST(CircularError, Examples) {
  EXPECT_EQ(circular_error(0.0, 0.0), 0.0);
  EXPECT_NEAR(circular_error(0.1, kTwoPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(circular_error(0.0, std::numbers::pi), std::numbers::pi, 1e-15);
  EXPECT_NEAR(circular_error(kTwoPi - 0.1, 0.1), 0.2, 1e-15);
}

TEST(CircularError, OnePeakBinIsWithinEpsilon) {
  for (std::uint64_t J : {4u, 16u, 64u}) {
    const double theta = 0.77;
    const auto j = static_cast<std::uint64_t>(std::llround(J * theta / kTwoPi)) % J;
    const double err = circular_error(kTwoPi * static_cast<double>(j) / J, theta);
    EXPECT_LE(err, std::numbers::pi / J + 1e-15);
    EXPECT_LT(err, kTwoPi / J);
  }
}

TEST(WilsonInterval, KnownValues) {
  const FailureEstimate half = wilson_interval(5, 10);
  EXPECT_NEAR(half.rate, 0.5, 1e-15);
  EXPECT_NEAR(half.ci_low, 0.236593090512564, 1e-9);
  EXPECT_NEAR(half.ci_high, 0.763406909487436, 1e-9);
  const FailureEstimate none = wilson_interval(0, 10);
  EXPECT_EQ(none.ci_low, 0.0);
  EXPECT_NEAR(none.ci_high, 0.277532799862107, 1e-9);
  const FailureEstimate all = wilson_interval(10, 10);
  EXPECT_NEAR(all.ci_low, 1.0 - 0.277532799862107, 1e-9);
  EXPECT_NEAR(all.ci_high, 1.0, 1e-15);
  EXPECT_THROW(wilson_interval(0, 0), eftqc::DomainError);
}

TEST(FailureRate, SingleTrialIsBernoulli) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const FailureEstimate f = estimate_failure_rate(on_grid(8, 8, 2, 3, seed), 1);
    EXPECT_TRUE(f.rate == 0.0 || f.rate == 1.0);
    EXPECT_EQ(f.trials, 1u);
  }
}

TEST(FailureRate, SingleShotIsNearlyAlwaysWrong) {
  // A one-shot spectrum is flat up to rounding, so the decoded bin carries no
  // information about theta.
  const FailureEstimate f = estimate_failure_rate(on_grid(64, 64, 32, 1, 3), 500);
  EXPECT_GT(f.rate, 0.8);
}

TEST(FailureRate, TrialsUseDistinctSeeds) {
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
  EXPECT_EQ(trial_seed(1, 5), trial_seed(1, 5));
}

TEST(CalibrateSamples, SelfConsistent) {
  const RfeExperiment e = on_grid(16, 16, 3, 1, 2026);
  const SampleCalibration c = calibrate_samples(e, 0.1, 200);
  EXPECT_GT(c.M, 1u);
  EXPECT_LE(c.at_M.ci_high, 0.1);
  RfeExperiment rerun = e;
  rerun.M = c.M;
  rerun.seed = 99;
  EXPECT_LE(estimate_failure_rate(rerun, 500).rate, 0.1);
}

TEST(CalibrateSamples, CeilingRaisesConvergenceError) {
  CalibrationOptions tight;
  tight.max_M = 4;
  EXPECT_THROW(calibrate_samples(on_grid(16, 16, 3, 1, 1), 0.01, 50, tight),
               eftqc::ConvergenceError);
  EXPECT_THROW(calibrate_samples(on_grid(16, 16, 3, 1, 1), 1.5, 50), eftqc::DomainError);
}

TEST(BurdenReduction, FromDepth) {
  EXPECT_EQ(burden_reduction_from_depth(32, 32), 1.0);
  EXPECT_EQ(burden_reduction_from_depth(1, 100000), 1e5);
  EXPECT_THROW(burden_reduction_from_depth(64, 32), eftqc::DomainError);
}

TEST(Validation, RejectsBadExperiments) {
  RfeExperiment e = on_grid(4, 4, 1, 10);
  e.K = 0;
  EXPECT_THROW(run_rfe(e), eftqc::DomainError);
  e = on_grid(4, 4, 1, 10);
  e.J = 1;
  EXPECT_THROW(run_rfe(e), eftqc::DomainError);
  e = on_grid(4, 4, 1, 10);
  e.M = 0;
  EXPECT_THROW(run_rfe(e), eftqc::DomainError);
  e = on_grid(4, 4, 1, 10, 1, NoiseModel::Gaussian(-0.1));
  EXPECT_THROW(run_rfe(e), eftqc::DomainError);
  e = on_grid(4, 4, 1, 10);
  e.theta = kTwoPi;
  EXPECT_THROW(run_rfe(e), eftqc::DomainError);
}
