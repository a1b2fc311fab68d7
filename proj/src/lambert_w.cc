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

#include "eftqc/lambert_w.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eftqc/error.h"

namespace eftqc {
namespace {

constexpr double kBranchPoint = -1.0 / std::numbers::e;

double initial_guess(double x) {
  if (x > std::numbers::e) {
    const double l = std::log(x);
    return l - std::log(l);
  }
  // Halley stalls near the branch point where dw/dx diverges; start from
  // the series in p = sqrt(2 (e x + 1)) instead.
  if (x < -0.32) {
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }
  return x / (1.0 + x);
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < kBranchPoint) {
    // Allow the rounding of -1/e itself.
    if (kBranchPoint - x > 4.0 * std::numeric_limits<double>::epsilon()) {
      throw DomainError("lambert_w0: argument below -1/e");
    }
    return -1.0;
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  if (w <= -1.0) return -1.0;
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - 0.5 * (w + 2.0) * f / wp1);
    double next = w - step;
    if (next <= -1.0) next = 0.5 * (w - 1.0);
    const bool converged =
        std::fabs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   (1.0 + std::fabs(next));
    w = next;
    if (converged) break;
  }
  return w;
}

}  // namespace eftqc
