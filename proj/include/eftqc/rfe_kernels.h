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

#ifndef EFTQC_RFE_KERNELS_H_
#define EFTQC_RFE_KERNELS_H_

#include <complex>
#include <cstdint>
#include <vector>

#include "eftqc/rfe.h"

// Two implementations of the Monte-Carlo inner loops. `serial` is the direct
// per-shot, per-bin reference. `parallel` buckets shots by depth k in fixed
// shot chunks (OpenMP across chunks, in-order reduction), then evaluates the
// J bins from the K bucket sums in parallel. Both consume the same shot
// stream, so they agree to rounding and the parallel result is independent of
// the thread count.
namespace eftqc::rfe::kernels {

struct Accumulation {
  std::vector<std::complex<double>> spectrum;  // already divided by M
  std::uint64_t clamp_events = 0;
};

namespace serial {
Accumulation accumulate(const RfeExperiment& experiment);
std::uint64_t count_failures(const RfeExperiment& experiment,
                             std::uint64_t trials);
}  // namespace serial

namespace parallel {
inline constexpr std::uint64_t kChunkShots = 4096;
Accumulation accumulate(const RfeExperiment& experiment);
std::uint64_t count_failures(const RfeExperiment& experiment,
                             std::uint64_t trials);
}  // namespace parallel

}  // namespace eftqc::rfe::kernels

#endif  // EFTQC_RFE_KERNELS_H_
