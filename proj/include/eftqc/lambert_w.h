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

#ifndef EFTQC_LAMBERT_W_H_
#define EFTQC_LAMBERT_W_H_

namespace eftqc {

// Principal branch W0(x), the w >= -1 solving w * exp(w) = x, for
// x >= -1/e. Throws DomainError below the branch point.
double lambert_w0(double x);

}  // namespace eftqc

#endif  // EFTQC_LAMBERT_W_H_
