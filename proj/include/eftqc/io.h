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

#ifndef EFTQC_IO_H_
#define EFTQC_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace eftqc::io {

// Writes via a sibling temp file and rename, so readers never see a partial
// file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest text that round-trips to the same double; "inf", "-inf", "nan".
std::string format_double(double value);

}  // namespace eftqc::io

#endif  // EFTQC_IO_H_
