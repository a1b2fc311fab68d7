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

#ifndef EFTQC_ERROR_H_
#define EFTQC_ERROR_H_

#include <stdexcept>
#include <string>

namespace eftqc {

// Base for every error raised by the library. The CLI maps each subclass to
// a distinct exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument lies outside the domain of a model equation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No sub-threshold regime: the base error rate is at or above threshold.
class AboveThresholdError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A search has no finite answer (e.g. reach under infinite scalability).
class UnboundedError : public Error {
 public:
  using Error::Error;
};

// An iterative search hit its ceiling without meeting its criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { kIo, kMalformedHeader, kEmptyBody, kBadValue, kOutOfRange };

  ParseError(Kind kind, int line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  // 1-based line number in the input, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

}  // namespace eftqc

#endif  // EFTQC_ERROR_H_
