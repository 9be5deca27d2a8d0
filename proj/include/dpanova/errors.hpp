// Copyright 2026 The dpanova Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpanova {

// Base class for every rejection of caller-supplied input (bad datasets,
// bad parameters, malformed files).  Anything else escaping the library is
// a bug, not a usage error.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ValueOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooFewGroups : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyGroup : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Raised when n <= k, where the F statistic's denominator degrees of
// freedom would be nonpositive.
class DegenerateSize : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveN : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyNullSample : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MalformedHeader : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MalformedRow : public ValidationError {
 public:
  MalformedRow(std::int64_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

}  // namespace dpanova
