// Copyright 2026 The sedeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEDEVAL_ERRORS_HPP_
#define SEDEVAL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sedeval {

// Base of every error raised by the library. The CLI maps these to exit
// code 2, except IoError which maps to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? what + " at line " + std::to_string(line) : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Score rows that do not tile the clip contiguously.
class TilingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Class columns or class sets that do not match what was expected.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A segment or clip that no prediction covers.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// ROC undefined for a class (no positive or no negative segments).
class UndefinedRocError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sedeval

#endif  // SEDEVAL_ERRORS_HPP_
