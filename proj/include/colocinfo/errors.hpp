// Copyright 2026 The colocinfo Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace colocinfo {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateError : public ParseError {
 public:
  using ParseError::ParseError;
};

class EmptyInputError : public ParseError {
 public:
  explicit EmptyInputError(const std::string& what) : ParseError(what, 0) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

// validation-class failures
class ShapeError : public Error {
 public:
  using Error::Error;
};

class PriorError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// numeric-class failures
class NumericError : public Error {
 public:
  using Error::Error;
};

class UndefinedRcaError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateGeographyError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace colocinfo
