// Copyright 2026 The dqgp Authors
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

namespace dqgp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// geometry
class InvalidQuaternion : public Error {
 public:
  using Error::Error;
};
class DegenerateDualQuaternion : public Error {
 public:
  using Error::Error;
};
class AntipodalPair : public Error {
 public:
  using Error::Error;
};
class InvalidVelocity : public Error {
 public:
  using Error::Error;
};

// kernels / gp
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class InvalidHyperparameters : public Error {
 public:
  using Error::Error;
};
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};
class DegenerateData : public Error {
 public:
  using Error::Error;
};
class DivergenceDetected : public Error {
 public:
  using Error::Error;
};

// classifier
class RangeError : public Error {
 public:
  using Error::Error;
};
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// data
/// Error tied to a 1-based line of an input file.
class LineError : public Error {
 public:
  LineError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};
class ParseError : public LineError {
 public:
  using LineError::LineError;
};
class NonMonotoneTime : public LineError {
 public:
  using LineError::LineError;
};
class InvalidQuaternionRow : public LineError {
 public:
  using LineError::LineError;
};
class JumpDetected : public LineError {
 public:
  using LineError::LineError;
};
class InsufficientData : public Error {
 public:
  using Error::Error;
};
class InvalidTrajectory : public Error {
 public:
  using Error::Error;
};

// pipeline
class MissingReport : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dqgp
