// Copyright 2026 The netreduce Authors
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

#include <stdexcept>
#include <string>

namespace netreduce {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: out-of-range orders, overlapping clusters, bad flags.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Malformed or unreadable input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Failures of numerical kernels and internal consistency checks.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, long iterations)
      : NumericalError(what), iterations_(iterations) {}
  long iterations() const { return iterations_; }

 private:
  long iterations_;
};

/// A matrix that was required to be Hurwitz (or semistable) is not.
class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// More than one simple zero eigenvalue, or a complex block at the origin.
class MultiplicityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The singular block of a Sylvester-like equation carries right-hand side
/// mass above tolerance, so no solution exists.
class InconsistentEquationError : public NumericalError {
 public:
  InconsistentEquationError(const std::string& what, double defect)
      : NumericalError(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

class SingularPencilError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Requested H2 norm is infinite (impulse response does not decay).
class UnboundedNormError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail)
      : NumericalError(what), tail_(tail) {}
  double tail_estimate() const { return tail_; }

 private:
  double tail_;
};

class GenerationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotLaplacianError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class GridError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace netreduce
