// Copyright 2026 The qmetro Authors
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

#ifndef QMETRO_ERRORS_H_
#define QMETRO_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qmetro {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normalization bracket of a superposition vanished (e.g. antisymmetric
// combination of two identical branches).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// Fock cutoff leaves more probability mass outside the basis than allowed.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A Fisher matrix has an eigenvalue below -tol * ||F||.
class PsdViolationError : public Error {
 public:
  PsdViolationError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Denominator of a closed-form bound vanished.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// Homodyne signal does not depend on the phase at the working point.
class ZeroDerivativeError : public Error {
 public:
  using Error::Error;
};

// Quadrature result moved by more than the tolerance under grid refinement.
class GridInadequateError : public Error {
 public:
  using Error::Error;
};

// A first-order probability density went negative on the evaluation grid.
class NegativityError : public Error {
 public:
  NegativityError(const std::string& what, double min_value)
      : Error(what), min_value_(min_value) {}
  double min_value() const { return min_value_; }

 private:
  double min_value_;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A sweep specification failed validation; field() names the culprit.
class SpecValidationError : public Error {
 public:
  SpecValidationError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmetro

#endif  // QMETRO_ERRORS_H_
