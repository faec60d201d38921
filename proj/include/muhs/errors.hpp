#pragma once

#include <stdexcept>
#include <string>

namespace muhs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad parse, bad flag value, mismatched grids.
/// CLI maps these to exit code 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: non-finite values, failed eigensolve,
/// loss of the diffeomorphism property. CLI exit code 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A well-posed request whose defining constraint has no solution
/// (kernel obstructions, empty brackets, sign obstructions).
/// CLI exit code 4.
class ConstraintUnsatisfiable : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : InvalidInput("parse error at offset " + std::to_string(offset) +
                     ": expected " + expected),
        offset_(offset),
        expected_(expected) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class InvalidParams : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NonPositiveMomentum : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class NonPositiveMean : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class NonPeriodicAntiderivative : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class NoBracket : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class DegeneratePlane : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class EllipticDomainError : public ConstraintUnsatisfiable {
 public:
  using ConstraintUnsatisfiable::ConstraintUnsatisfiable;
};

class DiffeomorphismLoss : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace muhs
