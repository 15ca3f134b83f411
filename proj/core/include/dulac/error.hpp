#pragma once

#include <stdexcept>
#include <string>

namespace dulac {

enum class ErrorKind {
  Syntax,
  UnknownIdentifier,
  UndefinedParameter,
  NonPolynomial,
  DivisionByZero,
  ComplexCoefficients,
  InvalidArgument,
  // dulac-synthesis
  TraceZero,
  SingularAnsatz,
  DoubleZeroEigenvalue,
  ConstantPotential,
  NotAnEquilibrium,
  NonHyperbolicLinearization,
  CertificationFailed,
  EquilibriumEncountered,
  LeftWindow,
  NotPositive,
  // darboux
  NotInvariant,
  ConstantInput,
  NotExponentialFactor,
  DegreeBoundViolated,
  NoNontrivialRelation,
  // flow-numerics
  InvalidTolerance,
  NoReturn,
  NotFound,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, int line, int column)
      : Error(kind, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace dulac
