#include "dulac/error.hpp"

namespace dulac {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::UndefinedParameter: return "UndefinedParameter";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ComplexCoefficients: return "ComplexCoefficients";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TraceZero: return "TraceZero";
    case ErrorKind::SingularAnsatz: return "SingularAnsatz";
    case ErrorKind::DoubleZeroEigenvalue: return "DoubleZeroEigenvalue";
    case ErrorKind::ConstantPotential: return "ConstantPotential";
    case ErrorKind::NotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorKind::NonHyperbolicLinearization: return "NonHyperbolicLinearization";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::EquilibriumEncountered: return "EquilibriumEncountered";
    case ErrorKind::LeftWindow: return "LeftWindow";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ConstantInput: return "ConstantInput";
    case ErrorKind::NotExponentialFactor: return "NotExponentialFactor";
    case ErrorKind::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorKind::NoNontrivialRelation: return "NoNontrivialRelation";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::NoReturn: return "NoReturn";
    case ErrorKind::NotFound: return "NotFound";
  }
  return "Unknown";
}

}  // namespace dulac
