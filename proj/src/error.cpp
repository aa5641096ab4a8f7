#include "dst/error.hpp"

namespace dst {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidP: return "InvalidP";
    case ErrorKind::NegativeSupport: return "NegativeSupport";
    case ErrorKind::EvalError: return "EvalError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DegenerateSeeds: return "DegenerateSeeds";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dst
