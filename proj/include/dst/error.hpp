#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dst {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NonFinite,
  DimensionMismatch,
  ConvergenceFailure,
  Singular,
  InvalidP,
  NegativeSupport,
  EvalError,
  SyntaxError,
  UnknownFunction,
  UnknownIdentifier,
  ZeroVector,
  DegenerateSeeds,
  BadWeights,
  SingularGram,
  BadGrid,
  BadRank,
  ConfigError,
  ParseError,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the toolkit. `kind()` is the stable,
/// machine-checkable classification; `what()` is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error carrying a source location. Expression parsing reports a byte
/// offset; file loaders report a 1-based line and a byte offset.
class LocatedError : public Error {
 public:
  LocatedError(ErrorKind kind, const std::string& message, std::size_t offset, std::size_t line = 0)
      : Error(kind, message + " (at " + (line ? "line " + std::to_string(line) + ", " : std::string()) +
                        "offset " + std::to_string(offset) + ")"),
        offset_(offset),
        line_(line) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

}  // namespace dst
