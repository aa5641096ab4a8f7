#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dst/matrix.hpp"

namespace dst {

/// Scalar function g(lambda) for the functional calculus.
///
/// Grammar (low to high precedence):
///
///     expr    = term { ("+" | "-") term } ;
///     term    = unary { ("*" | "/") unary } ;
///     unary   = "-" unary | power ;
///     power   = atom [ "^" unary ] ;            (* right-associative *)
///     atom    = number | "lambda" | "i" | func "(" expr ")" | "(" expr ")" ;
///     func    = "exp" | "log" | "sin" | "cos" | "sqrt" | "abs" | "re" | "im" | "conj" ;
///     number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
///             | "." digits [ exponent ] ;
///
/// There is no implicit multiplication; `2lambda` is a syntax error.
class GExpr {
 public:
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Func { exp, log, sin, cos, sqrt, abs, re, im, conj };

  struct Node;

  static GExpr number(cplx value);
  static GExpr variable();
  static GExpr neg(GExpr operand);
  static GExpr binary(Kind op, GExpr lhs, GExpr rhs);
  static GExpr call(Func f, GExpr arg);

  Kind kind() const;
  /// Literal value (Number only).
  cplx value() const;
  Func func() const;
  /// Operand of Neg/Call or left side of a binary node.
  GExpr lhs() const;
  GExpr rhs() const;

  /// Structural equality of trees.
  friend bool operator==(const GExpr& a, const GExpr& b);

 private:
  explicit GExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws LocatedError (SyntaxError, UnknownFunction, UnknownIdentifier)
/// carrying the byte offset of the offending token.
GExpr parse_gexpr(std::string_view src);

/// Minimal-parenthesis rendering; parse_gexpr(print) reproduces the tree.
std::string print(const GExpr& e);

/// Complex evaluation with principal branches for log, sqrt and pow.
/// Throws Error(EvalError) on division by zero, log(0), or a non-finite result.
cplx eval(const GExpr& e, cplx lambda);
inline cplx eval(const GExpr& e, double lambda) { return eval(e, cplx(lambda, 0.0)); }

const char* to_string(GExpr::Func f) noexcept;

}  // namespace dst
