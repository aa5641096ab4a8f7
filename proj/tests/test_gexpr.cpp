#include "doctest.h"

#include <cmath>

#include "dst/error.hpp"
#include "dst/gexpr.hpp"
#include "helpers.hpp"

using namespace dst;
using K = GExpr::Kind;
using F = GExpr::Func;

namespace {

GExpr var() { return GExpr::variable(); }
GExpr num(double v) { return GExpr::number(v); }

std::size_t error_offset(std::string_view src) {
  try {
    parse_gexpr(src);
  } catch (const LocatedError& e) {
    return e.offset();
  }
  return std::string_view::npos;
}

ErrorKind error_kind(std::string_view src) {
  try {
    parse_gexpr(src);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(parse_gexpr("lambda^2") == GExpr::binary(K::Pow, var(), num(2)));
  CHECK(parse_gexpr("2*lambda + 1") == GExpr::binary(K::Add, GExpr::binary(K::Mul, num(2), var()), num(1)));
  CHECK(parse_gexpr("exp(-lambda)*sin(lambda)") ==
        GExpr::binary(K::Mul, GExpr::call(F::exp, GExpr::neg(var())), GExpr::call(F::sin, var())));
  CHECK(parse_gexpr("  lambda  ") == var());
  CHECK(parse_gexpr("2^3^2") == GExpr::binary(K::Pow, num(2), GExpr::binary(K::Pow, num(3), num(2))));
  // Unary minus binds looser than ^.
  CHECK(parse_gexpr("-lambda^2") == GExpr::neg(GExpr::binary(K::Pow, var(), num(2))));
  CHECK(parse_gexpr("lambda^-1") == GExpr::binary(K::Pow, var(), GExpr::neg(num(1))));
}

TEST_CASE("eval") {
  CHECK(eval(parse_gexpr("lambda^2"), 3.0) == cplx(9.0, 0.0));
  CHECK(eval(parse_gexpr("exp(-lambda)"), 0.0) == cplx(1.0, 0.0));
  CHECK(eval(parse_gexpr("sqrt(lambda)"), 4.0) == cplx(2.0, 0.0));
  CHECK(eval(parse_gexpr("2+3*4"), 0.0) == cplx(14.0, 0.0));
  CHECK(eval(parse_gexpr("2^3^2"), 0.0) == cplx(512.0, 0.0));
  CHECK(eval(parse_gexpr("(2+3)*4"), 0.0) == cplx(20.0, 0.0));
  CHECK(eval(parse_gexpr("1e-3*lambda"), 2.0).real() == doctest::Approx(2e-3));
  CHECK(eval(parse_gexpr("i*i"), 0.0) == cplx(-1.0, 0.0));
  CHECK(eval(parse_gexpr("abs(lambda)"), -2.5) == cplx(2.5, 0.0));
  CHECK(eval(parse_gexpr("re(conj(i+lambda)) + im(conj(i))"), 3.0) == cplx(2.0, 0.0));
  // Principal branch: sqrt(-4) = 2i, log(-1) = i*pi.
  CHECK(std::abs(eval(parse_gexpr("sqrt(lambda)"), -4.0) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(eval(parse_gexpr("log(lambda)"), -1.0) - cplx(0.0, M_PI)) < 1e-15);
}

TEST_CASE("eval errors") {
  CHECK_KIND(eval(parse_gexpr("1/lambda"), 0.0), ErrorKind::EvalError);
  CHECK_KIND(eval(parse_gexpr("log(lambda)"), 0.0), ErrorKind::EvalError);
  CHECK_KIND(eval(parse_gexpr("exp(lambda)"), 1e6), ErrorKind::EvalError);
}

TEST_CASE("parse errors carry kind and byte offset") {
  CHECK(error_kind("2lambda") == ErrorKind::SyntaxError);
  CHECK(error_offset("2lambda") == 1);
  CHECK(error_kind("foo(lambda)") == ErrorKind::UnknownFunction);
  CHECK(error_offset("foo(lambda)") == 0);
  CHECK(error_kind("x + 1") == ErrorKind::UnknownIdentifier);
  CHECK(error_kind("lambda +") == ErrorKind::SyntaxError);
  CHECK(error_offset("lambda +") == 8);
  CHECK(error_kind("(lambda") == ErrorKind::SyntaxError);
  CHECK(error_kind("") == ErrorKind::SyntaxError);
  CHECK(error_kind("sin lambda") == ErrorKind::SyntaxError);
  CHECK(error_kind("1 $ 2") == ErrorKind::SyntaxError);
  CHECK(error_offset("1 $ 2") == 2);
}

namespace {

// Random expression generator for round-trip and Horner properties.
GExpr random_expr(CounterRng& rng, int depth) {
  const double u = rng.uniform();
  if (depth == 0 || u < 0.25) {
    if (rng.uniform() < 0.5) return var();
    // Literals are non-negative; the parser produces negatives only through Neg.
    return num(std::round(rng.uniform() * 1000.0) / 100.0);
  }
  const int pick = static_cast<int>(rng.uniform() * 8);
  switch (pick) {
    case 0: return GExpr::neg(random_expr(rng, depth - 1));
    case 1: return GExpr::binary(K::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return GExpr::binary(K::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return GExpr::binary(K::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return GExpr::binary(K::Div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return GExpr::binary(K::Pow, random_expr(rng, depth - 1), num(static_cast<int>(rng.uniform() * 4)));
    default: {
      static const F fs[] = {F::exp, F::log, F::sin, F::cos, F::sqrt, F::abs, F::re, F::im, F::conj};
      return GExpr::call(fs[static_cast<int>(rng.uniform() * 9)], random_expr(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("property: parse . print . parse is the identity") {
  CounterRng rng(0x9a55);
  for (int k = 0; k < 500; ++k) {
    const GExpr e = random_expr(rng, 5);
    const std::string text = print(e);
    INFO(text);
    const GExpr back = parse_gexpr(text);
    CHECK(back == e);
    CHECK(print(back) == text);
  }
}

TEST_CASE("property: polynomial eval matches Horner") {
  CounterRng rng(0x40e);
  for (int k = 0; k < 300; ++k) {
    const int degree = static_cast<int>(rng.uniform() * 7);
    std::vector<double> c(degree + 1);
    for (auto& x : c) x = std::round(rng.symmetric() * 100.0) / 10.0;
    std::string text = std::to_string(c[0]);
    for (int d = 1; d <= degree; ++d) text += " + " + std::to_string(c[d]) + "*lambda^" + std::to_string(d);
    const GExpr e = parse_gexpr(text);
    const double x = rng.symmetric() * 3.0;
    // Coefficients as printed by to_string, so both sides see the same numbers.
    std::vector<double> cp(degree + 1);
    for (int d = 0; d <= degree; ++d) cp[d] = std::stod(std::to_string(c[d]));
    double h = 0.0, mag = 0.0;
    for (int d = degree; d >= 0; --d) {
      h = h * x + cp[d];
      mag = mag * std::abs(x) + std::abs(cp[d]);
    }
    const cplx v = eval(e, x);
    INFO(text << " at " << x);
    CHECK(std::abs(v.real() - h) <= 1e-13 * std::max(1.0, mag));
    CHECK(v.imag() == 0.0);
  }
}
