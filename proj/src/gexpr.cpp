#include "dst/gexpr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include "dst/error.hpp"

namespace dst {

struct GExpr::Node {
  Kind kind;
  cplx value{};
  Func func = Func::exp;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

constexpr std::array<std::pair<std::string_view, GExpr::Func>, 9> kFunctions{{
    {"exp", GExpr::Func::exp},
    {"log", GExpr::Func::log},
    {"sin", GExpr::Func::sin},
    {"cos", GExpr::Func::cos},
    {"sqrt", GExpr::Func::sqrt},
    {"abs", GExpr::Func::abs},
    {"re", GExpr::Func::re},
    {"im", GExpr::Func::im},
    {"conj", GExpr::Func::conj},
}};

std::optional<GExpr::Func> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

struct Token {
  enum class Type { Number, Ident, Op, LParen, RParen, End } type;
  std::string_view text;
  std::size_t offset;
  double number = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  GExpr parse() {
    if (tok_.type == Token::Type::End) fail(ErrorKind::SyntaxError, "empty expression");
    GExpr e = expr();
    if (tok_.type != Token::Type::End) fail(ErrorKind::SyntaxError, "unexpected '" + std::string(tok_.text) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    throw LocatedError(kind, msg, tok_.offset);
  }

  bool at_op(char c) const { return tok_.type == Token::Type::Op && tok_.text[0] == c; }

  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Token::Type::End, {}, start};
      return;
    }
    const char c = src_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
        if (look < src_.size() && is_digit(src_[look])) {
          pos_ = look;
          while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
      }
      tok_ = {Token::Type::Number, src_.substr(start, pos_ - start), start};
      const auto* first = src_.data() + start;
      const auto [ptr, ec] = std::from_chars(first, src_.data() + pos_, tok_.number);
      if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(tok_.number))
        fail(ErrorKind::SyntaxError, "bad number '" + std::string(tok_.text) + "'");
      return;
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      tok_ = {Token::Type::Ident, src_.substr(start, pos_ - start), start};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        tok_ = {Token::Type::Op, src_.substr(start, 1), start};
        return;
      case '(':
        tok_ = {Token::Type::LParen, src_.substr(start, 1), start};
        return;
      case ')':
        tok_ = {Token::Type::RParen, src_.substr(start, 1), start};
        return;
      default:
        tok_ = {Token::Type::End, src_.substr(start, 1), start};
        fail(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "'");
    }
  }

  GExpr expr() {
    GExpr e = term();
    while (at_op('+') || at_op('-')) {
      const auto op = at_op('+') ? GExpr::Kind::Add : GExpr::Kind::Sub;
      advance();
      e = GExpr::binary(op, std::move(e), term());
    }
    return e;
  }

  GExpr term() {
    GExpr e = unary();
    while (at_op('*') || at_op('/')) {
      const auto op = at_op('*') ? GExpr::Kind::Mul : GExpr::Kind::Div;
      advance();
      e = GExpr::binary(op, std::move(e), unary());
    }
    return e;
  }

  GExpr unary() {
    if (at_op('-')) {
      advance();
      return GExpr::neg(unary());
    }
    return power();
  }

  GExpr power() {
    GExpr base = atom();
    if (at_op('^')) {
      advance();
      return GExpr::binary(GExpr::Kind::Pow, std::move(base), unary());
    }
    return base;
  }

  GExpr atom() {
    switch (tok_.type) {
      case Token::Type::Number: {
        const double v = tok_.number;
        advance();
        return GExpr::number(v);
      }
      case Token::Type::LParen: {
        advance();
        GExpr e = expr();
        if (tok_.type != Token::Type::RParen) fail(ErrorKind::SyntaxError, "expected ')'");
        advance();
        return e;
      }
      case Token::Type::Ident: {
        const Token id = tok_;
        advance();
        if (tok_.type == Token::Type::LParen) {
          const auto f = lookup_function(id.text);
          if (!f) throw LocatedError(ErrorKind::UnknownFunction, "unknown function '" + std::string(id.text) + "'", id.offset);
          advance();
          GExpr arg = expr();
          if (tok_.type != Token::Type::RParen) fail(ErrorKind::SyntaxError, "expected ')' after argument");
          advance();
          return GExpr::call(*f, std::move(arg));
        }
        if (id.text == "lambda") return GExpr::variable();
        if (id.text == "i") return GExpr::number(cplx(0.0, 1.0));
        if (lookup_function(id.text))
          throw LocatedError(ErrorKind::SyntaxError, "function '" + std::string(id.text) + "' needs '('", id.offset);
        throw LocatedError(ErrorKind::UnknownIdentifier, "unknown identifier '" + std::string(id.text) + "'", id.offset);
      }
      case Token::Type::End:
        fail(ErrorKind::SyntaxError, "unexpected end of expression");
      default:
        fail(ErrorKind::SyntaxError, "unexpected '" + std::string(tok_.text) + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Token::Type::End, {}, 0};
};

int precedence(GExpr::Kind k) {
  switch (k) {
    case GExpr::Kind::Add:
    case GExpr::Kind::Sub: return 1;
    case GExpr::Kind::Mul:
    case GExpr::Kind::Div: return 2;
    case GExpr::Kind::Neg: return 3;
    case GExpr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void print_into(const GExpr& e, std::string& out);

void print_child(const GExpr& child, int min_prec, std::string& out) {
  const bool wrap = precedence(child.kind()) < min_prec;
  if (wrap) out += '(';
  print_into(child, out);
  if (wrap) out += ')';
}

void print_into(const GExpr& e, std::string& out) {
  switch (e.kind()) {
    case GExpr::Kind::Number: {
      const cplx v = e.value();
      if (v.imag() == 0.0 && v.real() >= 0.0 && !std::signbit(v.real())) {
        out += format_real(v.real());
      } else if (v == cplx(0.0, 1.0)) {
        out += 'i';
      } else {
        out += '(' + format_real(v.real()) + " + " + format_real(v.imag()) + "*i)";
      }
      return;
    }
    case GExpr::Kind::Variable: out += "lambda"; return;
    case GExpr::Kind::Neg:
      out += '-';
      print_child(e.lhs(), 3, out);
      return;
    case GExpr::Kind::Call:
      out += to_string(e.func());
      out += '(';
      print_into(e.lhs(), out);
      out += ')';
      return;
    case GExpr::Kind::Pow:
      print_child(e.lhs(), 5, out);
      out += '^';
      print_child(e.rhs(), 3, out);
      return;
    default: {
      const int p = precedence(e.kind());
      static constexpr const char* kSym[] = {"", "", "", " + ", " - ", "*", "/"};
      print_child(e.lhs(), p, out);
      out += kSym[static_cast<int>(e.kind())];
      print_child(e.rhs(), p + 1, out);
    }
  }
}

[[noreturn]] void eval_fail(const std::string& msg) { throw Error(ErrorKind::EvalError, msg); }

cplx int_pow(cplx base, long k) {
  if (k < 0) {
    if (base == cplx{}) eval_fail("zero raised to a negative power");
    return 1.0 / int_pow(base, -k);
  }
  cplx r = 1.0;
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

cplx eval_pow(cplx b, cplx x) {
  if (x.imag() == 0.0 && std::abs(x.real()) <= 64.0 && x.real() == std::floor(x.real()))
    return int_pow(b, static_cast<long>(x.real()));
  if (b == cplx{}) {
    if (x.real() > 0.0) return 0.0;
    eval_fail("zero raised to a non-positive power");
  }
  if (b.imag() == 0.0 && b.real() > 0.0 && x.imag() == 0.0) return std::pow(b.real(), x.real());
  return std::pow(b, x);
}

cplx eval_node(const GExpr& e, cplx lam) {
  switch (e.kind()) {
    case GExpr::Kind::Number: return e.value();
    case GExpr::Kind::Variable: return lam;
    case GExpr::Kind::Neg: return -eval_node(e.lhs(), lam);
    case GExpr::Kind::Add: return eval_node(e.lhs(), lam) + eval_node(e.rhs(), lam);
    case GExpr::Kind::Sub: return eval_node(e.lhs(), lam) - eval_node(e.rhs(), lam);
    case GExpr::Kind::Mul: return eval_node(e.lhs(), lam) * eval_node(e.rhs(), lam);
    case GExpr::Kind::Div: {
      const cplx num = eval_node(e.lhs(), lam);
      const cplx den = eval_node(e.rhs(), lam);
      if (den == cplx{}) eval_fail("division by zero");
      return num / den;
    }
    case GExpr::Kind::Pow: return eval_pow(eval_node(e.lhs(), lam), eval_node(e.rhs(), lam));
    case GExpr::Kind::Call: {
      const cplx a = eval_node(e.lhs(), lam);
      switch (e.func()) {
        case GExpr::Func::exp: return std::exp(a);
        case GExpr::Func::log:
          if (a == cplx{}) eval_fail("log(0)");
          return std::log(a);
        case GExpr::Func::sin: return std::sin(a);
        case GExpr::Func::cos: return std::cos(a);
        case GExpr::Func::sqrt: return std::sqrt(a);
        case GExpr::Func::abs: return std::abs(a);
        case GExpr::Func::re: return a.real();
        case GExpr::Func::im: return a.imag();
        case GExpr::Func::conj: return std::conj(a);
      }
    }
  }
  eval_fail("malformed expression");
}

bool same_tree(const GExpr::Node* a, const GExpr::Node* b);

}  // namespace

// ---------------------------------------------------------------- GExpr

GExpr GExpr::number(cplx value) { return GExpr(std::make_shared<const Node>(Node{Kind::Number, value, Func::exp, nullptr, nullptr})); }
GExpr GExpr::variable() { return GExpr(std::make_shared<const Node>(Node{Kind::Variable, {}, Func::exp, nullptr, nullptr})); }
GExpr GExpr::neg(GExpr operand) {
  return GExpr(std::make_shared<const Node>(Node{Kind::Neg, {}, Func::exp, std::move(operand.node_), nullptr}));
}
GExpr GExpr::binary(Kind op, GExpr lhs, GExpr rhs) {
  return GExpr(std::make_shared<const Node>(Node{op, {}, Func::exp, std::move(lhs.node_), std::move(rhs.node_)}));
}
GExpr GExpr::call(Func f, GExpr arg) {
  return GExpr(std::make_shared<const Node>(Node{Kind::Call, {}, f, std::move(arg.node_), nullptr}));
}

GExpr::Kind GExpr::kind() const { return node_->kind; }
cplx GExpr::value() const { return node_->value; }
GExpr::Func GExpr::func() const { return node_->func; }
GExpr GExpr::lhs() const { return GExpr(node_->lhs); }
GExpr GExpr::rhs() const { return GExpr(node_->rhs); }

namespace {
bool same_tree(const GExpr::Node* a, const GExpr::Node* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case GExpr::Kind::Number: return a->value == b->value;
    case GExpr::Kind::Variable: return true;
    case GExpr::Kind::Call:
      if (a->func != b->func) return false;
      [[fallthrough]];
    default: return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
  }
}
}  // namespace

bool operator==(const GExpr& a, const GExpr& b) { return same_tree(a.node_.get(), b.node_.get()); }

GExpr parse_gexpr(std::string_view src) { return Parser(src).parse(); }

std::string print(const GExpr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

cplx eval(const GExpr& e, cplx lambda) {
  const cplx v = eval_node(e, lambda);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) eval_fail("non-finite value");
  return v;
}

const char* to_string(GExpr::Func f) noexcept {
  for (const auto& [n, fn] : kFunctions)
    if (fn == f) return n.data();
  return "?";
}

}  // namespace dst
