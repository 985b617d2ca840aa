#include "conflox/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <type_traits>
#include <utility>

#include "conflox/errors.hpp"

namespace conflox {

struct Expr::Node {
  Kind kind = Kind::constant;
  double value = 0.0;
  Var var = Var::x;
  Func func = Func::exp;
  Expr a;
  Expr b;
};

const Expr::Node& Expr::node() const {
  static const Node zero;
  return node_ ? *node_ : zero;
}

Expr::Expr() = default;
Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
Expr::Expr(double value) : Expr(constant(value)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->var = v;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::chart_variable(int index) { return variable(static_cast<Var>(index)); }

Expr::Kind Expr::kind() const { return node().kind; }
double Expr::constant_value() const { return node().value; }
Var Expr::variable() const { return node().var; }
Func Expr::function() const { return node().func; }
const Expr& Expr::lhs() const { return node().a; }
const Expr& Expr::rhs() const { return node().b; }

bool Expr::uses(Var v) const {
  switch (kind()) {
    case Kind::constant:
      return false;
    case Kind::variable:
      return variable() == v;
    case Kind::neg:
    case Kind::func:
    case Kind::pow:
      return lhs().uses(v);
    default:
      return lhs().uses(v) || rhs().uses(v);
  }
}

int Expr::depth() const {
  switch (kind()) {
    case Kind::constant:
    case Kind::variable:
      return 0;
    case Kind::neg:
    case Kind::func:
      return 1 + lhs().depth();
    default:
      return 1 + std::max(lhs().depth(), rhs().depth());
  }
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node_ && a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::constant:
      return a.constant_value() == b.constant_value();
    case Expr::Kind::variable:
      return a.variable() == b.variable();
    case Expr::Kind::func:
      return a.function() == b.function() && structurally_equal(a.lhs(), b.lhs());
    case Expr::Kind::neg:
      return structurally_equal(a.lhs(), b.lhs());
    default:
      return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
  }
}

const char* function_name(Func f) {
  switch (f) {
    case Func::exp:
      return "exp";
    case Func::log:
      return "log";
    case Func::sin:
      return "sin";
    case Func::cos:
      return "cos";
    case Func::sinh:
      return "sinh";
    case Func::cosh:
      return "cosh";
    case Func::sqrt:
      return "sqrt";
  }
  return "?";
}

namespace {

double apply_func(Func f, double v) {
  switch (f) {
    case Func::exp:
      return std::exp(v);
    case Func::log:
      return std::log(v);
    case Func::sin:
      return std::sin(v);
    case Func::cos:
      return std::cos(v);
    case Func::sinh:
      return std::sinh(v);
    case Func::cosh:
      return std::cosh(v);
    case Func::sqrt:
      return std::sqrt(v);
  }
  return 0.0;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v) && std::abs(v) < 1e9; }

double fold_pow(double base, double exponent) {
  if (is_integer(exponent)) return ipow(base, static_cast<int>(exponent));
  return std::pow(base, exponent);
}

}  // namespace

Expr make_binary(Expr::Kind k, const Expr& a, const Expr& b) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->a = a;
  n->b = b;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr make_unary_neg(const Expr& a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::neg;
  n->a = a;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr make_func(Func f, const Expr& a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::func;
  n->func = f;
  n->a = a;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() + b.constant_value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return make_binary(Expr::Kind::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() - b.constant_value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return make_binary(Expr::Kind::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() * b.constant_value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return make_binary(Expr::Kind::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    return Expr(a.constant_value() / b.constant_value());
  }
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant()) return Expr(0.0);
  return make_binary(Expr::Kind::div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  return make_unary_neg(a);
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr(1.0);
  if (exponent == 1.0) return base;
  if (base.is_constant()) {
    const double v = fold_pow(base.constant_value(), exponent);
    if (std::isfinite(v)) return Expr(v);
  }
  return make_binary(Expr::Kind::pow, base, Expr(exponent));
}

Expr apply(Func f, const Expr& a) {
  if (a.is_constant()) {
    const double v = apply_func(f, a.constant_value());
    const bool in_domain = !(f == Func::log && a.constant_value() <= 0.0) &&
                           !(f == Func::sqrt && a.constant_value() < 0.0);
    if (in_domain && std::isfinite(v)) return Expr(v);
  }
  return make_func(f, a);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      if (accept('+')) {
        e = e + parse_product();
      } else if (accept('-')) {
        e = e - parse_product();
      } else {
        return e;
      }
    }
  }

  Expr parse_product() {
    Expr e = parse_unary();
    for (;;) {
      if (accept('*')) {
        e = e * parse_unary();
      } else if (accept('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr e = parse_primary();
    for (;;) {
      if (!accept('^')) return e;
      skip_ws();
      const std::size_t at = pos_;
      const bool negate = accept('-');
      Expr exponent = parse_primary();
      if (negate) exponent = -exponent;
      if (!exponent.is_constant()) throw ParseError("exponent must be a constant", at);
      e = pow(e, exponent.constant_value());
    }
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  Expr parse_number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - rest.c_str());
    if (used == 0) throw ParseError("malformed number", pos_);
    pos_ += used;
    return Expr(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable(Var::x);
    if (name == "y") return Expr::variable(Var::y);
    if (name == "z") return Expr::variable(Var::z);
    if (name == "t") return Expr::variable(Var::t);
    if (name == "pi") return Expr(std::numbers::pi);
    if (name == "e") return Expr(std::numbers::e);
    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"exp", Func::exp},   {"log", Func::log},   {"sin", Func::sin},  {"cos", Func::cos},
        {"sinh", Func::sinh}, {"cosh", Func::cosh}, {"sqrt", Func::sqrt}};
    for (const auto& [fname, f] : kFuncs) {
      if (name == fname) {
        if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
        Expr arg = parse_sum();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return apply(f, arg);
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength used for parenthesisation.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow:
      return 4;
    case Expr::Kind::constant:
      return e.constant_value() < 0.0 || std::signbit(e.constant_value()) ? 0 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s == "inf" || s == "-inf" || s == "nan") return "(" + s + ")";
  return s;
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      out += format_number(e.constant_value());
      return;
    case Expr::Kind::variable:
      out += "xyzt"[static_cast<int>(e.variable())];
      return;
    case Expr::Kind::func:
      out += function_name(e.function());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
    case Expr::Kind::neg:
      out += '-';
      print_child(e.lhs(), 3, out);
      return;
    case Expr::Kind::pow:
      print_child(e.lhs(), 4, out);
      out += '^';
      print_child(e.rhs(), 5, out);
      return;
    default: {
      const int p = precedence(e);
      const char op = e.kind() == Expr::Kind::add   ? '+'
                      : e.kind() == Expr::Kind::sub ? '-'
                      : e.kind() == Expr::Kind::mul ? '*'
                                                    : '/';
      print_child(e.lhs(), p, out);
      out += op;
      print_child(e.rhs(), p + 1, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e, Var v) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return Expr(0.0);
    case Expr::Kind::variable:
      return Expr(e.variable() == v ? 1.0 : 0.0);
    case Expr::Kind::add:
      return differentiate(e.lhs(), v) + differentiate(e.rhs(), v);
    case Expr::Kind::sub:
      return differentiate(e.lhs(), v) - differentiate(e.rhs(), v);
    case Expr::Kind::mul:
      return differentiate(e.lhs(), v) * e.rhs() + e.lhs() * differentiate(e.rhs(), v);
    case Expr::Kind::div: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      return (differentiate(a, v) * b - a * differentiate(b, v)) / pow(b, 2.0);
    }
    case Expr::Kind::neg:
      return -differentiate(e.lhs(), v);
    case Expr::Kind::pow: {
      const double c = e.rhs().constant_value();
      return Expr(c) * pow(e.lhs(), c - 1.0) * differentiate(e.lhs(), v);
    }
    case Expr::Kind::func: {
      const Expr& a = e.lhs();
      const Expr da = differentiate(a, v);
      if (da.is_constant(0.0)) return Expr(0.0);
      switch (e.function()) {
        case Func::exp:
          return e * da;
        case Func::log:
          return da / a;
        case Func::sin:
          return apply(Func::cos, a) * da;
        case Func::cos:
          return -(apply(Func::sin, a) * da);
        case Func::sinh:
          return apply(Func::cosh, a) * da;
        case Func::cosh:
          return apply(Func::sinh, a) * da;
        case Func::sqrt:
          return da / (Expr(2.0) * e);
      }
    }
  }
  return Expr(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <class T>
T checked(T v) {
  if (!std::isfinite(value_of(v))) throw DomainError("non-finite value in expression evaluation");
  return v;
}

template <class T>
T eval_pow(const T& base, double exponent) {
  const double b = value_of(base);
  if (is_integer(exponent)) {
    if (b == 0.0 && exponent < 0.0) throw DomainError("division by zero in power");
    return ipow(base, static_cast<int>(exponent));
  }
  if (b < 0.0) throw DomainError("non-integer power of a negative number");
  if (b == 0.0) {
    if (exponent < 0.0) throw DomainError("division by zero in power");
    if constexpr (std::is_same_v<T, Jet>) {
      if (base.order() > 0) throw DomainError("power not differentiable at zero");
    }
    return T(0.0);
  }
  using std::pow;
  return pow(base, exponent);
}

template <class T>
T eval_func(Func f, const T& a) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  const double v = value_of(a);
  switch (f) {
    case Func::exp:
      return exp(a);
    case Func::log:
      if (v <= 0.0) throw DomainError("log of non-positive value");
      return log(a);
    case Func::sin:
      return sin(a);
    case Func::cos:
      return cos(a);
    case Func::sinh:
      return sinh(a);
    case Func::cosh:
      return cosh(a);
    case Func::sqrt:
      if (v < 0.0) throw DomainError("sqrt of negative value");
      if constexpr (std::is_same_v<T, Jet>) {
        if (v == 0.0 && a.order() > 0) throw DomainError("sqrt not differentiable at zero");
      }
      return sqrt(a);
  }
  return a;
}

template <class T>
T eval(const Expr& e, const Coordinates<T>& p) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return T(e.constant_value());
    case Expr::Kind::variable:
      return p[static_cast<int>(e.variable())];
    case Expr::Kind::add:
      return checked(eval(e.lhs(), p) + eval(e.rhs(), p));
    case Expr::Kind::sub:
      return checked(eval(e.lhs(), p) - eval(e.rhs(), p));
    case Expr::Kind::mul:
      return checked(eval(e.lhs(), p) * eval(e.rhs(), p));
    case Expr::Kind::div: {
      const T num = eval(e.lhs(), p);
      const T den = eval(e.rhs(), p);
      if (value_of(den) == 0.0) throw DomainError("division by zero");
      return checked(num / den);
    }
    case Expr::Kind::neg:
      return -eval(e.lhs(), p);
    case Expr::Kind::pow:
      return checked(eval_pow(eval(e.lhs(), p), e.rhs().constant_value()));
    case Expr::Kind::func:
      return checked(eval_func(e.function(), eval(e.lhs(), p)));
  }
  return T(0.0);
}

}  // namespace

template <class T>
T evaluate(const Expr& e, const Coordinates<T>& point) {
  return eval(e, point);
}

template double evaluate<double>(const Expr&, const Coordinates<double>&);
template Jet evaluate<Jet>(const Expr&, const Coordinates<Jet>&);

Expr substitute(const Expr& e, const std::array<Expr, 4>& r) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e;
    case Expr::Kind::variable:
      return r[static_cast<int>(e.variable())];
    case Expr::Kind::add:
      return substitute(e.lhs(), r) + substitute(e.rhs(), r);
    case Expr::Kind::sub:
      return substitute(e.lhs(), r) - substitute(e.rhs(), r);
    case Expr::Kind::mul:
      return substitute(e.lhs(), r) * substitute(e.rhs(), r);
    case Expr::Kind::div:
      return substitute(e.lhs(), r) / substitute(e.rhs(), r);
    case Expr::Kind::neg:
      return -substitute(e.lhs(), r);
    case Expr::Kind::pow:
      return pow(substitute(e.lhs(), r), e.rhs().constant_value());
    case Expr::Kind::func:
      return apply(e.function(), substitute(e.lhs(), r));
  }
  return e;
}

}  // namespace conflox
