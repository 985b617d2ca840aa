#pragma once

// Scalar expression language for conformal factors, metric components and
// Rho overrides: variables x, y, z (chart) and t (curve parameter), numeric
// literals, + - * / ^, unary minus, exp log sin cos sinh cosh sqrt, pi, e.

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "conflox/jet.hpp"

namespace conflox {

enum class Var : int { x = 0, y = 1, z = 2, t = 3 };

enum class Func { exp, log, sin, cos, sinh, cosh, sqrt };

template <class T>
using Coordinates = std::array<T, 4>;  // x, y, z, t

class Expr {
 public:
  enum class Kind { constant, variable, add, sub, mul, div, pow, neg, func };

  Expr();  // the constant 0
  explicit Expr(double value);

  static Expr constant(double value);
  static Expr variable(Var v);
  static Expr chart_variable(int index);  // 0 -> x, 1 -> y, 2 -> z

  Kind kind() const;
  double constant_value() const;  // valid for Kind::constant
  Var variable() const;           // valid for Kind::variable
  Func function() const;          // valid for Kind::func
  const Expr& lhs() const;        // first operand (or sole operand)
  const Expr& rhs() const;

  bool is_constant() const { return kind() == Kind::constant; }
  bool is_constant(double v) const { return is_constant() && constant_value() == v; }
  bool uses(Var v) const;
  int depth() const;  // leaves have depth 0

  friend bool structurally_equal(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  const Node& node() const;
  std::shared_ptr<const Node> node_;

  friend Expr make_binary(Kind k, const Expr& a, const Expr& b);
  friend Expr make_unary_neg(const Expr& a);
  friend Expr make_func(Func f, const Expr& a);
};

// Constant-folding constructors. These are the only simplifications applied.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr apply(Func f, const Expr& a);

Expr parse(std::string_view text);
std::string to_string(const Expr& e);
Expr differentiate(const Expr& e, Var v);

// Throws DomainError for log of non-positive, sqrt of negative, division by
// zero, invalid powers, or any non-finite result.
template <class T>
T evaluate(const Expr& e, const Coordinates<T>& point);

inline double evaluate(const Expr& e, double x, double y, double z = 0.0, double t = 0.0) {
  return evaluate<double>(e, Coordinates<double>{x, y, z, t});
}

// Substitutes Exprs for variables (used to compose chart fields with curves).
Expr substitute(const Expr& e, const std::array<Expr, 4>& replacement);

const char* function_name(Func f);

}  // namespace conflox
