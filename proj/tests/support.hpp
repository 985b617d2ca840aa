#pragma once

#include <cmath>
#include <random>

#include "conflox/expr.hpp"

namespace conflox::testing {

// Random expressions that are defined and moderate on [-1, 1]^3.
class ExprGenerator {
 public:
  explicit ExprGenerator(unsigned seed) : rng_(seed) {}

  Expr make(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0: return Expr::chart_variable(index(rng_));
      case 1: return Expr(coefficient(rng_));
      case 2: return make(depth - 1) + make(depth - 1);
      case 3: return make(depth - 1) - make(depth - 1);
      case 4: return make(depth - 1) * make(depth - 1);
      case 5: return make(depth - 1) / (Expr(1.5) + pow(make(depth - 1), 2.0));
      case 6: return apply(trig(), make(depth - 1));
      case 7: return apply(Func::log, Expr(1.0) + pow(make(depth - 1), 2.0));
      case 8: return apply(Func::sqrt, Expr(0.5) + pow(make(depth - 1), 2.0));
      default: return pow(make(depth - 1), static_cast<double>(exponent(rng_)));
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  Func trig() {
    static constexpr Func choices[] = {Func::sin, Func::cos, Func::exp};
    return choices[std::uniform_int_distribution<int>(0, 2)(rng_)];
  }

  std::mt19937 rng_;
  std::uniform_int_distribution<int> index{0, 2};
  std::uniform_int_distribution<int> exponent{2, 3};
  std::uniform_real_distribution<double> coefficient{-2.0, 2.0};
};

inline double central_difference(const Expr& e, Coordinates<double> p, int axis, double h = 1e-5) {
  Coordinates<double> plus = p, minus = p;
  plus[axis] += h;
  minus[axis] -= h;
  return (evaluate<double>(e, plus) - evaluate<double>(e, minus)) / (2.0 * h);
}

}  // namespace conflox::testing
