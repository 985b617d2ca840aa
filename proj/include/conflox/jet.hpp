#pragma once

// Truncated univariate Taylor series used for exact derivatives along curves
// and along coordinate directions. Coefficient k holds f^(k)(t0) / k!.

#include <algorithm>
#include <array>
#include <cmath>

namespace conflox {

class Jet {
 public:
  static constexpr int kMaxOrder = 7;

  Jet() { c_.fill(0.0); }
  Jet(double constant) {  // NOLINT(google-explicit-constructor)
    c_.fill(0.0);
    c_[0] = constant;
  }

  // t0 + h, truncated at the given order.
  static Jet variable(double t0, int order) {
    Jet j(t0);
    j.order_ = std::clamp(order, 0, kMaxOrder);
    if (j.order_ >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return k <= order_ ? c_[k] : 0.0; }
  double& coeff_ref(int k) { return c_[k]; }

  // k-th derivative with respect to the series variable.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return coeff(k) * f;
  }

  // d/dt of the series; loses one order.
  Jet differentiated() const {
    Jet r;
    r.order_ = std::max(order_ - 1, 0);
    for (int k = 0; k < order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
    if (order_ == 0) r.c_[0] = 0.0;
    return r;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order_, order);
    for (int k = r.order_ + 1; k <= kMaxOrder; ++k) r.c_[k] = 0.0;
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= r.order_; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    q.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= q.order_; ++k) {
      double s = a.c_[k];
      for (int i = 1; i <= k; ++i) s -= b.c_[i] * q.c_[k - i];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend Jet exp(const Jet& a) {
    Jet r;
    r.order_ = a.order_;
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += i * a.c_[i] * r.c_[k - i];
      r.c_[k] = s / k;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r;
    r.order_ = a.order_;
    r.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i < k; ++i) s += i * r.c_[i] * a.c_[k - i];
      r.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return r;
  }

  // Sine and cosine share one recurrence.
  static void sin_cos(const Jet& a, Jet& s, Jet& c, bool hyperbolic) {
    s = Jet();
    c = Jet();
    s.order_ = c.order_ = a.order_;
    s.c_[0] = hyperbolic ? std::sinh(a.c_[0]) : std::sin(a.c_[0]);
    c.c_[0] = hyperbolic ? std::cosh(a.c_[0]) : std::cos(a.c_[0]);
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (int k = 1; k <= a.order_; ++k) {
      double ss = 0.0, cc = 0.0;
      for (int i = 1; i <= k; ++i) {
        ss += i * a.c_[i] * c.c_[k - i];
        cc += i * a.c_[i] * s.c_[k - i];
      }
      s.c_[k] = ss / k;
      c.c_[k] = sign * cc / k;
    }
  }

  friend Jet sin(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c, false);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c, false);
    return c;
  }
  friend Jet sinh(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c, true);
    return s;
  }
  friend Jet cosh(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c, true);
    return c;
  }

  // Real power with a positive base value; integer powers go through ipow.
  friend Jet pow(const Jet& a, double r) {
    Jet p;
    p.order_ = a.order_;
    p.c_[0] = std::pow(a.c_[0], r);
    for (int k = 1; k <= p.order_; ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += ((r + 1.0) * i - k) * a.c_[i] * p.c_[k - i];
      p.c_[k] = s / (k * a.c_[0]);
    }
    return p;
  }

  friend Jet ipow(const Jet& a, int n) {
    if (n < 0) return Jet(1.0) / ipow(a, -n);
    Jet result(1.0);
    Jet base = a;
    while (n > 0) {
      if (n & 1) result = result * base;
      base = base * base;
      n >>= 1;
    }
    return result;
  }

  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

 private:
  void clear_tail() {
    for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  }

  std::array<double, kMaxOrder + 1> c_{};
  int order_ = kMaxOrder;
};

inline double value_of(double v) { return v; }
inline double value_of(const Jet& j) { return j.value(); }

inline double ipow(double a, int n) {
  if (n < 0) return 1.0 / ipow(a, -n);
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= a;
    a *= a;
    n >>= 1;
  }
  return result;
}

}  // namespace conflox
