#include "conflox/tensor.hpp"

#include <cstdio>
#include <utility>

namespace conflox {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw DimensionError("chart dimension must be 2 or 3");
}

Expr radius_squared(int dim) {
  Expr r2 = pow(Expr::variable(Var::x), 2.0) + pow(Expr::variable(Var::y), 2.0);
  if (dim == 3) r2 = r2 + pow(Expr::variable(Var::z), 2.0);
  return r2;
}

void check_variables(int dim, const Expr& e, const char* what) {
  if (e.uses(Var::t)) throw ConfigError(std::string(what) + " may not depend on the curve parameter t");
  if (dim == 2 && e.uses(Var::z)) throw ConfigError(std::string(what) + " uses z in a 2-dimensional chart");
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

MetricField MetricField::flat(int dim) {
  check_dim(dim);
  MetricField m;
  m.dim_ = dim;
  m.kind_ = Kind::flat;
  m.label_ = "flat";
  m.omega_ = Expr(1.0);
  m.prepare();
  return m;
}

MetricField MetricField::sphere(int dim, double K) {
  check_dim(dim);
  if (!(K > 0.0)) throw ConfigError("sphere curvature K must be positive");
  MetricField m;
  m.dim_ = dim;
  m.kind_ = Kind::sphere;
  m.K_ = K;
  m.label_ = "sphere(K=" + format_real(K) + ")";
  m.omega_ = Expr(2.0) / (Expr(1.0) + Expr(K) * radius_squared(dim));
  m.prepare();
  return m;
}

MetricField MetricField::hyperbolic(int dim, double K) {
  check_dim(dim);
  if (K == 0.0 || !std::isfinite(K)) throw ConfigError("hyperbolic curvature K must be non-zero");
  const double curvature = -std::abs(K);
  MetricField m;
  m.dim_ = dim;
  m.kind_ = Kind::hyperbolic;
  m.K_ = curvature;
  m.label_ = "hyperbolic(K=" + format_real(curvature) + ")";
  m.omega_ = Expr(2.0) / (Expr(1.0) + Expr(curvature) * radius_squared(dim));
  m.prepare();
  return m;
}

MetricField MetricField::cylinder_gauge() {
  MetricField m;
  m.dim_ = 2;
  m.kind_ = Kind::cylinder;
  m.label_ = "cylinder";
  m.omega_ = pow(radius_squared(2), -0.5);
  m.prepare();
  return m;
}

MetricField MetricField::isothermal(int dim, const Expr& omega, std::string label) {
  check_dim(dim);
  check_variables(dim, omega, "conformal factor");
  MetricField m;
  m.dim_ = dim;
  m.kind_ = Kind::isothermal;
  m.label_ = label.empty() ? "isothermal(" + to_string(omega) + ")" : std::move(label);
  m.omega_ = omega;
  m.prepare();
  return m;
}

MetricField MetricField::general(int dim, const Matrix<Expr>& components, std::string label) {
  if (dim != 3) throw DimensionError("general metric components are only accepted in dimension 3");
  MetricField m;
  m.dim_ = dim;
  m.kind_ = Kind::general;
  m.label_ = label.empty() ? "general" : std::move(label);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      check_variables(dim, components[a][b], "metric component");
      m.comp_[a][b] = components[std::min(a, b)][std::max(a, b)];
    }
  m.prepare();
  return m;
}

MetricField MetricField::rescaled(const Expr& omega, const std::string& label) const {
  check_variables(dim_, omega, "conformal factor");
  MetricField m;
  m.dim_ = dim_;
  m.label_ = label;
  if (omega_) {
    m.kind_ = Kind::isothermal;
    m.omega_ = omega * *omega_;
  } else {
    m.kind_ = Kind::general;
    const Expr factor = pow(omega, 2.0);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) m.comp_[a][b] = factor * comp_[a][b];
  }
  m.prepare();
  return m;
}

void MetricField::prepare() {
  if (omega_) {
    for (int a = 0; a < dim_; ++a) {
      d_omega_[a] = differentiate(*omega_, static_cast<Var>(a));
      for (int b = 0; b < dim_; ++b) dd_omega_[a][b] = differentiate(d_omega_[a], static_cast<Var>(b));
    }
    return;
  }
  for (int c = 0; c < dim_; ++c)
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) {
        d_comp_[c][a][b] = differentiate(comp_[a][b], static_cast<Var>(c));
        for (int d = 0; d < dim_; ++d) {
          dd_comp_[c][d][a][b] = differentiate(d_comp_[c][a][b], static_cast<Var>(d));
        }
      }
}

Expr MetricField::component(int a, int b) const {
  if (omega_) return a == b ? pow(*omega_, 2.0) : Expr(0.0);
  return comp_[a][b];
}

template <class T>
MetricData<T> MetricField::evaluate(const Vector<T>& x, int level) const {
  MetricData<T> out;
  out.g = zero_matrix<T>();
  const Coordinates<T> p = chart_point(x);
  if (omega_) {
    const T w = conflox::evaluate<T>(*omega_, p);
    if (!(value_of(w) > 0.0)) throw DomainError("conformal factor is not positive");
    for (int a = 0; a < dim_; ++a) out.g[a][a] = w * w;
    if (level < 1) return out;
    Vector<T> dw{};
    for (int c = 0; c < dim_; ++c) {
      dw[c] = conflox::evaluate<T>(d_omega_[c], p);
      for (int a = 0; a < dim_; ++a) out.dg[c][a][a] = 2.0 * w * dw[c];
    }
    if (level < 2) return out;
    for (int c = 0; c < dim_; ++c)
      for (int d = 0; d < dim_; ++d) {
        const T v = 2.0 * (dw[c] * dw[d] + w * conflox::evaluate<T>(dd_omega_[c][d], p));
        for (int a = 0; a < dim_; ++a) out.ddg[c][d][a][a] = v;
      }
    return out;
  }
  for (int a = 0; a < dim_; ++a)
    for (int b = a; b < dim_; ++b) out.g[a][b] = out.g[b][a] = conflox::evaluate<T>(comp_[a][b], p);
  if (level < 1) return out;
  for (int c = 0; c < dim_; ++c)
    for (int a = 0; a < dim_; ++a)
      for (int b = a; b < dim_; ++b) {
        out.dg[c][a][b] = out.dg[c][b][a] = conflox::evaluate<T>(d_comp_[c][a][b], p);
      }
  if (level < 2) return out;
  for (int c = 0; c < dim_; ++c)
    for (int d = 0; d < dim_; ++d)
      for (int a = 0; a < dim_; ++a)
        for (int b = a; b < dim_; ++b) {
          out.ddg[c][d][a][b] = out.ddg[c][d][b][a] = conflox::evaluate<T>(dd_comp_[c][d][a][b], p);
        }
  return out;
}

template MetricData<double> MetricField::evaluate<double>(const Vector<double>&, int) const;
template MetricData<Jet> MetricField::evaluate<Jet>(const Vector<Jet>&, int) const;

Tensor3 christoffel(const MetricField& metric, const Vec& x) {
  const auto m = metric.evaluate<double>(x, 1);
  return christoffel_from(metric.dim(), inverse_metric(metric.dim(), m.g), m.dg);
}

CurvatureData curvature(const MetricField& metric, const Vec& x) {
  const auto c = curvature_from(metric.dim(), metric.evaluate<double>(x, 2));
  return CurvatureData{c.christoffel, c.riemann, c.ricci, c.scalar};
}

Mat epsilon_upper(const MetricField& metric, const Vec& x) {
  if (metric.dim() != 2) throw DimensionError("epsilon^bc is only defined here in dimension 2");
  const Mat g = metric.g(x);
  const double det = determinant(2, g);
  if (!(det > 0.0)) throw SingularMetric("metric is singular");
  Mat eps{};
  eps[0][1] = 1.0 / std::sqrt(det);
  eps[1][0] = -eps[0][1];
  return eps;
}

}  // namespace conflox
