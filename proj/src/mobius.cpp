#include "conflox/mobius.hpp"

#include <utility>

namespace conflox {

ConformalRescaling::ConformalRescaling(int dim, const Expr& omega) : dim_(dim), omega_(omega) {
  if (dim != 2 && dim != 3) throw DimensionError("rescaling dimension must be 2 or 3");
  if (omega.uses(Var::t)) throw ConfigError("conformal factor may not depend on t");
  for (int a = 0; a < dim; ++a) {
    d_omega_[a] = differentiate(omega, static_cast<Var>(a));
    for (int b = 0; b < dim; ++b) dd_omega_[a][b] = differentiate(d_omega_[a], static_cast<Var>(b));
  }
}

template <class T>
T ConformalRescaling::value(const Vector<T>& x) const {
  const T w = conflox::evaluate<T>(omega_, chart_point(x));
  if (!(value_of(w) > 0.0)) throw DomainError("conformal factor is not positive");
  return w;
}

template <class T>
Vector<T> ConformalRescaling::upsilon(const Vector<T>& x) const {
  const T w = value(x);
  Vector<T> u{};
  for (int a = 0; a < dim_; ++a) u[a] = conflox::evaluate<T>(d_omega_[a], chart_point(x)) / w;
  return u;
}

template <class T>
Matrix<T> ConformalRescaling::upsilon_derivative(const Vector<T>& x) const {
  const T w = value(x);
  const Vector<T> u = upsilon(x);
  Matrix<T> d = zero_matrix<T>();
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) d[a][b] = conflox::evaluate<T>(dd_omega_[a][b], chart_point(x)) / w - u[a] * u[b];
  return d;
}

template double ConformalRescaling::value<double>(const Vec&) const;
template Jet ConformalRescaling::value<Jet>(const Vector<Jet>&) const;
template Vec ConformalRescaling::upsilon<double>(const Vec&) const;
template Vector<Jet> ConformalRescaling::upsilon<Jet>(const Vector<Jet>&) const;
template Mat ConformalRescaling::upsilon_derivative<double>(const Vec&) const;
template Matrix<Jet> ConformalRescaling::upsilon_derivative<Jet>(const Vector<Jet>&) const;

ConformalRescaling ConformalRescaling::then(const ConformalRescaling& other) const {
  if (other.dim_ != dim_) throw DimensionError("rescalings have different dimensions");
  return ConformalRescaling(dim_, omega_ * other.omega_);
}

ConformalRescaling ConformalRescaling::inverse() const { return ConformalRescaling(dim_, Expr(1.0) / omega_); }

Mat rho_transform(const Mat& P, const ConformalRescaling& rescaling, const MetricField& metric, const Vec& x) {
  const int n = metric.dim();
  const auto m = metric.evaluate<double>(x, 1);
  const Mat g_inv = inverse_metric(n, m.g);
  return rho_transform_from(n, P, m.g, g_inv, christoffel_from(n, g_inv, m.dg), rescaling.upsilon(x),
                            rescaling.upsilon_derivative(x));
}

Mat schouten(const MetricField& metric, const Vec& x) {
  if (metric.dim() != 3) throw DimensionError("the Schouten tensor is used only in dimension 3");
  return RhoField::schouten_of(metric).evaluate<double>(x);
}

const char* provenance_name(RhoProvenance p) {
  switch (p) {
    case RhoProvenance::schouten: return "schouten";
    case RhoProvenance::flat_model_transform: return "flat-model";
    case RhoProvenance::constant_curvature: return "constant-curvature";
    case RhoProvenance::user: return "user";
    case RhoProvenance::transformed: return "transformed";
  }
  return "unknown";
}

// --- RhoField ------------------------------------------------------------------

struct RhoField::Transformed {
  RhoField base;
  MetricField base_metric;
  ConformalRescaling rescaling;
};

RhoField RhoField::symbolic(int dim, const Matrix<Expr>& components, RhoProvenance provenance) {
  RhoField r;
  r.dim_ = dim;
  r.provenance_ = provenance;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const Expr& e = components[std::min(a, b)][std::max(a, b)];
      if (e.uses(Var::t) || (dim == 2 && e.uses(Var::z))) throw ConfigError("Rho component uses an invalid variable");
      r.components_[a][b] = e;
    }
  return r;
}

RhoField RhoField::schouten_of(const MetricField& metric) {
  if (metric.dim() != 3) throw DimensionError("the Schouten tensor is used only in dimension 3");
  RhoField r;
  r.dim_ = 3;
  r.provenance_ = RhoProvenance::schouten;
  r.metric_ = std::make_shared<const MetricField>(metric);
  return r;
}

RhoField RhoField::transformed(const RhoField& base, const MetricField& base_metric,
                               const ConformalRescaling& rescaling) {
  if (base.dim_ != base_metric.dim() || rescaling.dim() != base.dim_) {
    throw DimensionError("Rho field, metric and rescaling dimensions differ");
  }
  RhoField r;
  r.dim_ = base.dim_;
  r.provenance_ = RhoProvenance::transformed;
  r.transformed_ = std::make_shared<const Transformed>(Transformed{base, base_metric, rescaling});
  return r;
}

template <class T>
Matrix<T> RhoField::evaluate(const Vector<T>& x) const {
  if (transformed_) {
    const auto& t = *transformed_;
    const Matrix<T> P = t.base.evaluate(x);
    const auto m = t.base_metric.evaluate<T>(x, 1);
    const Matrix<T> g_inv = inverse_metric(dim_, m.g);
    return rho_transform_from(dim_, P, m.g, g_inv, christoffel_from(dim_, g_inv, m.dg), t.rescaling.upsilon(x),
                              t.rescaling.upsilon_derivative(x));
  }
  if (metric_) {
    const auto m = metric_->evaluate<T>(x, 2);
    const auto c = curvature_from(dim_, m);
    Matrix<T> P = zero_matrix<T>();
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) P[a][b] = c.ricci[a][b] - 0.25 * c.scalar * m.g[a][b];
    return P;
  }
  Matrix<T> P = zero_matrix<T>();
  const Coordinates<T> p = chart_point(x);
  for (int a = 0; a < dim_; ++a)
    for (int b = a; b < dim_; ++b) P[a][b] = P[b][a] = conflox::evaluate<T>(components_[a][b], p);
  return P;
}

template Mat RhoField::evaluate<double>(const Vec&) const;
template Matrix<Jet> RhoField::evaluate<Jet>(const Vector<Jet>&) const;

// --- MobiusStructure -------------------------------------------------------------

MobiusStructure::MobiusStructure(MetricField metric, RhoField rho, std::string gauge)
    : metric_(std::move(metric)), rho_(std::move(rho)), gauge_(std::move(gauge)) {
  if (rho_.dim() != metric_.dim()) throw DimensionError("Rho field and metric dimensions differ");
  if (gauge_.empty()) gauge_ = metric_.label();
}

MobiusStructure MobiusStructure::flat_model(const MetricField& metric) {
  const auto& omega = metric.conformal_factor();
  if (!omega) throw ConfigError("flat-model Rho needs a conformally flat metric (isothermal or builtin)");
  const int n = metric.dim();
  Vector<Expr> ups{};
  for (int a = 0; a < n; ++a) ups[a] = differentiate(*omega, static_cast<Var>(a)) / *omega;
  Expr ups2(0.0);
  for (int a = 0; a < n; ++a) ups2 = ups2 + ups[a] * ups[a];
  Matrix<Expr> P{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      P[a][b] = ups[a] * ups[b] - differentiate(ups[b], static_cast<Var>(a));
      if (a == b) P[a][b] = P[a][b] - Expr(0.5) * ups2;
    }
  return MobiusStructure(metric, RhoField::symbolic(n, P, RhoProvenance::flat_model_transform));
}

MobiusStructure MobiusStructure::constant_curvature(const MetricField& metric) {
  if (metric.kind() != MetricField::Kind::sphere && metric.kind() != MetricField::Kind::hyperbolic) {
    throw ConfigError("constant-curvature Rho needs a sphere or hyperbolic metric");
  }
  const int n = metric.dim();
  Matrix<Expr> P{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) P[a][b] = Expr(0.5 * metric.curvature_constant()) * metric.component(a, b);
  return MobiusStructure(metric, RhoField::symbolic(n, P, RhoProvenance::constant_curvature));
}

MobiusStructure MobiusStructure::schouten_structure(const MetricField& metric) {
  return MobiusStructure(metric, RhoField::schouten_of(metric));
}

MobiusStructure MobiusStructure::user(const MetricField& metric, const Matrix<Expr>& rho) {
  return MobiusStructure(metric, RhoField::symbolic(metric.dim(), rho, RhoProvenance::user));
}

Tensor3 MobiusStructure::rho_derivative(const Vec& x) const {
  const int n = dim();
  Tensor3 dP{};
  for (int c = 0; c < n; ++c) {
    Vector<Jet> xj{};
    for (int a = 0; a < kMaxDim; ++a) xj[a] = a == c ? Jet::variable(x[a], 1) : Jet(x[a]);
    const Matrix<Jet> P = rho_.evaluate<Jet>(xj);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dP[c][a][b] = P[a][b].coeff(1);
  }
  return dP;
}

Tensor3 MobiusStructure::cotton_york(const Vec& x) const {
  const int n = dim();
  const Mat P = rho(x);
  const Tensor3 dP = rho_derivative(x);
  const Tensor3 G = christoffel(metric_, x);
  Tensor3 nabla{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = dP[a][b][c];
        for (int d = 0; d < n; ++d) s -= G[d][a][b] * P[d][c] + G[d][a][c] * P[b][d];
        nabla[a][b][c] = s;
      }
  Tensor3 Y{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) Y[a][b][c] = nabla[a][b][c] - nabla[b][a][c];
  return Y;
}

MobiusStructure rescale_structure(const MobiusStructure& structure, const ConformalRescaling& rescaling,
                                  std::string gauge) {
  if (rescaling.dim() != structure.dim()) throw DimensionError("rescaling and structure dimensions differ");
  if (gauge.empty()) gauge = structure.gauge() + "*(" + to_string(rescaling.omega()) + ")^2";
  MetricField metric = structure.metric().rescaled(rescaling.omega(), gauge);
  RhoField rho = RhoField::transformed(structure.rho_field(), structure.metric(), rescaling);
  return MobiusStructure(std::move(metric), std::move(rho), std::move(gauge));
}

}  // namespace conflox
