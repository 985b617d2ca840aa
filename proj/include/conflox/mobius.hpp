#pragma once

// Mobius structures: a metric paired with a Rho tensor that transforms under
// g -> Omega^2 g by
//   P'_ab = P_ab - nabla_a Y_b + Y_a Y_b - 1/2 |Y|^2 g_ab,   Y_a = Omega^-1 d_a Omega.

#include <memory>
#include <string>

#include "conflox/tensor.hpp"

namespace conflox {

class ConformalRescaling {
 public:
  ConformalRescaling(int dim, const Expr& omega);
  static ConformalRescaling identity(int dim) { return ConformalRescaling(dim, Expr(1.0)); }

  int dim() const { return dim_; }
  const Expr& omega() const { return omega_; }

  // Throws DomainError unless omega > 0 at x.
  template <class T>
  T value(const Vector<T>& x) const;
  template <class T>
  Vector<T> upsilon(const Vector<T>& x) const;
  // dU[a][b] = d_a Upsilon_b (partial derivatives, symmetric).
  template <class T>
  Matrix<T> upsilon_derivative(const Vector<T>& x) const;

  // Rescaling by this then by other equals rescaling by the product.
  ConformalRescaling then(const ConformalRescaling& other) const;
  ConformalRescaling inverse() const;

 private:
  int dim_;
  Expr omega_;
  Vector<Expr> d_omega_{};
  Matrix<Expr> dd_omega_{};
};

// P_hat at a point from P, Upsilon, its derivative and the pre-rescaling
// Levi-Civita data.
template <class T>
Matrix<T> rho_transform_from(int dim, const Matrix<T>& P, const Matrix<T>& g, const Matrix<T>& g_inv,
                             const Rank3<T>& gamma, const Vector<T>& ups, const Matrix<T>& d_ups) {
  Matrix<T> out = zero_matrix<T>();
  const T ups2 = bilinear(dim, g_inv, ups, ups);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      T nabla = d_ups[a][b];
      for (int c = 0; c < dim; ++c) nabla -= gamma[c][a][b] * ups[c];
      out[a][b] = P[a][b] - nabla + ups[a] * ups[b] - 0.5 * ups2 * g[a][b];
    }
  return out;
}

Mat rho_transform(const Mat& P, const ConformalRescaling& rescaling, const MetricField& metric, const Vec& x);

// P_ab = R_ab - R g_ab / 4 (dimension 3 only).
Mat schouten(const MetricField& metric, const Vec& x);

enum class RhoProvenance { schouten, flat_model_transform, constant_curvature, user, transformed };

const char* provenance_name(RhoProvenance p);

// A Rho field evaluable on doubles and on jets (for exact derivatives).
class RhoField {
 public:
  static RhoField symbolic(int dim, const Matrix<Expr>& components, RhoProvenance provenance);
  static RhoField schouten_of(const MetricField& metric);
  static RhoField transformed(const RhoField& base, const MetricField& base_metric,
                              const ConformalRescaling& rescaling);

  RhoProvenance provenance() const { return provenance_; }
  int dim() const { return dim_; }

  template <class T>
  Matrix<T> evaluate(const Vector<T>& x) const;

 private:
  struct Transformed;

  RhoField() = default;
  int dim_ = 2;
  RhoProvenance provenance_ = RhoProvenance::user;
  Matrix<Expr> components_{};
  std::shared_ptr<const MetricField> metric_;  // schouten source
  std::shared_ptr<const Transformed> transformed_;
};

class MobiusStructure {
 public:
  MobiusStructure(MetricField metric, RhoField rho, std::string gauge = {});

  // P transported from P = 0 on the flat reference by the conformal factor.
  static MobiusStructure flat_model(const MetricField& metric);
  // P = (K/2) g for sphere and hyperbolic builtins.
  static MobiusStructure constant_curvature(const MetricField& metric);
  // Schouten tensor of a 3-dimensional metric.
  static MobiusStructure schouten_structure(const MetricField& metric);
  // Components given as the upper triangle; the lower triangle is ignored.
  static MobiusStructure user(const MetricField& metric, const Matrix<Expr>& rho);

  int dim() const { return metric_.dim(); }
  const MetricField& metric() const { return metric_; }
  const RhoField& rho_field() const { return rho_; }
  RhoProvenance provenance() const { return rho_.provenance(); }
  const std::string& gauge() const { return gauge_; }

  Mat rho(const Vec& x) const { return rho_.evaluate<double>(x); }
  // dP[c][a][b] = d_c P_ab.
  Tensor3 rho_derivative(const Vec& x) const;
  // Y[a][b][c] = nabla_a P_bc - nabla_b P_ac.
  Tensor3 cotton_york(const Vec& x) const;

 private:
  MetricField metric_;
  RhoField rho_;
  std::string gauge_;
};

MobiusStructure rescale_structure(const MobiusStructure& structure, const ConformalRescaling& rescaling,
                                  std::string gauge = {});

}  // namespace conflox
