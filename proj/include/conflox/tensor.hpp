#pragma once

// Dense small-tensor algebra on a single chart of dimension 2 or 3.
//
// Storage is fixed at three slots per index; for dimension 2 the third slot
// stays zero. Index conventions:
//   christoffel  G[a][b][c]        = Gamma^a_bc
//   metric data  dg[c][a][b]       = d_c g_ab,  ddg[c][d][a][b] = d_c d_d g_ab
//   riemann      R[a][b][c][d]     = R_abcd (all lowered),
//                with R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "conflox/errors.hpp"
#include "conflox/expr.hpp"
#include "conflox/jet.hpp"

namespace conflox {

inline constexpr int kMaxDim = 3;

template <class T>
using Vector = std::array<T, kMaxDim>;
template <class T>
using Matrix = std::array<Vector<T>, kMaxDim>;
template <class T>
using Rank3 = std::array<Matrix<T>, kMaxDim>;
template <class T>
using Rank4 = std::array<Rank3<T>, kMaxDim>;

using Vec = Vector<double>;
using Mat = Matrix<double>;
using Tensor3 = Rank3<double>;
using Tensor4 = Rank4<double>;

template <class T>
Matrix<T> zero_matrix() {
  Matrix<T> m;
  for (auto& row : m) row.fill(T(0.0));
  return m;
}

inline Mat identity_matrix(int dim) {
  Mat m{};
  for (int a = 0; a < dim; ++a) m[a][a] = 1.0;
  return m;
}

// Conformal weight: a weight-w quantity is multiplied by Omega^w when the
// metric is replaced by Omega^2 g.
struct Weight {
  int w = 0;
  friend Weight operator+(Weight a, Weight b) { return {a.w + b.w}; }
  friend bool operator==(Weight a, Weight b) = default;
  double rescale(double value, double omega) const { return ipow(omega, w) * value; }
};

struct WeightedScalar {
  double value = 0.0;
  Weight weight;
};

// --- index gymnastics -------------------------------------------------------

template <class T>
T determinant(int dim, const Matrix<T>& g) {
  if (dim == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

// Inverse of a symmetric positive-definite metric; throws SingularMetric.
template <class T>
Matrix<T> inverse_metric(int dim, const Matrix<T>& g) {
  const T det = determinant(dim, g);
  const bool positive = value_of(g[0][0]) > 0.0 && value_of(det) > 0.0 &&
                        (dim == 2 || value_of(g[0][0] * g[1][1] - g[0][1] * g[1][0]) > 0.0);
  if (!positive || !std::isfinite(value_of(det))) {
    throw SingularMetric("metric is singular or not positive definite");
  }
  Matrix<T> inv = zero_matrix<T>();
  if (dim == 2) {
    inv[0][0] = g[1][1] / det;
    inv[1][1] = g[0][0] / det;
    inv[0][1] = inv[1][0] = -g[0][1] / det;
    return inv;
  }
  inv[0][0] = (g[1][1] * g[2][2] - g[1][2] * g[2][1]) / det;
  inv[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) / det;
  inv[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) / det;
  inv[1][0] = inv[0][1];
  inv[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) / det;
  inv[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) / det;
  inv[2][0] = inv[0][2];
  inv[2][1] = inv[1][2];
  inv[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / det;
  return inv;
}

template <class T>
Vector<T> contract(int dim, const Matrix<T>& m, const Vector<T>& v) {
  Vector<T> r{};
  for (int a = 0; a < dim; ++a) {
    T s(0.0);
    for (int b = 0; b < dim; ++b) s += m[a][b] * v[b];
    r[a] = s;
  }
  return r;
}

template <class T>
T dot(int dim, const Vector<T>& u, const Vector<T>& v) {
  T s(0.0);
  for (int a = 0; a < dim; ++a) s += u[a] * v[a];
  return s;
}

// Bilinear form m(u, v) = m_ab u^a v^b.
template <class T>
T bilinear(int dim, const Matrix<T>& m, const Vector<T>& u, const Vector<T>& v) {
  return dot(dim, u, contract(dim, m, v));
}

// Vectors have upper indices, covectors lower; g lowers and g^-1 raises.
inline Vec lower(int dim, const Mat& g, const Vec& vector) { return contract(dim, g, vector); }
inline Vec raise(int dim, const Mat& g_inv, const Vec& covector) { return contract(dim, g_inv, covector); }
inline double inner(int dim, const Mat& g, const Vec& u, const Vec& v) { return bilinear(dim, g, u, v); }

// Raising both indices of a rank-2 covariant tensor.
template <class T>
Matrix<T> raise_both(int dim, const Matrix<T>& g_inv, const Matrix<T>& m) {
  Matrix<T> r = zero_matrix<T>();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      T s(0.0);
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) s += g_inv[a][c] * g_inv[b][d] * m[c][d];
      r[a][b] = s;
    }
  return r;
}

// --- Levi-Civita data ---------------------------------------------------------

template <class T>
Rank3<T> christoffel_from(int dim, const Matrix<T>& g_inv, const Rank3<T>& dg) {
  Rank3<T> G{};
  for (auto& m : G) m = zero_matrix<T>();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = b; c < dim; ++c) {
        T s(0.0);
        for (int d = 0; d < dim; ++d) s += g_inv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        G[a][b][c] = 0.5 * s;
        G[a][c][b] = G[a][b][c];
      }
  return G;
}

// dG[e][a][b][c] = d_e Gamma^a_bc.
template <class T>
Rank4<T> christoffel_derivative_from(int dim, const Matrix<T>& g_inv, const Rank3<T>& dg,
                                     const Rank4<T>& ddg) {
  // d_e g^ad = -g^ai d_e g_ij g^jd
  Rank3<T> dginv{};
  for (auto& m : dginv) m = zero_matrix<T>();
  for (int e = 0; e < dim; ++e)
    for (int a = 0; a < dim; ++a)
      for (int d = 0; d < dim; ++d) {
        T s(0.0);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) s += g_inv[a][i] * dg[e][i][j] * g_inv[j][d];
        dginv[e][a][d] = -s;
      }
  Rank4<T> dG{};
  for (auto& r3 : dG)
    for (auto& m : r3) m = zero_matrix<T>();
  for (int e = 0; e < dim; ++e)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = b; c < dim; ++c) {
          T s(0.0);
          for (int d = 0; d < dim; ++d) {
            const T first = dg[b][d][c] + dg[c][d][b] - dg[d][b][c];
            const T second = ddg[e][b][d][c] + ddg[e][c][d][b] - ddg[e][d][b][c];
            s += dginv[e][a][d] * first + g_inv[a][d] * second;
          }
          dG[e][a][b][c] = 0.5 * s;
          dG[e][a][c][b] = dG[e][a][b][c];
        }
  return dG;
}

// --- metric fields ------------------------------------------------------------

template <class T>
struct MetricData {
  Matrix<T> g{};
  Rank3<T> dg{};
  Rank4<T> ddg{};
};

// A Riemannian metric on one chart. Every metric here is expression-backed,
// so all coordinate derivatives are exact.
class MetricField {
 public:
  enum class Kind { flat, sphere, hyperbolic, cylinder, isothermal, general };

  static MetricField flat(int dim);
  // Stereographic chart of the round sphere of curvature K > 0.
  static MetricField sphere(int dim, double K);
  // Poincare ball of curvature -|K|.
  static MetricField hyperbolic(int dim, double K);
  // The flat plane rescaled by 1/r, i.e. dr^2/r^2 + dphi^2 (2D only).
  static MetricField cylinder_gauge();
  // g_ab = omega^2 delta_ab.
  static MetricField isothermal(int dim, const Expr& omega, std::string label = {});
  // Arbitrary symmetric components (3D only; 2D metrics are isothermal).
  static MetricField general(int dim, const Matrix<Expr>& components, std::string label = {});

  // Omega^2 times this metric.
  MetricField rescaled(const Expr& omega, const std::string& label) const;

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double curvature_constant() const { return K_; }  // sphere / hyperbolic only
  // Present exactly when g = omega^2 delta.
  const std::optional<Expr>& conformal_factor() const { return omega_; }
  Expr component(int a, int b) const;

  // level 0: g only; 1: + dg; 2: + ddg.
  template <class T>
  MetricData<T> evaluate(const Vector<T>& x, int level) const;

  Mat g(const Vec& x) const { return evaluate<double>(x, 0).g; }
  Mat g_inv(const Vec& x) const { return inverse_metric(dim_, g(x)); }
  Tensor3 dg(const Vec& x) const { return evaluate<double>(x, 1).dg; }

 private:
  MetricField() = default;
  void prepare();

  int dim_ = 2;
  Kind kind_ = Kind::flat;
  double K_ = 0.0;
  std::string label_;
  std::optional<Expr> omega_;
  // isothermal representation
  Vector<Expr> d_omega_{};
  Matrix<Expr> dd_omega_{};
  // general representation
  Matrix<Expr> comp_{};
  Rank3<Expr> d_comp_{};
  Rank4<Expr> dd_comp_{};
};

template <class T>
Coordinates<T> chart_point(const Vector<T>& x) {
  return Coordinates<T>{x[0], x[1], x[2], T(0.0)};
}

// Gamma^a_bc at a point.
Tensor3 christoffel(const MetricField& metric, const Vec& x);

struct CurvatureData {
  Tensor3 christoffel{};
  Tensor4 riemann{};  // R_abcd
  Mat ricci{};
  double scalar = 0.0;
};

template <class T>
struct CurvatureT {
  Rank3<T> christoffel{};
  Rank4<T> riemann{};
  Matrix<T> ricci{};
  T scalar{};
};

template <class T>
CurvatureT<T> curvature_from(int dim, const MetricData<T>& m) {
  const Matrix<T> g_inv = inverse_metric(dim, m.g);
  CurvatureT<T> out;
  out.christoffel = christoffel_from(dim, g_inv, m.dg);
  const Rank4<T> dG = christoffel_derivative_from(dim, g_inv, m.dg, m.ddg);
  const auto& G = out.christoffel;
  // R^a_bcd
  Rank4<T> Rup{};
  for (auto& r3 : Rup)
    for (auto& mm : r3) mm = zero_matrix<T>();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) {
          T s = dG[c][a][d][b] - dG[d][a][c][b];
          for (int e = 0; e < dim; ++e) s += G[a][c][e] * G[e][d][b] - G[a][d][e] * G[e][c][b];
          Rup[a][b][c][d] = s;
        }
  for (auto& r3 : out.riemann)
    for (auto& mm : r3) mm = zero_matrix<T>();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) {
          T s(0.0);
          for (int e = 0; e < dim; ++e) s += m.g[a][e] * Rup[e][b][c][d];
          out.riemann[a][b][c][d] = s;
        }
  out.ricci = zero_matrix<T>();
  for (int b = 0; b < dim; ++b)
    for (int d = 0; d < dim; ++d) {
      T s(0.0);
      for (int a = 0; a < dim; ++a) s += Rup[a][b][a][d];
      out.ricci[b][d] = s;
    }
  T scalar(0.0);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) scalar += g_inv[a][b] * out.ricci[a][b];
  out.scalar = scalar;
  return out;
}

CurvatureData curvature(const MetricField& metric, const Vec& x);

// epsilon^bc with epsilon^12 = 1/sqrt(det g), coordinate orientation (2D only).
Mat epsilon_upper(const MetricField& metric, const Vec& x);

// Shortest decimal form that round-trips (used in labels).
std::string format_real(double v);

}  // namespace conflox
