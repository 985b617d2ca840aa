#pragma once

// Kinematic tower along a curve. U^a carries an upper index; A_a, J_a, S_a are
// lowered with the gauge metric. All quantities are the components in the
// gauge's own trivialisation, so a weight-w object picks up Omega^w under
// g -> Omega^2 g.

#include <array>
#include <limits>
#include <string>

#include "conflox/mobius.hpp"

namespace conflox {

inline constexpr double kDefaultJerkThreshold = 1e-10;

struct KinematicState {
  int dim = 2;
  Vec x{};
  Vec U{};
  Vec A{};
  Vec J{};
  double kappa = 0.0;
  bool has_kappa = false;
  std::string gauge;
};

struct ConstraintResiduals {
  double unit = 0.0;     // |g(U,U) - 1|
  double ortho_A = 0.0;  // |U^a A_a|
  double ortho_J = 0.0;  // |U^a J_a|
  double max() const { return std::max(unit, std::max(ortho_A, ortho_J)); }
};

ConstraintResiduals constraint_residuals(const KinematicState& s, const MetricField& metric);

// --- pointwise formulas (double and jet) ---------------------------------------

// J_a = dA_a + (A.A + P(U,U)) U_a - P_ab U^b
template <class T>
Vector<T> normalised_jerk(int n, const Vector<T>& U, const Vector<T>& A, const Vector<T>& dA, const Matrix<T>& P,
                          const Matrix<T>& g, const Matrix<T>& g_inv) {
  const Vector<T> U_low = contract(n, g, U);
  const Vector<T> PU = contract(n, P, U);
  const T coeff = bilinear(n, g_inv, A, A) + dot(n, U, PU);
  Vector<T> J{};
  for (int a = 0; a < n; ++a) J[a] = dA[a] + coeff * U_low[a] - PU[a];
  return J;
}

// S_a = dJ_a + (A.J) U_a
template <class T>
Vector<T> normalised_snap(int n, const Vector<T>& U, const Vector<T>& A, const Vector<T>& J, const Vector<T>& dJ,
                          const Matrix<T>& g, const Matrix<T>& g_inv) {
  const Vector<T> U_low = contract(n, g, U);
  const T AJ = bilinear(n, g_inv, A, J);
  Vector<T> S{};
  for (int a = 0; a < n; ++a) S[a] = dJ[a] + AJ * U_low[a];
  return S;
}

// kappa = -<dJ + (A.J)U, J> / (2 <J,J>), without the degeneracy check.
template <class T>
T kappa_value(int n, const Vector<T>& U, const Vector<T>& A, const Vector<T>& J, const Vector<T>& dJ,
              const Matrix<T>& g, const Matrix<T>& g_inv) {
  const Vector<T> S = normalised_snap(n, U, A, J, dJ, g, g_inv);
  return -bilinear(n, g_inv, S, J) / (2.0 * bilinear(n, g_inv, J, J));
}

struct KappaResult {
  double kappa = 0.0;
  double residual = 0.0;  // |dJ + (A.J)U + 2 kappa J|_g; zero in dimension 2
};

// Throws DegenerateJerk when |J|_g < threshold.
KappaResult kappa(int n, const Vec& U, const Vec& A, const Vec& J, const Vec& dJ, const Mat& g,
                  double threshold = kDefaultJerkThreshold);

// K_ab = -Y_abc U^c (the Weyl part vanishes in dimensions 2 and 3).
Mat k_two_form(const MobiusStructure& structure, const Vec& U, const Vec& x);

// Component laws for g -> Omega^2 g:
//   U -> U/Omega, A -> A - Y + (U.Y)U, J -> J/Omega, kappa -> (kappa + U.Y)/Omega.
KinematicState transform_state(const KinematicState& s, const ConformalRescaling& rescaling,
                               const MetricField& metric, const std::string& gauge = {});

// --- curves given by expressions in t ------------------------------------------

struct ParametricCurve {
  int dim = 2;
  std::array<Expr, 3> coordinates{};  // functions of t
};

ParametricCurve parse_curve(int dim, const std::array<std::string, 3>& text);

struct CurveSample {
  KinematicState state;
  double speed = 0.0;  // |dx/dt|_g
  Vec dA{};
  Vec dJ{};
  Vec snap{};
  Mat P{};
  double kappa_residual = std::numeric_limits<double>::quiet_NaN();
  double d_kappa = std::numeric_limits<double>::quiet_NaN();
  // d kappa + (A.A + kappa^2)/2 + P(U,U)
  double ordinal_residual = std::numeric_limits<double>::quiet_NaN();
};

// Exact arc-length derivatives from Taylor jets of the curve. kappa and the
// quantities built on it are filled in only when |J| >= threshold.
CurveSample sample_curve(const ParametricCurve& curve, const MobiusStructure& structure, double t,
                         double threshold = kDefaultJerkThreshold);

// Throws DomainError at a singular point, DegenerateJerk if require_kappa and J is too small.
KinematicState jet_from_curve(const ParametricCurve& curve, const MobiusStructure& structure, double t,
                              bool require_kappa = false, double threshold = kDefaultJerkThreshold);

}  // namespace conflox
