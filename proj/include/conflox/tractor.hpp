#pragma once

// Adjoint tractors (sigma_b, mu_bc, nu, rho_b) in a chosen gauge.
//
// Components are stored in the gauge's trivialisation. The slots carry
// conformal weights (2, 2, 0, 0); a section of the bundle twisted by [w] adds
// w to each, so a slot of total weight k is multiplied by Omega^k on rescaling.

#include <array>
#include <complex>
#include <string>

#include "conflox/flat_model.hpp"
#include "conflox/kinematics.hpp"

namespace conflox {

struct AdjointTractor {
  int dim = 2;
  Vec sigma{};
  Mat mu{};  // antisymmetric
  double nu = 0.0;
  Vec rho{};
  int weight = 0;  // extra weight w for sections of A[w]
  std::string gauge;

  AdjointTractor& operator+=(const AdjointTractor& o);
  AdjointTractor& operator*=(double s);
  friend AdjointTractor operator+(AdjointTractor a, const AdjointTractor& b) { return a += b; }
  friend AdjointTractor operator-(AdjointTractor a, const AdjointTractor& b) { return a += (-1.0) * b; }
  friend AdjointTractor operator*(double s, AdjointTractor a) { return a *= s; }
};

// sqrt(|sigma|^2 + |mu|^2/2 + nu^2 + |rho|^2) with the gauge metric.
double tractor_norm(const AdjointTractor& T, const Mat& g_inv);
double max_component_difference(const AdjointTractor& a, const AdjointTractor& b);

// 4 sigma^b rho_b - mu^bc mu_bc + 2 nu^2
double null_invariant(const AdjointTractor& T, const Mat& g_inv);
// 2 sigma_[b rho_c] - nu mu_bc
Mat wedge_invariant(const AdjointTractor& T);

// The rescaling law applied at x. Throws GaugeMismatch unless T is in the
// structure's gauge.
AdjointTractor transform(const AdjointTractor& T, const ConformalRescaling& rescaling, const MobiusStructure& from,
                         const Vec& x, const std::string& gauge = {});

// Tractor field with expression components (upper triangle of mu used).
struct TractorField {
  int dim = 2;
  Vector<Expr> sigma{};
  Matrix<Expr> mu{};
  Expr nu;
  Vector<Expr> rho{};
  int weight = 0;
  std::string gauge;

  AdjointTractor at(const Vec& x) const;
};

// Tractor field built from a field given in an isothermal gauge, expressed in
// the gauge Omega^2 g (components stay exact expressions).
TractorField transform_field(const TractorField& T, const ConformalRescaling& rescaling, const MetricField& from,
                             const std::string& gauge);

// nabla_a T for a = 0..dim-1 at x.
std::array<AdjointTractor, 3> connection_apply(const TractorField& T, const MobiusStructure& structure, const Vec& x);

// The tractor derivative along a curve. dT holds the componentwise covariant
// derivatives along the curve (d sigma_b, d mu_bc, d nu, d rho_b).
AdjointTractor curve_derivative(const AdjointTractor& T, const AdjointTractor& dT, const Mat& P, const Mat& g,
                                const Vec& U);

// Sections spanning the rank 3 bundle B along a curve.
AdjointTractor phi_U(const KinematicState& s, const Mat& g);   // (0, 0, 0, U_b), weight 1
AdjointTractor phi_A(const KinematicState& s);                 // (0, 0, 1, A_b), weight 0
AdjointTractor phi_UA(const KinematicState& s, const Mat& g);  // (U_b, 2 U_[b A_c], 0, 0), weight -1

// (U_b, 2U_[bA_c], kappa, J_b + (A.A - kappa^2)U_b/2 + kappa A_b), weight -1.
// Throws DegenerateJerk if kappa is undefined.
AdjointTractor lift_velocity(const KinematicState& s, const Mat& g);

// Componentwise derivative of the lift along the curve given dA, dJ, d kappa.
AdjointTractor lift_component_derivative(const KinematicState& s, const Vec& dA, const Vec& dJ, double d_kappa,
                                         const Mat& g);

// dA_a from the jerk definition: J_a - (A.A + P(U,U)) U_a + P_ab U^b
Vec acceleration_derivative(const KinematicState& s, const Mat& P, const Mat& g);
// dJ_a from the kappa definition: -(A.J) U_a - 2 kappa J_a
Vec jerk_derivative(const KinematicState& s, const Mat& g);

// 2 (4 sigma.rho - mu.mu + 2 nu^2) + 4i eps^bc (nu mu_bc - 2 sigma_[b rho_c]) (dimension 2).
Complex discriminant(const AdjointTractor& T, const MetricField& metric, const Vec& x);

// Parallel section of a flat-model Killing field (flat gauge).
AdjointTractor killing_split(const KillingCoefficients& k, const Vec& x);
TractorField killing_split_field(const KillingCoefficients& k);

// Norm of the part of the derivatives of B's spanning sections lying outside
// B, with dA taken from the jerk definition. Equal to |J|_g.
double bundle_b_residual(const KinematicState& s, const MobiusStructure& structure);

}  // namespace conflox
