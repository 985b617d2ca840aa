#pragma once

// The flat model on the complex plane: loxodromes, their generating conformal
// Killing fields, flows, Mercator coordinates and the classification of
// conformally homogeneous curves.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "conflox/errors.hpp"

namespace conflox {

using Complex = std::complex<double>;

// X = u dx + v dy + lambda (x dx + y dy) + F (x dy - y dx)
//     + P ((x^2-y^2)/2 dx + xy dy) + Q ((x^2-y^2)/2 dy - xy dx)
//   = Re((a z^2 + b z + c) d/dz)
struct KillingCoefficients {
  double u = 0, v = 0, lambda = 0, F = 0, P = 0, Q = 0;

  Complex a() const { return {P, Q}; }
  Complex b() const { return {2 * lambda, 2 * F}; }
  Complex c() const { return {2 * u, 2 * v}; }
  Complex discriminant() const { return b() * b() - 4.0 * a() * c(); }
  bool is_zero() const { return u == 0 && v == 0 && lambda == 0 && F == 0 && P == 0 && Q == 0; }

  static KillingCoefficients from_complex(Complex a, Complex b, Complex c);
  // a z^2 + b z + c
  Complex holomorphic(Complex z) const { return (a() * z + b()) * z + c(); }
  // Components (X^x, X^y) of the real field.
  std::array<double, 2> field(double x, double y) const;
};

struct LoxodromeSpec {
  Complex p{0.0, 0.0};
  std::optional<Complex> q;  // empty means q is the point at infinity
  double beta = 1.0;         // negative for left-handed curves

  // p, q distinct and non-zero.
  static LoxodromeSpec two_point(Complex p, Complex q, double beta);
  // p + exp((beta+i) theta), spiralling out of p towards infinity.
  static LoxodromeSpec spiral(Complex p, double beta);
};

// z(theta) = pq (E - 1) / (p E - q), E = exp((beta+i) theta). Throws DomainError at a pole.
Complex loxodrome_point(const LoxodromeSpec& spec, double theta);

// dz/dtheta along the curve: (beta+i)(z-p)(z-q)/(p-q).
Complex loxodrome_tangent(const LoxodromeSpec& spec, Complex z);

KillingCoefficients generator(const LoxodromeSpec& spec);

// zeta = (q z - p q)/(p z - q p), which sends the curve to exp((beta+i) theta).
Complex spiral_coordinate(const LoxodromeSpec& spec, Complex z);

// Time-t flow of the real field X, i.e. dz/dt = (a z^2 + b z + c)/2, applied to z0.
// Throws DomainError if the image leaves the chart.
Complex killing_flow(const KillingCoefficients& k, double t, Complex z0);

enum class CurveKind { degenerate, circular, radial, loxodromic };
enum class Handedness { none, right, left };

const char* kind_name(CurveKind k);
const char* handedness_name(Handedness h);

struct Classification {
  CurveKind kind = CurveKind::degenerate;
  std::optional<double> beta;
  Handedness handedness = Handedness::none;
  Complex discriminant;
};

// Throws DomainError for the zero field.
Classification classify(const KillingCoefficients& k, double rel_tol = 1e-12);

// Bearing from a discriminant known up to positive real scale; sign follows Im D.
double bearing_from_discriminant(Complex D);

// zeta = exp(2 pi i (u - i v)) on the principal branch. Throws DomainError at zero.
std::array<double, 2> mercator(Complex zeta);

// Mercator coordinates of a sampled curve with arg unwound continuously,
// using the principal branch at the anchor sample.
std::vector<std::array<double, 2>> mercator_trace(const std::vector<Complex>& zetas, std::size_t anchor = 0);

struct LoxodromeSample {
  double theta = 0.0;
  Complex z;
  bool pole = false;
};

std::vector<LoxodromeSample> sample_loxodrome(const LoxodromeSpec& spec, double theta0, double theta1, int samples);

}  // namespace conflox
