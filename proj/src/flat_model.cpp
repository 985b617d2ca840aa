#include "conflox/flat_model.hpp"

#include <cmath>
#include <numbers>

namespace conflox {

namespace {

Complex spiral_factor(double beta, double theta) { return std::exp(Complex(beta, 1.0) * theta); }

}  // namespace

KillingCoefficients KillingCoefficients::from_complex(Complex a, Complex b, Complex c) {
  KillingCoefficients k;
  k.P = a.real();
  k.Q = a.imag();
  k.lambda = b.real() / 2;
  k.F = b.imag() / 2;
  k.u = c.real() / 2;
  k.v = c.imag() / 2;
  return k;
}

std::array<double, 2> KillingCoefficients::field(double x, double y) const {
  const double h = 0.5 * (x * x - y * y);
  return {u + lambda * x - F * y + P * h - Q * x * y, v + lambda * y + F * x + P * x * y + Q * h};
}

LoxodromeSpec LoxodromeSpec::two_point(Complex p, Complex q, double beta) {
  if (p == q) throw DomainError("loxodrome end points must differ");
  // z(0) = 0, so an end point at the origin collapses the curve
  if (p == Complex(0.0) || q == Complex(0.0)) throw DomainError("loxodrome end points must be non-zero");
  if (beta == 0.0 || !std::isfinite(beta)) throw DomainError("loxodrome bearing must be non-zero");
  return LoxodromeSpec{p, q, beta};
}

LoxodromeSpec LoxodromeSpec::spiral(Complex p, double beta) {
  if (beta == 0.0 || !std::isfinite(beta)) throw DomainError("loxodrome bearing must be non-zero");
  return LoxodromeSpec{p, std::nullopt, beta};
}

Complex loxodrome_point(const LoxodromeSpec& spec, double theta) {
  const Complex E = spiral_factor(spec.beta, theta);
  if (!spec.q) return spec.p + E;
  const Complex p = spec.p, q = *spec.q;
  const Complex den = p * E - q;
  if (std::abs(den) <= 1e-13 * std::max(std::abs(p * E), std::abs(q))) throw DomainError("loxodrome pole at theta = " + std::to_string(theta));
  return p * q * (E - 1.0) / den;
}

Complex loxodrome_tangent(const LoxodromeSpec& spec, Complex z) {
  const Complex w(spec.beta, 1.0);
  if (!spec.q) return w * (z - spec.p);
  return w * (z - spec.p) * (z - *spec.q) / (spec.p - *spec.q);
}

KillingCoefficients generator(const LoxodromeSpec& spec) {
  const Complex w(spec.beta, 1.0);
  if (!spec.q) return KillingCoefficients::from_complex(0.0, w, -w * spec.p);
  const Complex p = spec.p, q = *spec.q;
  return KillingCoefficients::from_complex(w / (p - q), -w * (p + q) / (p - q), w * p * q / (p - q));
}

Complex spiral_coordinate(const LoxodromeSpec& spec, Complex z) {
  if (!spec.q) return z - spec.p;
  const Complex p = spec.p, q = *spec.q;
  return (q * z - p * q) / (p * z - q * p);
}

Complex killing_flow(const KillingCoefficients& k, double t, Complex z0) {
  // dz/dt = m12 + (m11 - m22) z - m21 z^2 for the matrix M below
  const Complex m11 = k.b() / 4.0, m12 = k.c() / 2.0, m21 = -k.a() / 2.0, m22 = -k.b() / 4.0;
  const Complex delta = std::sqrt(k.discriminant()) / 4.0;  // M^2 = delta^2 I
  const Complex td = t * delta;
  const Complex ch = std::cosh(td);
  const Complex sh = std::abs(td) < 1e-4 ? t * (1.0 + td * td / 6.0 + td * td * td * td / 120.0) : std::sinh(td) / delta;
  const Complex e11 = ch + sh * m11, e12 = sh * m12, e21 = sh * m21, e22 = ch + sh * m22;
  const Complex num = e11 * z0 + e12, den = e21 * z0 + e22;
  if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(num))) throw DomainError("flow reaches chart infinity");
  const Complex z = num / den;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("flow reaches chart infinity");
  return z;
}

const char* kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::degenerate: return "degenerate";
    case CurveKind::circular: return "circular";
    case CurveKind::radial: return "radial";
    case CurveKind::loxodromic: return "loxodromic";
  }
  return "unknown";
}

const char* handedness_name(Handedness h) {
  switch (h) {
    case Handedness::none: return "none";
    case Handedness::right: return "right";
    case Handedness::left: return "left";
  }
  return "unknown";
}

double bearing_from_discriminant(Complex D) {
  // Re D / Im D = (beta^2 - 1) / (2 beta)
  const double r = D.real() / D.imag();
  const double root = std::hypot(r, 1.0);
  if (D.imag() > 0) return r >= 0 ? r + root : 1.0 / (root - r);
  return r <= 0 ? r - root : -1.0 / (root + r);
}

Classification classify(const KillingCoefficients& k, double rel_tol) {
  if (k.is_zero()) throw DomainError("the zero field has no orbits to classify");
  Classification out;
  out.discriminant = k.discriminant();
  const double scale = std::norm(k.a()) + std::norm(k.b()) + std::norm(k.c());
  const Complex D = out.discriminant;
  if (std::abs(D) <= rel_tol * scale) {
    out.kind = CurveKind::degenerate;
  } else if (std::abs(D.imag()) <= rel_tol * std::abs(D)) {
    out.kind = D.real() < 0 ? CurveKind::circular : CurveKind::radial;
  } else {
    out.kind = CurveKind::loxodromic;
    out.beta = bearing_from_discriminant(D);
    out.handedness = *out.beta > 0 ? Handedness::right : Handedness::left;
  }
  return out;
}

std::array<double, 2> mercator(Complex zeta) {
  if (zeta == Complex(0.0, 0.0)) throw DomainError("Mercator projection is undefined at zero");
  return {std::arg(zeta) / (2 * std::numbers::pi), std::log(std::abs(zeta)) / (2 * std::numbers::pi)};
}

std::vector<std::array<double, 2>> mercator_trace(const std::vector<Complex>& zetas, std::size_t anchor) {
  std::vector<std::array<double, 2>> out(zetas.size());
  if (zetas.empty()) return out;
  if (anchor >= zetas.size()) throw DomainError("Mercator anchor out of range");
  out[anchor] = mercator(zetas[anchor]);
  auto step = [&](std::size_t from, std::size_t to) {
    auto m = mercator(zetas[to]);
    const double jump = m[0] - out[from][0];
    m[0] -= std::round(jump);
    out[to] = m;
  };
  for (std::size_t i = anchor + 1; i < zetas.size(); ++i) step(i - 1, i);
  for (std::size_t i = anchor; i-- > 0;) step(i + 1, i);
  return out;
}

std::vector<LoxodromeSample> sample_loxodrome(const LoxodromeSpec& spec, double theta0, double theta1, int samples) {
  if (samples < 1) throw DomainError("at least one sample is required");
  std::vector<LoxodromeSample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double theta = samples == 1 ? theta0 : theta0 + (theta1 - theta0) * i / (samples - 1);
    LoxodromeSample s{theta, {}, false};
    try {
      s.z = loxodrome_point(spec, theta);
    } catch (const DomainError&) {
      s.pole = true;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace conflox
