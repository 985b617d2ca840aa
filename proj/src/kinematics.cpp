#include "conflox/kinematics.hpp"

namespace conflox {

ConstraintResiduals constraint_residuals(const KinematicState& s, const MetricField& metric) {
  const int n = s.dim;
  const Mat g = metric.g(s.x);
  ConstraintResiduals r;
  r.unit = std::abs(inner(n, g, s.U, s.U) - 1.0);
  r.ortho_A = std::abs(dot(n, s.U, s.A));
  r.ortho_J = std::abs(dot(n, s.U, s.J));
  return r;
}

KappaResult kappa(int n, const Vec& U, const Vec& A, const Vec& J, const Vec& dJ, const Mat& g, double threshold) {
  const Mat g_inv = inverse_metric(n, g);
  const double norm = std::sqrt(bilinear(n, g_inv, J, J));
  if (!(norm >= threshold)) throw DegenerateJerk("normalised jerk below threshold; kappa undefined");
  KappaResult out;
  out.kappa = kappa_value(n, U, A, J, dJ, g, g_inv);
  const Vec S = normalised_snap(n, U, A, J, dJ, g, g_inv);
  Vec r{};
  for (int a = 0; a < n; ++a) r[a] = S[a] + 2.0 * out.kappa * J[a];
  out.residual = std::sqrt(bilinear(n, g_inv, r, r));
  return out;
}

Mat k_two_form(const MobiusStructure& structure, const Vec& U, const Vec& x) {
  const int n = structure.dim();
  const Tensor3 Y = structure.cotton_york(x);
  Mat K{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += Y[a][b][c] * U[c];
      K[a][b] = -s;
    }
  return K;
}

KinematicState transform_state(const KinematicState& s, const ConformalRescaling& rescaling,
                               const MetricField& metric, const std::string& gauge) {
  const int n = s.dim;
  const double omega = rescaling.value(s.x);
  const Vec ups = rescaling.upsilon(s.x);
  const Vec U_low = lower(n, metric.g(s.x), s.U);
  const double uy = dot(n, s.U, ups);
  KinematicState out = s;
  for (int a = 0; a < n; ++a) {
    out.U[a] = s.U[a] / omega;
    out.A[a] = s.A[a] - ups[a] + uy * U_low[a];
    out.J[a] = s.J[a] / omega;
  }
  if (s.has_kappa) out.kappa = (s.kappa + uy) / omega;
  out.gauge = gauge.empty() ? s.gauge + "*(" + to_string(rescaling.omega()) + ")^2" : gauge;
  return out;
}

ParametricCurve parse_curve(int dim, const std::array<std::string, 3>& text) {
  if (dim != 2 && dim != 3) throw DimensionError("curve dimension must be 2 or 3");
  ParametricCurve c;
  c.dim = dim;
  for (int a = 0; a < dim; ++a) {
    c.coordinates[a] = parse(text[a]);
    for (Var v : {Var::x, Var::y, Var::z}) {
      if (c.coordinates[a].uses(v)) throw ConfigError("curve coordinates may only depend on t");
    }
  }
  return c;
}

namespace {

Vec values(int n, const Vector<Jet>& v) {
  Vec r{};
  for (int a = 0; a < n; ++a) r[a] = v[a].value();
  return r;
}

}  // namespace

CurveSample sample_curve(const ParametricCurve& curve, const MobiusStructure& structure, double t,
                         double threshold) {
  const int n = curve.dim;
  if (n != structure.dim()) throw DimensionError("curve and structure dimensions differ");
  const Jet tj = Jet::variable(t, 6);
  const Coordinates<Jet> param{Jet(0.0), Jet(0.0), Jet(0.0), tj};
  Vector<Jet> X{};
  for (int a = 0; a < n; ++a) X[a] = evaluate<Jet>(curve.coordinates[a], param);

  const auto m = structure.metric().evaluate<Jet>(X, 1);
  const Matrix<Jet> g_inv = inverse_metric(n, m.g);
  const Rank3<Jet> G = christoffel_from(n, g_inv, m.dg);
  const Matrix<Jet> P = structure.rho_field().evaluate<Jet>(X);

  Vector<Jet> velocity{};
  for (int a = 0; a < n; ++a) velocity[a] = X[a].differentiated();
  const Jet speed = sqrt(bilinear(n, m.g, velocity, velocity));
  if (!(speed.value() > 1e-14)) throw DomainError("curve is singular (zero velocity)");
  Vector<Jet> U{};
  for (int a = 0; a < n; ++a) U[a] = velocity[a] / speed;

  // arc-length covariant derivative of a one-form along the curve
  auto D = [&](const Vector<Jet>& w) {
    Vector<Jet> r{};
    for (int a = 0; a < n; ++a) {
      Jet s = w[a].differentiated() / speed;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) s -= G[c][b][a] * U[b] * w[c];
      r[a] = s;
    }
    return r;
  };

  const Vector<Jet> A = D(contract(n, m.g, U));
  const Vector<Jet> dA = D(A);
  const Vector<Jet> J = normalised_jerk(n, U, A, dA, P, m.g, g_inv);
  const Vector<Jet> dJ = D(J);
  const Vector<Jet> S = normalised_snap(n, U, A, J, dJ, m.g, g_inv);

  CurveSample out;
  out.state.dim = n;
  out.state.x = values(n, X);
  out.state.U = values(n, U);
  out.state.A = values(n, A);
  out.state.J = values(n, J);
  out.state.gauge = structure.gauge();
  out.speed = speed.value();
  out.dA = values(n, dA);
  out.dJ = values(n, dJ);
  out.snap = values(n, S);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.P[a][b] = P[a][b].value();

  const double norm_J = std::sqrt(bilinear(n, g_inv, J, J).value());
  if (norm_J >= threshold) {
    const Jet k = kappa_value(n, U, A, J, dJ, m.g, g_inv);
    const Jet dk = k.differentiated() / speed;
    const Jet PUU = bilinear(n, P, U, U);
    out.state.kappa = k.value();
    out.state.has_kappa = true;
    out.d_kappa = dk.value();
    out.ordinal_residual = (dk + 0.5 * (bilinear(n, g_inv, A, A) + k * k) + PUU).value();
    double r2 = 0.0;
    Vec r{};
    for (int a = 0; a < n; ++a) r[a] = out.snap[a] + 2.0 * out.state.kappa * out.state.J[a];
    const Mat gi = inverse_metric(n, structure.metric().g(out.state.x));
    r2 = bilinear(n, gi, r, r);
    out.kappa_residual = std::sqrt(r2);
  }
  return out;
}

KinematicState jet_from_curve(const ParametricCurve& curve, const MobiusStructure& structure, double t,
                              bool require_kappa, double threshold) {
  CurveSample s = sample_curve(curve, structure, t, threshold);
  if (require_kappa && !s.state.has_kappa) {
    throw DegenerateJerk("normalised jerk below threshold; kappa undefined");
  }
  return s.state;
}

}  // namespace conflox
