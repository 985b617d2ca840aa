#include "conflox/tractor.hpp"

#include <algorithm>

namespace conflox {

AdjointTractor& AdjointTractor::operator+=(const AdjointTractor& o) {
  for (int a = 0; a < kMaxDim; ++a) {
    sigma[a] += o.sigma[a];
    rho[a] += o.rho[a];
    for (int b = 0; b < kMaxDim; ++b) mu[a][b] += o.mu[a][b];
  }
  nu += o.nu;
  return *this;
}

AdjointTractor& AdjointTractor::operator*=(double s) {
  for (int a = 0; a < kMaxDim; ++a) {
    sigma[a] *= s;
    rho[a] *= s;
    for (int b = 0; b < kMaxDim; ++b) mu[a][b] *= s;
  }
  nu *= s;
  return *this;
}

double tractor_norm(const AdjointTractor& T, const Mat& g_inv) {
  const int n = T.dim;
  const Mat mu_up = raise_both(n, g_inv, T.mu);
  double mm = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mm += mu_up[a][b] * T.mu[a][b];
  return std::sqrt(bilinear(n, g_inv, T.sigma, T.sigma) + 0.5 * mm + T.nu * T.nu + bilinear(n, g_inv, T.rho, T.rho));
}

double max_component_difference(const AdjointTractor& a, const AdjointTractor& b) {
  double m = std::abs(a.nu - b.nu);
  for (int i = 0; i < a.dim; ++i) {
    m = std::max({m, std::abs(a.sigma[i] - b.sigma[i]), std::abs(a.rho[i] - b.rho[i])});
    for (int j = 0; j < a.dim; ++j) m = std::max(m, std::abs(a.mu[i][j] - b.mu[i][j]));
  }
  return m;
}

double null_invariant(const AdjointTractor& T, const Mat& g_inv) {
  const int n = T.dim;
  const Mat mu_up = raise_both(n, g_inv, T.mu);
  double mm = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mm += mu_up[a][b] * T.mu[a][b];
  return 4.0 * bilinear(n, g_inv, T.sigma, T.rho) - mm + 2.0 * T.nu * T.nu;
}

Mat wedge_invariant(const AdjointTractor& T) {
  Mat w{};
  for (int b = 0; b < T.dim; ++b)
    for (int c = 0; c < T.dim; ++c) w[b][c] = T.sigma[b] * T.rho[c] - T.sigma[c] * T.rho[b] - T.nu * T.mu[b][c];
  return w;
}

AdjointTractor transform(const AdjointTractor& T, const ConformalRescaling& rescaling, const MobiusStructure& from,
                         const Vec& x, const std::string& gauge) {
  if (T.gauge != from.gauge()) {
    throw GaugeMismatch("tractor is in gauge '" + T.gauge + "' but the rescaling starts from '" + from.gauge() + "'");
  }
  const int n = T.dim;
  const double omega = rescaling.value(x);
  const Vec ups = rescaling.upsilon(x);
  const Mat g_inv = from.metric().g_inv(x);
  const Vec ups_up = raise(n, g_inv, ups);
  const double ups_sigma = dot(n, ups_up, T.sigma);
  const double ups2 = dot(n, ups_up, ups);
  const double top = ipow(omega, 2 + T.weight), bottom = ipow(omega, T.weight);

  AdjointTractor out = T;
  out.gauge = gauge.empty() ? from.gauge() + "*(" + to_string(rescaling.omega()) + ")^2" : gauge;
  for (int b = 0; b < n; ++b) {
    out.sigma[b] = top * T.sigma[b];
    for (int c = 0; c < n; ++c) out.mu[b][c] = top * (T.mu[b][c] + ups[b] * T.sigma[c] - ups[c] * T.sigma[b]);
    double r = T.rho[b] - ups[b] * T.nu - ups_sigma * ups[b] + 0.5 * ups2 * T.sigma[b];
    for (int a = 0; a < n; ++a) r += ups_up[a] * T.mu[a][b];
    out.rho[b] = bottom * r;
  }
  out.nu = bottom * (T.nu + ups_sigma);
  return out;
}

AdjointTractor TractorField::at(const Vec& x) const {
  AdjointTractor T;
  T.dim = dim;
  T.weight = weight;
  T.gauge = gauge;
  const Coordinates<double> p = chart_point(x);
  for (int a = 0; a < dim; ++a) {
    T.sigma[a] = evaluate<double>(sigma[a], p);
    T.rho[a] = evaluate<double>(rho[a], p);
    for (int b = a + 1; b < dim; ++b) {
      T.mu[a][b] = evaluate<double>(mu[a][b], p);
      T.mu[b][a] = -T.mu[a][b];
    }
  }
  T.nu = evaluate<double>(nu, p);
  return T;
}

TractorField transform_field(const TractorField& T, const ConformalRescaling& rescaling, const MetricField& from,
                             const std::string& gauge) {
  const auto& w = from.conformal_factor();
  if (!w) throw ConfigError("tractor fields are transformed symbolically only from isothermal gauges");
  const int n = T.dim;
  const Expr& omega = rescaling.omega();
  Vector<Expr> ups{};
  for (int a = 0; a < n; ++a) ups[a] = differentiate(omega, static_cast<Var>(a)) / omega;
  const Expr inv_g = Expr(1.0) / pow(*w, 2.0);  // g^ab = inv_g delta^ab
  Matrix<Expr> mu{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mu[a][b] = a < b ? T.mu[a][b] : (a > b ? -T.mu[b][a] : Expr(0.0));
  Expr ups_sigma(0.0), ups2(0.0);
  for (int a = 0; a < n; ++a) {
    ups_sigma = ups_sigma + inv_g * ups[a] * T.sigma[a];
    ups2 = ups2 + inv_g * ups[a] * ups[a];
  }
  auto scaled = [&](int k, const Expr& e) { return k == 0 ? e : pow(omega, static_cast<double>(k)) * e; };
  TractorField out = T;
  out.gauge = gauge;
  for (int b = 0; b < n; ++b) {
    out.sigma[b] = scaled(2 + T.weight, T.sigma[b]);
    for (int c = b + 1; c < n; ++c) out.mu[b][c] = scaled(2 + T.weight, mu[b][c] + ups[b] * T.sigma[c] - ups[c] * T.sigma[b]);
    Expr r = T.rho[b] - ups[b] * T.nu - ups_sigma * ups[b] + Expr(0.5) * ups2 * T.sigma[b];
    for (int a = 0; a < n; ++a) r = r + inv_g * ups[a] * mu[a][b];
    out.rho[b] = scaled(T.weight, r);
  }
  out.nu = scaled(T.weight, T.nu + ups_sigma);
  return out;
}

std::array<AdjointTractor, 3> connection_apply(const TractorField& T, const MobiusStructure& structure, const Vec& x) {
  const int n = T.dim;
  if (n != structure.dim()) throw DimensionError("tractor and structure dimensions differ");
  const AdjointTractor v = T.at(x);
  const Mat g = structure.metric().g(x);
  const Mat g_inv = inverse_metric(n, g);
  const Tensor3 G = christoffel(structure.metric(), x);
  const Mat P = structure.rho(x);
  const Coordinates<double> p = chart_point(x);

  // partial derivatives of the components
  Mat d_sigma{}, d_rho{};
  Tensor3 d_mu{};
  Vec d_nu{};
  for (int a = 0; a < n; ++a) {
    const Var var = static_cast<Var>(a);
    d_nu[a] = evaluate<double>(differentiate(T.nu, var), p);
    for (int b = 0; b < n; ++b) {
      d_sigma[a][b] = evaluate<double>(differentiate(T.sigma[b], var), p);
      d_rho[a][b] = evaluate<double>(differentiate(T.rho[b], var), p);
      for (int c = b + 1; c < n; ++c) {
        d_mu[a][b][c] = evaluate<double>(differentiate(T.mu[b][c], var), p);
        d_mu[a][c][b] = -d_mu[a][b][c];
      }
    }
  }

  std::array<AdjointTractor, 3> out{};
  for (int a = 0; a < n; ++a) {
    AdjointTractor& r = out[a];
    r.dim = n;
    r.weight = T.weight;
    r.gauge = T.gauge;
    Vec P_up_sigma{};  // P_a^b sigma_b
    double Ps = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) Ps += P[a][b] * g_inv[b][c] * v.sigma[c];
    P_up_sigma[a] = Ps;
    for (int b = 0; b < n; ++b) {
      double ns = d_sigma[a][b], nr = d_rho[a][b];
      for (int c = 0; c < n; ++c) {
        ns -= G[c][a][b] * v.sigma[c];
        nr -= G[c][a][b] * v.rho[c];
      }
      r.sigma[b] = ns - v.mu[a][b] - v.nu * g[a][b];
      double Pmu = 0.0;  // P_a^c mu_bc
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) Pmu += P[a][d] * g_inv[d][c] * v.mu[b][c];
      r.rho[b] = nr - Pmu - P[a][b] * v.nu;
      for (int c = 0; c < n; ++c) {
        double nm = d_mu[a][b][c];
        for (int d = 0; d < n; ++d) nm -= G[d][a][b] * v.mu[d][c] + G[d][a][c] * v.mu[b][d];
        r.mu[b][c] = nm - g[a][b] * v.rho[c] + g[a][c] * v.rho[b] + P[a][b] * v.sigma[c] - P[a][c] * v.sigma[b];
      }
    }
    r.nu = d_nu[a] + v.rho[a] + P_up_sigma[a];
  }
  return out;
}

AdjointTractor curve_derivative(const AdjointTractor& T, const AdjointTractor& dT, const Mat& P, const Mat& g,
                                const Vec& U) {
  const int n = T.dim;
  const Mat g_inv = inverse_metric(n, g);
  const Vec U_low = lower(n, g, U);
  Vec PU{};  // U^a P_ab
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) PU[b] += U[a] * P[a][b];
  const Vec PU_up = raise(n, g_inv, PU);

  AdjointTractor out;
  out.dim = n;
  out.weight = T.weight - 1;
  out.gauge = T.gauge;
  for (int b = 0; b < n; ++b) {
    double s = dT.sigma[b] - T.nu * U_low[b];
    double r = dT.rho[b] - PU[b] * T.nu;
    for (int a = 0; a < n; ++a) {
      s -= U[a] * T.mu[a][b];
      r -= PU_up[a] * T.mu[b][a];
    }
    out.sigma[b] = s;
    out.rho[b] = r;
    for (int c = 0; c < n; ++c) {
      out.mu[b][c] = dT.mu[b][c] - U_low[b] * T.rho[c] + U_low[c] * T.rho[b] + PU[b] * T.sigma[c] - PU[c] * T.sigma[b];
    }
  }
  out.nu = dT.nu + dot(n, U, T.rho) + dot(n, PU_up, T.sigma);
  return out;
}

namespace {

AdjointTractor blank(const KinematicState& s, int weight) {
  AdjointTractor T;
  T.dim = s.dim;
  T.weight = weight;
  T.gauge = s.gauge;
  return T;
}

}  // namespace

AdjointTractor phi_U(const KinematicState& s, const Mat& g) {
  AdjointTractor T = blank(s, 1);
  T.rho = lower(s.dim, g, s.U);
  return T;
}

AdjointTractor phi_A(const KinematicState& s) {
  AdjointTractor T = blank(s, 0);
  T.nu = 1.0;
  T.rho = s.A;
  return T;
}

AdjointTractor phi_UA(const KinematicState& s, const Mat& g) {
  AdjointTractor T = blank(s, -1);
  const Vec U = lower(s.dim, g, s.U);
  T.sigma = U;
  for (int b = 0; b < s.dim; ++b)
    for (int c = 0; c < s.dim; ++c) T.mu[b][c] = U[b] * s.A[c] - U[c] * s.A[b];
  return T;
}

AdjointTractor lift_velocity(const KinematicState& s, const Mat& g) {
  if (!s.has_kappa) throw DegenerateJerk("kappa is undefined for this state; the velocity lift needs J != 0");
  const int n = s.dim;
  AdjointTractor T = phi_UA(s, g);
  const double AA = bilinear(n, inverse_metric(n, g), s.A, s.A);
  T.nu = s.kappa;
  for (int b = 0; b < n; ++b) T.rho[b] = s.J[b] + 0.5 * (AA - s.kappa * s.kappa) * T.sigma[b] + s.kappa * s.A[b];
  return T;
}

AdjointTractor lift_component_derivative(const KinematicState& s, const Vec& dA, const Vec& dJ, double d_kappa,
                                         const Mat& g) {
  const int n = s.dim;
  const Vec U = lower(n, g, s.U);
  const Mat g_inv = inverse_metric(n, g);
  const double AA = bilinear(n, g_inv, s.A, s.A);
  const double AdA = bilinear(n, g_inv, s.A, dA);
  AdjointTractor d = blank(s, -1);
  d.sigma = s.A;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) d.mu[b][c] = U[b] * dA[c] - U[c] * dA[b];
  d.nu = d_kappa;
  for (int b = 0; b < n; ++b) {
    d.rho[b] = dJ[b] + (AdA - s.kappa * d_kappa) * U[b] + 0.5 * (AA - s.kappa * s.kappa) * s.A[b] +
               d_kappa * s.A[b] + s.kappa * dA[b];
  }
  return d;
}

Vec acceleration_derivative(const KinematicState& s, const Mat& P, const Mat& g) {
  const int n = s.dim;
  const Vec U = lower(n, g, s.U);
  const Vec PU = contract(n, P, s.U);
  const double coeff = bilinear(n, inverse_metric(n, g), s.A, s.A) + dot(n, s.U, PU);
  Vec dA{};
  for (int a = 0; a < n; ++a) dA[a] = s.J[a] - coeff * U[a] + PU[a];
  return dA;
}

Vec jerk_derivative(const KinematicState& s, const Mat& g) {
  const int n = s.dim;
  const Vec U = lower(n, g, s.U);
  const double AJ = bilinear(n, inverse_metric(n, g), s.A, s.J);
  Vec dJ{};
  for (int a = 0; a < n; ++a) dJ[a] = -AJ * U[a] - 2.0 * s.kappa * s.J[a];
  return dJ;
}

Complex discriminant(const AdjointTractor& T, const MetricField& metric, const Vec& x) {
  if (T.dim != 2 || metric.dim() != 2) throw DimensionError("the discriminant is defined in dimension 2");
  const Mat eps = epsilon_upper(metric, x);
  const Mat W = wedge_invariant(T);
  double im = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) im -= eps[b][c] * W[b][c];
  return {2.0 * null_invariant(T, metric.g_inv(x)), 4.0 * im};
}

AdjointTractor killing_split(const KillingCoefficients& k, const Vec& x) {
  return killing_split_field(k).at(x);
}

TractorField killing_split_field(const KillingCoefficients& k) {
  const Expr x = Expr::variable(Var::x), y = Expr::variable(Var::y);
  const Expr u(k.u), v(k.v), l(k.lambda), F(k.F), P(k.P), Q(k.Q), half(0.5);
  const Expr h = half * (x * x - y * y);
  TractorField T;
  T.dim = 2;
  T.gauge = "flat";
  T.sigma[0] = u + l * x - F * y + P * h - Q * x * y;
  T.sigma[1] = v + l * y + F * x + P * x * y + Q * h;
  T.mu[0][1] = F + P * y + Q * x;
  T.nu = l + P * x - Q * y;
  T.rho[0] = -P;
  T.rho[1] = Q;
  return T;
}

double bundle_b_residual(const KinematicState& s, const MobiusStructure& structure) {
  const int n = s.dim;
  const Mat g = structure.metric().g(s.x);
  const Mat g_inv = inverse_metric(n, g);
  const Mat P = structure.rho(s.x);
  const Vec U = lower(n, g, s.U);
  const Vec dA = acceleration_derivative(s, P, g);

  const AdjointTractor p1 = phi_U(s, g), p2 = phi_A(s), p3 = phi_UA(s, g);
  AdjointTractor d1 = blank(s, 0), d2 = blank(s, 0), d3 = blank(s, 0);
  d1.rho = s.A;
  d2.rho = dA;
  d3.sigma = s.A;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) d3.mu[b][c] = U[b] * dA[c] - U[c] * dA[b];

  auto outside = [&](const AdjointTractor& X) {
    const double c = bilinear(n, g_inv, X.sigma, U);
    const double b = X.nu;
    Vec r = X.rho;
    for (int i = 0; i < n; ++i) r[i] -= b * s.A[i];
    const double a = bilinear(n, g_inv, r, U);
    AdjointTractor R = X;
    R += (-c) * p3;
    R += (-b) * p2;
    R += (-a) * p1;
    return tractor_norm(R, g_inv);
  };
  return std::max({outside(curve_derivative(p1, d1, P, g, s.U)), outside(curve_derivative(p2, d2, P, g, s.U)),
                   outside(curve_derivative(p3, d3, P, g, s.U))});
}

}  // namespace conflox
