#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conflox/kinematics.hpp"

using namespace conflox;

namespace {

ParametricCurve curve2(const char* x, const char* y) { return parse_curve(2, {x, y, ""}); }

// Logarithmic spiral exp((beta+i) t) with arc length s from the centre.
struct SpiralOracle {
  double beta;
  double s(double t) const { return std::sqrt(1 + beta * beta) * std::exp(beta * t) / beta; }
  double curvature(double t) const { return 1.0 / (beta * s(t)); }
  // k = c/s gives kappa = -k''/(2k') = 1/s
  double kappa(double t) const {
    const double c = 1.0 / beta, sv = s(t);
    const double k1 = -c / (sv * sv), k2 = 2 * c / (sv * sv * sv);
    return -k2 / (2 * k1);
  }
  double snap_norm(double t) const { return 2.0 / (beta * std::pow(s(t), 3)); }
  double ordinal_residual(double t) const { return (1 - beta * beta) / (2 * beta * beta * s(t) * s(t)); }
};

ParametricCurve spiral(double beta) {
  const std::string b = format_real(beta);
  return curve2(("exp(" + b + "*t)*cos(t)").c_str(), ("exp(" + b + "*t)*sin(t)").c_str());
}

double norm(int n, const Mat& g_inv, const Vec& w) { return std::sqrt(bilinear(n, g_inv, w, w)); }

Vec unit_random(std::mt19937& rng, const Mat& g) {
  std::normal_distribution<double> d;
  Vec v{d(rng), d(rng), 0};
  const double l = std::sqrt(inner(2, g, v, v));
  return Vec{v[0] / l, v[1] / l, 0};
}

// A random lowered covector orthogonal to U.
Vec ortho_random(std::mt19937& rng, const Vec& U, double scale) {
  std::normal_distribution<double> d;
  Vec w{d(rng), d(rng), 0};
  const double uw = dot(2, U, w), uu = dot(2, U, U);
  return Vec{scale * (w[0] - uw * U[0] / uu), scale * (w[1] - uw * U[1] / uu), 0};
}

}  // namespace

TEST_CASE("straight lines and circles in the flat plane") {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  const auto line = jet_from_curve(curve2("1+0.6*t", "2-0.8*t"), flat, 0.3);
  CHECK(line.U[0] == doctest::Approx(0.6));
  CHECK(std::abs(line.A[0]) + std::abs(line.A[1]) < 1e-14);
  CHECK(std::abs(line.J[0]) + std::abs(line.J[1]) < 1e-14);
  for (double r : {0.5, 1.0, 3.0}) {
    const std::string rs = format_real(r);
    const auto circle = curve2((rs + "*cos(t)").c_str(), (rs + "*sin(t)").c_str());
    for (double t : {0.0, 1.0, 2.5}) {
      const auto s = sample_curve(circle, flat, t);
      CHECK(norm(2, identity_matrix(2), s.state.A) == doctest::Approx(1 / r).epsilon(1e-12));
      CHECK(norm(2, identity_matrix(2), s.state.J) < 1e-12);
      CHECK_FALSE(s.state.has_kappa);
    }
  }
  CHECK_THROWS_AS(jet_from_curve(curve2("t^2", "0"), flat, 0.0), DomainError);
  CHECK_THROWS_AS(jet_from_curve(curve2("cos(t)", "sin(t)"), flat, 0.0, true), DegenerateJerk);
}

TEST_CASE("logarithmic spiral against the Frenet oracle") {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  for (double beta : {0.5, 1.0, 2.0}) {
    const SpiralOracle oracle{beta};
    const auto c = spiral(beta);
    for (double t : {-1.0, 0.0, 0.7}) {
      const auto s = sample_curve(c, flat, t);
      REQUIRE(s.state.has_kappa);
      CHECK(norm(2, identity_matrix(2), s.state.A) == doctest::Approx(oracle.curvature(t)).epsilon(1e-10));
      CHECK(s.state.kappa == doctest::Approx(oracle.kappa(t)).epsilon(1e-9));
      CHECK(s.state.kappa == doctest::Approx(1.0 / oracle.s(t)).epsilon(1e-9));
      CHECK(norm(2, identity_matrix(2), s.snap) == doctest::Approx(oracle.snap_norm(t)).epsilon(1e-8));
      CHECK(s.ordinal_residual == doctest::Approx(oracle.ordinal_residual(t)).epsilon(1e-8));
      CHECK(s.kappa_residual < 1e-9);
    }
  }
}

TEST_CASE("normalised jerk") {
  // geodesic of the round sphere with P = g/2
  const auto sphere = MobiusStructure::constant_curvature(MetricField::sphere(2, 1.0));
  const auto great = sample_curve(curve2("0.3*t", "-0.4*t"), sphere, 0.8);
  CHECK(norm(2, identity_matrix(2), great.state.A) < 1e-12);
  CHECK(norm(2, identity_matrix(2), great.state.J) < 1e-12);

  // flat, A = kN with k constant
  const double k = 1.7;
  const Vec U{0, 1, 0}, A{-k, 0, 0}, dA{0, -k * k, 0};
  const Vec J = normalised_jerk(2, U, A, dA, Mat{}, identity_matrix(2), identity_matrix(2));
  CHECK(J[0] == 0.0);
  CHECK(J[1] == 0.0);

  std::mt19937 rng(12);
  const auto metric = MetricField::sphere(2, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x{0.3, -0.2, 0};
    const Mat g = metric.g(x), gi = metric.g_inv(x);
    const Vec u = unit_random(rng, g);
    const Vec a = ortho_random(rng, u, 0.8);
    Vec da = ortho_random(rng, u, 1.3);
    // U.dA = -A.A keeps U.A = 0 along the curve
    const Vec u_low = lower(2, g, u);
    const double shift = -bilinear(2, gi, a, a);
    for (int i = 0; i < 2; ++i) da[i] += shift * u_low[i];
    const Mat P{{{0.4, 0.1, 0}, {0.1, -0.3, 0}, {0, 0, 0}}};
    const Vec j = normalised_jerk(2, u, a, da, P, g, gi);
    CHECK(std::abs(dot(2, u, j)) < 1e-12);
  }
}

TEST_CASE("kappa and snap") {
  const Mat g = identity_matrix(2);
  const Vec U{1, 0, 0}, A{0, 0.4, 0}, J{0, 0.9, 0};
  const double k0 = 0.7;
  const double AJ = dot(2, A, J);
  const Vec dJ{-AJ * U[0] - 2 * k0 * J[0], -AJ * U[1] - 2 * k0 * J[1], 0};
  const auto r = kappa(2, U, A, J, dJ, g);
  CHECK(r.kappa == doctest::Approx(k0).epsilon(1e-15));
  CHECK(r.residual < 1e-15);
  CHECK_THROWS_AS(kappa(2, U, A, Vec{}, dJ, g), DegenerateJerk);

  const Vec d1{0.2, -0.5, 0}, d2{1.1, 0.3, 0};
  const Vec s1 = normalised_snap(2, U, A, J, d1, g, g), s2 = normalised_snap(2, U, A, J, d2, g, g);
  const Vec s12 = normalised_snap(2, U, A, J, Vec{d1[0] + 2 * d2[0], d1[1] + 2 * d2[1], 0}, g, g);
  const Vec s0 = normalised_snap(2, U, A, J, Vec{}, g, g);
  for (int a = 0; a < 2; ++a) CHECK(s12[a] - s0[a] == doctest::Approx((s1[a] - s0[a]) + 2 * (s2[a] - s0[a])));
}

TEST_CASE("K two-form") {
  const auto flat = MobiusStructure::flat_model(MetricField::sphere(2, 1.0));
  const Vec x{0.2, 0.4, 0}, U{0.3, 0.1, 0};
  const Mat K0 = k_two_form(flat, U, x);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(std::abs(K0[a][b]) < 1e-9);

  const auto user = MobiusStructure::user(MetricField::flat(2),
                                          {{{parse("x*y"), parse("y^2/2")}, {Expr(0.0), parse("-x*y")}}});
  const ConformalRescaling omega(2, parse("2/(1+x^2+y^2)"));
  const auto hat = rescale_structure(user, omega);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec u = unit_random(rng, identity_matrix(2));
    const Mat K = k_two_form(user, u, x);
    CHECK(K[0][1] == -K[1][0]);
    CHECK(K[0][0] == 0.0);
    KinematicState s;
    s.x = x;
    s.U = u;
    const auto sh = transform_state(s, omega, user.metric());
    const Mat Kh = k_two_form(hat, sh.U, x);
    // K has weight -1
    const double w = omega.value(x);
    CHECK(std::abs(w * Kh[0][1] - K[0][1]) < 1e-7);
    CHECK(std::abs(K[0][1]) > 1e-3);
  }
}

TEST_CASE("transformation laws match direct evaluation in the new gauge") {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  const ConformalRescaling omega(2, parse("2/(1+x^2+y^2)"));
  const auto sphere = rescale_structure(flat, omega, "sphere");
  const auto user = MobiusStructure::user(MetricField::isothermal(2, parse("1+x^2/5")),
                                          {{{parse("x*y"), parse("sin(y)")}, {Expr(0.0), parse("x-y^2")}}});
  const ConformalRescaling other(2, parse("exp(x/2 - y/3)"));
  const auto user_hat = rescale_structure(user, other);
  const auto curve = curve2("0.3 + t + t^3/4", "0.1*t - t^2/3");
  for (const auto& [base, hat, res] : {std::tuple{&flat, &sphere, &omega}, std::tuple{&user, &user_hat, &other}}) {
    for (double t : {-0.4, 0.0, 0.5}) {
      const auto sg = sample_curve(curve, *base, t);
      const auto sh = sample_curve(curve, *hat, t);
      REQUIRE(sg.state.has_kappa);
      const auto mapped = transform_state(sg.state, *res, base->metric());
      for (int a = 0; a < 2; ++a) {
        CHECK(mapped.U[a] == doctest::Approx(sh.state.U[a]).epsilon(1e-10));
        CHECK(std::abs(mapped.A[a] - sh.state.A[a]) < 1e-9);
        CHECK(std::abs(mapped.J[a] - sh.state.J[a]) < 1e-9);
      }
      CHECK(std::abs(mapped.kappa - sh.state.kappa) < 1e-8);
      const auto cr = constraint_residuals(mapped, hat->metric());
      CHECK(cr.max() < 1e-9);

      // snap law and the weight -2 density
      const double w = res->value(sg.state.x);
      const double uy = dot(2, sg.state.U, res->upsilon(sg.state.x));
      for (int a = 0; a < 2; ++a) {
        CHECK(std::abs(sh.snap[a] - (sg.snap[a] - 2 * uy * sg.state.J[a]) / (w * w)) < 1e-8);
      }
      CHECK(std::abs(sh.ordinal_residual - sg.ordinal_residual / (w * w)) < 1e-7);
    }
  }
}

TEST_CASE("snap is unchanged when omega is 1 along the curve") {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  // the curve is y = x^3/3 + x^2/2
  const auto curve = curve2("t", "t^3/3 + t^2/2");
  const ConformalRescaling omega(2, parse("exp((y - x^3/3 - x^2/2)*(1 + x/2))"));
  const auto hat = rescale_structure(flat, omega);
  for (double t : {-0.5, 0.1, 0.6}) {
    const auto sg = sample_curve(curve, flat, t);
    const auto sh = sample_curve(curve, hat, t);
    CHECK(std::abs(dot(2, sg.state.U, omega.upsilon(sg.state.x))) < 1e-12);
    for (int a = 0; a < 2; ++a) CHECK(std::abs(sh.snap[a] - sg.snap[a]) < 1e-8);
  }
}

TEST_CASE("transform_state identities") {
  const auto metric = MetricField::isothermal(2, parse("1+x^2/4"));
  KinematicState s;
  s.x = {0.4, -0.3, 0};
  const double l = metric.conformal_factor() ? evaluate(*metric.conformal_factor(), 0.4, -0.3) : 1.0;
  s.U = {0.6 / l, 0.8 / l, 0};
  s.A = {-0.8, 0.6, 0};
  s.J = {0.24, -0.18, 0};
  s.kappa = 0.37;
  s.has_kappa = true;
  const auto same = transform_state(s, ConformalRescaling::identity(2), metric);
  for (int a = 0; a < 2; ++a) {
    CHECK(same.U[a] == s.U[a]);
    CHECK(same.A[a] == s.A[a]);
    CHECK(same.J[a] == s.J[a]);
  }
  CHECK(same.kappa == s.kappa);

  const ConformalRescaling omega(2, parse("exp(x*y) + y^2"));
  const auto there = transform_state(s, omega, metric);
  const auto hat_metric = metric.rescaled(omega.omega(), "hat");
  CHECK(constraint_residuals(there, hat_metric).max() < 1e-12);
  const auto back = transform_state(there, omega.inverse(), hat_metric);
  for (int a = 0; a < 2; ++a) {
    CHECK(std::abs(back.U[a] - s.U[a]) < 1e-10);
    CHECK(std::abs(back.A[a] - s.A[a]) < 1e-10);
    CHECK(std::abs(back.J[a] - s.J[a]) < 1e-10);
  }
  CHECK(std::abs(back.kappa - s.kappa) < 1e-10);

  // Upsilon orthogonal to U at a point where omega = 1
  const ConformalRescaling ortho(2, parse("exp(0.8*(x-0.4) - 0.6*(y+0.3))"));
  const auto k = transform_state(s, ortho, metric);
  CHECK(k.kappa == doctest::Approx(s.kappa).epsilon(1e-14));
}
