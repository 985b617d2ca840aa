// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conflox/curve_engine.hpp"
#include "oracles.hpp"
#include "random_states.hpp"
#include "support.hpp"

using namespace conflox;
using conflox::testing::LogSpiral;

namespace {

constexpr double kPi = std::numbers::pi;

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records value <= tol under a label.
  void at_most(const std::string& label, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << label << " " << value << (ok ? " <= " : " > ") << tol;
  }
  void require(const std::string& label, bool ok) {
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << label << (ok ? " ok" : " FAILED");
  }
};

const MobiusStructure& flat() {
  static const auto s = MobiusStructure::flat_model(MetricField::flat(2));
  return s;
}

const ConformalRescaling& to_sphere() {
  static const ConformalRescaling r(2, parse("2/(1+x^2+y^2)"));
  return r;
}

const MobiusStructure& sphere() {
  static const auto s = rescale_structure(flat(), to_sphere(), "sphere");
  return s;
}

KinematicState planar(Vec x, double angle, double a) {
  KinematicState s;
  s.x = x;
  s.U = {std::cos(angle), std::sin(angle), 0};
  s.A = {-a * std::sin(angle), a * std::cos(angle), 0};
  s.gauge = "flat";
  return s;
}

IntegratorConfig fixed(double length, double step = 1e-3) {
  IntegratorConfig c;
  c.length = length;
  c.step = step;
  return c;
}

// Written out from the rescaling rules, independent of transform_state.
KinematicState to_sphere_gauge(const KinematicState& s) {
  const double r2 = s.x[0] * s.x[0] + s.x[1] * s.x[1];
  const double w = 2 / (1 + r2);
  const Vec ups{-2 * s.x[0] / (1 + r2), -2 * s.x[1] / (1 + r2), 0};  // d log w
  const double uy = s.U[0] * ups[0] + s.U[1] * ups[1];
  KinematicState out = s;
  for (int a = 0; a < 2; ++a) {
    out.U[a] = s.U[a] / w;
    out.A[a] = s.A[a] - ups[a] + uy * s.U[a];  // flat: U_a = U^a
    out.J[a] = s.J[a] / w;
  }
  out.kappa = (s.kappa + uy) / w;
  out.gauge = sphere().gauge();
  return out;
}

// Independent null form of the velocity lift in a 2D metric.
double lift_null(const KinematicState& s, const Mat& g) {
  const Mat gi = inverse_metric(2, g);
  const Vec U = lower(2, g, s.U);
  const double AA = bilinear(2, gi, s.A, s.A);
  Vec rho{};
  for (int a = 0; a < 2; ++a) rho[a] = s.J[a] + 0.5 * (AA - s.kappa * s.kappa) * U[a] + s.kappa * s.A[a];
  const double mu01 = U[0] * s.A[1] - U[1] * s.A[0];
  const double det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
  const double mu_mu = 2 * mu01 * mu01 / det;  // mu^bc mu_bc in 2D
  return 4 * (s.U[0] * rho[0] + s.U[1] * rho[1]) - mu_mu + 2 * s.kappa * s.kappa;
}

// Integrated loxodromes collected for the null and line subbundle checks.
struct Kept {
  std::string label;
  CurveTrace trace;
  const MobiusStructure* structure;
};
std::vector<Kept> g_kept;

void keep(const std::string& label, const CurveTrace& t, const MobiusStructure& s) { g_kept.push_back({label, t, &s}); }

// --- 1 ----------------------------------------------------------------------
void criterion_circles(Outcome& o) {
  for (double a : {0.5, 1.0, 2.0}) {
    const auto init = planar({0.3, -0.2, 0}, 0.9, a);
    const auto trace = integrate(CurveModel::circle, init, flat(), fixed(2 * kPi / a));
    o.require("circle a=" + format_real(a) + " completed", trace.completed());
    const Vec c{init.x[0] + init.A[0] / (a * a), init.x[1] + init.A[1] / (a * a), 0};
    double radius = 0.0;
    for (const auto& s : trace.samples) radius = std::max(radius, std::abs(std::hypot(s.state.x[0] - c[0], s.state.x[1] - c[1]) - 1 / a));
    const auto& e = trace.samples.back().state.x;
    o.at_most("closure a=" + format_real(a), std::hypot(e[0] - init.x[0], e[1] - init.x[1]), 1e-7);
    o.at_most("radius a=" + format_real(a), radius, 1e-7);
  }
  const auto line = integrate(CurveModel::circle, planar({0.3, -0.2, 0}, 0.9, 0.0), flat(), fixed(10.0));
  const auto& e = line.samples.back().state.x;
  o.at_most("line end", std::hypot(e[0] - 0.3 - 10 * std::cos(0.9), e[1] + 0.2 - 10 * std::sin(0.9)), 1e-10);
}

// --- 2 ----------------------------------------------------------------------
void criterion_loxodrome(Outcome& o) {
  const LogSpiral sp{1.0};
  const double t0 = -kPi, s0 = sp.arc_length(t0);
  IntegratorConfig cfg = fixed(sp.arc_length(t0 + 2 * kPi) - s0);
  cfg.scheme = Scheme::rk45;
  cfg.tol = 1e-12;
  const auto trace = integrate(CurveModel::loxodrome, sp.state(t0), flat(), cfg);
  o.require("one turn completed", trace.completed());
  double worst = 0.0;
  for (const auto& s : trace.samples) {
    const auto z = sp.point(sp.theta_at(s0 + s.s));
    worst = std::max(worst, std::hypot(s.state.x[0] - z.real(), s.state.x[1] - z.imag()));
  }
  o.at_most("spiral match", worst, 1e-6);
  keep("one turn", trace, flat());

  const double beta = 2.0;
  const LogSpiral sp2{beta};
  const auto curve = parse_curve(2, {"exp(2*t)*cos(t)", "exp(2*t)*sin(t)", "0"});
  double residual = 0.0;
  for (double t = -1.0; t <= 1.0; t += 0.25) {
    const double s = sp2.arc_length(t);
    const auto smp = sample_curve(curve, flat(), t);
    residual = std::max(residual, std::abs(smp.ordinal_residual - (1 - beta * beta) / (2 * beta * beta * s * s)));
  }
  o.at_most("beta=2 residual", residual, 1e-6);
}

// --- 3 ----------------------------------------------------------------------
void criterion_invariance(Outcome& o) {
  // conformal circle: the sphere-gauge trace lies on the flat circle
  const double a = 0.8;
  const auto circle = planar({0.3, 0.2, 0}, 0.4, a);
  IntegratorConfig cc = fixed(2 * kPi / a, 5e-4);
  const auto rc = invariance_experiment(CurveModel::circle, flat(), to_sphere(), circle, cc);
  o.at_most("circle trace distance", rc.trace_distance, 1e-6);
  const Vec c{circle.x[0] + circle.A[0] / (a * a), circle.x[1] + circle.A[1] / (a * a), 0};
  double off = 0.0;
  for (const auto& s : rc.rescaled.samples) off = std::max(off, std::abs(std::hypot(s.state.x[0] - c[0], s.state.x[1] - c[1]) - 1 / a));
  o.at_most("sphere circle vs analytic", off, 1e-6);

  // ordinal loxodrome over 20 flat arc-length units
  const LogSpiral sp{1.0};
  const auto init = sp.state(-0.5);
  const auto r = invariance_experiment(CurveModel::loxodrome, flat(), to_sphere(), init, fixed(20.0, 2.5e-4));
  o.at_most("loxodrome trace distance", r.trace_distance, 1e-6);
  // sphere-gauge samples against the analytic spiral, started from hand-mapped data
  IntegratorConfig hc = fixed(r.rescaled.samples.back().s, 2.5e-4 * r.rescaled.samples.back().s / 20.0);
  const auto hat = integrate(CurveModel::loxodrome, to_sphere_gauge(init), sphere(), hc);
  o.require("hand-mapped run completed", hat.completed());
  double dev = 0.0;
  for (const auto& s : hat.samples) {
    const double theta_r = std::log(std::hypot(s.state.x[0], s.state.x[1]));
    const auto z = sp.point(theta_r);
    dev = std::max(dev, std::hypot(s.state.x[0] - z.real(), s.state.x[1] - z.imag()));
  }
  o.at_most("sphere loxodrome vs analytic", dev, 1e-6);
  keep("flat gauge", r.base, flat());
  keep("sphere gauge", r.rescaled, sphere());
  keep("hand-mapped sphere gauge", hat, sphere());
}

// --- 4 ----------------------------------------------------------------------
void criterion_tractor(Outcome& o) {
  std::mt19937 rng(20261016);
  std::normal_distribution<double> d;
  const auto& base = sphere();
  double cocycle = 0, direct = 0, bundle = 0, first = 0, second = 0, lemma = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double c1 = d(rng) / 3, c2 = d(rng) / 3, c3 = 2 + std::abs(d(rng));
    const ConformalRescaling o1(2, parse("exp(" + format_real(c1) + "*x + " + format_real(c2) + "*y^2)"));
    const ConformalRescaling o2(2, parse("1/(" + format_real(c3) + " + x*y)"));
    const auto mid = rescale_structure(base, o1);
    const Vec x{std::uniform_real_distribution<double>(-0.6, 0.6)(rng), std::uniform_real_distribution<double>(-0.6, 0.6)(rng), 0};
    AdjointTractor T;
    T.sigma = {d(rng), d(rng), 0};
    T.mu[0][1] = d(rng);
    T.mu[1][0] = -T.mu[0][1];
    T.nu = d(rng);
    T.rho = {d(rng), d(rng), 0};
    T.weight = trial % 3 - 1;
    T.gauge = base.gauge();
    cocycle = std::max(cocycle, max_component_difference(transform(transform(T, o1, base, x), o2, mid, x),
                                                         transform(T, o1.then(o2), base, x)));

    const auto s = testing::random_state(rng, base.metric(), x);
    const Mat g = base.metric().g(x), gi = inverse_metric(2, g), gh = mid.metric().g(x);
    const auto sh = transform_state(s, o1, base.metric(), mid.gauge());
    const double w = o1.value(x);
    const Vec ups = o1.upsilon(x);
    const double uy = dot(2, s.U, ups), ya = bilinear(2, gi, ups, s.A), yy = bilinear(2, gi, ups, ups);
    direct = std::max(direct, max_component_difference(transform(phi_U(s, g), o1, base, x), phi_U(sh, gh)));
    direct = std::max(direct, max_component_difference(transform(phi_A(s), o1, base, x), phi_A(sh) - (uy / w) * phi_U(sh, gh)));
    bundle = std::max(bundle, max_component_difference(transform(phi_UA(s, g), o1, base, x),
                                                       phi_UA(sh, gh) + (uy / w) * phi_A(sh) -
                                                           ((ya + uy * uy - 0.5 * yy) / (w * w)) * phi_U(sh, gh)));

    const Mat P = testing::random_symmetric(rng, 2);
    const Vec U = lower(2, g, s.U);
    const double PUU = bilinear(2, P, s.U, s.U), AA = bilinear(2, gi, s.A, s.A);
    Vec dA{};
    const Vec PU = contract(2, P, s.U);
    for (int b = 0; b < 2; ++b) dA[b] = s.J[b] - (AA + PUU) * U[b] + PU[b];
    AdjointTractor dphi;
    dphi.rho = s.A;
    first = std::max(first, max_component_difference(curve_derivative(phi_U(s, g), dphi, P, g, s.U), phi_A(s)));
    dphi.rho = dA;
    AdjointTractor jpart;
    jpart.rho = s.J;
    second = std::max(second, max_component_difference(curve_derivative(phi_A(s), dphi, P, g, s.U),
                                                       jpart - phi_UA(s, g) - (AA + PUU) * phi_U(s, g)));
    // lift with an arbitrary d kappa; dJ from the kappa relation
    const double dk = d(rng), AJ = bilinear(2, gi, s.A, s.J);
    Vec dJ{};
    for (int b = 0; b < 2; ++b) dJ[b] = -AJ * U[b] - 2 * s.kappa * s.J[b];
    const auto L = lift_velocity(s, g);
    const auto dL = curve_derivative(L, lift_component_derivative(s, dA, dJ, dk, g), P, g, s.U);
    AdjointTractor tail = phi_A(s);
    for (int b = 0; b < 2; ++b) tail.rho[b] -= s.kappa * U[b];
    lemma = std::max(lemma, max_component_difference(dL, (dk + 0.5 * (AA + s.kappa * s.kappa) + PUU) * tail - s.kappa * L));
  }
  o.at_most("cocycle", cocycle, 1e-9);
  o.at_most("direct check", direct, 1e-9);
  o.at_most("bundle B transform", bundle, 1e-9);
  o.at_most("d Phi_U = Phi_A", first, 1e-9);
  o.at_most("d Phi_A", second, 1e-9);
  o.at_most("lift derivative lemma", lemma, 1e-9);
}

// --- 5 ----------------------------------------------------------------------
void criterion_discriminant(Outcome& o) {
  std::mt19937 rng(5);
  std::normal_distribution<double> d;
  std::uniform_real_distribution<double> box(-2, 2);
  const auto metric = MetricField::flat(2);
  double parallel = 0, disc = 0, gen = 0, bearing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const KillingCoefficients k{d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
    const Vec x{box(rng), box(rng), 0};
    for (const auto& row : connection_apply(killing_split_field(k), flat(), x)) parallel = std::max(parallel, tractor_norm(row, identity_matrix(2)));
    // X = Re((a z^2 + b z + c) d/dz): a = P + iQ, b = 2(lambda + iF), c = 2(u + iv)
    const Complex a(k.P, k.Q), b(2 * k.lambda, 2 * k.F), c(2 * k.u, 2 * k.v);
    const Complex expect = b * b - 4.0 * a * c;
    disc = std::max(disc, std::abs(discriminant(killing_split(k, x), metric, x) - expect) / (1 + std::abs(expect)));

    const Complex p(d(rng), d(rng)), q(d(rng), d(rng));
    const double beta = (trial % 2 ? -1 : 1) * std::exp(std::uniform_real_distribution<double>(-1.5, 1.5)(rng));
    const auto g = generator(LoxodromeSpec::two_point(p, q, beta));
    const Complex w(beta, 1.0);
    gen = std::max(gen, std::abs(discriminant(killing_split(g, x), metric, x) - w * w) / std::norm(w));
    const auto cls = classify(g);
    bearing = std::max(bearing, cls.beta ? std::abs(*cls.beta - beta) / std::abs(beta) : INFINITY);
  }
  o.at_most("parallel", parallel, 1e-12);
  o.at_most("b^2-4ac", disc, 1e-10);
  o.at_most("(beta+i)^2", gen, 1e-10);
  o.at_most("beta recovery", bearing, 1e-9);
}

// --- 6 ----------------------------------------------------------------------
void criterion_null(Outcome& o) {
  for (const auto& k : g_kept) {
    double null = 0, der = 0, kappa = 0;
    for (const auto& s : k.trace.samples) {
      null = std::max(null, std::abs(lift_null(s.state, k.structure->metric().g(s.state.x))));
      der = std::max(der, lift_check(s.state, *k.structure).derivative);
      kappa = std::max(kappa, std::abs(s.state.kappa));
    }
    const std::string tag = k.label + " (max |kappa| " + short_real(kappa) + ")";
    o.at_most(tag + " null", null, 1e-8);
    o.at_most(tag + " d(lift) + kappa lift", der, 1e-8);
  }
  o.require("loxodrome traces present", g_kept.size() == 5);
}

// --- 7 ----------------------------------------------------------------------
void criterion_bundle_b(Outcome& o) {
  std::mt19937 rng(7);
  const auto metric = MetricField::isothermal(2, parse("1 + x^2/3 + y/5"));
  const auto s = MobiusStructure::user(metric, {{{parse("x*y"), parse("sin(x)")}, {parse("sin(x)"), parse("y^2")}}});
  std::uniform_real_distribution<double> box(-0.7, 0.7), logj(std::log(1e-8), std::log(10.0));
  double err = 0, zero = 0, small = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x{box(rng), box(rng), 0};
    const double j = std::exp(logj(rng));
    const auto st = testing::random_state(rng, metric, x, j);
    const double r = bundle_b_residual(st, s);
    err = std::max(err, std::abs(r - j));
    if (j < 1e-6) small = std::max(small, std::abs(r / j - 1));
    auto z = st;
    z.J = {};
    zero = std::max(zero, bundle_b_residual(z, s));
  }
  o.at_most("|res - |J||", err, 1e-9);
  o.at_most("J = 0", zero, 1e-14);
  o.at_most("relative at |J| < 1e-6", small, 1e-6);
}

// --- 8 ----------------------------------------------------------------------
void criterion_dk4(Outcome& o) {
  const auto init = planar({0.5, 0.5, 0}, 1.0, 2.0);
  const auto trace = integrate(CurveModel::dk4, init, flat(), fixed(kPi));
  double jmax = 0;
  for (const auto& s : trace.samples) jmax = std::max(jmax, std::hypot(s.state.J[0], s.state.J[1]));
  const auto& e = trace.samples.back().state.x;
  o.at_most("circle J", jmax, 0.0);
  o.at_most("circle closure", std::hypot(e[0] - init.x[0], e[1] - init.x[1]), 1e-7);

  const auto cylinder = MobiusStructure::flat_model(MetricField::cylinder_gauge());
  double cyl = 0, flat_rel = 0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const std::string b = format_real(beta);
    const auto curve = parse_curve(2, {"exp(" + b + "*t)*cos(t)", "exp(" + b + "*t)*sin(t)", "0"});
    for (double t = -1.0; t <= 1.0; t += 0.5) {
      const auto c = sample_curve(curve, cylinder, t);
      const Vec KU = contract(2, k_two_form(cylinder, c.state.U, c.state.x), c.state.U);
      cyl = std::max(cyl, std::hypot(c.snap[0] - KU[0], c.snap[1] - KU[1]));
      const auto f = sample_curve(curve, flat(), t);
      const double s = LogSpiral{beta}.arc_length(t), k2 = 2 / (beta * s * s * s);
      flat_rel = std::max(flat_rel, std::abs(std::hypot(f.snap[0], f.snap[1]) - k2) / k2);
    }
  }
  o.at_most("cylinder gauge |S - KU|", cyl, 1e-8);
  o.at_most("flat gauge |S| vs k''", flat_rel, 1e-6);
}

// --- 9 ----------------------------------------------------------------------
void criterion_spiral(Outcome& o) {
  const double beta = 1.0, a = 2.1 * kPi, b = -2.1 * kPi;
  const auto init = to_sphere_gauge(LogSpiral{beta}.state(a, true));
  IntegratorConfig cfg;
  cfg.scheme = Scheme::rk45;
  cfg.tol = 1e-12;
  cfg.renormalise = true;
  cfg.length = 2 * std::sqrt(1 + beta * beta) / beta * (std::atan(std::exp(beta * a)) - std::atan(std::exp(beta * b)));
  const auto trace = integrate(CurveModel::loxodrome, init, sphere(), cfg);
  o.require("completed", trace.completed());
  double winding = 0.0;
  bool decreasing = true;
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const auto& p = trace.samples[i - 1].state.x;
    const auto& q = trace.samples[i].state.x;
    winding += std::remainder(std::atan2(q[1], q[0]) - std::atan2(p[1], p[0]), 2 * kPi);
    if (trace.samples[i].s >= 0.75 * cfg.length) decreasing = decreasing && std::hypot(q[0], q[1]) < std::hypot(p[0], p[1]);
  }
  const auto& e = trace.samples.back().state.x;
  o.require("winding " + short_real(std::abs(winding) / kPi) + " pi > 4 pi", std::abs(winding) > 4 * kPi);
  o.require("decreasing distance on final quarter", decreasing);
  o.at_most("end radius vs analytic", std::abs(std::hypot(e[0], e[1]) - std::exp(beta * b)), 1e-6);
  keep("spiral proxy", trace, sphere());
}

// --- 10 ---------------------------------------------------------------------
void criterion_rho(Outcome& o) {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> box(-2, 2);
  const auto sphere_metric = MetricField::sphere(2, 1.0);
  double half = 0;
  for (int i = 0; i < 100; ++i) {
    const Vec x{box(rng), box(rng), 0};
    const Mat P = sphere().rho(x), g = sphere_metric.g(x);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) half = std::max(half, std::abs(P[a][b] - 0.5 * g[a][b]));
  }
  o.at_most("sphere rho = g/2", half, 1e-9);

  const auto base = MetricField::general(3, {{{parse("1+x^2/3"), parse("y*z/7"), Expr(0.0)},
                                              {Expr(0.0), parse("2+sin(z)/2"), parse("x/9")},
                                              {Expr(0.0), Expr(0.0), parse("exp(y/4)")}}});
  const ConformalRescaling omega(3, parse("exp(x*y/5 + z/3)"));
  const auto hat = base.rescaled(omega.omega(), "hat");
  double sch = 0;
  std::uniform_real_distribution<double> small(-0.6, 0.6);
  for (int i = 0; i < 10; ++i) {
    const Vec x{small(rng), small(rng), small(rng)};
    const Mat t = rho_transform(schouten(base, x), omega, base, x), h = schouten(hat, x);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) sch = std::max(sch, std::abs(t[a][b] - h[a][b]));
  }
  o.at_most("3D schouten transport", sch, 1e-7);

  const auto user = MobiusStructure::user(MetricField::flat(2), {{{parse("x*y + sin(y)"), parse("x^2/2")},
                                                                  {parse("x^2/2"), parse("-x*y - sin(y)")}}});
  const ConformalRescaling r(2, parse("exp(x/2 - y*x/3)"));
  const auto uh = rescale_structure(user, r);
  double cy = 0;
  for (int i = 0; i < 20; ++i) {
    const Vec x{small(rng), small(rng), 0};
    const Tensor3 Y = user.cotton_york(x), Yh = uh.cotton_york(x);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) cy = std::max(cy, std::abs(Y[a][b][c] - Yh[a][b][c]));
  }
  o.at_most("2D Cotton-York invariance", cy, 1e-8);
}

// --- 11 ---------------------------------------------------------------------
void criterion_expr(Outcome& o) {
  testing::ExprGenerator gen(11u);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Expr e = gen.make(3);
    const Coordinates<double> p{coord(gen.rng()), coord(gen.rng()), coord(gen.rng()), 0.0};
    for (int axis = 0; axis < 3; ++axis) {
      const double symbolic = evaluate<double>(differentiate(e, static_cast<Var>(axis)), p);
      const double numeric = testing::central_difference(e, p, axis);
      worst = std::max(worst, std::abs(symbolic - numeric) / (1.0 + std::abs(symbolic)));
    }
  }
  o.at_most("derivative vs central difference", worst, 1e-6);
  bool offsets = true;
  for (const auto& [text, at] : std::vector<std::pair<std::string, std::size_t>>{{"exp(", 4}, {"1 + foo", 4}, {"x y", 2}}) {
    try {
      parse(text);
      offsets = false;
    } catch (const ParseError& e) {
      offsets = offsets && e.offset() == at;
    }
  }
  o.require("parse error offsets", offsets);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"flat conformal circles", criterion_circles},
      {"ordinal loxodrome exactness", criterion_loxodrome},
      {"conformal invariance flat vs sphere gauge", criterion_invariance},
      {"tractor identity suite", criterion_tractor},
      {"discriminant suite", criterion_discriminant},
      {"null condition and line subbundle", criterion_null},
      {"bundle B residual", criterion_bundle_b},
      {"fourth order equation", criterion_dk4},
      {"spiral proxy", criterion_spiral},
      {"Rho machinery", criterion_rho},
      {"expression layer", criterion_expr},
  };
  // criterion 6 reads the loxodrome traces produced by 2, 3 and 9
  const std::vector<int> order{0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 5};
  std::vector<std::string> lines(criteria.size());
  int failed = 0;
  for (int i : order) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << (o.detail.tellp() > 0 ? "; " : "") << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[160];
    std::snprintf(head, sizeof head, "%s %2d %s (%.1fs): ", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    lines[i] = head + o.detail.str();
    failed += o.pass ? 0 : 1;
  }
  for (const auto& l : lines) std::puts(l.c_str());
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
