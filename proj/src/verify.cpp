#include "conflox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <random>

namespace conflox {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

json VerifyReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"anchor", c.anchor},
                    {"tolerance", c.tolerance},
                    {"observed", c.observed},
                    {"samples", c.samples},
                    {"passed", c.passed}});
  }
  return {{"suite", suite}, {"seed", seed}, {"passed", passed()}, {"checks", list}};
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"transforms", "tractor", "flat-model", "invariance"};
  return names;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTrials = 200;

using Rng = std::mt19937_64;

class Suite {
 public:
  Suite(std::string name, std::uint64_t seed) : name_(std::move(name)), rng(seed) {}

  // Records max |residual| over the samples seen under one check name.
  void check(const std::string& name, const std::string& anchor, double tolerance, double observed,
             std::size_t samples = 1) {
    VerifyCheck c{name_, name, anchor, tolerance, observed, samples, std::isfinite(observed) && observed <= tolerance};
    checks.push_back(c);
  }
  // A lower bound instead of an upper one.
  void check_above(const std::string& name, const std::string& anchor, double bound, double observed) {
    checks.push_back({name_, name, anchor, bound, observed, 1, std::isfinite(observed) && observed > bound});
  }
  void fail(const std::string& name, const std::string& anchor, const std::string& why) {
    checks.push_back({name_, name, anchor + " [" + why + "]", 0.0, std::numeric_limits<double>::infinity(), 0, false});
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double normal() { return std::normal_distribution<double>()(rng); }
  Vec point(int dim, double r) {
    Vec x{};
    for (int a = 0; a < dim; ++a) x[a] = uniform(-r, r);
    return x;
  }

  std::vector<VerifyCheck> checks;

 private:
  std::string name_;

 public:
  Rng rng;
};

double max_abs(const Vec& a, const Vec& b, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const Mat& a, const Mat& b, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, max_abs(a[i], b[i], n));
  return m;
}

double state_difference(const KinematicState& a, const KinematicState& b) {
  const int n = a.dim;
  double m = std::max({max_abs(a.x, b.x, n), max_abs(a.U, b.U, n), max_abs(a.A, b.A, n), max_abs(a.J, b.J, n)});
  if (a.has_kappa && b.has_kappa) m = std::max(m, std::abs(a.kappa - b.kappa));
  return m;
}

// A constrained 2D state at x with |J| = j_scale.
KinematicState random_state(Suite& s, const MetricField& metric, const Vec& x, double j_scale = 1.0) {
  const Mat g = metric.g(x);
  KinematicState st;
  st.dim = 2;
  st.x = x;
  st.gauge = metric.label();
  Vec u{s.normal(), s.normal(), 0};
  const double len = std::sqrt(inner(2, g, u, u));
  st.U = {u[0] / len, u[1] / len, 0};
  const Vec normal{-st.U[1], st.U[0], 0};
  const double nn = std::sqrt(bilinear(2, inverse_metric(2, g), normal, normal));
  const double a = s.normal(), sign = s.normal() < 0 ? -1.0 : 1.0;
  st.A = {a * normal[0], a * normal[1], 0};
  st.J = {sign * j_scale * normal[0] / nn, sign * j_scale * normal[1] / nn, 0};
  st.kappa = s.normal();
  st.has_kappa = true;
  return st;
}

// Positive conformal factors with random coefficients.
ConformalRescaling random_rescaling(Suite& s, int dim) {
  const int pick = static_cast<int>(s.uniform(0, 3));
  const std::string a = format_real(std::round(s.uniform(-1, 1) * 100) / 100);
  const std::string b = format_real(std::round(s.uniform(-1, 1) * 100) / 100);
  const std::string c = format_real(std::round(s.uniform(1.5, 3) * 100) / 100);
  std::string text;
  switch (pick) {
    case 0: text = "exp(" + a + "*x + " + b + "*y)"; break;
    case 1: text = "1/(" + c + " + " + a + "*x + y^2)"; break;
    default: text = "exp(" + a + "*x*y) + " + b + "^2"; break;
  }
  if (dim == 3) text = "(" + text + ")*exp(" + b + "*z/3)";
  return ConformalRescaling(dim, parse(text));
}

// ----------------------------------------------------------------------------
void suite_transforms(Suite& s) {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  const auto sphere_metric = MetricField::sphere(2, 1.0);
  {
    double cocycle = 0.0, inverse = 0.0;
    for (int t = 0; t < kTrials; ++t) {
      const auto r1 = random_rescaling(s, 2), r2 = random_rescaling(s, 2);
      const Vec x = s.point(2, 0.5);
      const auto st = random_state(s, sphere_metric, x);
      const auto mid_metric = sphere_metric.rescaled(r1.omega(), "mid");
      const auto two = transform_state(transform_state(st, r1, sphere_metric, "mid"), r2, mid_metric, "end");
      const auto one = transform_state(st, r1.then(r2), sphere_metric, "end");
      cocycle = std::max(cocycle, state_difference(two, one));
      const auto back = transform_state(transform_state(st, r1, sphere_metric, "mid"), r1.inverse(), mid_metric);
      inverse = std::max(inverse, state_difference(back, st));
    }
    s.check("state cocycle", "transform_state composes along Omega1 then Omega2", 1e-10, cocycle, kTrials);
    s.check("state inverse", "transform_state by 1/Omega undoes Omega", 1e-10, inverse, kTrials);
  }
  {
    // direct evaluation of the tower in both gauges along random polynomial curves
    double laws = 0.0, snap = 0.0, density = 0.0;
    std::size_t n = 0;
    for (int t = 0; t < 20; ++t) {
      const auto r = random_rescaling(s, 2);
      const auto hat = rescale_structure(flat, r);
      auto coef = [&] { return format_real(std::round(s.uniform(-1, 1) * 100) / 100); };
      const auto curve = parse_curve(2, {coef() + " + t + " + coef() + "*t^3", coef() + "*t + " + coef() + "*t^2", "0"});
      for (double tt : {-0.3, 0.2}) {
        CurveSample sg, sh;
        try {
          sg = sample_curve(curve, flat, tt);
          sh = sample_curve(curve, hat, tt);
        } catch (const Error&) {
          continue;
        }
        if (!sg.state.has_kappa || !sh.state.has_kappa) continue;
        const auto mapped = transform_state(sg.state, r, flat.metric());
        const double scale = 1.0 + std::abs(sg.state.kappa) + std::hypot(sg.state.J[0], sg.state.J[1]);
        laws = std::max(laws, state_difference(mapped, sh.state) / scale);
        const double w = r.value(sg.state.x);
        const double uy = dot(2, sg.state.U, r.upsilon(sg.state.x));
        for (int a = 0; a < 2; ++a) {
          snap = std::max(snap, std::abs(sh.snap[a] - (sg.snap[a] - 2 * uy * sg.state.J[a]) / (w * w)) /
                                    (1.0 + std::abs(sg.snap[a])));
        }
        density = std::max(density, std::abs(sh.ordinal_residual - sg.ordinal_residual / (w * w)) /
                                        (1.0 + std::abs(sg.ordinal_residual)));
        ++n;
      }
    }
    s.check("kinematic laws", "U, A, J and kappa in the rescaled gauge equal the transformed values", 1e-8, laws, n);
    s.check("snap law", "S -> Omega^-2 (S - 2 (U.Upsilon) J)", 1e-8, snap, n);
    s.check("ordinal density weight", "d kappa + (A.A + kappa^2)/2 + P(U,U) has weight -2", 1e-7, density, n);
  }
  {
    const ConformalRescaling to_sphere(2, parse("2/(1+x^2+y^2)"));
    const auto sphere = rescale_structure(flat, to_sphere);
    double worst = 0.0;
    for (int t = 0; t < kTrials; ++t) {
      const Vec x = s.point(2, 2.0);
      const Mat half = [&] {
        Mat g = sphere_metric.g(x);
        for (auto& row : g)
          for (double& v : row) v *= 0.5;
        return g;
      }();
      worst = std::max(worst, max_abs(sphere.rho(x), half, 2));
    }
    s.check("sphere rho", "flat-model Rho transported to the round sphere is g/2", 1e-9, worst, kTrials);
  }
  {
    double worst = 0.0;
    const int trials = 8;
    for (int t = 0; t < trials; ++t) {
      auto c = [&](double lo, double hi) { return format_real(std::round(s.uniform(lo, hi) * 100) / 100); };
      const std::array<std::array<std::string, 3>, 3> text{{{"1 + " + c(0.1, 0.5) + "*x^2", "y*z/" + c(5, 9), "0"},
                                                            {"0", c(1.5, 2.5) + " + sin(z)/2", "x/" + c(5, 9)},
                                                            {"0", "0", "exp(" + c(-0.3, 0.3) + "*y)"}}};
      Matrix<Expr> comp{};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) comp[a][b] = parse(text[a][b]);
      const auto base = MetricField::general(3, comp);
      const auto r = random_rescaling(s, 3);
      const auto hat = base.rescaled(r.omega(), "hat");
      const Vec x = s.point(3, 0.5);
      worst = std::max(worst, max_abs(rho_transform(schouten(base, x), r, base, x), schouten(hat, x), 3));
    }
    s.check("schouten transport", "in dimension 3 the transformed Schouten tensor is the Schouten tensor of Omega^2 g",
            1e-7, worst, trials);
  }
  {
    double worst = 0.0;
    const auto user = MobiusStructure::user(
        MetricField::flat(2), {{{parse("x*y + sin(y)"), parse("x^2/2")}, {parse("x^2/2"), parse("-x*y - sin(y)")}}});
    for (int t = 0; t < 20; ++t) {
      const auto r = random_rescaling(s, 2);
      const auto hat = rescale_structure(user, r);
      const Vec x = s.point(2, 0.5);
      const Tensor3 Y = user.cotton_york(x), Yh = hat.cotton_york(x);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) worst = std::max(worst, max_abs(Y[a][b], Yh[a][b], 2));
    }
    s.check("cotton-york invariance", "2D Cotton-York tensor of a Mobius structure is unchanged by rescaling", 1e-8,
            worst, 20);
  }
}

// ----------------------------------------------------------------------------
AdjointTractor random_tractor(Suite& s, const std::string& gauge, int weight) {
  AdjointTractor T;
  T.sigma = {s.normal(), s.normal(), 0};
  T.mu[0][1] = s.normal();
  T.mu[1][0] = -T.mu[0][1];
  T.nu = s.normal();
  T.rho = {s.normal(), s.normal(), 0};
  T.weight = weight;
  T.gauge = gauge;
  return T;
}

void suite_tractor(Suite& s) {
  const auto base = MobiusStructure::flat_model(MetricField::sphere(2, 1.0));
  double cocycle = 0.0, direct = 0.0, bundle = 0.0, lift_eq = 0.0, null = 0.0;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, lemma = 0.0, resid = 0.0, zero = 0.0, tiny = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const auto r1 = random_rescaling(s, 2), r2 = random_rescaling(s, 2);
    const auto mid = rescale_structure(base, r1);
    const Vec x = s.point(2, 0.6);
    const auto T = random_tractor(s, base.gauge(), t % 3 - 1);
    const auto two = transform(transform(T, r1, base, x), r2, mid, x);
    cocycle = std::max(cocycle, max_component_difference(two, transform(T, r1.then(r2), base, x)));

    const auto st = random_state(s, base.metric(), x);
    const Mat g = base.metric().g(x), gi = inverse_metric(2, g), gh = mid.metric().g(x);
    const auto sh = transform_state(st, r1, base.metric(), mid.gauge());
    const double w = r1.value(x);
    const Vec ups = r1.upsilon(x);
    const double uy = dot(2, st.U, ups), ya = bilinear(2, gi, ups, st.A), yy = bilinear(2, gi, ups, ups);
    direct = std::max(direct, max_component_difference(transform(phi_U(st, g), r1, base, x), phi_U(sh, gh)));
    direct = std::max(direct, max_component_difference(transform(phi_A(st), r1, base, x),
                                                       phi_A(sh) - (uy / w) * phi_U(sh, gh)));
    const auto expect3 =
        phi_UA(sh, gh) + (uy / w) * phi_A(sh) - ((ya + uy * uy - 0.5 * yy) / (w * w)) * phi_U(sh, gh);
    bundle = std::max(bundle, max_component_difference(transform(phi_UA(st, g), r1, base, x), expect3));

    const auto L = lift_velocity(st, g);
    null = std::max(null, std::abs(null_invariant(L, gi)));
    lift_eq = std::max(lift_eq, max_component_difference(transform(L, r1, base, x), lift_velocity(sh, gh)));

    // derivative identities with an arbitrary symmetric P
    Mat P{};
    P[0][0] = s.normal();
    P[1][1] = s.normal();
    P[0][1] = P[1][0] = s.normal();
    const Vec U = lower(2, g, st.U);
    const double PUU = bilinear(2, P, st.U, st.U), AA = bilinear(2, gi, st.A, st.A);
    const Vec dA = acceleration_derivative(st, P, g);
    AdjointTractor only_rho;
    only_rho.rho = st.A;
    only_rho.gauge = base.gauge();
    d1 = std::max(d1, max_component_difference(curve_derivative(phi_U(st, g), only_rho, P, g, st.U), phi_A(st)));
    AdjointTractor dphi2 = only_rho, jpart = only_rho;
    dphi2.rho = dA;
    jpart.rho = st.J;
    d2 = std::max(d2, max_component_difference(curve_derivative(phi_A(st), dphi2, P, g, st.U),
                                               jpart - phi_UA(st, g) - (AA + PUU) * phi_U(st, g)));
    AdjointTractor dphi3 = only_rho, uj = only_rho;
    dphi3.rho = {};
    dphi3.sigma = st.A;
    uj.rho = {};
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        dphi3.mu[b][c] = U[b] * dA[c] - U[c] * dA[b];
        uj.mu[b][c] = U[b] * st.J[c] - U[c] * st.J[b];
      }
    const double PUA = bilinear(2, P, st.U, raise(2, gi, st.A));
    d3 = std::max(d3, max_component_difference(curve_derivative(phi_UA(st, g), dphi3, P, g, st.U),
                                               uj + PUU * phi_A(st) - PUA * phi_U(st, g)));
    const double dk = s.normal();
    const auto dL = curve_derivative(L, lift_component_derivative(st, dA, jerk_derivative(st, g), dk, g), P, g, st.U);
    AdjointTractor tail = phi_A(st);
    for (int b = 0; b < 2; ++b) tail.rho[b] -= st.kappa * U[b];
    lemma = std::max(lemma, max_component_difference(dL, (dk + 0.5 * (AA + st.kappa * st.kappa) + PUU) * tail -
                                                              st.kappa * L));

    const double j = std::exp(s.uniform(std::log(1e-8), 0.0));
    const auto sj = random_state(s, base.metric(), x, j);
    resid = std::max(resid, std::abs(bundle_b_residual(sj, base) - j));
    tiny = std::max(tiny, std::abs(bundle_b_residual(sj, base) / j - 1.0) * (j < 1e-6 ? 1.0 : 0.0));
    auto z = sj;
    z.J = {};
    zero = std::max(zero, bundle_b_residual(z, base));
  }
  s.check("adjoint cocycle", "tractor rescaling law composes", 1e-9, cocycle, kTrials);
  s.check("direct check", "U and A sections transform as predicted", 1e-9, direct, kTrials);
  s.check("bundle B transformation", "U wedge A section picks up the A and U sections", 1e-9, bundle, kTrials);
  s.check("lift equivariance", "lift of the velocity commutes with rescaling", 1e-9, lift_eq, kTrials);
  s.check("null condition", "lift of the velocity is null", 1e-9, null, kTrials);
  s.check("first derivative", "derivative of the U section is the A section", 1e-9, d1, kTrials);
  s.check("second derivative", "derivative of the A section in terms of J, U wedge A and U", 1e-9, d2, kTrials);
  s.check("third derivative", "derivative of the U wedge A section", 1e-9, d3, kTrials);
  s.check("lift derivative", "d(lift) = (d kappa + (A.A + kappa^2)/2 + P(U,U)) tail - kappa lift", 1e-9, lemma,
          kTrials);
  s.check("bundle B residual", "residual equals |J|", 1e-9, resid, kTrials);
  s.check("bundle B small jerk", "relative residual for |J| below 1e-6", 1e-6, tiny, kTrials);
  s.check("bundle B zero jerk", "J = 0 keeps B invariant", 1e-14, zero, kTrials);
}

// ----------------------------------------------------------------------------
KillingCoefficients random_killing(Suite& s) {
  return {s.normal(), s.normal(), s.normal(), s.normal(), s.normal(), s.normal()};
}

void suite_flat_model(Suite& s) {
  const auto flat_metric = MetricField::flat(2);
  const auto flat = MobiusStructure::flat_model(flat_metric);
  double disc = 0.0, parallel = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const auto k = random_killing(s);
    const Vec x = s.point(2, 2.0);
    const Complex D = k.discriminant();
    disc = std::max(disc, std::abs(discriminant(killing_split(k, x), flat_metric, x) - D) / (1.0 + std::abs(D)));
    for (const auto& row : connection_apply(killing_split_field(k), flat, x)) {
      parallel = std::max(parallel, tractor_norm(row, identity_matrix(2)));
    }
  }
  s.check("discriminant", "tractor discriminant equals b^2 - 4ac", 1e-10, disc, kTrials);
  s.check("parallel split", "split of a Killing field is parallel", 1e-12, parallel, kTrials);

  double gen = 0.0, bearing = 0.0, tangent = 0.0, flow = 0.0, coord = 0.0, ends = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const Complex p(s.normal(), s.normal()), q(s.normal(), s.normal());
    const double beta = (s.normal() < 0 ? -1.0 : 1.0) * std::exp(s.uniform(-1.5, 1.5));
    if (std::abs(p - q) < 0.1) continue;
    const auto spec = LoxodromeSpec::two_point(p, q, beta);
    const auto k = generator(spec);
    const Complex w(beta, 1.0);
    const Vec x = s.point(2, 1.0);
    gen = std::max(gen, std::abs(discriminant(killing_split(k, x), flat_metric, x) - w * w) / std::norm(w));
    const auto cls = classify(k);
    bearing = std::max(bearing, cls.beta ? std::abs(*cls.beta - beta) / std::abs(beta) : INFINITY);
    const double theta = s.uniform(-1.0, 1.0), h = 1e-5;
    try {
      const Complex fd = (loxodrome_point(spec, theta + h) - loxodrome_point(spec, theta - h)) / (2 * h);
      const Complex z = loxodrome_point(spec, theta);
      tangent = std::max(tangent, std::abs(fd - loxodrome_tangent(spec, z)) / (1.0 + std::abs(fd)));
      const double tt = s.uniform(-1.0, 1.0);
      flow = std::max(flow, std::abs(killing_flow(k, tt, z) - loxodrome_point(spec, theta + tt / 2)) /
                                (1.0 + std::abs(z)));
      coord = std::max(coord, std::abs(spiral_coordinate(spec, z) - std::exp(w * theta)) /
                                  (1.0 + std::abs(std::exp(w * theta))));
    } catch (const DomainError&) {
      continue;  // too close to the pole for a meaningful difference
    }
    const double far = 40.0 / beta;
    ends = std::max(ends, std::max(std::abs(loxodrome_point(spec, -far) - p), std::abs(loxodrome_point(spec, far) - q)));
  }
  s.check("generator discriminant", "discriminant of a loxodrome generator is (beta+i)^2", 1e-10, gen, kTrials);
  s.check("bearing recovery", "classification recovers beta", 1e-9, bearing, kTrials);
  s.check("loxodrome tangent", "dz/dtheta = (beta+i)(z-p)(z-q)/(p-q)", 1e-6, tangent, kTrials);
  s.check("flow invariance", "the generator's flow slides the loxodrome along itself", 1e-9, flow, kTrials);
  s.check("spiral coordinate", "spiral coordinate sends the loxodrome to exp((beta+i) theta)", 1e-9, coord, kTrials);
  s.check("end points", "the loxodrome runs from p to q", 1e-6, ends, kTrials);

  // the three model orbits
  KillingCoefficients rot, dil, both;
  rot.F = 1.0;
  dil.lambda = 1.0;
  both.F = both.lambda = 1.0;
  const bool ok = classify(rot).kind == CurveKind::circular && classify(dil).kind == CurveKind::radial &&
                  classify(both).kind == CurveKind::loxodromic && classify(both).beta &&
                  std::abs(*classify(both).beta - 1.0) < 1e-12;
  s.check("model orbits", "rotation gives circles, dilation rays, both a beta = 1 loxodrome", 0.0, ok ? 0.0 : 1.0);
}

// ----------------------------------------------------------------------------
KinematicState spiral_state(double beta, double theta, double rotation, bool reversed) {
  const double s = std::sqrt(1 + beta * beta) * std::exp(beta * theta) / beta;
  const Complex rot = std::polar(1.0, rotation);
  const Complex z = rot * std::exp(Complex(beta, 1.0) * theta);
  Complex T = Complex(beta, 1.0) * z;
  T /= std::abs(T);
  const Complex N = Complex(0.0, 1.0) * T;
  const double k = 1 / (beta * s), dk = -1 / (beta * s * s), sign = reversed ? -1.0 : 1.0;
  KinematicState out;
  out.x = {z.real(), z.imag(), 0};
  out.U = {sign * T.real(), sign * T.imag(), 0};
  out.A = {k * N.real(), k * N.imag(), 0};
  out.J = {sign * dk * N.real(), sign * dk * N.imag(), 0};
  out.kappa = sign / s;
  out.has_kappa = true;
  out.gauge = "flat";
  return out;
}

void suite_invariance(Suite& s) {
  const auto flat = MobiusStructure::flat_model(MetricField::flat(2));
  const ConformalRescaling to_sphere(2, parse("2/(1+x^2+y^2)"));
  const auto sphere = rescale_structure(flat, to_sphere, "sphere");
  const double rotation = s.uniform(0, 2 * kPi);
  const std::string gauge_anchor = "the same curve integrated in the flat and sphere gauges";
  try {
    IntegratorConfig cfg;
    cfg.step = 5e-4;
    const double a = s.uniform(0.5, 2.0), angle = s.uniform(0, 2 * kPi);
    KinematicState c;
    c.x = s.point(2, 0.5);
    c.U = {std::cos(angle), std::sin(angle), 0};
    c.A = {-a * std::sin(angle), a * std::cos(angle), 0};
    c.gauge = "flat";
    cfg.length = 2 * kPi / a;
    const auto r = invariance_experiment(CurveModel::circle, flat, to_sphere, c, cfg);
    s.check("circle invariance", gauge_anchor + " (conformal circle)", 1e-6, r.trace_distance, r.rescaled.samples.size());
    s.check("circle laws", "rescaled trace carries the transformed states", 1e-6, r.laws.max(), r.compared);
  } catch (const Error& e) {
    s.fail("circle invariance", gauge_anchor, e.what());
  }
  try {
    IntegratorConfig cfg;
    cfg.length = 20.0;
    cfg.step = 2.5e-4;
    const auto init = spiral_state(1.0, s.uniform(-1.0, 0.0), rotation, false);
    const auto r = invariance_experiment(CurveModel::loxodrome, flat, to_sphere, init, cfg);
    s.check("loxodrome invariance", gauge_anchor + " (ordinal loxodrome)", 1e-6, r.trace_distance,
            r.rescaled.samples.size());
    s.check("loxodrome laws", "rescaled trace carries the transformed states", 1e-6, r.laws.max(), r.compared);
    double null = 0.0, der = 0.0;
    std::size_t n = 0;
    for (const auto* trace : {&r.base, &r.rescaled}) {
      const auto& st = trace == &r.base ? flat : sphere;
      for (std::size_t i = 0; i < trace->samples.size(); i += 7) {
        const auto c = lift_check(trace->samples[i].state, st);
        null = std::max(null, c.null);
        der = std::max(der, c.derivative);
        ++n;
      }
    }
    s.check("null lift", "lift of the velocity stays null along the trace", 1e-8, null, n);
    s.check("line subbundle", "d(lift) + kappa lift = 0 along the trace", 1e-8, der, n);
  } catch (const Error& e) {
    s.fail("loxodrome invariance", gauge_anchor, e.what());
  }
  try {
    const double a = 1.5 * kPi, b = -3.0 * kPi;
    const auto init = transform_state(spiral_state(1.0, a, rotation, true), to_sphere, flat.metric(), sphere.gauge());
    IntegratorConfig cfg;
    cfg.scheme = Scheme::rk45;
    cfg.tol = 1e-12;
    cfg.renormalise = true;
    cfg.length = 2 * std::sqrt(2.0) * (std::atan(std::exp(a)) - std::atan(std::exp(b)));
    const auto trace = integrate(CurveModel::loxodrome, init, sphere, cfg);
    if (!trace.completed()) throw DomainError(trace.message);
    double winding = 0.0;
    bool decreasing = true;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
      const auto& p = trace.samples[i - 1].state.x;
      const auto& q = trace.samples[i].state.x;
      winding += std::remainder(std::atan2(q[1], q[0]) - std::atan2(p[1], p[0]), 2 * kPi);
      if (trace.samples[i].s >= 0.75 * cfg.length) decreasing = decreasing && std::hypot(q[0], q[1]) < std::hypot(p[0], p[1]);
    }
    s.check_above("spiral winding", "sphere-gauge loxodromes spiral into their limit point", 4 * kPi, std::abs(winding));
    s.check("spiral approach", "distance to the limit point decreases on the final quarter", 0.0, decreasing ? 0.0 : 1.0);
  } catch (const Error& e) {
    s.fail("spiral winding", "sphere-gauge loxodromes spiral", e.what());
  }
  {
    const auto cylinder = MobiusStructure::flat_model(MetricField::cylinder_gauge());
    const double beta = std::exp(s.uniform(-1.0, 1.0));
    const std::string bt = format_real(beta);
    const auto curve = parse_curve(2, {"exp(" + bt + "*t)*cos(t)", "exp(" + bt + "*t)*sin(t)", "0"});
    double cyl = 0.0, flat_err = 0.0;
    for (double t : {-1.0, -0.3, 0.4, 1.1}) {
      const auto c = sample_curve(curve, cylinder, t);
      const Vec KU = contract(2, k_two_form(cylinder, c.state.U, c.state.x), c.state.U);
      cyl = std::max(cyl, std::hypot(c.snap[0] - KU[0], c.snap[1] - KU[1]));
      const auto f = sample_curve(curve, flat, t);
      const double arc = std::sqrt(1 + beta * beta) * std::exp(beta * t) / beta;
      const double predicted = 2 / (beta * arc * arc * arc);
      flat_err = std::max(flat_err, std::abs(std::hypot(f.snap[0], f.snap[1]) - predicted) / predicted);
    }
    s.check("fourth order, cylinder gauge", "log spiral solves S = K U in the cylinder gauge", 1e-8, cyl, 4);
    s.check("fourth order, flat gauge", "in the flat arc-length gauge |S| = |k''|", 1e-6, flat_err, 4);
  }
  try {
    const auto init = spiral_state(1.0, -0.5, rotation, false);
    IntegratorConfig cfg;
    cfg.length = 3.0;
    const auto r = invariance_experiment(CurveModel::loxodrome, flat, ConformalRescaling::identity(2), init, cfg);
    s.check("identity rescaling", "Omega = 1 reproduces the trace", 1e-12, r.trace_distance, r.base.samples.size());
  } catch (const Error& e) {
    s.fail("identity rescaling", "Omega = 1 reproduces the trace", e.what());
  }
}

std::vector<VerifyCheck> run_one(const std::string& name, std::uint64_t seed) {
  // each suite gets its own stream so results do not depend on scheduling
  const auto& names = verify_suite_names();
  const auto index = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
  Suite s(name, seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  try {
    if (name == "transforms") suite_transforms(s);
    if (name == "tractor") suite_tractor(s);
    if (name == "flat-model") suite_flat_model(s);
    if (name == "invariance") suite_invariance(s);
  } catch (const Error& e) {
    s.fail("suite", name, e.what());
  }
  return s.checks;
}

}  // namespace

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
  const auto& names = verify_suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ConfigError("unknown suite '" + suite + "' (expected transforms, tractor, flat-model, invariance or all)");
  }
  VerifyReport report;
  report.suite = suite;
  report.seed = seed;
  std::vector<std::string> selected = suite == "all" ? names : std::vector<std::string>{suite};
  std::vector<std::future<std::vector<VerifyCheck>>> jobs;
  for (const auto& name : selected) jobs.push_back(std::async(std::launch::async, run_one, name, seed));
  for (auto& job : jobs) {
    auto checks = job.get();
    report.checks.insert(report.checks.end(), checks.begin(), checks.end());
  }
  return report;
}

}  // namespace conflox
