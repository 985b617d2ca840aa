#include "conflox/curve_engine.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace conflox {

const char* model_name(CurveModel m) {
  switch (m) {
    case CurveModel::circle: return "circle";
    case CurveModel::loxodrome: return "loxodrome";
    case CurveModel::dk4: return "dk4";
  }
  return "unknown";
}

const char* scheme_name(Scheme s) { return s == Scheme::rk4 ? "rk4" : "rk45"; }

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::max_length: return "max-length";
    case Termination::constraint_drift: return "constraint-drift";
    case Termination::degenerate_jerk: return "degenerate-jerk";
    case Termination::chart_escape: return "chart-escape";
    case Termination::step_underflow: return "step-underflow";
  }
  return "unknown";
}

CurveModel parse_model(const std::string& name) {
  if (name == "circle") return CurveModel::circle;
  if (name == "loxodrome") return CurveModel::loxodrome;
  if (name == "dk4") return CurveModel::dk4;
  throw ConfigError("unknown model '" + name + "' (expected circle, loxodrome or dk4)");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4" || name == "rk4-fixed") return Scheme::rk4;
  if (name == "rk45" || name == "rk45-adaptive") return Scheme::rk45;
  throw ConfigError("unknown scheme '" + name + "' (expected rk4 or rk45)");
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("step must be positive");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol must be positive");
  if (!(length >= 0.0) || !std::isfinite(length)) throw ConfigError("length must be non-negative");
  if (!(drift_threshold > 0.0)) throw ConfigError("drift threshold must be positive");
  if (!(chart_bound > 0.0)) throw ConfigError("chart bound must be positive");
}

namespace {

struct Common {
  int n;
  Mat g, g_inv, P;
  Vec U_low;
  double AA, PUU;
  Vec PU;
};

Common common(const KinematicState& s, const MobiusStructure& structure) {
  Common c;
  c.n = s.dim;
  c.g = structure.metric().g(s.x);
  c.g_inv = inverse_metric(c.n, c.g);
  c.P = structure.rho(s.x);
  c.U_low = lower(c.n, c.g, s.U);
  c.AA = bilinear(c.n, c.g_inv, s.A, s.A);
  c.PU = contract(c.n, c.P, s.U);
  c.PUU = dot(c.n, s.U, c.PU);
  return c;
}

CurveRates base_rates(const KinematicState& s, const Common& c) {
  CurveRates r;
  r.dx = s.U;
  r.DU = raise(c.n, c.g_inv, s.A);
  return r;
}

}  // namespace

CurveRates conformal_circle_rhs(const KinematicState& s, const MobiusStructure& structure) {
  const Common c = common(s, structure);
  CurveRates r = base_rates(s, c);
  for (int a = 0; a < c.n; ++a) r.DA[a] = c.PU[a] - (c.AA + c.PUU) * c.U_low[a];
  return r;
}

CurveRates ordinal_loxodrome_rhs(const KinematicState& s, const MobiusStructure& structure) {
  const Common c = common(s, structure);
  CurveRates r = base_rates(s, c);
  const double AJ = bilinear(c.n, c.g_inv, s.A, s.J);
  for (int a = 0; a < c.n; ++a) {
    r.DA[a] = s.J[a] - (c.AA + c.PUU) * c.U_low[a] + c.PU[a];
    r.DJ[a] = -AJ * c.U_low[a] - 2.0 * s.kappa * s.J[a];
  }
  r.dkappa = -0.5 * (c.AA + s.kappa * s.kappa) - c.PUU;
  return r;
}

CurveRates dk4_rhs(const KinematicState& s, const MobiusStructure& structure) {
  const Common c = common(s, structure);
  CurveRates r = base_rates(s, c);
  const double AJ = bilinear(c.n, c.g_inv, s.A, s.J);
  const Vec KU = contract(c.n, k_two_form(structure, s.U, s.x), s.U);
  for (int a = 0; a < c.n; ++a) {
    r.DA[a] = s.J[a] - (c.AA + c.PUU) * c.U_low[a] + c.PU[a];
    r.DJ[a] = -AJ * c.U_low[a] + KU[a];
  }
  return r;
}

CurveRates curve_rhs(CurveModel model, const KinematicState& s, const MobiusStructure& structure) {
  switch (model) {
    case CurveModel::circle: return conformal_circle_rhs(s, structure);
    case CurveModel::loxodrome: return ordinal_loxodrome_rhs(s, structure);
    case CurveModel::dk4: return dk4_rhs(s, structure);
  }
  return {};
}

LiftCheck lift_check(const KinematicState& s, const MobiusStructure& structure) {
  const int n = s.dim;
  const Mat g = structure.metric().g(s.x);
  const Mat g_inv = inverse_metric(n, g);
  const AdjointTractor L = lift_velocity(s, g);
  const CurveRates r = ordinal_loxodrome_rhs(s, structure);
  const AdjointTractor dL =
      curve_derivative(L, lift_component_derivative(s, r.DA, r.DJ, r.dkappa, g), structure.rho(s.x), g, s.U);
  LiftCheck out;
  out.null = std::abs(null_invariant(L, g_inv));
  out.derivative = tractor_norm(dL + s.kappa * L, g_inv);
  return out;
}

namespace {

constexpr int kSize = 14;  // x, U, A, J (3 slots each), kappa, weighted length
using Packed = std::array<double, kSize>;

Packed pack(const KinematicState& s, double w) {
  Packed y{};
  for (int a = 0; a < 3; ++a) {
    y[a] = s.x[a];
    y[3 + a] = s.U[a];
    y[6 + a] = s.A[a];
    y[9 + a] = s.J[a];
  }
  y[12] = s.kappa;
  y[13] = w;
  return y;
}

KinematicState unpack(const Packed& y, const KinematicState& like) {
  KinematicState s = like;
  for (int a = 0; a < 3; ++a) {
    s.x[a] = y[a];
    s.U[a] = y[3 + a];
    s.A[a] = y[6 + a];
    s.J[a] = y[9 + a];
  }
  s.kappa = y[12];
  return s;
}

class System {
 public:
  System(CurveModel model, const MobiusStructure& structure, const ConformalRescaling* tracked)
      : model_(model), structure_(structure), tracked_(tracked) {}

  Packed operator()(const Packed& y, const KinematicState& like) const {
    const KinematicState s = unpack(y, like);
    const int n = s.dim;
    const CurveRates r = curve_rhs(model_, s, structure_);
    const Tensor3 G = christoffel(structure_.metric(), s.x);
    Packed d{};
    for (int a = 0; a < n; ++a) {
      d[a] = r.dx[a];
      double u = r.DU[a], A = r.DA[a], J = r.DJ[a];
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          u -= G[a][b][c] * s.U[b] * s.U[c];
          A += G[c][a][b] * s.U[b] * s.A[c];
          J += G[c][a][b] * s.U[b] * s.J[c];
        }
      d[3 + a] = u;
      d[6 + a] = A;
      d[9 + a] = J;
    }
    d[12] = r.dkappa;
    d[13] = tracked_ ? tracked_->value(s.x) : 0.0;
    return d;
  }

  CurveModel model() const { return model_; }

 private:
  CurveModel model_;
  const MobiusStructure& structure_;
  const ConformalRescaling* tracked_;
};

Packed axpy(const Packed& y, double h, const Packed& k) {
  Packed r = y;
  for (int i = 0; i < kSize; ++i) r[i] += h * k[i];
  return r;
}

Packed rk4_step(const System& f, const Packed& y, double h, const KinematicState& like) {
  const Packed k1 = f(y, like);
  const Packed k2 = f(axpy(y, h / 2, k1), like);
  const Packed k3 = f(axpy(y, h / 2, k2), like);
  const Packed k4 = f(axpy(y, h, k3), like);
  Packed r = y;
  for (int i = 0; i < kSize; ++i) r[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return r;
}

// Dormand-Prince 5(4); returns the fifth order solution and writes the error estimate.
Packed dp_step(const System& f, const Packed& y, double h, const KinematicState& like, Packed& err) {
  static constexpr double c21 = 1.0 / 5;
  static constexpr double c31 = 3.0 / 40, c32 = 9.0 / 40;
  static constexpr double c41 = 44.0 / 45, c42 = -56.0 / 15, c43 = 32.0 / 9;
  static constexpr double c51 = 19372.0 / 6561, c52 = -25360.0 / 2187, c53 = 64448.0 / 6561, c54 = -212.0 / 729;
  static constexpr double c61 = 9017.0 / 3168, c62 = -355.0 / 33, c63 = 46732.0 / 5247, c64 = 49.0 / 176,
                          c65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  auto combo = [&](std::initializer_list<std::pair<double, const Packed*>> terms) {
    Packed r = y;
    for (const auto& [c, k] : terms)
      for (int i = 0; i < kSize; ++i) r[i] += h * c * (*k)[i];
    return r;
  };
  const Packed k1 = f(y, like);
  const Packed k2 = f(combo({{c21, &k1}}), like);
  const Packed k3 = f(combo({{c31, &k1}, {c32, &k2}}), like);
  const Packed k4 = f(combo({{c41, &k1}, {c42, &k2}, {c43, &k3}}), like);
  const Packed k5 = f(combo({{c51, &k1}, {c52, &k2}, {c53, &k3}, {c54, &k4}}), like);
  const Packed k6 = f(combo({{c61, &k1}, {c62, &k2}, {c63, &k3}, {c64, &k4}, {c65, &k5}}), like);
  const Packed y5 = combo({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const Packed k7 = f(y5, like);
  for (int i = 0; i < kSize; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  return y5;
}

void renormalise(KinematicState& s, const MetricField& metric) {
  const int n = s.dim;
  const Mat g = metric.g(s.x);
  const double len = std::sqrt(inner(n, g, s.U, s.U));
  for (int a = 0; a < n; ++a) s.U[a] /= len;
  const Vec U_low = lower(n, g, s.U);
  const double ua = dot(n, s.U, s.A), uj = dot(n, s.U, s.J);
  for (int a = 0; a < n; ++a) {
    s.A[a] -= ua * U_low[a];
    s.J[a] -= uj * U_low[a];
  }
}

double jerk_norm(const KinematicState& s, const MetricField& metric) {
  return std::sqrt(bilinear(s.dim, metric.g_inv(s.x), s.J, s.J));
}

bool finite(const Packed& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

CurveTrace run(CurveModel model, const KinematicState& init, const MobiusStructure& structure,
               const IntegratorConfig& config, const ConformalRescaling* tracked) {
  config.validate();
  if (init.dim != structure.dim()) throw DimensionError("initial data and structure dimensions differ");
  const MetricField& metric = structure.metric();
  KinematicState start = init;
  if (model == CurveModel::circle) start.J = {};
  if (model != CurveModel::loxodrome) start.has_kappa = false;
  if (model == CurveModel::loxodrome) start.has_kappa = true;
  if (start.gauge.empty()) start.gauge = structure.gauge();

  const ConstraintResiduals r0 = constraint_residuals(start, metric);
  if (r0.max() > 1e-10) {
    throw DomainError("initial data violates the constraints (|U|^2-1 = " + format_real(r0.unit) +
                      ", U.A = " + format_real(r0.ortho_A) + ", U.J = " + format_real(r0.ortho_J) + ")");
  }

  CurveTrace trace;
  trace.model = model;
  auto record = [&](double s, const KinematicState& st, const ConstraintResiduals& res, double w) {
    TraceSample smp{s, st, res, std::numeric_limits<double>::quiet_NaN(), w};
    if (model == CurveModel::loxodrome) {
      const Mat g = metric.g(st.x);
      smp.null_residual = std::abs(null_invariant(lift_velocity(st, g), inverse_metric(st.dim, g)));
    }
    trace.samples.push_back(smp);
  };
  if (model == CurveModel::loxodrome && jerk_norm(start, metric) < config.jerk_threshold) {
    trace.samples.push_back({0.0, start, r0, std::numeric_limits<double>::quiet_NaN(), 0.0});
    trace.reason = Termination::degenerate_jerk;
    trace.message = "normalised jerk below threshold at s = 0";
    return trace;
  }
  record(0.0, start, r0, 0.0);
  if (config.length == 0.0) return trace;

  const System f(model, structure, tracked);
  Packed y = pack(start, 0.0);
  double s = 0.0;
  const double L = config.length;
  const int fixed_steps = static_cast<int>(std::ceil(L / config.step - 1e-9));
  const double fixed_h = L / std::max(fixed_steps, 1);
  double h = std::min(config.step, L);
  int step_index = 0;

  auto stop = [&](Termination why, std::string msg) {
    trace.reason = why;
    trace.message = std::move(msg);
    return trace;
  };

  while (s < L) {
    Packed next;
    double taken;
    try {
      if (config.scheme == Scheme::rk4) {
        taken = fixed_h;
        next = rk4_step(f, y, taken, start);
        ++step_index;
      } else {
        h = std::min(h, L - s);
        Packed err{};
        for (;;) {
          if (h < 1e-14 * (1.0 + s)) return stop(Termination::step_underflow, "step size underflow at s = " + format_real(s));
          next = dp_step(f, y, h, start, err);
          double e = 0.0;
          for (int i = 0; i < kSize; ++i) e = std::max(e, std::abs(err[i]) / (config.tol * (1.0 + std::abs(y[i]))));
          if (!std::isfinite(e)) e = 1e10;
          const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
          if (e <= 1.0) {
            taken = h;
            h *= factor;
            break;
          }
          h *= factor;
        }
      }
    } catch (const Error& ex) {
      return stop(Termination::chart_escape, std::string("evaluation failed near s = ") + format_real(s) + ": " + ex.what());
    }
    const double s_next = config.scheme == Scheme::rk4 ? (step_index == fixed_steps ? L : step_index * fixed_h) : s + taken;
    if (!finite(next)) return stop(Termination::chart_escape, "non-finite state at s = " + format_real(s_next));
    KinematicState st = unpack(next, start);
    double xnorm = 0.0;
    for (int a = 0; a < st.dim; ++a) xnorm = std::max(xnorm, std::abs(st.x[a]));
    if (xnorm > config.chart_bound) return stop(Termination::chart_escape, "left the chart at s = " + format_real(s_next));
    ConstraintResiduals res;
    try {
      if (config.renormalise) {
        renormalise(st, metric);
        next = pack(st, next[13]);
      }
      res = constraint_residuals(st, metric);
    } catch (const Error& ex) {
      return stop(Termination::chart_escape, std::string("left the metric's domain at s = ") + format_real(s_next));
    }
    if (!(res.max() <= config.drift_threshold)) {
      return stop(Termination::constraint_drift, "constraint drift " + format_real(res.max()) + " at s = " + format_real(s_next));
    }
    if (model == CurveModel::loxodrome && jerk_norm(st, metric) < config.jerk_threshold) {
      return stop(Termination::degenerate_jerk, "normalised jerk below threshold at s = " + format_real(s_next));
    }
    y = next;
    s = s_next;
    record(s, st, res, y[13]);
  }
  return trace;
}

}  // namespace

CurveTrace integrate(CurveModel model, const KinematicState& init, const MobiusStructure& structure,
                     const IntegratorConfig& config) {
  return run(model, init, structure, config, nullptr);
}

CurveTrace integrate(CurveModel model, const KinematicState& init, const MobiusStructure& structure,
                     const IntegratorConfig& config, const ConformalRescaling& tracked) {
  return run(model, init, structure, config, &tracked);
}

std::vector<Vec> trace_points(const CurveTrace& trace) {
  std::vector<Vec> out;
  out.reserve(trace.samples.size());
  for (const auto& s : trace.samples) out.push_back(s.state.x);
  return out;
}

namespace {

double point_segment(const Vec& p, const Vec& a, const Vec& b) {
  double ab2 = 0.0, t = 0.0;
  for (int i = 0; i < 3; ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    t += (p[i] - a[i]) * (b[i] - a[i]);
  }
  t = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double q = a[i] + t * (b[i] - a[i]) - p[i];
    d2 += q * q;
  }
  return std::sqrt(d2);
}

// Distance from every vertex of a to the polyline b, bucketed on the first two coordinates.
double one_sided(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (b.size() == 1) {
    double worst = 0.0;
    for (const auto& p : a) worst = std::max(worst, point_segment(p, b[0], b[0]));
    return worst;
  }
  double lo[2] = {b[0][0], b[0][1]}, hi[2] = {b[0][0], b[0][1]};
  double total = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], b[i][k]);
      hi[k] = std::max(hi[k], b[i][k]);
    }
    if (i > 0) total += std::hypot(b[i][0] - b[i - 1][0], b[i][1] - b[i - 1][1]);
  }
  const double extent = std::max(hi[0] - lo[0], hi[1] - lo[1]);
  double cell = std::max(total / b.size() * 4.0, extent / 2048.0);
  if (!(cell > 0.0)) cell = 1.0;
  auto key = [](long i, long j) { return (static_cast<long long>(i) << 32) ^ static_cast<unsigned long>(j); };
  auto index = [&](double v, int k) { return static_cast<long>(std::floor((v - lo[k]) / cell)); };
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const long i0 = index(std::min(b[i][0], b[i + 1][0]), 0), i1 = index(std::max(b[i][0], b[i + 1][0]), 0);
    const long j0 = index(std::min(b[i][1], b[i + 1][1]), 1), j1 = index(std::max(b[i][1], b[i + 1][1]), 1);
    for (long u = i0; u <= i1; ++u)
      for (long v = j0; v <= j1; ++v) grid[key(u, v)].push_back(i);
  }
  const long span = static_cast<long>(extent / cell) + 2;
  double worst = 0.0;
  for (const auto& p : a) {
    const long pu = index(p[0], 0), pv = index(p[1], 1);
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0;; ++r) {
      auto visit = [&](long u, long v) {
        auto it = grid.find(key(u, v));
        if (it == grid.end()) return;
        for (std::size_t i : it->second) best = std::min(best, point_segment(p, b[i], b[i + 1]));
      };
      if (r == 0) {
        visit(pu, pv);
      } else {
        for (long t = -r; t <= r; ++t) {
          visit(pu + t, pv - r);
          visit(pu + t, pv + r);
          if (t != -r && t != r) {
            visit(pu - r, pv + t);
            visit(pu + r, pv + t);
          }
        }
      }
      // anything outside ring r is at least r cells away in the plane
      if (best <= r * cell) break;
      const long du = std::max(std::abs(pu), std::abs(pv));
      if (r > du + span) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double trace_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) throw DomainError("trace distance needs non-empty traces");
  return std::max(one_sided(a, b), one_sided(b, a));
}

double LawResiduals::max() const { return std::max({x, U, A, J, kappa}); }

namespace {

// Cubic Hermite interpolation of the packed state between two samples.
Packed hermite(const Packed& y0, const Packed& d0, const Packed& y1, const Packed& d1, double h, double t) {
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  Packed r{};
  for (int i = 0; i < kSize; ++i) r[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
  return r;
}

}  // namespace

InvarianceReport invariance_experiment(CurveModel model, const MobiusStructure& structure,
                                       const ConformalRescaling& rescaling, const KinematicState& init,
                                       const IntegratorConfig& config) {
  InvarianceReport out;
  out.base = integrate(model, init, structure, config, rescaling);
  if (!out.base.completed()) {
    throw DomainError(std::string("base integration stopped: ") + termination_name(out.base.reason) + ", " +
                      out.base.message);
  }
  const MobiusStructure hat = rescale_structure(structure, rescaling);
  KinematicState hat_init = init;
  if (hat_init.gauge.empty()) hat_init.gauge = structure.gauge();
  if (model == CurveModel::loxodrome) hat_init.has_kappa = true;
  hat_init = transform_state(hat_init, rescaling, structure.metric(), hat.gauge());
  IntegratorConfig hat_config = config;
  hat_config.length = out.base.samples.back().weighted_length;
  if (config.length > 0) hat_config.step = config.step * hat_config.length / config.length;
  if (!(hat_config.step > 0.0)) hat_config.step = config.step;
  out.rescaled = integrate(model, hat_init, hat, hat_config);
  if (!out.rescaled.completed()) {
    throw DomainError(std::string("rescaled integration stopped: ") + termination_name(out.rescaled.reason) + ", " +
                      out.rescaled.message);
  }
  out.trace_distance = trace_distance(trace_points(out.base), trace_points(out.rescaled));

  // compare the rescaled samples with transformed base states at the same curve point
  const System f(model, structure, &rescaling);
  const auto& bs = out.base.samples;
  std::size_t i = 0;
  for (const auto& target : out.rescaled.samples) {
    const double w = target.s;
    while (i + 2 < bs.size() && bs[i + 1].weighted_length < w) ++i;
    if (bs.size() < 2) break;
    const Packed y0 = pack(bs[i].state, bs[i].weighted_length), y1 = pack(bs[i + 1].state, bs[i + 1].weighted_length);
    const Packed d0 = f(y0, bs[i].state), d1 = f(y1, bs[i + 1].state);
    const double h = bs[i + 1].s - bs[i].s;
    // solve W(t) = w on the interval
    double t = (w - y0[13]) / (y1[13] - y0[13]);
    for (int it = 0; it < 30; ++it) {
      const double W = hermite(y0, d0, y1, d1, h, t)[13];
      const double t2 = t * t;
      const double Wp = (6 * t2 - 6 * t) * y0[13] + (3 * t2 - 4 * t + 1) * h * d0[13] + (-6 * t2 + 6 * t) * y1[13] +
                        (3 * t2 - 2 * t) * h * d1[13];
      const double step = (W - w) / Wp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (t < -1e-6 || t > 1 + 1e-6) continue;
    KinematicState s = unpack(hermite(y0, d0, y1, d1, h, t), bs[i].state);
    const KinematicState mapped = transform_state(s, rescaling, structure.metric(), hat.gauge());
    const KinematicState& got = target.state;
    for (int a = 0; a < s.dim; ++a) {
      out.laws.x = std::max(out.laws.x, std::abs(mapped.x[a] - got.x[a]));
      out.laws.U = std::max(out.laws.U, std::abs(mapped.U[a] - got.U[a]));
      out.laws.A = std::max(out.laws.A, std::abs(mapped.A[a] - got.A[a]));
      out.laws.J = std::max(out.laws.J, std::abs(mapped.J[a] - got.J[a]));
    }
    if (model == CurveModel::loxodrome) out.laws.kappa = std::max(out.laws.kappa, std::abs(mapped.kappa - got.kappa));
    ++out.compared;
  }
  return out;
}

}  // namespace conflox
