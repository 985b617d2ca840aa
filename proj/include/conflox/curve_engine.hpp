#pragma once

// First-order systems for conformal circles, ordinal loxodromes and the fourth
// order equation, integrated in arc length with constraint monitoring.

#include <limits>
#include <string>
#include <vector>

#include "conflox/tractor.hpp"

namespace conflox {

enum class CurveModel { circle, loxodrome, dk4 };
enum class Scheme { rk4, rk45 };
enum class Termination { max_length, constraint_drift, degenerate_jerk, chart_escape, step_underflow };

const char* model_name(CurveModel m);
const char* scheme_name(Scheme s);
const char* termination_name(Termination t);
// Throw ConfigError for unknown names.
CurveModel parse_model(const std::string& name);
Scheme parse_scheme(const std::string& name);

struct IntegratorConfig {
  Scheme scheme = Scheme::rk4;
  double step = 1e-3;  // fixed step, or initial step for rk45
  double tol = 1e-9;
  double length = 10.0;
  double drift_threshold = 1e-6;
  bool renormalise = false;
  double chart_bound = 1e6;
  double jerk_threshold = kDefaultJerkThreshold;

  void validate() const;  // throws ConfigError
};

// Covariant arc-length derivatives: dx^a, DU^a, DA_a, DJ_a, d kappa.
struct CurveRates {
  Vec dx{};
  Vec DU{};
  Vec DA{};
  Vec DJ{};
  double dkappa = 0.0;
};

CurveRates conformal_circle_rhs(const KinematicState& s, const MobiusStructure& structure);
CurveRates ordinal_loxodrome_rhs(const KinematicState& s, const MobiusStructure& structure);
CurveRates dk4_rhs(const KinematicState& s, const MobiusStructure& structure);
CurveRates curve_rhs(CurveModel model, const KinematicState& s, const MobiusStructure& structure);

struct TraceSample {
  double s = 0.0;
  KinematicState state;
  ConstraintResiduals residuals;
  double null_residual = std::numeric_limits<double>::quiet_NaN();  // loxodrome only
  double weighted_length = 0.0;  // integral of the rescaling factor, when one is tracked
};

struct CurveTrace {
  CurveModel model = CurveModel::circle;
  std::vector<TraceSample> samples;
  Termination reason = Termination::max_length;
  std::string message;

  bool completed() const { return reason == Termination::max_length; }
};

// Throws DomainError if init violates the constraints by more than 1e-10, or
// if a loxodrome is started with degenerate jerk.
CurveTrace integrate(CurveModel model, const KinematicState& init, const MobiusStructure& structure,
                     const IntegratorConfig& config);

// Same, additionally integrating the arc length of the rescaled metric along the curve.
CurveTrace integrate(CurveModel model, const KinematicState& init, const MobiusStructure& structure,
                     const IntegratorConfig& config, const ConformalRescaling& tracked);

// Null condition and the residual of d(lift) + kappa lift along a loxodrome state.
struct LiftCheck {
  double null = 0.0;
  double derivative = 0.0;
};
LiftCheck lift_check(const KinematicState& s, const MobiusStructure& structure);

// Symmetric distance between two polylines: max over vertices of the distance
// to the other polyline, in chart coordinates.
double trace_distance(const std::vector<Vec>& a, const std::vector<Vec>& b);
std::vector<Vec> trace_points(const CurveTrace& trace);

struct LawResiduals {
  double x = 0.0, U = 0.0, A = 0.0, J = 0.0, kappa = 0.0;
  double max() const;
};

struct InvarianceReport {
  CurveTrace base;
  CurveTrace rescaled;
  double trace_distance = 0.0;
  LawResiduals laws;  // transformed base states against the rescaled trace
  std::size_t compared = 0;
};

// Integrates in gauge g and, from the transformed initial data, in gauge
// Omega^2 g over the corresponding arc length. Throws DomainError if either
// integration terminates early.
InvarianceReport invariance_experiment(CurveModel model, const MobiusStructure& structure,
                                       const ConformalRescaling& rescaling, const KinematicState& init,
                                       const IntegratorConfig& config);

}  // namespace conflox
