#include "conflox/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "conflox/io.hpp"
#include "conflox/verify.hpp"

namespace conflox {

namespace {

struct IntegrateArgs {
  std::string model;
  std::string metric, rho, init;
  std::string scheme = "rk4";
  double step = 1e-3, tol = 1e-9, length = 10.0, drift = 1e-6, chart_bound = 1e6;
  bool renormalise = false;
  std::string out, svg;
  std::uint64_t seed = 0;
};

struct LoxArgs {
  std::vector<double> p, q, theta{-40.0, 40.0};
  double beta = 1.0;
  int samples = 1001;
  std::string out, svg;
};

struct ClassifyArgs {
  double u = 0, v = 0, lambda = 0, F = 0, P = 0, Q = 0;
};

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  std::string out;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

// CSV to --out when given, else to stdout with the summary moved to stderr.
void emit(const std::string& csv, const json& summary, const std::string& out_path, std::ostream& out,
          std::ostream& err) {
  if (out_path.empty()) {
    out << csv;
    err << summary.dump(2) << '\n';
  } else {
    write_file(out_path, csv);
    out << summary.dump(2) << '\n';
  }
}

json vec_json(const Vec& v, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

int cmd_integrate(const IntegrateArgs& a, std::ostream& out, std::ostream& err) {
  const CurveModel model = parse_model(a.model);
  if (a.metric.empty()) throw ConfigError("missing required field 'metric' (--metric)");
  if (a.init.empty()) throw ConfigError("missing required field 'init' (--init)");
  const json metric_spec = read_json_argument(a.metric, "metric");
  const json rho_spec = a.rho.empty() ? json(nullptr) : read_json_argument(a.rho, "rho");
  const json init_spec = read_json_argument(a.init, "init");
  const MetricField metric = metric_from_json(metric_spec);
  const MobiusStructure structure = structure_from_json(metric, rho_spec);
  KinematicState init = state_from_json(init_spec, metric.dim());
  init.gauge = structure.gauge();
  if (model == CurveModel::loxodrome && !init.has_kappa) throw ConfigError("init: missing field 'kappa' for the loxodrome model");
  if (model != CurveModel::circle && !init_spec.contains("J")) throw ConfigError("init: missing field 'J'");

  IntegratorConfig cfg;
  cfg.scheme = parse_scheme(a.scheme);
  cfg.step = a.step;
  cfg.tol = a.tol;
  cfg.length = a.length;
  cfg.drift_threshold = a.drift;
  cfg.chart_bound = a.chart_bound;
  cfg.renormalise = a.renormalise;
  cfg.validate();

  CurveTrace trace;
  try {
    trace = integrate(model, init, structure, cfg);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  std::ostringstream csv;
  write_trace_csv(csv, trace);
  const int n = metric.dim();
  double unit = 0, oa = 0, oj = 0, null = 0;
  for (const auto& s : trace.samples) {
    unit = std::max(unit, s.residuals.unit);
    oa = std::max(oa, s.residuals.ortho_A);
    oj = std::max(oj, s.residuals.ortho_J);
    if (!std::isnan(s.null_residual)) null = std::max(null, s.null_residual);
  }
  const auto& first = trace.samples.front();
  const auto& last = trace.samples.back();
  double closure = 0.0;
  for (int i = 0; i < n; ++i) closure += (last.state.x[i] - first.state.x[i]) * (last.state.x[i] - first.state.x[i]);

  json summary;
  summary["command"] = "integrate";
  summary["model"] = model_name(model);
  summary["config"] = {{"metric", metric_spec}, {"rho", rho_spec},       {"init", init_spec},
                       {"scheme", scheme_name(cfg.scheme)}, {"step", cfg.step}, {"tol", cfg.tol},
                       {"length", cfg.length}, {"drift", cfg.drift_threshold}, {"renormalise", cfg.renormalise},
                       {"chart_bound", cfg.chart_bound}, {"seed", a.seed}};
  summary["gauge"] = structure.gauge();
  summary["rho_provenance"] = provenance_name(structure.provenance());
  summary["termination"] = termination_name(trace.reason);
  if (!trace.message.empty()) summary["message"] = trace.message;
  summary["samples"] = trace.samples.size();
  summary["s_end"] = last.s;
  summary["max_res"] = std::max({unit, oa, oj, null});
  summary["max_residuals"] = {{"unit", unit}, {"orthoA", oa}, {"orthoJ", oj}, {"null", null}};
  summary["closure"] = std::sqrt(closure);
  summary["start"] = vec_json(first.state.x, n);
  summary["end"] = state_to_json(last.state);

  emit(csv.str(), summary, a.out, out, err);
  if (!a.svg.empty()) {
    std::vector<PlotPoint> pts;
    for (const auto& s : trace.samples) pts.push_back({s.state.x[0], s.state.x[1]});
    write_file(a.svg, svg_polylines({pts}));
  }
  return trace.completed() ? kExitOk : kExitAbort;
}

Complex complex_arg(const std::vector<double>& v, const char* name) {
  if (v.size() != 2) throw ConfigError(std::string("--") + name + " takes two numbers (real and imaginary part)");
  return {v[0], v[1]};
}

int cmd_lox_flat(const LoxArgs& a, std::ostream& out, std::ostream& err) {
  if (a.p.empty()) throw ConfigError("missing required field 'p' (--p)");
  const Complex p = complex_arg(a.p, "p");
  if (a.theta.size() != 2) throw ConfigError("--theta takes two numbers");
  if (a.samples < 1) throw ConfigError("--samples must be at least 1");
  LoxodromeSpec spec;
  try {
    spec = a.q.empty() ? LoxodromeSpec::spiral(p, a.beta) : LoxodromeSpec::two_point(p, complex_arg(a.q, "q"), a.beta);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto samples = sample_loxodrome(spec, a.theta[0], a.theta[1], a.samples);
  std::ostringstream csv;
  write_loxodrome_csv(csv, samples);

  json poles = json::array();
  std::vector<std::vector<PlotPoint>> lines(1);
  for (const auto& s : samples) {
    if (s.pole) {
      poles.push_back(s.theta);
      if (!lines.back().empty()) lines.emplace_back();
      continue;
    }
    lines.back().push_back({s.z.real(), s.z.imag()});
  }
  json summary;
  summary["command"] = "lox-flat";
  summary["p"] = {p.real(), p.imag()};
  summary["q"] = spec.q ? json{spec.q->real(), spec.q->imag()} : json(nullptr);
  summary["beta"] = a.beta;
  summary["theta"] = {a.theta[0], a.theta[1]};
  summary["samples"] = a.samples;
  summary["poles"] = poles;
  for (const auto& s : samples) {
    if (s.pole) continue;
    summary["start"] = {s.z.real(), s.z.imag()};
    break;
  }
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (it->pole) continue;
    summary["end"] = {it->z.real(), it->z.imag()};
    break;
  }
  emit(csv.str(), summary, a.out, out, err);
  if (!a.svg.empty()) write_file(a.svg, svg_polylines(lines));
  return kExitOk;
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const KillingCoefficients k{a.u, a.v, a.lambda, a.F, a.P, a.Q};
  Classification c;
  try {
    c = classify(k);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  json r;
  r["kind"] = kind_name(c.kind);
  r["beta"] = c.beta ? json(*c.beta) : json(nullptr);
  r["handedness"] = handedness_name(c.handedness);
  r["discriminant"] = {c.discriminant.real(), c.discriminant.imag()};
  out << r.dump() << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const VerifyReport report = run_verify(a.suite, a.seed);
  const std::string body = report.to_json().dump(2) + "\n";
  if (!a.out.empty()) write_file(a.out, body);
  out << body;
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformal curves: circles, loxodromes and tractor checks"};
  app.name("conflox");
  app.require_subcommand(1);

  IntegrateArgs ia;
  auto* integrate_cmd = app.add_subcommand("integrate", "Integrate a curve equation and write a CSV trace");
  integrate_cmd->add_option("model", ia.model, "circle, loxodrome or dk4")->required();
  integrate_cmd->add_option("--metric", ia.metric, "metric spec: JSON, file, or kind name");
  integrate_cmd->add_option("--rho", ia.rho, "Rho: flat-model, constant-curvature, schouten or JSON components");
  integrate_cmd->add_option("--init", ia.init, "initial data JSON {x, U, A, J, kappa} or file");
  integrate_cmd->add_option("--scheme", ia.scheme, "rk4 or rk45")->capture_default_str();
  integrate_cmd->add_option("--step", ia.step, "step in arc length")->capture_default_str();
  integrate_cmd->add_option("--tol", ia.tol, "rk45 error target")->capture_default_str();
  integrate_cmd->add_option("--length", ia.length, "arc length to integrate")->capture_default_str();
  integrate_cmd->add_option("--drift", ia.drift, "constraint drift abort threshold")->capture_default_str();
  integrate_cmd->add_option("--chart-bound", ia.chart_bound, "abort when a coordinate exceeds this")->capture_default_str();
  integrate_cmd->add_flag("--renormalise", ia.renormalise, "renormalise U and project A, J after every step");
  integrate_cmd->add_option("--out", ia.out, "CSV output path");
  integrate_cmd->add_option("--svg", ia.svg, "SVG output path");
  integrate_cmd->add_option("--seed", ia.seed, "recorded in the summary");

  LoxArgs la;
  auto* lox_cmd = app.add_subcommand("lox-flat", "Sample the flat-model loxodrome from p to q");
  lox_cmd->add_option("--p", la.p, "source point: re im")->expected(2);
  lox_cmd->add_option("--q", la.q, "sink point: re im (omit for infinity)")->expected(2);
  lox_cmd->add_option("--beta", la.beta, "bearing")->capture_default_str();
  lox_cmd->add_option("--theta", la.theta, "theta range: from to")->expected(2);
  lox_cmd->add_option("--samples", la.samples, "number of samples")->capture_default_str();
  lox_cmd->add_option("--out", la.out, "CSV output path");
  lox_cmd->add_option("--svg", la.svg, "SVG output path");

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Classify the orbits of a flat-model conformal Killing field");
  classify_cmd->add_option("--u", ca.u);
  classify_cmd->add_option("--v", ca.v);
  classify_cmd->add_option("--lambda", ca.lambda);
  classify_cmd->add_option("--F", ca.F);
  classify_cmd->add_option("--P", ca.P);
  classify_cmd->add_option("--Q", ca.Q);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run seeded property suites and print a JSON report");
  verify_cmd->add_option("suite", va.suite, "transforms, tractor, flat-model, invariance or all")->required();
  verify_cmd->add_option("--seed", va.seed)->capture_default_str();
  verify_cmd->add_option("--out", va.out, "also write the report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*integrate_cmd) return cmd_integrate(ia, out, err);
    if (*lox_cmd) return cmd_lox_flat(la, out, err);
    if (*classify_cmd) return cmd_classify(ca, out);
    if (*verify_cmd) return cmd_verify(va, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAbort;
  }
  return kExitConfig;
}

}  // namespace conflox
