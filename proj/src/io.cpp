#include "conflox/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace conflox {

namespace {

const json& field(const json& spec, const char* name, const std::string& context) {
  if (!spec.is_object() || !spec.contains(name)) throw ConfigError(context + ": missing field '" + name + "'");
  return spec.at(name);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

Expr expression(const json& v, const std::string& what) {
  if (v.is_number()) return Expr(v.get<double>());
  if (!v.is_string()) throw ConfigError(what + " must be an expression string");
  return parse(v.get<std::string>());
}

int dimension(const json& spec, int fallback) {
  if (!spec.contains("dim")) return fallback;
  const json& d = spec.at("dim");
  if (!d.is_number_integer()) throw ConfigError("metric.dim must be 2 or 3");
  const int n = d.get<int>();
  if (n != 2 && n != 3) throw ConfigError("metric.dim must be 2 or 3");
  return n;
}

Vec vector(const json& v, int dim, const std::string& what) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw ConfigError(what + " must be an array of " + std::to_string(dim) + " numbers");
  }
  Vec out{};
  for (int a = 0; a < dim; ++a) out[a] = number(v[a], what);
  return out;
}

}  // namespace

MetricField metric_from_json(const json& spec_in) {
  const json spec = spec_in.is_string() ? json{{"kind", spec_in}} : spec_in;
  if (!spec.is_object()) throw ConfigError("metric must be a JSON object or a kind name");
  const json& kind_v = field(spec, "kind", "metric");
  if (!kind_v.is_string()) throw ConfigError("metric.kind must be a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind == "flat") return MetricField::flat(dimension(spec, 2));
  if (kind == "sphere") return MetricField::sphere(dimension(spec, 2), spec.contains("K") ? number(spec["K"], "metric.K") : 1.0);
  if (kind == "hyperbolic") {
    return MetricField::hyperbolic(dimension(spec, 2), spec.contains("K") ? number(spec["K"], "metric.K") : -1.0);
  }
  if (kind == "cylinder") return MetricField::cylinder_gauge();
  if (kind == "isothermal") {
    return MetricField::isothermal(dimension(spec, 2), expression(field(spec, "omega", "metric"), "metric.omega"));
  }
  if (kind == "general") {
    const json& g = field(spec, "g", "metric");
    const int n = dimension(spec, 3);
    if (!g.is_array() || static_cast<int>(g.size()) != n) throw ConfigError("metric.g must be a 3x3 array");
    Matrix<Expr> comp{};
    for (int a = 0; a < n; ++a) {
      if (!g[a].is_array() || static_cast<int>(g[a].size()) != n) throw ConfigError("metric.g must be a 3x3 array");
      for (int b = 0; b < n; ++b) comp[a][b] = expression(g[a][b], "metric.g");
    }
    return MetricField::general(n, comp);
  }
  throw ConfigError("metric.kind '" + kind + "' is not one of flat, sphere, hyperbolic, cylinder, isothermal, general");
}

MobiusStructure structure_from_json(const MetricField& metric, const json& rho) {
  if (rho.is_null()) return metric.dim() == 2 ? MobiusStructure::flat_model(metric) : MobiusStructure::schouten_structure(metric);
  if (rho.is_string()) {
    const std::string name = rho.get<std::string>();
    if (name == "flat-model") return MobiusStructure::flat_model(metric);
    if (name == "constant-curvature") return MobiusStructure::constant_curvature(metric);
    if (name == "schouten") return MobiusStructure::schouten_structure(metric);
    throw ConfigError("rho '" + name + "' is not one of flat-model, constant-curvature, schouten");
  }
  const json& spec = rho.is_object() && rho.contains("rho") ? rho.at("rho") : rho;
  if (spec.is_string()) return structure_from_json(metric, spec);
  if (!spec.is_object()) throw ConfigError("rho must be a name or an object of components");
  const int n = metric.dim();
  Matrix<Expr> P{};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const std::string key = "P" + std::to_string(a + 1) + std::to_string(b + 1);
      P[a][b] = P[b][a] = expression(field(spec, key.c_str(), "rho"), "rho." + key);
    }
  return MobiusStructure::user(metric, P);
}

KinematicState state_from_json(const json& spec, int dim) {
  if (!spec.is_object()) throw ConfigError("init must be a JSON object");
  KinematicState s;
  s.dim = dim;
  s.x = vector(field(spec, "x", "init"), dim, "init.x");
  s.U = vector(field(spec, "U", "init"), dim, "init.U");
  s.A = vector(field(spec, "A", "init"), dim, "init.A");
  if (spec.contains("J")) s.J = vector(spec["J"], dim, "init.J");
  if (spec.contains("kappa")) {
    s.kappa = number(spec["kappa"], "init.kappa");
    s.has_kappa = true;
  }
  return s;
}

json state_to_json(const KinematicState& s) {
  auto arr = [&](const Vec& v) {
    json a = json::array();
    for (int i = 0; i < s.dim; ++i) a.push_back(v[i]);
    return a;
  };
  json out{{"x", arr(s.x)}, {"U", arr(s.U)}, {"A", arr(s.A)}, {"J", arr(s.J)}};
  out["kappa"] = s.has_kappa ? json(s.kappa) : json(nullptr);
  out["gauge"] = s.gauge;
  return out;
}

json tractor_to_json(const AdjointTractor& T) {
  json sigma = json::array(), rho = json::array();
  for (int i = 0; i < T.dim; ++i) {
    sigma.push_back(T.sigma[i]);
    rho.push_back(T.rho[i]);
  }
  json out{{"sigma", sigma}};
  if (T.dim == 2) {
    out["mu12"] = T.mu[0][1];
  } else {
    out["mu12"] = T.mu[0][1];
    out["mu13"] = T.mu[0][2];
    out["mu23"] = T.mu[1][2];
  }
  out["nu"] = T.nu;
  out["rho"] = rho;
  out["weight"] = T.weight;
  out["gauge"] = T.gauge;
  return out;
}

json read_json_argument(const std::string& text, const std::string& name) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw ConfigError(name + " is empty");
  const char c = text[first];
  auto parse_text = [&](const std::string& body, const std::string& where) {
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      throw ConfigError(name + ": invalid JSON in " + where + ": " + e.what());
    }
  };
  if (c == '{' || c == '[' || c == '"') return parse_text(text, "argument");
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), "file " + text);
  }
  return json(text);
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (v == 0.0) v = 0.0;  // no negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const CurveTrace& trace) {
  const int n = trace.samples.empty() ? 2 : trace.samples.front().state.dim;
  const bool has_jerk = trace.model != CurveModel::circle;
  const bool lox = trace.model == CurveModel::loxodrome;
  out << "s";
  for (const char* name : {"x", "U", "A", "J"})
    for (int a = 1; a <= n; ++a) out << ',' << name << a;
  out << ",kappa,res_unit,res_orthoA,res_orthoJ,res_null\n";
  for (const auto& smp : trace.samples) {
    const auto& s = smp.state;
    out << csv_number(smp.s);
    for (const Vec* v : {&s.x, &s.U, &s.A})
      for (int a = 0; a < n; ++a) out << ',' << csv_number((*v)[a]);
    for (int a = 0; a < n; ++a) out << ',' << (has_jerk ? csv_number(s.J[a]) : "");
    out << ',' << (lox ? csv_number(s.kappa) : "");
    out << ',' << csv_number(smp.residuals.unit) << ',' << csv_number(smp.residuals.ortho_A) << ','
        << (has_jerk ? csv_number(smp.residuals.ortho_J) : "") << ',' << (lox ? csv_number(smp.null_residual) : "")
        << '\n';
  }
}

void write_loxodrome_csv(std::ostream& out, const std::vector<LoxodromeSample>& samples) {
  out << "theta,re_z,im_z\n";
  for (const auto& s : samples) {
    if (s.pole) continue;
    out << csv_number(s.theta) << ',' << csv_number(s.z.real()) << ',' << csv_number(s.z.imag()) << '\n';
  }
}

std::string svg_polylines(const std::vector<std::vector<PlotPoint>>& lines, double size) {
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (const auto& line : lines)
    for (const auto& p : line) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  if (!(lo_x <= hi_x)) lo_x = hi_x = lo_y = hi_y = 0.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double margin = 0.05 * size, scale = (size - 2 * margin) / span;
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[64];
  for (const auto& line : lines) {
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    bool first = true;
    for (const auto& p : line) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      std::snprintf(buf, sizeof buf, "%.3f,%.3f", 0.5 * size + (p.x - cx) * scale, 0.5 * size - (p.y - cy) * scale);
      out << (first ? "" : " ") << buf;
      first = false;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace conflox
