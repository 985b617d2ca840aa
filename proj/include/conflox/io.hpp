#pragma once

// JSON configuration, CSV traces and SVG polylines.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "conflox/curve_engine.hpp"

namespace conflox {

using json = nlohmann::ordered_json;

// {"kind":"flat"|"sphere"|"hyperbolic"|"cylinder"|"isothermal"|"general", ...}.
// A bare string is read as {"kind": string}. Throws ConfigError naming the bad field.
MetricField metric_from_json(const json& spec);

// "flat-model" | "constant-curvature" | "schouten" | {"P11":"<expr>", "P12":..., "P22":...}
MobiusStructure structure_from_json(const MetricField& metric, const json& rho);

// {x:[..], U:[..], A:[..], J:[..], kappa:..}; J and kappa may be omitted.
KinematicState state_from_json(const json& spec, int dim);
json state_to_json(const KinematicState& s);
json tractor_to_json(const AdjointTractor& T);

// Inline JSON if the text starts with '{', '[' or '"'; otherwise the contents
// of the named file if it exists; otherwise the text as a JSON string.
json read_json_argument(const std::string& text, const std::string& field);

// Round-trip decimal with 17 significant digits.
std::string csv_number(double v);

void write_trace_csv(std::ostream& out, const CurveTrace& trace);
void write_loxodrome_csv(std::ostream& out, const std::vector<LoxodromeSample>& samples);

struct PlotPoint {
  double x = 0.0, y = 0.0;
};
// One polyline per entry, scaled into a square viewport with y pointing up.
std::string svg_polylines(const std::vector<std::vector<PlotPoint>>& lines, double size = 512.0);

}  // namespace conflox
