#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "conflox/cli.hpp"
#include "conflox/io.hpp"

using namespace conflox;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "conflox_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

const std::string kCircleInit = R"({"x":[0.5,0.25],"U":[0.6,0.8],"A":[-0.8,0.6]})";

}  // namespace

TEST_CASE("integrate a flat circle") {
  const auto csv = scratch("circle.csv"), svg = scratch("circle.svg");
  const auto r = run({"integrate", "circle", "--metric", R"({"kind":"flat"})", "--init", kCircleInit, "--length",
                      "6.283185307179586", "--out", csv.string(), "--svg", svg.string()});
  REQUIRE(r.code == 0);
  const auto summary = json::parse(r.out);
  CHECK(summary["termination"] == "max-length");
  CHECK(summary["max_res"].get<double>() < 1e-7);
  CHECK(summary["closure"].get<double>() < 1e-7);
  const auto rows = csv_rows(slurp(csv));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == std::vector<std::string>{"s", "x1", "x2", "U1", "U2", "A1", "A2", "J1", "J2", "kappa", "res_unit",
                                            "res_orthoA", "res_orthoJ", "res_null"});
  CHECK(rows[1].size() == 14);
  CHECK(rows[1][7].empty());
  CHECK(rows[1][9].empty());
  const auto& last = rows.back();
  CHECK(std::hypot(std::stod(last[1]) - 0.5, std::stod(last[2]) - 0.25) < 1e-7);
  CHECK(slurp(svg).find("<polyline") != std::string::npos);
}

TEST_CASE("integration outcomes and configuration errors") {
  auto r = run({"integrate", "loxodrome", "--metric", "flat", "--init",
                R"({"x":[0,0],"U":[1,0],"A":[0,1],"J":[0,0],"kappa":0})", "--length", "1", "--out",
                scratch("stalled.csv").string()});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["termination"] == "degenerate-jerk");

  r = run({"integrate", "circle", "--init", kCircleInit});
  CHECK(r.code == 2);
  CHECK(r.err.find("metric") != std::string::npos);
  r = run({"integrate", "circle", "--metric", "flat"});
  CHECK(r.code == 2);
  CHECK(r.err.find("init") != std::string::npos);
  r = run({"integrate", "spiral", "--metric", "flat", "--init", kCircleInit});
  CHECK(r.code == 2);
  r = run({"integrate", "circle", "--metric", R"({"kind":"torus"})", "--init", kCircleInit});
  CHECK(r.code == 2);
  CHECK(r.err.find("torus") != std::string::npos);
  r = run({"integrate", "circle", "--metric", "{\"kind\":", "--init", kCircleInit});
  CHECK(r.code == 2);
  r = run({"integrate", "circle", "--metric", "flat", "--init", R"({"x":[0,0],"U":[2,0],"A":[0,1]})"});
  CHECK(r.code == 2);
  r = run({"integrate", "circle", "--metric", "flat", "--init", R"({"x":[0,0],"U":[1,0]})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("'A'") != std::string::npos);
  r = run({"integrate", "circle", "--metric", "flat", "--init", kCircleInit, "--step", "-1"});
  CHECK(r.code == 2);
  r = run({"integrate", "circle", "--metric", "flat", "--rho", R"({"P11":"x","P12":"0"})", "--init", kCircleInit});
  CHECK(r.code == 2);
  CHECK(r.err.find("P22") != std::string::npos);
  r = run({"frobnicate"});
  CHECK(r.code == 2);
}

TEST_CASE("sphere metric with constant-curvature rho from a file") {
  const auto metric = scratch("sphere.json");
  std::ofstream(metric) << R"({"kind":"sphere","K":1.0})";
  // unit speed for the sphere metric at the origin is 1/2
  const auto r = run({"integrate", "circle", "--metric", metric.string(), "--rho", "constant-curvature", "--init",
                      R"({"x":[0,0],"U":[0.5,0],"A":[0,0]})", "--length", "1.5707963267948966", "--out",
                      scratch("great.csv").string()});
  REQUIRE(r.code == 0);
  const auto summary = json::parse(r.out);
  CHECK(summary["rho_provenance"] == "constant-curvature");
  // a quarter of the great circle through the origin reaches the unit circle
  CHECK(std::abs(summary["end"]["x"][0].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(summary["end"]["x"][1].get<double>()) < 1e-9);
}

TEST_CASE("runs are reproducible byte for byte") {
  const std::vector<std::string> base{"integrate", "loxodrome", "--metric", R"({"kind":"isothermal","omega":"1+x^2/4"})",
                                      "--rho", "flat-model", "--init",
                                      R"({"x":[0,0.2],"U":[1,0],"A":[0,0.5],"J":[0,0.3],"kappa":0.2})",
                                      "--length", "2", "--seed", "7"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", scratch("a.csv").string()});
  b.insert(b.end(), {"--out", scratch("b.csv").string()});
  const auto ra = run(a), rb = run(b);
  REQUIRE(ra.code == 0);
  CHECK(slurp(scratch("a.csv")) == slurp(scratch("b.csv")));
  CHECK(ra.out == rb.out);
  CHECK(json::parse(ra.out)["config"]["seed"] == 7);
  const auto v1 = run({"verify", "tractor", "--seed", "11"}), v2 = run({"verify", "tractor", "--seed", "11"});
  CHECK(v1.out == v2.out);
}

TEST_CASE("csv numbers round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(csv_number(v)) == v);
  }
  CHECK(csv_number(-0.0) == "0");
}

TEST_CASE("flat loxodromes") {
  auto r = run({"lox-flat", "--p", "1", "0", "--q", "-1", "0.5", "--beta", "1", "--theta", "-40", "40", "--samples",
                "101", "--out", scratch("lox.csv").string(), "--svg", scratch("lox.svg").string()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(scratch("lox.csv")));
  CHECK(rows[0] == std::vector<std::string>{"theta", "re_z", "im_z"});
  REQUIRE(rows.size() == 102);
  CHECK(std::hypot(std::stod(rows[1][1]) - 1, std::stod(rows[1][2])) < 1e-6);
  CHECK(std::hypot(std::stod(rows.back()[1]) + 1, std::stod(rows.back()[2]) - 0.5) < 1e-6);
  CHECK(slurp(scratch("lox.svg")).find("<polyline") != std::string::npos);

  r = run({"lox-flat", "--p", "1", "0", "--q", "-1", "0.5", "--theta", "0.25", "1", "--samples", "1"});
  REQUIRE(r.code == 0);
  const auto single = csv_rows(r.out);
  REQUIRE(single.size() == 2);
  const Complex z = loxodrome_point(LoxodromeSpec::two_point({1, 0}, {-1, 0.5}, 1.0), 0.25);
  CHECK(std::stod(single[1][1]) == z.real());
  CHECK(std::stod(single[1][2]) == z.imag());

  CHECK(run({"lox-flat", "--p", "1", "0", "--q", "-1", "0.5", "--beta", "0"}).code == 2);
  CHECK(run({"lox-flat", "--p", "1", "0", "--q", "1", "0"}).code == 2);
  CHECK(run({"lox-flat"}).code == 2);

  // q = p exp((1+i)/2) puts a pole at theta = 1/2
  const Complex q = std::exp(Complex(1.0, 1.0) * 0.5);
  r = run({"lox-flat", "--p", "1", "0", "--q", format_real(q.real()), format_real(q.imag()), "--theta", "0", "1",
           "--samples", "3", "--out", scratch("pole.csv").string()});
  REQUIRE(r.code == 0);
  const auto summary = json::parse(r.out);
  REQUIRE(summary["poles"].size() == 1);
  CHECK(csv_rows(slurp(scratch("pole.csv"))).size() == 3);
}

TEST_CASE("classify") {
  auto r = run({"classify", "--F", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["kind"] == "circular");
  r = run({"classify", "--lambda", "1"});
  CHECK(json::parse(r.out)["kind"] == "radial");
  r = run({"classify", "--lambda", "1", "--F", "1"});
  const auto j = json::parse(r.out);
  CHECK(j["kind"] == "loxodromic");
  CHECK(j["beta"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.out.find("\"beta\":1.0") != std::string::npos);
  CHECK(run({"classify"}).code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify", "transforms", "--seed", "1"});
  CHECK(r.code == 0);
  auto report = json::parse(r.out);
  CHECK(report["passed"] == true);
  for (const auto& c : report["checks"]) CHECK(c["observed"].get<double>() <= c["tolerance"].get<double>());

  r = run({"verify", "flat-model", "--seed", "2"});
  CHECK(r.code == 0);
  report = json::parse(r.out);
  bool found = false;
  for (const auto& c : report["checks"]) found = found || c["anchor"].get<std::string>().find("(beta+i)^2") != std::string::npos;
  CHECK(found);
  CHECK(run({"verify", "everything"}).code == 2);
}
