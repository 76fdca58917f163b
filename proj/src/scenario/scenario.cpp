#include "greenlab/scenario/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "greenlab/error.hpp"
#include "greenlab/scenario/experiments.hpp"

namespace greenlab::scenario {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(path + key, "required field is missing");
  return j.at(key);
}

template <class T>
T read(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + key, "has the wrong type");
  }
}

template <class T>
T read_required(const json& j, const std::string& key, const std::string& path) {
  require(j, key, path);
  return read<T>(j, key, path, T{});
}

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

}  // namespace

geometry::Spacetime Scenario::make_spacetime() const {
  const SpacetimeSpec& s = spacetime;
  if (s.kind == "minkowski") return geometry::Spacetime::minkowski(s.t_min, s.t_max);
  if (s.kind == "cylinder") return geometry::Spacetime::cylinder(s.radius, s.t_min, s.t_max);
  if (s.kind == "flrw_cosh")
    return geometry::Spacetime::flrw_cosh(
        s.fiber == "circle" ? geometry::FiberKind::Circle : geometry::FiberKind::Line, s.radius, s.t_min,
        s.t_max);
  return geometry::Spacetime::arc(s.radius, s.theta_a, s.theta_b, s.t_min, s.t_max);
}

hadamard::ScalarOperator Scenario::make_operator() const {
  const geometry::Spacetime s = make_spacetime();
  if (op.b == "mass2") return hadamard::ScalarOperator::klein_gordon(s, op.mass);
  if (op.b == "scal_prop") return hadamard::ScalarOperator::scal_prop(s, op.coupling);
  const std::vector<double> tab = op.table;
  const double t0 = spacetime.t_min, t1 = spacetime.t_max;
  auto b = [tab, t0, t1](const geometry::Point& p) {
    const double u = std::clamp((p.t - t0) / (t1 - t0), 0.0, 1.0) * (tab.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(u), tab.size() - 2);
    const double a = u - i;
    return (1.0 - a) * tab[i] + a * tab[i + 1];
  };
  return hadamard::ScalarOperator::table(s, b, "table");
}

cauchy::GridPtr Scenario::make_grid(int level) const {
  const geometry::Spacetime s = make_spacetime();
  const int nt = (grid.nt - 1) * (1 << level) + 1, nth = grid.ntheta << level;
  if (s.fiber() == geometry::FiberKind::Circle)
    return cauchy::Grid::periodic(s, grid.t_a, grid.t_b, nt, nth, grid.courant_limit);
  const double a = s.fiber() == geometry::FiberKind::Arc ? s.arc_begin() : spacetime.theta_a;
  const double b = s.fiber() == geometry::FiberKind::Arc ? s.arc_end() : spacetime.theta_b;
  return cauchy::Grid::interval(s, grid.t_a, grid.t_b, a, b, nt, nth + 1, grid.courant_limit);
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ConfigError("(root)", "configuration must be a JSON object");
  Scenario sc;
  sc.name = read_required<std::string>(j, "name", "");

  const json& st = require(j, "spacetime", "");
  SpacetimeSpec& s = sc.spacetime;
  s.kind = read_required<std::string>(st, "kind", "spacetime.");
  check(s.kind == "minkowski" || s.kind == "cylinder" || s.kind == "flrw_cosh" || s.kind == "arc",
        "spacetime.kind", "must be one of minkowski, cylinder, flrw_cosh, arc");
  const bool cosh = s.kind == "flrw_cosh";
  s.radius = read(st, "radius", "spacetime.", 1.0);
  s.t_min = read(st, "t_min", "spacetime.", cosh ? -3.0 : -20.0);
  s.t_max = read(st, "t_max", "spacetime.", cosh ? 3.0 : 20.0);
  s.theta_a = read(st, "theta_a", "spacetime.", -3.0);
  s.theta_b = read(st, "theta_b", "spacetime.", 3.0);
  s.fiber = read<std::string>(st, "fiber", "spacetime.", "line");
  check(s.radius > 0.0, "spacetime.radius", "must be positive");
  check(s.t_max > s.t_min, "spacetime.t_max", "must exceed t_min");
  check(s.theta_b > s.theta_a, "spacetime.theta_b", "must exceed theta_a");
  check(s.fiber == "line" || s.fiber == "circle", "spacetime.fiber", "must be line or circle");

  const json& op = require(j, "operator", "");
  sc.op.b = read_required<std::string>(op, "b", "operator.");
  check(sc.op.b == "mass2" || sc.op.b == "scal_prop" || sc.op.b == "table", "operator.b",
        "must be one of mass2, scal_prop, table");
  sc.op.mass = read(op, "mass", "operator.", 1.0);
  sc.op.coupling = read(op, "coupling", "operator.", 1.0 / 6.0);
  sc.op.table = read(op, "table", "operator.", std::vector<double>{});
  check(sc.op.mass >= 0.0, "operator.mass", "must be nonnegative");
  if (sc.op.b == "table") check(sc.op.table.size() >= 2, "operator.table", "needs at least two samples");

  const json& g = require(j, "grid", "");
  sc.grid.nt = read_required<int>(g, "nt", "grid.");
  sc.grid.ntheta = read_required<int>(g, "ntheta", "grid.");
  sc.grid.t_a = read(g, "t_a", "grid.", sc.grid.t_a);
  sc.grid.t_b = read(g, "t_b", "grid.", sc.grid.t_b);
  sc.grid.courant_limit = read(g, "courant_limit", "grid.", cauchy::kSafeCourant);
  check(sc.grid.nt >= 3, "grid.nt", "must be at least 3");
  check(sc.grid.ntheta >= 8, "grid.ntheta", "must be at least 8");
  check(sc.grid.t_b > sc.grid.t_a, "grid.t_b", "must exceed grid.t_a");
  check(sc.grid.courant_limit > 0.0 && sc.grid.courant_limit <= 1.0, "grid.courant_limit",
        "must lie in (0, 1]");

  if (j.contains("bumps")) {
    check(j.at("bumps").is_array(), "bumps", "must be an array");
    for (std::size_t i = 0; i < j.at("bumps").size(); ++i) {
      const json& b = j.at("bumps")[i];
      const std::string p = "bumps[" + std::to_string(i) + "].";
      BumpSpec bs{read_required<double>(b, "t", p), read_required<double>(b, "theta", p),
                  read_required<double>(b, "radius", p)};
      check(bs.radius > 0.0, p + "radius", "must be positive");
      sc.bumps.push_back(bs);
    }
  } else {
    sc.bumps = {{0.6, -0.2, 0.3}, {0.9, 0.3, 0.25}, {0.5, 1.6, 0.3}};
  }

  if (j.contains("quant")) {
    sc.quant.d = read(j.at("quant"), "d", "quant.", sc.quant.d);
    sc.quant.nmax = read(j.at("quant"), "nmax", "quant.", sc.quant.nmax);
  }
  check(sc.quant.d >= 1 && sc.quant.d % 2 == 1, "quant.d", "must be a positive odd integer");
  check(sc.quant.nmax >= 2 && sc.quant.nmax <= 60, "quant.nmax", "must lie in [2, 60]");

  sc.experiments = read(j, "experiments", "", experiment_names());
  check(!sc.experiments.empty(), "experiments", "must not be empty");
  for (const std::string& e : sc.experiments)
    check(find_experiment(e) != nullptr, "experiments", "unknown experiment '" + e + "'");
  sc.output = read<std::string>(j, "output", "", "out/" + sc.name);

  // CFL is checked here so that a bad grid fails before any experiment runs
  try {
    sc.make_grid(0);
  } catch (const CflError& e) {
    throw ConfigError("grid.nt", e.what());
  } catch (const Error& e) {
    throw ConfigError("grid", e.what());
  }

  sc.resolved = {
      {"name", sc.name},
      {"spacetime",
       {{"kind", s.kind}, {"radius", s.radius}, {"t_min", s.t_min}, {"t_max", s.t_max},
        {"theta_a", s.theta_a}, {"theta_b", s.theta_b}, {"fiber", s.fiber}}},
      {"operator", {{"b", sc.op.b}, {"mass", sc.op.mass}, {"coupling", sc.op.coupling}, {"table", sc.op.table}}},
      {"grid",
       {{"t_a", sc.grid.t_a}, {"t_b", sc.grid.t_b}, {"nt", sc.grid.nt}, {"ntheta", sc.grid.ntheta},
        {"courant_limit", sc.grid.courant_limit}}},
      {"quant", {{"d", sc.quant.d}, {"nmax", sc.quant.nmax}}},
      {"experiments", sc.experiments},
      {"output", sc.output}};
  json bumps = json::array();
  for (const BumpSpec& b : sc.bumps) bumps.push_back({{"t", b.t}, {"theta", b.theta}, {"radius", b.radius}});
  sc.resolved["bumps"] = bumps;
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    const auto nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const auto col = nl == std::string::npos ? upto + 1 : upto - nl;
    throw ConfigError("(syntax)", "line " + std::to_string(line) + " column " + std::to_string(col) +
                                      ": " + e.what());
  }
  return parse_scenario(j);
}

}  // namespace greenlab::scenario
