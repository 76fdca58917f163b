#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "greenlab/cauchy/grid.hpp"
#include "greenlab/hadamard/operator.hpp"

namespace greenlab::scenario {

struct SpacetimeSpec {
  std::string kind = "minkowski";  // minkowski | cylinder | flrw_cosh | arc
  double radius = 1.0;
  double t_min = -20.0, t_max = 20.0;
  double theta_a = -3.0, theta_b = 3.0;  // strip or arc range; ignored on circles
  std::string fiber = "line";            // flrw_cosh only: line | circle
};

struct OperatorSpec {
  std::string b = "mass2";  // mass2 | scal_prop | table
  double mass = 1.0;
  double coupling = 1.0 / 6.0;
  std::vector<double> table;  // b(t) sampled uniformly on [t_min, t_max]
};

/// Level-0 grid; level l halves both spacings.
struct GridSpec {
  double t_a = -0.4, t_b = 2.0;
  int nt = 151, ntheta = 260;
  double courant_limit = cauchy::kSafeCourant;
};

struct BumpSpec {
  double t = 0.0, theta = 0.0, radius = 0.5;
};

struct QuantSpec {
  int d = 9;
  int nmax = 24;
};

struct Scenario {
  std::string name;
  SpacetimeSpec spacetime;
  OperatorSpec op;
  GridSpec grid;
  std::vector<BumpSpec> bumps;
  QuantSpec quant;
  std::vector<std::string> experiments;
  std::string output = "out";
  nlohmann::json resolved;  // the full configuration after defaults are applied

  geometry::Spacetime make_spacetime() const;
  hadamard::ScalarOperator make_operator() const;
  /// The level-l grid on the scenario spacetime (periodic on circle fibers).
  cauchy::GridPtr make_grid(int level = 0) const;
};

/// Parses and validates; throws ConfigError naming the offending field.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

}  // namespace greenlab::scenario
