#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greenlab/scenario/scenario.hpp"

namespace greenlab::scenario {

/// A scalar outcome with its pass rule: value <= tolerance, or value >= tolerance
/// for lower bounds.
struct Metric {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;

  bool pass() const;
};

/// Plot-ready table; cells are preformatted.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string cell(double v);

struct ExperimentResult {
  std::string experiment;
  std::vector<Metric> metrics;
  Table table;
  double seconds = 0.0;
  std::string error;  // set when the experiment threw

  bool pass() const;
};

struct Experiment {
  std::string name;
  std::string description;
  std::function<ExperimentResult(const Scenario&)> run;
  /// (spacing, error) at a refinement level; empty for experiments without refinement.
  std::function<std::pair<double, double>(const Scenario&, int)> refine;
};

const std::vector<Experiment>& experiment_registry();
std::vector<std::string> experiment_names();
const Experiment* find_experiment(const std::string& name);

/// Runs one experiment, catching library errors into the result.
ExperimentResult run_experiment(const Experiment& e, const Scenario& sc);

struct ConvergenceRow {
  double h = 0.0;
  double error = 0.0;
  std::optional<double> ratio;  // error of the previous row over this one
};

/// Levels 0 .. levels-1; throws DomainError if the experiment has no refinement.
std::vector<ConvergenceRow> convergence_table(const Scenario& sc, const Experiment& e, int levels);

}  // namespace greenlab::scenario
