#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "greenlab/scenario/experiments.hpp"

namespace greenlab::scenario {

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF; quotes doubled.
std::string csv_field(const std::string& s);
void write_csv(const std::string& path, const Table& t);

Table convergence_csv_table(const std::vector<ConvergenceRow>& rows);

/// Records {experiment, metric, value, tolerance, pass}, one per metric; a failed
/// experiment contributes a single record with metric "error".
nlohmann::json summary_records(const std::vector<ExperimentResult>& results);
nlohmann::json summary(const Scenario& sc, const std::vector<ExperimentResult>& results);

}  // namespace greenlab::scenario
