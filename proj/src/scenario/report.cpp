#include "greenlab/scenario/report.hpp"

#include <cmath>
#include <fstream>

#include "greenlab/error.hpp"

namespace greenlab::scenario {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << "\r\n";
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
}

Table convergence_csv_table(const std::vector<ConvergenceRow>& rows) {
  Table t;
  t.columns = {"h", "error", "ratio"};
  for (const ConvergenceRow& r : rows) t.add({cell(r.h), cell(r.error), r.ratio ? cell(*r.ratio) : ""});
  return t;
}

nlohmann::json summary_records(const std::vector<ExperimentResult>& results) {
  nlohmann::json recs = nlohmann::json::array();
  for (const ExperimentResult& r : results) {
    if (!r.error.empty()) {
      recs.push_back({{"experiment", r.experiment}, {"metric", "error"}, {"value", nullptr},
                      {"tolerance", nullptr}, {"pass", false}, {"message", r.error}});
      continue;
    }
    for (const Metric& m : r.metrics) {
      nlohmann::json v = std::isfinite(m.value) ? nlohmann::json(m.value) : nlohmann::json(nullptr);
      recs.push_back({{"experiment", r.experiment}, {"metric", m.name}, {"value", v},
                      {"tolerance", m.tolerance}, {"pass", m.pass()}});
    }
  }
  return recs;
}

nlohmann::json summary(const Scenario& sc, const std::vector<ExperimentResult>& results) {
  bool all = true;
  nlohmann::json timing = nlohmann::json::object();
  for (const ExperimentResult& r : results) {
    all = all && r.pass();
    timing[r.experiment] = r.seconds;
  }
  return {{"scenario", sc.name}, {"config", sc.resolved}, {"results", summary_records(results)},
          {"seconds", timing}, {"pass", all}};
}

}  // namespace greenlab::scenario
