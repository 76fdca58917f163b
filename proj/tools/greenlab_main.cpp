#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "greenlab/error.hpp"
#include "greenlab/scenario/report.hpp"

namespace fs = std::filesystem;
using namespace greenlab;
using namespace greenlab::scenario;

namespace {

void print_registry() {
  for (const Experiment& e : experiment_registry())
    std::printf("%-24s %s%s\n", e.name.c_str(), e.description.c_str(), e.refine ? " [converge]" : "");
}

int run(const std::string& config, std::string out_dir, int jobs) {
  const Scenario sc = load_scenario(config);
  if (out_dir.empty()) out_dir = sc.output;
  fs::create_directories(out_dir);

  std::vector<const Experiment*> todo;
  for (const std::string& name : sc.experiments) todo.push_back(find_experiment(name));
  std::vector<ExperimentResult> results(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      results[i] = run_experiment(*todo[i], sc);
      if (results[i].error.empty()) write_csv((fs::path(out_dir) / (todo[i]->name + ".csv")).string(), results[i].table);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  bool all = true;
  for (const ExperimentResult& r : results) {
    std::printf("%-24s %s  %.1fs\n", r.experiment.c_str(), r.pass() ? "pass" : "FAIL", r.seconds);
    if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    for (const Metric& m : r.metrics)
      std::printf("    %-34s %-14.6g %s %-10.3g %s\n", m.name.c_str(), m.value, m.lower_bound ? ">=" : "<=",
                  m.tolerance, m.pass() ? "ok" : "FAIL");
    all = all && r.pass();
  }
  std::ofstream js(fs::path(out_dir) / "summary.json");
  js << summary(sc, results).dump(2) << '\n';
  std::printf("summary: %s\n", (fs::path(out_dir) / "summary.json").string().c_str());
  return all ? 0 : 1;
}

int converge(const std::string& config, const std::string& name, int levels, std::string out_dir) {
  const Scenario sc = load_scenario(config);
  const Experiment* e = find_experiment(name);
  if (!e) throw ConfigError("--experiment", "unknown experiment '" + name + "'");
  const auto rows = convergence_table(sc, *e, levels);
  std::printf("%-14s %-14s %s\n", "h", "error", "ratio");
  for (const ConvergenceRow& r : rows)
    std::printf("%-14.6g %-14.6g %s\n", r.h, r.error, r.ratio ? cell(*r.ratio).c_str() : "");
  if (out_dir.empty()) out_dir = sc.output;
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / (name + "_convergence.csv");
  write_csv(path.string(), convergence_csv_table(rows));
  std::printf("table: %s\n", path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greenlab: Green's operators, Hadamard expansions and CCR quantization on model spacetimes"};
  app.require_subcommand(0, 1);
  bool list_flag = false;
  app.add_flag("--list", list_flag, "Print the experiment registry");

  std::string config, out_dir, experiment;
  int jobs = 1, levels = 3;
  auto* run_cmd = app.add_subcommand("run", "Run the experiments of a scenario");
  run_cmd->add_option("config", config, "Scenario JSON")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (default: the scenario's output field)");
  run_cmd->add_option("--jobs", jobs, "Experiments run concurrently")->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "Print the experiment registry");

  auto* conv_cmd = app.add_subcommand("converge", "Error table under grid refinement");
  conv_cmd->add_option("config", config, "Scenario JSON")->required();
  conv_cmd->add_option("--experiment", experiment, "Experiment name")->required();
  conv_cmd->add_option("--levels", levels, "Number of refinement levels")->check(CLI::PositiveNumber);
  conv_cmd->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_flag || *list_cmd) {
      print_registry();
      return 0;
    }
    if (*run_cmd) return run(config, out_dir, jobs);
    if (*conv_cmd) return converge(config, experiment, levels, out_dir);
    std::cout << app.help();
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
