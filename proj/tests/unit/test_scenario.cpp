#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "greenlab/error.hpp"
#include "greenlab/scenario/experiments.hpp"
#include "greenlab/scenario/report.hpp"
#include "greenlab/scenario/scenario.hpp"

using namespace greenlab;
using namespace greenlab::scenario;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "name": "t",
    "spacetime": {"kind": "minkowski"},
    "operator": {"b": "mass2", "mass": 0.5},
    "grid": {"nt": 151, "ntheta": 260}
  })");
}

std::string field_of(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal scenario gets defaults") {
  const Scenario sc = parse_scenario(minimal());
  CHECK(sc.name == "t");
  CHECK(sc.op.mass == 0.5);
  CHECK(sc.grid.t_a == -0.4);
  CHECK(sc.bumps.size() == 3);
  CHECK(sc.experiments == experiment_names());
  CHECK(sc.output == "out/t");
  CHECK(sc.resolved["grid"]["ntheta"] == 260);
  CHECK(sc.resolved["quant"]["d"] == 9);
  const auto g = sc.make_grid(1);
  CHECK(g->nt() == 301);
  CHECK(g->ntheta() == 521);
}

TEST_CASE("configuration errors name the field") {
  json j = minimal();
  j.erase("grid");
  CHECK(field_of(j) == "grid");

  j = minimal();
  j["grid"].erase("ntheta");
  CHECK(field_of(j) == "grid.ntheta");

  j = minimal();
  j["operator"]["mass"] = "heavy";
  CHECK(field_of(j) == "operator.mass");

  j = minimal();
  j["spacetime"]["kind"] = "torus";
  CHECK(field_of(j) == "spacetime.kind");

  j = minimal();
  j["experiments"] = {"locality", "nope"};
  CHECK(field_of(j) == "experiments");

  j = minimal();
  j["bumps"] = json::array({{{"t", 0.1}, {"theta", 0.0}}});
  CHECK(field_of(j) == "bumps[0].radius");

  j = minimal();
  j["quant"] = {{"d", 8}};
  CHECK(field_of(j) == "quant.d");

  // 6 time steps over 2.4 against a spatial step of 6/260
  j = minimal();
  j["grid"]["nt"] = 7;
  CHECK(field_of(j) == "grid.nt");

  CHECK(field_of(json::array()) == "(root)");
}

TEST_CASE("syntax errors report line and column") {
  const std::string path = "greenlab_test_bad.json";
  {
    std::ofstream out(path);
    out << "{\n  \"name\": \"x\",\n  \"grid\": {nt: 3}\n}\n";
  }
  try {
    load_scenario(path);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "(syntax)");
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_scenario("no/such/file.json"), ConfigError);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_field("") == "");
}

TEST_CASE("convergence table layout") {
  const Table one = convergence_csv_table({{0.1, 1e-3, std::nullopt}});
  CHECK(one.columns == std::vector<std::string>{"h", "error", "ratio"});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0][2].empty());

  const Table two = convergence_csv_table({{0.1, 4e-3, std::nullopt}, {0.05, 1e-3, 4.0}});
  REQUIRE(two.rows.size() == 2);
  CHECK(two.rows[1][2] == cell(4.0));

  const Scenario sc = parse_scenario(minimal());
  CHECK_THROWS_AS(convergence_table(sc, *find_experiment("locality"), 2), DomainError);
}

TEST_CASE("metrics and summary records") {
  CHECK(Metric{"a", 0.5, 1.0, false}.pass());
  CHECK_FALSE(Metric{"a", 1.5, 1.0, false}.pass());
  CHECK(Metric{"b", 4.0, 3.5, true}.pass());
  CHECK_FALSE(Metric{"b", 3.0, 3.5, true}.pass());

  ExperimentResult ok{"x", {{"m", 0.1, 1.0, false}}, {}, 0.0, ""};
  ExperimentResult bad{"y", {}, {}, 0.0, "boom"};
  CHECK(ok.pass());
  CHECK_FALSE(bad.pass());
  const json rec = summary_records({ok, bad});
  REQUIRE(rec.size() == 2);
  CHECK(rec[0]["experiment"] == "x");
  CHECK(rec[0]["pass"] == true);
  CHECK(rec[1]["metric"] == "error");
  CHECK(rec[1]["pass"] == false);
}

TEST_CASE("experiment registry") {
  const auto names = experiment_names();
  for (const char* n : {"riesz-identities", "hadamard-kg", "green-kernel-vs-bessel", "lightcone-asymptotics",
                        "locality", "time-slice", "weyl-fock"})
    CHECK(find_experiment(n) != nullptr);
  CHECK(names.size() == 7);
  CHECK(find_experiment("missing") == nullptr);
}
