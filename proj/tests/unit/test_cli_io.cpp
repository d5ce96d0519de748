// Copyright 2026 The rotovort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "cli_io.hpp"

using namespace rvcli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(ROTOVORT_TEST_TMP);
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> problems_of(const json& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems)
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

double real_of(const ResultRecord& r, const std::string& k) { return std::get<double>(r.at(k)); }

std::string csv_of(const Table& t) {
  std::ostringstream out;
  emit_csv(out, t);
  return out.str();
}

}  // namespace

TEST_CASE("command names round-trip") {
  for (Command c : all_commands()) CHECK(command_from(to_string(c)) == c);
  CHECK(all_commands().size() == 11);
  CHECK_FALSE(command_from("bogus").has_value());
}

TEST_CASE("minimal gp config parses") {
  const auto p = write_file("minimal.json", R"({"schema_version": 1, "gas": {"epsilon": 0.1, "Omega": 0}})");
  const auto cfg = parse_config(p);
  CHECK(cfg.gas.epsilon == 0.1);
  CHECK(cfg.gas.Omega == 0.0);
  CHECK(cfg.grid.n_r == 128);
  CHECK(cfg.schema_version == 1);
}

TEST_CASE("invalid values are named") {
  const auto probs = problems_of(json::parse(R"({"gas": {"epsilon": -1}})"));
  REQUIRE(probs.size() == 1);
  CHECK(mentions(probs, "gas.epsilon"));
}

TEST_CASE("unknown keys are rejected with a suggestion") {
  const auto probs = problems_of(json::parse(R"({"gas": {"epsilonn": 0.1}})"));
  REQUIRE(probs.size() == 1);
  CHECK(mentions(probs, "epsilonn"));
  CHECK(mentions(probs, "did you mean 'epsilon'"));
  CHECK(mentions(problems_of(json::parse(R"({"gass": {}})")), "'gas'"));
  CHECK(suggest("epsilonn", {"epsilon", "Omega"}) == std::optional<std::string>("epsilon"));
  CHECK_FALSE(suggest("zzzzzzzz", {"epsilon", "Omega"}).has_value());
}

TEST_CASE("all problems are reported at once") {
  const auto probs = problems_of(json::parse(
      R"({"gas": {"epsilon": -1, "Omega": -2}, "grid": {"n_r": 3, "n_theta": 33}, "solver": {"tol": 0}, "colour": 1})"));
  CHECK(probs.size() >= 5);
  CHECK(mentions(probs, "gas.epsilon"));
  CHECK(mentions(probs, "gas.Omega"));
  CHECK(mentions(probs, "grid.n_r"));
  CHECK(mentions(probs, "grid.n_theta"));
  CHECK(mentions(probs, "solver.tol"));
  CHECK(mentions(probs, "colour"));
}

TEST_CASE("type errors and cross-field checks") {
  CHECK(mentions(problems_of(json::parse(R"({"gas": {"epsilon": "small"}})")), "gas.epsilon"));
  CHECK(mentions(problems_of(json::parse(R"({"schema_version": 2})")), "schema_version"));
  CHECK(mentions(problems_of(json::parse(R"({"harmonic": {"omega_osc": 1, "Omega": 1.5}})")), "harmonic"));
  CHECK(mentions(problems_of(json::parse(R"({"giant": {"dimension": 3}, "trap": {"form": "anisotropic"}})")), "giant"));
  CHECK(mentions(problems_of(json::parse(R"({"solver": {"init": "random"}})")), "solver.init"));
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS(parse_config(scratch("does_not_exist.json")), IoError);
  CHECK_THROWS_AS(parse_config(write_file("broken.json", "{\"gas\": ")), ConfigError);
}

TEST_CASE("overrides and config round trip") {
  json doc = json::parse(R"({"gas": {"epsilon": 0.1}})");
  apply_override(doc, "gas.Omega=3.5");
  apply_override(doc, "grid.n_r=64");
  apply_override(doc, "solver.init=constant");
  apply_override(doc, "sweep.Omega=[1,2,3]");
  const auto cfg = config_from_json(doc);
  CHECK(cfg.gas.Omega == 3.5);
  CHECK(cfg.grid.n_r == 64);
  CHECK(cfg.solver.init == "constant");
  CHECK(cfg.sweep.Omega == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(apply_override(doc, "novalue"), ConfigError);
  const json again = config_to_json(config_from_json(config_to_json(cfg)));
  CHECK(again == config_to_json(cfg));
}

TEST_CASE("CSV emission") {
  Table t;
  t.columns = {{"x", ColumnType::Real}, {"n", ColumnType::Integer}, {"ok", ColumnType::Boolean}, {"note", ColumnType::Text}};
  CHECK(csv_of(t) == "x,n,ok,note\n");
  t.rows.push_back({{"x", 0.1}, {"n", std::int64_t{-3}}, {"ok", true}, {"note", std::string("a,\"b\"")}});
  const std::string one = csv_of(t);
  CHECK(one == "x,n,ok,note\n0.10000000000000001,-3,true,\"a,\"\"b\"\"\"\n");
  CHECK(one.find('\r') == std::string::npos);
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(1e300) == "1.0000000000000001e+300");
  CHECK(std::stod(format_real(M_PI)) == M_PI);
}

TEST_CASE("JSON records round-trip") {
  const std::vector<Column> cols{{"a", ColumnType::Real}, {"b", ColumnType::Real}, {"c", ColumnType::Real},
                                 {"k", ColumnType::Integer}, {"f", ColumnType::Boolean}, {"s", ColumnType::Text}};
  Table t;
  t.columns = cols;
  t.rows.push_back({{"a", 0.1 + 0.2}, {"b", std::numeric_limits<double>::quiet_NaN()},
                    {"c", -std::numeric_limits<double>::infinity()}, {"k", std::int64_t{1} << 60}, {"f", false},
                    {"s", std::string("x\ny")}});
  t.rows.push_back({{"a", 5e-324}, {"b", -0.0}, {"c", 1.7976931348623157e308}, {"k", std::int64_t{-1}}, {"f", true},
                    {"s", std::string()}});
  std::ostringstream out;
  emit_json(out, t);
  const auto back = table_from_json(cols, json::parse(out.str()));
  REQUIRE(back.rows.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) CHECK(same_records(back.rows[k], t.rows[k]));
  CHECK(std::signbit(std::get<double>(back.rows[1].at("b"))));
  std::ostringstream again;
  emit_json(again, back);
  CHECK(again.str() == out.str());
  const std::string text = out.str();
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("\"k\"") < text.find("\"s\""));
}

TEST_CASE("value comparison is bitwise") {
  CHECK(same_value(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()));
  CHECK_FALSE(same_value(0.0, -0.0));
  CHECK_FALSE(same_value(1.0, std::int64_t{1}));
}

TEST_CASE("a one-point sweep equals the direct commands") {
  RunConfig cfg = config_from_json(json::parse(R"({
    "seed": 3, "gas": {"epsilon": 0.2, "Omega": 6}, "grid": {"n_r": 32, "n_theta": 64},
    "solver": {"init": "tf_phase_noise", "max_iters": 400},
    "sweep": {"epsilon": [0.2], "Omega": [6]}})"));
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(std::get<std::string>(r.at("status")) == "ok");
  const auto tf = run_command(Command::Tf2d, cfg).table.rows.at(0);
  const auto gp = run_command(Command::Gp, cfg).table.rows.at(0);
  const auto lat = run_command(Command::Lattice, cfg).table.rows.at(0);
  const auto giant = run_command(Command::Giant, cfg).table.rows.at(0);
  CHECK(same_value(r.at("E_TF"), tf.at("E_TF")));
  CHECK(same_value(r.at("E_GP"), gp.at("E_GP")));
  CHECK(same_value(r.at("iterations"), gp.at("iterations")));
  CHECK(same_value(r.at("n_vortices"), gp.at("n_vortices")));
  CHECK(same_value(r.at("E_trial_lattice"), lat.at("E_trial_lattice")));
  CHECK(same_value(r.at("E_trial_giant"), giant.at("E_trial_giant")));
  CHECK(same_value(r.at("predicted_subleading"), lat.at("predicted_subleading")));
}

TEST_CASE("a sweep with one unresolvable point keeps going") {
  RunConfig cfg = config_from_json(json::parse(R"({
    "grid": {"n_r": 64, "n_theta": 128},
    "sweep": {"epsilon": [0.1, 0.2, 0.3], "Omega": [5, 20, 50], "quantities": ["tf", "lattice", "giant", "asympt"]}})"));
  std::vector<ResultRecord> streamed;
  const auto rows = run_sweep(cfg, [&](const ResultRecord& r) { streamed.push_back(r); });
  REQUIRE(rows.size() == 9);
  REQUIRE(streamed.size() == 9);
  int ok = 0, bad = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(same_records(rows[k], streamed[k]));
    const bool good = std::get<std::string>(rows[k].at("status")) == "ok";
    (good ? ok : bad) += 1;
    if (!good) {
      CHECK(real_of(rows[k], "epsilon") == 0.1);
      CHECK(real_of(rows[k], "Omega") == 50.0);
      CHECK(!std::get<std::string>(rows[k].at("error")).empty());
      CHECK(std::isfinite(real_of(rows[k], "E_TF")));
    } else {
      CHECK(std::isfinite(real_of(rows[k], "E_trial_lattice")));
    }
  }
  CHECK(ok == 8);
  CHECK(bad == 1);
  CHECK(real_of(rows[3], "epsilon") == 0.2);
  CHECK(real_of(rows[3], "Omega") == 5.0);
}

TEST_CASE("sweeps are byte-identical across reruns and job counts") {
  const json doc = json::parse(R"({
    "seed": 11, "grid": {"n_r": 32, "n_theta": 64}, "solver": {"max_iters": 300},
    "sweep": {"epsilon": [0.15, 0.3], "Omega": [0, 7]}})");
  auto render = [&](int jobs) {
    RunConfig cfg = config_from_json(doc);
    cfg.jobs = jobs;
    Table t;
    t.columns = sweep_columns();
    t.rows = run_sweep(cfg);
    return csv_of(t);
  };
  const std::string a = render(1);
  CHECK(a == render(1));
  CHECK(a == render(2));
}

TEST_CASE("the invariant suite passes") {
  for (const auto& c : run_checks(0)) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}
