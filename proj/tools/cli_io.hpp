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


// Configuration, result tables and sweep orchestration for the rotovort CLI.
// Everything numerical goes through the C interface in rotovort/rotovort.h.

#ifndef ROTOVORT_TOOLS_CLI_IO_HPP
#define ROTOVORT_TOOLS_CLI_IO_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace rvcli {

using json = nlohmann::json;

enum class Command { Scatter, Tf2d, Tf3d, Regime, Gp, Lattice, Giant, Asympt, Harmonic, Sweep, Check };

const char* to_string(Command c);
std::optional<Command> command_from(std::string_view name);
const std::vector<Command>& all_commands();

enum class Format { Csv, Json };

// ---------------------------------------------------------------------------
// configuration

struct GasBlock {
  double epsilon = 0.1;
  double Omega = 0.0;
};

struct GridBlock {
  int n_r = 128;
  int n_theta = 256;
};

struct SolverBlock {
  double tau = 1.0;
  double tol = 1e-10;
  int max_iters = 5000;
  int patience = 5;
  bool conjugate = true;
  double shift = -1.0;
  std::string init = "best";  // constant | tf_phase_noise | center_vortex | lattice | best
};

struct CensusBlock {
  double density_floor = 0.05;
  double core_radius = -1.0;
};

struct PotentialBlock {
  std::string kind = "square_barrier";  // hard_core | square_barrier | tabulated
  double height = 1.0;
  double radius = 1.0;
  std::vector<double> r;
  std::vector<double> v;
  double r_max = -1.0;  // <= 0: 10 x range
  int steps = 100000;
};

struct TrapBlock {
  std::string form = "radial_z";  // radial_z | anisotropic
  double c_r = 1.0, c_x = 1.0, c_y = 1.0, c_z = 1.0;
  double s = 4.0;
  double g = 1000.0;
  double Omega = 0.0;
  double omega_lo = 0.1;
  double omega_hi = 10.0;
};

struct LatticeBlock {
  std::string type = "triangular";
  double core_radius = -1.0;  // <= 0: optimal core radius
  double r_inner = 0.0;
  double r_outer = 1.0;
};

struct GiantBlock {
  int dimension = 2;
  int n_r = 1200;
  int n_z = 600;
};

struct UltrarapidBlock {
  double delta = -1.0;  // <= 0: Omega^{-1/2}
  double g = 1.0;
};

struct HarmonicBlock {
  double omega_osc = 1.0;
  double Omega = 0.0;
  double N = 1e6;
  double a = 1e-3;
  double k_lo = 10.0;
  double k_hi = 1e3;
};

struct SweepBlock {
  std::vector<double> epsilon{0.1};
  std::vector<double> Omega{0.0};
  std::string omega_scale = "absolute";  // absolute | inverse_epsilon
  std::vector<std::string> quantities{"tf", "lattice", "giant", "gp", "asympt"};
};

struct OutputBlock {
  std::string dir;
  std::string format = "csv";
};

struct RunConfig {
  int schema_version = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  GasBlock gas;
  GridBlock grid;
  SolverBlock solver;
  CensusBlock census;
  PotentialBlock pair_potential;
  TrapBlock trap;
  LatticeBlock lattice;
  GiantBlock giant;
  UltrarapidBlock ultrarapid;
  HarmonicBlock harmonic;
  SweepBlock sweep;
  OutputBlock output;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validates every block and throws ConfigError listing all problems found.
RunConfig config_from_json(const json& doc);
/// Reads and validates a config file. IoError if the file cannot be read.
RunConfig parse_config(const std::filesystem::path& path);
/// Applies "block.key=value" (value parsed as JSON, bare words as strings).
void apply_override(json& doc, std::string_view assignment);
json config_to_json(const RunConfig& cfg);

/// Closest candidate by edit distance, if it is close enough to be a likely typo.
std::optional<std::string> suggest(std::string_view key, const std::vector<std::string>& candidates);

// ---------------------------------------------------------------------------
// records

enum class ColumnType { Real, Integer, Boolean, Text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;
};

using Value = std::variant<double, std::int64_t, bool, std::string>;
using ResultRecord = std::map<std::string, Value>;

struct Table {
  std::vector<Column> columns;
  std::vector<ResultRecord> rows;
};

bool same_value(const Value& a, const Value& b);  // bitwise for doubles, NaN == NaN
bool same_records(const ResultRecord& a, const ResultRecord& b);

std::string format_real(double x);  // %.17g, nan, inf, -inf
std::string csv_header(const std::vector<Column>& columns);
std::string csv_row(const std::vector<Column>& columns, const ResultRecord& r);
void emit_csv(std::ostream& out, const Table& t);

json record_to_json(const std::vector<Column>& columns, const ResultRecord& r);
ResultRecord record_from_json(const std::vector<Column>& columns, const json& j);
/// {"records": [...]} with sorted keys, plus any extra members.
json table_to_json(const Table& t, const json& extras = json::object());
Table table_from_json(const std::vector<Column>& columns, const json& j);
void emit_json(std::ostream& out, const Table& t, const json& extras = json::object());

// ---------------------------------------------------------------------------
// running

struct CommandOutput {
  Table table;
  json extras = json::object();
  std::string field_dump;  // gp: CSV rows r, theta, re, im, density
  bool all_converged = true;
  bool all_ok = true;
};

/// Runs one non-sweep command.
CommandOutput run_command(Command c, const RunConfig& cfg);

const std::vector<Column>& sweep_columns();

/// One record per (epsilon, Omega) point in grid order; sink sees each record
/// in that order as soon as it and all earlier records are done.
std::vector<ResultRecord> run_sweep(const RunConfig& cfg,
                                    const std::function<void(const ResultRecord&)>& sink = {});

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_checks(std::uint64_t seed);

}  // namespace rvcli

#endif  // ROTOVORT_TOOLS_CLI_IO_HPP
