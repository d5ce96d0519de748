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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cli_io.hpp"
#include "rotovort/rotovort.h"

namespace fs = std::filesystem;
using namespace rvcli;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kNotConverged = 3, kIo = 4 };

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("rotovort");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ROTOVORT_LOG")) {
    const auto lvl = spdlog::level::from_str(env);
    if (lvl == spdlog::level::off && std::string(env) != "off")
      spdlog::warn("ROTOVORT_LOG='{}' not recognized, keeping 'warn'", env);
    else
      spdlog::set_level(lvl);
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + p.string());
  return f;
}

int run_sweep_to(const RunConfig& cfg, Format fmt) {
  bool converged = true, ok = true;
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.output.dir.empty()) {
    file = open_out(fs::path(cfg.output.dir) / (fmt == Format::Csv ? "sweep.csv" : "sweep.jsonl"));
    out = &file;
  }
  const auto& cols = sweep_columns();
  if (fmt == Format::Csv) *out << csv_header(cols) << std::flush;
  run_sweep(cfg, [&](const ResultRecord& r) {
    if (fmt == Format::Csv)
      *out << csv_row(cols, r);
    else
      *out << record_to_json(cols, r).dump() << '\n';
    out->flush();
    if (!*out) throw IoError("write failed");
    converged = converged && std::get<bool>(r.at("converged"));
    ok = ok && std::get<std::string>(r.at("status")) == "ok";
  });
  if (!ok) return kFailure;
  return converged ? kOk : kNotConverged;
}

int run(Command cmd, const RunConfig& cfg, Format fmt) {
  if (cmd == Command::Sweep) return run_sweep_to(cfg, fmt);
  const auto result = run_command(cmd, cfg);
  const auto write = [&](std::ostream& os) {
    if (fmt == Format::Csv)
      emit_csv(os, result.table);
    else
      emit_json(os, result.table, result.extras);
  };
  if (cfg.output.dir.empty()) {
    write(std::cout);
  } else {
    const fs::path dir(cfg.output.dir);
    auto f = open_out(dir / (std::string(to_string(cmd)) + (fmt == Format::Csv ? ".csv" : ".json")));
    write(f);
    if (!f) throw IoError("write failed");
    if (cmd == Command::Lattice) {
      auto p = open_out(dir / "lattice_points.json");
      p << result.extras["points"].dump(2) << '\n';
    }
    if (cmd == Command::Gp) {
      auto p = open_out(dir / "vortices.json");
      p << result.extras["vortices"].dump(2) << '\n';
      auto d = open_out(dir / "field.csv");
      d << result.field_dump;
    }
  }
  if (!result.all_ok) return kFailure;
  return result.all_converged ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"rotovort: rotating Bose gases, GP and TF variational machinery"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, format;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::vector<std::string> overrides;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--jobs", jobs, "parallel sweep points (overrides config)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", overrides, "override a config value, block.key=value (repeatable)");

  const char* help[] = {"two-body scattering length",
                        "2D flat-trap Thomas-Fermi minimizer",
                        "3D homogeneous-trap Thomas-Fermi minimizer",
                        "scaling map and ultrarapid limit",
                        "minimize the 2D GP functional and count vortices",
                        "vortex-lattice trial state",
                        "giant-vortex trial state (2D, or 3D with giant.dimension = 3)",
                        "asymptotic regime and subleading energy",
                        "harmonic-trap estimates near the critical frequency",
                        "epsilon x Omega sweep of the energy table",
                        "run the invariant suite"};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (auto c : all_commands()) subs.emplace_back(app.add_subcommand(to_string(c), help[static_cast<int>(c)]), c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  Command cmd = Command::Check;
  for (const auto& [sub, c] : subs)
    if (sub->parsed()) cmd = c;

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw IoError("cannot open config file " + config_path);
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError({config_path + ": " + e.what()});
      }
    }
    for (const auto& o : overrides) apply_override(doc, o);
    if (*seed_opt) doc["seed"] = seed;
    if (jobs > 0) doc["jobs"] = jobs;
    if (!out_dir.empty()) doc["output"]["dir"] = out_dir;
    if (!format.empty()) doc["output"]["format"] = format;
    const RunConfig cfg = config_from_json(doc);
    if (!cfg.output.dir.empty()) {
      std::error_code ec;
      fs::create_directories(cfg.output.dir, ec);
      if (ec) throw IoError("cannot create " + cfg.output.dir + ": " + ec.message());
    }
    spdlog::info("rotovort {} {}", rv_version(), to_string(cmd));
    return run(cmd, cfg, cfg.output.format == "json" ? Format::Json : Format::Csv);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << "config error: " << p << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
