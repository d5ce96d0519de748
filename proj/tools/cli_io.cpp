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


#include "cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace rvcli {

namespace {

constexpr const char* kCommandNames[] = {"scatter", "tf2d",   "tf3d",     "regime", "gp",   "lattice",
                                         "giant",   "asympt", "harmonic", "sweep",  "check"};

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string type_name(const json& j) { return j.type_name(); }

// Reads one config block, recording every problem instead of stopping at the first.
class Block {
 public:
  Block(const json& parent, std::string name, std::vector<std::string>& errors)
      : name_(std::move(name)), errors_(errors) {
    if (!parent.contains(name_)) return;
    const auto& j = parent.at(name_);
    if (!j.is_object()) {
      errors_.push_back(name_ + ": expected an object, got " + type_name(j));
      return;
    }
    obj_ = &j;
  }

  template <class T, class Check>
  Block& field(const char* key, T& out, Check check) {
    known_.push_back(key);
    if (!obj_ || !obj_->contains(key)) return *this;
    const auto& j = obj_->at(key);
    const std::string where = name_ + "." + key;
    if (!read(j, out, where)) return *this;
    if (auto msg = check(out)) errors_.push_back(where + ": " + *msg);
    return *this;
  }

  template <class T>
  Block& field(const char* key, T& out) {
    return field(key, out, [](const T&) -> std::optional<std::string> { return std::nullopt; });
  }

  void finish() {
    if (!obj_) return;
    for (const auto& [k, _] : obj_->items()) {
      if (std::find(known_.begin(), known_.end(), k) != known_.end()) continue;
      std::string msg = name_ + ": unknown key '" + k + "'";
      if (auto s = suggest(k, known_)) msg += " (did you mean '" + *s + "'?)";
      errors_.push_back(msg);
    }
  }

 private:
  bool bad(const std::string& where, const char* want, const json& j) {
    errors_.push_back(where + ": expected " + want + ", got " + type_name(j));
    return false;
  }

  bool read(const json& j, double& out, const std::string& where) {
    if (!j.is_number()) return bad(where, "a number", j);
    out = j.get<double>();
    return true;
  }
  bool read(const json& j, int& out, const std::string& where) {
    if (!j.is_number_integer()) return bad(where, "an integer", j);
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      errors_.push_back(where + ": integer out of range");
      return false;
    }
    out = static_cast<int>(v);
    return true;
  }
  bool read(const json& j, std::uint64_t& out, const std::string& where) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
      out = j.get<std::uint64_t>();
      return true;
    }
    return bad(where, "a non-negative integer", j);
  }
  bool read(const json& j, bool& out, const std::string& where) {
    if (!j.is_boolean()) return bad(where, "a boolean", j);
    out = j.get<bool>();
    return true;
  }
  bool read(const json& j, std::string& out, const std::string& where) {
    if (!j.is_string()) return bad(where, "a string", j);
    out = j.get<std::string>();
    return true;
  }
  bool read(const json& j, std::vector<double>& out, const std::string& where) {
    if (!j.is_array()) return bad(where, "an array of numbers", j);
    std::vector<double> v;
    for (const auto& e : j) {
      if (!e.is_number()) return bad(where, "an array of numbers", j);
      v.push_back(e.get<double>());
    }
    out = std::move(v);
    return true;
  }
  bool read(const json& j, std::vector<std::string>& out, const std::string& where) {
    if (!j.is_array()) return bad(where, "an array of strings", j);
    std::vector<std::string> v;
    for (const auto& e : j) {
      if (!e.is_string()) return bad(where, "an array of strings", j);
      v.push_back(e.get<std::string>());
    }
    out = std::move(v);
    return true;
  }

  std::string name_;
  std::vector<std::string>& errors_;
  const json* obj_ = nullptr;
  std::vector<std::string> known_;
};

using Msg = std::optional<std::string>;

auto positive = [](double x) -> Msg {
  if (std::isfinite(x) && x > 0.0) return std::nullopt;
  return "must be finite and > 0";
};
auto nonneg = [](double x) -> Msg {
  if (std::isfinite(x) && x >= 0.0) return std::nullopt;
  return "must be finite and >= 0";
};
auto finite = [](double x) -> Msg {
  if (std::isfinite(x)) return std::nullopt;
  return "must be finite";
};
auto at_least = [](int lo) {
  return [lo](int x) -> Msg {
    if (x >= lo) return std::nullopt;
    return "must be >= " + std::to_string(lo);
  };
};
auto one_of = [](std::vector<std::string> options) {
  return [options](const std::string& x) -> Msg {
    if (std::find(options.begin(), options.end(), x) != options.end()) return std::nullopt;
    std::string msg = "'" + x + "' is not one of";
    for (const auto& o : options) msg += " " + o;
    if (auto s = suggest(x, options)) msg += " (did you mean '" + *s + "'?)";
    return msg;
  };
};
auto not_empty = [](const std::vector<double>& v) -> Msg {
  if (!v.empty()) return std::nullopt;
  return "must not be empty";
};

}  // namespace

const char* to_string(Command c) { return kCommandNames[static_cast<int>(c)]; }

std::optional<Command> command_from(std::string_view name) {
  for (int k = 0; k < 11; ++k)
    if (name == kCommandNames[k]) return static_cast<Command>(k);
  return std::nullopt;
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> all{Command::Scatter, Command::Tf2d,    Command::Tf3d,  Command::Regime,
                                        Command::Gp,      Command::Lattice, Command::Giant, Command::Asympt,
                                        Command::Harmonic, Command::Sweep,  Command::Check};
  return all;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string s = "invalid configuration:";
        for (const auto& p : problems) s += "\n  " + p;
        return s;
      }()),
      problems_(std::move(problems)) {}

std::optional<std::string> suggest(std::string_view key, const std::vector<std::string>& candidates) {
  std::optional<std::string> best;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (const auto& c : candidates) {
    const auto d = edit_distance(key, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (best && best_d <= std::max<std::size_t>(2, key.size() / 3)) return best;
  return std::nullopt;
}

RunConfig config_from_json(const json& doc) {
  std::vector<std::string> errors;
  RunConfig c;
  if (!doc.is_object()) throw ConfigError({"top level: expected an object, got " + type_name(doc)});

  static const std::vector<std::string> top{"schema_version", "seed", "jobs",    "gas",        "grid",
                                            "solver",         "census", "pair_potential", "trap", "lattice",
                                            "giant",          "ultrarapid", "harmonic", "sweep", "output"};
  json root = json::object();
  root["root"] = doc;
  Block r(root, "root", errors);
  r.field("schema_version", c.schema_version, [](int v) -> Msg {
     if (v == 1) return std::nullopt;
     return "unsupported schema version " + std::to_string(v) + " (expected 1)";
   })
      .field("seed", c.seed)
      .field("jobs", c.jobs, at_least(1));
  for (const auto& [k, _] : doc.items()) {
    if (std::find(top.begin(), top.end(), k) != top.end()) continue;
    std::string msg = "unknown key '" + k + "'";
    if (auto s = suggest(k, top)) msg += " (did you mean '" + *s + "'?)";
    errors.push_back(msg);
  }

  Block(doc, "gas", errors).field("epsilon", c.gas.epsilon, positive).field("Omega", c.gas.Omega, nonneg).finish();

  Block(doc, "grid", errors)
      .field("n_r", c.grid.n_r, at_least(16))
      .field("n_theta", c.grid.n_theta,
             [](int n) -> Msg {
               if (n >= 8 && n % 2 == 0) return std::nullopt;
               return "must be even and >= 8";
             })
      .finish();

  Block(doc, "solver", errors)
      .field("tau", c.solver.tau, positive)
      .field("tol", c.solver.tol, positive)
      .field("max_iters", c.solver.max_iters, at_least(1))
      .field("patience", c.solver.patience, at_least(1))
      .field("conjugate", c.solver.conjugate)
      .field("shift", c.solver.shift, finite)
      .field("init", c.solver.init, one_of({"constant", "tf_phase_noise", "center_vortex", "lattice", "best"}))
      .finish();

  Block(doc, "census", errors)
      .field("density_floor", c.census.density_floor,
             [](double x) -> Msg {
               if (std::isfinite(x) && x >= 0.0 && x < 1.0) return std::nullopt;
               return "must lie in [0, 1)";
             })
      .field("core_radius", c.census.core_radius, finite)
      .finish();

  Block(doc, "pair_potential", errors)
      .field("kind", c.pair_potential.kind, one_of({"hard_core", "square_barrier", "tabulated"}))
      .field("height", c.pair_potential.height, nonneg)
      .field("radius", c.pair_potential.radius, nonneg)
      .field("r", c.pair_potential.r)
      .field("v", c.pair_potential.v)
      .field("r_max", c.pair_potential.r_max, finite)
      .field("steps", c.pair_potential.steps, at_least(10))
      .finish();
  if (c.pair_potential.kind == "tabulated") {
    const auto& p = c.pair_potential;
    if (p.r.size() < 2 || p.r.size() != p.v.size())
      errors.push_back("pair_potential: tabulated needs r and v arrays of equal length >= 2");
    if (!std::is_sorted(p.r.begin(), p.r.end()) || std::adjacent_find(p.r.begin(), p.r.end()) != p.r.end())
      errors.push_back("pair_potential.r: must be strictly increasing");
    if (std::any_of(p.v.begin(), p.v.end(), [](double x) { return !(x >= 0.0) || !std::isfinite(x); }))
      errors.push_back("pair_potential.v: values must be finite and >= 0");
  }

  Block(doc, "trap", errors)
      .field("form", c.trap.form, one_of({"radial_z", "anisotropic"}))
      .field("c_r", c.trap.c_r, positive)
      .field("c_x", c.trap.c_x, positive)
      .field("c_y", c.trap.c_y, positive)
      .field("c_z", c.trap.c_z, positive)
      .field("s", c.trap.s,
             [](double s) -> Msg {
               if (std::isfinite(s) && s > 2.0) return std::nullopt;
               return "must be > 2";
             })
      .field("g", c.trap.g, positive)
      .field("Omega", c.trap.Omega, nonneg)
      .field("omega_lo", c.trap.omega_lo, positive)
      .field("omega_hi", c.trap.omega_hi, positive)
      .finish();
  if (c.trap.omega_hi < c.trap.omega_lo) errors.push_back("trap: omega_hi must be >= omega_lo");

  Block(doc, "lattice", errors)
      .field("type", c.lattice.type, one_of({"triangular", "square"}))
      .field("core_radius", c.lattice.core_radius, finite)
      .field("r_inner", c.lattice.r_inner, nonneg)
      .field("r_outer", c.lattice.r_outer, positive)
      .finish();
  if (!(c.lattice.r_outer > c.lattice.r_inner) || c.lattice.r_outer > 1.0)
    errors.push_back("lattice: need 0 <= r_inner < r_outer <= 1");

  Block(doc, "giant", errors)
      .field("dimension", c.giant.dimension,
             [](int d) -> Msg {
               if (d == 2 || d == 3) return std::nullopt;
               return "must be 2 or 3";
             })
      .field("n_r", c.giant.n_r, at_least(8))
      .field("n_z", c.giant.n_z, at_least(8))
      .finish();
  if (c.giant.dimension == 3 && c.trap.form != "radial_z")
    errors.push_back("giant: the 3D giant vortex needs trap.form = radial_z");

  Block(doc, "ultrarapid", errors).field("delta", c.ultrarapid.delta, finite).field("g", c.ultrarapid.g, positive).finish();

  Block(doc, "harmonic", errors)
      .field("omega_osc", c.harmonic.omega_osc, positive)
      .field("Omega", c.harmonic.Omega, nonneg)
      .field("N", c.harmonic.N, positive)
      .field("a", c.harmonic.a, positive)
      .field("k_lo", c.harmonic.k_lo, positive)
      .field("k_hi", c.harmonic.k_hi, positive)
      .finish();
  if (c.harmonic.k_hi < c.harmonic.k_lo) errors.push_back("harmonic: k_hi must be >= k_lo");
  if (std::isfinite(c.harmonic.Omega) && c.harmonic.omega_osc > 0.0 &&
      c.harmonic.Omega >= std::numbers::sqrt2 * c.harmonic.omega_osc)
    errors.push_back("harmonic.Omega: must be below Omega_c = sqrt(2) omega_osc (effective potential unbounded)");

  Block(doc, "sweep", errors)
      .field("epsilon", c.sweep.epsilon, not_empty)
      .field("Omega", c.sweep.Omega, not_empty)
      .field("omega_scale", c.sweep.omega_scale, one_of({"absolute", "inverse_epsilon"}))
      .field("quantities", c.sweep.quantities,
             [](const std::vector<std::string>& q) -> Msg {
               static const std::vector<std::string> ok{"tf", "lattice", "giant", "gp", "asympt"};
               for (const auto& x : q)
                 if (std::find(ok.begin(), ok.end(), x) == ok.end()) return one_of(ok)(x);
               return std::nullopt;
             })
      .finish();

  Block(doc, "output", errors)
      .field("dir", c.output.dir)
      .field("format", c.output.format, one_of({"csv", "json"}))
      .finish();

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path.string() + ": " + e.what()});
  }
  return config_from_json(doc);
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError({"override '" + std::string(assignment) + "': expected key=value"});
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError({"override '" + key + "': empty path component"});
    if (!node->is_object()) throw ConfigError({"override '" + key + "': '" + part + "' is not inside an object"});
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

json config_to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  j["gas"] = {{"epsilon", c.gas.epsilon}, {"Omega", c.gas.Omega}};
  j["grid"] = {{"n_r", c.grid.n_r}, {"n_theta", c.grid.n_theta}};
  j["solver"] = {{"tau", c.solver.tau},           {"tol", c.solver.tol},           {"max_iters", c.solver.max_iters},
                 {"patience", c.solver.patience}, {"conjugate", c.solver.conjugate}, {"shift", c.solver.shift},
                 {"init", c.solver.init}};
  j["census"] = {{"density_floor", c.census.density_floor}, {"core_radius", c.census.core_radius}};
  j["pair_potential"] = {{"kind", c.pair_potential.kind}, {"height", c.pair_potential.height},
                         {"radius", c.pair_potential.radius}, {"r", c.pair_potential.r},
                         {"v", c.pair_potential.v},        {"r_max", c.pair_potential.r_max},
                         {"steps", c.pair_potential.steps}};
  j["trap"] = {{"form", c.trap.form}, {"c_r", c.trap.c_r}, {"c_x", c.trap.c_x},   {"c_y", c.trap.c_y},
               {"c_z", c.trap.c_z},   {"s", c.trap.s},     {"g", c.trap.g},       {"Omega", c.trap.Omega},
               {"omega_lo", c.trap.omega_lo}, {"omega_hi", c.trap.omega_hi}};
  j["lattice"] = {{"type", c.lattice.type}, {"core_radius", c.lattice.core_radius},
                  {"r_inner", c.lattice.r_inner}, {"r_outer", c.lattice.r_outer}};
  j["giant"] = {{"dimension", c.giant.dimension}, {"n_r", c.giant.n_r}, {"n_z", c.giant.n_z}};
  j["ultrarapid"] = {{"delta", c.ultrarapid.delta}, {"g", c.ultrarapid.g}};
  j["harmonic"] = {{"omega_osc", c.harmonic.omega_osc}, {"Omega", c.harmonic.Omega}, {"N", c.harmonic.N},
                   {"a", c.harmonic.a},                 {"k_lo", c.harmonic.k_lo},   {"k_hi", c.harmonic.k_hi}};
  j["sweep"] = {{"epsilon", c.sweep.epsilon}, {"Omega", c.sweep.Omega}, {"omega_scale", c.sweep.omega_scale},
                {"quantities", c.sweep.quantities}};
  j["output"] = {{"dir", c.output.dir}, {"format", c.output.format}};
  return j;
}

// ---------------------------------------------------------------------------

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    if (std::isnan(*x) && std::isnan(y)) return true;
    return std::memcmp(x, &y, sizeof y) == 0;
  }
  return a == b;
}

bool same_records(const ResultRecord& a, const ResultRecord& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !same_value(ia->second, ib->second)) return false;
  return true;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>)
          return format_real(x);
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(x);
        else if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else
          return csv_escape(x);
      },
      v);
}

}  // namespace

std::string csv_header(const std::vector<Column>& columns) {
  std::string s;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) s += ',';
    s += csv_escape(columns[k].name);
  }
  return s + '\n';
}

std::string csv_row(const std::vector<Column>& columns, const ResultRecord& r) {
  std::string s;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) s += ',';
    if (auto it = r.find(columns[k].name); it != r.end()) s += cell(it->second);
  }
  return s + '\n';
}

void emit_csv(std::ostream& out, const Table& t) {
  out << csv_header(t.columns);
  for (const auto& r : t.rows) out << csv_row(t.columns, r);
}

json record_to_json(const std::vector<Column>& columns, const ResultRecord& r) {
  json j = json::object();
  for (const auto& c : columns) {
    auto it = r.find(c.name);
    if (it == r.end()) continue;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(x))
              j[c.name] = x;
            else
              j[c.name] = format_real(x);
          } else {
            j[c.name] = x;
          }
        },
        it->second);
  }
  return j;
}

ResultRecord record_from_json(const std::vector<Column>& columns, const json& j) {
  ResultRecord r;
  for (const auto& c : columns) {
    if (!j.contains(c.name)) continue;
    const auto& v = j.at(c.name);
    switch (c.type) {
      case ColumnType::Real:
        if (v.is_string()) {
          const auto s = v.get<std::string>();
          if (s == "nan")
            r[c.name] = std::numeric_limits<double>::quiet_NaN();
          else if (s == "inf")
            r[c.name] = std::numeric_limits<double>::infinity();
          else if (s == "-inf")
            r[c.name] = -std::numeric_limits<double>::infinity();
          else
            throw IoError("column " + c.name + ": bad real '" + s + "'");
        } else {
          r[c.name] = v.get<double>();
        }
        break;
      case ColumnType::Integer:
        r[c.name] = v.get<std::int64_t>();
        break;
      case ColumnType::Boolean:
        r[c.name] = v.get<bool>();
        break;
      case ColumnType::Text:
        r[c.name] = v.get<std::string>();
        break;
    }
  }
  return r;
}

json table_to_json(const Table& t, const json& extras) {
  json j = extras.is_object() ? extras : json::object();
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back(record_to_json(t.columns, r));
  j["records"] = std::move(rows);
  return j;
}

Table table_from_json(const std::vector<Column>& columns, const json& j) {
  Table t{columns, {}};
  for (const auto& r : j.at("records")) t.rows.push_back(record_from_json(columns, r));
  return t;
}

void emit_json(std::ostream& out, const Table& t, const json& extras) { out << table_to_json(t, extras).dump(2) << '\n'; }

}  // namespace rvcli
