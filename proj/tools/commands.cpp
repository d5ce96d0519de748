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


#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <spdlog/spdlog.h>

#include "cli_io.hpp"
#include "rotovort/rotovort.h"

namespace rvcli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class RunError : public std::runtime_error {
 public:
  RunError(rv_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  rv_status status;
};

void check(rv_status s, const char* call) {
  if (s != RV_OK) throw RunError(s, std::string(call) + ": " + rv_status_name(s) + ": " + rv_last_error());
}

struct FieldDeleter {
  void operator()(rv_field* f) const { rv_field_destroy(f); }
};
struct LatticeDeleter {
  void operator()(rv_lattice* l) const { rv_lattice_destroy(l); }
};
struct TrialDeleter {
  void operator()(rv_trial* t) const { rv_trial_destroy(t); }
};
using Field = std::unique_ptr<rv_field, FieldDeleter>;
using Lattice = std::unique_ptr<rv_lattice, LatticeDeleter>;
using Trial = std::unique_ptr<rv_trial, TrialDeleter>;

Column real(const char* n) { return {n, ColumnType::Real}; }
Column integer(const char* n) { return {n, ColumnType::Integer}; }
Column boolean(const char* n) { return {n, ColumnType::Boolean}; }
Column text(const char* n) { return {n, ColumnType::Text}; }

rv_trap3d trap_of(const TrapBlock& t) {
  rv_trap3d out{};
  out.form = t.form == "anisotropic" ? RV_TRAP_ANISOTROPIC : RV_TRAP_RADIAL_Z;
  out.c_r = t.c_r;
  out.c_x = t.c_x;
  out.c_y = t.c_y;
  out.c_z = t.c_z;
  out.s = t.s;
  return out;
}

rv_minimize_options solver_of(const SolverBlock& s) {
  return {s.tau, s.tol, s.max_iters, s.patience, s.conjugate ? 1 : 0, s.shift};
}

Lattice make_lattice(double epsilon, double Omega, const LatticeBlock& lb, double* t_out) {
  double t = lb.core_radius;
  if (!(t > 0.0)) check(rv_optimal_core_radius(epsilon, Omega, &t), "rv_optimal_core_radius");
  rv_lattice* l = nullptr;
  check(rv_lattice_build(Omega, lb.r_inner, lb.r_outer, lb.type == "square" ? RV_LATTICE_SQUARE : RV_LATTICE_TRIANGULAR,
                         t, &l),
        "rv_lattice_build");
  if (t_out) *t_out = t;
  return Lattice(l);
}

Field sample_trial(const Trial& trial, const GridBlock& grid) {
  rv_field* f = nullptr;
  check(rv_trial_sample(trial.get(), grid.n_r, grid.n_theta, &f), "rv_trial_sample");
  return Field(f);
}

double field_energy(const rv_field* f) {
  rv_energy e;
  check(rv_field_energy(f, &e), "rv_field_energy");
  return e.total;
}

struct LatticeTrialResult {
  double energy = kNaN;
  double t = kNaN;
  Field field;
};

LatticeTrialResult lattice_trial_energy(double epsilon, double Omega, const LatticeBlock& lb, const GridBlock& grid) {
  LatticeTrialResult r;
  auto lattice = make_lattice(epsilon, Omega, lb, &r.t);
  // the core ramp must span at least one grid cell at the disc edge
  const double cell = std::max(1.0 / grid.n_r, 2.0 * std::numbers::pi / grid.n_theta);
  if (r.t < cell)
    throw RunError(RV_ERR_RANGE, "lattice core radius " + rvcli::format_real(r.t) + " is below the grid cell " +
                                     rvcli::format_real(cell) + "; refine the grid");
  rv_trial* tr = nullptr;
  check(rv_trial_lattice(epsilon, Omega, lattice.get(), r.t, &tr), "rv_trial_lattice");
  Trial trial(tr);
  r.field = sample_trial(trial, grid);
  r.energy = field_energy(r.field.get());
  return r;
}

double giant_trial_energy(double epsilon, double Omega, const GridBlock& grid, int* winding) {
  rv_trial* tr = nullptr;
  check(rv_trial_giant(epsilon, Omega, &tr), "rv_trial_giant");
  Trial trial(tr);
  if (winding) check(rv_trial_info(trial.get(), winding, nullptr), "rv_trial_info");
  auto f = sample_trial(trial, grid);
  return field_energy(f.get());
}

struct GpResult {
  Field field;
  rv_minimize_report report{};
  std::string init;
};

// Minimizes from each requested start and keeps the lowest energy.
GpResult minimize_best(double epsilon, double Omega, const RunConfig& cfg) {
  std::vector<std::string> starts;
  if (cfg.solver.init == "best")
    starts = {"constant", "tf_phase_noise", "center_vortex", "lattice"};
  else
    starts = {cfg.solver.init};
  const auto opts = solver_of(cfg.solver);
  GpResult best;
  for (const auto& s : starts) {
    Field f;
    if (s == "center_vortex") {
      if (!(Omega > 0.0)) continue;
      const double origin[2] = {0.0, 0.0};
      rv_lattice* raw = nullptr;
      check(rv_lattice_from_points(Omega, origin, 1, &raw), "rv_lattice_from_points");
      Lattice l(raw);
      rv_trial* tr = nullptr;
      check(rv_trial_lattice(epsilon, Omega, l.get(), epsilon, &tr), "rv_trial_lattice");
      f = sample_trial(Trial(tr), cfg.grid);
    } else if (s == "lattice") {
      if (!(Omega > 0.0)) continue;
      try {
        f = lattice_trial_energy(epsilon, Omega, cfg.lattice, cfg.grid).field;
      } catch (const RunError& e) {
        spdlog::debug("lattice start skipped at eps={} Omega={}: {}", epsilon, Omega, e.what());
        continue;
      }
    } else {
      rv_field* raw = nullptr;
      check(rv_field_create(epsilon, Omega, cfg.grid.n_r, cfg.grid.n_theta,
                            s == "constant" ? RV_INIT_CONSTANT : RV_INIT_TF_PHASE_NOISE, cfg.seed, &raw),
            "rv_field_create");
      f.reset(raw);
    }
    rv_minimize_report rep{};
    check(rv_field_minimize(f.get(), &opts, &rep), "rv_field_minimize");
    spdlog::debug("gp eps={} Omega={} start={} E={} iters={} converged={}", epsilon, Omega, s, rep.energy,
                  rep.iterations, rep.converged);
    if (!best.field || rep.energy < best.report.energy) {
      best.field = std::move(f);
      best.report = rep;
      best.init = s;
    }
  }
  if (!best.field) throw RunError(RV_ERR_ARGUMENT, "no usable initial state");
  return best;
}

std::vector<rv_vortex> census(const rv_field* f, const CensusBlock& cb, int* total) {
  size_t n = 0;
  check(rv_field_census(f, cb.density_floor, cb.core_radius, nullptr, 0, &n, total), "rv_field_census");
  std::vector<rv_vortex> v(n);
  if (n) check(rv_field_census(f, cb.density_floor, cb.core_radius, v.data(), n, &n, total), "rv_field_census");
  return v;
}

std::string field_dump(const rv_field* f) {
  int nr = 0, nt = 0;
  check(rv_field_shape(f, &nr, &nt), "rv_field_shape");
  const std::size_t n = static_cast<std::size_t>(nr) * static_cast<std::size_t>(nt);
  std::vector<double> v(2 * n);
  check(rv_field_get_values(f, v.data(), v.size()), "rv_field_get_values");
  std::string s = "r,theta,re,im,density\n";
  s.reserve(n * 100);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(j);
      const double re = v[2 * k], im = v[2 * k + 1];
      s += format_real((i + 0.5) / nr) + ',' + format_real(2.0 * std::numbers::pi * j / nt) + ',' + format_real(re) +
           ',' + format_real(im) + ',' + format_real(re * re + im * im) + '\n';
    }
  }
  return s;
}

std::string support_name(rv_support s) {
  switch (s) {
    case RV_SUPPORT_DISC:
      return "disc";
    case RV_SUPPORT_ANNULUS:
      return "annulus";
    case RV_SUPPORT_REGION3D:
      return "region3d";
  }
  return "?";
}

// ---------------------------------------------------------------------------

CommandOutput cmd_scatter(const RunConfig& cfg) {
  const auto& p = cfg.pair_potential;
  CommandOutput out;
  out.table.columns = {text("kind"), real("height"), real("radius"), real("r_max"), integer("steps"), real("a"),
                       real("a_closed_form")};
  double range = p.kind == "tabulated" ? p.r.back() : p.radius;
  double r_max = p.r_max > 0.0 ? p.r_max : 10.0 * std::max(range, 1e-300);
  double a = kNaN, closed = kNaN;
  if (p.kind == "hard_core") {
    check(rv_scattering_hard_core(p.radius, &a), "rv_scattering_hard_core");
    closed = p.radius;
  } else if (p.kind == "square_barrier") {
    check(rv_scattering_square_barrier(p.height, p.radius, r_max, static_cast<size_t>(p.steps), &a),
          "rv_scattering_square_barrier");
    const double kappa = std::sqrt(p.height / 2.0);
    closed = kappa * p.radius > 0.0 ? p.radius * (1.0 - std::tanh(kappa * p.radius) / (kappa * p.radius)) : 0.0;
  } else {
    check(rv_scattering_tabulated(p.r.data(), p.v.data(), p.r.size(), r_max, static_cast<size_t>(p.steps), &a),
          "rv_scattering_tabulated");
  }
  out.table.rows.push_back({{"kind", p.kind},
                            {"height", p.kind == "square_barrier" ? p.height : kNaN},
                            {"radius", p.kind == "tabulated" ? range : p.radius},
                            {"r_max", r_max},
                            {"steps", static_cast<std::int64_t>(p.steps)},
                            {"a", a},
                            {"a_closed_form", closed}});
  return out;
}

CommandOutput cmd_tf2d(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("epsilon"), real("Omega"),   real("mu"),         real("E_TF"),
                       text("support"), real("r_inner"), real("rho_center"), real("rho_max")};
  rv_tf2d s;
  check(rv_tf2d_flat(cfg.gas.epsilon, cfg.gas.Omega, &s), "rv_tf2d_flat");
  out.table.rows.push_back({{"epsilon", s.epsilon},
                            {"Omega", s.Omega},
                            {"mu", s.mu},
                            {"E_TF", s.energy},
                            {"support", support_name(s.support)},
                            {"r_inner", s.r_inner},
                            {"rho_center", s.rho_center},
                            {"rho_max", s.rho_max}});
  return out;
}

CommandOutput cmd_tf3d(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {text("form"),  real("c_r"),       real("c_x"),       real("c_y"),
                       real("c_z"),   real("s"),         real("g"),         real("Omega"),
                       real("mu"),    real("E_TF"),      real("int_rho"),   real("int_rho_sq"),
                       real("extent_xy"), real("extent_z"), real("lambda"), real("omega"),
                       real("gamma"), text("regime")};
  const auto trap = trap_of(cfg.trap);
  rv_tf3d s;
  check(rv_tf3d_solve(&trap, cfg.trap.g, cfg.trap.Omega, &s), "rv_tf3d_solve");
  rv_scaling sc;
  check(rv_scaling_map(cfg.trap.g, cfg.trap.Omega, cfg.trap.s, cfg.trap.omega_lo, cfg.trap.omega_hi, &sc),
        "rv_scaling_map");
  out.table.rows.push_back({{"form", cfg.trap.form},
                            {"c_r", cfg.trap.c_r},
                            {"c_x", cfg.trap.c_x},
                            {"c_y", cfg.trap.c_y},
                            {"c_z", cfg.trap.c_z},
                            {"s", cfg.trap.s},
                            {"g", s.g},
                            {"Omega", s.Omega},
                            {"mu", s.mu},
                            {"E_TF", s.energy},
                            {"int_rho", s.normalization},
                            {"int_rho_sq", s.integral_rho_sq},
                            {"extent_xy", s.extent_xy},
                            {"extent_z", s.extent_z},
                            {"lambda", sc.lambda},
                            {"omega", sc.omega},
                            {"gamma", sc.gamma},
                            {"regime", std::string(rv_regime_name(sc.regime))}});
  return out;
}

CommandOutput cmd_regime(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("g"),          real("Omega"),          real("s"),        real("lambda"),
                       real("omega"),      real("gamma"),          text("regime"),   real("w_min"),
                       real("r_Omega"),    text("minimizing_set"), integer("n_points"), real("delta"),
                       real("E_trial_scaled"), real("kinetic"),    real("rotation"), real("potential"),
                       real("interaction")};
  const auto trap = trap_of(cfg.trap);
  rv_scaling sc;
  check(rv_scaling_map(cfg.trap.g, cfg.trap.Omega, cfg.trap.s, cfg.trap.omega_lo, cfg.trap.omega_hi, &sc),
        "rv_scaling_map");
  rv_ultrarapid u;
  check(rv_ultrarapid_limit(&trap, &u), "rv_ultrarapid_limit");
  ResultRecord r{{"g", cfg.trap.g},
                 {"Omega", cfg.trap.Omega},
                 {"s", cfg.trap.s},
                 {"lambda", sc.lambda},
                 {"omega", sc.omega},
                 {"gamma", sc.gamma},
                 {"regime", std::string(rv_regime_name(sc.regime))},
                 {"w_min", u.w_min},
                 {"r_Omega", u.r_Omega},
                 {"minimizing_set", std::string(u.is_circle ? "circle" : "points")},
                 {"n_points", static_cast<std::int64_t>(u.n_points)},
                 {"delta", kNaN},
                 {"E_trial_scaled", kNaN},
                 {"kinetic", kNaN},
                 {"rotation", kNaN},
                 {"potential", kNaN},
                 {"interaction", kNaN}};
  if (cfg.trap.Omega > 0.0) {
    double delta = cfg.ultrarapid.delta > 0.0 ? cfg.ultrarapid.delta : 1.0 / std::sqrt(cfg.trap.Omega);
    delta = std::min(delta, 0.5 * u.r_Omega);
    rv_ultrarapid_trial t;
    check(rv_ultrarapid_trial_energy_3d(&trap, cfg.trap.Omega, delta, cfg.ultrarapid.g, &t),
          "rv_ultrarapid_trial_energy_3d");
    r["delta"] = delta;
    r["E_trial_scaled"] = t.scaled_energy;
    r["kinetic"] = t.kinetic;
    r["rotation"] = t.rotation;
    r["potential"] = t.potential;
    r["interaction"] = t.interaction;
  }
  json pts = json::array();
  for (size_t k = 0; k < u.n_points; ++k) pts.push_back({u.points[k][0], u.points[k][1], u.points[k][2]});
  out.extras["minimizing_points"] = pts;
  out.table.rows.push_back(std::move(r));
  return out;
}

CommandOutput cmd_gp(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("epsilon"),   real("Omega"),        integer("n_r"),     integer("n_theta"),
                       integer("seed"),   text("init"),         real("E_GP"),       real("kinetic"),
                       real("centrifugal"), real("interaction"), real("E_TF"),      integer("iterations"),
                       boolean("converged"), boolean("monotone"), real("mu"),       real("residual"),
                       integer("n_vortices"), integer("total_winding"), boolean("diamagnetic")};
  auto best = minimize_best(cfg.gas.epsilon, cfg.gas.Omega, cfg);
  rv_energy e;
  check(rv_field_energy(best.field.get(), &e), "rv_field_energy");
  rv_tf2d tf;
  check(rv_tf2d_flat(cfg.gas.epsilon, cfg.gas.Omega, &tf), "rv_tf2d_flat");
  double mu = 0, res = 0, lhs = 0, rhs = 0;
  int holds = 0, total = 0;
  check(rv_field_residual(best.field.get(), &mu, &res), "rv_field_residual");
  check(rv_field_diamagnetic(best.field.get(), &lhs, &rhs, &holds), "rv_field_diamagnetic");
  const auto vortices = census(best.field.get(), cfg.census, &total);
  out.table.rows.push_back({{"epsilon", cfg.gas.epsilon},
                            {"Omega", cfg.gas.Omega},
                            {"n_r", static_cast<std::int64_t>(cfg.grid.n_r)},
                            {"n_theta", static_cast<std::int64_t>(cfg.grid.n_theta)},
                            {"seed", static_cast<std::int64_t>(cfg.seed)},
                            {"init", best.init},
                            {"E_GP", e.total},
                            {"kinetic", e.kinetic_covariant},
                            {"centrifugal", e.centrifugal},
                            {"interaction", e.interaction},
                            {"E_TF", tf.energy},
                            {"iterations", static_cast<std::int64_t>(best.report.iterations)},
                            {"converged", best.report.converged != 0},
                            {"monotone", best.report.monotone != 0},
                            {"mu", mu},
                            {"residual", res},
                            {"n_vortices", static_cast<std::int64_t>(vortices.size())},
                            {"total_winding", static_cast<std::int64_t>(total)},
                            {"diamagnetic", holds != 0}});
  json vs = json::array();
  for (const auto& v : vortices) vs.push_back({{"x", v.x}, {"y", v.y}, {"d", v.winding}});
  out.extras["vortices"] = vs;
  out.field_dump = field_dump(best.field.get());
  out.all_converged = best.report.converged != 0;
  return out;
}

double predicted(double epsilon, double Omega, std::string* regime) {
  rv_asymptotics a;
  check(rv_predict_asymptotics(epsilon, Omega, &a), "rv_predict_asymptotics");
  if (regime) *regime = rv_asymptotic_regime_name(a.regime);
  return a.subleading;
}

CommandOutput cmd_lattice(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("epsilon"),        real("Omega"),   text("type"),       real("t"),
                       integer("n_points"),    real("spacing"), real("cell_area"),  real("E_TF"),
                       real("E_trial_lattice"), real("predicted_subleading"), real("ratio"), text("regime")};
  const double eps = cfg.gas.epsilon, Om = cfg.gas.Omega;
  double t = 0.0;
  auto lattice = make_lattice(eps, Om, cfg.lattice, &t);
  size_t n = 0;
  double spacing = 0, area = 0;
  check(rv_lattice_info(lattice.get(), &n, &spacing, &area), "rv_lattice_info");
  std::vector<double> xy(2 * n);
  check(rv_lattice_points(lattice.get(), xy.data(), xy.size()), "rv_lattice_points");
  const auto trial = lattice_trial_energy(eps, Om, cfg.lattice, cfg.grid);
  rv_tf2d tf;
  check(rv_tf2d_flat(eps, Om, &tf), "rv_tf2d_flat");
  std::string regime;
  const double sub = predicted(eps, Om, &regime);
  out.table.rows.push_back({{"epsilon", eps},
                            {"Omega", Om},
                            {"type", cfg.lattice.type},
                            {"t", t},
                            {"n_points", static_cast<std::int64_t>(n)},
                            {"spacing", spacing},
                            {"cell_area", area},
                            {"E_TF", tf.energy},
                            {"E_trial_lattice", trial.energy},
                            {"predicted_subleading", sub},
                            {"ratio", (trial.energy - tf.energy) / sub},
                            {"regime", regime}});
  json pts = json::array();
  for (size_t k = 0; k < n; ++k) pts.push_back({xy[2 * k], xy[2 * k + 1]});
  out.extras["points"] = pts;
  return out;
}

CommandOutput cmd_giant(const RunConfig& cfg) {
  CommandOutput out;
  if (cfg.giant.dimension == 3) {
    out.table.columns = {real("g"),     real("Omega"),       integer("winding"), real("r_Omega"),
                         real("E_trial_giant"), real("E_TF"), real("gap"),      real("scaled_gap")};
    const auto trap = trap_of(cfg.trap);
    rv_giant3d r;
    check(rv_giant_vortex_energy_3d(&trap, cfg.trap.g, cfg.trap.Omega, cfg.giant.n_r, cfg.giant.n_z, &r),
          "rv_giant_vortex_energy_3d");
    const double scale = std::pow(cfg.trap.g, -cfg.trap.s / (cfg.trap.s + 3.0));
    out.table.rows.push_back({{"g", cfg.trap.g},
                              {"Omega", cfg.trap.Omega},
                              {"winding", static_cast<std::int64_t>(r.winding)},
                              {"r_Omega", r.r_Omega},
                              {"E_trial_giant", r.energy},
                              {"E_TF", r.tf_energy},
                              {"gap", r.gap},
                              {"scaled_gap", scale * r.gap}});
    return out;
  }
  out.table.columns = {real("epsilon"), real("Omega"), integer("winding"), real("E_TF"), real("E_trial_giant"),
                       real("predicted_subleading"), text("regime")};
  int winding = 0;
  const double e = giant_trial_energy(cfg.gas.epsilon, cfg.gas.Omega, cfg.grid, &winding);
  rv_tf2d tf;
  check(rv_tf2d_flat(cfg.gas.epsilon, cfg.gas.Omega, &tf), "rv_tf2d_flat");
  std::string regime;
  const double sub = predicted(cfg.gas.epsilon, cfg.gas.Omega, &regime);
  out.table.rows.push_back({{"epsilon", cfg.gas.epsilon},
                            {"Omega", cfg.gas.Omega},
                            {"winding", static_cast<std::int64_t>(winding)},
                            {"E_TF", tf.energy},
                            {"E_trial_giant", e},
                            {"predicted_subleading", sub},
                            {"regime", regime}});
  return out;
}

CommandOutput cmd_asympt(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("epsilon"), real("Omega"),      text("regime"),      real("predicted_subleading"),
                       real("omega_1"), real("omega_hole"), real("omega_giant"), integer("vortex_window")};
  rv_asymptotics a;
  check(rv_predict_asymptotics(cfg.gas.epsilon, cfg.gas.Omega, &a), "rv_predict_asymptotics");
  int d = 0;
  check(rv_vortex_window(cfg.gas.epsilon, cfg.gas.Omega, &d), "rv_vortex_window");
  out.table.rows.push_back({{"epsilon", cfg.gas.epsilon},
                            {"Omega", cfg.gas.Omega},
                            {"regime", std::string(rv_asymptotic_regime_name(a.regime))},
                            {"predicted_subleading", a.subleading},
                            {"omega_1", a.omega_1},
                            {"omega_hole", a.omega_hole},
                            {"omega_giant", a.omega_giant},
                            {"vortex_window", static_cast<std::int64_t>(d)}});
  return out;
}

CommandOutput cmd_harmonic(const RunConfig& cfg) {
  CommandOutput out;
  out.table.columns = {real("omega_osc"), real("Omega"), real("N"),     real("a"),
                       real("omega_c"),   real("R"),     real("X"),     real("ratio"),
                       text("regime_flag")};
  const auto& h = cfg.harmonic;
  rv_harmonic r;
  check(rv_harmonic_estimates(h.omega_osc, h.Omega, h.N, h.a, h.k_lo, h.k_hi, &r), "rv_harmonic_estimates");
  out.table.rows.push_back({{"omega_osc", h.omega_osc},
                            {"Omega", h.Omega},
                            {"N", h.N},
                            {"a", h.a},
                            {"omega_c", r.omega_c},
                            {"R", r.R},
                            {"X", r.X},
                            {"ratio", r.ratio},
                            {"regime_flag", std::string(rv_regime_flag_name(r.flag))}});
  out.extras["note"] = "regime_flag is a heuristic; neither limit is rigorously established";
  return out;
}

bool wants(const SweepBlock& s, const char* q) {
  return std::find(s.quantities.begin(), s.quantities.end(), q) != s.quantities.end();
}

ResultRecord sweep_point(const RunConfig& cfg, double epsilon, double Omega_in) {
  ResultRecord r;
  const double Omega = cfg.sweep.omega_scale == "inverse_epsilon" ? Omega_in / epsilon : Omega_in;
  r["epsilon"] = epsilon;
  r["Omega"] = Omega;
  for (const char* k : {"E_TF", "E_trial_lattice", "E_trial_giant", "E_GP", "predicted_subleading"}) r[k] = kNaN;
  r["regime"] = std::string();
  r["iterations"] = std::int64_t{-1};
  r["converged"] = false;
  r["n_vortices"] = std::int64_t{-1};
  r["total_winding"] = std::int64_t{0};
  r["seed"] = static_cast<std::int64_t>(cfg.seed);
  r["n_r"] = static_cast<std::int64_t>(cfg.grid.n_r);
  r["n_theta"] = static_cast<std::int64_t>(cfg.grid.n_theta);
  r["status"] = std::string("ok");
  r["error"] = std::string();
  try {
    if (!(std::isfinite(epsilon) && epsilon > 0.0)) throw RunError(RV_ERR_ARGUMENT, "epsilon must be finite and > 0");
    if (!(std::isfinite(Omega) && Omega >= 0.0)) throw RunError(RV_ERR_ARGUMENT, "Omega must be finite and >= 0");
    if (wants(cfg.sweep, "tf")) {
      rv_tf2d tf;
      check(rv_tf2d_flat(epsilon, Omega, &tf), "rv_tf2d_flat");
      r["E_TF"] = tf.energy;
    }
    if (wants(cfg.sweep, "asympt")) {
      std::string regime;
      r["predicted_subleading"] = predicted(epsilon, Omega, &regime);
      r["regime"] = regime;
    }
    if (wants(cfg.sweep, "lattice") && Omega > 0.0)
      r["E_trial_lattice"] = lattice_trial_energy(epsilon, Omega, cfg.lattice, cfg.grid).energy;
    if (wants(cfg.sweep, "giant") && Omega > 0.0) r["E_trial_giant"] = giant_trial_energy(epsilon, Omega, cfg.grid, nullptr);
    if (wants(cfg.sweep, "gp")) {
      auto best = minimize_best(epsilon, Omega, cfg);
      int total = 0;
      const auto vs = census(best.field.get(), cfg.census, &total);
      r["E_GP"] = best.report.energy;
      r["iterations"] = static_cast<std::int64_t>(best.report.iterations);
      r["converged"] = best.report.converged != 0;
      r["n_vortices"] = static_cast<std::int64_t>(vs.size());
      r["total_winding"] = static_cast<std::int64_t>(total);
    } else {
      r["converged"] = true;
    }
  } catch (const RunError& e) {
    r["status"] = std::string("error");
    r["error"] = std::string(e.what());
    r["converged"] = false;
  }
  return r;
}

}  // namespace

const std::vector<Column>& sweep_columns() {
  static const std::vector<Column> cols{
      real("epsilon"),       real("Omega"),          real("E_TF"),          real("E_trial_lattice"),
      real("E_trial_giant"), real("E_GP"),           real("predicted_subleading"), text("regime"),
      integer("iterations"), boolean("converged"),   integer("n_vortices"), integer("total_winding"),
      integer("seed"),       integer("n_r"),         integer("n_theta"),    text("status"),
      text("error")};
  return cols;
}

std::vector<ResultRecord> run_sweep(const RunConfig& cfg, const std::function<void(const ResultRecord&)>& sink) {
  std::vector<std::pair<double, double>> points;
  for (double e : cfg.sweep.epsilon)
    for (double o : cfg.sweep.Omega) points.emplace_back(e, o);

  std::vector<std::optional<ResultRecord>> done(points.size());
  std::vector<ResultRecord> out;
  out.reserve(points.size());
  std::mutex m;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= points.size()) return;
      auto rec = sweep_point(cfg, points[k].first, points[k].second);
      {
        std::lock_guard lock(m);
        done[k] = std::move(rec);
      }
      cv.notify_all();
    }
  };

  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  if (jobs == 1) worker();

  // single writer in grid order
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::unique_lock lock(m);
    cv.wait(lock, [&] { return done[k].has_value(); });
    ResultRecord rec = std::move(*done[k]);
    lock.unlock();
    spdlog::info("sweep point {}/{} eps={} Omega={} status={}", k + 1, points.size(), points[k].first,
                 points[k].second, std::get<std::string>(rec.at("status")));
    if (sink) sink(rec);
    out.push_back(std::move(rec));
  }
  for (auto& t : pool) t.join();
  return out;
}

CommandOutput run_command(Command c, const RunConfig& cfg) {
  try {
    switch (c) {
      case Command::Scatter:
        return cmd_scatter(cfg);
      case Command::Tf2d:
        return cmd_tf2d(cfg);
      case Command::Tf3d:
        return cmd_tf3d(cfg);
      case Command::Regime:
        return cmd_regime(cfg);
      case Command::Gp:
        return cmd_gp(cfg);
      case Command::Lattice:
        return cmd_lattice(cfg);
      case Command::Giant:
        return cmd_giant(cfg);
      case Command::Asympt:
        return cmd_asympt(cfg);
      case Command::Harmonic:
        return cmd_harmonic(cfg);
      case Command::Sweep: {
        CommandOutput out;
        out.table.columns = sweep_columns();
        out.table.rows = run_sweep(cfg);
        for (const auto& r : out.table.rows) {
          out.all_converged = out.all_converged && std::get<bool>(r.at("converged"));
          out.all_ok = out.all_ok && std::get<std::string>(r.at("status")) == "ok";
        }
        return out;
      }
      case Command::Check: {
        CommandOutput out;
        out.table.columns = {text("check"), boolean("passed"), text("detail")};
        for (const auto& r : run_checks(cfg.seed)) {
          out.table.rows.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
          out.all_ok = out.all_ok && r.passed;
        }
        return out;
      }
    }
  } catch (const RunError& e) {
    throw std::runtime_error(e.what());
  }
  throw std::logic_error("unknown command");
}

// ---------------------------------------------------------------------------
// invariant suite

namespace {

std::string fmt_err(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CheckResult check_constant_field() {
  double worst = 0.0;
  for (double Om : {0.0, 3.0, 30.0}) {
    Field f;
    rv_field* raw = nullptr;
    check(rv_field_create(0.1, Om, 32, 64, RV_INIT_CONSTANT, 0, &raw), "rv_field_create");
    f.reset(raw);
    const double want = 100.0 / std::numbers::pi;
    worst = std::max(worst, std::abs(field_energy(f.get()) - want) / want);
  }
  return {"constant_field_energy", worst < 1e-10, "max rel err " + fmt_err(worst)};
}

CheckResult check_diamagnetic(std::uint64_t seed) {
  int violations = 0, total = 0;
  for (double Om : {1.0, 10.0, 100.0}) {
    for (int k = 0; k < 5; ++k) {
      rv_field* raw = nullptr;
      check(rv_field_create(0.1, Om, 32, 64, RV_INIT_TF_PHASE_NOISE, seed + 1000 * total + 1, &raw),
            "rv_field_create");
      Field f(raw);
      double lhs = 0, rhs = 0;
      int holds = 0;
      check(rv_field_diamagnetic(f.get(), &lhs, &rhs, &holds), "rv_field_diamagnetic");
      if (lhs < rhs * (1.0 - 1e-9)) ++violations;
      ++total;
    }
  }
  return {"diamagnetic_inequality", violations == 0,
          std::to_string(violations) + " violations in " + std::to_string(total) + " fields"};
}

CheckResult check_gradient(std::uint64_t seed) {
  rv_field* raw = nullptr;
  check(rv_field_create(0.2, 4.0, 16, 16, RV_INIT_TF_PHASE_NOISE, seed + 7, &raw), "rv_field_create");
  Field f(raw);
  int nr = 0, nt = 0;
  check(rv_field_shape(f.get(), &nr, &nt), "rv_field_shape");
  const std::size_t n = 2u * static_cast<std::size_t>(nr) * static_cast<std::size_t>(nt);
  std::vector<double> v(n), g(n);
  check(rv_field_get_values(f.get(), v.data(), n), "rv_field_get_values");
  check(rv_field_gradient(f.get(), g.data(), n), "rv_field_gradient");
  std::mt19937_64 rng(seed);
  std::vector<double> dir(n);
  std::normal_distribution<double> normal;
  for (auto& x : dir) x = normal(rng);
  // directional derivative: the L2 gradient pairs with the node weights
  const double dr = 1.0 / nr, dth = 2.0 * std::numbers::pi / nt;
  double analytic = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t ring = (k / 2) / static_cast<std::size_t>(nt);
    const double w = (static_cast<double>(ring) + 0.5) * dr * dr * dth;
    analytic += w * g[k] * dir[k];
  }
  const double h = 1e-5;
  auto energy_at = [&](double s) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = v[k] + s * dir[k];
    check(rv_field_set_values(f.get(), p.data(), n), "rv_field_set_values");
    return field_energy(f.get());
  };
  const double fd = (energy_at(h) - energy_at(-h)) / (2.0 * h);
  const double err = std::abs(fd - analytic) / std::max(1e-300, std::abs(fd));
  return {"gradient_vs_finite_difference", err < 1e-4, "rel err " + fmt_err(err)};
}

CheckResult check_cell_energy(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double Om = std::pow(10.0, 4.0 * u(rng));
    const double t = std::pow(Om, -0.5) * std::pow(10.0, -3.0 * u(rng) - 1e-3);
    double cf = 0, q = 0;
    check(rv_cell_energy(t, Om, &cf, &q), "rv_cell_energy");
    worst = std::max(worst, std::abs(cf - q) / std::max(1.0, std::abs(cf)));
  }
  return {"cell_energy_identity", worst < 1e-10, "max err " + fmt_err(worst)};
}

CheckResult check_hole_threshold() {
  double lo = 0.0, hi = 100.0;
  const double eps = 0.1;
  for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    double rho = 0.0;
    check(rv_tf2d_density(eps, mid, 0.0, &rho), "rv_tf2d_density");
    (rho > 0.0 ? lo : hi) = mid;
  }
  const double err = std::abs(0.5 * (lo + hi) * eps - rv_omega_hole()) / rv_omega_hole();
  return {"tf_hole_threshold", err < 1e-6, "rel err " + fmt_err(err)};
}

CheckResult check_tf_normalization() {
  rv_trap3d trap{RV_TRAP_RADIAL_Z, 1.0, 1.0, 1.0, 1.0, 4.0};
  rv_tf3d s;
  check(rv_tf3d_solve(&trap, 10.0, 1.0, &s), "rv_tf3d_solve");
  const double err = std::abs(s.normalization - 1.0);
  return {"tf3d_normalization", err < 1e-8, "|int rho - 1| = " + fmt_err(err)};
}

CheckResult check_conjugate_field(std::uint64_t seed) {
  rv_lattice* raw = nullptr;
  check(rv_lattice_build(60.0, 0.0, 1.0, RV_LATTICE_TRIANGULAR, 0.0, &raw), "rv_lattice_build");
  Lattice l(raw);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::vector<double> xy;
  for (int k = 0; k < 20; ++k) {
    xy.push_back(u(rng));
    xy.push_back(u(rng));
  }
  double e1 = 0, e2 = 0;
  int ev = 0, rej = 0;
  check(rv_conjugate_field_check(l.get(), xy.data(), 20, 1e-4, &e1, &ev, &rej), "rv_conjugate_field_check");
  check(rv_conjugate_field_check(l.get(), xy.data(), 20, 5e-5, &e2, &ev, &rej), "rv_conjugate_field_check");
  return {"cauchy_riemann_identity", e1 < 1e-5 && ev > 0, "max rel err " + fmt_err(e1) + " / " + fmt_err(e2)};
}

CheckResult check_harmonic() {
  rv_harmonic h;
  check(rv_harmonic_estimates(1.0, 0.0, 1.0, 1.0, 0.0, 0.0, &h), "rv_harmonic_estimates");
  const double err = std::abs(h.omega_c - std::numbers::sqrt2);
  rv_harmonic bad;
  const bool rejects = rv_harmonic_estimates(1.0, std::numbers::sqrt2, 1.0, 1.0, 0.0, 0.0, &bad) == RV_ERR_UNBOUNDED;
  return {"harmonic_critical_frequency", err < 1e-15 && rejects, "|Omega_c - sqrt 2| = " + fmt_err(err)};
}

}  // namespace

std::vector<CheckResult> run_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const std::vector<std::function<CheckResult()>> suite{
      [] { return check_constant_field(); },       [&] { return check_diamagnetic(seed); },
      [&] { return check_gradient(seed); },        [&] { return check_cell_energy(seed); },
      [] { return check_hole_threshold(); },       [] { return check_tf_normalization(); },
      [&] { return check_conjugate_field(seed); }, [] { return check_harmonic(); }};
  for (const auto& c : suite) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"error", false, e.what()});
    }
  }
  return out;
}

}  // namespace rvcli
