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

// Acceptance run: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; --criterion selects a subset.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "rotovort/gp_field.hpp"
#include "rotovort/params.hpp"
#include "rotovort/tf.hpp"
#include "rotovort/vortex_lattice.hpp"

using namespace rotovort;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Density at the centre as a function of Omega, located by bisection on its
// positivity.
Outcome hole_threshold() {
  double worst = 0.0;
  for (double eps : {0.5, 0.1, 0.05, 0.01}) {
    const double expect = 4.0 / std::sqrt(kPi) / eps;
    auto sign = [&](double Om) { return tf2d_flat(eps, Om).density(0.0) > 0.0 ? 1.0 : -1.0; };
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-10 * std::abs(b); };
    const auto [lo, hi] = boost::math::tools::bisect(sign, 0.5 * expect, 2.0 * expect, tol);
    worst = std::max(worst, std::abs(0.5 * (lo + hi) - expect) / expect);
  }
  return {worst < 1e-6, fmt("max relative deviation from 4/(sqrt(pi) eps) = %.2e", worst)};
}

Outcome tf_collapse() {
  const double s = 4.0;
  const auto trap = Trap3D::radial_z(1.0, 1.0, s);
  std::vector<double> scaled;
  bool omega_one = true;
  for (double g : {1e2, 1e3, 1e4}) {
    const double Omega = std::pow(g, (s - 2.0) / (2.0 * (s + 3.0)));
    omega_one = omega_one && std::abs(scaling_map(g, Omega, s).omega - 1.0) < 1e-12;
    scaled.push_back(std::pow(g, -s / (s + 3.0)) * tf3d(trap, g, Omega).energy);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < scaled.size(); ++a)
    for (std::size_t b = a + 1; b < scaled.size(); ++b)
      worst = std::max(worst, std::abs(scaled[a] - scaled[b]) / std::abs(scaled[a]));
  return {omega_one && worst < 1e-6, fmt("scaled energy %.12g, max pairwise relative spread %.2e", scaled[0], worst)};
}

Outcome constant_field() {
  double worst = 0.0;
  for (double eps : {0.5, 0.1, 0.02}) {
    for (double Omega : {0.0, 1.0, 37.0, 400.0, 1000.0}) {
      auto f = sample_field(PolarGrid(64, 128), {eps, Omega}, [](double, double) { return cplx(1.0 / std::sqrt(kPi), 0.0); });
      const double expect = 1.0 / (eps * eps * kPi);
      worst = std::max(worst, std::abs(gp_energy(f).total - expect) / expect);
    }
  }
  return {worst < 1e-10, fmt("max relative deviation from 1/(pi eps^2) = %.2e", worst)};
}

ComplexField2D random_field(PolarGrid grid, GpParams p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  ComplexField2D f(grid, p);
  for (auto& v : f.values) v = cplx(N(rng), N(rng));
  f.normalize();
  return f;
}

Outcome diamagnetic() {
  int violations = 0, total = 0;
  for (double Omega : {1.0, 10.0, 100.0}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed, ++total) {
      const auto d = diamagnetic_check(random_field({32, 64}, {0.1, Omega}, seed));
      if (d.lhs < d.rhs - 1e-9 * d.rhs) ++violations;
    }
  }
  return {violations == 0, fmt("%d violations in %d fields", violations, total)};
}

Outcome gradient() {
  const PolarGrid grid(32, 64);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const GpParams p{0.1 + 0.05 * k, 2.0 * k};
    const cplx z1(0.5 * U(rng), 0.5 * U(rng)), z2(0.5 * U(rng), 0.5 * U(rng));
    auto f = sample_field(grid, p, [&](double r, double t) {
      const cplx z = std::polar(r, t);
      return (z - z1) * std::conj(z - z2) * std::exp(cplx(0.0, 0.4 * r * r));
    });
    for (auto& v : f.values) v += 0.05 * cplx(N(rng), N(rng));
    f.normalize();
    std::vector<cplx> g;
    gp_energy_gradient(f, g);
    ComplexField2D d(grid, p), gf(grid, p);
    for (auto& v : d.values) v = cplx(N(rng), N(rng));
    gf.values = g;
    const double analytic = ComplexField2D::inner(gf, d);
    const double h = 1e-5;
    auto plus = f, minus = f;
    for (std::size_t n = 0; n < f.values.size(); ++n) {
      plus.values[n] += h * d.values[n];
      minus.values[n] -= h * d.values[n];
    }
    const double fd = (gp_energy(plus).total - gp_energy(minus).total) / (2.0 * h);
    worst = std::max(worst, std::abs(analytic - fd) / std::abs(fd));
  }
  return {worst < 1e-4, fmt("max relative difference %.2e over 10 fields", worst)};
}

// Each Omega keeps the lowest-energy minimizer among the previous minimizer,
// a phase-noise start, a centred vortex and the trial lattice.
Outcome vortex_onset() {
  const double eps = 0.05;
  const PolarGrid grid(256, 512);
  const double omega_1 = kPi * std::abs(std::log(eps));
  std::optional<ComplexField2D> prev;
  std::vector<std::pair<double, std::size_t>> counts;
  std::optional<double> onset;
  for (double Omega = 2.0; !onset || Omega <= 3.0 * *onset + 1e-9; Omega += 1.0) {
    if (Omega > 4.0 * omega_1) break;
    const GpParams p{eps, Omega};
    std::vector<ComplexField2D> starts;
    if (prev) {
      starts.push_back(*prev);
      starts.back().params = p;
    }
    starts.push_back(make_initial_field(grid, p, InitKind::TFPhaseNoise, 7));
    VortexLattice centre = point_set(Omega, {cplx(0.0, 0.0)});
    starts.push_back(lattice_trial(p, centre, eps).sample(grid));
    const double t = optimal_core_radius(eps, Omega);
    starts.push_back(lattice_trial(p, build_lattice(Omega, ClipRegion::unit_disc(), LatticeType::Triangular, t), t).sample(grid));
    double best = INFINITY;
    for (auto& f : starts) {
      const auto rep = minimize_gp(f);
      if (rep.energy.total < best) {
        best = rep.energy.total;
        prev = f;
      }
    }
    const std::size_t n = detect_vortices(*prev).vortices.size();
    counts.emplace_back(Omega, n);
    std::printf("  Omega %5.1f  E %.9f  vortices %zu\n", Omega, best, n);
    std::fflush(stdout);
    if (!onset && n > 0) onset = Omega;
  }
  if (!onset) return {false, "no vortex appeared up to 4 pi |log eps|"};
  bool zero_before = counts.front().second == 0, monotone = true;
  for (std::size_t k = 1; k < counts.size(); ++k) monotone = monotone && counts[k].second >= counts[k - 1].second;
  const bool bracket = *onset >= 0.5 * omega_1 && *onset <= 2.0 * omega_1;
  return {zero_before && bracket && monotone,
          fmt("onset Omega* = %g in [%.3f, %.3f]: %s; count nondecreasing to %g: %s; final count %zu", *onset, 0.5 * omega_1,
              2.0 * omega_1, bracket ? "yes" : "no", counts.back().first, monotone ? "yes" : "no", counts.back().second)};
}

PolarGrid resolving_grid(double eps, int per_core) {
  const int n_r = per_core * static_cast<int>(std::ceil(1.0 / eps));
  int n_theta = 1;
  while (n_theta < 2.0 * kPi * n_r) n_theta *= 2;
  return {n_r, n_theta};
}

struct RegimeARun {
  double eps, tf, lattice, ratio;
  ComplexField2D field;
};

RegimeARun regime_a(double eps) {
  const double Omega = 1.0 / eps;
  const GpParams p{eps, Omega};
  const auto tf = tf2d_flat(eps, Omega);
  const double t = optimal_core_radius(eps, Omega);
  const auto lat = build_lattice(Omega, ClipRegion::support_of(tf), LatticeType::Triangular, t);
  auto f = lattice_trial(p, lat, t).sample(resolving_grid(eps, 8));
  const double E = gp_energy(f).total;
  return {eps, tf.energy, E, (E - tf.energy) / (0.5 * Omega * std::abs(std::log(eps))), std::move(f)};
}

Outcome regime_a_trend() {
  std::vector<double> ratios;
  bool inside = true;
  std::string detail;
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto run = regime_a(eps);
    ratios.push_back(run.ratio);
    inside = inside && run.ratio >= 0.5 && run.ratio <= 1.8;
    detail += fmt("eps %g: ratio %.4f; ", eps, run.ratio);
  }
  bool toward = true;
  for (std::size_t k = 1; k < ratios.size(); ++k) toward = toward && std::abs(ratios[k] - 1.0) < std::abs(ratios[k - 1] - 1.0);
  detail += fmt("all in [0.5, 1.8]: %s; |ratio - 1| decreasing: %s", inside ? "yes" : "no", toward ? "yes" : "no");
  return {inside && toward, detail};
}

Outcome sandwich() {
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.05, 0.025}) {
    auto run = regime_a(eps);
    const auto rep = minimize_gp(run.field);
    if (!rep.converged) {
      detail += fmt("eps %g: not converged; ", eps);
      continue;
    }
    const bool in = run.tf <= rep.energy.total && rep.energy.total <= run.lattice;
    ok = ok && in;
    detail += fmt("eps %g: %.4f <= %.4f <= %.4f %s; ", eps, run.tf, rep.energy.total, run.lattice, in ? "ok" : "VIOLATED");
  }
  const double eps = 0.05, Omega = 3.0 / (eps * eps * std::abs(std::log(eps)));
  const GpParams p{eps, Omega};
  const PolarGrid grid(512, 4096);
  const double t = optimal_core_radius(eps, Omega);
  const auto lat = build_lattice(Omega, ClipRegion::support_of(tf2d_flat(eps, Omega)), LatticeType::Triangular, t);
  const double lattice = gp_energy(lattice_trial(p, lat, t).sample(grid)).total;
  const double giant = gp_energy(giant_vortex_trial(p).sample(grid)).total;
  ok = ok && giant < lattice;
  detail += fmt("Omega %.2f: giant %.4f %s lattice %.4f", Omega, giant, giant < lattice ? "<" : ">=", lattice);
  return {ok, detail};
}

Outcome cell_energy_identity() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double Omega = std::pow(10.0, 4.0 * U(rng));
    const double t = (0.001 + 0.99 * U(rng)) / std::sqrt(Omega);
    const auto c = cell_energy(t, Omega);
    worst = std::max(worst, std::abs(c.closed_form - c.quadrature) / std::max(1.0, std::abs(c.closed_form)));
  }
  return {worst < 1e-10, fmt("max deviation %.2e over 100 pairs", worst)};
}

Outcome scattering() {
  double worst = 0.0;
  for (double v0 : {1.0, 8.0, 64.0}) {
    const double k = std::sqrt(v0 / 2.0);
    const double oracle = 1.0 - std::tanh(k) / k;
    worst = std::max(worst, std::abs(scattering_length(SquareBarrier{v0, 1.0}, 3.0, 100000) - oracle));
  }
  bool exact = true;
  for (double R0 : {0.25, 0.5, 1.25}) exact = exact && scattering_length(HardCore{R0}, 2.0 * R0 + 1.0, 1000) == R0;
  return {worst < 1e-8 && exact, fmt("square barrier max deviation %.2e; hard core exact: %s", worst, exact ? "yes" : "no")};
}

Outcome ultrarapid() {
  const auto trap = Trap3D::radial_z(1.0, 1.0, 4.0);
  const auto table = tf_gamma_limit(trap, {1e-1, 1e-2, 1e-3});
  bool tf_ok = table.rows.size() == 3;
  std::string detail = "TF gaps";
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const double gap = std::abs(table.rows[k].energy + 1.0 / 64.0);
    detail += fmt(" %.3e", gap);
    if (k > 0) tf_ok = tf_ok && gap < std::abs(table.rows[k - 1].energy + 1.0 / 64.0);
  }
  std::vector<double> e;
  for (double Omega : {1e2, 1e3, 1e4}) e.push_back(ultrarapid_trial_energy_3d(trap, Omega, 1.0 / std::sqrt(Omega)).scaled_energy);
  const bool trial_ok = e[1] < e[0] && e[2] < e[1] && e[2] > -1.0 / 64.0;
  detail += fmt("; trial energies %.6f %.6f %.6f above -1/64", e[0], e[1], e[2]);
  return {tf_ok && trial_ok, detail};
}

Outcome cauchy_riemann() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  std::vector<cplx> pts;
  while (pts.size() < 10) {
    const cplx c(U(rng), U(rng));
    if (std::abs(c) < 0.9) pts.push_back(c);
  }
  const auto lat = point_set(30.0, pts);
  std::vector<cplx> samples;
  while (samples.size() < 200) {
    const cplx c(U(rng), U(rng));
    double dmin = 1e9;
    for (const auto& p : pts) dmin = std::min(dmin, std::abs(c - p));
    if (dmin > 0.05) samples.push_back(c);
  }
  const auto a = conjugate_field_check(lat, samples, 1e-4);
  const auto b = conjugate_field_check(lat, samples, 5e-5);
  const double order = std::log2(a.max_relative_error / b.max_relative_error);
  return {a.max_relative_error < 1e-5 && order > 1.7 && order < 2.3,
          fmt("max relative error %.2e (h = 1e-4), %.2e (h = 5e-5), observed order %.2f", a.max_relative_error,
              b.max_relative_error, order)};
}

Outcome determinism() {
  const auto doc = rvcli::json::parse(R"({
    "seed": 42, "grid": {"n_r": 48, "n_theta": 96}, "solver": {"max_iters": 600, "init": "best"},
    "sweep": {"epsilon": [0.1, 0.2], "Omega": [0, 6, 15]}})");
  auto render = [&](int jobs) {
    auto cfg = rvcli::config_from_json(doc);
    cfg.jobs = jobs;
    rvcli::Table t;
    t.columns = rvcli::sweep_columns();
    t.rows = rvcli::run_sweep(cfg);
    std::ostringstream csv, js;
    rvcli::emit_csv(csv, t);
    rvcli::emit_json(js, t);
    return csv.str() + js.str();
  };
  const std::string a = render(1);
  const bool same = a == render(1) && a == render(2);
  return {same, fmt("two reruns and a two-job run: %s (%zu bytes)", same ? "identical" : "DIFFERENT", a.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotovort acceptance run"};
  std::vector<int> selected;
  app.add_option("-c,--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::warn);

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"hole threshold", hole_threshold}},
      {2, {"TF scaling collapse", tf_collapse}},
      {3, {"constant-field exactness", constant_field}},
      {4, {"diamagnetic inequality", diamagnetic}},
      {5, {"gradient vs finite differences", gradient}},
      {6, {"first-vortex onset", vortex_onset}},
      {7, {"lattice trial trend at Omega = 1/eps", regime_a_trend}},
      {8, {"upper-bound sandwich and giant crossover", sandwich}},
      {9, {"cell-energy identity", cell_energy_identity}},
      {10, {"scattering oracle", scattering}},
      {11, {"ultrarapid limit", ultrarapid}},
      {12, {"Cauchy-Riemann identity", cauchy_riemann}},
      {13, {"determinism", determinism}},
  };
  if (selected.empty())
    for (const auto& [k, v] : criteria) selected.push_back(k);

  int failed = 0;
  for (int k : selected) {
    const auto& [name, run] = criteria.at(k);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s: %s  (%s; %.1f s)\n", k, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
