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
#include <cmath>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "rotovort/error.hpp"
#include "rotovort/gp_field.hpp"
#include "rotovort/harmonic.hpp"
#include "rotovort/params.hpp"
#include "rotovort/rotovort.h"
#include "rotovort/tf.hpp"
#include "rotovort/vortex_lattice.hpp"

struct rv_field {
  rotovort::ComplexField2D field;
};

struct rv_lattice {
  rotovort::VortexLattice lattice;
};

struct rv_trial {
  rotovort::TrialState state;
};

namespace {

using namespace rotovort;

thread_local std::string g_last_error;

struct NullPointer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShortBuffer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(const void* p, const char* name) {
  if (!p) throw NullPointer(std::string("null pointer: ") + name);
}

void fits(size_t capacity, size_t needed) {
  if (capacity < needed)
    throw ShortBuffer("buffer holds " + std::to_string(capacity) + " doubles, " + std::to_string(needed) + " needed");
}

rv_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Argument:
      return RV_ERR_ARGUMENT;
    case ErrorKind::Range:
      return RV_ERR_RANGE;
    case ErrorKind::Solver:
      return RV_ERR_SOLVER;
    case ErrorKind::Numeric:
      return RV_ERR_NUMERIC;
    case ErrorKind::Unsupported:
      return RV_ERR_UNSUPPORTED;
    case ErrorKind::Degenerate:
      return RV_ERR_DEGENERATE;
    case ErrorKind::Unbounded:
      return RV_ERR_UNBOUNDED;
    case ErrorKind::Io:
      return RV_ERR_IO;
    case ErrorKind::Internal:
      return RV_ERR_INTERNAL;
  }
  return RV_ERR_INTERNAL;
}

template <class F>
rv_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return RV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const NullPointer& e) {
    g_last_error = e.what();
    return RV_ERR_NULL;
  } catch (const ShortBuffer& e) {
    g_last_error = e.what();
    return RV_ERR_BUFFER;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return RV_ERR_INTERNAL;
  }
}

Trap3D to_trap(const rv_trap3d* t) {
  need(t, "trap");
  Trap3D out;
  if (t->form == RV_TRAP_RADIAL_Z)
    out = Trap3D::radial_z(t->c_r, t->c_z, t->s);
  else if (t->form == RV_TRAP_ANISOTROPIC)
    out = Trap3D::anisotropic(t->c_x, t->c_y, t->c_z, t->s);
  else
    fail(ErrorKind::Argument, "unknown trap form");
  return out;
}

rv_energy to_c(const EnergyBreakdown& e) { return {e.kinetic_covariant, e.centrifugal, e.interaction, e.trap, e.total}; }

}  // namespace

extern "C" {

const char* rv_version(void) { return "0.1.0"; }

const char* rv_status_name(rv_status s) {
  switch (s) {
    case RV_OK:
      return "ok";
    case RV_ERR_ARGUMENT:
      return "argument";
    case RV_ERR_RANGE:
      return "range";
    case RV_ERR_SOLVER:
      return "solver";
    case RV_ERR_NUMERIC:
      return "numeric";
    case RV_ERR_UNSUPPORTED:
      return "unsupported";
    case RV_ERR_DEGENERATE:
      return "degenerate";
    case RV_ERR_UNBOUNDED:
      return "unbounded";
    case RV_ERR_IO:
      return "io";
    case RV_ERR_NULL:
      return "null";
    case RV_ERR_BUFFER:
      return "buffer";
    case RV_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* rv_last_error(void) { return g_last_error.c_str(); }

rv_status rv_scattering_hard_core(double radius, double* a) {
  return guarded([&] {
    need(a, "a");
    *a = scattering_length(HardCore{radius}, 2.0 * radius + 1.0, 1000);
  });
}

rv_status rv_scattering_square_barrier(double height, double radius, double r_max, size_t steps, double* a) {
  return guarded([&] {
    need(a, "a");
    *a = scattering_length(SquareBarrier{height, radius}, r_max, steps);
  });
}

rv_status rv_scattering_tabulated(const double* r, const double* v, size_t n, double r_max, size_t steps, double* a) {
  return guarded([&] {
    need(r, "r");
    need(v, "v");
    need(a, "a");
    *a = scattering_length(Tabulated{{r, r + n}, {v, v + n}}, r_max, steps);
  });
}

rv_status rv_derive_params(double a, double N, double L, double Omega, rv_gas_params* out) {
  return guarded([&] {
    need(out, "out");
    const auto p = derive_params(a, N, L, Omega);
    const auto d = diluteness(p.rho, p.a);
    *out = {p.a, p.N, p.L, p.rho, p.g, p.epsilon, p.Omega, healing_length(p.rho, p.a), d.value, d.dilute ? 1 : 0};
  });
}

double rv_omega_hole(void) { return kOmegaHole; }

rv_status rv_tf2d_flat(double epsilon, double Omega, rv_tf2d* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = tf2d_flat(epsilon, Omega);
    *out = {s.epsilon, s.Omega,      s.mu,
            s.energy,  s.r_inner,    s.integral_rho_sq,
            s.density(0.0), s.max_density(), s.support == SupportKind::Annulus ? RV_SUPPORT_ANNULUS : RV_SUPPORT_DISC};
  });
}

rv_status rv_tf2d_density(double epsilon, double Omega, double r, double* rho) {
  return guarded([&] {
    need(rho, "rho");
    *rho = tf2d_flat(epsilon, Omega).density(r);
  });
}

rv_status rv_tf3d_solve(const rv_trap3d* trap, double g, double Omega, rv_tf3d* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = tf3d(to_trap(trap), g, Omega);
    *out = {s.g, s.Omega, s.mu, s.energy, s.integral_rho_sq, s.normalization, s.extent_xy, s.extent_z};
  });
}

rv_status rv_tf3d_density(const rv_trap3d* trap, double g, double Omega, double x, double y, double z, double* rho) {
  return guarded([&] {
    need(rho, "rho");
    *rho = tf3d(to_trap(trap), g, Omega).density(x, y, z);
  });
}

rv_status rv_scaling_map(double g, double Omega, double s, double omega_lo, double omega_hi, rv_scaling* out) {
  return guarded([&] {
    need(out, "out");
    RegimeThresholds th;
    if (omega_lo > 0.0) th.omega_lo = omega_lo;
    if (omega_hi > 0.0) th.omega_hi = omega_hi;
    const auto r = scaling_map(g, Omega, s, th);
    *out = {r.lambda, r.omega, r.gamma, static_cast<rv_regime>(static_cast<int>(r.regime))};
  });
}

const char* rv_regime_name(rv_regime r) {
  if (r < RV_REGIME_SLOW || r > RV_REGIME_ULTRARAPID) return "unknown";
  return to_string(static_cast<Regime>(static_cast<int>(r)));
}

rv_status rv_ultrarapid_limit(const rv_trap3d* trap, rv_ultrarapid* out) {
  return guarded([&] {
    need(out, "out");
    const auto u = ultrarapid_limit(to_trap(trap));
    rv_ultrarapid r{};
    r.w_min = u.w_min;
    r.r_Omega = u.r_Omega;
    r.circle_z = u.circle_z;
    r.is_circle = u.kind == UltrarapidLimit::SetKind::Circle ? 1 : 0;
    r.n_points = std::min<size_t>(u.points.size(), 8);
    for (size_t k = 0; k < r.n_points; ++k)
      for (int m = 0; m < 3; ++m) r.points[k][m] = u.points[k][m];
    *out = r;
  });
}

rv_status rv_tf_gamma_limit(const rv_trap3d* trap, const double* gammas, size_t n, double* energies, double* w_min,
                            int* monotone, int* bounded_below) {
  return guarded([&] {
    need(gammas, "gammas");
    need(energies, "energies");
    const auto t = tf_gamma_limit(to_trap(trap), {gammas, gammas + n});
    for (size_t k = 0; k < n; ++k) energies[k] = t.rows[k].energy;
    if (w_min) *w_min = t.w_min;
    if (monotone) *monotone = t.monotone ? 1 : 0;
    if (bounded_below) *bounded_below = t.bounded_below ? 1 : 0;
  });
}

void rv_minimize_defaults(rv_minimize_options* opts) {
  if (!opts) return;
  const MinimizeOptions d;
  *opts = {d.tau, d.tol, d.max_iters, d.patience, d.conjugate ? 1 : 0, d.shift};
}

rv_status rv_field_create(double epsilon, double Omega, int n_r, int n_theta, rv_init init, uint64_t seed,
                          rv_field** out) {
  return guarded([&] {
    need(out, "out");
    InitKind kind;
    if (init == RV_INIT_CONSTANT)
      kind = InitKind::Constant;
    else if (init == RV_INIT_TF_PHASE_NOISE)
      kind = InitKind::TFPhaseNoise;
    else
      fail(ErrorKind::Argument, "unknown initial field kind");
    auto f = make_initial_field(PolarGrid{n_r, n_theta}, GpParams{epsilon, Omega}, kind, seed);
    *out = new rv_field{std::move(f)};
  });
}

rv_status rv_field_clone(const rv_field* f, rv_field** out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = new rv_field{f->field};
  });
}

void rv_field_destroy(rv_field* f) { delete f; }

rv_status rv_field_shape(const rv_field* f, int* n_r, int* n_theta) {
  return guarded([&] {
    need(f, "field");
    if (n_r) *n_r = f->field.grid.n_r;
    if (n_theta) *n_theta = f->field.grid.n_theta;
  });
}

rv_status rv_field_get_values(const rv_field* f, double* re_im, size_t capacity) {
  return guarded([&] {
    need(f, "field");
    need(re_im, "re_im");
    const auto& v = f->field.values;
    fits(capacity, 2 * v.size());
    for (size_t k = 0; k < v.size(); ++k) {
      re_im[2 * k] = v[k].real();
      re_im[2 * k + 1] = v[k].imag();
    }
  });
}

rv_status rv_field_set_values(rv_field* f, const double* re_im, size_t count) {
  return guarded([&] {
    need(f, "field");
    need(re_im, "re_im");
    auto& v = f->field.values;
    if (count != 2 * v.size()) fail(ErrorKind::Argument, "expected exactly 2 n_r n_theta doubles");
    for (size_t k = 0; k < v.size(); ++k) v[k] = {re_im[2 * k], re_im[2 * k + 1]};
  });
}

rv_status rv_field_set_rotation(rv_field* f, double Omega) {
  return guarded([&] {
    need(f, "field");
    require(std::isfinite(Omega) && Omega >= 0.0, "Omega must be finite and >= 0");
    f->field.params.Omega = Omega;
  });
}

rv_status rv_field_energy(const rv_field* f, rv_energy* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = to_c(gp_energy(f->field));
  });
}

rv_status rv_field_gradient(const rv_field* f, double* re_im, size_t capacity) {
  return guarded([&] {
    need(f, "field");
    need(re_im, "re_im");
    std::vector<cplx> g;
    gp_energy_gradient(f->field, g);
    fits(capacity, 2 * g.size());
    for (size_t k = 0; k < g.size(); ++k) {
      re_im[2 * k] = g[k].real();
      re_im[2 * k + 1] = g[k].imag();
    }
  });
}

rv_status rv_field_residual(const rv_field* f, double* mu, double* residual_norm) {
  return guarded([&] {
    need(f, "field");
    const auto r = gp_residual(f->field);
    if (mu) *mu = r.mu;
    if (residual_norm) *residual_norm = r.residual_norm;
  });
}

rv_status rv_field_diamagnetic(const rv_field* f, double* lhs, double* rhs, int* holds) {
  return guarded([&] {
    need(f, "field");
    const auto d = diamagnetic_check(f->field);
    if (lhs) *lhs = d.lhs;
    if (rhs) *rhs = d.rhs;
    if (holds) *holds = d.holds ? 1 : 0;
  });
}

rv_status rv_field_minimize(rv_field* f, const rv_minimize_options* opts, rv_minimize_report* out) {
  return guarded([&] {
    need(f, "field");
    MinimizeOptions o;
    if (opts) o = {opts->tau, opts->tol, opts->max_iters, opts->patience, opts->conjugate != 0, opts->shift};
    const auto r = minimize_gp(f->field, o);
    if (out)
      *out = {r.energy.total, r.final_tau, r.iterations, r.converged ? 1 : 0, r.monotone ? 1 : 0, r.tau_halvings};
  });
}

rv_status rv_field_census(const rv_field* f, double density_floor, double core_radius, rv_vortex* vortices,
                          size_t capacity, size_t* count, int* total_winding) {
  return guarded([&] {
    need(f, "field");
    const auto c = detect_vortices(f->field, CensusOptions{density_floor, core_radius});
    if (count) *count = c.vortices.size();
    if (total_winding) *total_winding = c.total_winding;
    if (vortices) {
      for (size_t k = 0; k < std::min(capacity, c.vortices.size()); ++k)
        vortices[k] = {c.vortices[k].x, c.vortices[k].y, c.vortices[k].winding};
      fits(capacity, c.vortices.size());
    }
  });
}

rv_status rv_lattice_build(double Omega, double r_inner, double r_outer, rv_lattice_type type, double core_radius,
                           rv_lattice** out) {
  return guarded([&] {
    need(out, "out");
    if (type != RV_LATTICE_TRIANGULAR && type != RV_LATTICE_SQUARE) fail(ErrorKind::Argument, "unknown lattice type");
    const auto t = type == RV_LATTICE_SQUARE ? LatticeType::Square : LatticeType::Triangular;
    *out = new rv_lattice{build_lattice(Omega, ClipRegion{r_inner, r_outer}, t, core_radius)};
  });
}

rv_status rv_lattice_from_points(double Omega, const double* xy, size_t n, rv_lattice** out) {
  return guarded([&] {
    need(xy, "xy");
    need(out, "out");
    std::vector<cplx> pts(n);
    for (size_t k = 0; k < n; ++k) pts[k] = {xy[2 * k], xy[2 * k + 1]};
    *out = new rv_lattice{point_set(Omega, std::move(pts))};
  });
}

void rv_lattice_destroy(rv_lattice* l) { delete l; }

rv_status rv_lattice_info(const rv_lattice* l, size_t* count, double* spacing, double* cell_area) {
  return guarded([&] {
    need(l, "lattice");
    if (count) *count = l->lattice.points.size();
    if (spacing) *spacing = l->lattice.spacing;
    if (cell_area) *cell_area = l->lattice.cell_area;
  });
}

rv_status rv_lattice_points(const rv_lattice* l, double* xy, size_t capacity) {
  return guarded([&] {
    need(l, "lattice");
    need(xy, "xy");
    const auto& p = l->lattice.points;
    fits(capacity, 2 * p.size());
    for (size_t k = 0; k < p.size(); ++k) {
      xy[2 * k] = p[k].real();
      xy[2 * k + 1] = p[k].imag();
    }
  });
}

rv_status rv_conjugate_field_check(const rv_lattice* l, const double* xy, size_t n_samples, double h,
                                   double* max_relative_error, int* evaluated, int* rejected) {
  return guarded([&] {
    need(l, "lattice");
    need(xy, "xy");
    std::vector<cplx> samples(n_samples);
    for (size_t k = 0; k < n_samples; ++k) samples[k] = {xy[2 * k], xy[2 * k + 1]};
    const auto c = conjugate_field_check(l->lattice, samples, h);
    if (max_relative_error) *max_relative_error = c.max_relative_error;
    if (evaluated) *evaluated = c.evaluated;
    if (rejected) *rejected = c.rejected;
  });
}

rv_status rv_trial_lattice(double epsilon, double Omega, const rv_lattice* l, double t, rv_trial** out) {
  return guarded([&] {
    need(l, "lattice");
    need(out, "out");
    *out = new rv_trial{lattice_trial(GpParams{epsilon, Omega}, l->lattice, t)};
  });
}

rv_status rv_trial_giant(double epsilon, double Omega, rv_trial** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rv_trial{giant_vortex_trial(GpParams{epsilon, Omega})};
  });
}

void rv_trial_destroy(rv_trial* t) { delete t; }

rv_status rv_trial_info(const rv_trial* t, int* winding, double* core_radius) {
  return guarded([&] {
    need(t, "trial");
    if (winding) *winding = t->state.winding;
    if (core_radius) *core_radius = t->state.core_radius;
  });
}

rv_status rv_trial_sample(const rv_trial* t, int n_r, int n_theta, rv_field** out) {
  return guarded([&] {
    need(t, "trial");
    need(out, "out");
    *out = new rv_field{t->state.sample(PolarGrid{n_r, n_theta})};
  });
}

rv_status rv_cell_energy(double t, double Omega, double* closed_form, double* quadrature) {
  return guarded([&] {
    const auto c = cell_energy(t, Omega);
    if (closed_form) *closed_form = c.closed_form;
    if (quadrature) *quadrature = c.quadrature;
  });
}

rv_status rv_optimal_core_radius(double epsilon, double Omega, double* t) {
  return guarded([&] {
    need(t, "t");
    *t = optimal_core_radius(epsilon, Omega);
  });
}

rv_status rv_predict_asymptotics(double epsilon, double Omega, rv_asymptotics* out) {
  return guarded([&] {
    need(out, "out");
    const auto p = predict_asymptotics(epsilon, Omega);
    rv_asymptotic_regime r = RV_ASYMPT_FINITE_VORTICES;
    switch (p.regime) {
      case AsymptoticRegime::FiniteVortices:
        r = RV_ASYMPT_FINITE_VORTICES;
        break;
      case AsymptoticRegime::LatticeRegimeA:
        r = RV_ASYMPT_LATTICE_A;
        break;
      case AsymptoticRegime::LatticeRegimeB:
        r = RV_ASYMPT_LATTICE_B;
        break;
      case AsymptoticRegime::GiantVortexRegime:
        r = RV_ASYMPT_GIANT_VORTEX;
        break;
    }
    *out = {r, p.subleading, p.omega_1, p.omega_hole, p.omega_giant, p.vortex_count};
  });
}

const char* rv_asymptotic_regime_name(rv_asymptotic_regime r) {
  switch (r) {
    case RV_ASYMPT_FINITE_VORTICES:
      return to_string(AsymptoticRegime::FiniteVortices);
    case RV_ASYMPT_LATTICE_A:
      return to_string(AsymptoticRegime::LatticeRegimeA);
    case RV_ASYMPT_LATTICE_B:
      return to_string(AsymptoticRegime::LatticeRegimeB);
    case RV_ASYMPT_GIANT_VORTEX:
      return to_string(AsymptoticRegime::GiantVortexRegime);
  }
  return "unknown";
}

rv_status rv_vortex_window(double epsilon, double Omega, int* d) {
  return guarded([&] {
    need(d, "d");
    *d = vortex_window(epsilon, Omega);
  });
}

rv_status rv_homogeneous_radius(double epsilon, double s, double* R, double* omega_1) {
  return guarded([&] {
    const auto h = homogeneous_radius(epsilon, s);
    if (R) *R = h.R;
    if (omega_1) *omega_1 = h.omega_1;
  });
}

rv_status rv_giant_vortex_energy_3d(const rv_trap3d* trap, double g, double Omega, int n_r, int n_z,
                                    rv_giant3d* out) {
  return guarded([&] {
    need(out, "out");
    Trial3DOptions o;
    if (n_r > 0) o.n_r = n_r;
    if (n_z > 0) o.n_z = n_z;
    const auto r = giant_vortex_energy_3d(to_trap(trap), g, Omega, o);
    *out = {r.energy, r.tf_energy, r.gap, r.r_Omega, r.winding};
  });
}

rv_status rv_ultrarapid_trial_energy_3d(const rv_trap3d* trap, double Omega, double delta, double g,
                                        rv_ultrarapid_trial* out) {
  return guarded([&] {
    need(out, "out");
    const auto u = ultrarapid_trial_energy_3d(to_trap(trap), Omega, delta, g);
    *out = {u.scaled_energy, u.kinetic, u.rotation, u.potential, u.interaction, u.w_min};
  });
}

rv_status rv_harmonic_estimates(double omega_osc, double Omega, double N, double a, double k_lo, double k_hi,
                                rv_harmonic* out) {
  return guarded([&] {
    need(out, "out");
    HarmonicThresholds th;
    if (k_lo > 0.0) th.k_lo = k_lo;
    if (k_hi > 0.0) th.k_hi = k_hi;
    const auto e = harmonic_estimates(omega_osc, Omega, N, a, th);
    rv_regime_flag f = RV_FLAG_INDETERMINATE;
    if (e.regime_flag == RegimeFlag::GPExpected) f = RV_FLAG_GP;
    if (e.regime_flag == RegimeFlag::FQHEExpected) f = RV_FLAG_FQHE;
    *out = {e.omega_osc, e.omega_c, e.R, e.X, e.ratio, f};
  });
}

const char* rv_regime_flag_name(rv_regime_flag f) {
  switch (f) {
    case RV_FLAG_GP:
      return to_string(RegimeFlag::GPExpected);
    case RV_FLAG_FQHE:
      return to_string(RegimeFlag::FQHEExpected);
    case RV_FLAG_INDETERMINATE:
      return to_string(RegimeFlag::Indeterminate);
  }
  return "unknown";
}

}  // extern "C"
