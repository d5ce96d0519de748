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


/* C interface to rotovort. Every call returns an rv_status; on failure the
 * message is available from rv_last_error() on the same thread. Results are
 * written through out-pointers only on success. */

#ifndef ROTOVORT_H
#define ROTOVORT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RV_API __declspec(dllexport)
#else
#define RV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rv_status {
  RV_OK = 0,
  RV_ERR_ARGUMENT = 1,
  RV_ERR_RANGE = 2,
  RV_ERR_SOLVER = 3,
  RV_ERR_NUMERIC = 4,
  RV_ERR_UNSUPPORTED = 5,
  RV_ERR_DEGENERATE = 6,
  RV_ERR_UNBOUNDED = 7,
  RV_ERR_IO = 8,
  RV_ERR_NULL = 9,
  RV_ERR_BUFFER = 10, /* caller buffer too small; the needed size is still reported */
  RV_ERR_INTERNAL = 99
} rv_status;

RV_API const char* rv_version(void);
RV_API const char* rv_status_name(rv_status s);
/* Message of the last failed call on this thread, "" if none. */
RV_API const char* rv_last_error(void);

/* ---- scattering and gas parameters ---- */

RV_API rv_status rv_scattering_hard_core(double radius, double* a);
RV_API rv_status rv_scattering_square_barrier(double height, double radius, double r_max, size_t steps, double* a);
RV_API rv_status rv_scattering_tabulated(const double* r, const double* v, size_t n, double r_max, size_t steps,
                                         double* a);

typedef struct rv_gas_params {
  double a, N, L, rho, g, epsilon, Omega;
  double healing_length;
  double diluteness; /* a^3 rho */
  int dilute;
} rv_gas_params;

RV_API rv_status rv_derive_params(double a, double N, double L, double Omega, rv_gas_params* out);

/* ---- Thomas-Fermi ---- */

typedef enum rv_support { RV_SUPPORT_DISC = 0, RV_SUPPORT_ANNULUS = 1, RV_SUPPORT_REGION3D = 2 } rv_support;

typedef struct rv_tf2d {
  double epsilon, Omega, mu, energy, r_inner, integral_rho_sq, rho_center, rho_max;
  rv_support support;
} rv_tf2d;

RV_API double rv_omega_hole(void);
RV_API rv_status rv_tf2d_flat(double epsilon, double Omega, rv_tf2d* out);
RV_API rv_status rv_tf2d_density(double epsilon, double Omega, double r, double* rho);

typedef enum rv_trap_form { RV_TRAP_RADIAL_Z = 0, RV_TRAP_ANISOTROPIC = 1 } rv_trap_form;

typedef struct rv_trap3d {
  rv_trap_form form;
  double c_r, c_x, c_y, c_z, s;
} rv_trap3d;

typedef struct rv_tf3d {
  double g, Omega, mu, energy, integral_rho_sq, normalization, extent_xy, extent_z;
} rv_tf3d;

RV_API rv_status rv_tf3d_solve(const rv_trap3d* trap, double g, double Omega, rv_tf3d* out);
RV_API rv_status rv_tf3d_density(const rv_trap3d* trap, double g, double Omega, double x, double y, double z,
                                 double* rho);

typedef enum rv_regime { RV_REGIME_SLOW = 0, RV_REGIME_RAPID = 1, RV_REGIME_ULTRARAPID = 2 } rv_regime;

typedef struct rv_scaling {
  double lambda, omega, gamma;
  rv_regime regime;
} rv_scaling;

/* omega_lo, omega_hi <= 0 select the defaults 0.1 and 10. */
RV_API rv_status rv_scaling_map(double g, double Omega, double s, double omega_lo, double omega_hi, rv_scaling* out);
RV_API const char* rv_regime_name(rv_regime r);

typedef struct rv_ultrarapid {
  double w_min, r_Omega, circle_z;
  int is_circle;
  size_t n_points;
  double points[8][3];
} rv_ultrarapid;

RV_API rv_status rv_ultrarapid_limit(const rv_trap3d* trap, rv_ultrarapid* out);

/* energies[k] = E^TF_{gamma_k,1}; flags report the monotone approach. */
RV_API rv_status rv_tf_gamma_limit(const rv_trap3d* trap, const double* gammas, size_t n, double* energies,
                                   double* w_min, int* monotone, int* bounded_below);

/* ---- GP fields on the unit disc ---- */

typedef struct rv_field rv_field;

typedef enum rv_init { RV_INIT_CONSTANT = 0, RV_INIT_TF_PHASE_NOISE = 1 } rv_init;

typedef struct rv_energy {
  double kinetic_covariant, centrifugal, interaction, trap, total;
} rv_energy;

typedef struct rv_minimize_options {
  double tau, tol;
  int max_iters, patience, conjugate;
  double shift;
} rv_minimize_options;

typedef struct rv_minimize_report {
  double energy, final_tau;
  int iterations, converged, monotone, tau_halvings;
} rv_minimize_report;

typedef struct rv_vortex {
  double x, y;
  int winding;
} rv_vortex;

RV_API void rv_minimize_defaults(rv_minimize_options* opts);

RV_API rv_status rv_field_create(double epsilon, double Omega, int n_r, int n_theta, rv_init init, uint64_t seed,
                                 rv_field** out);
RV_API rv_status rv_field_clone(const rv_field* f, rv_field** out);
RV_API void rv_field_destroy(rv_field* f);
RV_API rv_status rv_field_shape(const rv_field* f, int* n_r, int* n_theta);
/* Interleaved (re, im) pairs in ring-major order, 2 n_r n_theta doubles. */
RV_API rv_status rv_field_get_values(const rv_field* f, double* re_im, size_t capacity);
RV_API rv_status rv_field_set_values(rv_field* f, const double* re_im, size_t count);
RV_API rv_status rv_field_set_rotation(rv_field* f, double Omega);
RV_API rv_status rv_field_energy(const rv_field* f, rv_energy* out);
RV_API rv_status rv_field_gradient(const rv_field* f, double* re_im, size_t capacity);
RV_API rv_status rv_field_residual(const rv_field* f, double* mu, double* residual_norm);
RV_API rv_status rv_field_diamagnetic(const rv_field* f, double* lhs, double* rhs, int* holds);
RV_API rv_status rv_field_minimize(rv_field* f, const rv_minimize_options* opts, rv_minimize_report* out);
/* Reports the count and total winding; fills up to capacity vortices and returns
 * RV_ERR_BUFFER when more were found. vortices may be NULL to query the count. */
RV_API rv_status rv_field_census(const rv_field* f, double density_floor, double core_radius, rv_vortex* vortices,
                                 size_t capacity, size_t* count, int* total_winding);

/* ---- lattices and trial states ---- */

typedef struct rv_lattice rv_lattice;
typedef struct rv_trial rv_trial;

typedef enum rv_lattice_type { RV_LATTICE_TRIANGULAR = 0, RV_LATTICE_SQUARE = 1 } rv_lattice_type;

RV_API rv_status rv_lattice_build(double Omega, double r_inner, double r_outer, rv_lattice_type type,
                                  double core_radius, rv_lattice** out);
/* Vortices at explicit positions (interleaved x, y) inside the unit disc. */
RV_API rv_status rv_lattice_from_points(double Omega, const double* xy, size_t n, rv_lattice** out);
RV_API void rv_lattice_destroy(rv_lattice* l);
RV_API rv_status rv_lattice_info(const rv_lattice* l, size_t* count, double* spacing, double* cell_area);
/* Interleaved (x, y) pairs. */
RV_API rv_status rv_lattice_points(const rv_lattice* l, double* xy, size_t capacity);
RV_API rv_status rv_conjugate_field_check(const rv_lattice* l, const double* xy, size_t n_samples, double h,
                                          double* max_relative_error, int* evaluated, int* rejected);

RV_API rv_status rv_trial_lattice(double epsilon, double Omega, const rv_lattice* l, double t, rv_trial** out);
RV_API rv_status rv_trial_giant(double epsilon, double Omega, rv_trial** out);
RV_API void rv_trial_destroy(rv_trial* t);
RV_API rv_status rv_trial_info(const rv_trial* t, int* winding, double* core_radius);
RV_API rv_status rv_trial_sample(const rv_trial* t, int n_r, int n_theta, rv_field** out);

RV_API rv_status rv_cell_energy(double t, double Omega, double* closed_form, double* quadrature);
RV_API rv_status rv_optimal_core_radius(double epsilon, double Omega, double* t);

typedef enum rv_asymptotic_regime {
  RV_ASYMPT_FINITE_VORTICES = 0,
  RV_ASYMPT_LATTICE_A = 1,
  RV_ASYMPT_LATTICE_B = 2,
  RV_ASYMPT_GIANT_VORTEX = 3
} rv_asymptotic_regime;

typedef struct rv_asymptotics {
  rv_asymptotic_regime regime;
  double subleading, omega_1, omega_hole, omega_giant;
  int vortex_count;
} rv_asymptotics;

RV_API rv_status rv_predict_asymptotics(double epsilon, double Omega, rv_asymptotics* out);
RV_API const char* rv_asymptotic_regime_name(rv_asymptotic_regime r);
RV_API rv_status rv_vortex_window(double epsilon, double Omega, int* d);
RV_API rv_status rv_homogeneous_radius(double epsilon, double s, double* R, double* omega_1);

/* ---- 3D trial energies ---- */

typedef struct rv_giant3d {
  double energy, tf_energy, gap, r_Omega;
  int winding;
} rv_giant3d;

/* n_r, n_z <= 0 select the defaults. */
RV_API rv_status rv_giant_vortex_energy_3d(const rv_trap3d* trap, double g, double Omega, int n_r, int n_z,
                                           rv_giant3d* out);

typedef struct rv_ultrarapid_trial {
  double scaled_energy, kinetic, rotation, potential, interaction, w_min;
} rv_ultrarapid_trial;

RV_API rv_status rv_ultrarapid_trial_energy_3d(const rv_trap3d* trap, double Omega, double delta, double g,
                                               rv_ultrarapid_trial* out);

/* ---- harmonic traps ---- */

typedef enum rv_regime_flag { RV_FLAG_GP = 0, RV_FLAG_FQHE = 1, RV_FLAG_INDETERMINATE = 2 } rv_regime_flag;

typedef struct rv_harmonic {
  double omega_osc, omega_c, R, X, ratio;
  rv_regime_flag flag;
} rv_harmonic;

/* k_lo, k_hi <= 0 select the defaults 10 and 1e3. */
RV_API rv_status rv_harmonic_estimates(double omega_osc, double Omega, double N, double a, double k_lo, double k_hi,
                                       rv_harmonic* out);
RV_API const char* rv_regime_flag_name(rv_regime_flag f);

#ifdef __cplusplus
}
#endif

#endif /* ROTOVORT_H */
