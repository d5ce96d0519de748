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

// The rotating 2D GP functional on the unit disc (flat trap, Neumann wall):
//
//   E[psi] = int |(i grad + A) psi|^2 - Omega^2 r^2 |psi|^2 / 4 + |psi|^4 / eps^2,
//   A = Omega r e_theta / 2,
//
// discretized on a cell-centered polar grid. Ring i sits at r_i = (i + 1/2) dr,
// node (i, j) at angle j dtheta and carries the quadrature weight r_i dr dtheta.
// Derivatives live on cell faces:
//
//   radial face  (i, i+1):  (psi_{i+1} - psi_i) / dr          weight (i+1) dr^2 dtheta
//   angular face (j, j+1):  (psi_{j+1} - psi_j) / (r dtheta)
//                           - i (Omega r / 2) (psi_{j+1} + psi_j) / 2   weight r_i dr dtheta
//
// No face crosses r = 0 (zero area) or r = 1 (Neumann reflection), so the
// discrete energy is an exact quadratic-plus-quartic form whose gradient is
// computed exactly. The constant field cancels the centrifugal term node by
// node and the discrete diamagnetic inequality holds face by face.

#ifndef ROTOVORT_GP_FIELD_HPP
#define ROTOVORT_GP_FIELD_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "rotovort/tf.hpp"

namespace rotovort {

using cplx = std::complex<double>;

struct PolarGrid {
  int n_r = 256;
  int n_theta = 512;

  PolarGrid() = default;
  PolarGrid(int n_r, int n_theta);

  double dr() const { return 1.0 / n_r; }
  double dtheta() const;
  double r(int i) const { return (i + 0.5) / n_r; }
  double theta(int j) const { return j * dtheta(); }
  double weight(int i) const { return r(i) * dr() * dtheta(); }
  std::size_t size() const { return static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_theta); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(j);
  }
  /// Sum of all node weights; pi up to round-off.
  double total_weight() const;
  void validate() const;
};

struct GpParams {
  double epsilon = 0.1;
  double Omega = 0.0;
};

struct ComplexField2D {
  PolarGrid grid;
  GpParams params;
  std::vector<cplx> values;  // ring-major: values[grid.index(i, j)]

  ComplexField2D() = default;
  ComplexField2D(PolarGrid grid, GpParams params);

  cplx& at(int i, int j) { return values[grid.index(i, j)]; }
  const cplx& at(int i, int j) const { return values[grid.index(i, j)]; }

  /// int |psi|^2 with the grid weights.
  double norm_sq() const;
  void normalize();
  /// Re int conj(a) b.
  static double inner(const ComplexField2D& a, const ComplexField2D& b);
};

/// Samples f(r, theta) on the grid (no normalization).
ComplexField2D sample_field(const PolarGrid& grid, GpParams params, const std::function<cplx(double, double)>& f);

struct EnergyBreakdown {
  double kinetic_covariant = 0.0;
  double centrifugal = 0.0;
  double interaction = 0.0;
  double trap = 0.0;  // flat trap: identically zero
  double total = 0.0;
};

EnergyBreakdown gp_energy(const ComplexField2D& field);

/// Energy plus its L2 gradient: E[psi + d] = E[psi] + Re int conj(grad) d + O(d^2).
EnergyBreakdown gp_energy_gradient(const ComplexField2D& field, std::vector<cplx>& grad);

/// H psi with H = -(grad - iA)^2 - Omega^2 r^2 / 4 + 2 |psi|^2 / eps^2, i.e. half the gradient.
std::vector<cplx> apply_gp_hamiltonian(const ComplexField2D& field);

struct Residual {
  double mu = 0.0;
  double residual_norm = 0.0;
};

/// mu = <psi, H psi>, residual = || H psi - mu psi ||.
Residual gp_residual(const ComplexField2D& field);

enum class InitKind { Constant, TFPhaseNoise, LatticeTrial };

const char* to_string(InitKind k);

/// Constant and TFPhaseNoise initial states (LatticeTrial is built by vortex_lattice).
/// TFPhaseNoise uses sqrt of the regularized TF density as amplitude and a
/// seeded uniform phase in [0, 2 pi) at every node.
ComplexField2D make_initial_field(const PolarGrid& grid, GpParams params, InitKind kind, std::uint64_t seed = 0);

/// rho^TF + eta^2 with eta = eps * max sqrt(rho^TF); fields built from it are renormalized.
double regularized_tf_density(const Tf2dSolution& tf, double r);

struct MinimizeOptions {
  double tau = 1.0;          // initial step along the preconditioned descent direction
  double tol = 1e-10;        // relative energy change threshold
  int max_iters = 5000;
  int patience = 5;          // consecutive iterations below tol required
  bool conjugate = true;     // Polak-Ribiere momentum on top of the preconditioned flow
  double shift = -1.0;       // preconditioner shift; <= 0 selects 2/(pi eps^2) + 1
};

struct MinimizeReport {
  EnergyBreakdown energy;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;   // every accepted iterate lowered (or kept) the energy
  double final_tau = 0.0;
  int tau_halvings = 0;
  std::vector<double> history;  // energy after each accepted iteration
};

/// Normalized, preconditioned gradient flow on the unit sphere,
///   psi <- normalize(psi - tau P^{-1} (grad E - 2 mu psi)),
/// with P = shift + kinetic operator (block-tridiagonal in angular Fourier
/// modes). tau is chosen by exact minimization of E along the step (the
/// energy is a rational function of tau there) and halved on any increase.
/// The field is updated in place and left normalized.
MinimizeReport minimize_gp(ComplexField2D& field, const MinimizeOptions& opts = {});

struct Vortex {
  double x = 0.0;
  double y = 0.0;
  int winding = 0;
};

struct VortexCensus {
  std::vector<Vortex> vortices;
  int total_winding = 0;
};

struct CensusOptions {
  double density_floor = 0.05;  // fraction of max |psi|^2
  /// A winding plaquette is kept when the densest node within this distance
  /// of its center exceeds the floor. 0 requires all four corners to exceed
  /// it; a negative value selects 3 eps, which reaches past a resolved core.
  double core_radius = -1.0;
};

/// Phase-winding census over grid plaquettes plus the central polygon.
VortexCensus detect_vortices(const ComplexField2D& field, const CensusOptions& opts = {});

/// Winding of the phase around ring i (counterclockwise).
int loop_winding(const ComplexField2D& field, int ring);

struct DiamagneticCheck {
  double lhs = 0.0;  // int |(grad - iA) psi|^2
  double rhs = 0.0;  // int |grad |psi||^2
  bool holds = false;
};

DiamagneticCheck diamagnetic_check(const ComplexField2D& field);

}  // namespace rotovort

#endif  // ROTOVORT_GP_FIELD_HPP
