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

// Upper-bound trial states for the rotating gas: vortex lattices and the
// giant vortex on the flat disc, their 3D counterparts in homogeneous traps,
// and the closed-form asymptotic bookkeeping they are compared against.

#ifndef ROTOVORT_VORTEX_LATTICE_HPP
#define ROTOVORT_VORTEX_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "rotovort/gp_field.hpp"
#include "rotovort/tf.hpp"

namespace rotovort {

enum class LatticeType { Triangular, Square };

const char* to_string(LatticeType t);

/// Disc or centered annulus r_inner <= |zeta| <= r_outer.
struct ClipRegion {
  double r_inner = 0.0;
  double r_outer = 1.0;

  static ClipRegion unit_disc() { return {}; }
  /// Support of the 2D TF density: the disc, or the annulus past the hole.
  static ClipRegion support_of(const Tf2dSolution& tf);
  double area() const;
  /// True when the closed disc of radius t around c lies inside the region.
  bool contains_disc(cplx c, double t) const;
  void validate() const;
};

struct VortexLattice {
  std::vector<cplx> points;
  LatticeType type = LatticeType::Triangular;
  double Omega = 0.0;
  double cell_area = 0.0;  // 2 pi / Omega
  double spacing = 0.0;    // nearest-neighbour distance
  double core_radius = 0.0;
  ClipRegion region;
};

/// Lattice with one point at the origin and cell area 2 pi / Omega, keeping
/// the points whose whole core disc (radius core_radius) lies in the region.
VortexLattice build_lattice(double Omega, const ClipRegion& region, LatticeType type = LatticeType::Triangular,
                            double core_radius = 0.0);

/// Vortices at arbitrary positions inside the unit disc. spacing is the
/// smallest pairwise distance (+inf for a single point).
VortexLattice point_set(double Omega, std::vector<cplx> points);

/// Spacing of a lattice with the given cell area.
double lattice_spacing(LatticeType type, double cell_area);

enum class TrialKind { Lattice, GiantVortex };

const char* to_string(TrialKind k);

/// psi = f sqrt(rho_reg) exp(i phi). rho_reg = rho^TF + eta^2 with
/// eta = eps max sqrt(rho^TF), times an amplitude ramp of width eps that
/// switches the density off inside the TF hole. Lattice: phi is the product
/// phase of the points and f ramps linearly to zero inside each core.
/// Giant vortex: phi = n theta, n = floor(Omega / 2), and without a hole f
/// ramps to zero linearly inside r < eps when n > 0.
struct TrialState {
  TrialKind kind = TrialKind::Lattice;
  GpParams params;
  Tf2dSolution tf;
  VortexLattice lattice;
  double core_radius = 0.0;
  int winding = 0;

  /// Unnormalized trial value at (r, theta).
  cplx value(double r, double theta) const;
  /// Regularized density with the hole cutoff, before normalization.
  double regularized_density(double r) const;
  /// The state on a grid, normalized there.
  ComplexField2D sample(const PolarGrid& grid) const;
};

TrialState lattice_trial(GpParams params, const VortexLattice& lattice, double t);
TrialState giant_vortex_trial(GpParams params);

struct ConjugateFieldCheck {
  double max_relative_error = 0.0;
  int evaluated = 0;
  int rejected = 0;  // samples within 2 h of a vortex
};

/// Compares |grad phi - Omega r e_theta / 2|^2 with |grad chi - Omega r e_r / 2|^2,
/// chi = sum log|r - r_i|, by central differences of step h. The error at a
/// sample is taken relative to |grad chi|^2 + (Omega r / 2)^2.
ConjugateFieldCheck conjugate_field_check(const VortexLattice& lattice, const std::vector<cplx>& samples, double h);

struct CellEnergy {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// pi |log(t^2 Omega)| and 2 pi int_t^{Omega^{-1/2}} r^{-2} r dr.
CellEnergy cell_energy(double t, double Omega);

/// eps for Omega <= 1/eps, sqrt(eps / Omega) above.
double optimal_core_radius(double epsilon, double Omega);

enum class AsymptoticRegime { FiniteVortices, LatticeRegimeA, LatticeRegimeB, GiantVortexRegime };

const char* to_string(AsymptoticRegime r);

struct AsymptoticPrediction {
  AsymptoticRegime regime = AsymptoticRegime::FiniteVortices;
  double subleading = 0.0;  // predicted E^GP - E^TF; NaN where no formula applies
  double omega_1 = 0.0;     // pi |log eps|
  double omega_hole = 0.0;  // (4 / sqrt(pi)) / eps
  double omega_giant = 0.0; // 1 / (eps^2 |log eps|)
  int vortex_count = 0;     // window index d, meaningful for FiniteVortices
};

/// Regime boundaries: FiniteVortices while Omega / pi <= |log eps| + log|log eps|
/// (at most one vortex by the counting windows), LatticeRegimeB below 1/eps,
/// LatticeRegimeA below 1/(eps^2 |log eps|), GiantVortexRegime beyond.
AsymptoticPrediction predict_asymptotics(double epsilon, double Omega);

/// Number of vortices d predicted by the counting windows
/// |log eps| + (d-1) log|log eps| < Omega / pi <= |log eps| + d log|log eps|.
int vortex_window(double epsilon, double Omega);

struct HomogeneousRadius {
  double R = 0.0;        // eps^{-2/(s+2)}
  double omega_1 = 0.0;  // eps^{4/(s+2)} |log eps|
};

HomogeneousRadius homogeneous_radius(double epsilon, double s);

// ---------------------------------------------------------------------------
// 3D trial energies

struct GiantVortex3D {
  double energy = 0.0;     // GP energy of the trial state
  double tf_energy = 0.0;  // E^TF at the same (g, Omega)
  double gap = 0.0;        // energy - tf_energy
  int winding = 0;         // floor(r_Omega^2 Omega / 2)
  double r_Omega = 0.0;    // radius minimizing V - Omega^2 r^2 / 4 in the z = 0 plane
};

struct Trial3DOptions {
  int n_r = 1200;  // Gauss nodes across each radial slice (panels of 20)
  int n_z = 600;   // Gauss nodes across the axial half-support
};

/// psi = sqrt(rho_reg(r, z)) exp(i n theta) with sqrt(rho_reg) = sqrt(rho^TF + eta^2) - eta
/// (compact support, Lipschitz), eta = kappa sqrt(max rho^TF) with
/// kappa = (healing length) / (cloud radius), cut off linearly inside the
/// healing length around the axis when n > 0, and renormalized.
/// Requires a RadialZ trap.
GiantVortex3D giant_vortex_energy_3d(const Trap3D& trap, double g, double Omega, const Trial3DOptions& opts = {});

struct UltrarapidTrial {
  double scaled_energy = 0.0;  // Omega^{-2s/(s-2)} E
  double kinetic = 0.0;        // Omega'^{-2} int |grad sqrt h|^2
  double rotation = 0.0;       // int |(y - y0)_perp|^2 h / 4
  double potential = 0.0;      // int W h
  double interaction = 0.0;    // gamma int h^2
  double w_min = 0.0;
};

/// Energy of sqrt(h_delta(x - x0)) exp(i Omega x . (e_z ^ x0) / 2) for x0 in
/// the minimizing set, evaluated in the coordinates y = Omega^{-2/(s-2)} x
/// where the set sits at distance r_Omega from the axis. delta is measured
/// in those coordinates.
UltrarapidTrial ultrarapid_trial_energy_3d(const Trap3D& trap, double Omega, double delta, double g = 1.0);

}  // namespace rotovort

#endif  // ROTOVORT_VORTEX_LATTICE_HPP
