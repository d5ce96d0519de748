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

// Thomas-Fermi theory: the flat 2D disc (closed form) and homogeneous 3D
// traps (chemical potential by root finding on the normalization).

#ifndef ROTOVORT_TF_HPP
#define ROTOVORT_TF_HPP

#include <array>
#include <numbers>
#include <vector>

namespace rotovort {

/// Hole threshold: the 2D flat-trap TF density vanishes at the center once
/// Omega * epsilon exceeds this value.
inline constexpr double kOmegaHole = 4.0 / 1.7724538509055160273;  // 4 / sqrt(pi)

enum class SupportKind { Disc, Annulus, Region3D };

/// Minimizer of the TF functional on the unit disc,
///   int_{|r|<=1} { -Omega^2 r^2 rho / 4 + rho^2 / epsilon^2 },
/// over probability densities.
struct Tf2dSolution {
  double epsilon = 0.0;
  double Omega = 0.0;
  double mu = 0.0;
  double energy = 0.0;
  double r_inner = 0.0;  // hole radius, 0 for a disc support
  SupportKind support = SupportKind::Disc;
  double integral_rho_sq = 0.0;

  double density(double r) const;
  double max_density() const { return density(1.0); }
};

Tf2dSolution tf2d_flat(double epsilon, double Omega);

struct Trap3D {
  enum class Form { RadialZ, Anisotropic };
  Form form = Form::RadialZ;
  // RadialZ: V = c_r r^s + c_z |z|^s.  Anisotropic: c_x |x|^s + c_y |y|^s + c_z |z|^s.
  double c_r = 1.0;
  double c_x = 1.0;
  double c_y = 1.0;
  double c_z = 1.0;
  double s = 4.0;

  static Trap3D radial_z(double c_r, double c_z, double s);
  static Trap3D anisotropic(double c_x, double c_y, double c_z, double s);

  double operator()(double x, double y, double z) const;
  void validate() const;
};

struct Tf3dSolution {
  Trap3D trap;
  double g = 0.0;
  double Omega = 0.0;
  double mu = 0.0;
  double energy = 0.0;          // quadrature of the TF functional
  double integral_rho_sq = 0.0;  // int rho^2
  double normalization = 0.0;    // int rho, 1 up to quadrature tolerance
  SupportKind support = SupportKind::Region3D;
  // bounding box of the support: |x|,|y| <= extent_xy (r <= extent_xy for RadialZ), |z| <= extent_z
  double extent_xy = 0.0;
  double extent_z = 0.0;

  double density(double x, double y, double z) const;
};

/// rho(x) = [mu + Omega^2 r^2 / 4 - V(x)]_+ / (2 g) with mu fixed by int rho = 1.
Tf3dSolution tf3d(const Trap3D& trap, double g, double Omega);

/// int [mu + Omega^2 r^2/4 - V]_+ d^3x / (2 g); exposed for diagnostics and tests.
double tf3d_normalization(const Trap3D& trap, double g, double Omega, double mu);

enum class Regime { Slow, Rapid, Ultrarapid };

struct ScalingReport {
  double lambda = 0.0;
  double omega = 0.0;
  double gamma = 0.0;  // +inf when omega == 0
  Regime regime = Regime::Slow;
};

struct RegimeThresholds {
  double omega_lo = 0.1;
  double omega_hi = 10.0;
};

ScalingReport scaling_map(double g, double Omega, double s, RegimeThresholds thresholds = {});

const char* to_string(Regime r);

struct UltrarapidLimit {
  enum class SetKind { Circle, PointSet };
  double w_min = 0.0;    // inf of W = V - r^2/4
  double r_Omega = 0.0;  // common distance of the minimizers from the axis
  SetKind kind = SetKind::Circle;
  double circle_z = 0.0;
  std::vector<std::array<double, 3>> points;  // PointSet members, or one representative of the circle
};

/// Minimizers of W = V - r^2/4.
UltrarapidLimit ultrarapid_limit(const Trap3D& trap);

struct GammaLimitRow {
  double gamma = 0.0;
  double energy = 0.0;  // E^TF_{gamma,1}
  double gap = 0.0;     // energy - w_min
};

struct GammaLimitTable {
  double w_min = 0.0;
  std::vector<GammaLimitRow> rows;
  bool monotone = false;        // energy nonincreasing as gamma decreases
  bool bounded_below = false;   // every energy >= w_min
};

GammaLimitTable tf_gamma_limit(const Trap3D& trap, const std::vector<double>& gammas);

}  // namespace rotovort

#endif  // ROTOVORT_TF_HPP
