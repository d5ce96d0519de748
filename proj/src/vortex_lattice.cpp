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
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "rotovort/error.hpp"
#include "rotovort/vortex_lattice.hpp"

namespace rotovort {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

const char* to_string(LatticeType t) { return t == LatticeType::Triangular ? "triangular" : "square"; }

const char* to_string(TrialKind k) { return k == TrialKind::Lattice ? "lattice" : "giant_vortex"; }

ClipRegion ClipRegion::support_of(const Tf2dSolution& tf) { return {tf.r_inner, 1.0}; }

double ClipRegion::area() const { return kPi * (r_outer * r_outer - r_inner * r_inner); }

bool ClipRegion::contains_disc(cplx c, double t) const {
  const double r = std::abs(c);
  return r + t <= r_outer && (r_inner <= 0.0 || r - t >= r_inner);
}

void ClipRegion::validate() const {
  require(std::isfinite(r_inner) && std::isfinite(r_outer) && r_inner >= 0.0 && r_outer > r_inner,
          "clip region: need 0 <= r_inner < r_outer");
}

double lattice_spacing(LatticeType type, double cell_area) {
  return type == LatticeType::Triangular ? std::sqrt(2.0 * cell_area / std::sqrt(3.0)) : std::sqrt(cell_area);
}

VortexLattice build_lattice(double Omega, const ClipRegion& region, LatticeType type, double core_radius) {
  require(std::isfinite(Omega) && Omega > 0.0, "build_lattice: Omega must be > 0");
  region.validate();
  VortexLattice lat;
  lat.type = type;
  lat.Omega = Omega;
  lat.cell_area = 2.0 * kPi / Omega;
  lat.spacing = lattice_spacing(type, lat.cell_area);
  lat.core_radius = core_radius;
  lat.region = region;
  require(std::isfinite(core_radius) && core_radius >= 0.0, "build_lattice: core radius must be >= 0");
  require(core_radius < 0.5 * lat.spacing, "build_lattice: core radius must be below half the lattice spacing");

  const cplx a1(lat.spacing, 0.0);
  const cplx a2 = type == LatticeType::Triangular ? lat.spacing * cplx(0.5, 0.5 * std::sqrt(3.0)) : cplx(0.0, lat.spacing);
  const double row = a2.imag();
  const int kmax = static_cast<int>(std::ceil(region.r_outer / row)) + 2;
  for (int k2 = -kmax; k2 <= kmax; ++k2) {
    for (int k1 = -2 * kmax; k1 <= 2 * kmax; ++k1) {
      const cplx p = static_cast<double>(k1) * a1 + static_cast<double>(k2) * a2;
      if (region.contains_disc(p, core_radius)) lat.points.push_back(p);
    }
  }
  if (lat.points.empty()) fail(ErrorKind::Degenerate, "build_lattice: no lattice point fits inside the region");
  return lat;
}

// ---------------------------------------------------------------------------

double TrialState::regularized_density(double r) const {
  double rho = regularized_tf_density(tf, r);
  if (tf.support == SupportKind::Annulus) {
    // amplitude ramp from r_inner - w up to r_inner
    const double w = std::min(params.epsilon, tf.r_inner);
    const double ramp = clamp01((r - (tf.r_inner - w)) / w);
    rho *= ramp * ramp;
  }
  return rho;
}

cplx TrialState::value(double r, double theta) const {
  const double amp = std::sqrt(regularized_density(r));
  if (amp == 0.0) return {0.0, 0.0};
  if (kind == TrialKind::GiantVortex) {
    double f = 1.0;
    if (winding > 0 && tf.support == SupportKind::Disc) f = clamp01(r / core_radius);
    return std::polar(amp * f, winding * theta);
  }
  const cplx zeta = std::polar(r, theta);
  cplx phase(1.0, 0.0);
  double f = 1.0;
  for (const cplx& p : lattice.points) {
    const cplx d = zeta - p;
    const double n = std::norm(d);
    if (n == 0.0) return {0.0, 0.0};
    const double dist = std::sqrt(n);
    phase *= d / dist;
    if (dist < core_radius) f = std::min(f, dist / core_radius);
  }
  return amp * f * phase;
}

ComplexField2D TrialState::sample(const PolarGrid& grid) const {
  ComplexField2D out(grid, params);
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) out.at(i, j) = value(grid.r(i), grid.theta(j));
  }
  out.normalize();
  return out;
}

VortexLattice point_set(double Omega, std::vector<cplx> points) {
  require(std::isfinite(Omega) && Omega > 0.0, "point_set: Omega must be > 0");
  if (points.empty()) fail(ErrorKind::Degenerate, "point_set: no points");
  VortexLattice lat;
  lat.Omega = Omega;
  lat.cell_area = 2.0 * kPi / Omega;
  lat.spacing = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points.size(); ++a) {
    require(std::isfinite(points[a].real()) && std::isfinite(points[a].imag()) && std::abs(points[a]) < 1.0,
            "point_set: points must lie inside the unit disc");
    for (std::size_t b = a + 1; b < points.size(); ++b)
      lat.spacing = std::min(lat.spacing, std::abs(points[a] - points[b]));
  }
  lat.points = std::move(points);
  return lat;
}

TrialState lattice_trial(GpParams params, const VortexLattice& lattice, double t) {
  require(std::isfinite(params.epsilon) && params.epsilon > 0.0, "lattice_trial: epsilon must be > 0");
  require(std::isfinite(params.Omega) && params.Omega >= 0.0, "lattice_trial: Omega must be >= 0");
  require(std::isfinite(t) && t > 0.0, "lattice_trial: core radius t must be > 0");
  const auto& pts = lattice.points;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (std::abs(pts[a] - pts[b]) < 2.0 * t) fail(ErrorKind::Argument, "lattice_trial: vortex cores overlap");
    }
  }
  TrialState s;
  s.kind = TrialKind::Lattice;
  s.params = params;
  s.tf = tf2d_flat(params.epsilon, params.Omega);
  s.lattice = lattice;
  s.lattice.core_radius = t;
  s.core_radius = t;
  s.winding = static_cast<int>(pts.size());
  return s;
}

TrialState giant_vortex_trial(GpParams params) {
  require(std::isfinite(params.epsilon) && params.epsilon > 0.0, "giant_vortex_trial: epsilon must be > 0");
  require(std::isfinite(params.Omega) && params.Omega > 0.0, "giant_vortex_trial: Omega must be > 0");
  TrialState s;
  s.kind = TrialKind::GiantVortex;
  s.params = params;
  s.tf = tf2d_flat(params.epsilon, params.Omega);
  s.winding = static_cast<int>(std::floor(0.5 * params.Omega));
  s.core_radius = params.epsilon;
  return s;
}

// ---------------------------------------------------------------------------

ConjugateFieldCheck conjugate_field_check(const VortexLattice& lattice, const std::vector<cplx>& samples, double h) {
  require(std::isfinite(h) && h > 0.0, "conjugate_field_check: step h must be > 0");
  const double Om = lattice.Omega;
  // phase difference between two points, summed vortex by vortex (no branch cuts)
  auto dphi = [&](cplx a, cplx b) {
    double s = 0.0;
    for (const cplx& p : lattice.points) s += std::arg((b - p) / (a - p));
    return s;
  };
  auto chi = [&](cplx a) {
    double s = 0.0;
    for (const cplx& p : lattice.points) s += std::log(std::abs(a - p));
    return s;
  };
  ConjugateFieldCheck out;
  for (const cplx& x : samples) {
    bool near = false;
    for (const cplx& p : lattice.points) near = near || std::abs(x - p) <= 2.0 * h;
    if (near) {
      ++out.rejected;
      continue;
    }
    const cplx ex(h, 0.0), ey(0.0, h);
    const double phx = dphi(x - ex, x + ex) / (2.0 * h);
    const double phy = dphi(x - ey, x + ey) / (2.0 * h);
    const double chx = (chi(x + ex) - chi(x - ex)) / (2.0 * h);
    const double chy = (chi(x + ey) - chi(x - ey)) / (2.0 * h);
    const double r = std::abs(x);
    // Omega r e_theta / 2 = (Omega / 2)(-y, x); Omega r e_r / 2 = (Omega / 2)(x, y)
    const double ax = -0.5 * Om * x.imag(), ay = 0.5 * Om * x.real();
    const double bx = 0.5 * Om * x.real(), by = 0.5 * Om * x.imag();
    const double lhs = (phx - ax) * (phx - ax) + (phy - ay) * (phy - ay);
    const double rhs = (chx - bx) * (chx - bx) + (chy - by) * (chy - by);
    const double scale = chx * chx + chy * chy + 0.25 * Om * Om * r * r;
    const double rel = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    out.max_relative_error = std::max(out.max_relative_error, rel);
    ++out.evaluated;
  }
  return out;
}

CellEnergy cell_energy(double t, double Omega) {
  require(std::isfinite(Omega) && Omega > 0.0, "cell_energy: Omega must be > 0");
  const double outer = 1.0 / std::sqrt(Omega);
  require(std::isfinite(t) && t > 0.0 && t < outer, "cell_energy: need 0 < t < Omega^{-1/2}");
  CellEnergy e;
  e.closed_form = kPi * std::abs(std::log(t * t * Omega));
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  e.quadrature = 2.0 * kPi * ts.integrate([](double r) { return r / (r * r); }, t, outer, 1e-15);
  return e;
}

double optimal_core_radius(double epsilon, double Omega) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "optimal_core_radius: epsilon must be > 0");
  require(std::isfinite(Omega) && Omega > 0.0, "optimal_core_radius: Omega must be > 0");
  return Omega <= 1.0 / epsilon ? epsilon : std::sqrt(epsilon / Omega);
}

const char* to_string(AsymptoticRegime r) {
  switch (r) {
    case AsymptoticRegime::FiniteVortices: return "finite_vortices";
    case AsymptoticRegime::LatticeRegimeA: return "lattice_a";
    case AsymptoticRegime::LatticeRegimeB: return "lattice_b";
    case AsymptoticRegime::GiantVortexRegime: return "giant_vortex";
  }
  return "?";
}

int vortex_window(double epsilon, double Omega) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0, "vortex_window: epsilon must lie in (0, 1)");
  require(std::isfinite(Omega) && Omega >= 0.0, "vortex_window: Omega must be >= 0");
  const double L = std::abs(std::log(epsilon));
  const double LL = std::log(L);
  const double x = Omega / kPi;
  if (x <= L) return 0;
  if (!(LL > 0.0)) return 2;  // for |log eps| <= 1 the windows are empty: past Omega_1 means several
  return static_cast<int>(std::ceil((x - L) / LL));
}

AsymptoticPrediction predict_asymptotics(double epsilon, double Omega) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0, "predict_asymptotics: epsilon must lie in (0, 1)");
  require(std::isfinite(Omega) && Omega >= 0.0, "predict_asymptotics: Omega must be >= 0");
  const double L = std::abs(std::log(epsilon));
  AsymptoticPrediction p;
  p.omega_1 = kPi * L;
  p.omega_hole = kOmegaHole / epsilon;
  p.omega_giant = 1.0 / (epsilon * epsilon * L);
  p.vortex_count = vortex_window(epsilon, Omega);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (p.vortex_count <= 1) {
    p.regime = AsymptoticRegime::FiniteVortices;
    p.subleading = nan;
  } else if (Omega < 1.0 / epsilon) {
    p.regime = AsymptoticRegime::LatticeRegimeB;
    p.subleading = 0.5 * Omega * std::abs(std::log(epsilon * epsilon * Omega));
  } else if (Omega < p.omega_giant) {
    p.regime = AsymptoticRegime::LatticeRegimeA;
    p.subleading = 0.5 * Omega * L;
  } else {
    p.regime = AsymptoticRegime::GiantVortexRegime;
    p.subleading = nan;
  }
  return p;
}

HomogeneousRadius homogeneous_radius(double epsilon, double s) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "homogeneous_radius: epsilon must be > 0");
  require(std::isfinite(s) && s > 0.0, "homogeneous_radius: s must be > 0");
  HomogeneousRadius h;
  h.R = std::pow(epsilon, -2.0 / (s + 2.0));
  h.omega_1 = std::pow(epsilon, 4.0 / (s + 2.0)) * std::abs(std::log(epsilon));
  return h;
}

}  // namespace rotovort
