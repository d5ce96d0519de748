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
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "profile.hpp"
#include "rotovort/error.hpp"
#include "rotovort/vortex_lattice.hpp"

namespace rotovort {

namespace {

constexpr double kPi = std::numbers::pi;

using detail::Profile;

struct GiantAmplitude {
  double mu, b, c_r, c_z, s, g, Omega;
  double eta, core;
  int n;

  double rho(double r, double z) const { return (mu + b * r * r - c_r * std::pow(r, s) - c_z * std::pow(z, s)) / (2.0 * g); }

  // integrands: [a^2, |grad a|^2 + a^2 (n/r - Omega r/2)^2 + (V - Omega^2 r^2/4) a^2, a^4]
  std::array<double, 3> terms(double r, double z) const {
    const double rh = rho(r, z);
    if (!(rh > 0.0)) return {0.0, 0.0, 0.0};
    const double root = std::sqrt(rh + eta * eta);
    const double A = root - eta;
    const double dr_rho = (2.0 * b * r - s * c_r * std::pow(r, s - 1.0)) / (2.0 * g);
    const double dz_rho = -s * c_z * std::pow(z, s - 1.0) / (2.0 * g);
    double f = 1.0, df = 0.0;
    if (n > 0 && r < core) {
      f = r / core;
      df = 1.0 / core;
    }
    const double a = A * f;
    const double da_r = dr_rho / (2.0 * root) * f + A * df;
    const double da_z = dz_rho / (2.0 * root) * f;
    const double vel = n / r - 0.5 * Omega * r;
    const double w = c_r * std::pow(r, s) + c_z * std::pow(z, s) - b * r * r;
    const double a2 = a * a;
    return {a2, da_r * da_r + da_z * da_z + a2 * vel * vel + w * a2, a2 * a2};
  }
};

}  // namespace

GiantVortex3D giant_vortex_energy_3d(const Trap3D& trap, double g, double Omega, const Trial3DOptions& opts) {
  trap.validate();
  if (trap.form != Trap3D::Form::RadialZ)
    fail(ErrorKind::Unsupported, "giant_vortex_energy_3d: needs a rotationally symmetric (radial_z) trap");
  require(std::isfinite(g) && g > 0.0, "giant_vortex_energy_3d: g must be > 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "giant_vortex_energy_3d: Omega must be >= 0");
  require(opts.n_r >= 8 && opts.n_z >= 8, "giant_vortex_energy_3d: quadrature orders must be >= 8");

  const auto tf = tf3d(trap, g, Omega);
  const double s = trap.s;
  const double b = 0.25 * Omega * Omega;

  GiantVortex3D out;
  out.tf_energy = tf.energy;
  out.r_Omega = Omega > 0.0 ? std::pow(Omega * Omega / (2.0 * s * trap.c_r), 1.0 / (s - 2.0)) : 0.0;
  out.winding = static_cast<int>(std::floor(0.5 * out.r_Omega * out.r_Omega * Omega));

  const double lift = Profile{0.0, b, trap.c_r, s}.lift();
  const double rho_max = (tf.mu + lift) / (2.0 * g);
  const double healing = 1.0 / std::sqrt(2.0 * g * rho_max);
  const double kappa = healing / tf.extent_xy;

  GiantAmplitude amp{tf.mu, b, trap.c_r, trap.c_z, s, g, Omega, kappa * std::sqrt(rho_max), healing, out.winding};

  // Slices in z carry a profile in r with exactly known support; each is cut
  // into panels at the core radius and refined geometrically toward the
  // support ends, where the regularized amplitude has a boundary layer.
  const int panels_r = std::max(1, opts.n_r / 20);
  const auto slice = [&](double z) {
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    const auto iv = detail::support_interval(Profile{tf.mu - trap.c_z * std::pow(z, s), b, trap.c_r, s});
    if (!iv) return acc;
    std::vector<double> edges{iv->first, iv->second};
    if (amp.n > 0 && amp.core > iv->first && amp.core < iv->second) edges.push_back(amp.core);
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const double lo = edges[k], hi = edges[k + 1];
      // graded panels: uniform in u with r = lo + (hi - lo) * (3u^2 - 2u^3)
      for (int p = 0; p < panels_r; ++p) {
        const double u0 = static_cast<double>(p) / panels_r, u1 = static_cast<double>(p + 1) / panels_r;
        const auto map = [&](double u) { return lo + (hi - lo) * u * u * (3.0 - 2.0 * u); };
        const auto jac = [&](double u) { return (hi - lo) * 6.0 * u * (1.0 - u); };
        const auto& nodes = boost::math::quadrature::gauss<double, 20>::abscissa();
        const auto& weights = boost::math::quadrature::gauss<double, 20>::weights();
        const double half = 0.5 * (u1 - u0), mid = 0.5 * (u1 + u0);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
          for (int sign : {-1, 1}) {
            if (q == 0 && sign == 1 && nodes[0] == 0.0) continue;
            const double u = mid + sign * half * nodes[q];
            const double r = map(u);
            const double wgt = weights[q] * half * jac(u) * 2.0 * kPi * r;
            const auto t = amp.terms(r, z);
            for (int m = 0; m < 3; ++m) acc[m] += wgt * t[m];
          }
        }
      }
    }
    return acc;
  };

  // Same grading in z between the axial break points.
  const double z_max = std::pow((tf.mu + lift) / trap.c_z, 1.0 / s);
  std::vector<double> zedges{0.0, z_max};
  if (tf.mu > 0.0) zedges.push_back(std::pow(tf.mu / trap.c_z, 1.0 / s));
  std::sort(zedges.begin(), zedges.end());
  const int panels_z = std::max(1, opts.n_z / 20);
  std::array<double, 3> tot{0.0, 0.0, 0.0};
  const auto& nodes = boost::math::quadrature::gauss<double, 20>::abscissa();
  const auto& weights = boost::math::quadrature::gauss<double, 20>::weights();
  for (std::size_t k = 0; k + 1 < zedges.size(); ++k) {
    const double lo = zedges[k], hi = zedges[k + 1];
    if (!(hi > lo)) continue;
    for (int p = 0; p < panels_z; ++p) {
      const double u0 = static_cast<double>(p) / panels_z, u1 = static_cast<double>(p + 1) / panels_z;
      const double half = 0.5 * (u1 - u0), mid = 0.5 * (u1 + u0);
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        for (int sign : {-1, 1}) {
          if (q == 0 && sign == 1 && nodes[0] == 0.0) continue;
          const double u = mid + sign * half * nodes[q];
          const double z = lo + (hi - lo) * u * u * (3.0 - 2.0 * u);
          const double wgt = weights[q] * half * (hi - lo) * 6.0 * u * (1.0 - u) * 2.0;  // both half-spaces
          const auto t = slice(z);
          for (int m = 0; m < 3; ++m) tot[m] += wgt * t[m];
        }
      }
    }
  }
  const double N = tot[0];
  if (!(N > 0.0)) fail(ErrorKind::Numeric, "giant_vortex_energy_3d: trial state has zero norm");
  out.energy = tot[1] / N + g * tot[2] / (N * N);
  out.gap = out.energy - out.tf_energy;
  return out;
}

UltrarapidTrial ultrarapid_trial_energy_3d(const Trap3D& trap, double Omega, double delta, double g) {
  trap.validate();
  require(std::isfinite(Omega) && Omega > 0.0, "ultrarapid_trial_energy_3d: Omega must be > 0");
  require(std::isfinite(g) && g > 0.0, "ultrarapid_trial_energy_3d: g must be > 0");
  const auto lim = ultrarapid_limit(trap);
  require(std::isfinite(delta) && delta > 0.0, "ultrarapid_trial_energy_3d: delta must be > 0");
  require(delta <= 0.5 * lim.r_Omega, "ultrarapid_trial_energy_3d: delta must not exceed r_Omega / 2");

  const double s = trap.s;
  const double omega_p = std::pow(Omega, (s + 2.0) / (s - 2.0));
  const double gamma = g * std::pow(Omega, -2.0 * (s + 3.0) / (s - 2.0));
  const auto& x0 = lim.points.front();

  // Spherical coordinates around x0: Gauss in the radius and in cos(theta),
  // trapezoid in the azimuth. The bump vanishes with all derivatives at the
  // rim, so both rules converge spectrally.
  using G = boost::math::quadrature::gauss<double, 40>;
  constexpr int kAzimuth = 64;
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  auto nodes = [&](double lo, double hi) {
    std::vector<std::pair<double, double>> out;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < xs.size(); ++q) {
      out.emplace_back(mid - half * xs[q], half * ws[q]);
      if (xs[q] != 0.0) out.emplace_back(mid + half * xs[q], half * ws[q]);
    }
    return out;
  };
  const auto radial = nodes(0.0, 1.0);
  const auto polar = nodes(-1.0, 1.0);

  double norm = 0.0;
  for (const auto& [rho, w] : radial) norm += w * 4.0 * kPi * rho * rho * std::exp(-1.0 / (1.0 - rho * rho));
  const double c = 1.0 / (norm * delta * delta * delta);

  UltrarapidTrial out;
  out.w_min = lim.w_min;
  for (const auto& [rho, wr] : radial) {
    const double q = 1.0 - rho * rho;
    const double h = c * std::exp(-1.0 / q);
    const double grad_sq = h * rho * rho / (q * q * q * q) / (delta * delta);
    const double shell = wr * rho * rho * delta * delta * delta;
    for (const auto& [ct, wt] : polar) {
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < kAzimuth; ++k) {
        const double ph = 2.0 * kPi * k / kAzimuth;
        const double ux = delta * rho * st * std::cos(ph), uy = delta * rho * st * std::sin(ph), uz = delta * rho * ct;
        const double wgt = shell * wt * (2.0 * kPi / kAzimuth);
        const double x = x0[0] + ux, y = x0[1] + uy, z = x0[2] + uz;
        const double W = trap(x, y, z) - 0.25 * (x * x + y * y);
        out.kinetic += wgt * grad_sq;
        out.rotation += wgt * 0.25 * (ux * ux + uy * uy) * h;
        out.potential += wgt * W * h;
        out.interaction += wgt * h * h;
      }
    }
  }
  out.kinetic /= omega_p * omega_p;
  out.interaction *= gamma;
  out.scaled_energy = out.kinetic + out.rotation + out.potential + out.interaction;
  return out;
}

}  // namespace rotovort
