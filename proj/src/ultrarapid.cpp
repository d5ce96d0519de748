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

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rotovort/error.hpp"
#include "rotovort/tf.hpp"

namespace rotovort {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Along a ray in the z = 0 plane, W = C r^s - r^2/4 with C the angular
// coefficient; it is minimized at r = (2 s C)^(-1/(s-2)) with value
// -r^2 (s-2) / (4 s).
double ray_radius(double C, double s) { return std::pow(2.0 * s * C, -1.0 / (s - 2.0)); }

double ray_minimum(double C, double s) {
  const double r = ray_radius(C, s);
  return -r * r * (s - 2.0) / (4.0 * s);
}

}  // namespace

UltrarapidLimit ultrarapid_limit(const Trap3D& trap) {
  trap.validate();
  const double s = trap.s;
  const auto W = [&](double x, double y, double z) { return trap(x, y, z) - 0.25 * (x * x + y * y); };

  UltrarapidLimit out;
  if (trap.form == Trap3D::Form::RadialZ) {
    // 1D golden-section on the closed-form bracket confirms the stationary point.
    const double r_closed = ray_radius(trap.c_r, s);
    const auto res = boost::math::tools::brent_find_minima(
        [&](double r) { return W(r, 0.0, 0.0); }, 0.0, 4.0 * r_closed, 52);
    out.r_Omega = std::abs(res.first - r_closed) < 1e-6 * r_closed ? r_closed : res.first;
    out.w_min = W(out.r_Omega, 0.0, 0.0);
    out.kind = UltrarapidLimit::SetKind::Circle;
    out.circle_z = 0.0;
    out.points = {{out.r_Omega, 0.0, 0.0}};
  } else {
    // Angular coefficient C(phi) = c_x |cos|^s + c_y |sin|^s on [0, pi/2]:
    // coarse scan, then golden-section polish around the best sample.
    const auto C = [&](double phi) {
      return trap.c_x * std::pow(std::abs(std::cos(phi)), s) + trap.c_y * std::pow(std::abs(std::sin(phi)), s);
    };
    constexpr int kScan = 2048;
    int best = 0;
    for (int k = 1; k <= kScan; ++k) {
      if (C(kHalfPi * k / kScan) < C(kHalfPi * best / kScan)) best = k;
    }
    const double lo = kHalfPi * std::max(0, best - 1) / kScan;
    const double hi = kHalfPi * std::min(kScan, best + 1) / kScan;
    double phi = boost::math::tools::brent_find_minima(C, lo, hi, 52).first;
    constexpr double kAxisSnap = 1e-9;
    if (phi < kAxisSnap) phi = 0.0;
    if (phi > kHalfPi - kAxisSnap) phi = kHalfPi;
    const double c_min = C(phi);
    out.r_Omega = ray_radius(c_min, s);
    out.w_min = ray_minimum(c_min, s);
    out.kind = UltrarapidLimit::SetKind::PointSet;
    const double x = out.r_Omega * std::cos(phi), y = out.r_Omega * std::sin(phi);
    if (phi == 0.0) {
      out.points = {{x, 0.0, 0.0}, {-x, 0.0, 0.0}};
    } else if (phi == kHalfPi) {
      out.points = {{0.0, y, 0.0}, {0.0, -y, 0.0}};
    } else {
      out.points = {{x, y, 0.0}, {-x, y, 0.0}, {-x, -y, 0.0}, {x, -y, 0.0}};
    }
  }

  // Global grid refinement: no sampled point may undercut the minimum.
  const double box = 2.0 * out.r_Omega;
  constexpr int kGrid = 48;
  for (int i = 0; i <= kGrid; ++i) {
    for (int j = 0; j <= kGrid; ++j) {
      for (int k = 0; k <= kGrid / 2; ++k) {
        const double x = -box + 2.0 * box * i / kGrid;
        const double y = -box + 2.0 * box * j / kGrid;
        const double z = box * k / kGrid;
        if (W(x, y, z) < out.w_min - 1e-12 * std::abs(out.w_min)) {
          std::ostringstream msg;
          msg << "ultrarapid_limit: grid point (" << x << ", " << y << ", " << z << ") undercuts w_min = " << out.w_min;
          fail(ErrorKind::Internal, msg.str());
        }
      }
    }
  }
  return out;
}

GammaLimitTable tf_gamma_limit(const Trap3D& trap, const std::vector<double>& gammas) {
  require(!gammas.empty(), "tf_gamma_limit: empty gamma sweep");
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    require(std::isfinite(gammas[k]) && gammas[k] > 0.0, "tf_gamma_limit: gamma values must be > 0");
    if (k > 0) require(gammas[k] < gammas[k - 1], "tf_gamma_limit: gamma values must be strictly decreasing");
  }
  GammaLimitTable table;
  table.w_min = ultrarapid_limit(trap).w_min;
  table.monotone = true;
  table.bounded_below = true;
  for (double gamma : gammas) {
    const auto sol = tf3d(trap, gamma, 1.0);
    GammaLimitRow row{gamma, sol.energy, sol.energy - table.w_min};
    if (!table.rows.empty() && row.energy > table.rows.back().energy) table.monotone = false;
    if (row.energy < table.w_min) table.bounded_below = false;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace rotovort
