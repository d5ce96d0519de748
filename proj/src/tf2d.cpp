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

#include <cmath>
#include <numbers>

#include "rotovort/error.hpp"
#include "rotovort/tf.hpp"

namespace rotovort {

double Tf2dSolution::density(double r) const {
  if (r < 0.0 || r > 1.0) return 0.0;
  const double u = mu + 0.25 * Omega * Omega * r * r;
  return u > 0.0 ? 0.5 * epsilon * epsilon * u : 0.0;
}

Tf2dSolution tf2d_flat(double epsilon, double Omega) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "tf2d_flat: epsilon must be > 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "tf2d_flat: Omega must be >= 0");
  constexpr double pi = std::numbers::pi;
  const double e2 = epsilon * epsilon;
  const double W2 = Omega * Omega;

  Tf2dSolution s;
  s.epsilon = epsilon;
  s.Omega = Omega;
  // Without a hole: int rho = (pi eps^2 / 2)(mu + Omega^2/8) = 1.
  const double mu_disc = 2.0 / (pi * e2) - W2 / 8.0;
  if (mu_disc >= 0.0) {
    s.mu = mu_disc;
    s.r_inner = 0.0;
    s.support = SupportKind::Disc;
    s.integral_rho_sq = 0.25 * pi * e2 * e2 * (s.mu * s.mu + 0.25 * s.mu * W2 + W2 * W2 / 48.0);
  } else {
    // rho = (eps^2 Omega^2 / 8)(r^2 - r_h^2) on r_h <= r <= 1 and
    // (pi eps^2 Omega^2 / 16)(1 - r_h^2)^2 = 1.
    const double width = 4.0 / (std::sqrt(pi) * epsilon * Omega);  // 1 - r_h^2
    const double rh2 = 1.0 - width;
    s.mu = -0.25 * W2 * rh2;
    s.r_inner = std::sqrt(rh2);
    s.support = SupportKind::Annulus;
    s.integral_rho_sq = e2 * e2 * W2 * W2 / 64.0 * pi * width * width * width / 3.0;
  }
  // E = int (mu - u) rho + rho^2 / eps^2 with u = 2 rho / eps^2 on the support.
  s.energy = s.mu - s.integral_rho_sq / e2;
  return s;
}

}  // namespace rotovort
