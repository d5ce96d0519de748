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

#include "rotovort/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rotovort/error.hpp"

namespace rotovort {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double tabulated_value(const Tabulated& t, double r) {
  if (t.r.empty() || r > t.r.back()) return 0.0;
  if (r <= t.r.front()) return t.v.front();
  const auto hi = std::upper_bound(t.r.begin(), t.r.end(), r);
  const auto k = static_cast<std::size_t>(hi - t.r.begin());
  const double x0 = t.r[k - 1], x1 = t.r[k];
  const double w = (r - x0) / (x1 - x0);
  return (1.0 - w) * t.v[k - 1] + w * t.v[k];
}

}  // namespace

void validate(const PairPotential& v) {
  std::visit(overloaded{
                 [](const HardCore& h) {
                   require(std::isfinite(h.radius) && h.radius >= 0.0, "hard core radius must be finite and >= 0");
                 },
                 [](const SquareBarrier& s) {
                   require(std::isfinite(s.radius) && s.radius >= 0.0, "square barrier range must be finite and >= 0");
                   require(std::isfinite(s.height) && s.height >= 0.0, "square barrier height must be finite and >= 0");
                 },
                 [](const Tabulated& t) {
                   require(t.r.size() == t.v.size() && t.r.size() >= 2, "tabulated potential needs >= 2 (r, v) samples");
                   for (std::size_t k = 0; k < t.r.size(); ++k) {
                     require(std::isfinite(t.r[k]) && std::isfinite(t.v[k]), "tabulated potential has non-finite samples");
                     require(t.v[k] >= 0.0, "pair potential must be nonnegative");
                     if (k > 0) require(t.r[k] > t.r[k - 1], "tabulated radii must be strictly increasing");
                   }
                   require(t.r.front() >= 0.0, "tabulated radii must be >= 0");
                 },
             },
             v);
}

double potential_range(const PairPotential& v) {
  return std::visit(overloaded{
                        [](const HardCore& h) { return h.radius; },
                        [](const SquareBarrier& s) { return s.height > 0.0 ? s.radius : 0.0; },
                        [](const Tabulated& t) {
                          // last radius at which v is still nonzero (or the one after, by interpolation)
                          for (std::size_t k = t.v.size(); k-- > 0;) {
                            if (t.v[k] != 0.0) return k + 1 < t.r.size() ? t.r[k + 1] : t.r[k];
                          }
                          return 0.0;
                        },
                    },
                    v);
}

double potential_value(const PairPotential& v, double r) {
  return std::visit(overloaded{
                        [r](const HardCore& h) {
                          return r < h.radius ? std::numeric_limits<double>::infinity() : 0.0;
                        },
                        [r](const SquareBarrier& s) { return r < s.radius ? s.height : 0.0; },
                        [r](const Tabulated& t) { return tabulated_value(t, r); },
                    },
                    v);
}

double scattering_length(const PairPotential& v, double r_max, std::size_t steps) {
  validate(v);
  if (steps < 1000) fail(ErrorKind::Argument, "scattering_length: steps must be >= 1000, got " + std::to_string(steps));
  if (const auto* h = std::get_if<HardCore>(&v)) {
    if (!(r_max > h->radius)) fail(ErrorKind::Range, "scattering_length: r_max must exceed the potential range");
    return h->radius;
  }
  const double range = potential_range(v);
  if (!(std::isfinite(r_max) && r_max > range)) {
    fail(ErrorKind::Range, "scattering_length: r_max = " + std::to_string(r_max) +
                               " does not exceed the potential range " + std::to_string(range));
  }

  // Fixed-step RK4 on (u, u'). The interior [0, range] and the exterior get
  // their own uniform steps so that any step in v lands on a node.
  const auto n_in = range > 0.0
                        ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(steps * range / r_max)))
                        : std::size_t{0};
  const std::size_t n_out = std::max<std::size_t>(10, steps - std::min(steps - 10, n_in));

  double u = 0.0, du = 1.0, r = 0.0;
  const auto rhs = [&v](double x, double y) { return 0.5 * potential_value(v, x) * y; };
  // r_cap clamps the right end of a step to the left limit of v at a segment end.
  const auto advance = [&](double h, double r_cap) {
    const double rmid = r + 0.5 * h;
    const double r1 = std::min(r + h, r_cap);
    const double k1u = du, k1v = rhs(r, u);
    const double k2u = du + 0.5 * h * k1v, k2v = rhs(rmid, u + 0.5 * h * k1u);
    const double k3u = du + 0.5 * h * k2v, k3v = rhs(rmid, u + 0.5 * h * k2u);
    const double k4u = du + h * k3v, k4v = rhs(r1, u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  };

  if (n_in > 0) {
    const double h = range / static_cast<double>(n_in);
    for (std::size_t k = 0; k < n_in; ++k) {
      advance(h, std::nextafter(range, 0.0));
      r = range * static_cast<double>(k + 1) / static_cast<double>(n_in);
    }
  }

  // Exterior: v = 0 so u is linear; fit over the last 10% of [range, r_max].
  const double h = (r_max - range) / static_cast<double>(n_out);
  const std::size_t fit_from = n_out - n_out / 10;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < n_out; ++k) {
    advance(h, r_max + h);
    r = range + h * static_cast<double>(k + 1);
    if (k + 1 >= fit_from) {
      sx += r;
      sy += u;
      sxx += r * r;
      sxy += r * u;
      ++count;
    }
  }
  const double n = static_cast<double>(count);
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  if (!(std::isfinite(slope) && slope > 0.0)) fail(ErrorKind::Numeric, "scattering_length: degenerate exterior solution");
  return -intercept / slope;
}

GasParams derive_params(double a, double N, double L, double Omega) {
  require(std::isfinite(a) && a > 0.0, "derive_params: scattering length a must be > 0");
  require(std::isfinite(N) && N > 0.0, "derive_params: particle number N must be > 0");
  require(std::isfinite(L) && L > 0.0, "derive_params: trap length L must be > 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "derive_params: Omega must be >= 0");
  GasParams p;
  p.a = a;
  p.N = N;
  p.L = L;
  p.Omega = Omega;
  p.rho = N / (L * L * L);
  p.g = 4.0 * std::numbers::pi * a * N / L;
  p.epsilon = 1.0 / std::sqrt(p.g);
  return p;
}

double healing_length(double rho, double a) {
  require(std::isfinite(rho) && rho > 0.0, "healing_length: rho must be > 0");
  require(std::isfinite(a) && a > 0.0, "healing_length: a must be > 0");
  return 1.0 / std::sqrt(4.0 * std::numbers::pi * rho * a);
}

Diluteness diluteness(double rho, double a, double threshold) {
  const double value = a * a * a * rho;
  return {value, value < threshold};
}

double box_energy_per_particle(double rho, double a) { return 4.0 * std::numbers::pi * rho * a; }

}  // namespace rotovort
