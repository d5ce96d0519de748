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
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "profile.hpp"
#include "rotovort/error.hpp"
#include "rotovort/tf.hpp"

namespace rotovort {

namespace detail {

std::optional<std::pair<double, double>> support_interval(const Profile& p) {
  const double tp = p.peak();
  const double fmax = p(tp);
  if (!(fmax > 0.0)) return std::nullopt;
  const auto tol = boost::math::tools::eps_tolerance<double>(50);
  // right end: f decreases from fmax > 0 to -inf beyond the peak
  double hi = std::max(2.0 * tp, 1.0);
  while (p(hi) > 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  auto right = boost::math::tools::toms748_solve(p, tp, hi, fmax, p(hi), tol, iters);
  const double t2 = 0.5 * (right.first + right.second);
  if (p.a > 0.0) return std::make_pair(0.0, t2);
  iters = 200;
  auto left = boost::math::tools::toms748_solve(p, 0.0, tp, p.a, fmax, tol, iters);
  return std::make_pair(0.5 * (left.first + left.second), t2);
}

}  // namespace detail

namespace {

using detail::Profile;
using detail::support_interval;

constexpr double kPi = std::numbers::pi;

/// Integrates f over [lo, hi], splitting at interior breakpoints.
template <class F>
double integrate_pieces(F&& f, double lo, double hi, std::vector<double> breaks, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  std::erase_if(breaks, [&](double b) { return !(b > lo && b < hi); });
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double a = lo;
  breaks.push_back(hi);
  for (double b : breaks) {
    if (b > a) total += ts.integrate(f, a, b, tol);
    a = b;
  }
  return total;
}

/// Fixed Gauss-Legendre over the positive part of a profile; the integrand
/// is smooth inside the support and vanishes at its ends.
template <class F>
double integrate_profile(const Profile& p, F&& f) {
  const auto iv = support_interval(p);
  if (!iv) return 0.0;
  const auto g = [&](double t) { return f(t, std::max(p(t), 0.0)); };
  return boost::math::quadrature::gauss<double, 30>::integrate(g, iv->first, iv->second);
}

constexpr double kOuterTol = 1e-13;
// The Cartesian nest is three levels deep; its outer levels are converged
// far below the normalization tolerance already at this setting.
constexpr double kNestedTol = 1e-8;

/// int over R^3 of h(x, y, z, u) restricted to u = mu + Omega^2 r^2/4 - V > 0.
template <class H>
double integrate_support(const Trap3D& trap, double Omega, double mu, H&& h) {
  const double b = 0.25 * Omega * Omega;
  const double s = trap.s;
  if (trap.form == Trap3D::Form::RadialZ) {
    const double lift_r = Profile{0.0, b, trap.c_r, s}.lift();
    if (!(mu + lift_r > 0.0)) return 0.0;
    const double z_max = std::pow((mu + lift_r) / trap.c_z, 1.0 / s);
    std::vector<double> breaks;
    if (mu > 0.0) breaks.push_back(std::pow(mu / trap.c_z, 1.0 / s));
    const auto slice = [&](double z) {
      const Profile p{mu - trap.c_z * std::pow(z, s), b, trap.c_r, s};
      return integrate_profile(p, [&](double r, double u) { return 2.0 * kPi * r * h(r, 0.0, z, u); });
    };
    return 2.0 * integrate_pieces(slice, 0.0, z_max, breaks, kOuterTol);
  }

  const double lift_x = Profile{0.0, b, trap.c_x, s}.lift();
  const double lift_y = Profile{0.0, b, trap.c_y, s}.lift();
  if (!(mu + lift_x + lift_y > 0.0)) return 0.0;
  const double z_max = std::pow((mu + lift_x + lift_y) / trap.c_z, 1.0 / s);
  std::vector<double> zbreaks;
  for (double shift : {0.0, lift_x, lift_y}) {
    if (mu + shift > 0.0) zbreaks.push_back(std::pow((mu + shift) / trap.c_z, 1.0 / s));
  }
  const auto plane = [&](double z) {
    const double mu_z = mu - trap.c_z * std::pow(z, s);
    const auto ysupp = support_interval(Profile{mu_z + lift_x, b, trap.c_y, s});
    if (!ysupp) return 0.0;
    std::vector<double> ybreaks;
    if (const auto inner = support_interval(Profile{mu_z, b, trap.c_y, s})) {
      ybreaks = {inner->first, inner->second};
    }
    const auto line = [&](double y) {
      const Profile p{mu_z + b * y * y - trap.c_y * std::pow(y, s), b, trap.c_x, s};
      return integrate_profile(p, [&](double x, double u) { return h(x, y, z, u); });
    };
    return integrate_pieces(line, ysupp->first, ysupp->second, ybreaks, kNestedTol);
  };
  return 8.0 * integrate_pieces(plane, 0.0, z_max, zbreaks, kNestedTol);
}

double max_effective_lift(const Trap3D& trap, double Omega) {
  const double b = 0.25 * Omega * Omega;
  if (trap.form == Trap3D::Form::RadialZ) return Profile{0.0, b, trap.c_r, trap.s}.lift();
  return Profile{0.0, b, trap.c_x, trap.s}.lift() + Profile{0.0, b, trap.c_y, trap.s}.lift();
}

}  // namespace

Trap3D Trap3D::radial_z(double c_r, double c_z, double s) {
  Trap3D t;
  t.form = Form::RadialZ;
  t.c_r = c_r;
  t.c_z = c_z;
  t.s = s;
  return t;
}

Trap3D Trap3D::anisotropic(double c_x, double c_y, double c_z, double s) {
  Trap3D t;
  t.form = Form::Anisotropic;
  t.c_x = c_x;
  t.c_y = c_y;
  t.c_z = c_z;
  t.s = s;
  return t;
}

double Trap3D::operator()(double x, double y, double z) const {
  if (form == Form::RadialZ) return c_r * std::pow(std::hypot(x, y), s) + c_z * std::pow(std::abs(z), s);
  return c_x * std::pow(std::abs(x), s) + c_y * std::pow(std::abs(y), s) + c_z * std::pow(std::abs(z), s);
}

void Trap3D::validate() const {
  require(std::isfinite(s) && s > 2.0, "trap: homogeneity degree s must be > 2 (quadratic traps live in harmonic_limits)");
  if (form == Form::RadialZ) {
    require(std::isfinite(c_r) && c_r > 0.0 && std::isfinite(c_z) && c_z > 0.0,
            "trap: radial_z coefficients must be > 0");
  } else {
    require(std::isfinite(c_x) && c_x > 0.0 && std::isfinite(c_y) && c_y > 0.0 && std::isfinite(c_z) && c_z > 0.0,
            "trap: anisotropic coefficients must be > 0");
  }
}

double Tf3dSolution::density(double x, double y, double z) const {
  const double u = mu + 0.25 * Omega * Omega * (x * x + y * y) - trap(x, y, z);
  return u > 0.0 ? u / (2.0 * g) : 0.0;
}

double tf3d_normalization(const Trap3D& trap, double g, double Omega, double mu) {
  return integrate_support(trap, Omega, mu, [](double, double, double, double u) { return u; }) / (2.0 * g);
}

Tf3dSolution tf3d(const Trap3D& trap, double g, double Omega) {
  trap.validate();
  require(std::isfinite(g) && g > 0.0, "tf3d: g must be > 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "tf3d: Omega must be >= 0");

  const auto norm = [&](double mu) { return tf3d_normalization(trap, g, Omega, mu) - 1.0; };

  // N(mu) is zero at mu = -max(Omega^2 r^2/4 - V) and strictly increasing above it.
  const double mu_floor = -max_effective_lift(trap, Omega);
  double lo = mu_floor;
  double f_lo = -1.0;
  double step = std::max(1.0, std::abs(mu_floor));
  double hi = lo + step;
  double f_hi = norm(hi);
  int expansions = 0;
  while (f_hi < 0.0) {
    lo = hi;
    f_lo = f_hi;
    step *= 2.0;
    hi = lo + step;
    f_hi = norm(hi);
    if (++expansions > 200 || !std::isfinite(f_hi)) {
      std::ostringstream msg;
      msg << "tf3d: could not bracket the chemical potential (lo=" << lo << ", hi=" << hi << ", N(hi)-1=" << f_hi << ")";
      fail(ErrorKind::Solver, msg.str());
    }
  }

  // Bisection safeguarding Illinois-modified secant steps.
  int side = 0;
  double mu = hi;
  for (int it = 0; it < 300; ++it) {
    const double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    double trial = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    if (!(trial > lo && trial < hi)) trial = 0.5 * (lo + hi);
    const double f = norm(trial);
    mu = trial;
    if (std::abs(f) <= 1e-14) {
      lo = hi = trial;
      break;
    }
    if (f < 0.0) {
      lo = trial;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = trial;
      f_hi = f;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    if (it == 299) {
      std::ostringstream msg;
      msg << "tf3d: chemical potential did not converge, bracket [" << lo << ", " << hi << "]";
      fail(ErrorKind::Solver, msg.str());
    }
  }
  mu = 0.5 * (lo + hi);

  Tf3dSolution sol;
  sol.trap = trap;
  sol.g = g;
  sol.Omega = Omega;
  sol.mu = mu;
  const double quarter_w2 = 0.25 * Omega * Omega;
  sol.normalization = tf3d_normalization(trap, g, Omega, mu);
  sol.integral_rho_sq =
      integrate_support(trap, Omega, mu, [](double, double, double, double u) { return u * u; }) / (4.0 * g * g);
  // the functional itself: (V - Omega^2 r^2/4) rho + g rho^2
  sol.energy = integrate_support(trap, Omega, mu, [&](double x, double y, double z, double u) {
    const double rho = u / (2.0 * g);
    const double w = trap(x, y, z) - quarter_w2 * (x * x + y * y);
    return w * rho + g * rho * rho;
  });

  const double b = quarter_w2;
  if (trap.form == Trap3D::Form::RadialZ) {
    const auto r_iv = support_interval(Profile{mu, b, trap.c_r, trap.s});
    sol.extent_xy = r_iv ? r_iv->second : 0.0;
    sol.extent_z = std::pow(std::max(0.0, mu + max_effective_lift(trap, Omega)) / trap.c_z, 1.0 / trap.s);
  } else {
    const double lx = Profile{0.0, b, trap.c_x, trap.s}.lift();
    const double ly = Profile{0.0, b, trap.c_y, trap.s}.lift();
    const auto x_iv = support_interval(Profile{mu + ly, b, trap.c_x, trap.s});
    const auto y_iv = support_interval(Profile{mu + lx, b, trap.c_y, trap.s});
    sol.extent_xy = std::max(x_iv ? x_iv->second : 0.0, y_iv ? y_iv->second : 0.0);
    sol.extent_z = std::pow(std::max(0.0, mu + lx + ly) / trap.c_z, 1.0 / trap.s);
  }
  return sol;
}

ScalingReport scaling_map(double g, double Omega, double s, RegimeThresholds thresholds) {
  require(std::isfinite(g) && g > 0.0, "scaling_map: g must be > 0");
  require(std::isfinite(s) && s > 2.0, "scaling_map: s must be > 2 (see harmonic_limits for quadratic traps)");
  require(std::isfinite(Omega) && Omega >= 0.0, "scaling_map: Omega must be >= 0");
  require(thresholds.omega_lo > 0.0 && thresholds.omega_lo <= thresholds.omega_hi,
          "scaling_map: need 0 < omega_lo <= omega_hi");
  ScalingReport r;
  r.lambda = std::pow(g, 1.0 / (s + 3.0));
  r.omega = std::pow(g, -(s - 2.0) / (2.0 * (s + 3.0))) * Omega;
  r.gamma = r.omega > 0.0 ? std::pow(r.omega, -2.0 * (s + 3.0) / (s - 2.0)) : std::numeric_limits<double>::infinity();
  if (r.omega < thresholds.omega_lo) {
    r.regime = Regime::Slow;
  } else if (r.omega <= thresholds.omega_hi) {
    r.regime = Regime::Rapid;
  } else {
    r.regime = Regime::Ultrarapid;
  }
  return r;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Slow:
      return "slow";
    case Regime::Rapid:
      return "rapid";
    case Regime::Ultrarapid:
      return "ultrarapid";
  }
  return "?";
}

}  // namespace rotovort
