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


#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "rotovort/error.hpp"
#include "rotovort/params.hpp"

using namespace rotovort;

namespace {

constexpr double kPi = std::numbers::pi;

double barrier_closed_form(double v0, double R0) {
  const double k = std::sqrt(v0 / 2.0);
  return R0 * (1.0 - std::tanh(k * R0) / (k * R0));
}

// u'' = c (R - r) u on [0, R], c = v0 / (2 R): Airy functions in s = c^{1/3} (R - r).
double ramp_closed_form(double v0, double R) {
  using boost::math::airy_ai;
  using boost::math::airy_ai_prime;
  using boost::math::airy_bi;
  using boost::math::airy_bi_prime;
  const double c3 = std::cbrt(v0 / (2.0 * R));
  const double s0 = c3 * R;
  const double A = airy_bi(s0), B = -airy_ai(s0);
  const double u = A * airy_ai(0.0) + B * airy_bi(0.0);
  const double du = -c3 * (A * airy_ai_prime(0.0) + B * airy_bi_prime(0.0));
  return R - u / du;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("hard core scattering length is the radius") {
  CHECK(scattering_length(HardCore{0.5}, 2.0, 1000) == 0.5);
  CHECK(scattering_length(HardCore{1.25}, 3.0, 1000) == 1.25);
}

TEST_CASE("square barrier matches the closed form") {
  for (double v0 : {1.0, 8.0, 64.0}) {
    CAPTURE(v0);
    const double a = scattering_length(SquareBarrier{v0, 1.0}, 3.0, 100000);
    CHECK(std::abs(a - barrier_closed_form(v0, 1.0)) < 1e-8);
  }
  CHECK(barrier_closed_form(8.0, 1.0) == doctest::Approx(0.517986).epsilon(1e-6));
}

TEST_CASE("tabulated linear ramp matches the Airy solution") {
  for (double v0 : {2.0, 20.0}) {
    CAPTURE(v0);
    Tabulated t{{0.0, 0.7}, {v0, 0.0}};
    const double a = scattering_length(t, 2.0, 200000);
    CHECK(std::abs(a - ramp_closed_form(v0, 0.7)) < 1e-8);
  }
}

TEST_CASE("vanishing potential has zero scattering length") {
  CHECK(std::abs(scattering_length(SquareBarrier{0.0, 1.0}, 2.0, 1000)) < 1e-10);
}

TEST_CASE("scattering length does not depend on r_max") {
  const double a1 = scattering_length(SquareBarrier{8.0, 1.0}, 2.0, 100000);
  const double a2 = scattering_length(SquareBarrier{8.0, 1.0}, 5.0, 250000);
  CHECK(std::abs(a1 - a2) < 1e-9);
}

TEST_CASE("scattering length input errors") {
  CHECK(kind_of([] { scattering_length(SquareBarrier{8.0, 1.0}, 0.5, 1000); }) == ErrorKind::Range);
  CHECK(kind_of([] { scattering_length(SquareBarrier{8.0, 1.0}, 2.0, 10); }) != ErrorKind::Internal);
  CHECK(kind_of([] { scattering_length(SquareBarrier{-1.0, 1.0}, 2.0, 1000); }) == ErrorKind::Argument);
  CHECK(kind_of([] { scattering_length(Tabulated{{0.0, 0.5, 0.4}, {1.0, 1.0, 0.0}}, 2.0, 1000); }) ==
        ErrorKind::Argument);
}

TEST_CASE("square barrier: monotone in height and bounded by the range") {
  double prev = 0.0;
  for (double v0 = 0.5; v0 <= 512.0; v0 *= 2.0) {
    const double a = scattering_length(SquareBarrier{v0, 0.8}, 2.0, 20000);
    CHECK(a >= prev);
    CHECK(a >= 0.0);
    CHECK(a <= 0.8);
    prev = a;
  }
}

TEST_CASE("random tabulated potentials satisfy 0 <= a <= range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 30.0);
  for (int k = 0; k < 20; ++k) {
    Tabulated t;
    for (int i = 0; i <= 8; ++i) {
      t.r.push_back(0.1 * i);
      t.v.push_back(i == 8 ? 0.0 : U(rng));
    }
    const double a = scattering_length(t, 1.5, 5000);
    CHECK(a >= 0.0);
    CHECK(a <= potential_range(t));
  }
}

TEST_CASE("derive_params") {
  const auto p = derive_params(0.01, 1000.0, 1.0, 0.0);
  CHECK(p.g == doctest::Approx(40.0 * kPi).epsilon(1e-14));
  CHECK(p.epsilon == doctest::Approx(0.08921).epsilon(1e-4));
  CHECK(p.rho == doctest::Approx(1000.0));
  const auto q = derive_params(1.0 / (4.0 * kPi), 100.0, 1.0, 0.0);
  CHECK(q.g == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(q.epsilon == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(kind_of([] { derive_params(0.0, 10.0, 1.0, 0.0); }) == ErrorKind::Argument);
  CHECK(kind_of([] { derive_params(0.1, -1.0, 1.0, 0.0); }) == ErrorKind::Argument);
  CHECK(kind_of([] { derive_params(0.1, 10.0, 0.0, 0.0); }) == ErrorKind::Argument);
}

TEST_CASE("epsilon squared times g is one") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-6.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const auto p = derive_params(std::pow(10.0, U(rng)), std::pow(10.0, U(rng) + 3.0), std::pow(10.0, U(rng)), 1.0);
    CHECK(std::abs(p.epsilon * p.epsilon * p.g - 1.0) < 1e-14);
  }
}

TEST_CASE("healing length") {
  CHECK(healing_length(1.0 / (4.0 * kPi), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(healing_length(1.0 / (4.0 * kPi), 4.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(healing_length(100.0 / (4.0 * kPi), 0.01) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kind_of([] { healing_length(0.0, 1.0); }) == ErrorKind::Argument);
  CHECK(kind_of([] { healing_length(1.0, -1.0); }) == ErrorKind::Argument);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double rho = std::pow(10.0, U(rng)), a = std::pow(10.0, U(rng));
    const double l = healing_length(rho, a);
    CHECK(std::abs(l * l * 4.0 * kPi * rho * a - 1.0) < 1e-14);
  }
}

TEST_CASE("diluteness") {
  auto d = diluteness(1.0, 0.0);
  CHECK(d.value == 0.0);
  CHECK(d.dilute);
  d = diluteness(8.0, 0.5);
  CHECK(d.value == doctest::Approx(1.0));
  CHECK_FALSE(d.dilute);
  d = diluteness(1e6, 1e-3);
  CHECK(d.value == doctest::Approx(1e-3));
  CHECK(diluteness(1e6, 1e-3, 2e-3).dilute);
  CHECK_FALSE(diluteness(1e6, 1e-3, 5e-4).dilute);
}

TEST_CASE("box energy per particle") {
  CHECK(box_energy_per_particle(1.0 / (4.0 * kPi), 1.0) == doctest::Approx(1.0));
  CHECK(box_energy_per_particle(0.0, 1.0) == 0.0);
  CHECK(box_energy_per_particle(2.0, 3.0) == doctest::Approx(24.0 * kPi));
}
