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

// Microscopic inputs: two-body scattering length, GP coupling, healing length
// and diluteness. Units are hbar = 2m = 1 throughout.

#ifndef ROTOVORT_PARAMS_HPP
#define ROTOVORT_PARAMS_HPP

#include <cstddef>
#include <variant>
#include <vector>

namespace rotovort {

struct HardCore {
  double radius = 0.0;
};

struct SquareBarrier {
  double height = 0.0;
  double radius = 0.0;
};

/// Radial samples of v(r), linearly interpolated; v = 0 beyond the last sample.
struct Tabulated {
  std::vector<double> r;
  std::vector<double> v;
};

using PairPotential = std::variant<HardCore, SquareBarrier, Tabulated>;

/// Checks v >= 0 and finite range; throws Argument on violation.
void validate(const PairPotential& v);

/// Radius beyond which v vanishes identically.
double potential_range(const PairPotential& v);

/// v(r) for the finite potentials (hard core reports +inf inside its radius).
double potential_value(const PairPotential& v, double r);

/// s-wave scattering length from the zero-energy equation u'' = v(r) u / 2,
/// u(0) = 0, u'(0) = 1, integrated with fixed-step RK4 out to r_max. The
/// exterior solution is fitted to c (r - a) by least squares over the last
/// tenth of [range, r_max]. Hard cores are answered analytically.
double scattering_length(const PairPotential& v, double r_max, std::size_t steps);

struct GasParams {
  double a = 0.0;
  double N = 0.0;
  double L = 0.0;
  double rho = 0.0;
  double g = 0.0;
  double epsilon = 0.0;
  double Omega = 0.0;
};

/// g = 4 pi a N / L, epsilon = g^(-1/2), rho = N / L^3.
GasParams derive_params(double a, double N, double L, double Omega);

/// (4 pi rho a)^(-1/2)
double healing_length(double rho, double a);

struct Diluteness {
  double value = 0.0;  // a^3 rho
  bool dilute = false;
};

Diluteness diluteness(double rho, double a, double threshold = 1e-3);

/// Leading-order ground state energy per particle in a box, 4 pi rho a.
double box_energy_per_particle(double rho, double a);

}  // namespace rotovort

#endif  // ROTOVORT_PARAMS_HPP
