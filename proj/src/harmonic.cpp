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


#include "rotovort/harmonic.hpp"

#include <cmath>
#include <numbers>

#include "rotovort/error.hpp"

namespace rotovort {

const char* to_string(RegimeFlag f) {
  switch (f) {
    case RegimeFlag::GPExpected:
      return "gp_expected";
    case RegimeFlag::FQHEExpected:
      return "fqhe_expected";
    case RegimeFlag::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

HarmonicEstimates harmonic_estimates(double omega_osc, double Omega, double N, double a,
                                     HarmonicThresholds thresholds) {
  require(std::isfinite(omega_osc) && omega_osc > 0.0, "harmonic_estimates: omega_osc must be > 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "harmonic_estimates: Omega must be >= 0");
  require(std::isfinite(N) && N > 0.0, "harmonic_estimates: N must be > 0");
  require(std::isfinite(a) && a > 0.0, "harmonic_estimates: a must be > 0");
  require(thresholds.k_lo > 0.0 && thresholds.k_lo <= thresholds.k_hi, "harmonic_estimates: need 0 < k_lo <= k_hi");

  HarmonicEstimates e;
  e.omega_osc = omega_osc;
  e.omega_c = std::numbers::sqrt2 * omega_osc;
  if (Omega >= e.omega_c)
    fail(ErrorKind::Unbounded, "harmonic_estimates: Omega >= Omega_c, effective potential not bounded below");

  const double root_c = std::sqrt(e.omega_c);
  e.R = std::pow(N * a / ((e.omega_c - Omega) * root_c), 0.25);
  e.X = N * (1.0 - Omega / e.omega_c) / (a * root_c);
  e.ratio = std::sqrt(e.X);
  if (e.X > thresholds.k_hi)
    e.regime_flag = RegimeFlag::GPExpected;
  else if (e.X < thresholds.k_lo)
    e.regime_flag = RegimeFlag::FQHEExpected;
  else
    e.regime_flag = RegimeFlag::Indeterminate;
  return e;
}

}  // namespace rotovort
