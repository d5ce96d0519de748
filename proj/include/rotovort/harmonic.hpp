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


// Order-of-magnitude estimates for a quadratic trap close to the critical
// rotation. All proportionality constants are set to 1.

#ifndef ROTOVORT_HARMONIC_HPP
#define ROTOVORT_HARMONIC_HPP

namespace rotovort {

enum class RegimeFlag { GPExpected, FQHEExpected, Indeterminate };

const char* to_string(RegimeFlag f);

struct HarmonicThresholds {
  double k_lo = 10.0;
  double k_hi = 1e3;
};

struct HarmonicEstimates {
  double omega_osc = 0.0;
  double omega_c = 0.0;   // sqrt(2) omega_osc
  double R = 0.0;         // (N a / ((Omega_c - Omega) Omega_c^{1/2}))^{1/4}
  double X = 0.0;         // N (1 - Omega/Omega_c) / (a Omega_c^{1/2})
  double ratio = 0.0;     // particles per vortex, sqrt(X)
  RegimeFlag regime_flag = RegimeFlag::Indeterminate;  // heuristic
};

/// Throws Unbounded when Omega >= Omega_c, Argument on bad inputs.
HarmonicEstimates harmonic_estimates(double omega_osc, double Omega, double N, double a,
                                     HarmonicThresholds thresholds = {});

}  // namespace rotovort

#endif  // ROTOVORT_HARMONIC_HPP
