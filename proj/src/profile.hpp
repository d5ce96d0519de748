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

// One-dimensional profiles f(t) = a + b t^2 - c t^s on t >= 0 (b >= 0,
// c > 0, s > 2). Every slice of a TF density in a homogeneous trap is of this
// form, so supports can be located exactly and integrated piecewise-smoothly.

#ifndef ROTOVORT_PROFILE_HPP
#define ROTOVORT_PROFILE_HPP

#include <cmath>
#include <optional>
#include <utility>

namespace rotovort::detail {

struct Profile {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double s = 4.0;

  double operator()(double t) const { return a + b * t * t - c * std::pow(t, s); }
  /// location of the maximum on t >= 0
  double peak() const { return b > 0.0 ? std::pow(2.0 * b / (s * c), 1.0 / (s - 2.0)) : 0.0; }
  /// max_t (b t^2 - c t^s), i.e. the peak height for a = 0
  double lift() const {
    const double t = peak();
    return b * t * t - c * std::pow(t, s);
  }
};

/// Positive part of the profile: [lo, hi] with f > 0 inside, or nothing.
std::optional<std::pair<double, double>> support_interval(const Profile& p);

}  // namespace rotovort::detail

#endif  // ROTOVORT_PROFILE_HPP
