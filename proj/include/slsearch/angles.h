// Copyright 2026 The slsearch Authors.
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

#ifndef SLSEARCH_ANGLES_H_
#define SLSEARCH_ANGLES_H_

#include <cmath>
#include <numbers>

namespace slsearch {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle into [0, 2pi).
inline double WrapTwoPi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Reduces an angle into [-pi, pi).
inline double WrapPi(double angle) { return WrapTwoPi(angle + kPi) - kPi; }

}  // namespace slsearch

#endif  // SLSEARCH_ANGLES_H_
