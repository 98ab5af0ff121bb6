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

// Wrap-around angular deviation and the mean-squared angular loss.

#ifndef SLSEARCH_FOREF_LOSS_H_
#define SLSEARCH_FOREF_LOSS_H_

#include <span>
#include <vector>

namespace slsearch::foref {

// Both angles are reduced into [0, 2pi) first; the result lies in [0, pi].
double AngularDeviation(double theta, double theta_star);

// Mean of squared angular deviations. Throws std::invalid_argument on an
// empty batch or mismatched lengths.
double AngularLoss(std::span<const double> predictions,
                   std::span<const double> labels);

// Loss together with its derivative with respect to each prediction.
struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

LossAndGradient AngularLossWithGradient(std::span<const double> predictions,
                                        std::span<const double> labels);

}  // namespace slsearch::foref

#endif  // SLSEARCH_FOREF_LOSS_H_
