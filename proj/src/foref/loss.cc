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

#include "slsearch/foref/loss.h"

#include <cmath>
#include <stdexcept>

#include "slsearch/angles.h"

namespace slsearch::foref {

double AngularDeviation(double theta, double theta_star) {
  const double diff = std::abs(WrapTwoPi(theta) - WrapTwoPi(theta_star));
  return diff > kPi ? kTwoPi - diff : diff;
}

namespace {

void CheckBatch(std::span<const double> predictions,
                std::span<const double> labels) {
  if (predictions.empty()) throw std::invalid_argument("empty batch");
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("prediction and label counts differ");
  }
}

}  // namespace

double AngularLoss(std::span<const double> predictions,
                   std::span<const double> labels) {
  CheckBatch(predictions, labels);
  double sum = 0.0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    const double l = AngularDeviation(predictions[i], labels[i]);
    sum += l * l;
  }
  return sum / static_cast<double>(predictions.size());
}

LossAndGradient AngularLossWithGradient(std::span<const double> predictions,
                                        std::span<const double> labels) {
  CheckBatch(predictions, labels);
  LossAndGradient out;
  out.gradient.resize(predictions.size());
  const double n = static_cast<double>(predictions.size());
  for (size_t i = 0; i < predictions.size(); ++i) {
    const double d = WrapTwoPi(predictions[i]) - WrapTwoPi(labels[i]);
    const double ad = std::abs(d);
    const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    double l = ad;
    double dl = sign;
    if (ad > kPi) {
      l = kTwoPi - ad;
      dl = -sign;
    }
    out.loss += l * l;
    out.gradient[i] = 2.0 * l * dl / n;
  }
  out.loss /= n;
  return out;
}

}  // namespace slsearch::foref
