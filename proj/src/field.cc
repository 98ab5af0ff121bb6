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

#include "slsearch/field.h"

#include <algorithm>
#include <numeric>

namespace slsearch {

double Field::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

bool Field::Normalize(double min_mass) {
  const double total = Sum();
  if (!(total >= min_mass)) return false;
  for (double &v : values_) v /= total;
  return true;
}

int Field::ArgMax() const {
  return static_cast<int>(std::max_element(values_.begin(), values_.end()) -
                          values_.begin());
}

}  // namespace slsearch
