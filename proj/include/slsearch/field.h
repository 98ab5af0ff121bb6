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

// A probability (or weight) value per map cell.

#ifndef SLSEARCH_FIELD_H_
#define SLSEARCH_FIELD_H_

#include <vector>

#include "slsearch/gridmap.h"

namespace slsearch {

// Row-major over cells: index = y * width + x.
class Field {
 public:
  Field() = default;
  Field(int width, int height, double fill = 0.0)
      : width_(width),
        height_(height),
        values_(static_cast<size_t>(width) * height, fill) {}

  static Field Uniform(int width, int height) {
    return Field(width, height, 1.0 / (static_cast<double>(width) * height));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return static_cast<int>(values_.size()); }

  double &operator[](int index) { return values_[index]; }
  double operator[](int index) const { return values_[index]; }
  double &at(const Cell &c) { return values_[c.y * width_ + c.x]; }
  double at(const Cell &c) const { return values_[c.y * width_ + c.x]; }

  const std::vector<double> &values() const { return values_; }
  std::vector<double> &values() { return values_; }

  double Sum() const;
  // Divides by the sum. Returns false (and leaves the field untouched) when
  // the sum is below min_mass.
  bool Normalize(double min_mass = 1e-12);
  // Lowest index among maximal values.
  int ArgMax() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

}  // namespace slsearch

#endif  // SLSEARCH_FIELD_H_
