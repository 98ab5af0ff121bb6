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

// Rasterized map context used as input to the frame-of-reference regressor.

#ifndef SLSEARCH_FOREF_RENDER_H_
#define SLSEARCH_FOREF_RENDER_H_

#include <array>
#include <string>
#include <string_view>

#include "slsearch/gridmap.h"

namespace slsearch::foref {

inline constexpr int kImageSize = 28;
inline constexpr int kImagePixels = kImageSize * kImageSize;
// Pixel that the ground's center of mass lands on in egocentric variants.
inline constexpr int kImageCenter = 14;

// Pixel intensities.
inline constexpr float kBackground = 1.0f;
inline constexpr float kGround = 0.6f;
inline constexpr float kBuilding = 0.3f;
inline constexpr float kStreet = 0.1f;
inline constexpr float kOffMap = 0.0f;

enum class ContextVariant {
  kEgoCtx,  // centered on the ground, all landmarks drawn
  kCtx,     // central window of the map, all landmarks drawn
  kEgo,     // centered on the ground, only the ground drawn
};

std::string_view ContextVariantName(ContextVariant variant);
ContextVariant ParseContextVariant(std::string_view name);

struct ContextImage {
  // pixels[py * kImageSize + px]; px grows east, py grows north.
  std::array<float, kImagePixels> pixels{};
  ContextVariant variant = ContextVariant::kEgoCtx;
  std::string ground_id;

  float at(int px, int py) const { return pixels[py * kImageSize + px]; }
};

// One pixel per cell. Throws MapError for an unknown ground.
ContextImage RenderContext(const GridMap &map, std::string_view ground_id,
                           ContextVariant variant);

}  // namespace slsearch::foref

#endif  // SLSEARCH_FOREF_RENDER_H_
