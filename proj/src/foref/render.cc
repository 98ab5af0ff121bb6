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

#include "slsearch/foref/render.h"

#include <algorithm>
#include <cmath>

#include "slsearch/errors.h"

namespace slsearch::foref {

std::string_view ContextVariantName(ContextVariant variant) {
  switch (variant) {
    case ContextVariant::kCtx:
      return "ctx";
    case ContextVariant::kEgo:
      return "ego";
    case ContextVariant::kEgoCtx:
      break;
  }
  return "ego_ctx";
}

ContextVariant ParseContextVariant(std::string_view name) {
  if (name == "ego_ctx") return ContextVariant::kEgoCtx;
  if (name == "ctx") return ContextVariant::kCtx;
  if (name == "ego") return ContextVariant::kEgo;
  throw ConfigError("unknown context variant '" + std::string(name) + "'");
}

ContextImage RenderContext(const GridMap &map, std::string_view ground_id,
                           ContextVariant variant) {
  const Landmark &ground = map.Get(ground_id);
  ContextImage image;
  image.variant = variant;
  image.ground_id = ground.id;

  int x0 = 0;
  int y0 = 0;
  if (variant == ContextVariant::kCtx) {
    x0 = (map.width() - kImageSize) / 2;
    y0 = (map.height() - kImageSize) / 2;
  } else {
    const Point com = CenterOfMass(ground);
    x0 = static_cast<int>(std::floor(com.x + 0.5)) - kImageCenter;
    y0 = static_cast<int>(std::floor(com.y + 0.5)) - kImageCenter;
  }

  const bool draw_context = variant != ContextVariant::kEgo;
  for (int py = 0; py < kImageSize; ++py) {
    for (int px = 0; px < kImageSize; ++px) {
      const Cell cell{x0 + px, y0 + py};
      float value = kBackground;
      if (!map.InBounds(cell)) {
        value = kOffMap;
      } else if (std::binary_search(ground.cells.begin(), ground.cells.end(),
                                    cell)) {
        value = kGround;
      } else if (draw_context) {
        if (auto owner = map.LandmarkAt(cell)) {
          value = map.Get(*owner).kind == LandmarkKind::kStreet ? kStreet
                                                                : kBuilding;
        }
      }
      image.pixels[py * kImageSize + px] = value;
    }
  }
  return image;
}

}  // namespace slsearch::foref
