// Copyright 2026 The posepaste Authors. All rights reserved.
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

#include "posepaste/contact_sheet.hpp"

#include <algorithm>

#include "posepaste/types.hpp"

namespace posepaste {
namespace {

void blit(ImageBuffer& dst, const ImageBuffer& src, int ox, int oy) {
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x)
      if (dst.contains(ox + x, oy + y)) dst.set(ox + x, oy + y, src.at(x, y));
}

}  // namespace

ImageBuffer render_contact_sheet(const std::vector<std::pair<ImageBuffer, ImageBuffer>>& pairs,
                                 const SheetLayout& layout) {
  if (layout.columns <= 0 || layout.rows <= 0) throw ParameterError("contact sheet needs at least 1x1 cells");
  int img_w = 1, img_h = 1;
  for (const auto& [a, b] : pairs) {
    img_w = std::max({img_w, a.width(), b.width()});
    img_h = std::max({img_h, a.height(), b.height()});
  }
  const int g = layout.gutter;
  const int cell_w = 2 * img_w + g;
  const int cell_h = img_h;
  ImageBuffer sheet(layout.columns * cell_w + (layout.columns + 1) * g,
                    layout.rows * cell_h + (layout.rows + 1) * g, layout.background);
  const std::size_t capacity = static_cast<std::size_t>(layout.columns) * layout.rows;
  for (std::size_t i = 0; i < std::min(capacity, pairs.size()); ++i) {
    const int col = static_cast<int>(i % layout.columns);
    const int row = static_cast<int>(i / layout.columns);
    const int x = g + col * (cell_w + g);
    const int y = g + row * (cell_h + g);
    blit(sheet, pairs[i].first, x, y);
    blit(sheet, pairs[i].second, x + img_w + g, y);
  }
  return sheet;
}

}  // namespace posepaste
