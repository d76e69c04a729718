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

#pragma once

#include <utility>
#include <vector>

#include "posepaste/image.hpp"

namespace posepaste {

struct SheetLayout {
  int columns = 4;  // pairs per row
  int rows = 3;
  int gutter = 4;
  Rgb background = {32, 32, 32};
};

/// Grid of (original, composite) pairs, each pair side by side inside one
/// cell, filled row-major. Pairs beyond columns x rows are dropped; missing
/// pairs leave background. Cells are sized to the largest image.
ImageBuffer render_contact_sheet(const std::vector<std::pair<ImageBuffer, ImageBuffer>>& pairs,
                                 const SheetLayout& layout);

}  // namespace posepaste
