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

#include <cstddef>
#include <optional>

#include "posepaste/geometry.hpp"
#include "posepaste/image.hpp"
#include "posepaste/types.hpp"

namespace posepaste {

struct PersonRecord;
struct DonorRecord;

/// A cut-out object with binary alpha. `anchor` is the donor mid-hip in
/// sprite coordinates.
struct Sprite {
  ImageBuffer pixels;
  MaskBuffer alpha;
  Point2d anchor = Point2d::Zero();

  int width() const { return pixels.width(); }
  int height() const { return pixels.height(); }
  bool empty() const { return pixels.empty(); }
};

/// Crops img to the bounding box of mask. Returns nullopt for an all-zero mask.
std::optional<Sprite> extract_object(const ImageBuffer& img, const MaskBuffer& mask, const Point2d& anchor);

/// Integer offset that places sprite.anchor on target (components rounded half up).
Eigen::Vector2i paste_offset(const Sprite& sprite, const Point2d& target);

/// Copies opaque sprite pixels onto base in place, clipped to base bounds.
/// Returns the number of base pixels written.
std::size_t paste_into(ImageBuffer& base, const Sprite& sprite, const Point2d& target);

ImageBuffer paste(const ImageBuffer& base, const Sprite& sprite, const Point2d& target);

struct CompositeMeta {
  AffineTransform transform;         // donor frame -> corrected donor frame
  Point2d anchor = Point2d::Zero();  // warped donor mid-hip, sprite coordinates
  Point2d target = Point2d::Zero();  // pedestrian mid-hip
  Eigen::Vector2i offset = Eigen::Vector2i::Zero();  // sprite origin in the output
  std::size_t pasted_pixels = 0;
  bool skipped = false;  // warped mask was empty; image is the untouched pedestrian
};

struct Composite {
  ImageBuffer image;
  CompositeMeta meta;
};

/// Warps donor image and mask by t, cuts the object out through the warped
/// mask, and pastes it so the warped donor mid-hip lands on the pedestrian
/// mid-hip. Only the part of the warped donor that can reach the pedestrian
/// frame is rasterized.
Composite compose_fake(const ImageBuffer& pedestrian, const Point2d& pedestrian_mid_hip,
                       const ImageBuffer& donor, const MaskBuffer& donor_mask,
                       const Point2d& donor_mid_hip, const AffineTransform& t);

Composite compose_fake(const PersonRecord& p, const DonorRecord& d, const AffineTransform& t);

}  // namespace posepaste
