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

#include "posepaste/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "posepaste/ingest.hpp"

namespace posepaste {

std::optional<Sprite> extract_object(const ImageBuffer& img, const MaskBuffer& mask, const Point2d& anchor) {
  if (img.width() != mask.width() || img.height() != mask.height())
    throw ContractViolation("extract_object: image and mask dimensions differ");
  int x0 = std::numeric_limits<int>::max(), y0 = x0;
  int x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return std::nullopt;

  Sprite s;
  s.pixels = ImageBuffer(x1 - x0 + 1, y1 - y0 + 1);
  s.alpha = MaskBuffer(s.pixels.width(), s.pixels.height());
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      s.pixels.set(x - x0, y - y0, img.at(x, y));
      s.alpha.set(x - x0, y - y0, mask.at(x, y));
    }
  }
  s.anchor = anchor - Point2d(x0, y0);
  return s;
}

Eigen::Vector2i paste_offset(const Sprite& sprite, const Point2d& target) {
  const Point2d d = target - sprite.anchor;
  return {static_cast<int>(std::floor(d.x() + 0.5)), static_cast<int>(std::floor(d.y() + 0.5))};
}

std::size_t paste_into(ImageBuffer& base, const Sprite& sprite, const Point2d& target) {
  if (sprite.empty()) return 0;
  const Eigen::Vector2i o = paste_offset(sprite, target);
  const int xs = std::max(0, -o.x());
  const int ys = std::max(0, -o.y());
  const int xe = std::min(sprite.width(), base.width() - o.x());
  const int ye = std::min(sprite.height(), base.height() - o.y());
  std::size_t written = 0;
  for (int y = ys; y < ye; ++y) {
    for (int x = xs; x < xe; ++x) {
      if (!sprite.alpha.at(x, y)) continue;
      base.set(x + o.x(), y + o.y(), sprite.pixels.at(x, y));
      ++written;
    }
  }
  return written;
}

ImageBuffer paste(const ImageBuffer& base, const Sprite& sprite, const Point2d& target) {
  ImageBuffer out = base;
  paste_into(out, sprite, target);
  return out;
}

Composite compose_fake(const ImageBuffer& pedestrian, const Point2d& pedestrian_mid_hip,
                       const ImageBuffer& donor, const MaskBuffer& donor_mask, const Point2d& donor_mid_hip,
                       const AffineTransform& t) {
  if (donor.width() != donor_mask.width() || donor.height() != donor_mask.height())
    throw ContractViolation("compose_fake: donor image and mask dimensions differ");

  Composite out{pedestrian, {}};
  out.meta.transform = t;
  out.meta.target = pedestrian_mid_hip;

  // Canvas = the window of the corrected donor frame that lands on the
  // pedestrian frame once the warped mid-hip sits on the pedestrian mid-hip.
  // Its origin is chosen so the paste offset of the full canvas rounds to 0.
  const Point2d warped_hip = apply_to_point(t, donor_mid_hip);
  const Point2d shift = pedestrian_mid_hip - warped_hip;
  const Point2d origin(-std::floor(shift.x() + 0.5), -std::floor(shift.y() + 0.5));
  const AffineTransform to_canvas = compose(translation<double>(-origin), t);

  const MaskBuffer mask = warp_mask(donor_mask, to_canvas, pedestrian.width(), pedestrian.height());
  if (!mask.any()) {
    out.meta.skipped = true;
    return out;
  }
  const ImageBuffer warped = warp_image(donor, to_canvas, pedestrian.width(), pedestrian.height());
  auto sprite = extract_object(warped, mask, warped_hip - origin);
  out.meta.anchor = sprite->anchor;
  out.meta.offset = paste_offset(*sprite, pedestrian_mid_hip);
  out.meta.pasted_pixels = paste_into(out.image, *sprite, pedestrian_mid_hip);
  return out;
}

Composite compose_fake(const PersonRecord& p, const DonorRecord& d, const AffineTransform& t) {
  return compose_fake(p.image, mid_hip(p.keypoints.left_hip(), p.keypoints.right_hip()), d.image, d.mask,
                      mid_hip(d.keypoints.left_hip(), d.keypoints.right_hip()), t);
}

}  // namespace posepaste
