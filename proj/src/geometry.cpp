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

#include "posepaste/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace posepaste {

PoseCorrection correction_from_match(const PoseDescriptor& pedestrian, const PoseDescriptor& donor,
                                     bool scale_correct) {
  if (!(donor.height_raw > 0.0)) throw DegeneratePoseError("donor torso length is zero");
  PoseCorrection c;
  c.theta_deg = wrap_degrees(pedestrian.slope_raw - donor.slope_raw);
  c.scale = scale_correct ? pedestrian.height_raw / donor.height_raw : 1.0;
  c.pivot = donor.mid_hip;
  return c;
}

ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform& t, int out_w, int out_h, Rgb fill) {
  const AffineTransform inv = inverse(t);
  ImageBuffer out(out_w, out_h, fill);
  const int w = img.width();
  const int h = img.height();
  for (int y = 0; y < out_h; ++y) {
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < out_w; ++x, dst += 3) {
      const Point2d src = apply_to_point(inv, Point2d(x + 0.5, y + 0.5));
      if (!(src.x() >= 0.0 && src.y() >= 0.0 && src.x() < w && src.y() < h)) continue;
      // Continuous coordinates with pixel centers at integers.
      const double u = src.x() - 0.5;
      const double v = src.y() - 0.5;
      const double fu = std::floor(u);
      const double fv = std::floor(v);
      const double ax = u - fu;
      const double ay = v - fv;
      const int x0 = std::clamp(static_cast<int>(fu), 0, w - 1);
      const int y0 = std::clamp(static_cast<int>(fv), 0, h - 1);
      const int x1 = std::clamp(static_cast<int>(fu) + 1, 0, w - 1);
      const int y1 = std::clamp(static_cast<int>(fv) + 1, 0, h - 1);
      const std::uint8_t* p00 = img.row(y0) + 3 * x0;
      const std::uint8_t* p10 = img.row(y0) + 3 * x1;
      const std::uint8_t* p01 = img.row(y1) + 3 * x0;
      const std::uint8_t* p11 = img.row(y1) + 3 * x1;
      for (int ch = 0; ch < 3; ++ch) {
        const double top = p00[ch] + ax * (p10[ch] - p00[ch]);
        const double bottom = p01[ch] + ax * (p11[ch] - p01[ch]);
        const double value = top + ay * (bottom - top);
        dst[ch] = static_cast<std::uint8_t>(std::clamp(std::floor(value + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform& t, int out_w, int out_h) {
  const AffineTransform inv = inverse(t);
  MaskBuffer out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Point2d src = apply_to_point(inv, Point2d(x + 0.5, y + 0.5));
      const double fx = std::floor(src.x());
      const double fy = std::floor(src.y());
      if (!(fx >= 0.0 && fy >= 0.0 && fx < mask.width() && fy < mask.height())) continue;
      if (mask.at(static_cast<int>(fx), static_cast<int>(fy))) out.set(x, y, true);
    }
  }
  return out;
}

}  // namespace posepaste
