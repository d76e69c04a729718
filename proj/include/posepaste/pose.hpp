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

#include <string_view>

#include "posepaste/keypoints.hpp"
#include "posepaste/types.hpp"

namespace posepaste {

enum class Orientation { up, down, left, right };

std::string_view to_string(Orientation o);

/// Quantization intervals. Slope bins are degrees, height bins are pixels.
struct Bins {
  double slope = 15.0;
  double height = 15.0;

  static Bins uniform(double bin) { return {bin, bin}; }
};

inline constexpr double kDefaultBin = 15.0;

/// Matching features of one figure: orientation T, posture slope K and
/// torso height H, raw and bucketed.
struct PoseDescriptor {
  Orientation orientation = Orientation::right;
  double slope_raw = 0.0;   // degrees in (-180, 180]
  double slope_q = 0.0;     // multiple of the slope bin
  double height_raw = 0.0;  // px, > 0
  double height_q = 0.0;    // multiple of the height bin
  Point2d mid_hip = Point2d::Zero();
  Point2d neck = Point2d::Zero();
};

template <typename Scalar>
Point2<Scalar> mid_hip(const Point2<Scalar>& left_hip, const Point2<Scalar>& right_hip) {
  return (left_hip + right_hip) / Scalar(2);
}

/// Quadrant of the left->right shoulder vector, measured with atan2 in image
/// coordinates: [-45, 45) right, [45, 135) down, [-135, -45) up, otherwise left.
Orientation orientation(const Point2d& left_shoulder, const Point2d& right_shoulder);

/// Signed angle in degrees of the hip->neck vector from screen-up, positive
/// when the torso leans toward +x. Range (-180, 180].
double posture_slope(const Point2d& mid_hip, const Point2d& neck);

/// Torso length (Euclidean).
double height_diff(const Point2d& mid_hip, const Point2d& neck);

/// Nearest integer multiple of bin, half-bin ties away from zero.
double quantize(double value, double bin);

/// Wraps an angle in degrees into (-180, 180].
double wrap_degrees(double deg);

PoseDescriptor describe(const PoseKeypoints& kp, Bins bins);
inline PoseDescriptor describe(const PoseKeypoints& kp, double bin) { return describe(kp, Bins::uniform(bin)); }

}  // namespace posepaste
