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

#include "posepaste/pose.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace posepaste {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void require_distinct(const Point2d& a, const Point2d& b, const char* what) {
  if (a == b) throw DegeneratePoseError(std::string("coincident landmarks: ") + what);
}

}  // namespace

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::up: return "up";
    case Orientation::down: return "down";
    case Orientation::left: return "left";
    case Orientation::right: return "right";
  }
  return "?";
}

std::optional<Landmark> landmark_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLandmarkCount; ++i)
    if (kLandmarkNames[i] == name) return static_cast<Landmark>(i);
  return std::nullopt;
}

void validate(const PoseKeypoints& kp) {
  for (std::size_t i = 0; i < kLandmarkCount; ++i) {
    if (!kp.points[i].allFinite())
      throw ContractViolation(std::string("non-finite coordinate for ") + std::string(kLandmarkNames[i]));
    const double c = kp.confidences[i];
    if (!(c >= 0.0 && c <= 1.0))
      throw ContractViolation(std::string("confidence outside [0,1] for ") + std::string(kLandmarkNames[i]));
  }
}

Orientation orientation(const Point2d& left_shoulder, const Point2d& right_shoulder) {
  require_distinct(left_shoulder, right_shoulder, "shoulders");
  const Point2d v = right_shoulder - left_shoulder;
  const double theta = std::atan2(v.y(), v.x()) * kRadToDeg;
  if (theta >= -45.0 && theta < 45.0) return Orientation::right;
  if (theta >= 45.0 && theta < 135.0) return Orientation::down;
  if (theta >= -135.0 && theta < -45.0) return Orientation::up;
  return Orientation::left;
}

double wrap_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

double posture_slope(const Point2d& mid_hip, const Point2d& neck) {
  require_distinct(mid_hip, neck, "mid-hip and neck");
  const Point2d v = neck - mid_hip;
  return wrap_degrees(std::atan2(v.x(), -v.y()) * kRadToDeg);
}

double height_diff(const Point2d& mid_hip, const Point2d& neck) {
  require_distinct(mid_hip, neck, "mid-hip and neck");
  return (neck - mid_hip).norm();
}

double quantize(double value, double bin) {
  if (!(bin > 0.0) || !std::isfinite(bin)) throw ParameterError("bin must be a positive finite number");
  // std::round breaks ties away from zero; + 0.0 folds -0 into +0.
  return std::round(value / bin) * bin + 0.0;
}

PoseDescriptor describe(const PoseKeypoints& kp, Bins bins) {
  if (!(bins.slope > 0.0) || !(bins.height > 0.0)) throw ParameterError("bin must be positive");
  PoseDescriptor d;
  d.mid_hip = mid_hip(kp.left_hip(), kp.right_hip());
  d.neck = kp.neck();
  d.orientation = orientation(kp.left_shoulder(), kp.right_shoulder());
  d.slope_raw = posture_slope(d.mid_hip, d.neck);
  d.height_raw = height_diff(d.mid_hip, d.neck);
  d.slope_q = quantize(d.slope_raw, bins.slope);
  d.height_q = quantize(d.height_raw, bins.height);
  return d;
}

}  // namespace posepaste
