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

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "posepaste/types.hpp"

namespace posepaste {

enum class Landmark : std::size_t { left_shoulder = 0, right_shoulder, left_hip, right_hip, neck };

inline constexpr std::size_t kLandmarkCount = 5;

inline constexpr std::array<std::string_view, kLandmarkCount> kLandmarkNames = {
    "left_shoulder", "right_shoulder", "left_hip", "right_hip", "neck"};

std::optional<Landmark> landmark_from_name(std::string_view name);

/// The five torso landmarks consumed by pose description. Coordinates may lie
/// outside the image (truncated detections) but are always finite.
struct PoseKeypoints {
  std::array<Point2d, kLandmarkCount> points{};
  std::array<double, kLandmarkCount> confidences{};

  Point2d& operator[](Landmark l) { return points[static_cast<std::size_t>(l)]; }
  const Point2d& operator[](Landmark l) const { return points[static_cast<std::size_t>(l)]; }
  double& confidence(Landmark l) { return confidences[static_cast<std::size_t>(l)]; }
  double confidence(Landmark l) const { return confidences[static_cast<std::size_t>(l)]; }

  const Point2d& left_shoulder() const { return (*this)[Landmark::left_shoulder]; }
  const Point2d& right_shoulder() const { return (*this)[Landmark::right_shoulder]; }
  const Point2d& left_hip() const { return (*this)[Landmark::left_hip]; }
  const Point2d& right_hip() const { return (*this)[Landmark::right_hip]; }
  const Point2d& neck() const { return (*this)[Landmark::neck]; }

  friend bool operator==(const PoseKeypoints&, const PoseKeypoints&) = default;
};

/// Throws ContractViolation unless every coordinate is finite and every
/// confidence lies in [0, 1].
void validate(const PoseKeypoints& kp);

}  // namespace posepaste
