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

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <utility>

#include "posepaste/image.hpp"
#include "posepaste/pose.hpp"
#include "posepaste/types.hpp"

namespace posepaste {

/// 2x3 affine map [a b tx; c d ty] acting on column points.
template <typename Scalar>
struct Affine2 {
  using Matrix = Eigen::Matrix<Scalar, 2, 3>;
  using Linear = Eigen::Matrix<Scalar, 2, 2>;

  Matrix m = Matrix::Identity();

  static Affine2 identity() { return {}; }

  Eigen::Ref<const Linear> linear() const { return m.template leftCols<2>(); }
  Point2<Scalar> translation() const { return m.col(2); }
  Scalar determinant() const { return m.template leftCols<2>().determinant(); }
};

using AffineTransform = Affine2<double>;

/// sin/cos of an angle in degrees; exact at multiples of 90.
template <typename Scalar>
std::pair<Scalar, Scalar> sincos_degrees(Scalar deg) {
  const Scalar quarter = deg / Scalar(90);
  if (quarter == std::round(quarter)) {
    const long long k = ((static_cast<long long>(std::round(quarter)) % 4) + 4) % 4;
    constexpr int s[4] = {0, 1, 0, -1};
    constexpr int c[4] = {1, 0, -1, 0};
    return {Scalar(s[k]), Scalar(c[k])};
  }
  const Scalar rad = deg * std::numbers::pi_v<Scalar> / Scalar(180);
  return {std::sin(rad), std::cos(rad)};
}

template <typename Scalar>
Point2<Scalar> apply_to_point(const Affine2<Scalar>& t, const Point2<Scalar>& p) {
  return t.m.template leftCols<2>() * p + t.m.col(2);
}

template <typename Scalar>
Affine2<Scalar> translation(const Point2<Scalar>& offset) {
  Affine2<Scalar> t;
  t.m.col(2) = offset;
  return t;
}

/// Uniform scale s and rotation by theta degrees (positive = clockwise on
/// screen, since y grows downward) about pivot: x -> s R (x - pivot) + pivot.
template <typename Scalar>
Affine2<Scalar> similarity_about(Scalar theta_deg, Scalar scale, const Point2<Scalar>& pivot) {
  const auto [s, c] = sincos_degrees(theta_deg);
  Eigen::Matrix<Scalar, 2, 2> lin;
  lin << c, -s, s, c;
  lin *= scale;
  Affine2<Scalar> t;
  t.m.template leftCols<2>() = lin;
  t.m.col(2) = pivot - lin * pivot;
  return t;
}

template <typename Scalar>
Affine2<Scalar> rotation_about(Scalar theta_deg, const Point2<Scalar>& pivot) {
  return similarity_about(theta_deg, Scalar(1), pivot);
}

/// outer after inner: apply_to_point(compose(outer, inner), p) == outer(inner(p)).
template <typename Scalar>
Affine2<Scalar> compose(const Affine2<Scalar>& outer, const Affine2<Scalar>& inner) {
  Affine2<Scalar> t;
  t.m.template leftCols<2>() = outer.m.template leftCols<2>() * inner.m.template leftCols<2>();
  t.m.col(2) = outer.m.template leftCols<2>() * inner.m.col(2) + outer.m.col(2);
  return t;
}

template <typename Scalar>
bool is_invertible(const Affine2<Scalar>& t) {
  const Scalar det = t.determinant();
  return std::isfinite(det) && det != Scalar(0);
}

template <typename Scalar>
Affine2<Scalar> inverse(const Affine2<Scalar>& t) {
  if (!is_invertible(t)) throw ContractViolation("affine transform is not invertible");
  const Eigen::Matrix<Scalar, 2, 2> inv = t.m.template leftCols<2>().inverse();
  Affine2<Scalar> out;
  out.m.template leftCols<2>() = inv;
  out.m.col(2) = -inv * t.m.col(2);
  return out;
}

/// Parameters of the pose-correcting similarity applied to a donor.
struct PoseCorrection {
  double theta_deg = 0.0;  // wrap(pedestrian slope - donor slope)
  double scale = 1.0;      // pedestrian / donor torso length, or 1
  Point2d pivot = Point2d::Zero();  // donor mid-hip

  AffineTransform transform() const { return similarity_about(theta_deg, scale, pivot); }
};

/// Rotation about the donor mid-hip that brings the donor's raw torso slope
/// onto the pedestrian's; with scale_correct, also a uniform scale matching
/// torso lengths.
PoseCorrection correction_from_match(const PoseDescriptor& pedestrian, const PoseDescriptor& donor,
                                     bool scale_correct);

inline AffineTransform affine_from_match(const PoseDescriptor& pedestrian, const PoseDescriptor& donor,
                                         bool scale_correct) {
  return correction_from_match(pedestrian, donor, scale_correct).transform();
}

/// Inverse-mapped warp. Output pixel (x, y) samples the source at
/// t^-1(x + 0.5, y + 0.5) with bilinear interpolation (edge-clamped inside the
/// source); samples landing outside the source are filled with `fill`.
ImageBuffer warp_image(const ImageBuffer& img, const AffineTransform& t, int out_w, int out_h,
                       Rgb fill = {0, 0, 0});

/// Same mapping as warp_image with nearest-neighbour sampling; stays binary.
MaskBuffer warp_mask(const MaskBuffer& mask, const AffineTransform& t, int out_w, int out_h);

}  // namespace posepaste
