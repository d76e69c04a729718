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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "posepaste/geometry.hpp"
#include "support/fixtures.hpp"

using namespace posepaste;

namespace {

bool near(const Point2d& a, const Point2d& b, double tol = 1e-9) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

PoseDescriptor with_slope(double slope_raw, double height_raw, Point2d hip) {
  PoseDescriptor d;
  d.slope_raw = slope_raw;
  d.height_raw = height_raw;
  d.mid_hip = hip;
  return d;
}

}  // namespace

TEST_CASE("apply_to_point") {
  CHECK(apply_to_point(AffineTransform::identity(), Point2d(5, 7)) == Point2d(5, 7));
  CHECK(apply_to_point(translation(Point2d(3, -2)), Point2d(0, 0)) == Point2d(3, -2));
  CHECK(apply_to_point(similarity_about(0.0, 2.0, Point2d(0, 0)), Point2d(1, 1)) == Point2d(2, 2));
}

TEST_CASE("rotations are clockwise on screen") {
  CHECK(apply_to_point(rotation_about(90.0, Point2d(0, 0)), Point2d(1, 0)) == Point2d(0, 1));
  CHECK(apply_to_point(rotation_about(90.0, Point2d(10, 10)), Point2d(11, 10)) == Point2d(10, 11));
  CHECK(near(apply_to_point(rotation_about(45.0, Point2d(0, 0)), Point2d(1, 0)),
             Point2d(std::sqrt(0.5), std::sqrt(0.5)), 1e-15));
  const auto [s, c] = sincos_degrees(-270.0);
  CHECK(s == 1.0);
  CHECK(c == 0.0);
}

TEST_CASE("affine_from_match") {
  const PoseDescriptor p = with_slope(20, 60, {30, 70});
  SUBCASE("equal slopes without scale correction give the identity") {
    const PoseDescriptor d = with_slope(20, 45, {50, 50});
    CHECK(affine_from_match(p, d, false).m == AffineTransform::identity().m);
  }
  SUBCASE("rotation by the slope difference about the donor mid-hip") {
    const PoseDescriptor d = with_slope(-70, 60, {50, 50});
    const PoseCorrection c = correction_from_match(p, d, true);
    CHECK(c.theta_deg == 90);
    CHECK(c.scale == 1);
    CHECK(c.pivot == Point2d(50, 50));
    CHECK(apply_to_point(c.transform(), Point2d(51, 50)) == Point2d(50, 51));
  }
  SUBCASE("slope difference wraps") {
    const PoseDescriptor d = with_slope(-170, 60, {0, 0});
    CHECK(correction_from_match(with_slope(170, 60, {0, 0}), d, false).theta_deg == doctest::Approx(-20));
  }
  SUBCASE("scale is the torso length ratio") {
    CHECK(correction_from_match(p, with_slope(20, 30, {0, 0}), true).scale == 2.0);
    CHECK(correction_from_match(p, with_slope(20, 30, {0, 0}), false).scale == 1.0);
  }
  CHECK_THROWS_AS(affine_from_match(p, with_slope(0, 0, {0, 0}), true), DegeneratePoseError);
}

TEST_CASE("correction aligns slope, fixes the pivot and matches torso length") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const PoseDescriptor p = testing::random_descriptor(rng, Bins{});
    const PoseDescriptor d = testing::random_descriptor(rng, Bins{});
    const AffineTransform t = affine_from_match(p, d, true);
    const Point2d hip = apply_to_point(t, d.mid_hip);
    const Point2d neck = apply_to_point(t, d.neck);
    REQUIRE(near(hip, d.mid_hip, 1e-9));
    REQUIRE(std::abs(wrap_degrees(posture_slope(hip, neck) - p.slope_raw)) <= 1e-6);
    REQUIRE(std::abs(height_diff(hip, neck) - p.height_raw) <= 1e-6);
  }
}

TEST_CASE("inverse and compose") {
  const AffineTransform t = similarity_about(33.0, 1.7, Point2d(4, -2));
  const AffineTransform round_trip = compose(inverse(t), t);
  CHECK(round_trip.m.isApprox(AffineTransform::identity().m, 1e-12));
  CHECK(near(apply_to_point(compose(translation(Point2d(1, 2)), t), Point2d(3, 3)),
             apply_to_point(t, Point2d(3, 3)) + Point2d(1, 2)));
  AffineTransform singular;
  singular.m << 1, 2, 0, 2, 4, 0;
  CHECK_FALSE(is_invertible(singular));
  CHECK_THROWS_AS(inverse(singular), ContractViolation);
  CHECK_THROWS_AS(warp_image(ImageBuffer(2, 2), singular, 2, 2), ContractViolation);
  CHECK_THROWS_AS(warp_mask(MaskBuffer(2, 2), singular, 2, 2), ContractViolation);
}

TEST_CASE("warp_image") {
  const ImageBuffer img = testing::checker_image(16, 12, 3);
  SUBCASE("identity is pixel-exact") { CHECK(warp_image(img, AffineTransform::identity(), 16, 12) == img); }

  SUBCASE("translation shifts rows right and fills the left columns") {
    const ImageBuffer out = warp_image(img, translation(Point2d(5, 0)), 16, 12);
    for (int y = 0; y < 12; ++y) {
      for (int x = 0; x < 5; ++x) CHECK(out.at(x, y) == Rgb{0, 0, 0});
      for (int x = 5; x < 16; ++x) CHECK(out.at(x, y) == img.at(x - 5, y));
    }
  }

  SUBCASE("quarter turn of a 2x2 block about its center") {
    ImageBuffer block(2, 2);
    const Rgb a{255, 0, 0}, b{0, 255, 0}, c{0, 0, 255}, d{255, 255, 0};
    block.set(0, 0, a);
    block.set(1, 0, b);
    block.set(0, 1, c);
    block.set(1, 1, d);
    // Inverse samples by hand: out(0,0) <- src(0.5,1.5), out(1,0) <- src(0.5,0.5),
    // out(0,1) <- src(1.5,1.5), out(1,1) <- src(1.5,0.5).
    const ImageBuffer out = warp_image(block, rotation_about(90.0, Point2d(1, 1)), 2, 2);
    CHECK(out.at(0, 0) == c);
    CHECK(out.at(1, 0) == a);
    CHECK(out.at(0, 1) == d);
    CHECK(out.at(1, 1) == b);
  }

  SUBCASE("warp then inverse warp reproduces a linear gradient") {
    const ImageBuffer grad = testing::gradient_image(64, 64);
    const AffineTransform t = similarity_about(30.0, 1.2, Point2d(32, 32));
    const ImageBuffer there = warp_image(grad, t, 64, 64);
    const ImageBuffer back = warp_image(there, inverse(t), 64, 64);
    int worst = 0;
    int interior = 0;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        const Point2d fwd = apply_to_point(t, Point2d(x + 0.5, y + 0.5));
        if (fwd.minCoeff() < 2 || fwd.maxCoeff() > 62 || std::min(x, y) < 2 || std::max(x, y) > 61) continue;
        ++interior;
        for (int ch = 0; ch < 3; ++ch) worst = std::max(worst, std::abs(int(back.at(x, y)[ch]) - int(grad.at(x, y)[ch])));
      }
    }
    CHECK(interior > 1000);
    CHECK(worst <= 8);
  }
}

TEST_CASE("warp_mask") {
  MaskBuffer m(16, 16);
  m.set(3, 4, true);
  m.set(9, 9, true);
  CHECK(warp_mask(m, AffineTransform::identity(), 16, 16) == m);
  CHECK(warp_mask(MaskBuffer(16, 16), similarity_about(17.0, 1.3, Point2d(3, 3)), 16, 16).count() == 0);

  MaskBuffer single(16, 16);
  single.set(0, 0, true);
  const MaskBuffer shifted = warp_mask(single, translation(Point2d(5, 0)), 16, 16);
  CHECK(shifted.count() == 1);
  CHECK(shifted.at(5, 0));
}

TEST_CASE("mask warps stay binary and scale area by s^2") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> scale(0.6, 2.0), angle(-180, 180), radius(6, 20);
  for (int i = 0; i < 50; ++i) {
    const double r = radius(rng);
    MaskBuffer disk(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) disk.set(x, y, (Point2d(x + 0.5, y + 0.5) - Point2d(64, 64)).norm() <= r);
    const double s = scale(rng);
    const MaskBuffer out = warp_mask(disk, similarity_about(angle(rng), s, Point2d(64, 64)), 128, 128);
    for (auto bit : out.bits()) REQUIRE((bit == 0 || bit == 1));
    const double ratio = double(out.count()) / double(disk.count());
    CHECK(ratio >= s * s * 0.9);
    CHECK(ratio <= s * s * 1.1);
  }
}
