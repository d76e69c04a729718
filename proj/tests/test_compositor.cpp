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

#include <filesystem>
#include <random>

#include "oracles/compositor_oracle.hpp"
#include "posepaste/compositor.hpp"
#include "posepaste/image_io.hpp"
#include "posepaste/ingest.hpp"
#include "support/fixtures.hpp"

using namespace posepaste;
namespace fs = std::filesystem;

namespace {

Sprite opaque_sprite(int w, int h, Rgb color, Point2d anchor) {
  Sprite s;
  s.pixels = ImageBuffer(w, h, color);
  s.alpha = MaskBuffer(w, h, true);
  s.anchor = anchor;
  return s;
}

std::size_t changed_pixels(const ImageBuffer& a, const ImageBuffer& b) {
  std::size_t n = 0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) n += a.at(x, y) != b.at(x, y) ? 1 : 0;
  return n;
}

// Standard fixture: checker pedestrian 64x128 and a donor whose mask is a
// bicycle-like bar drawing.
struct StandardPair {
  PersonRecord person;
  DonorRecord donor;
};

StandardPair standard_pair() {
  StandardPair s;
  s.person.image = testing::checker_image(64, 128, 8);
  s.person.keypoints = testing::make_keypoints({32, 70}, 36, 8, Orientation::right, 8);
  s.person.identity = 2;
  s.person.camera = 1;
  s.person.source_path = "0002_c1s1_000451_03.png";
  const Point2d hip(64, 56);
  s.donor = assemble_donor(testing::donor_image(128, 128, 3), testing::make_keypoints(hip, 30, -12, Orientation::right, 8),
                           testing::bicycle_mask(128, 128, hip, 30), "donor_000.png");
  return s;
}

}  // namespace

TEST_CASE("extract_object") {
  const ImageBuffer img = testing::checker_image(10, 10, 2);
  SUBCASE("full mask keeps the whole image") {
    const auto s = extract_object(img, MaskBuffer(10, 10, true), Point2d(4, 5));
    REQUIRE(s);
    CHECK(s->pixels == img);
    CHECK(s->alpha.count() == 100);
    CHECK(s->anchor == Point2d(4, 5));
  }
  SUBCASE("empty mask signals an empty sprite") { CHECK_FALSE(extract_object(img, MaskBuffer(10, 10), Point2d(0, 0))); }
  SUBCASE("single bit crops to 1x1") {
    MaskBuffer m(10, 10);
    m.set(3, 4, true);
    const auto s = extract_object(img, m, Point2d(5, 5));
    REQUIRE(s);
    CHECK(s->width() == 1);
    CHECK(s->height() == 1);
    CHECK(s->pixels.at(0, 0) == img.at(3, 4));
    CHECK(s->anchor == Point2d(2, 1));
  }
  CHECK_THROWS_AS(extract_object(img, MaskBuffer(9, 10), Point2d(0, 0)), ContractViolation);
}

TEST_CASE("paste") {
  const ImageBuffer base = testing::checker_image(12, 12, 4);
  SUBCASE("empty sprite leaves the base untouched") { CHECK(paste(base, Sprite{}, Point2d(3, 3)) == base); }

  SUBCASE("opaque 2x2 sprite replaces exactly four pixels") {
    const ImageBuffer out = paste(base, opaque_sprite(2, 2, {1, 2, 3}, Point2d(0, 0)), Point2d(5, 6));
    CHECK(changed_pixels(base, out) == 4);
    CHECK(out.at(5, 6) == Rgb{1, 2, 3});
    CHECK(out.at(6, 7) == Rgb{1, 2, 3});
  }

  SUBCASE("sprite straddling the left edge is clipped") {
    Sprite s = opaque_sprite(6, 4, {7, 7, 7}, Point2d(3, 0));
    s.alpha.set(0, 0, false);
    s.alpha.set(4, 1, false);
    const Point2d target(0, 5);
    const ImageBuffer out = paste(base, s, target);
    // Per-pixel oracle: base pixel (x, y) shows sprite pixel (x - ox, y - oy).
    const int ox = -3, oy = 5;
    std::size_t in_bounds_alpha = 0;
    for (int y = 0; y < base.height(); ++y) {
      for (int x = 0; x < base.width(); ++x) {
        const int sx = x - ox, sy = y - oy;
        const bool covered = sx >= 0 && sy >= 0 && sx < s.width() && sy < s.height() && s.alpha.at(sx, sy);
        in_bounds_alpha += covered ? 1 : 0;
        CHECK(out.at(x, y) == (covered ? s.pixels.at(sx, sy) : base.at(x, y)));
      }
    }
    CHECK(in_bounds_alpha == 11);
    CHECK(changed_pixels(base, out) == in_bounds_alpha);
  }

  SUBCASE("sprite entirely outside changes nothing") {
    CHECK(paste(base, opaque_sprite(3, 3, {9, 9, 9}, Point2d(0, 0)), Point2d(-10, 40)) == base);
  }
}

TEST_CASE("compose_fake") {
  const StandardPair pair = standard_pair();

  SUBCASE("empty donor mask passes the pedestrian through") {
    DonorRecord d = pair.donor;
    d.mask = MaskBuffer(d.mask.width(), d.mask.height());
    const Composite c = compose_fake(pair.person, d, AffineTransform::identity());
    CHECK(c.meta.skipped);
    CHECK(c.image == pair.person.image);
  }

  SUBCASE("self-composite with a full mask reproduces the donor") {
    PersonRecord p = pair.person;
    DonorRecord d = assemble_donor(p.image, p.keypoints, MaskBuffer(64, 128, true), "self.png");
    p.image = ImageBuffer(64, 128, {0, 0, 0});
    const Composite c = compose_fake(p, d, AffineTransform::identity());
    CHECK_FALSE(c.meta.skipped);
    CHECK(c.image == d.image);
    CHECK(c.meta.pasted_pixels == 64u * 128u);
  }

  SUBCASE("locality, dimensions and anchor") {
    const PoseDescriptor pd = describe(pair.person.keypoints, 15);
    const PoseDescriptor dd = describe(pair.donor.keypoints, 15);
    const AffineTransform t = affine_from_match(pd, dd, true);
    const Composite c = compose_fake(pair.person, pair.donor, t);
    REQUIRE_FALSE(c.meta.skipped);
    CHECK(c.image.width() == 64);
    CHECK(c.image.height() == 128);
    CHECK(c.meta.pasted_pixels > 0);
    CHECK(changed_pixels(pair.person.image, c.image) <= c.meta.pasted_pixels);

    // The warped donor mid-hip lands on the rounded pedestrian mid-hip.
    const Point2d landed = c.meta.anchor + c.meta.offset.cast<double>();
    CHECK(std::abs(landed.x() - pd.mid_hip.x()) <= 0.5);
    CHECK(std::abs(landed.y() - pd.mid_hip.y()) <= 0.5);
  }

  SUBCASE("golden image") {
    const PoseDescriptor pd = describe(pair.person.keypoints, 15);
    const PoseDescriptor dd = describe(pair.donor.keypoints, 15);
    const Composite c = compose_fake(pair.person, pair.donor, affine_from_match(pd, dd, true));
    const fs::path golden = fs::path(POSEPASTE_DATA_DIR) / "golden_compose.png";
    if (!fs::exists(golden)) {
      write_image("golden_compose.png", c.image);
      FAIL("golden image missing; candidate written to ./golden_compose.png");
    }
    CHECK(read_image(golden) == c.image);
  }
}

TEST_CASE("compositing touches only alpha pixels on random fixtures") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lean(-40, 40), torso(15, 40), u(0.3, 0.7);
  for (int i = 0; i < 40; ++i) {
    PersonRecord p;
    p.image = testing::checker_image(64, 128, 5 + i % 4);
    p.keypoints = testing::make_keypoints({64 * u(rng), 128 * u(rng)}, torso(rng), lean(rng));
    const Point2d hip(80 * u(rng), 80 * u(rng));
    const double len = torso(rng);
    const DonorRecord d = assemble_donor(testing::donor_image(80, 80, i), testing::make_keypoints(hip, len, lean(rng)),
                                         testing::bicycle_mask(80, 80, hip, len), "d.png");
    const PoseDescriptor pd = describe(p.keypoints, 15);
    const PoseDescriptor dd = describe(d.keypoints, 15);
    const Composite c = compose_fake(p, d, affine_from_match(pd, dd, true));

    const MaskBuffer footprint = oracle::alpha_footprint(c.meta, d.mask, dd.mid_hip, 64, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 64; ++x)
        if (!footprint.at(x, y)) REQUIRE(c.image.at(x, y) == p.image.at(x, y));
    CHECK(footprint.count() == c.meta.pasted_pixels);
  }
}
