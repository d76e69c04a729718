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

#include "support/fixtures.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "posepaste/image_io.hpp"

namespace posepaste::testing {
namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "posepaste-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

PoseKeypoints make_keypoints(Point2d mid_hip, double torso_length, double slope_deg, Orientation facing,
                             double shoulder_half_width) {
  const double rad = slope_deg * std::numbers::pi / 180.0;
  const Point2d neck = mid_hip + torso_length * Point2d(std::sin(rad), -std::cos(rad));
  Point2d dir;
  switch (facing) {
    case Orientation::right: dir = {1, 0}; break;
    case Orientation::down: dir = {0, 1}; break;
    case Orientation::left: dir = {-1, 0}; break;
    case Orientation::up: dir = {0, -1}; break;
  }
  PoseKeypoints kp;
  kp[Landmark::left_shoulder] = neck - shoulder_half_width * dir;
  kp[Landmark::right_shoulder] = neck + shoulder_half_width * dir;
  kp[Landmark::left_hip] = mid_hip - 0.7 * shoulder_half_width * dir;
  kp[Landmark::right_hip] = mid_hip + 0.7 * shoulder_half_width * dir;
  kp[Landmark::neck] = neck;
  kp.confidences.fill(0.9);
  return kp;
}

ImageBuffer checker_image(int width, int height, int cell, Rgb a, Rgb b) {
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) img.set(x, y, ((x / cell + y / cell) % 2) ? b : a);
  return img;
}

ImageBuffer gradient_image(int width, int height) {
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.set(x, y,
              {static_cast<std::uint8_t>(40 + x), static_cast<std::uint8_t>(30 + y),
               static_cast<std::uint8_t>(20 + (x + y) / 2)});
  return img;
}

MaskBuffer bicycle_mask(int width, int height, Point2d mid_hip, double torso_length) {
  MaskBuffer m(width, height);
  const double L = torso_length;
  const double r = 0.35 * L;
  const Point2d back = mid_hip + Point2d(-0.6 * L, 0.9 * L);
  const Point2d front = mid_hip + Point2d(0.6 * L, 0.9 * L);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Point2d p(x + 0.5, y + 0.5);
      const double db = (p - back).norm();
      const double df = (p - front).norm();
      const bool wheel = (db <= r && db >= r - 3) || (df <= r && df >= r - 3);
      const bool bar = p.x() >= back.x() && p.x() <= front.x() && std::abs(p.y() - back.y()) <= 1.5;
      const bool post = std::abs(p.x() - mid_hip.x()) <= 1.5 && p.y() >= mid_hip.y() && p.y() <= back.y();
      if (wheel || bar || post) m.set(x, y, true);
    }
  }
  return m;
}

ImageBuffer donor_image(int width, int height, std::uint32_t seed) {
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.set(x, y,
              {static_cast<std::uint8_t>((x * 7 + seed * 13) % 256), static_cast<std::uint8_t>((y * 5 + seed * 29) % 256),
               static_cast<std::uint8_t>(((x + y) * 3 + seed) % 256)});
  return img;
}

PoseDescriptor random_descriptor(std::mt19937_64& rng, Bins bins) {
  std::uniform_int_distribution<int> o(0, 3);
  std::uniform_real_distribution<double> slope(-179.0, 180.0);
  std::uniform_real_distribution<double> height(5.0, 120.0);
  std::uniform_real_distribution<double> coord(0.0, 200.0);
  PoseDescriptor d;
  d.orientation = static_cast<Orientation>(o(rng));
  d.slope_raw = slope(rng);
  d.height_raw = height(rng);
  d.slope_q = quantize(d.slope_raw, bins.slope);
  d.height_q = quantize(d.height_raw, bins.height);
  d.mid_hip = {coord(rng), coord(rng)};
  const double rad = d.slope_raw * std::numbers::pi / 180.0;
  d.neck = d.mid_hip + d.height_raw * Point2d(std::sin(rad), -std::cos(rad));
  return d;
}

DatasetPaths write_dataset(const fs::path& root, const DatasetSpec& spec) {
  DatasetPaths paths{root / "persons", root / "donors"};
  fs::create_directories(paths.persons);
  fs::create_directories(paths.donors);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::uniform_real_distribution<double> lean(-30.0, 30.0);
  std::uniform_int_distribution<int> facing(0, 3);

  std::vector<KeypointEntry> person_kp;
  for (int i = 0; i < spec.persons; ++i) {
    const int identity = i % spec.identities + 1;
    const int camera = i % 6 + 1;
    const std::string name = fmt::format("{:04d}_c{}s1_{:06d}_00{}", identity, camera, i, spec.person_ext);
    const ImageBuffer img = checker_image(spec.person_w, spec.person_h, 8, {static_cast<std::uint8_t>(100 + 7 * i % 150), 80, 80});
    write_image(paths.persons / name, img);
    const Point2d hip(spec.person_w * (0.5 + jitter(rng)), spec.person_h * (0.55 + jitter(rng)));
    const double torso = spec.person_h * (0.28 + jitter(rng));
    person_kp.push_back({name, make_keypoints(hip, torso, lean(rng), static_cast<Orientation>(facing(rng)),
                                              spec.person_w * 0.12)});
  }
  std::ofstream(paths.persons / "keypoints.json") << format_keypoint_entries(person_kp);

  std::vector<KeypointEntry> donor_kp;
  for (int j = 0; j < spec.donors; ++j) {
    const std::string stem = fmt::format("donor_{:03d}", j);
    const Point2d hip(spec.donor_w * 0.5, spec.donor_h * 0.45);
    const double torso = spec.donor_h * (0.25 + jitter(rng));
    write_image(paths.donors / (stem + ".png"), donor_image(spec.donor_w, spec.donor_h, static_cast<std::uint32_t>(j + 1)));
    write_gray(paths.donors / (stem + ".mask.png"), to_gray(bicycle_mask(spec.donor_w, spec.donor_h, hip, torso)));
    donor_kp.push_back({stem + ".png", make_keypoints(hip, torso, lean(rng), static_cast<Orientation>(facing(rng)),
                                                      spec.donor_w * 0.08)});
  }
  std::ofstream(paths.donors / "keypoints.json") << format_keypoint_entries(donor_kp);
  return paths;
}

EvalSet random_eval_set(std::mt19937_64& rng, int queries, int gallery, int identities, int cameras, bool ties) {
  std::uniform_int_distribution<int> id(0, identities - 1), cam(1, cameras), grid(0, 9), junk(0, 19);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  EvalSet e;
  e.distances.resize(queries, gallery);
  for (int q = 0; q < queries; ++q) {
    e.query_ids.push_back(id(rng));
    e.query_cams.push_back(cam(rng));
  }
  for (int g = 0; g < gallery; ++g) {
    e.gallery_ids.push_back(junk(rng) == 0 ? -1 : id(rng));
    e.gallery_cams.push_back(cam(rng));
  }
  for (int q = 0; q < queries; ++q)
    for (int g = 0; g < gallery; ++g) e.distances(q, g) = ties ? grid(rng) : dist(rng);
  return e;
}

LoadedDataset load_dataset(const DatasetPaths& paths, unsigned jobs) {
  const LoadOptions opts{.strict = false, .jobs = jobs};
  return {load_person_dataset(paths.persons, paths.persons / "keypoints.json", opts).records,
          load_donor_dataset(paths.donors, paths.donors / "keypoints.json", paths.donors, opts).records};
}

}  // namespace posepaste::testing
