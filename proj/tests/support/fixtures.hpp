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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "posepaste/image.hpp"
#include "posepaste/ingest.hpp"
#include "posepaste/metrics.hpp"
#include "posepaste/pose.hpp"

namespace posepaste::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Keypoints of a torso with the given mid-hip, length, lean (degrees from
/// screen-up, clockwise positive) and shoulder direction.
PoseKeypoints make_keypoints(Point2d mid_hip, double torso_length, double slope_deg,
                             Orientation facing = Orientation::right, double shoulder_half_width = 8.0);

ImageBuffer checker_image(int width, int height, int cell = 8, Rgb a = {200, 60, 60}, Rgb b = {60, 60, 200});
ImageBuffer gradient_image(int width, int height);

/// Synthetic "bicycle": two wheels and a frame bar under the mid-hip.
MaskBuffer bicycle_mask(int width, int height, Point2d mid_hip, double torso_length);
ImageBuffer donor_image(int width, int height, std::uint32_t seed);

PoseDescriptor random_descriptor(std::mt19937_64& rng, Bins bins);

/// Random evaluation set. Distances are drawn from a small integer grid when
/// `ties` is set so equal distances are common. A few gallery entries get junk
/// identity -1.
EvalSet random_eval_set(std::mt19937_64& rng, int queries, int gallery, int identities, int cameras, bool ties);

struct DatasetSpec {
  int persons = 20;
  int identities = 5;
  int donors = 5;
  int person_w = 64;
  int person_h = 128;
  int donor_w = 128;
  int donor_h = 128;
  std::string person_ext = ".png";
  std::uint32_t seed = 1;
};

struct DatasetPaths {
  std::filesystem::path persons;
  std::filesystem::path donors;
};

/// Writes a Market-1501 style person directory and a donor directory, each with
/// keypoints.json (donor masks as <stem>.mask.png beside the images).
DatasetPaths write_dataset(const std::filesystem::path& root, const DatasetSpec& spec);

struct LoadedDataset {
  std::vector<PersonRecord> persons;
  std::vector<DonorRecord> donors;
};

LoadedDataset load_dataset(const DatasetPaths& paths, unsigned jobs = 1);

}  // namespace posepaste::testing
