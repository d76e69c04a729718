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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posepaste/image.hpp"
#include "posepaste/keypoints.hpp"

namespace posepaste {

/// Landmarks below this confidence count as missing.
inline constexpr double kMinLandmarkConfidence = 0.3;

struct KeypointEntry {
  std::string source_path;  // as written in the annotation file
  PoseKeypoints keypoints;
};

struct SkipReport {
  struct Item {
    std::string source;
    std::string reason;
  };
  std::vector<Item> items;

  std::size_t count() const { return items.size(); }
  void add(std::string source, std::string reason) { items.push_back({std::move(source), std::move(reason)}); }
};

struct KeypointFile {
  std::vector<KeypointEntry> entries;
  SkipReport skipped;
};

/// Parses the JSON annotation format:
///
///   [ {"file": "0002_c1s1_000451_03.jpg",
///      "named_points": {"left_shoulder": [x, y, conf], ..., "neck": [x, y, conf]}},
///     {"file": "...", "coco17": [[x, y, conf] x 17]} ]
///
/// A missing or low-confidence neck is synthesized as the shoulder midpoint.
/// Any other missing landmark skips the entry. Structural problems raise
/// ParseError naming the entry index.
KeypointFile parse_keypoint_text(std::string_view text);
KeypointFile parse_keypoint_file(const std::filesystem::path& path);

/// Serializes entries in the named_points form.
std::string format_keypoint_entries(const std::vector<KeypointEntry>& entries);

MaskBuffer load_mask(const std::filesystem::path& path);

/// Market-1501 style file name "PPPP_cC...": identity and camera.
struct MarketName {
  int identity = 0;
  int camera = 0;
};
std::optional<MarketName> parse_market_name(std::string_view filename);

struct PersonRecord {
  ImageBuffer image;
  PoseKeypoints keypoints;
  int identity = 0;
  int camera = 0;
  std::filesystem::path source_path;
};

struct DonorRecord {
  ImageBuffer image;
  PoseKeypoints keypoints;
  MaskBuffer mask;
  std::filesystem::path source_path;
};

/// Throws AssemblyError when mask and image dimensions differ or the image is empty.
DonorRecord assemble_donor(ImageBuffer image, PoseKeypoints keypoints, MaskBuffer mask,
                           std::filesystem::path source_path);

template <typename Record>
struct Dataset {
  std::vector<Record> records;
  SkipReport skipped;
};

using PersonDataset = Dataset<PersonRecord>;
using DonorDataset = Dataset<DonorRecord>;

struct LoadOptions {
  bool strict = false;  // unparseable names and assembly failures throw instead of being skipped
  unsigned jobs = 1;
};

/// Loads every image in dir (non-recursive), sorted by path. Images without an
/// annotation are skipped; identities with a negative label are junk and skipped.
PersonDataset load_person_dataset(const std::filesystem::path& dir, const std::filesystem::path& annotations,
                                  LoadOptions options = {});

/// Loads every donor image in dir with its mask "<stem>.mask.png" from mask_dir.
DonorDataset load_donor_dataset(const std::filesystem::path& dir, const std::filesystem::path& annotations,
                                const std::filesystem::path& mask_dir, LoadOptions options = {});

std::filesystem::path mask_path_for(const std::filesystem::path& image, const std::filesystem::path& mask_dir);

}  // namespace posepaste
