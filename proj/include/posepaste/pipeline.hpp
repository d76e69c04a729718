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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posepaste/ingest.hpp"
#include "posepaste/pose.hpp"

namespace posepaste {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kManifestMagic = "posepaste-manifest v1";

struct SynthesisConfig {
  Bins bins;
  std::uint64_t seed = 0;
  bool scale_correct = true;
  bool include_originals = true;
  std::filesystem::path output_dir;
  bool strict = false;
  unsigned jobs = 1;
};

/// One attempted composite. Fields that were never computed (e.g. the donor of
/// a pedestrian whose pose was degenerate) are left empty.
struct ManifestRow {
  std::string output_path;  // relative to the output directory; empty when skipped
  std::string pedestrian_path;
  std::string donor_path;
  int identity = 0;
  int camera = 0;
  std::optional<Orientation> pedestrian_orientation;
  std::optional<Orientation> donor_orientation;
  double theta_deg = 0.0;
  double scale = 1.0;
  double pivot_x = 0.0;
  double pivot_y = 0.0;
  double slope_residual_q = 0.0;
  double height_residual_q = 0.0;
  int relaxation_level = 0;
  std::size_t pasted_pixels = 0;
  std::string output_sha256;
  std::string skip_reason;  // empty when the composite was written

  bool skipped() const { return !skip_reason.empty(); }
};

struct SynthesisManifest {
  std::uint64_t seed = 0;
  Bins bins;
  bool scale_correct = true;
  bool include_originals = true;
  std::string tool_version{kToolVersion};
  std::string persons_sha256;
  std::string donors_sha256;
  std::size_t donors_excluded = 0;  // donors dropped for degenerate poses
  std::vector<ManifestRow> rows;    // pedestrian order

  std::size_t skip_count() const;
  /// Images in the output tree: fakes plus copied originals.
  std::size_t output_image_count() const;
};

/// Tab-separated text: "# key value" header lines, one column-name line, one
/// line per row. Identical manifests format to identical bytes.
std::string format_manifest(const SynthesisManifest& m);
SynthesisManifest parse_manifest(std::string_view text);
SynthesisManifest read_manifest(const std::filesystem::path& path);

/// "<stem>_fake<ext>"; keeps the identity/camera prefix intact.
std::string fake_name(const std::filesystem::path& source);

std::string digest_persons(const std::vector<PersonRecord>& persons);
std::string digest_donors(const std::vector<DonorRecord>& donors);

/// Runs pose description, matching, correction and compositing for every
/// person, writing output_dir/images/*, then output_dir/manifest.tsv (atomically,
/// last) and output_dir/stats.txt / stats.json.
///
/// Throws ConfigError for an empty donor list, a non-positive bin, or an
/// unwritable output directory, before any output is produced. In strict mode
/// any per-person failure aborts the run without a manifest.
SynthesisManifest synthesize(const std::vector<PersonRecord>& persons, const std::vector<DonorRecord>& donors,
                             const SynthesisConfig& cfg);

inline constexpr std::string_view kManifestFile = "manifest.tsv";
inline constexpr std::string_view kImagesDir = "images";

}  // namespace posepaste
