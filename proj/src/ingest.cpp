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

#include "posepaste/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "parallel.hpp"
#include "posepaste/image_io.hpp"
#include "posepaste/types.hpp"

namespace posepaste {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Body-keypoint order of the 17-point layout: nose, eyes, ears, shoulders,
// elbows, wrists, hips, knees, ankles.
constexpr std::size_t kCocoLeftShoulder = 5;
constexpr std::size_t kCocoRightShoulder = 6;
constexpr std::size_t kCocoLeftHip = 11;
constexpr std::size_t kCocoRightHip = 12;
constexpr std::size_t kCocoCount = 17;

struct Observed {
  Point2d point = Point2d::Zero();
  double confidence = 0.0;
  bool present = false;
};

[[noreturn]] void fail(std::size_t entry, const std::string& what) {
  throw ParseError("keypoint entry " + std::to_string(entry) + ": " + what);
}

Observed read_triple(const json& v, std::size_t entry, std::string_view name) {
  const std::string label(name);
  if (!v.is_array() || v.size() != 3) fail(entry, label + " must be [x, y, confidence]");
  for (const auto& c : v)
    if (!c.is_number()) fail(entry, label + " has a non-numeric component");
  Observed o;
  o.point = {v[0].get<double>(), v[1].get<double>()};
  o.confidence = v[2].get<double>();
  if (!o.point.allFinite()) fail(entry, label + " has a non-finite coordinate");
  if (!(o.confidence >= 0.0 && o.confidence <= 1.0)) fail(entry, label + " confidence outside [0,1]");
  o.present = o.confidence >= kMinLandmarkConfidence;
  return o;
}

}  // namespace

KeypointFile parse_keypoint_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("keypoint file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("keypoint file: top level must be a list");

  KeypointFile out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object()) fail(i, "not an object");
    if (!e.contains("file") || !e["file"].is_string() || e["file"].get<std::string>().empty())
      fail(i, "missing \"file\"");
    const std::string file = e["file"].get<std::string>();

    std::array<Observed, kLandmarkCount> obs{};
    if (e.contains("named_points")) {
      const json& named = e["named_points"];
      if (!named.is_object()) fail(i, "\"named_points\" must be an object");
      for (std::size_t l = 0; l < kLandmarkCount; ++l) {
        const auto it = named.find(std::string(kLandmarkNames[l]));
        if (it != named.end()) obs[l] = read_triple(*it, i, kLandmarkNames[l]);
      }
    } else if (e.contains("coco17")) {
      const json& coco = e["coco17"];
      if (!coco.is_array() || coco.size() != kCocoCount) fail(i, "\"coco17\" must hold 17 triples");
      std::array<Observed, kCocoCount> all{};
      for (std::size_t k = 0; k < kCocoCount; ++k) all[k] = read_triple(coco[k], i, "coco17[" + std::to_string(k) + "]");
      obs[static_cast<std::size_t>(Landmark::left_shoulder)] = all[kCocoLeftShoulder];
      obs[static_cast<std::size_t>(Landmark::right_shoulder)] = all[kCocoRightShoulder];
      obs[static_cast<std::size_t>(Landmark::left_hip)] = all[kCocoLeftHip];
      obs[static_cast<std::size_t>(Landmark::right_hip)] = all[kCocoRightHip];
    } else {
      fail(i, "needs \"named_points\" or \"coco17\"");
    }

    std::string missing;
    for (std::size_t l = 0; l < kLandmarkCount; ++l) {
      if (static_cast<Landmark>(l) == Landmark::neck) continue;
      if (!obs[l].present) missing += (missing.empty() ? "" : ",") + std::string(kLandmarkNames[l]);
    }
    if (!missing.empty()) {
      out.skipped.add(file, "missing landmark: " + missing);
      continue;
    }

    auto& neck = obs[static_cast<std::size_t>(Landmark::neck)];
    if (!neck.present) {
      const auto& ls = obs[static_cast<std::size_t>(Landmark::left_shoulder)];
      const auto& rs = obs[static_cast<std::size_t>(Landmark::right_shoulder)];
      neck.point = (ls.point + rs.point) / 2.0;
      neck.confidence = std::min(ls.confidence, rs.confidence);
    }

    KeypointEntry entry{file, {}};
    for (std::size_t l = 0; l < kLandmarkCount; ++l) {
      entry.keypoints.points[l] = obs[l].point;
      entry.keypoints.confidences[l] = obs[l].confidence;
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

KeypointFile parse_keypoint_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open keypoint file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_keypoint_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_keypoint_entries(const std::vector<KeypointEntry>& entries) {
  json doc = json::array();
  for (const auto& e : entries) {
    json named = json::object();
    for (std::size_t l = 0; l < kLandmarkCount; ++l) {
      const Point2d& p = e.keypoints.points[l];
      named[std::string(kLandmarkNames[l])] = {p.x(), p.y(), e.keypoints.confidences[l]};
    }
    doc.push_back({{"file", e.source_path}, {"named_points", std::move(named)}});
  }
  return doc.dump(2) + "\n";
}

MaskBuffer load_mask(const fs::path& path) { return binarize(read_gray(path)); }

std::optional<MarketName> parse_market_name(std::string_view filename) {
  const std::size_t underscore = filename.find('_');
  if (underscore == std::string_view::npos || underscore == 0) return std::nullopt;
  MarketName out;
  const char* first = filename.data();
  auto [p, ec] = std::from_chars(first, first + underscore, out.identity);
  if (ec != std::errc() || p != first + underscore) return std::nullopt;
  const std::string_view rest = filename.substr(underscore + 1);
  if (rest.size() < 2 || rest[0] != 'c') return std::nullopt;
  const char* cam = rest.data() + 1;
  const char* end = rest.data() + rest.size();
  auto [q, ec2] = std::from_chars(cam, end, out.camera);
  if (ec2 != std::errc() || q == cam) return std::nullopt;
  return out;
}

DonorRecord assemble_donor(ImageBuffer image, PoseKeypoints keypoints, MaskBuffer mask, fs::path source_path) {
  if (image.empty()) throw AssemblyError(source_path.string() + ": empty image");
  if (mask.width() != image.width() || mask.height() != image.height())
    throw AssemblyError(source_path.string() + ": mask is " + std::to_string(mask.width()) + "x" +
                        std::to_string(mask.height()) + ", image is " + std::to_string(image.width()) + "x" +
                        std::to_string(image.height()));
  return {std::move(image), keypoints, std::move(mask), std::move(source_path)};
}

fs::path mask_path_for(const fs::path& image, const fs::path& mask_dir) {
  return mask_dir / (image.stem().string() + ".mask.png");
}

namespace {

bool is_mask_file(const fs::path& p) {
  const std::string name = p.filename().string();
  constexpr std::string_view suffix = ".mask.png";
  return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw LoadError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (is_image_path(p) && !is_mask_file(p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Annotation lookup by path relative to the dataset directory, falling back
/// to the bare file name.
class AnnotationIndex {
 public:
  explicit AnnotationIndex(const KeypointFile& file) {
    for (const auto& e : file.entries) {
      const fs::path p = fs::path(e.source_path).lexically_normal();
      by_path_.emplace(p.generic_string(), e.keypoints);
      by_name_.emplace(p.filename().string(), e.keypoints);
    }
  }

  const PoseKeypoints* find(const fs::path& dir, const fs::path& image) const {
    const std::string rel = image.lexically_relative(dir).generic_string();
    if (auto it = by_path_.find(rel); it != by_path_.end()) return &it->second;
    if (auto it = by_name_.find(image.filename().string()); it != by_name_.end()) return &it->second;
    return nullptr;
  }

 private:
  std::map<std::string, PoseKeypoints> by_path_;
  std::map<std::string, PoseKeypoints> by_name_;
};

}  // namespace

PersonDataset load_person_dataset(const fs::path& dir, const fs::path& annotations, LoadOptions options) {
  const auto images = list_images(dir);
  const KeypointFile kp = parse_keypoint_file(annotations);
  const AnnotationIndex index(kp);

  PersonDataset out;
  out.skipped = kp.skipped;

  struct Candidate {
    fs::path path;
    MarketName name;
    const PoseKeypoints* keypoints;
  };
  std::vector<Candidate> candidates;
  for (const auto& path : images) {
    const std::string filename = path.filename().string();
    const auto name = parse_market_name(filename);
    if (!name) {
      if (options.strict) throw ParseError("unparseable person file name: " + filename);
      out.skipped.add(filename, "unparseable file name");
      continue;
    }
    if (name->identity < 0) {
      out.skipped.add(filename, "junk identity");
      continue;
    }
    const PoseKeypoints* keypoints = index.find(dir, path);
    if (!keypoints) {
      out.skipped.add(filename, "no annotation");
      continue;
    }
    candidates.push_back({path, *name, keypoints});
  }

  std::vector<std::optional<ImageBuffer>> loaded(candidates.size());
  std::vector<std::string> errors(candidates.size());
  detail::parallel_for(candidates.size(), options.jobs, [&](std::size_t i) {
    try {
      loaded[i] = read_image(candidates[i].path);
    } catch (const LoadError& e) {
      if (options.strict) throw;
      errors[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!loaded[i]) {
      out.skipped.add(c.path.filename().string(), "unreadable image: " + errors[i]);
      continue;
    }
    out.records.push_back({std::move(*loaded[i]), *c.keypoints, c.name.identity, c.name.camera, c.path});
  }
  return out;
}

DonorDataset load_donor_dataset(const fs::path& dir, const fs::path& annotations, const fs::path& mask_dir,
                                LoadOptions options) {
  const auto images = list_images(dir);
  const KeypointFile kp = parse_keypoint_file(annotations);
  const AnnotationIndex index(kp);

  DonorDataset out;
  out.skipped = kp.skipped;

  std::vector<std::pair<fs::path, const PoseKeypoints*>> candidates;
  for (const auto& path : images) {
    const PoseKeypoints* keypoints = index.find(dir, path);
    if (!keypoints) {
      out.skipped.add(path.filename().string(), "no annotation");
      continue;
    }
    candidates.emplace_back(path, keypoints);
  }

  std::vector<std::optional<DonorRecord>> loaded(candidates.size());
  std::vector<std::string> errors(candidates.size());
  detail::parallel_for(candidates.size(), options.jobs, [&](std::size_t i) {
    const auto& [path, keypoints] = candidates[i];
    try {
      loaded[i] = assemble_donor(read_image(path), *keypoints, load_mask(mask_path_for(path, mask_dir)), path);
    } catch (const Error& e) {
      if (options.strict) throw;
      errors[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!loaded[i]) {
      out.skipped.add(candidates[i].first.filename().string(), errors[i]);
      continue;
    }
    out.records.push_back(std::move(*loaded[i]));
  }
  return out;
}

}  // namespace posepaste
