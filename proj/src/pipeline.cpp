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

#include "posepaste/pipeline.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "parallel.hpp"
#include "posepaste/compositor.hpp"
#include "posepaste/digest.hpp"
#include "posepaste/geometry.hpp"
#include "posepaste/image_io.hpp"
#include "posepaste/matcher.hpp"
#include "posepaste/stats.hpp"

namespace posepaste {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kColumns[] = {
    "output_path",       "pedestrian_path",   "donor_path",  "identity",      "camera",
    "ped_orientation",   "donor_orientation", "theta_deg",   "scale",         "pivot_x",
    "pivot_y",           "slope_residual_q",  "height_residual_q", "relaxation_level", "pasted_pixels",
    "output_sha256",     "skip_reason"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string or_dash(std::string_view s) { return s.empty() ? "-" : std::string(s); }
std::string from_dash(std::string_view s) { return s == "-" ? std::string() : std::string(s); }

std::string format_orientation(const std::optional<Orientation>& o) {
  return o ? std::string(to_string(*o)) : "-";
}

std::optional<Orientation> parse_orientation(std::string_view s) {
  for (Orientation o : {Orientation::up, Orientation::down, Orientation::left, Orientation::right})
    if (to_string(o) == s) return o;
  if (s == "-") return std::nullopt;
  throw ParseError("manifest: bad orientation '" + std::string(s) + "'");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("manifest: bad " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}

void hash_keypoints(Sha256& h, const PoseKeypoints& kp) {
  for (std::size_t l = 0; l < kLandmarkCount; ++l)
    h.update(fmt::format("{} {} {};", kp.points[l].x(), kp.points[l].y(), kp.confidences[l]));
}

void hash_image(Sha256& h, const ImageBuffer& img) {
  h.update(fmt::format("{}x{};", img.width(), img.height()));
  h.update(img.data());
}

void write_text_atomically(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw ConfigError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void prepare_output(const fs::path& dir) {
  if (dir.empty()) throw ConfigError("output directory is not set");
  std::error_code ec;
  fs::create_directories(dir / kImagesDir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".posepaste-probe";
  {
    std::ofstream out(probe);
    if (!out) throw ConfigError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
  // A manifest from an earlier run must not survive an interrupted one.
  fs::remove(dir / kManifestFile, ec);
  fs::remove(dir / "stats.txt", ec);
  fs::remove(dir / "stats.json", ec);
}

void copy_original(const PersonRecord& p, const fs::path& dest) {
  if (!p.source_path.empty() && fs::is_regular_file(p.source_path)) {
    fs::copy_file(p.source_path, dest, fs::copy_options::overwrite_existing);
    return;
  }
  write_image(dest, p.image);
}

}  // namespace

std::size_t SynthesisManifest::skip_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.skipped() ? 1 : 0;
  return n;
}

std::size_t SynthesisManifest::output_image_count() const {
  return rows.size() - skip_count() + (include_originals ? rows.size() : 0);
}

std::string fake_name(const fs::path& source) {
  return source.stem().string() + "_fake" + source.extension().string();
}

std::string format_manifest(const SynthesisManifest& m) {
  std::string out;
  out += fmt::format("# {}\n", kManifestMagic);
  out += fmt::format("# tool_version\t{}\n", m.tool_version);
  out += fmt::format("# seed\t{}\n", m.seed);
  out += fmt::format("# bin_slope\t{}\n", m.bins.slope);
  out += fmt::format("# bin_height\t{}\n", m.bins.height);
  out += fmt::format("# scale_correct\t{}\n", m.scale_correct ? 1 : 0);
  out += fmt::format("# include_originals\t{}\n", m.include_originals ? 1 : 0);
  out += fmt::format("# persons_sha256\t{}\n", or_dash(m.persons_sha256));
  out += fmt::format("# donors_sha256\t{}\n", or_dash(m.donors_sha256));
  out += fmt::format("# donors_excluded\t{}\n", m.donors_excluded);
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    out += kColumns[i];
    out += i + 1 < kColumnCount ? '\t' : '\n';
  }
  for (const auto& r : m.rows) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.3f}\t{:.3f}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                       or_dash(r.output_path), or_dash(r.pedestrian_path), or_dash(r.donor_path), r.identity,
                       r.camera, format_orientation(r.pedestrian_orientation),
                       format_orientation(r.donor_orientation), r.theta_deg, r.scale, r.pivot_x, r.pivot_y,
                       r.slope_residual_q, r.height_residual_q, r.relaxation_level, r.pasted_pixels,
                       or_dash(r.output_sha256), or_dash(r.skip_reason));
  }
  return out;
}

SynthesisManifest parse_manifest(std::string_view text) {
  SynthesisManifest m;
  bool saw_magic = false;
  bool saw_columns = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "manifest line " + std::to_string(line_no);
    if (line.starts_with("# ")) {
      const std::string_view body = line.substr(2);
      if (body == kManifestMagic) {
        saw_magic = true;
        continue;
      }
      const auto kv = split(body, '\t');
      if (kv.size() != 2) throw ParseError(where + ": malformed header");
      const std::string_view key = kv[0], value = kv[1];
      if (key == "tool_version") m.tool_version = value;
      else if (key == "seed") m.seed = parse_number<std::uint64_t>(value, key);
      else if (key == "bin_slope") m.bins.slope = parse_number<double>(value, key);
      else if (key == "bin_height") m.bins.height = parse_number<double>(value, key);
      else if (key == "scale_correct") m.scale_correct = value == "1";
      else if (key == "include_originals") m.include_originals = value == "1";
      else if (key == "persons_sha256") m.persons_sha256 = from_dash(value);
      else if (key == "donors_sha256") m.donors_sha256 = from_dash(value);
      else if (key == "donors_excluded") m.donors_excluded = parse_number<std::size_t>(value, key);
      continue;
    }
    if (!saw_magic) throw ParseError("not a posepaste manifest (missing '# " + std::string(kManifestMagic) + "')");
    const auto f = split(line, '\t');
    if (!saw_columns) {
      if (f.size() != kColumnCount || f[0] != kColumns[0]) throw ParseError(where + ": unexpected column header");
      saw_columns = true;
      continue;
    }
    if (f.size() != kColumnCount)
      throw ParseError(where + ": expected " + std::to_string(kColumnCount) + " fields, got " +
                       std::to_string(f.size()));
    ManifestRow r;
    r.output_path = from_dash(f[0]);
    r.pedestrian_path = from_dash(f[1]);
    r.donor_path = from_dash(f[2]);
    r.identity = parse_number<int>(f[3], "identity");
    r.camera = parse_number<int>(f[4], "camera");
    r.pedestrian_orientation = parse_orientation(f[5]);
    r.donor_orientation = parse_orientation(f[6]);
    r.theta_deg = parse_number<double>(f[7], "theta_deg");
    r.scale = parse_number<double>(f[8], "scale");
    r.pivot_x = parse_number<double>(f[9], "pivot_x");
    r.pivot_y = parse_number<double>(f[10], "pivot_y");
    r.slope_residual_q = parse_number<double>(f[11], "slope_residual_q");
    r.height_residual_q = parse_number<double>(f[12], "height_residual_q");
    r.relaxation_level = parse_number<int>(f[13], "relaxation_level");
    r.pasted_pixels = parse_number<std::size_t>(f[14], "pasted_pixels");
    r.output_sha256 = from_dash(f[15]);
    r.skip_reason = from_dash(f[16]);
    m.rows.push_back(std::move(r));
  }
  if (!saw_magic) throw ParseError("not a posepaste manifest");
  return m;
}

SynthesisManifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string digest_persons(const std::vector<PersonRecord>& persons) {
  Sha256 h;
  for (const auto& p : persons) {
    h.update(fmt::format("{}|{}|{}|", p.source_path.filename().string(), p.identity, p.camera));
    hash_keypoints(h, p.keypoints);
    hash_image(h, p.image);
  }
  return h.hex();
}

std::string digest_donors(const std::vector<DonorRecord>& donors) {
  Sha256 h;
  for (const auto& d : donors) {
    h.update(d.source_path.filename().string() + "|");
    hash_keypoints(h, d.keypoints);
    hash_image(h, d.image);
    h.update(d.mask.bits());
  }
  return h.hex();
}

SynthesisManifest synthesize(const std::vector<PersonRecord>& persons, const std::vector<DonorRecord>& donors,
                             const SynthesisConfig& cfg) {
  if (!(cfg.bins.slope > 0.0) || !(cfg.bins.height > 0.0)) throw ConfigError("bin must be positive");
  if (donors.empty()) throw ConfigError("donor list is empty");

  std::vector<PoseDescriptor> donor_desc;
  std::vector<std::size_t> donor_of;  // descriptor index -> donor index
  for (std::size_t j = 0; j < donors.size(); ++j) {
    try {
      donor_desc.push_back(describe(donors[j].keypoints, cfg.bins));
      donor_of.push_back(j);
    } catch (const DegeneratePoseError& e) {
      if (cfg.strict) throw ConfigError(donors[j].source_path.string() + ": " + e.what());
    }
  }
  if (donor_desc.empty()) throw ConfigError("no donor has a usable pose");

  prepare_output(cfg.output_dir);
  const fs::path images_dir = cfg.output_dir / kImagesDir;

  SynthesisManifest m;
  m.seed = cfg.seed;
  m.bins = cfg.bins;
  m.scale_correct = cfg.scale_correct;
  m.include_originals = cfg.include_originals;
  m.persons_sha256 = digest_persons(persons);
  m.donors_sha256 = digest_donors(donors);
  m.donors_excluded = donors.size() - donor_desc.size();
  m.rows.resize(persons.size());

  detail::parallel_for(persons.size(), cfg.jobs, [&](std::size_t i) {
    const PersonRecord& p = persons[i];
    ManifestRow& row = m.rows[i];
    row.pedestrian_path = p.source_path.filename().string();
    row.identity = p.identity;
    row.camera = p.camera;

    auto skip = [&](std::string reason, const std::string& detail) {
      if (cfg.strict) throw Error(row.pedestrian_path + ": " + reason + (detail.empty() ? "" : ": " + detail));
      row.skip_reason = std::move(reason);
    };

    if (cfg.include_originals) copy_original(p, images_dir / row.pedestrian_path);

    PoseDescriptor pd;
    try {
      pd = describe(p.keypoints, cfg.bins);
    } catch (const DegeneratePoseError& e) {
      skip("degenerate_pose", e.what());
      return;
    }
    row.pedestrian_orientation = pd.orientation;

    RandomStream rng = RandomStream::substream(cfg.seed, i);
    const MatchResult match = match_one(pd, donor_desc, rng);
    const PoseDescriptor& dd = donor_desc[match.donor_index];
    const DonorRecord& d = donors[donor_of[match.donor_index]];
    row.donor_path = d.source_path.filename().string();
    row.donor_orientation = dd.orientation;
    row.slope_residual_q = match.slope_residual_q;
    row.height_residual_q = match.height_residual_q;
    row.relaxation_level = match.relaxation_level;

    const PoseCorrection c = correction_from_match(pd, dd, cfg.scale_correct);
    row.theta_deg = c.theta_deg;
    row.scale = c.scale;
    row.pivot_x = c.pivot.x();
    row.pivot_y = c.pivot.y();

    const Composite fake = compose_fake(p.image, pd.mid_hip, d.image, d.mask, dd.mid_hip, c.transform());
    if (fake.meta.skipped) {
      skip("empty_warped_mask", "");
      return;
    }
    row.pasted_pixels = fake.meta.pasted_pixels;

    const std::string name = fake_name(p.source_path.filename());
    const auto bytes = encode_image(fake.image, format_for_path(name));
    write_file(images_dir / name, bytes);
    row.output_path = (fs::path(kImagesDir) / name).generic_string();
    row.output_sha256 = sha256_hex(bytes);
  });

  const StatsReport report = stats(m);
  write_text_atomically(cfg.output_dir / "stats.txt", report.to_text());
  write_text_atomically(cfg.output_dir / "stats.json", report.to_json());
  write_text_atomically(cfg.output_dir / kManifestFile, format_manifest(m));
  return m;
}

}  // namespace posepaste
