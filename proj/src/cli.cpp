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

#include "posepaste/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <regex>

#include "posepaste/contact_sheet.hpp"
#include "posepaste/digest.hpp"
#include "posepaste/image_io.hpp"
#include "posepaste/ingest.hpp"
#include "posepaste/metrics.hpp"
#include "posepaste/pipeline.hpp"
#include "posepaste/stats.hpp"

namespace posepaste::cli {
namespace fs = std::filesystem;

namespace {

struct SynthesizeArgs {
  fs::path persons;
  fs::path donors;
  fs::path keypoints;
  fs::path donor_keypoints;
  fs::path masks;
  fs::path out;
  std::uint64_t seed = 0;
  double bin = kDefaultBin;
  double slope_bin = 0.0;
  double height_bin = 0.0;
  bool no_scale_correct = false;
  bool no_originals = false;
  bool strict = false;
  unsigned jobs = 1;
};

struct PreviewArgs {
  fs::path out;
  fs::path persons;
  std::string grid = "4x3";
};

struct EvalArgs {
  fs::path dist;
  fs::path embeddings;
  std::string protocol = "market";
  std::vector<std::size_t> ranks = {1, 5, 10};
};

void report_skips(std::ostream& err, std::string_view what, const SkipReport& skips, int verbosity) {
  if (skips.count() == 0 || verbosity < 0) return;
  err << fmt::format("{}: skipped {}\n", what, skips.count());
  if (verbosity > 0)
    for (const auto& s : skips.items) err << fmt::format("  {}: {}\n", s.source, s.reason);
}

int do_synthesize(const SynthesizeArgs& a, std::ostream& out, std::ostream& err, int verbosity) {
  const fs::path person_kp = a.keypoints.empty() ? a.persons / "keypoints.json" : a.keypoints;
  const fs::path donor_kp = a.donor_keypoints.empty() ? a.donors / "keypoints.json" : a.donor_keypoints;
  const fs::path masks = a.masks.empty() ? a.donors : a.masks;
  const LoadOptions opts{a.strict, a.jobs};

  const PersonDataset persons = load_person_dataset(a.persons, person_kp, opts);
  const DonorDataset donors = load_donor_dataset(a.donors, donor_kp, masks, opts);
  report_skips(err, "persons", persons.skipped, verbosity);
  report_skips(err, "donors", donors.skipped, verbosity);

  SynthesisConfig cfg;
  cfg.bins = {a.slope_bin > 0.0 ? a.slope_bin : a.bin, a.height_bin > 0.0 ? a.height_bin : a.bin};
  cfg.seed = a.seed;
  cfg.scale_correct = !a.no_scale_correct;
  cfg.include_originals = !a.no_originals;
  cfg.output_dir = a.out;
  cfg.strict = a.strict;
  cfg.jobs = a.jobs;
  const SynthesisManifest m = synthesize(persons.records, donors.records, cfg);

  if (verbosity >= 0) {
    out << fmt::format("persons\t{}\ndonors\t{}\nfakes\t{}\nskips\t{}\nimages\t{}\n", persons.records.size(),
                       donors.records.size(), m.rows.size() - m.skip_count(), m.skip_count(),
                       m.output_image_count());
    out << fmt::format("manifest_sha256\t{}\n", sha256_hex(read_file(a.out / kManifestFile)));
  }
  return kOk;
}

int do_stats(const fs::path& dir, bool json, std::ostream& out) {
  const StatsReport r = stats(read_manifest(dir / kManifestFile));
  out << (json ? r.to_json() : r.to_text());
  return kOk;
}

int do_preview(const PreviewArgs& a, std::ostream& out) {
  static const std::regex grid_re(R"((\d+)x(\d+))");
  std::smatch g;
  if (!std::regex_match(a.grid, g, grid_re)) throw ParameterError("bad --contact-sheet " + a.grid);
  SheetLayout layout;
  layout.columns = std::stoi(g[1]);
  layout.rows = std::stoi(g[2]);

  const SynthesisManifest m = read_manifest(a.out / kManifestFile);
  std::vector<std::pair<ImageBuffer, ImageBuffer>> pairs;
  const std::size_t capacity = static_cast<std::size_t>(layout.columns) * layout.rows;
  for (const auto& row : m.rows) {
    if (pairs.size() == capacity) break;
    if (row.skipped()) continue;
    fs::path original = a.out / kImagesDir / row.pedestrian_path;
    if (!fs::exists(original) && !a.persons.empty()) original = a.persons / row.pedestrian_path;
    pairs.emplace_back(read_image(original), read_image(a.out / row.output_path));
  }
  const fs::path sheet_path = a.out / "contact_sheet.png";
  write_image(sheet_path, render_contact_sheet(pairs, layout));
  out << fmt::format("wrote {} ({} pairs)\n", sheet_path.string(), pairs.size());
  return kOk;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
  const EvalSet e = !a.dist.empty() ? read_distance_file(a.dist) : read_embedding_file(a.embeddings);
  const Protocol protocol = a.protocol == "market" ? Protocol::market : Protocol::all;
  const std::size_t max_rank = *std::max_element(a.ranks.begin(), a.ranks.end());
  const EvalReport r = evaluate(e, max_rank, protocol);
  for (std::size_t k : a.ranks) out << fmt::format("Rank-{} {:.4f}\n", k, r.rank(k));
  out << fmt::format("mAP {:.4f}\n", r.mean_ap);
  out << fmt::format("queries {} (excluded {})\n", r.valid_queries, r.invalid_queries.size());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"posepaste: pose-matched copy-paste synthesis for person re-identification datasets"};
  app.name("posepaste");
  app.require_subcommand(1, 1);
  int verbose = 0;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "List every skipped input");
  app.add_flag("-q,--quiet", quiet, "Suppress summaries");

  SynthesizeArgs syn;
  auto* synthesize_cmd = app.add_subcommand("synthesize", "Composite donor objects onto pedestrian images");
  synthesize_cmd->add_option("--persons", syn.persons, "Pedestrian image directory (Market-1501 names)")
      ->required()->check(CLI::ExistingDirectory);
  synthesize_cmd->add_option("--donors", syn.donors, "Donor image directory")
      ->required()->check(CLI::ExistingDirectory);
  synthesize_cmd->add_option("--keypoints", syn.keypoints, "Pedestrian keypoint file [default: <persons>/keypoints.json]");
  synthesize_cmd->add_option("--donor-keypoints", syn.donor_keypoints, "Donor keypoint file [default: <donors>/keypoints.json]");
  synthesize_cmd->add_option("--masks", syn.masks, "Directory of <stem>.mask.png donor masks [default: <donors>]");
  synthesize_cmd->add_option("--out", syn.out, "Output directory")->required();
  synthesize_cmd->add_option("--seed", syn.seed, "Random seed (required)")->required();
  synthesize_cmd->add_option("--bin", syn.bin, "Bucket size for slope (deg) and height (px)")
      ->capture_default_str()->check(CLI::PositiveNumber);
  synthesize_cmd->add_option("--slope-bin", syn.slope_bin, "Override the slope bucket (deg)")->check(CLI::PositiveNumber);
  synthesize_cmd->add_option("--height-bin", syn.height_bin, "Override the height bucket (px)")->check(CLI::PositiveNumber);
  synthesize_cmd->add_flag("--no-scale-correct", syn.no_scale_correct, "Disable torso-length scale correction [default: on]");
  synthesize_cmd->add_flag("--no-originals", syn.no_originals, "Do not copy originals into the output [default: on]");
  synthesize_cmd->add_flag("--strict", syn.strict, "Abort on any unusable input instead of skipping it");
  synthesize_cmd->add_option("--jobs", syn.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

  fs::path stats_out;
  bool stats_json = false;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize a synthesis manifest");
  stats_cmd->add_option("--out", stats_out, "Synthesis output directory")->required()->check(CLI::ExistingDirectory);
  stats_cmd->add_flag("--json", stats_json, "Machine-readable output");

  PreviewArgs preview;
  auto* preview_cmd = app.add_subcommand("preview", "Render original/composite pairs as a contact sheet");
  preview_cmd->add_option("--out", preview.out, "Synthesis output directory; the sheet is written here")
      ->required()->check(CLI::ExistingDirectory);
  preview_cmd->add_option("--contact-sheet", preview.grid, "Grid of pairs, columns x rows")
      ->capture_default_str()
      ->check(CLI::Validator(
          [](std::string& v) {
            return std::regex_match(v, std::regex(R"([1-9]\d*x[1-9]\d*)")) ? std::string() : "expected WxH, got " + v;
          },
          "WxH"));
  preview_cmd->add_option("--persons", preview.persons, "Original images, when not copied into --out");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Rank-k and mAP from distances or embeddings");
  auto* dist_opt = eval_cmd->add_option("--dist", ev.dist, "Distance matrix file")->check(CLI::ExistingFile);
  auto* emb_opt = eval_cmd->add_option("--embeddings", ev.embeddings, "Embedding file")->check(CLI::ExistingFile);
  dist_opt->excludes(emb_opt);
  eval_cmd->add_option("--protocol", ev.protocol, "market: drop same id+camera gallery entries; all: keep them")
      ->capture_default_str()->check(CLI::IsMember({"market", "all"}));
  eval_cmd->add_option("--ranks", ev.ranks, "CMC ranks to print")->delimiter(',')->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (eval_cmd->parsed() && dist_opt->count() + emb_opt->count() == 0)
      throw CLI::RequiredError("eval needs --dist or --embeddings");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const int verbosity = quiet ? -1 : verbose;
  try {
    if (synthesize_cmd->parsed()) return do_synthesize(syn, out, err, verbosity);
    if (stats_cmd->parsed()) return do_stats(stats_out, stats_json, out);
    if (preview_cmd->parsed()) return do_preview(preview, out);
    if (eval_cmd->parsed()) return do_eval(ev, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace posepaste::cli
