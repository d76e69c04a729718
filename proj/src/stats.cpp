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

#include "posepaste/stats.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace posepaste {

StatsReport stats(const SynthesisManifest& manifest) {
  StatsReport r;
  r.rows = manifest.rows.size();
  for (const auto& row : manifest.rows) {
    if (row.pedestrian_orientation) ++r.pedestrian_orientations[std::string(to_string(*row.pedestrian_orientation))];
    if (row.skipped()) {
      ++r.skips;
      ++r.skip_reasons[row.skip_reason];
      continue;
    }
    ++r.fakes;
    ++r.slope_residuals[row.slope_residual_q];
    ++r.height_residuals[row.height_residual_q];
    ++r.relaxation_levels[row.relaxation_level];
    ++r.donor_reuse[row.donor_path];
  }
  return r;
}

namespace {

template <typename Map>
void append_section(std::string& out, std::string_view title, const Map& hist) {
  out += fmt::format("{}:\n", title);
  if (hist.empty()) out += "  (none)\n";
  for (const auto& [key, count] : hist) out += fmt::format("  {}\t{}\n", key, count);
}

template <typename Map>
nlohmann::json histogram(const Map& hist) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, count] : hist) out[fmt::format("{}", key)] = count;
  return out;
}

}  // namespace

std::string StatsReport::to_text() const {
  std::string out = fmt::format("rows\t{}\nfakes\t{}\nskips\t{}\n", rows, fakes, skips);
  append_section(out, "pedestrian orientations", pedestrian_orientations);
  append_section(out, "slope residuals (deg)", slope_residuals);
  append_section(out, "height residuals (px)", height_residuals);
  append_section(out, "relaxation levels", relaxation_levels);
  append_section(out, "donor reuse", donor_reuse);
  append_section(out, "skip reasons", skip_reasons);
  return out;
}

std::string StatsReport::to_json() const {
  nlohmann::json j;
  j["rows"] = rows;
  j["fakes"] = fakes;
  j["skips"] = skips;
  j["pedestrian_orientations"] = histogram(pedestrian_orientations);
  j["slope_residuals"] = histogram(slope_residuals);
  j["height_residuals"] = histogram(height_residuals);
  j["relaxation_levels"] = histogram(relaxation_levels);
  j["donor_reuse"] = histogram(donor_reuse);
  j["skip_reasons"] = histogram(skip_reasons);
  return j.dump(2) + "\n";
}

}  // namespace posepaste
